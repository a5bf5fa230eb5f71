from typing import Dict, List, NamedTuple, Optional, Set, Tuple

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from dcsynth.base.errors import DcsError, DefinitionError, FspSyntaxError
from dcsynth.fsp.ast import (
    ActionPattern,
    BinOp,
    Body,
    Branch,
    Choice,
    CompForall,
    CompParallel,
    CompRef,
    CompositeDef,
    ConstDef,
    ConstRef,
    ErrorProcess,
    IndexBind,
    IndexExpr,
    IndexRange,
    LocalDef,
    Neg,
    Num,
    Param,
    ProcessDef,
    ProcessRef,
    SpecAst,
    Stop,
    Var,
)
from dcsynth.fsp.grammar import GRAMMAR


class _Params(NamedTuple):
    params: Tuple[Param, ...]


class _AlphaExt(NamedTuple):
    actions: Tuple[ActionPattern, ...]


class _Guard(NamedTuple):
    expr: object


class _Sequence(NamedTuple):
    actions: Tuple[ActionPattern, ...]
    target: Body


class _Args(NamedTuple):
    args: tuple


class _Directive(NamedTuple):
    kind: str
    actions: Tuple[ActionPattern, ...]
    name: Optional[str] = None
    line: int = 0
    column: int = 0


def _binop(op: str):
    def rule(self, children):
        left, right = children
        return BinOp(op, left, right)

    return rule


class FspTransformer(Transformer):
    """Lark parse tree -> SpecAst."""

    def start(self, children):
        constants, processes, composites = [], [], []
        directives: Dict[str, List[ActionPattern]] = {"controllable": [], "reach": [], "avoid": []}
        target: Optional[_Directive] = None
        for child in children:
            if isinstance(child, ConstDef):
                constants.append(child)
            elif isinstance(child, ProcessDef):
                processes.append(child)
            elif isinstance(child, CompositeDef):
                composites.append(child)
            elif child.kind == "target":
                if target is not None:
                    raise DefinitionError(f"{child.line}:{child.column}: second target directive")
                target = child
            else:
                directives[child.kind].extend(child.actions)
        return SpecAst(
            constants=tuple(constants),
            processes=tuple(processes),
            composites=tuple(composites),
            controllable=tuple(directives["controllable"]),
            reach=tuple(directives["reach"]),
            avoid=tuple(directives["avoid"]),
            target=target.name if target else None,
        )

    @v_args(meta=True)
    def const_def(self, meta, children):
        name, value = children
        return ConstDef(str(name), value, line=meta.line, column=meta.column)

    @v_args(meta=True)
    def process_def(self, meta, children):
        name, *rest = children
        params: Tuple[Param, ...] = ()
        body = None
        local_defs, ext = [], ()
        for child in rest:
            if isinstance(child, _Params):
                params = child.params
            elif isinstance(child, LocalDef):
                local_defs.append(child)
            elif isinstance(child, _AlphaExt):
                ext = child.actions
            else:
                body = child
        return ProcessDef(
            str(name), params, body, tuple(local_defs), ext, line=meta.line, column=meta.column
        )

    def params(self, children):
        return _Params(tuple(children))

    def param(self, children):
        name, default = children
        return Param(str(name), default)

    @v_args(meta=True)
    def local_def(self, meta, children):
        name, *rest = children
        body = rest[-1]
        return LocalDef(str(name), tuple(rest[:-1]), body, line=meta.line, column=meta.column)

    def alpha_ext(self, children):
        (actions,) = children
        return _AlphaExt(actions)

    @v_args(meta=True)
    def process_ref(self, meta, children):
        name, *indices = children
        return ProcessRef(str(name), tuple(indices), line=meta.line, column=meta.column)

    def stop(self, children):
        return Stop()

    def error(self, children):
        return ErrorProcess()

    def choice(self, children):
        return Choice(tuple(children))

    def branch(self, children):
        guard = children[0].expr if isinstance(children[0], _Guard) else None
        sequence = children[-1]
        return Branch(guard, sequence.actions, sequence.target)

    def guard(self, children):
        return _Guard(children[0])

    def sequence(self, children):
        action, rest = children
        if isinstance(rest, _Sequence):
            return _Sequence((action,) + rest.actions, rest.target)
        return _Sequence((action,), rest)

    def action(self, children):
        name, *indices = children
        return ActionPattern(str(name), tuple(indices))

    def index_expr(self, children):
        return IndexExpr(children[0])

    def index_range(self, children):
        lo, hi = children
        return IndexRange(lo, hi)

    def index_bind(self, children):
        var, lo, hi = children
        return IndexBind(str(var), lo, hi)

    @v_args(meta=True)
    def composite_def(self, meta, children):
        name, *rest = children
        params = rest[0].params if isinstance(rest[0], _Params) else ()
        return CompositeDef(str(name), params, rest[-1], line=meta.line, column=meta.column)

    def comp_par(self, children):
        return CompParallel(tuple(children))

    @v_args(meta=True)
    def comp_ref(self, meta, children):
        name, *rest = children
        args = rest[0].args if rest else ()
        return CompRef(str(name), args, line=meta.line, column=meta.column)

    def comp_forall(self, children):
        binding, item = children
        return CompForall(binding, item)

    def args(self, children):
        return _Args(tuple(children))

    def label_set(self, children):
        return tuple(c for c in children if c is not None)

    def controllable(self, children):
        return _Directive("controllable", children[0])

    def reach(self, children):
        return _Directive("reach", children[0])

    def avoid(self, children):
        return _Directive("avoid", children[0])

    @v_args(meta=True)
    def target(self, meta, children):
        return _Directive("target", (), str(children[0]), meta.line, meta.column)

    def num(self, children):
        return Num(int(children[0]))

    def var(self, children):
        token: Token = children[0]
        return Var(str(token), line=token.line, column=token.column)

    def const_ref(self, children):
        token: Token = children[0]
        return ConstRef(str(token), line=token.line, column=token.column)

    def neg(self, children):
        return Neg(children[0])

    add = _binop("+")
    sub = _binop("-")
    lt = _binop("<")
    le = _binop("<=")
    gt = _binop(">")
    ge = _binop(">=")
    eq = _binop("==")
    ne = _binop("!=")


_PARSER = Lark(GRAMMAR, parser="lalr", propagate_positions=True)


def _describe_terminal(name: str) -> str:
    try:
        pattern = _PARSER.get_terminal(name).pattern
    except KeyError:
        return name
    if pattern.type == "str":
        return repr(pattern.value)
    return name


def _syntax_error(e: UnexpectedInput) -> FspSyntaxError:
    if isinstance(e, UnexpectedToken):
        expected = e.expected
        found = "end of input" if e.token.type == "$END" else repr(str(e.token))
        message = f"unexpected {found}"
    elif isinstance(e, UnexpectedEOF):
        expected = e.expected
        message = "unexpected end of input"
    elif isinstance(e, UnexpectedCharacters):
        expected = e.allowed or set()
        message = f"unexpected character {e.char!r}"
    else:
        expected = set()
        message = "syntax error"
    return FspSyntaxError(
        message,
        line=getattr(e, "line", 0) or 0,
        column=getattr(e, "column", 0) or 0,
        expected=frozenset(_describe_terminal(t) for t in expected),
    )


def _check_references(ast: SpecAst) -> None:
    seen: Dict[str, Tuple[int, int]] = {}
    for definition in (*ast.constants, *ast.processes, *ast.composites):
        if definition.name in seen:
            line, column = seen[definition.name]
            raise DefinitionError(
                f"{definition.line}:{definition.column}: duplicate definition of {definition.name} "
                f"(first defined at {line}:{column})"
            )
        seen[definition.name] = (definition.line, definition.column)

    for process in ast.processes:
        names: Set[str] = {process.name}
        for local in process.locals:
            if local.name in names:
                raise DefinitionError(
                    f"{local.line}:{local.column}: duplicate local process {local.name} in {process.name}"
                )
            names.add(local.name)
        for ref in _process_refs(process.body, process.locals):
            if ref.name not in names:
                raise DefinitionError(
                    f"{ref.line}:{ref.column}: unknown process {ref.name} referenced in {process.name}"
                )

    callable_names = {p.name for p in ast.processes} | {c.name for c in ast.composites}
    for composite in ast.composites:
        for ref in _comp_refs(composite.body):
            if ref.name not in callable_names:
                raise DefinitionError(f"{ref.line}:{ref.column}: unknown process {ref.name}")
    _check_composite_cycles(ast)

    if ast.target is not None and ast.target not in callable_names:
        raise DefinitionError(f"unknown target {ast.target}")


def _check_composite_cycles(ast: SpecAst) -> None:
    """Composites may nest other composites, but never through a cycle."""
    composites = {c.name: c for c in ast.composites}
    done: Set[str] = set()

    def visit(name: str, path: List[str]):
        if name in done:
            return
        for ref in _comp_refs(composites[name].body):
            if ref.name not in composites:
                continue
            if ref.name in path:
                cycle = " -> ".join(path[path.index(ref.name):] + [ref.name])
                raise DefinitionError(f"{ref.line}:{ref.column}: composites refer to each other: {cycle}")
            visit(ref.name, path + [ref.name])
        done.add(name)

    for composite in ast.composites:
        visit(composite.name, [composite.name])


def _process_refs(body: Body, local_defs) -> List[ProcessRef]:
    refs: List[ProcessRef] = []
    stack = [body] + [local.body for local in local_defs]
    while stack:
        node = stack.pop()
        if isinstance(node, ProcessRef):
            refs.append(node)
        elif isinstance(node, Choice):
            stack.extend(branch.target for branch in node.branches)
    return refs


def _comp_refs(item) -> List[CompRef]:
    if isinstance(item, CompRef):
        return [item]
    if isinstance(item, CompForall):
        return _comp_refs(item.item)
    return [ref for child in item.items for ref in _comp_refs(child)]


def parse(text: str) -> SpecAst:
    """Parse FSP text into a SpecAst.

    Raises FspSyntaxError with position and expected tokens on malformed input, and
    DefinitionError on empty input, duplicate definitions, unknown process references or
    composites that refer to each other. Constant names are left unchecked here: bindings passed
    at elaboration may supply them, so an unbound constant surfaces as ElaborationError there.
    """
    try:
        tree = _PARSER.parse(text)
        ast = FspTransformer().transform(tree)
    except UnexpectedInput as e:
        raise _syntax_error(e) from e
    except VisitError as e:
        if isinstance(e.orig_exc, DcsError):
            raise e.orig_exc from e
        raise
    if not (ast.processes or ast.composites):
        raise DefinitionError("no definitions")
    _check_references(ast)
    return ast


def parse_file(path: str) -> SpecAst:
    with open(path, encoding="utf-8") as f:
        return parse(f.read())
