from typing import List

from dcsynth.fsp.ast import (
    ActionPattern,
    BinOp,
    Body,
    Branch,
    Choice,
    CompForall,
    CompParallel,
    CompRef,
    ConstRef,
    ErrorProcess,
    Expr,
    IndexBind,
    IndexExpr,
    IndexRange,
    Neg,
    Num,
    Param,
    ProcessRef,
    SpecAst,
    Stop,
    Var,
)


def print_expr(expr: Expr) -> str:
    if isinstance(expr, Num):
        return str(expr.value)
    if isinstance(expr, (Var, ConstRef)):
        return expr.name
    if isinstance(expr, Neg):
        return f"-({print_expr(expr.operand)})"
    if isinstance(expr, BinOp):
        return f"({print_expr(expr.left)} {expr.op} {print_expr(expr.right)})"
    raise TypeError(f"not an expression: {expr!r}")


def _bind(binding: IndexBind) -> str:
    return f"[{binding.var}:{print_expr(binding.lo)}..{print_expr(binding.hi)}]"


def print_action(action: ActionPattern) -> str:
    parts = [action.name]
    for index in action.indices:
        if isinstance(index, IndexExpr):
            parts.append(f"[{print_expr(index.expr)}]")
        elif isinstance(index, IndexRange):
            parts.append(f"[{print_expr(index.lo)}..{print_expr(index.hi)}]")
        else:
            parts.append(_bind(index))
    return "".join(parts)


def _label_set(actions) -> str:
    return "{" + ", ".join(print_action(a) for a in actions) + "}"


def _branch(branch: Branch) -> str:
    guard = f"when {print_expr(branch.guard)} " if branch.guard is not None else ""
    steps = " -> ".join(print_action(a) for a in branch.actions)
    return f"{guard}{steps} -> {print_body(branch.target)}"


def print_body(body: Body) -> str:
    if isinstance(body, Stop):
        return "STOP"
    if isinstance(body, ErrorProcess):
        return "ERROR"
    if isinstance(body, ProcessRef):
        return body.name + "".join(f"[{print_expr(i)}]" for i in body.indices)
    if isinstance(body, Choice):
        return "(" + "\n    | ".join(_branch(b) for b in body.branches) + ")"
    raise TypeError(f"not a process body: {body!r}")


def _params(params) -> str:
    if not params:
        return ""
    return "(" + ", ".join(f"{p.name}={print_expr(p.default)}" for p in params) + ")"


def _comp_item(item) -> str:
    if isinstance(item, CompRef):
        args = "(" + ", ".join(print_expr(a) for a in item.args) + ")" if item.args else ""
        return item.name + args
    if isinstance(item, CompForall):
        return f"forall {_bind(item.binding)} {_comp_item(item.item)}"
    if isinstance(item, CompParallel):
        return "(" + " || ".join(_comp_item(i) for i in item.items) + ")"
    raise TypeError(f"not a composite item: {item!r}")


def print_spec(ast: SpecAst) -> str:
    """Render an AST back to FSP text; parsing the result yields an equal AST."""
    out: List[str] = []
    for const in ast.constants:
        out.append(f"const {const.name} = {print_expr(const.value)}")
    for process in ast.processes:
        lines = [f"{process.name}{_params(process.params)} = {print_body(process.body)}"]
        for local in process.locals:
            indices = "".join(_bind(b) for b in local.indices)
            lines.append(f",\n  {local.name}{indices} = {print_body(local.body)}")
        if process.alphabet_ext:
            lines.append(f"\n  +{_label_set(process.alphabet_ext)}")
        out.append("".join(lines) + ".")
    for composite in ast.composites:
        items = " || ".join(_comp_item(i) for i in composite.body.items)
        out.append(f"||{composite.name}{_params(composite.params)} = {items}.")
    for kind in ("controllable", "reach", "avoid"):
        actions = getattr(ast, kind)
        if actions:
            out.append(f"{kind} {_label_set(actions)}")
    if ast.target is not None:
        out.append(f"target {ast.target}")
    return "\n\n".join(out) + "\n"
