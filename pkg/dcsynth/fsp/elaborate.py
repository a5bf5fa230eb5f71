from collections import deque
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

import bittensor as bt

from dcsynth.base.errors import ElaborationError
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
    LocalDef,
    Neg,
    Num,
    ProcessDef,
    ProcessRef,
    SpecAst,
    Stop,
    Var,
)
from dcsynth.lts.label import Label
from dcsynth.lts.lts import ControlProblem, Lts

Env = Dict[str, int]

MAX_COMPONENT_STATES = 10**6
MAX_ALIAS_DEPTH = 1000

_OPS = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "<": lambda a, b: int(a < b),
    "<=": lambda a, b: int(a <= b),
    ">": lambda a, b: int(a > b),
    ">=": lambda a, b: int(a >= b),
    "==": lambda a, b: int(a == b),
    "!=": lambda a, b: int(a != b),
}


def evaluate(expr: Expr, env: Mapping[str, int]) -> int:
    if isinstance(expr, Num):
        return expr.value
    if isinstance(expr, (Var, ConstRef)):
        if expr.name not in env:
            kind = "variable" if isinstance(expr, Var) else "constant"
            where = f"{expr.line}:{expr.column}: " if expr.line else ""
            raise ElaborationError(f"{where}unbound {kind} {expr.name}")
        return env[expr.name]
    if isinstance(expr, Neg):
        return -evaluate(expr.operand, env)
    if isinstance(expr, BinOp):
        op = _OPS.get(expr.op)
        if op is None:
            raise ElaborationError(f"unsupported operator {expr.op}")
        return op(evaluate(expr.left, env), evaluate(expr.right, env))
    raise ElaborationError(f"unsupported expression {expr!r}")


def _range(lo: Expr, hi: Expr, env: Mapping[str, int]) -> range:
    return range(evaluate(lo, env), evaluate(hi, env) + 1)


def expand_action(action: ActionPattern, env: Env) -> Iterator[Tuple[Label, Env]]:
    """Every concrete label an action pattern denotes, with the environment its bindings produce."""

    def go(position: int, values: Tuple[int, ...], env: Env):
        if position == len(action.indices):
            if any(v < 0 for v in values):
                raise ElaborationError(f"negative index in {action.name}{list(values)}")
            yield Label(action.name, values), env
            return
        index = action.indices[position]
        if isinstance(index, IndexExpr):
            yield from go(position + 1, values + (evaluate(index.expr, env),), env)
        elif isinstance(index, IndexRange):
            for v in _range(index.lo, index.hi, env):
                yield from go(position + 1, values + (v,), env)
        else:
            for v in _range(index.lo, index.hi, env):
                yield from go(position + 1, values + (v,), dict(env, **{index.var: v}))

    yield from go(0, (), env)


def expand_labels(actions, env: Env) -> frozenset:
    return frozenset(label for action in actions for label, _ in expand_action(action, env))


class _ProcessElaborator:
    """Turns one process instance into an Lts by exploring its reachable (local, valuation) states."""

    def __init__(self, process: ProcessDef, env: Env, name: str):
        self.process = process
        self.env = env
        self.name = name
        self.locals: Dict[str, LocalDef] = {l.name: l for l in process.locals}
        self.locals[process.name] = LocalDef(process.name, (), process.body)
        self._uids: Dict[int, int] = {}
        self._nodes: List[object] = []

    def _uid(self, node) -> int:
        uid = self._uids.get(id(node))
        if uid is None:
            uid = self._uids[id(node)] = len(self._nodes)
            self._nodes.append(node)
        return uid

    def _env_key(self, env: Env) -> tuple:
        return tuple(sorted((k, v) for k, v in env.items() if k not in self.env or self.env[k] != v))

    def _local_env(self, local: LocalDef, values: Tuple[int, ...]) -> Env:
        env = dict(self.env)
        for binding, value in zip(local.indices, values):
            env[binding.var] = value
        return env

    def resolve(self, body: Body, env: Env, depth: int = 0) -> tuple:
        if isinstance(body, Stop):
            return ("stop",)
        if isinstance(body, ErrorProcess):
            return ("error",)
        if isinstance(body, Choice):
            return ("choice", self._uid(body), self._env_key(env))
        if depth > MAX_ALIAS_DEPTH:
            raise ElaborationError(f"{self.name}: unguarded recursion through {body.name}")
        local = self.locals[body.name]
        values = tuple(evaluate(e, env) for e in body.indices)
        if len(values) != len(local.indices):
            raise ElaborationError(
                f"{body.line}:{body.column}: {body.name} expects {len(local.indices)} indices, got {len(values)}"
            )
        for binding, value in zip(local.indices, values):
            allowed = _range(binding.lo, binding.hi, self.env)
            if value not in allowed:
                raise ElaborationError(
                    f"{body.line}:{body.column}: index {value} of {body.name} outside "
                    f"{allowed.start}..{allowed.stop - 1} in {self.name}"
                )
        if not isinstance(local.body, Choice):
            return self.resolve(local.body, self._local_env(local, values), depth + 1)
        return ("local", body.name, values)

    def _branch_steps(self, branch: Branch, position: int, env: Env) -> Iterator[Tuple[Label, tuple]]:
        uid = self._uid(branch)
        for label, bound in expand_action(branch.actions[position], env):
            if position + 1 < len(branch.actions):
                yield label, ("seq", uid, position + 1, self._env_key(bound))
            else:
                yield label, self.resolve(branch.target, bound)

    def _choice_steps(self, choice: Choice, env: Env) -> Iterator[Tuple[Label, tuple]]:
        for branch in choice.branches:
            if branch.guard is not None and not evaluate(branch.guard, env):
                continue
            yield from self._branch_steps(branch, 0, env)

    def steps(self, key: tuple) -> Iterator[Tuple[Label, tuple]]:
        kind = key[0]
        if kind == "local":
            local = self.locals[key[1]]
            return self._choice_steps(local.body, self._local_env(local, key[2]))
        if kind == "choice":
            return self._choice_steps(self._nodes[key[1]], dict(self.env, **dict(key[2])))
        if kind == "seq":
            return self._branch_steps(self._nodes[key[1]], key[2], dict(self.env, **dict(key[3])))
        return iter(())

    def _state_name(self, key: tuple, parent: Optional[str], label: Optional[Label]) -> str:
        if key[0] == "local":
            return key[1] + "".join(f"[{v}]" for v in key[2])
        if key[0] == "stop":
            return "STOP"
        if key[0] == "error":
            return "ERROR"
        return f"{parent}.{label}" if parent is not None else self.process.name

    def run(self) -> Lts:
        initial = self.resolve(ProcessRef(self.process.name), self.env)
        index: Dict[tuple, int] = {initial: 0}
        names: List[str] = [self._state_name(initial, None, None)]
        taken = {names[0]}
        edges: List[Tuple[int, Label, int]] = []
        queue = deque([initial])
        while queue:
            key = queue.popleft()
            source = index[key]
            targets: Dict[Label, tuple] = {}
            for label, target in self.steps(key):
                if targets.setdefault(label, target) != target:
                    raise ElaborationError(
                        f"{self.name}: nondeterministic choice on {label} at {names[source]}"
                    )
            for label in sorted(targets):
                target = targets[label]
                if target not in index:
                    if len(names) >= MAX_COMPONENT_STATES:
                        raise ElaborationError(f"{self.name}: more than {MAX_COMPONENT_STATES} states")
                    name = self._state_name(target, names[source], label)
                    while name in taken:
                        name += "'"
                    taken.add(name)
                    index[target] = len(names)
                    names.append(name)
                    queue.append(target)
                edges.append((source, label, index[target]))

        alphabet = expand_labels(self.process.alphabet_ext, self.env)
        lts = Lts.from_edges(
            self.name, names, edges, initial=0, alphabet=alphabet, error_state=index.get(("error",))
        )
        bt.logging.trace(f"elaborated {self.name}: {len(lts)} states, {lts.num_transitions} transitions")
        return lts


def _constants(ast: SpecAst, bindings: Mapping[str, int]) -> Env:
    env: Env = dict(bindings)
    for const in ast.constants:
        if const.name not in bindings:
            env[const.name] = evaluate(const.value, env)
    return env


def _bind_params(params, args: Tuple[int, ...], env: Env, name: str) -> Env:
    if len(args) > len(params):
        raise ElaborationError(f"{name} takes {len(params)} parameters, got {len(args)}")
    bound = dict(env)
    for i, param in enumerate(params):
        bound[param.name] = args[i] if i < len(args) else evaluate(param.default, env)
    return bound


def elaborate_process(
    ast: SpecAst, name: str, args: Tuple[int, ...] = (), bindings: Optional[Mapping[str, int]] = None
) -> Lts:
    process = ast.process(name)
    if process is None:
        raise ElaborationError(f"unknown process {name}")
    constants = _constants(ast, bindings or {})
    instance = name + (f"({','.join(str(a) for a in args)})" if args else "")
    return _ProcessElaborator(process, _bind_params(process.params, args, constants, name), instance).run()


def _instances(ast: SpecAst, item, env: Env) -> List[Tuple[str, Tuple[int, ...]]]:
    if isinstance(item, CompParallel):
        return [inst for child in item.items for inst in _instances(ast, child, env)]
    if isinstance(item, CompForall):
        values = _range(item.binding.lo, item.binding.hi, env)
        if not values:
            raise ElaborationError(
                f"empty forall range [{item.binding.var}:{values.start}..{values.stop - 1}]"
            )
        return [
            inst for v in values for inst in _instances(ast, item.item, dict(env, **{item.binding.var: v}))
        ]
    args = tuple(evaluate(a, env) for a in item.args)
    composite = ast.composite(item.name)
    if composite is not None:
        return _instances(ast, composite.body, _bind_params(composite.params, args, env, item.name))
    return [(item.name, args)]


def _target(ast: SpecAst) -> str:
    if ast.target is not None:
        return ast.target
    if len(ast.composites) == 1:
        return ast.composites[0].name
    if not ast.composites and len(ast.processes) == 1:
        return ast.processes[0].name
    raise ElaborationError("no target directive and no single composite to default to")


def elaborate(ast: SpecAst, bindings: Optional[Mapping[str, int]] = None) -> Tuple[List[Lts], ControlProblem]:
    """Instantiate the target composite into components and build the control problem.

    `bindings` override declared constants and supply free ones.
    """
    constants = _constants(ast, bindings or {})
    target = _target(ast)
    composite = ast.composite(target)
    if composite is not None:
        instances = _instances(ast, composite.body, _bind_params(composite.params, (), constants, target))
    else:
        instances = [(target, ())]

    components = [elaborate_process(ast, name, args, bindings) for name, args in instances]
    problem = ControlProblem(
        components=tuple(components),
        controllable=expand_labels(ast.controllable, constants),
        reach=expand_labels(ast.reach, constants),
        avoid=expand_labels(ast.avoid, constants),
    )
    bt.logging.debug(
        f"elaborated {target}: {len(components)} components, {len(problem.alphabet)} labels"
    )
    return components, problem
