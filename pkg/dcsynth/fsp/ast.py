"""Syntax tree of the FSP subset.

Nodes are frozen dataclasses so two parses of the same text compare equal. Source
positions ride along for diagnostics but never take part in equality.
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union


def _pos():
    return field(default=0, compare=False, repr=False)


# Expressions.


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    """Lowercase index variable bound by a local definition, a range binding or `forall`."""

    name: str
    line: int = _pos()
    column: int = _pos()


@dataclass(frozen=True)
class ConstRef:
    """Uppercase name: a process parameter or a constant."""

    name: str
    line: int = _pos()
    column: int = _pos()


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


Expr = Union[Num, Var, ConstRef, Neg, BinOp]


# Labels.


@dataclass(frozen=True)
class IndexExpr:
    expr: Expr


@dataclass(frozen=True)
class IndexRange:
    lo: Expr
    hi: Expr


@dataclass(frozen=True)
class IndexBind:
    var: str
    lo: Expr
    hi: Expr


Index = Union[IndexExpr, IndexRange, IndexBind]


@dataclass(frozen=True)
class ActionPattern:
    name: str
    indices: Tuple[Index, ...] = ()


# Process bodies.


@dataclass(frozen=True)
class ProcessRef:
    name: str
    indices: Tuple[Expr, ...] = ()
    line: int = _pos()
    column: int = _pos()


@dataclass(frozen=True)
class Stop:
    pass


@dataclass(frozen=True)
class ErrorProcess:
    pass


@dataclass(frozen=True)
class Branch:
    guard: Optional[Expr]
    actions: Tuple[ActionPattern, ...]
    target: "Body"


@dataclass(frozen=True)
class Choice:
    branches: Tuple[Branch, ...]


Body = Union[ProcessRef, Stop, ErrorProcess, Choice]


# Definitions.


@dataclass(frozen=True)
class Param:
    name: str
    default: Expr


@dataclass(frozen=True)
class LocalDef:
    name: str
    indices: Tuple[IndexBind, ...]
    body: Body
    line: int = _pos()
    column: int = _pos()


@dataclass(frozen=True)
class ProcessDef:
    name: str
    params: Tuple[Param, ...]
    body: Body
    locals: Tuple[LocalDef, ...] = ()
    alphabet_ext: Tuple[ActionPattern, ...] = ()
    line: int = _pos()
    column: int = _pos()


@dataclass(frozen=True)
class CompRef:
    name: str
    args: Tuple[Expr, ...] = ()
    line: int = _pos()
    column: int = _pos()


@dataclass(frozen=True)
class CompForall:
    binding: IndexBind
    item: "CompItem"


@dataclass(frozen=True)
class CompParallel:
    items: Tuple["CompItem", ...]


CompItem = Union[CompRef, CompForall, CompParallel]


@dataclass(frozen=True)
class CompositeDef:
    name: str
    params: Tuple[Param, ...]
    body: CompParallel
    line: int = _pos()
    column: int = _pos()


@dataclass(frozen=True)
class ConstDef:
    name: str
    value: Expr
    line: int = _pos()
    column: int = _pos()


@dataclass(frozen=True)
class SpecAst:
    constants: Tuple[ConstDef, ...] = ()
    processes: Tuple[ProcessDef, ...] = ()
    composites: Tuple[CompositeDef, ...] = ()
    controllable: Tuple[ActionPattern, ...] = ()
    reach: Tuple[ActionPattern, ...] = ()
    avoid: Tuple[ActionPattern, ...] = ()
    target: Optional[str] = None

    def process(self, name: str) -> Optional[ProcessDef]:
        return next((p for p in self.processes if p.name == name), None)

    def composite(self, name: str) -> Optional[CompositeDef]:
        return next((c for c in self.composites if c.name == name), None)
