import math
from typing import Dict, Optional, Union

from dcsynth.abstraction.build import AbstractionResult, Ref
from dcsynth.lts.lts import ControlProblem


def _vertex(problem: ControlProblem, ref: Ref) -> str:
    component = problem.components[ref.component]
    return f"{component.name}:{component.states[ref.state]}"


def abstraction_to_dot(
    problem: ControlProblem,
    result: AbstractionResult,
    distances: Optional[Dict[Ref, Union[int, float]]] = None,
) -> str:
    """Abstracting path graph as DOT. Vertices are `component:state`, annotated with generation and distance."""
    ids = {ref: f"v{n}" for n, ref in enumerate(sorted(result.generations))}
    lines = [f'digraph "abstraction {problem.describe(result.root)}" {{', "  rankdir=LR;"]
    for ref, node in ids.items():
        text = f"{_vertex(problem, ref)}\\ngen {result.generations[ref]}"
        if distances is not None:
            d = distances.get(ref, math.inf)
            text += "\\nD=inf" if d == math.inf else f"\\nD={d}"
        style = ", style=dashed" if ref in result.errors else ""
        shape = "doublecircle" if result.generations[ref] == 0 and ref in result.roots() else "ellipse"
        lines.append(f'  {node} [shape={shape}, label="{text}"{style}];')
    for edge in sorted(result.edges):
        attrs = [f'label="{edge.label}"']
        if edge in result.goals:
            attrs.append("penwidth=2")
        if edge in result.blocked:
            attrs.append("color=red")
        lines.append(f"  {ids[edge.source]} -> {ids[edge.target]} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
