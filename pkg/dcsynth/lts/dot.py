from typing import Optional, Sequence

from dcsynth.lts.lts import Lts


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def lts_to_dot(lts: Lts, names: Optional[Sequence[str]] = None) -> str:
    names = names or lts.states
    lines = [f"digraph {_quote(lts.name)} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for state, name in enumerate(names):
        shape = "doublecircle" if state == lts.error_state else "circle"
        lines.append(f"  s{state} [shape={shape}, label={_quote(name)}];")
    lines.append(f"  __start -> s{lts.initial};")
    for source, label, target in lts.edges():
        lines.append(f"  s{source} -> s{target} [label={_quote(str(label))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
