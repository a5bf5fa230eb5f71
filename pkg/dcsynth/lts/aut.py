"""Aldebaran `.aut` reader and writer.

    des (initial, #transitions, #states)
    (from,"label",to)
"""

import re
from typing import List, Tuple

from dcsynth.base.errors import AutFormatError
from dcsynth.lts.label import Label
from dcsynth.lts.lts import Lts

_HEADER_RE = re.compile(r"^des\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*$")
_EDGE_RE = re.compile(r'^\(\s*(\d+)\s*,\s*"([^"]*)"\s*,\s*(\d+)\s*\)\s*$')


def write_aut(lts: Lts) -> str:
    lines = [f"des ({lts.initial}, {lts.num_transitions}, {len(lts)})"]
    for source, label, target in lts.edges():
        lines.append(f'({source},"{label}",{target})')
    return "\n".join(lines) + "\n"


def read_aut(text: str, name: str = "aut") -> Lts:
    rows = [line.strip() for line in text.splitlines() if line.strip()]
    if not rows:
        raise AutFormatError("empty .aut document")
    header = _HEADER_RE.match(rows[0])
    if header is None:
        raise AutFormatError(f"line 1: malformed header {rows[0]!r}")
    initial, n_transitions, n_states = (int(g) for g in header.groups())
    edges: List[Tuple[int, Label, int]] = []
    for lineno, row in enumerate(rows[1:], start=2):
        match = _EDGE_RE.match(row)
        if match is None:
            raise AutFormatError(f"line {lineno}: malformed transition {row!r}")
        source, label, target = match.groups()
        try:
            edges.append((int(source), Label.parse(label), int(target)))
        except ValueError as e:
            raise AutFormatError(f"line {lineno}: {e}")
    if len(edges) != n_transitions:
        raise AutFormatError(f"header announces {n_transitions} transitions, found {len(edges)}")
    if any(not (0 <= s < n_states and 0 <= t < n_states) for s, _, t in edges):
        raise AutFormatError("transition endpoint outside the announced state range")
    try:
        return Lts.from_edges(name, [str(i) for i in range(n_states)], edges, initial=initial)
    except ValueError as e:
        raise AutFormatError(str(e))
