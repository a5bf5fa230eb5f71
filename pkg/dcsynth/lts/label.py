import re
from dataclasses import dataclass
from typing import Iterable, Tuple

_LABEL_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*(\.[0-9]+)*$")


@dataclass(frozen=True, order=True)
class Label:
    """An action label: base name plus integer indices. `get[1]` is `Label("get", (1,))`."""

    name: str
    indices: Tuple[int, ...] = ()

    def __post_init__(self):
        if any(i < 0 for i in self.indices):
            raise ValueError(f"label indices must be non-negative: {self.name}{list(self.indices)}")

    def __str__(self) -> str:
        if not self.indices:
            return self.name
        return self.name + "." + ".".join(str(i) for i in self.indices)

    def __repr__(self) -> str:
        return f"Label({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Label":
        """Inverse of `str`: `get.1` -> Label("get", (1,))."""
        text = text.strip()
        if not _LABEL_RE.match(text):
            raise ValueError(f"not a canonical label: {text!r}")
        name, *indices = text.split(".")
        return cls(name, tuple(int(i) for i in indices))


def labels(*names: str) -> Tuple[Label, ...]:
    return tuple(Label.parse(n) for n in names)


def label_set(names: Iterable[str]) -> frozenset:
    return frozenset(Label.parse(n) for n in names)
