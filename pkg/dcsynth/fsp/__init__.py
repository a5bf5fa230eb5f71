from typing import Mapping, Optional

from .ast import SpecAst as SpecAst
from .parser import parse as parse
from .parser import parse_file as parse_file
from .printer import print_spec as print_spec
from .elaborate import elaborate as elaborate
from .elaborate import elaborate_process as elaborate_process
from .elaborate import expand_labels as expand_labels

from dcsynth.lts.lts import ControlProblem


def load_problem(text: str, bindings: Optional[Mapping[str, int]] = None) -> ControlProblem:
    """Parse and elaborate FSP text in one go."""
    _, problem = elaborate(parse(text), bindings)
    return problem
