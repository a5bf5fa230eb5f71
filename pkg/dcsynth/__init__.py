# The MIT License (MIT)
# Copyright © 2023 dcsynth developers

# Permission is hereby granted, free of charge, to any person obtaining a copy of this software and associated
# documentation files (the “Software”), to deal in the Software without restriction, including without limitation
# the rights to use, copy, modify, merge, publish, distribute, sublicense, and/or sell copies of the Software,
# and to permit persons to whom the Software is furnished to do so, subject to the following conditions:

# The above copyright notice and this permission notice shall be included in all copies or substantial portions of
# the Software.

# THE SOFTWARE IS PROVIDED “AS IS”, WITHOUT WARRANTY OF ANY KIND, EXPRESS OR IMPLIED, INCLUDING BUT NOT LIMITED TO
# THE WARRANTIES OF MERCHANTABILITY, FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL
# THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER LIABILITY, WHETHER IN AN ACTION
# OF CONTRACT, TORT OR OTHERWISE, ARISING FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER
# DEALINGS IN THE SOFTWARE.


__version__ = "0.1.0"

from .base.engine import BaseEngine as BaseEngine
from .base.engine import EngineRun as EngineRun
from .base.engine import SynthesisStats as SynthesisStats
from .base.engine import Verdict as Verdict
from .fsp import load_problem as load_problem
from .engine.directed import DirectedEngine as DirectedEngine
from .engine.directed import synthesize as synthesize
from .oracle.solve import MonolithicEngine as MonolithicEngine
from .oracle.solve import solve_monolithic as solve_monolithic
from .oracle.verify import verify_controller as verify_controller
from .bench.transfer_line import generate_transfer_line as generate_transfer_line

# Lower case engine names
from .engine.directed import DirectedEngine as dcs
from .oracle.solve import MonolithicEngine as mono
