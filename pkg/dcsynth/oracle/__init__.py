from .solve import GameSolution as GameSolution
from .solve import MonolithicEngine as MonolithicEngine
from .solve import solve_monolithic as solve_monolithic
from .solve import step_rule as step_rule
from .solve import strategy_controller as strategy_controller
from .verify import Violation as Violation
from .verify import VerificationReport as VerificationReport
from .verify import verify_controller as verify_controller
