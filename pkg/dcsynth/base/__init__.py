from .engine import BaseEngine as BaseEngine
from .engine import EngineRun as EngineRun
from .engine import SynthesisStats as SynthesisStats
from .engine import Verdict as Verdict
from .errors import DcsError as DcsError
from .config import add_args as add_args
from .config import config as config
from .config import check_config as check_config
