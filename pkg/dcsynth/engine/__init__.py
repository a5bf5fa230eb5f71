from .queue import OpenQueue as OpenQueue
from .node import ExplorationNode as ExplorationNode
from .node import Marker as Marker
from .node import Status as Status
from .controller import Controller as Controller
from .controller import extract_controller as extract_controller
from .directed import DirectedEngine as DirectedEngine
from .directed import DirectedSearch as DirectedSearch
from .directed import synthesize as synthesize
