from .build import Ref as Ref
from .build import Edge as Edge
from .build import AbstractionResult as AbstractionResult
from .build import build_abstraction as build_abstraction
from .build import is_abstracting_path as is_abstracting_path
from .heuristic import INF as INF
from .heuristic import ActionRanking as ActionRanking
from .heuristic import Heuristic as Heuristic
from .heuristic import edge_weight as edge_weight
from .heuristic import backpropagate as backpropagate
from .heuristic import rank_actions as rank_actions
from .dot import abstraction_to_dot as abstraction_to_dot

# Vertex of the abstracting path graph.
ComponentStateRef = Ref
