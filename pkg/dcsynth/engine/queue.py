import heapq
import itertools
from typing import Dict, List, Tuple, Union

Priority = Union[int, float]


class OpenQueue:
    """Min-heap of open nodes keyed by estimate. Equal estimates pop LIFO.

    Re-pushing a node supersedes its previous entry; superseded entries are skipped on pop.
    """

    def __init__(self):
        self._heap: List[Tuple[Priority, int, int]] = []
        self._counter = itertools.count(1)
        self._latest: Dict[int, int] = {}

    def push(self, node_id: int, priority: Priority):
        seq = next(self._counter)
        self._latest[node_id] = seq
        heapq.heappush(self._heap, (priority, -seq, node_id))

    def pop(self) -> Tuple[int, Priority]:
        while self._heap:
            priority, neg_seq, node_id = heapq.heappop(self._heap)
            if self._latest.get(node_id) == -neg_seq:
                del self._latest[node_id]
                return node_id, priority
        raise IndexError("pop from an empty open queue")

    def discard(self, node_id: int):
        self._latest.pop(node_id, None)

    def __contains__(self, node_id: int) -> bool:
        return node_id in self._latest

    def __len__(self) -> int:
        return len(self._latest)

    def __bool__(self) -> bool:
        return bool(self._latest)
