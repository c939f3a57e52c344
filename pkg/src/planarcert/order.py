"""Total order over keys with insert-after and O(1) comparison.

Labels live in a 62-bit universe; an insert takes the midpoint of the
neighboring labels and a collision triggers one even relabel of the whole
list.  Collisions need ~45 inserts nested inside a single gap, which the
embedding workload essentially never produces, so the relabel cost stays
negligible; the contract is only empirical near-constant time.
"""

from __future__ import annotations

LOG_UNIVERSE = 62
_UNIVERSE = 1 << LOG_UNIVERSE


class OrderList:
    def __init__(self) -> None:
        self.label: dict[int, int] = {}
        self._next: dict[int, int | None] = {}
        self._prev: dict[int, int | None] = {}
        self._head: int | None = None
        self._tail: int | None = None
        self.relabel_count = 0

    def __len__(self) -> int:
        return len(self.label)

    def __contains__(self, key: int) -> bool:
        return key in self.label

    def append(self, key: int) -> None:
        if self._tail is None:
            self.label[key] = _UNIVERSE // 2
            self._next[key] = self._prev[key] = None
            self._head = self._tail = key
        else:
            self.insert_after(self._tail, key)

    def insert_after(self, anchor: int, key: int) -> None:
        if key in self.label:
            raise ValueError(f"key {key} already ordered")
        nxt = self._next[anchor]
        self._next[anchor] = key
        self._prev[key] = anchor
        self._next[key] = nxt
        if nxt is None:
            self._tail = key
        else:
            self._prev[nxt] = key
        la = self.label[anchor]
        lb = self.label[nxt] if nxt is not None else _UNIVERSE
        if lb - la < 2:
            self._relabel_after(anchor)
            la = self.label[anchor]
            lb = self.label[nxt] if nxt is not None else _UNIVERSE
        self.label[key] = (la + lb) // 2

    def less(self, a: int, b: int) -> bool:
        return self.label[a] < self.label[b]

    def iter_keys(self):
        k = self._head
        while k is not None:
            yield k
            k = self._next[k]

    def _relabel_after(self, anchor: int) -> None:
        """Spread a doubling window of successors of anchor evenly.

        Grows the window until the enclosing label gap offers at least two
        units per element, falling back to a full relabel if the tail of the
        list is reached without finding room.
        """
        self.relabel_count += 1
        width = 4
        while True:
            members = []
            k = self._next[anchor]
            while k is not None and len(members) < width:
                members.append(k)
                k = self._next[k]
            lo = self.label[anchor]
            hi = self.label[k] if k is not None else _UNIVERSE
            if hi - lo >= 2 * (len(members) + 1):
                gap = (hi - lo) // (len(members) + 1)
                lab = lo + gap
                for mk in members:
                    self.label[mk] = lab
                    lab += gap
                return
            if k is None:
                break
            width *= 2
        self._relabel_all()

    def _relabel_all(self) -> None:
        stride = _UNIVERSE // (len(self.label) + 2)
        lab = stride
        k = self._head
        while k is not None:
            self.label[k] = lab
            lab += stride
            k = self._next[k]

    def check(self) -> None:
        labs = [self.label[k] for k in self.iter_keys()]
        assert labs == sorted(labs) and len(set(labs)) == len(labs)
