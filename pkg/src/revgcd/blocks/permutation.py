"""Fixed bit permutations: two layers of disjoint swaps, or four CNOT layers."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..circuit import Fragment, SWAP, X


class BlockError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    """``images[i]`` is the position that the value at position ``i`` moves to."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(i) for i in self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise BlockError(f"{self.images} is not a bijection on 0..{len(self.images) - 1}")

    @classmethod
    def rotation(cls, n: int, k: int) -> "Permutation":
        return cls(tuple((i + k) % n for i in range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(n))
        for cyc in cycles:
            for j, q in enumerate(cyc):
                images[q] = cyc[(j + 1) % len(cyc)]
        return cls(tuple(images))

    def __len__(self) -> int:
        return len(self.images)

    def cycles(self) -> list[list[int]]:
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cyc, q = [], start
            while not seen[q]:
                seen[q] = True
                cyc.append(q)
                q = self.images[q]
            out.append(cyc)
        return out

    def apply(self, values: Sequence) -> list:
        out = [None] * len(values)
        for i, v in enumerate(values):
            out[self.images[i]] = v
        return out


Pairs = list[tuple[int, int]]


def decompose_to_transposition_layers(perm: Permutation) -> tuple[Pairs, Pairs]:
    """Split ``perm`` into two sets of disjoint transpositions.

    Each k-cycle ``c_0 -> c_1 -> ... -> c_{k-1}`` is the product of two
    reflections of its index ring: first ``j <-> 1 - j`` and then
    ``j <-> 2 - j`` (indices mod k).  Both are involutions, so each is a set
    of disjoint swaps.
    """
    first: Pairs = []
    second: Pairs = []
    for cyc in perm.cycles():
        k = len(cyc)
        if k == 1:
            continue
        for j in range(k):
            i1 = (1 - j) % k
            if j < i1:
                first.append(tuple(sorted((cyc[j], cyc[i1]))))
            i2 = (2 - j) % k
            if j < i2:
                second.append(tuple(sorted((cyc[j], cyc[i2]))))
    return sorted(first), sorted(second)


def swap_layers(perm: Permutation, qubits: Sequence[int]) -> Fragment:
    if len(qubits) != len(perm):
        raise BlockError(f"permutation of width {len(perm)} applied to {len(qubits)} qubits")
    layers = []
    for pairs in decompose_to_transposition_layers(perm):
        if pairs:
            layers.append([SWAP(qubits[a], qubits[b]) for a, b in pairs])
    return layers


def shift_layers(target: Sequence[int], k: int) -> Fragment:
    """Rotate ``target`` so the bit at index i lands on index (i + k) mod n."""
    n = len(target)
    if not 0 <= k < n:
        raise BlockError(f"shift offset {k} outside [0, {n})")
    if k == 0:
        return []
    return swap_layers(Permutation.rotation(n, k), target)


def ancilla_permutation_layers(perm: Permutation, data: Sequence[int], ancillae: Sequence[int]) -> Fragment:
    """Copy out, clear, copy back, clear: four CNOT layers."""
    w = len(perm)
    if len(data) != w or len(ancillae) != w:
        raise BlockError(f"permutation width {w} needs {w} data and {w} ancilla qubits")
    img = perm.images
    return [
        [X(ancillae[img[i]], data[i]) for i in range(w)],
        [X(data[i], ancillae[img[i]]) for i in range(w)],
        [X(data[j], ancillae[j]) for j in range(w)],
        [X(ancillae[j], data[j]) for j in range(w)],
    ]
