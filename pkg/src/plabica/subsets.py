"""Cyclic combinatorics on [n]: cyclic intervals, weak separation, dihedral action.

Ground set is [n] = {1, ..., n} with its natural cyclic order.  Subsets are
modelled by :class:`KSubset`, collections of k-subsets by
:class:`LabelCollection`, and the dihedral group D_n (order 2n) by
:class:`DihedralElement`.
"""

from __future__ import annotations

import itertools
from math import comb


class KSubset:
    """An immutable subset of [n], stored sorted ascending."""

    __slots__ = ("n", "elements")

    def __init__(self, n, elements):
        elements = tuple(sorted(set(int(x) for x in elements)))
        if n < 1:
            raise ValueError("ambient size n must be positive")
        if elements and not (1 <= elements[0] and elements[-1] <= n):
            raise ValueError(f"elements {elements} not contained in [{n}]")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "elements", elements)

    def __setattr__(self, *args):
        raise AttributeError("KSubset is immutable")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.elements

    def __eq__(self, other):
        return (
            isinstance(other, KSubset)
            and self.n == other.n
            and self.elements == other.elements
        )

    def __lt__(self, other):
        return self.elements < other.elements

    def __hash__(self):
        return hash((self.n, self.elements))

    def __repr__(self):
        return "{%s}" % ",".join(str(x) for x in self.elements)

    def complement(self):
        """The complement [n] minus self, same ambient size."""
        inside = set(self.elements)
        return KSubset(self.n, (x for x in range(1, self.n + 1) if x not in inside))

    def to_json(self):
        return list(self.elements)

    @staticmethod
    def from_json(data, n):
        return KSubset(n, data)


class LabelCollection:
    """A set of k-subsets of [n], e.g. the face labels of a plabic graph."""

    __slots__ = ("n", "k", "labels")

    def __init__(self, n, k, labels):
        labels = frozenset(labels)
        for lab in labels:
            if lab.n != n:
                raise ValueError("label with mismatched ambient size")
            if len(lab) != k:
                raise ValueError(f"label {lab} does not have cardinality {k}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, *args):
        raise AttributeError("LabelCollection is immutable")

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(sorted(self.labels))

    def __contains__(self, lab):
        return lab in self.labels

    def __eq__(self, other):
        return (
            isinstance(other, LabelCollection)
            and (self.n, self.k) == (other.n, other.k)
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((self.n, self.k, self.labels))

    def __repr__(self):
        return f"LabelCollection(n={self.n}, k={self.k}, {sorted(self.labels)})"

    def complement_collection(self):
        return LabelCollection(self.n, self.n - self.k, (lab.complement() for lab in self.labels))

    def to_json(self):
        return {"n": self.n, "k": self.k, "labels": [lab.to_json() for lab in sorted(self.labels)]}

    @staticmethod
    def from_json(data):
        n, k = data["n"], data["k"]
        return LabelCollection(n, k, (KSubset(n, e) for e in data["labels"]))


def cyclic_interval(a, b, n):
    """The cyclic interval from a to b in [n], wrapping around when a > b."""
    if not (1 <= a <= n and 1 <= b <= n):
        raise ValueError(f"interval endpoints ({a},{b}) out of range [1,{n}]")
    if a <= b:
        return KSubset(n, range(a, b + 1))
    return KSubset(n, itertools.chain(range(a, n + 1), range(1, b + 1)))


def frozen_label(i, k, n):
    """Label of the boundary face between boundary vertices i and i+1."""
    return cyclic_interval((i - k) % n + 1, (i - 1) % n + 1, n)


def is_weakly_separated(I, J):
    """Whether no elements a,c of I-J and b,d of J-I strictly cyclically alternate.

    Walking around the cycle, the elements of the two symmetric differences
    alternate in at least four blocks exactly when a forbidden (a,b,c,d)
    pattern exists, so counting blocks decides the question in linear time.
    """
    if I.n != J.n:
        raise ValueError("operands live in different ambient sets")
    if len(I) != len(J):
        raise ValueError("operands have different cardinalities")
    in_I = set(I.elements) - set(J.elements)
    in_J = set(J.elements) - set(I.elements)
    marks = [(x, x in in_I) for x in sorted(in_I | in_J)]
    if not marks:
        return True
    blocks = sum(1 for idx in range(len(marks)) if marks[idx][1] != marks[idx - 1][1])
    return blocks <= 2


def is_weakly_separated_collection(C):
    return all(is_weakly_separated(a, b) for a, b in itertools.combinations(sorted(C), 2))


def is_maximal_wsc(C):
    """Maximality via the cardinality criterion |C| = k(n-k)+1.

    Valid because every maximal weakly separated collection of k-subsets of
    [n] arises as the face labels of a plabic graph, which has exactly
    k(n-k)+1 inner faces.
    """
    return len(C) == C.k * (C.n - C.k) + 1 and is_weakly_separated_collection(C)


class DihedralElement:
    """An element of D_n < S_n: x -> shift + x, or x -> shift + (2 - x) if reflected.

    The group is generated by the rotation x -> x+1 and the reflection
    x -> n+2-x; values are always normalised into {1, ..., n}.
    """

    __slots__ = ("n", "shift", "reflected")

    def __init__(self, n, shift=0, reflected=False):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "shift", int(shift) % n)
        object.__setattr__(self, "reflected", bool(reflected))

    def __setattr__(self, *args):
        raise AttributeError("DihedralElement is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, DihedralElement)
            and (self.n, self.shift, self.reflected) == (other.n, other.shift, other.reflected)
        )

    def __hash__(self):
        return hash((self.n, self.shift, self.reflected))

    def __repr__(self):
        if self.reflected:
            return f"sigma^{self.shift}*tau(n={self.n})"
        return f"sigma^{self.shift}(n={self.n})"

    def __call__(self, x):
        if self.reflected:
            return (self.shift + 2 - x - 1) % self.n + 1
        return (self.shift + x - 1) % self.n + 1

    def __mul__(self, other):
        """Composition: (g*h)(x) = g(h(x))."""
        if self.n != other.n:
            raise ValueError("mismatched n")
        shift = self.shift + (-other.shift if self.reflected else other.shift)
        return DihedralElement(self.n, shift, self.reflected != other.reflected)

    def inverse(self):
        if self.reflected:
            return self
        return DihedralElement(self.n, -self.shift, False)

    def apply(self, I):
        """Elementwise image of a KSubset."""
        if I.n != self.n:
            raise ValueError("mismatched n")
        return KSubset(self.n, (self(x) for x in I))

    def apply_collection(self, C):
        return LabelCollection(C.n, C.k, (self.apply(lab) for lab in C.labels))

    def as_permutation(self):
        """The element as a map [n] -> [n], represented by a tuple of images."""
        return tuple(self(x) for x in range(1, self.n + 1))


def sigma(n, m=1):
    return DihedralElement(n, m, False)


def tau(n):
    return DihedralElement(n, 0, True)


def dihedral_group(n):
    """All 2n elements of D_n."""
    return [DihedralElement(n, s, r) for r in (False, True) for s in range(n)]


def dihedral_from_permutation(perm, n):
    """Recover the DihedralElement matching a permutation tuple, or None."""
    for g in dihedral_group(n):
        if g.as_permutation() == tuple(perm):
            return g
    return None


def apply_dihedral(g, I):
    return g.apply(I)


def apply_permutation(perm, I):
    """Image of a KSubset under an arbitrary permutation given as image tuple."""
    return KSubset(I.n, (perm[x - 1] for x in I))


def preserves_weak_separation(perm, k, n):
    """Brute-force test whether a permutation of [n] preserves weak separation.

    Checks I || J implies perm(I) || perm(J) over all pairs of k-subsets.
    """
    perm = tuple(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError("input is not a bijection of [n]")
    subsets = [KSubset(n, c) for c in itertools.combinations(range(1, n + 1), k)]
    images = {S: apply_permutation(perm, S) for S in subsets}
    for I, J in itertools.combinations(subsets, 2):
        if is_weakly_separated(I, J) and not is_weakly_separated(images[I], images[J]):
            return False
    return True


def weak_separation_preservers(k, n):
    """All permutations of S_n preserving weak separation on k-subsets."""
    return [
        perm
        for perm in itertools.permutations(range(1, n + 1))
        if preserves_weak_separation(perm, k, n)
    ]


def count_k_subsets(k, n):
    return comb(n, k)
