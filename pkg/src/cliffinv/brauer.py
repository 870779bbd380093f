"""2-torsion Brauer classes of Q as finite even sets of ramified places."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .algebras import StructureAlgebra, find_quaternion_basis
from .errors import SearchExhausted
from .scalars import Place, hilbert_symbol, support_places


class BrauerClass2:
    """A finite even set of places; the group law is symmetric difference."""

    __slots__ = ("places",)

    def __init__(self, places):
        ps = frozenset(places)
        if len(ps) % 2:
            raise ValueError("ramification sets have even cardinality")
        object.__setattr__(self, "places", ps)

    @classmethod
    def trivial(cls) -> "BrauerClass2":
        return cls(frozenset())

    @classmethod
    def from_strs(cls, names) -> "BrauerClass2":
        return cls(frozenset(Place.parse(s) for s in names))

    def sorted_places(self):
        return sorted(self.places, key=lambda v: v.sort_key())

    def __add__(self, other: "BrauerClass2") -> "BrauerClass2":
        return BrauerClass2(self.places ^ other.places)

    def __eq__(self, other):
        return isinstance(other, BrauerClass2) and self.places == other.places

    def __hash__(self):
        return hash(self.places)

    def __len__(self):
        return len(self.places)

    def is_trivial(self) -> bool:
        return not self.places

    def __repr__(self):
        return "BrauerClass2({" + ", ".join(str(v) for v in self.sorted_places()) + "})"

    def to_json(self):
        return {"ramified": [str(v) for v in self.sorted_places()]}


def class_of_quaternion(a, b) -> BrauerClass2:
    """Places where (a, b) ramifies, i.e. where the Hilbert symbol is -1."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("nonzero parameters required")
    ram = [v for v in support_places(a, b) if hilbert_symbol(a, b, v) == -1]
    return BrauerClass2(ram)


def add(c1: BrauerClass2, c2: BrauerClass2) -> BrauerClass2:
    return c1 + c2


def index(c: BrauerClass2) -> int:
    """1 for the trivial class, else 2 (period equals index over Q)."""
    return 1 if c.is_trivial() else 2


def _candidate_values(c: BrauerClass2, aux=(2, 3, 5, 7, 11, 13, 17, 19, 23)):
    base = [-1]
    base += [v.p for v in c.sorted_places() if not v.is_infinite]
    for p in aux:
        if p not in base:
            base.append(p)
    values = {1}
    for r in range(1, len(base) + 1):
        for combo in combinations(range(len(base)), r):
            prod = 1
            for i in combo:
                prod *= base[i]
            values.add(prod)
    return sorted(values, key=lambda v: (abs(v), v < 0))


def quaternion_from_class(c: BrauerClass2, cap: int = 10**4):
    """First (a, b) in a deterministic ladder with matching ramification.

    Candidates are signed products of the class's primes padded with
    small auxiliary primes, ordered by magnitude; the search is capped
    and reports the bound on failure.
    """
    values = _candidate_values(c)
    tested = 0
    for k, a in enumerate(values):
        for b in values[: k + 1]:
            pairs = ((a, b),) if a == b else ((a, b), (b, a))
            for x, y in pairs:
                tested += 1
                if tested > cap:
                    raise SearchExhausted(f"quaternion pair for {c!r}", cap)
                if class_of_quaternion(x, y) == c:
                    return Fraction(x), Fraction(y)
    raise SearchExhausted(f"quaternion pair for {c!r}", cap)


def class_of_algebra(a: StructureAlgebra) -> BrauerClass2:
    """Brauer class of a four-dimensional central simple algebra over Q."""
    alpha, beta, _ = find_quaternion_basis(a)
    return class_of_quaternion(alpha, beta)
