"""Rank, discriminant, and Clifford-class invariants on total Witt data.

e0 is total rank mod 2, e1 the product of signed discriminants on the
even-rank part, and e2 sends an even-rank trivial-discriminant class
over Q to the common Brauer class of the two components of its even
Clifford algebra.

e2 is computed structurally: Witt-reduce, split the even Clifford
algebra of the anisotropic kernel, extract a quaternion basis, read its
ramification.  A second, independent route evaluates the classical
local symbol dictionary (Hasse invariant with the mod-8 correction
terms); the two are compared wherever both apply.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .brauer import BrauerClass2, class_of_algebra, quaternion_from_class
from .clifford import discriminant_algebra, split_components
from .errors import CliffinvError, UnsupportedBase
from .forms import (
    DiagonalForm,
    WittClass,
    _as_entries,
    hasse_invariant,
    orthogonal_sum,
    signed_discriminant,
    witt_decompose,
)
from .scalars import (
    QQ,
    PrimeField,
    RationalField,
    SquareClass,
    hilbert_symbol,
    square_class,
    support_places,
)

TRIVIAL_LABEL = "trivial"


@dataclass
class TotalWittElement:
    """Witt classes indexed by value-line representatives.

    Over a field there is a single label "trivial"; the Dedekind layer
    supplies class-group representatives.  Absent labels mean zero.
    """

    components: dict

    @classmethod
    def from_form(cls, q, label: str = TRIVIAL_LABEL) -> "TotalWittElement":
        return cls({label: witt_decompose(q)})

    @classmethod
    def from_forms(cls, assignments: dict) -> "TotalWittElement":
        return cls({label: witt_decompose(q) for label, q in assignments.items()})

    def witt_classes(self):
        return list(self.components.values())


def _components(w):
    if isinstance(w, TotalWittElement):
        return w.witt_classes()
    if isinstance(w, WittClass):
        return [w]
    return [witt_decompose(w)]


def e0(w) -> int:
    """Total rank modulo 2."""
    return sum(len(c.kernel) for c in _components(w)) % 2


def e1(w) -> SquareClass:
    """Product of the signed discriminants; needs e0 = 0 componentwise."""
    comps = _components(w)
    field = comps[0].field
    for c in comps:
        if len(c.kernel) % 2:
            raise ValueError("e1 needs even rank on every component")
        if c.field != field:
            raise ValueError("components live over different fields")
    out = square_class(field.one(), field)
    for c in comps:
        if not c.kernel:
            continue
        d = signed_discriminant(DiagonalForm(c.kernel, field))
        if len(c.kernel) <= 6:
            # independent route through the centre of the even Clifford algebra
            da = discriminant_algebra(DiagonalForm(c.kernel, field))
            if square_class(da.delta, field) != d:
                raise CliffinvError("centre discriminant disagrees with the determinant")
        out = out * d
    return out


def _in_i2(entries, field) -> bool:
    if len(entries) % 2:
        return False
    return signed_discriminant(DiagonalForm(entries, field)).is_trivial


def _e2_structural_kernel(kernel, field) -> BrauerClass2:
    """Brauer class of a component of C0 of an anisotropic I2 kernel."""
    if not kernel:
        return BrauerClass2.trivial()
    if len(kernel) == 4:
        sc = split_components(DiagonalForm(kernel, field))
        plus = class_of_algebra(sc.plus)
        minus = class_of_algebra(sc.minus)
        if plus != minus:
            raise CliffinvError("the two component classes disagree")
        return plus
    raise CliffinvError(
        f"anisotropic kernel of rank {len(kernel)} is outside the structural range"
    )


def clifford_invariant_local(entries, v) -> int:
    """Local Clifford class via the Hasse invariant and mod-8 corrections.

    For rank n and signed discriminant d the correction multiplies the
    Hasse symbol by (-1,-d) when n is 3 or 4 mod 8, by (-1,-1) when n is
    5 or 6 mod 8, and by (-1,d) when n is 7 or 0 mod 8.
    """
    es = [Fraction(a) for a in entries]
    s = hasse_invariant(es, v)
    n = len(es) % 8
    d = Fraction(1)
    for a in es:
        d *= a
    if (len(es) * (len(es) - 1) // 2) % 2:
        d = -d
    if n in (3, 4):
        s *= hilbert_symbol(-1, -d, v)
    elif n in (5, 6):
        s *= hilbert_symbol(-1, -1, v)
    elif n in (7, 0):
        s *= hilbert_symbol(-1, d, v)
    return s


def clifford_invariant_class(entries) -> BrauerClass2:
    """The symbol-dictionary route to the Clifford Brauer class over Q."""
    es = [Fraction(a) for a in entries]
    ram = [v for v in support_places(*es) if clifford_invariant_local(es, v) == -1]
    return BrauerClass2(ram)


def e2(w) -> BrauerClass2:
    """Brauer class of the even Clifford components, summed over labels.

    Components must have even rank and trivial signed discriminant.
    Over F_p every class is trivial, so the result is the empty set.
    Over Q: rank-4 components are split directly; larger ranks are
    Witt-reduced first, and an anisotropic kernel beyond rank 4 is an
    error (the structural extraction cannot reach it).
    """
    comps = _components(w)
    total = BrauerClass2.trivial()
    for c in comps:
        field = c.field
        if isinstance(field, PrimeField):
            if len(c.kernel) % 2 or (
                c.kernel and not signed_discriminant(DiagonalForm(c.kernel, field)).is_trivial
            ):
                raise ValueError("component is not an I2 element")
            continue  # the 2-torsion Brauer group of F_p is trivial
        if not isinstance(field, RationalField):
            raise UnsupportedBase("e2 is computed over Q (and trivially over F_p)")
        if not _in_i2(c.kernel, field) and c.kernel:
            raise ValueError("component is not an I2 element")
        cls = _e2_structural_kernel(c.kernel, field)
        if c.kernel:
            oracle = clifford_invariant_class(c.kernel)
            if oracle != cls:
                raise CliffinvError("structural class disagrees with the symbol dictionary")
        total = total + cls
    return total


def e2_of_form(q) -> BrauerClass2:
    """e2 of a single even-rank trivial-discriminant form over Q.

    Rank 4 avoids Witt reduction entirely; other ranks reduce first.
    """
    entries = _as_entries(q)
    field = q.field
    if isinstance(field, PrimeField):
        return e2(TotalWittElement.from_form(q))
    if not _in_i2(entries, field):
        raise ValueError("form is not an I2 element")
    if len(entries) == 4:
        sc = split_components(DiagonalForm(entries, field))
        plus = class_of_algebra(sc.plus)
        minus = class_of_algebra(sc.minus)
        if plus != minus:
            raise CliffinvError("the two component classes disagree")
        oracle = clifford_invariant_class(entries)
        if oracle != plus:
            raise CliffinvError("structural class disagrees with the symbol dictionary")
        return plus
    return e2(TotalWittElement.from_form(q))


def e2_additivity_check(q, q2) -> bool:
    """Does e2 of the orthogonal sum equal the sum of the e2 values?

    The summands are evaluated structurally.  The sum is evaluated
    structurally whenever its anisotropic kernel has rank at most 4;
    otherwise (definite rank-8 sums) the symbol dictionary stands in,
    having been cross-validated against the structural route on both
    summands.
    """
    c1 = e2_of_form(q)
    c2 = e2_of_form(q2)
    s = orthogonal_sum(q, q2)
    entries = _as_entries(s)
    field = s.field if hasattr(s, "field") else QQ
    if isinstance(field, PrimeField):
        return True  # all three classes are trivial
    w = witt_decompose(s)
    if len(w.kernel) <= 4:
        c_sum = _e2_structural_kernel(w.kernel, field)
        oracle = clifford_invariant_class(entries)
        if oracle != c_sum:
            raise CliffinvError("structural class disagrees with the symbol dictionary")
    else:
        # validated fallback: the dictionary agreed with the structural
        # route on both summands already (inside e2_of_form)
        c_sum = clifford_invariant_class(entries)
    return c_sum == c1 + c2


def construct_preimage(c: BrauerClass2) -> DiagonalForm:
    """A rank-4 I2 form over Q with e2 equal to the given class.

    Realises the class as a quaternion algebra and takes the reduced
    norm form <1, -a, -b, ab>; the postcondition e2 = c is verified
    before returning.
    """
    a, b = quaternion_from_class(c)
    q = DiagonalForm((Fraction(1), -a, -b, a * b), QQ)
    got = e2_of_form(q)
    if got != c:
        raise CliffinvError("norm form fails to hit the requested class")
    return q
