"""Relative (fractional) ideals of a numerical semigroup.

A relative ideal of S is a nonempty subset I of the integers with
I + S contained in I that admits a translate inside S.  It is the monomial
model of a fractional ideal of k[[S]]: generators may be negative, the
module generated is the union of the translates g + S, and translating by
b = conductor - min(I) always lands inside S, which is the fractionality
witness.

Every ideal is stored by its unique minimal generator set, so equality is
generator-tuple equality.  The stability test I+I = min(I)+I checks only the
forced candidate x = min(I): at monomial level min(I+I) = 2 min(I), which
pins the translation amount.  Completeness of that single candidate is
cross-checked against an exhaustive candidate search and against the
endomorphism-semigroup route, both shipped here as independent oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import AmbientMismatch, CapExceeded, EmptyInput
from .numsg import NumericalSemigroup, from_gaps


@dataclass(frozen=True)
class RelativeIdeal:
    """A relative ideal in canonical (minimal generator) form."""

    ambient: NumericalSemigroup
    minimal_generators: tuple[int, ...]

    @property
    def min_element(self) -> int:
        return self.minimal_generators[0]

    @cached_property
    def _window(self) -> int:
        # beyond min + window every integer with the right offset is a member
        gens = self.minimal_generators
        return gens[-1] - gens[0] + self.ambient.conductor + 1

    @cached_property
    def _mask(self) -> int:
        # membership bitmask on [min, min + window)
        lo = self.min_element
        width = self._window
        mask = 0
        for g in self.minimal_generators:
            shift = g - lo
            mask |= self.ambient.members_mask(width - shift) << shift
        return mask

    def contains(self, z: int) -> bool:
        k = z - self.min_element
        if k < 0:
            return False
        if k >= self._window:
            return True
        return bool(self._mask >> k & 1)

    def __contains__(self, z: int) -> bool:
        return self.contains(z)

    def members_mask(self, lo: int, width: int) -> int:
        """Bitmask of membership on [lo, lo + width)."""
        shift = self.min_element - lo
        mask = self._mask << shift if shift >= 0 else self._mask >> -shift
        full_from = max(self.min_element + self._window - lo, 0)
        if full_from < width:
            mask |= ((1 << (width - full_from)) - 1) << full_from
        return mask & ((1 << width) - 1)

    def __add__(self, other: "RelativeIdeal") -> "RelativeIdeal":
        return ideal_sum(self, other)

    def __str__(self) -> str:
        gens = ",".join(str(g) for g in self.minimal_generators)
        return f"({gens})+{self.ambient}"


def _reduce_generators(S: NumericalSemigroup, gens) -> tuple[int, ...]:
    """Drop every generator lying in another generator's translate of S."""
    out: list[int] = []
    for g in sorted(set(gens)):
        if not any(S.contains(g - h) for h in out):
            out.append(g)
    return tuple(out)


def make_ideal(S: NumericalSemigroup, gens) -> RelativeIdeal:
    """The relative ideal of S generated by ``gens``, re-minimized."""
    gens = list(gens)
    if not gens:
        raise EmptyInput("need at least one ideal generator")
    return RelativeIdeal(S, _reduce_generators(S, gens))


def ideal_sum(I: RelativeIdeal, J: RelativeIdeal) -> RelativeIdeal:
    """The ideal generated by all pairwise generator sums (the product IJ)."""
    if I.ambient != J.ambient:
        raise AmbientMismatch("ideals live over different semigroups")
    sums = {a + b for a in I.minimal_generators for b in J.minimal_generators}
    return RelativeIdeal(I.ambient, _reduce_generators(I.ambient, sums))


def translate(I: RelativeIdeal, t: int) -> RelativeIdeal:
    """The ideal t + I; minimality of the generators is translation-invariant."""
    return RelativeIdeal(I.ambient, tuple(g + t for g in I.minimal_generators))


def nfold(I: RelativeIdeal, n: int) -> RelativeIdeal:
    """The n-fold sum I + ... + I (the ideal power), n >= 1."""
    if n < 1:
        raise ValueError("n must be at least 1")
    out = I
    for _ in range(n - 1):
        out = ideal_sum(out, I)
    return out


def end_semigroup(I: RelativeIdeal) -> NumericalSemigroup:
    """The endomorphism semigroup E(I) = {z : z + I inside I}.

    E(I) always contains the ambient S and is itself a numerical semigroup:
    negative z would push min(I) below itself, and z >= conductor(S) acts via
    z + g in g + S.  So the scan window [0, conductor) is complete.
    """
    S = I.ambient
    gens = I.minimal_generators
    gaps = [
        z
        for z in range(1, S.conductor)
        if not all(I.contains(z + g) for g in gens)
    ]
    return from_gaps(gaps)


def max_ideal(S: NumericalSemigroup) -> RelativeIdeal:
    """The maximal ideal M = S minus 0, generated by the minimal generators."""
    return RelativeIdeal(S, S.minimal_generators)


def minimal_generator_count(I: RelativeIdeal) -> int:
    """mu(I): the number of minimal generators (graded Nakayama count)."""
    return len(I.minimal_generators)


def is_stable(I: RelativeIdeal) -> bool:
    """True iff I + I = min(I) + I."""
    return ideal_sum(I, I) == translate(I, I.min_element)


def is_stable_via_endomorphism(I: RelativeIdeal) -> bool:
    """Independent stability route: I equals min(I) + E(I).

    E(I) is an S-module generated by its members below conductor(S); the test
    compares that module, translated to min(I), with I itself.
    """
    S = I.ambient
    E = end_semigroup(I)
    e_gens = [z for z in range(S.conductor + 1) if E.contains(z)]
    return translate(make_ideal(S, e_gens), I.min_element) == I


def is_stable_via_search(I: RelativeIdeal) -> bool:
    """Independent stability route: exhaustive witness search.

    Tries every member x of I below the completeness window as the
    translation witness for I + I = x + I.
    """
    K = ideal_sum(I, I)
    lo = I.min_element
    return any(
        translate(I, lo + k) == K
        for k in range(I._window)
        if I._mask >> k & 1
    )


def enumerate_normalized_ideals(S: NumericalSemigroup, cap: int = 16) -> list[RelativeIdeal]:
    """Every relative ideal I with min(I) = 0 and I inside the integers >= 0.

    These are exactly the S-modules between S and its normalization: each is
    S union T for a gap subset T with T + S inside S union T.  There are at
    most 2^genus of them; enumeration is over gap-subset bitmasks in
    ascending order.
    """
    if S.genus > cap:
        raise CapExceeded(f"genus {S.genus} exceeds cap {cap}")
    out = []
    for t_mask in _iter_normalized_gap_masks(S):
        out.append(_ideal_from_gap_mask(S, t_mask))
    return out


def _gap_requirements(S: NumericalSemigroup) -> tuple[tuple[int, ...], list[int]]:
    """For each gap t, the gap-index bitmask that must accompany t.

    t + g for a minimal generator g is either a member of S (no constraint)
    or another gap that T must then also contain.
    """
    gaps = list(S.gaps())
    index = {t: i for i, t in enumerate(gaps)}
    reqs = []
    for t in gaps:
        req = 0
        for g in S.minimal_generators:
            u = t + g
            if u < S.conductor and not S.contains(u):
                req |= 1 << index[u]
        reqs.append(req)
    return tuple(gaps), reqs


def _iter_normalized_gap_masks(S: NumericalSemigroup):
    """Yield the gap-subset bitmasks T that define normalized ideals."""
    gaps, reqs = _gap_requirements(S)
    g = len(gaps)
    for t_mask in range(1 << g):
        m = t_mask
        ok = True
        while m:
            i = (m & -m).bit_length() - 1
            if reqs[i] & ~t_mask:
                ok = False
                break
            m &= m - 1
        if ok:
            yield t_mask


def _ideal_from_gap_mask(S: NumericalSemigroup, t_mask: int) -> RelativeIdeal:
    gaps = S.gaps()
    cands = [0] + [gaps[i] for i in range(len(gaps)) if t_mask >> i & 1]
    return RelativeIdeal(S, _reduce_generators(S, cands))


@dataclass(frozen=True)
class TowerReport:
    """The blow-up chain S_0, S_1, ... with S_{i+1} = E(max ideal of S_i)."""

    tower: tuple[NumericalSemigroup, ...]
    multiplicity_sequence: tuple[int, ...]
    stabilization_index: int
    reached_normalization: bool


def blowup_tower(S: NumericalSemigroup, cap: int = 64) -> TowerReport:
    """Iterate S -> E(M) until the full monoid is reached or cap steps pass.

    The chain strictly increases until it stabilizes at the normalization
    (the Frobenius number joins E(M) at every proper step), so it reaches the
    full monoid within genus(S) steps; cap exhaustion is reported in the
    record rather than raised.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    tower = [S]
    while not tower[-1].is_full and len(tower) <= cap:
        tower.append(end_semigroup(max_ideal(tower[-1])))
    return TowerReport(
        tower=tuple(tower),
        multiplicity_sequence=tuple(t.multiplicity for t in tower),
        stabilization_index=len(tower) - 1,
        reached_normalization=tower[-1].is_full,
    )
