"""Theorem-level predicates on the monomial model.

This module evaluates, for the monomial ring of a numerical semigroup S, the
ring-theoretic quantities that the stability theory ties together: Hilbert
function and multiplicity, the quadratic-extension test against the
normalization, stability of every normalized module between S and its
normalization, the Bass verdict (multiplicity at most 2), and the
two-generated-power and minimal-multiplicity equivalences.

Quadratic window note: the extension test only needs element pairs below the
conductor of S.  If x >= conductor(S) then x is itself a member of S, so
x + y always lies in y + S and the condition holds automatically; the same
applies symmetrically to y.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import relideal
from .errors import CapExceeded, NotASubsemigroup, NotStabilized
from .numsg import NAT, NumericalSemigroup
from .relideal import RelativeIdeal, is_stable, max_ideal, minimal_generator_count


def _power_masks(S: NumericalSemigroup, n: int, width: int) -> list[int]:
    """Membership bitmasks of M, 2M, ..., nM on [0, width)."""
    m_mask = S.members_mask(width) & ~1
    ones = (1 << width) - 1
    masks = [m_mask]
    for _ in range(n - 1):
        prev = masks[-1]
        nxt = 0
        for g in S.minimal_generators:
            nxt |= prev << g
        masks.append(nxt & ones)
    return masks


def hilbert_function(S: NumericalSemigroup, n: int) -> int:
    """The length of R/M^n in the monomial model: |S minus nM| (0 for n=0)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 0
    # nM contains every member of S from n*maxgen + conductor on
    width = n * S.minimal_generators[-1] + S.conductor + 1
    nm = _power_masks(S, n, width)[-1]
    return (S.members_mask(width) & ~nm).bit_count()


def multiplicity_via_hilbert(S: NumericalSemigroup) -> int:
    """Recover the multiplicity as the stabilized Hilbert difference.

    Probes n up to 2*conductor + 4 and requires the last two differences in
    the window to agree; the window provably reaches the linear regime
    (n*multiplicity >= conductor there), and anchoring at the end is immune
    to accidental early plateaus.
    """
    top = 2 * S.conductor + 4
    width = (top + 1) * S.minimal_generators[-1] + S.conductor + 1
    masks = _power_masks(S, top + 1, width)
    s_mask = S.members_mask(width)
    h = [0] + [(s_mask & ~m).bit_count() for m in masks]
    d_last = h[top + 1] - h[top]
    d_prev = h[top] - h[top - 1]
    if d_last != d_prev:
        raise NotStabilized(f"Hilbert differences {d_prev} != {d_last} at window end")
    return d_last


def is_monomial_quadratic(S: NumericalSemigroup, T: NumericalSemigroup) -> bool:
    """The quadratic-extension test for S inside T at monomial level.

    True iff every pair x, y of members of T below conductor(S) satisfies
    x + y in (x + S) union (y + S) union S; membership of x + y in x + S is
    just y in S, so the test reduces to pairs of gaps of S lying in T.
    """
    for z in range(T.conductor):
        if S.contains(z) and not T.contains(z):
            raise NotASubsemigroup(f"{z} is in S but not in T")
    c = S.conductor
    pairs = [z for z in range(c) if T.contains(z) and not S.contains(z)]
    for i, x in enumerate(pairs):
        for y in pairs[i:]:
            if not S.contains(x + y):
                return False
    return True


@dataclass(frozen=True)
class StableRingReport:
    """The three-way equivalence data for one semigroup."""

    semigroup: NumericalSemigroup
    ideal_count: int
    stable_count: int
    max_mu: int
    all_stable: bool
    quadratic_over_normalization: bool
    is_bass: bool
    agreement: bool

    def to_payload(self) -> dict:
        """JSON-stable field names."""
        return {
            "semigroup": ",".join(str(g) for g in self.semigroup.minimal_generators),
            "ideal_count": self.ideal_count,
            "stable_count": self.stable_count,
            "max_mu": self.max_mu,
            "all_stable": self.all_stable,
            "quadratic": self.quadratic_over_normalization,
            "bass": self.is_bass,
            "agreement": self.agreement,
        }


def stable_ring_report(S: NumericalSemigroup, cap: int = 16) -> StableRingReport:
    """Check the stable / quadratic / Bass equivalence over all normalized ideals.

    Every normalized ideal is S union T for a gap subset T; such an ideal is
    stable iff every sum of two elements of T stays inside it (pairs with 0
    contribute nothing new), and its generator count is read off the
    candidate set {0} union T.
    """
    if S.genus > cap:
        raise CapExceeded(f"genus {S.genus} exceeds cap {cap}")
    gaps = S.gaps()
    width = 2 * S.conductor + 2
    s_mask = S.members_mask(width)
    ideal_count = 0
    stable_count = 0
    max_mu = 0
    for t_mask in relideal._iter_normalized_gap_masks(S):
        ideal_count += 1
        tset = [gaps[i] for i in range(len(gaps)) if t_mask >> i & 1]
        i_mask = s_mask
        for t in tset:
            i_mask |= 1 << t
        stable = all(
            i_mask >> (a + b) & 1 for i, a in enumerate(tset) for b in tset[i:]
        )
        stable_count += stable
        cands = [0] + tset
        mu = sum(
            1
            for i, g in enumerate(cands)
            if not any(S.contains(g - h) for h in cands[:i])
        )
        max_mu = max(max_mu, mu)
    all_stable = stable_count == ideal_count
    quadratic = is_monomial_quadratic(S, NAT)
    bass = S.multiplicity <= 2
    return StableRingReport(
        semigroup=S,
        ideal_count=ideal_count,
        stable_count=stable_count,
        max_mu=max_mu,
        all_stable=all_stable,
        quadratic_over_normalization=quadratic,
        is_bass=bass,
        agreement=all_stable == quadratic == bass,
    )


def two_generator_check(S: NumericalSemigroup, n_max: int = 8) -> dict:
    """Does some power M^n (2 <= n <= n_max) drop to two generators?

    The biconditional under test: such a power exists iff the multiplicity is
    at most 2.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    M = max_ideal(S)
    power = M
    power_two_generated = False
    for _ in range(2, n_max + 1):
        power = relideal.ideal_sum(power, M)
        if minimal_generator_count(power) <= 2:
            power_two_generated = True
            break
    mult_le_2 = S.multiplicity <= 2
    return {
        "power_two_generated": power_two_generated,
        "mult_le_2": mult_le_2,
        "agree": power_two_generated == mult_le_2,
    }


def sally_check(I: RelativeIdeal, n_max: int = 8) -> dict:
    """Two-generated power implies two-generated and stable.

    hypothesis: some n-fold sum of I with 2 <= n <= n_max has at most two
    minimal generators.  conclusion: I itself has at most two and is stable.
    Both sides are translation-invariant, so the verdict is the same for an
    ideal and any of its integral translates.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    hypothesis = False
    power = I
    for _ in range(2, n_max + 1):
        power = relideal.ideal_sum(power, I)
        if minimal_generator_count(power) <= 2:
            hypothesis = True
            break
    conclusion = minimal_generator_count(I) <= 2 and is_stable(I)
    return {
        "hypothesis": hypothesis,
        "conclusion": conclusion,
        "ok": (not hypothesis) or conclusion,
    }


def greither_check(S: NumericalSemigroup) -> dict:
    """Generator count of the normalization as an S-module, vs the Bass verdict.

    mu_normalization is mu_S of the full monoid, which equals the
    multiplicity; agree ties mu <= 2 to the Bass verdict, and the quadratic
    consequence of two-generation is asserted alongside.
    """
    nat_as_module = relideal.make_ideal(S, range(S.conductor + 1))
    mu = minimal_generator_count(nat_as_module)
    bass = S.multiplicity <= 2
    return {
        "mu_normalization": mu,
        "bass": bass,
        "agree": (mu <= 2) == bass,
        "quadratic_when_two_generated": (mu > 2) or is_monomial_quadratic(S, NAT),
    }


def minimal_multiplicity_check(S: NumericalSemigroup) -> dict:
    """Stable maximal ideal forces embedding dimension = multiplicity."""
    m_stable = is_stable(max_ideal(S))
    edim_eq_mult = S.embedding_dimension == S.multiplicity
    return {
        "m_stable": m_stable,
        "edim_eq_mult": edim_eq_mult,
        "ok": (not m_stable) or edim_eq_mult,
    }
