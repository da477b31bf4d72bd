"""The exhaustive invariant suite over enumerated semigroups.

One worker analyzes one semigroup: the stable/quadratic/Bass agreement over
all its normalized ideals, the two-generated-power biconditional, the
normalization generator count, minimal multiplicity, the multiplicity triple
(least element vs Hilbert slope vs normalization generators), blow-up tower
behavior, and (below the Sally genus cap) the two-generated-power
implication over every normalized ideal translated into S.

Results merge in enumeration order, so the aggregate report is byte-stable
regardless of worker count.
"""

from __future__ import annotations

from multiprocessing import Pool

from . import ringlab
from .numsg import NumericalSemigroup, enumerate_semigroups
from .relideal import (
    blowup_tower,
    enumerate_normalized_ideals,
    max_ideal,
    translate,
)

SALLY_GENUS_CAP = 8


def _gens_str(S: NumericalSemigroup) -> str:
    return ",".join(str(g) for g in S.minimal_generators)


def analyze_semigroup(S: NumericalSemigroup, n_max: int = 8, sally_cap: int = SALLY_GENUS_CAP) -> dict:
    """Run every per-semigroup check; violations come back verbatim."""
    name = _gens_str(S)
    violations: dict[str, list[str]] = {}

    def flag(check: str, msg: str) -> None:
        violations.setdefault(check, []).append(f"{name}: {msg}")

    report = ringlab.stable_ring_report(S)
    if not report.agreement:
        flag(
            "big_agreement",
            f"all_stable={report.all_stable} quadratic={report.quadratic_over_normalization} "
            f"bass={report.is_bass}",
        )
    if report.is_bass != report.all_stable:
        flag(
            "monomial_vs_bass",
            f"monomial verdict {report.all_stable} vs multiplicity verdict {report.is_bass}",
        )

    two = ringlab.two_generator_check(S, n_max)
    if not two["agree"]:
        flag("two_generator", f"power_two_generated={two['power_two_generated']} mult_le_2={two['mult_le_2']}")

    gre = ringlab.greither_check(S)
    if not gre["agree"] or not gre["quadratic_when_two_generated"]:
        flag("greither", f"{gre}")

    mm = ringlab.minimal_multiplicity_check(S)
    if not mm["ok"]:
        flag("minimal_multiplicity", f"{mm}")

    via_hilbert = ringlab.multiplicity_via_hilbert(S)
    if not (S.multiplicity == via_hilbert == gre["mu_normalization"]):
        flag(
            "multiplicity_triple",
            f"m={S.multiplicity} hilbert={via_hilbert} mu_norm={gre['mu_normalization']}",
        )

    tower = blowup_tower(S)
    if not tower.reached_normalization:
        flag("tower", "blow-up tower did not reach the full monoid")
    elif tower.stabilization_index > max(S.genus, 1):
        flag("tower", f"tower length {tower.stabilization_index} exceeds genus {S.genus}")
    if S.multiplicity == 2:
        expected = (2,) * S.genus + (1,)
        if tower.multiplicity_sequence != expected:
            flag("tower", f"multiplicity sequence {tower.multiplicity_sequence}")
        if tower.stabilization_index != S.genus:
            flag("tower", f"stabilization index {tower.stabilization_index} != genus {S.genus}")
        for i in range(tower.stabilization_index):
            cur, nxt = tower.tower[i], tower.tower[i + 1]
            width = cur.conductor + 4
            m_i = max_ideal(cur).members_mask(0, width)
            if m_i != nxt.members_mask(width - 2) << 2:
                flag("tower", f"M_{i} != 2 + S_{i + 1}")
            if cur.members_mask(width) != S.members_mask(width) | m_i:
                flag("tower", f"S_{i} != S union M_{i}")

    out = {
        "gens": name,
        "genus": S.genus,
        "report": report.to_payload(),
        "violations": violations,
    }

    if S.genus <= sally_cap:
        ideals = 0
        boundary = 0
        for I in enumerate_normalized_ideals(S):
            integral = translate(I, S.conductor)
            res = ringlab.sally_check(integral, n_max)
            ideals += 1
            if not res["ok"]:
                flag("sally", f"ideal {I.minimal_generators}: {res}")
            if res["hypothesis"] and I.minimal_generators != (0,):
                boundary += 1
        out["sally"] = {"ideals": ideals, "boundary": boundary}
    return out


def _worker(args) -> dict:
    S, n_max, sally_cap = args
    return analyze_semigroup(S, n_max, sally_cap)


CHECK_NAMES = (
    "big_agreement",
    "two_generator",
    "sally",
    "greither",
    "minimal_multiplicity",
    "multiplicity_triple",
    "tower",
    "monomial_vs_bass",
)


def run_sweep(
    max_genus: int,
    jobs: int = 1,
    n_max: int = 8,
    sally_cap: int = SALLY_GENUS_CAP,
) -> dict:
    """Analyze every semigroup of genus <= max_genus and merge the records."""
    semigroups = list(enumerate_semigroups(max_genus))
    tasks = [(S, n_max, sally_cap) for S in semigroups]
    if jobs > 1:
        with Pool(processes=jobs) as pool:
            records = pool.map(_worker, tasks, chunksize=16)
    else:
        records = [_worker(t) for t in tasks]

    counts_by_genus: dict[str, int] = {}
    checks = {
        name: {"checked": 0, "violations": []}
        for name in CHECK_NAMES
    }
    checks["sally"]["ideals_checked"] = 0
    checks["sally"]["boundary_cases"] = 0
    checks["monomial_vs_bass"] = {"checked": 0, "divergences": []}

    for rec in records:
        g = str(rec["genus"])
        counts_by_genus[g] = counts_by_genus.get(g, 0) + 1
        for name in CHECK_NAMES:
            if name == "sally":
                if "sally" in rec:
                    checks["sally"]["checked"] += 1
                    checks["sally"]["ideals_checked"] += rec["sally"]["ideals"]
                    checks["sally"]["boundary_cases"] += rec["sally"]["boundary"]
            else:
                checks[name]["checked"] += 1
        for name, msgs in rec["violations"].items():
            key = "divergences" if name == "monomial_vs_bass" else "violations"
            checks[name][key].extend(msgs)

    total = sum(
        len(c.get("violations", ())) + len(c.get("divergences", ()))
        for c in checks.values()
    )
    return {
        "max_genus": max_genus,
        "n_max": n_max,
        "sally_genus_cap": sally_cap,
        "semigroup_count": len(semigroups),
        "counts_by_genus": counts_by_genus,
        "checks": checks,
        "violations_total": total,
    }
