"""Check pipelines: orchestrate the individual tests into reports.

The order of verdicts is fixed (pair identity, odd multiplicities, line
parity, mod-16 congruence, degree gate, optional classical filters, then
the incidence-level checks), so two runs over the same input produce
identical reports.
"""

from __future__ import annotations

from . import combinatorics as comb_checks
from .combinatorics import RealizationClass, WeakCombinatorics
from .errors import EvenMultiplicityError, HypothesisNotMetError
from .lattice import (
    IncidenceStructure,
    implicit_double_count,
    lemma_km_residue,
    per_line_parity,
    weak_combinatorics_of,
)
from .verdicts import ObstructionReport, Status, Verdict


def _weak_verdicts(wc: WeakCombinatorics,
                   realization: RealizationClass | str | None) -> list[Verdict]:
    verdicts = []

    identity = comb_checks.pair_count_identity(wc)
    verdicts.append(Verdict(
        "pair_count_identity",
        Status.PASS if identity.passed else Status.FAIL,
        witness=f"covered={identity.covered} required={identity.required}",
        reason="every pair of lines must lie in exactly one singular point"))

    odd = comb_checks.all_multiplicities_odd(wc)
    verdicts.append(Verdict(
        "all_multiplicities_odd",
        Status.PASS if odd else Status.NOT_APPLICABLE,
        witness="all odd" if odd else "even multiplicity present",
        reason="odd multiplicities everywhere put the mod-16 test in scope"
               if odd else "even multiplicities put the mod-16 machinery out of scope"))

    parity = comb_checks.line_parity_check(wc)
    verdicts.append(Verdict(
        "line_parity", parity,
        witness=f"degree={wc.degree}",
        reason="with odd multiplicities each line meets an even number of others, so the degree must be odd"
               if parity is not Status.NOT_APPLICABLE else "requires odd multiplicities throughout"))

    try:
        residue = comb_checks.odd_multiplicity_congruence(wc)
        verdicts.append(Verdict(
            "mod16_congruence",
            Status.PASS if residue == 0 else Status.FAIL,
            witness=residue,
            reason="sum of (m-1) t_m must equal d-1 mod 16"))
    except EvenMultiplicityError as exc:
        verdicts.append(Verdict(
            "mod16_congruence", Status.NOT_APPLICABLE,
            witness=f"multiplicity {exc.multiplicity} is even",
            reason="the congruence constrains odd-multiplicity arrangements only"))

    triple_only = all(m == 3 for m, _ in wc.items())
    if triple_only and wc.degree >= 1:
        gate = comb_checks.triple_only_degree_gate(wc.degree)
        verdicts.append(Verdict(
            "triple_only_degree_gate",
            Status.PASS if gate.passed else Status.FAIL,
            witness=gate.residue,
            reason="only-triple-point degrees must be 1, 3, 9 or 19 mod 24"))
    else:
        verdicts.append(Verdict(
            "triple_only_degree_gate", Status.NOT_APPLICABLE,
            reason="arrangement has points of multiplicity other than 3"
                   if wc.degree >= 1 else "no lines"))

    if realization is not None:
        verdicts.extend(comb_checks.classical_filters(wc, realization))

    return verdicts


def check_weak_combinatorics(wc: WeakCombinatorics,
                             realization: RealizationClass | str | None = None,
                             subject: str | None = None) -> ObstructionReport:
    """Run the multiplicity-level pipeline."""
    return ObstructionReport(subject or wc.describe(), tuple(_weak_verdicts(wc, realization)))


def check_incidence(inc: IncidenceStructure,
                    realization: RealizationClass | str | None = None,
                    subject: str | None = None) -> ObstructionReport:
    """Run the full pipeline on a concrete incidence structure: project to
    multiplicity counts (implicit double points included), then re-derive
    the congruence at the lattice level."""
    verdicts = []

    implicit = implicit_double_count(inc)
    verdicts.append(Verdict(
        "pair_coverage", Status.PASS,
        witness=f"implicit_double_points={implicit}",
        reason="pairs not covered by a listed point count as double points"))

    wc = weak_combinatorics_of(inc)
    verdicts.extend(_weak_verdicts(wc, realization))

    try:
        parity = per_line_parity(inc)
        verdicts.append(Verdict(
            "per_line_parity",
            Status.PASS if parity.passed else Status.FAIL,
            witness="; ".join(parity.failures) or f"checked {inc.degree} lines",
            reason="on each line the remaining lines split into even groups, one per point"))
    except HypothesisNotMetError as exc:
        verdicts.append(Verdict("per_line_parity", Status.NOT_APPLICABLE,
                                witness=exc.witness, reason=exc.reason))

    try:
        residue = lemma_km_residue(inc)
        verdicts.append(Verdict(
            "lattice_residue",
            Status.PASS if residue == 0 else Status.FAIL,
            witness=residue,
            reason="strict-transform self-intersections must sum to the blow-up signature mod 16"))
    except HypothesisNotMetError as exc:
        verdicts.append(Verdict("lattice_residue", Status.NOT_APPLICABLE,
                                witness=exc.witness, reason=exc.reason))

    subject = subject or f"incidence d={inc.degree} points={inc.num_points}"
    return ObstructionReport(subject, tuple(verdicts))
