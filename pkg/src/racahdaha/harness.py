"""Grid checks: every closed-form statement is compared against an
independent computation on concrete modules.

Each ``check_*`` function returns a JSON-ready record with a ``failures``
list; an empty list means every comparison agreed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .catalog import TWISTS, ModuleSpec, descending
from .daha import pullback_abc, twist, verify_daha_relations, zeta_pullback
from .daha_modules import (
    PAIRS,
    annihilator_check,
    build_H,
    classify_H,
    factor_mf_criterion,
    pm_diag_criterion,
    predicted_factors,
    special_basis_witness,
)
from .daha_modules import irr_criterion_H
from .engine import (
    FactorFingerprint,
    brute_irreducible,
    composition_series,
    fingerprint_match,
    leonard_pair_check,
    leonard_triple_check,
)
from .errors import EquivalenceViolation, Inconclusive
from .linalg import MatQ, char_poly, diagonalizability
from .racah import central_data, derived_relations, verify_racah_relations
from .racah_modules import (
    build_R,
    c_basis_witness,
    delta_scalar_R,
    diag_criterion_R,
    irr_criterion_R,
    spectrum_R,
)
from .rational import format_rat, rational_roots

LETTERS = ("A", "B", "C")
LETTER_PAIRS = ("AB", "BC", "CA")


def _fp_text(fp: FactorFingerprint) -> str:
    spec = lambda xs: "[" + ",".join(format_rat(x) for x in xs) + "]"
    return f"dim={fp.dim};delta={format_rat(fp.delta_scalar)};A={spec(fp.specA)};B={spec(fp.specB)};C={spec(fp.specC)}"


@dataclass
class EquivalenceReport:
    spec: ModuleSpec
    letters: dict = field(default_factory=dict)
    pairs: dict = field(default_factory=dict)
    triple: dict = field(default_factory=dict)
    factors: list = field(default_factory=list)
    prediction: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.key(),
            "letters": self.letters,
            "pairs": self.pairs,
            "triple": self.triple,
            "factors": self.factors,
            "prediction": self.prediction,
            "violations": [list(v) for v in self.violations],
        }


def _all_equal(values) -> bool:
    return len(set(values)) == 1


def verify_equivalences(spec: ModuleSpec, strict: bool = True) -> EquivalenceReport:
    """Compute the clauses of the three equivalence statements for the
    (possibly twisted) module ``spec`` by independent routes and compare.

    Clause (i) uses the matrices on the whole module, (ii) and (iii) the
    composition factors, (iv) the Leonard path test on those factors.  The
    results are also checked against the closed-form factor criteria and
    the predicted composition factors.  With ``strict`` a violation raises
    :class:`EquivalenceViolation`; otherwise it is listed in the report.
    """
    report = EquivalenceReport(spec)

    def violated(clause: str, detail: str) -> None:
        if strict:
            raise EquivalenceViolation(spec.key(), clause, detail)
        report.violations.append((clause, detail))

    rep = zeta_pullback(build_H(spec))
    factors = composition_series(rep)
    whole = {X: diagonalizability(rep.matrix(X)) for X in LETTERS}
    per_factor = [{X: diagonalizability(f.gens.element(X)) for X in LETTERS} for f in factors]

    for X in LETTERS:
        c1 = whole[X].diagonalizable
        c2 = all(pf[X].diagonalizable for pf in per_factor)
        c3 = all(pf[X].multiplicity_free for pf in per_factor)
        crit = factor_mf_criterion(X, spec)
        report.letters[X] = {"i": c1, "ii": c2, "iii": c3, "criterion": crit}
        if not _all_equal((c1, c2, c3)):
            violated(f"letter-{X}", f"(i,ii,iii)=({c1},{c2},{c3})")
        if crit != c3:
            violated(f"factor-criterion-{X}", f"criterion={crit} computed={c3}")

    leonard_pairs = {
        P: [leonard_pair_check(f.gens.element(P[0]), f.gens.element(P[1])).verdict for f in factors]
        for P in LETTER_PAIRS
    }
    for P in LETTER_PAIRS:
        x, y = P
        c1 = whole[x].diagonalizable and whole[y].diagonalizable
        c2 = report.letters[x]["ii"] and report.letters[y]["ii"]
        c3 = report.letters[x]["iii"] and report.letters[y]["iii"]
        c4 = all(leonard_pairs[P])
        report.pairs[P] = {"i": c1, "ii": c2, "iii": c3, "iv": c4}
        if not _all_equal((c1, c2, c3, c4)):
            violated(f"pair-{P}", f"(i,ii,iii,iv)=({c1},{c2},{c3},{c4})")

    c1 = all(whole[X].diagonalizable for X in LETTERS)
    c2 = all(report.letters[X]["ii"] for X in LETTERS)
    c3 = all(report.letters[X]["iii"] for X in LETTERS)
    c4 = all(
        leonard_triple_check(*(f.gens.element(X) for X in LETTERS)).verdict for f in factors
    )
    report.triple = {"i": c1, "ii": c2, "iii": c3, "iv": c4}
    if not _all_equal((c1, c2, c3, c4)):
        violated("triple", f"(i,ii,iii,iv)=({c1},{c2},{c3},{c4})")

    computed = [f.fingerprint for f in factors]
    report.factors = [_fp_text(fp) for fp in computed]
    pred = predicted_factors(spec)
    predicted = [FactorFingerprint.of_spec(p) for p in pred.factors]
    if pred.completeness == "exact":
        match = Counter(computed) == Counter(predicted)
    else:
        match = all(any(fingerprint_match(fp, p) for p in pred.factors) for fp in computed)
    report.prediction = {
        "completeness": pred.completeness,
        "predicted": [p.key() for p in pred.factors],
        "observed_dims": sorted(fp.dim for fp in computed),
        "match": match,
    }
    if not match:
        violated("predicted-factors", f"computed {report.factors}")
    return report


# -- per-family grid records ---------------------------------------------------


def _spectra_match(rep, spec) -> bool:
    sp = spectrum_R(spec)
    for X in LETTERS:
        roots = rational_roots(char_poly(rep.matrix(X)))
        if not roots.splits or roots.roots != tuple(sorted(sp.of(X))):
            return False
    return True


def check_R(spec: ModuleSpec) -> dict:
    rep = build_R(spec)
    failures = []
    rel = verify_racah_relations(rep)
    failures += [f"relation:{f}" for f in rel.failures]
    bad = [k for k, ok in derived_relations(rep).items() if not ok]
    failures += [f"relation:{k}" for k in bad]
    if not bad:
        delta = central_data(rep).delta_scalar
        if delta != delta_scalar_R(spec.d, *spec.params):
            failures.append("delta-scalar")
    if not c_basis_witness(spec).verified:
        failures.append("c-basis-witness")
    irr = irr_criterion_R(spec)
    record = {"spec": spec.key(), "irreducible": irr}
    try:
        oracle = brute_irreducible(rep)
    except Inconclusive:
        record["oracle"] = "inconclusive"
        failures.append("oracle:inconclusive")
        oracle = None
    else:
        record["oracle"] = oracle
        if oracle != irr:
            failures.append("irreducibility")
    if irr:
        if not _spectra_match(rep, spec):
            failures.append("spectra")
        info = {X: diagonalizability(rep.matrix(X)) for X in LETTERS}
        record["diag"] = {}
        for X in LETTERS:
            crit = diag_criterion_R(X, spec)
            d, mf = info[X].diagonalizable, info[X].multiplicity_free
            record["diag"][X] = crit
            if not crit == d == mf:
                failures.append(f"diag-{X}")
        record["pairs"] = {}
        for P in LETTER_PAIRS:
            lp = leonard_pair_check(rep.matrix(P[0]), rep.matrix(P[1])).verdict
            both = info[P[0]].diagonalizable and info[P[1]].diagonalizable
            record["pairs"][P] = lp
            if lp != both:
                failures.append(f"leonard-pair-{P}")
        lt = leonard_triple_check(rep.A, rep.B, rep.C).verdict
        record["triple"] = lt
        if lt != all(info[X].diagonalizable for X in LETTERS):
            failures.append("leonard-triple")
    record["failures"] = failures
    return record


def _sufficiency_operators(rep, spec: ModuleSpec) -> dict:
    """Operators whose diagonalizability follows from a parameter condition,
    keyed by letter, with the forbidden set for that condition."""
    d = spec.d
    if spec.family == "E":
        t0, t1, t2, t3 = rep.ts()
        one = MatQ.identity(rep.dim)

        def q(s):
            return (s - one) @ (s + one)

        ops = {"A": q(t2 + t3), "B": q(t1 + t3), "C": q(t1 + t2)}
        forbidden = descending(d - 3, 3 - d)
    else:
        ops = dict(zip(LETTERS, pullback_abc(rep)))
        forbidden = descending(d - 1, 3 - d)
    return {X: (ops[X], forbidden) for X in LETTERS}


def _expected_traces(spec: ModuleSpec) -> tuple:
    if spec.family == "E":
        return (-(spec.d + 1), 0, 0, 0)
    return spec.params


def check_H(spec: ModuleSpec, equivalences: bool = True) -> dict:
    """Everything that can be checked on one untwisted DAHA module; with
    ``equivalences`` the harness also runs on all applicable twists."""
    spec = spec.untwisted()
    rep = build_H(spec)
    d = spec.d
    failures = []
    rel = verify_daha_relations(rep)
    failures += [f"relation:{f}" for f in rel.failures]
    try:
        pulled = zeta_pullback(rep)
    except AssertionError as exc:
        failures.append(f"pullback:{exc}")
    else:
        failures += [f"pullback:{k}" for k, ok in derived_relations(pulled).items() if not ok]
    if spec.family == "E":
        traces = tuple(t.trace() for t in rep.ts())
    else:
        half = MatQ.scalar(rep.dim, "1/2")
        traces = tuple((rep.t0 + t + half).trace() for t in rep.ts()[1:])
    if traces != tuple(_expected_traces(spec)):
        failures.append("traces")
    ann = annihilator_check(spec)
    if not (ann.full_product_kills and ann.partial_products_nonzero):
        failures.append("annihilator")
    if not special_basis_witness("01", spec).verified:
        failures.append("special-basis-01")

    irr = irr_criterion_H(spec)
    record = {"spec": spec.key(), "irreducible": irr}
    try:
        oracle = brute_irreducible(rep)
    except Inconclusive:
        oracle = None
        record["oracle"] = "inconclusive"
        failures.append("oracle:inconclusive")
    else:
        record["oracle"] = oracle
        if oracle != irr:
            failures.append("irreducibility")

    if irr:
        record["pm_diag"] = {}
        for pair in PAIRS:
            k = int(pair[1])
            info = diagonalizability(rep.t0 + rep.ts()[k])
            crit = pm_diag_criterion(pair, spec)
            record["pm_diag"][pair] = crit
            if not crit == info.diagonalizable == info.multiplicity_free:
                failures.append(f"pm-diag-{pair}")
            if pair != "01" and not special_basis_witness(pair, spec).verified:
                failures.append(f"special-basis-{pair}")
        for X, (op, forbidden) in _sufficiency_operators(rep, spec).items():
            p = spec.params[LETTERS.index(X)]
            if 2 * p not in forbidden and not diagonalizability(op).diagonalizable:
                failures.append(f"sufficiency-{X}")
        twists = TWISTS if spec.family == "E" else ((1, 1),)
        for eps in twists:
            got = classify_H(twist(rep, eps))
            want = ModuleSpec(spec.family, d, *(abs(x) for x in spec.params), eps) if spec.family == "E" else spec
            if got != want:
                failures.append(f"classify-{eps[0]},{eps[1]}")
        if equivalences:
            record["equivalences"] = {}
            for eps in twists:
                tspec = ModuleSpec(spec.family, d, *spec.params, eps)
                try:
                    eq = verify_equivalences(tspec, strict=False)
                except Inconclusive:
                    failures.append(f"equivalences-{tspec.key()}:inconclusive")
                    continue
                record["equivalences"][tspec.key()] = eq.to_dict()
                failures += [f"{tspec.key()}:{c}" for c, _ in eq.violations]
    record["failures"] = failures
    return record


def check_spec(spec: ModuleSpec, equivalences: bool = True) -> dict:
    if spec.family == "R":
        return check_R(spec)
    return check_H(spec, equivalences)
