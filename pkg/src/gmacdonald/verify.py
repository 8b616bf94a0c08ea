"""Named verification suites, seed handling and counterexample minimization.

Every suite is a function ``(rank, degree) -> VerificationReport`` that runs
under whatever parameter specialization is active.  ``run_suite`` supplies
that specialization: fully symbolic in exact mode, one random rational point
per seed in random mode.
"""

from __future__ import annotations

import contextlib
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Iterator

from . import gmp as _gmp
from . import operators as _ops
from .coeff import (ONE, ZERO, Params, ResonanceError, gamma, q3,
                    reset_budget, set_budget)
from .gmp import (CaseResult, VerificationReport, build_gmp, compare_case, five_term_check,
                  framing_check, ght_check, kernel_adjoint_check, kernel_Pi_weighted,
                  kernel_PiZ, mukade_check, nabla_conjecture_check, order_key,
                  spec_id_check, two_var_check, whittaker_check)
from .operators import WeightVector, afs_matrix_element, afs_operator
from .partitions import (MultiPartition, Partition, addable_boxes, b_coeff, calY,
                         content, nekrasov, nekrasov_contents, nekrasov_tilde,
                         partitions_of, pieri_psi, pieri_psi_star)
from .symfunc import VirtualAlphabet, hall_qt_inner, macdonald_P, macdonald_P_tilde, plethystic_eval

__all__ = ["SuiteSpec", "SUITES", "MUTATIONS", "MAX_DEGREE", "run_suite", "minimize",
           "mutation", "suite_names", "canonical_name"]

MAX_DEGREE = 8


@dataclass(frozen=True)
class SuiteSpec:
    name: str
    rank: int = 1
    degree: int = 2
    mode: str = "exact"
    seeds: tuple = ()
    budget: int | None = None
    jobs: int = 1

    def validate(self) -> "SuiteSpec":
        name = canonical_name(self.name)
        if name not in SUITES:
            raise ValueError(f"unknown suite {self.name!r}; choose from {', '.join(suite_names())}")
        if self.mode not in ("exact", "random"):
            raise ValueError(f"mode must be exact or random, got {self.mode!r}")
        if not 0 <= self.degree <= MAX_DEGREE:
            raise ValueError(f"degree must lie in [0, {MAX_DEGREE}], got {self.degree}")
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")
        entry = SUITES[name]
        if entry.ranks is not None and self.rank not in entry.ranks:
            raise ValueError(f"suite {name} supports rank {sorted(entry.ranks)}, got {self.rank}")
        seeds = tuple(int(s) for s in self.seeds)
        if self.mode == "random" and not seeds:
            raise ValueError("random mode needs at least one seed")
        if self.mode == "exact":
            seeds = ()
        return replace(self, name=name, seeds=seeds)


@dataclass(frozen=True)
class _Suite:
    fn: Callable[[int, int], VerificationReport]
    ranks: frozenset | None = None
    doc: str = ""
    mutation: str | None = None


def canonical_name(name: str) -> str:
    return name.strip().lower().replace("-", "_")


def _ctx(lam, **extra) -> dict:
    return {"lambda": lam, **extra}


def _bool_case(case_id: str, ok: bool, t0: float, **payload) -> CaseResult:
    ms = round((time.perf_counter() - t0) * 1000, 3)
    cex = None if ok else {k: (v.to_json() if hasattr(v, "to_json") else v) for k, v in payload.items()}
    return CaseResult(case_id, "pass" if ok else "fail", ms, cex)


# --------------------------------------------------------------------------
# suites

def _pieri(r: int, D: int, name: str) -> VerificationReport:
    B = build_gmp(r, None, D)
    rep = VerificationReport(name, r, D)
    for sign in (+1, -1):
        table = _gmp.gmp_pieri(B, sign)
        tag = "a_-1" if sign > 0 else "a_1"
        for e in table.entries:
            rep.cases.append(compare_case(f"{tag} P_{e.lam} -> P_{e.target}", e.computed, e.predicted,
                                          **_ctx(e.lam, mu=e.target, degree=max(e.lam.size, e.target.size))))
        for lam, nu, c in table.unexpected:
            rep.cases.append(CaseResult(f"{tag} P_{lam} -> P_{nu} (outside the rule)", "fail", None,
                                        {"lambda": lam.to_json(), "mu": nu.to_json(),
                                         "degree": max(lam.size, nu.size), "residual": c.to_json()}))
    return rep


def suite_pieri_r1(r, D):
    return _pieri(1, D, "pieri_r1")


def suite_pieri_gmp(r, D):
    return _pieri(r, D, "pieri_gmp")


def suite_kernel_pi_weighted(r, D):
    rep = VerificationReport("kernel_pi_weighted", 2, D)
    u = WeightVector.from_Q()
    t0 = time.perf_counter()
    K = kernel_Pi_weighted(u[0], D)
    rep.cases.append(_bool_case("a_1 on (x,y) = -t a_-1 on (a,b)", kernel_adjoint_check(K, 2, D), t0, degree=D))
    for lam, box, ok in _gmp.b_weighted_recursion(u[0], D):
        t0 = time.perf_counter()
        rep.cases.append(_bool_case(f"b ratio {lam} + {tuple(box)}", ok, t0,
                                    **{"lambda": lam.to_json(), "box": list(box), "degree": lam.size + 1}))
    return rep


def suite_kernel_piz_factorization(r, D):
    rep = VerificationReport("kernel_piz_factorization", r, D)
    K = kernel_PiZ(r, D)
    rep.cases.append(compare_case(f"Pi_Z r={r} plethystic vs basis sum", K.path_b, K.path_a))
    t0 = time.perf_counter()
    rep.cases.append(_bool_case("a_1 on x = -t a_-1 on a", kernel_adjoint_check(K.path_a, r, D), t0, degree=D))
    return rep


def suite_nabla_conjecture(r, D):
    return nabla_conjecture_check(r, None, None, D, spec_id=False)


def suite_spec_id(r, D):
    return spec_id_check(r, None, D)


def suite_ght(r, D):
    return ght_check(r, None, None, D)


def suite_five_term(r, D):
    return five_term_check(r, None, D)


def suite_mukade(r, D):
    return mukade_check(r, None, D)


def suite_framing_commutation(r, D):
    return framing_check(r, None, D)


def suite_two_var_consistency(r, D):
    return two_var_check(D)


def suite_whittaker(r, D):
    u = WeightVector.symbolic(r, "v")
    rep = VerificationReport("whittaker", r, D)
    for d in range(D + 1):
        for lam in _labels(r, d):
            rep.extend(whittaker_check(lam, u, D))
    return rep


def _labels(r, d):
    from .partitions import multipartitions_of
    return multipartitions_of(d, r)


def suite_afs_matrix(r, D):
    """Closed-form matrix elements of the vertical components against the operator path."""
    rep = VerificationReport("afs_matrix", 1, D)
    labels = [lam for d in range(D + 1) for lam in partitions_of(d)]
    lams = [lam for d in range(min(D, 2) + 1) for lam in partitions_of(d)]
    Ps = {mu: macdonald_P(mu, D) for mu in labels}
    for kind in ("phi", "phi*"):
        for n in (0, 1):
            for lam in lams:
                op = afs_operator(lam, kind, n)
                for mu in labels:
                    img = op(Ps[mu])
                    for nu in labels:
                        got = hall_qt_inner(Ps[nu], img)
                        exp = afs_matrix_element(nu, lam, mu, kind, n)
                        rep.cases.append(compare_case(
                            f"<P_{nu}, {kind}_{lam}(n={n}) P_{mu}>", got, exp,
                            **{"lambda": nu, "mu": mu, "vertical": lam, "kind": kind, "n": n,
                               "degree": max(nu.size, mu.size)}))
    return rep


def suite_bispectral(r, D):
    """Ptilde_lam(eps_mu) = Ptilde_mu(eps_lam) for |lam|, |mu| <= D."""
    rep = VerificationReport("bispectral", 1, D)
    labels = [lam for d in range(D + 1) for lam in partitions_of(d)]
    eps = {lam: VirtualAlphabet.sp(lam) for lam in labels}
    Pt = {lam: macdonald_P_tilde(lam, lam.size) for lam in labels}
    for i, lam in enumerate(labels):
        for mu in labels[i:]:
            lhs = plethystic_eval(Pt[lam], eps[mu])
            rhs = plethystic_eval(Pt[mu], eps[lam])
            rep.cases.append(compare_case(f"Ptilde_{lam}(eps_{mu})", lhs, rhs,
                                          **{"lambda": lam, "mu": mu, "degree": max(lam.size, mu.size)}))
    return rep


def _box_prod(lam: Partition, f) -> object:
    out = ONE
    for b in lam.boxes():
        out = out * f(content(b))
    return out


def suite_nekrasov_identities(r, D):
    """Reflection, variation and vanishing properties of the Nekrasov factors."""
    from .coeff import current_params
    z = current_params().sym("z")
    Q3 = q3()
    rep = VerificationReport("nekrasov_identities", 1, D)
    labels = [lam for d in range(D + 1) for lam in partitions_of(d)]
    for lam in labels:
        for mu in labels:
            pl = _ctx(lam, mu=mu, degree=max(lam.size, mu.size))
            tag = f"{lam},{mu}"
            N = nekrasov(lam, mu, z)
            rep.cases.append(compare_case(f"contents form {tag}", N, nekrasov_contents(lam, mu, z), **pl))
            refl = nekrasov(mu, lam, Q3 / z) * _box_prod(lam, lambda c: -z * c / Q3) \
                * _box_prod(mu, lambda c: -z / c)
            rep.cases.append(compare_case(f"reflection {tag}", N, refl, **pl))
            rep.cases.append(compare_case(f"tilde symmetry {tag}", nekrasov_tilde(lam, mu, z),
                                          nekrasov_tilde(mu, lam, Q3 / z), **pl))
            for b in addable_boxes(lam):
                c = content(b)
                lhs = nekrasov(lam.add_box(b), mu, z) / N
                rhs = (-z * c / Q3) * calY(mu, z * c / Q3)
                rep.cases.append(compare_case(f"variation {tag} + {tuple(b)[:2]} left", lhs, rhs, **pl))
                lhs = nekrasov_tilde(lam.add_box(b), mu, z) / nekrasov_tilde(lam, mu, z)
                rep.cases.append(compare_case(f"tilde variation {tag} + {tuple(b)[:2]} left", lhs,
                                              calY(mu, z * c / Q3), **pl))
            for b in addable_boxes(mu):
                c = content(b)
                lhs = nekrasov(lam, mu.add_box(b), z) / N
                rep.cases.append(compare_case(f"variation {tag} + {tuple(b)[:2]} right", lhs,
                                              calY(lam, c / z), **pl))
            if not lam.contains(mu):
                rep.cases.append(compare_case(f"N_{tag}(1) = 0", nekrasov(lam, mu, ONE), ZERO, **pl))
            if not mu.contains(lam):
                rep.cases.append(compare_case(f"N_{tag}(q3) = 0", nekrasov(lam, mu, Q3), ZERO, **pl))
        for b in addable_boxes(lam):
            big = lam.add_box(b)
            lhs = b_coeff(big) / b_coeff(lam)
            from .coeff import q, t
            rhs = (1 - t()) / (1 - q()) * pieri_psi(lam, b) / pieri_psi_star(big, b)
            rep.cases.append(compare_case(f"b variation {lam} + {tuple(b)[:2]}", lhs, rhs,
                                          **_ctx(lam, degree=big.size)))
    return rep


# --------------------------------------------------------------------------
# mutations

def _bad_psi_star(orig):
    def fn(lam, box):
        return -orig(lam, box)
    return fn


def _bad_rep_a(orig):
    def fn(k, r):
        return orig(k, r).scale(gamma())
    return fn


MUTATIONS = {
    "psi_sign": [(_gmp, "pieri_psi_star", _bad_psi_star)],
    "gamma_power": [(_gmp, "rep_a", _bad_rep_a), (_ops, "rep_a", _bad_rep_a)],
}


@contextlib.contextmanager
def mutation(name: str) -> Iterator[None]:
    """Temporarily corrupt one ingredient so that the harness must fail."""
    patches = MUTATIONS[name]
    saved = [(mod, attr, getattr(mod, attr)) for mod, attr, _ in patches]
    try:
        for (mod, attr, make), (_, _, orig) in zip(patches, saved):
            setattr(mod, attr, make(orig))
        _gmp.clear_cache()
        yield
    finally:
        for mod, attr, orig in saved:
            setattr(mod, attr, orig)
        _gmp.clear_cache()


def _mutated(name: str, mut: str):
    def fn(r, D):
        with mutation(mut):
            rep = _pieri(1, D, name)
        return rep
    return fn


SUITES: dict[str, _Suite] = {
    "pieri_r1": _Suite(suite_pieri_r1, frozenset({1}), "a_-1 and a_1 on Macdonald functions"),
    "pieri_gmp": _Suite(suite_pieri_gmp, None, "generalized Pieri rules on the GMP basis"),
    "kernel_pi_weighted": _Suite(suite_kernel_pi_weighted, frozenset({2}), "weighted rank-2 kernel"),
    "kernel_piz_factorization": _Suite(suite_kernel_piz_factorization, None, "factorized kernel Pi_Z"),
    "nabla_conjecture": _Suite(suite_nabla_conjecture, None, "framing operator on plethystic exponentials"),
    "spec_id": _Suite(suite_spec_id, None, "evaluation relation"),
    "ght": _Suite(suite_ght, frozenset({1, 2}), "V maps spherical GMPs to Whittaker vectors"),
    "five_term": _Suite(suite_five_term, None, "five-term relation"),
    "mukade": _Suite(suite_mukade, None, "Mukade operator at the special weights"),
    "afs_matrix": _Suite(suite_afs_matrix, frozenset({1}), "vertical component matrix elements"),
    "whittaker": _Suite(suite_whittaker, frozenset({1, 2}), "Whittaker eigenvalues"),
    "bispectral": _Suite(suite_bispectral, frozenset({1}), "Ptilde_lam(eps_mu) symmetry"),
    "nekrasov_identities": _Suite(suite_nekrasov_identities, None, "Nekrasov factor lemmas"),
    "framing_commutation": _Suite(suite_framing_commutation, None, "nabla against x modes"),
    "two_var_consistency": _Suite(suite_two_var_consistency, frozenset({2}), "two-variable model"),
    "mutation_psi_sign": _Suite(_mutated("mutation_psi_sign", "psi_sign"), frozenset({1}),
                                "pieri_r1 with the sign of psi* flipped (must fail)", "psi_sign"),
    "mutation_gamma_power": _Suite(_mutated("mutation_gamma_power", "gamma_power"), frozenset({1}),
                                   "pieri_r1 with an extra gamma in a_k (must fail)", "gamma_power"),
}


def suite_names() -> list[str]:
    return list(SUITES)


# --------------------------------------------------------------------------
# running

def _params(spec: SuiteSpec, seed):
    return Params() if seed is None else Params.random(seed, spec.degree)


def _run_one(spec: SuiteSpec, seed) -> VerificationReport:
    params = _params(spec, seed)
    token = set_budget(spec.budget) if spec.budget is not None else None
    try:
        with params.active():
            try:
                rep = SUITES[spec.name].fn(spec.rank, spec.degree)
            except ResonanceError as exc:
                raise ResonanceError(f"{exc} (specialization: {params!r})") from exc
    finally:
        if token is not None:
            reset_budget(token)
    if seed is not None:
        point = params.to_json()
        for c in rep.cases:
            c.id = f"seed {seed}: {c.id}"
            if c.counterexample is not None:
                c.counterexample = {**c.counterexample, "seed": seed, "point": point}
    return rep


def _run_raw(spec: SuiteSpec) -> VerificationReport:
    seeds = list(spec.seeds) if spec.mode == "random" else [None]
    out = VerificationReport(spec.name, spec.rank, spec.degree, spec.mode, list(spec.seeds))
    if spec.jobs > 1 and len(seeds) > 1:
        with ProcessPoolExecutor(max_workers=min(spec.jobs, len(seeds))) as pool:
            parts = list(pool.map(_run_one, [spec] * len(seeds), seeds))
    else:
        parts = [_run_one(spec, s) for s in seeds]
    for part in parts:
        out.extend(part)
    return out


def run_suite(spec: SuiteSpec) -> VerificationReport:
    """Run a suite; a failing report is minimized before it is returned."""
    spec = spec.validate()
    rep = _run_raw(spec)
    rep.spec = spec
    if not rep.passed:
        rep = minimize(rep)
    return rep


def _fail_key(c: CaseResult):
    cex = c.counterexample or {}
    lam = cex.get("lambda")
    try:
        lk = order_key(MultiPartition(lam)) if lam and isinstance(lam[0], list) else \
            order_key(MultiPartition([lam])) if lam is not None else ()
    except (TypeError, ValueError):
        lk = ()
    return (cex.get("degree", 10 ** 6), lk, c.id)


def minimize(report: VerificationReport) -> VerificationReport:
    """Re-run at smaller degrees and put the smallest failing case first.

    Failures are ranked by degree, then by the label in basis order.
    An all-pass report is returned unchanged.
    """
    if report.passed:
        return report
    spec = getattr(report, "spec", None)
    failures = list(report.failures)
    if spec is not None:
        for d in range(spec.degree):
            smaller = _run_raw(replace(spec, degree=d))
            if not smaller.passed:
                failures = smaller.failures + failures
                break
    seen, ordered = set(), []
    for c in sorted(failures, key=_fail_key):
        if c.id not in seen:
            seen.add(c.id)
            ordered.append(c)
    rest = [c for c in report.cases if c.passed]
    out = VerificationReport(report.suite, report.rank, report.degree, report.mode, list(report.seeds),
                             ordered + rest)
    out.spec = spec
    return out
