"""Run a handful of verification suites and print a one-line verdict each."""
from gmacdonald.verify import SuiteSpec, run_suite

RUNS = [
    SuiteSpec("pieri_r1", rank=1, degree=4),
    SuiteSpec("pieri_gmp", rank=2, degree=2),
    SuiteSpec("nabla_conjecture", rank=2, degree=4, mode="random", seeds=(1, 2)),
    SuiteSpec("ght", rank=1, degree=3),
    SuiteSpec("mutation_psi_sign", rank=1, degree=3),
]

for spec in RUNS:
    rep = run_suite(spec)
    if rep.passed:
        verdict = "pass"
    else:
        ce = rep.counterexamples[0]
        verdict = f"FAIL at degree {ce['degree']}: {ce.get('lambda')} -> {ce.get('mu')}"
    print(f"{spec.name:22s} r={spec.rank} D={spec.degree} {spec.mode:6s}: {len(rep.cases)} cases, {verdict}")
