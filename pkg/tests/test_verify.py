import pytest

from gmacdonald.coeff import BudgetExceeded
from gmacdonald.verify import SUITES, SuiteSpec, minimize, run_suite


def test_pieri_r1_degree_four():
    rep = run_suite(SuiteSpec("pieri_r1", 1, 4))
    assert rep.passed and rep.cases
    assert all(c.ms is not None for c in rep.cases)


def test_kernel_factorization_rank_two():
    assert run_suite(SuiteSpec("kernel_piz_factorization", 2, 3)).passed


def test_conjecture_random_degree_six():
    rep = run_suite(SuiteSpec("nabla_conjecture", 2, 6, "random", (1, 2, 3)))
    assert rep.passed and len(rep.cases) == 3


def test_minimize_is_identity_on_passing_reports():
    rep = run_suite(SuiteSpec("bispectral", 1, 2))
    assert minimize(rep) is rep


@pytest.mark.parametrize("name", ["mutation_psi_sign", "mutation_gamma_power"])
def test_mutations_fail_at_degree_one(name):
    rep = run_suite(SuiteSpec(name, 1, 3))
    assert not rep.passed
    first = rep.cases[0]
    assert first.status == "fail" and first.counterexample["degree"] == 1


def test_mutations_are_reverted():
    run_suite(SuiteSpec("mutation_gamma_power", 1, 2))
    assert run_suite(SuiteSpec("pieri_r1", 1, 2)).passed


def test_reports_are_reproducible():
    spec = SuiteSpec("five_term", 1, 2, "random", (4, 9))
    a, b = run_suite(spec), run_suite(spec)
    assert a.to_json(timings=False) == b.to_json(timings=False)
    doc = a.to_json(timings=True)
    assert set(doc) == {"suite", "rank", "degree", "mode", "seeds", "cases", "version"}


@pytest.mark.parametrize("name,rank", [("spec_id", 2), ("framing_commutation", 1), ("ght", 1)])
def test_exact_pass_implies_random_pass(name, rank):
    assert run_suite(SuiteSpec(name, rank, 2)).passed
    assert run_suite(SuiteSpec(name, rank, 2, "random", (11,))).passed


def test_parallel_seeds_match_sequential():
    spec = SuiteSpec("kernel_piz_factorization", 2, 2, "random", (1, 2))
    seq = run_suite(spec)
    par = run_suite(SuiteSpec(spec.name, 2, 2, "random", (1, 2), jobs=2))
    assert seq.to_json(timings=False) == par.to_json(timings=False)


def test_budget():
    with pytest.raises(BudgetExceeded):
        run_suite(SuiteSpec("five_term", 1, 3, budget=5))


@pytest.mark.parametrize("spec", [
    SuiteSpec("nope", 1, 2),
    SuiteSpec("pieri_gmp", 2, -1),
    SuiteSpec("pieri_r1", 2, 2),
    SuiteSpec("ght", 1, 2, "random", ()),
    SuiteSpec("ght", 1, 2, "sometimes"),
])
def test_invalid_specs(spec):
    with pytest.raises(ValueError):
        spec.validate()


def test_catalog_covers_the_named_suites():
    names = {"pieri_r1", "pieri_gmp", "kernel_pi_weighted", "kernel_piz_factorization", "nabla_conjecture",
             "spec_id", "ght", "five_term", "mukade", "afs_matrix", "whittaker", "bispectral",
             "nekrasov_identities", "framing_commutation", "two_var_consistency"}
    assert names <= set(SUITES)
    assert SuiteSpec("five-term").validate().name == "five_term"
