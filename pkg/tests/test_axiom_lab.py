import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heapcurve.axiom_lab import (
    AUTO_CUTOVER,
    Carrier,
    Mode,
    all_passed,
    check_group_axioms,
    check_heap_axioms,
    check_ring_axioms,
    check_truss_axioms,
    replay,
    worker_count,
)


def zmod(n, tabulate=True):
    return Carrier(
        range(n),
        ternary=lambda a, b, c: (a - b + c) % n,
        binary_mul=lambda a, b: a * b % n,
        tabulate=tabulate,
    )


def by_name(reports):
    return {r.axiom: r for r in reports}


@pytest.mark.parametrize("tabulate", [True, False])
def test_zmod_is_a_ring(tabulate):
    reports = check_ring_axioms(zmod(6, tabulate), 0, Mode.exhaustive())
    assert all_passed(reports), [r.line() for r in reports]


@pytest.mark.parametrize("tabulate", [True, False])
def test_zmod_is_a_truss(tabulate):
    assert all_passed(check_truss_axioms(zmod(5, tabulate), Mode.exhaustive()))


def test_case_counts():
    r = by_name(check_heap_axioms(zmod(4), Mode.exhaustive()))
    assert r["para-associativity"].cases == 4 ** 5
    assert r["malcev"].cases == 16
    assert r["symmetry"].cases == 64


@pytest.mark.parametrize("tabulate", [True, False])
def test_sum_ternary_fails_malcev_with_valid_counterexample(tabulate):
    c = Carrier(range(4), ternary=lambda a, b, c: (a + b + c) % 4, tabulate=tabulate)
    r = by_name(check_heap_axioms(c, Mode.exhaustive()))["malcev"]
    assert not r.passed
    assert r.counterexample == (0, 1)
    assert replay(c, r) is False


def test_non_abelian_heap_fails_symmetry_only():
    # S3 as permutations with [a, b, c] = a b^-1 c
    import itertools

    perms = list(itertools.permutations(range(3)))

    def mul(p, q):
        return tuple(p[q[i]] for i in range(3))

    def inv(p):
        out = [0] * 3
        for i, x in enumerate(p):
            out[x] = i
        return tuple(out)

    c = Carrier(perms, ternary=lambda a, b, c: mul(mul(a, inv(b)), c))
    r = by_name(check_heap_axioms(c, Mode.exhaustive()))
    assert r["para-associativity"].passed and r["malcev"].passed
    assert not r["symmetry"].passed
    assert replay(c, r["symmetry"]) is False


def test_truss_not_ring_absorber_counterexample():
    # Z/4 with [a,b,c] = a-b+c and the constant multiplication a*b = 1 is a truss
    c = Carrier(range(4), ternary=lambda a, b, c: (a - b + c) % 4, binary_mul=lambda a, b: 1)
    assert all_passed(check_truss_axioms(c, Mode.exhaustive()))
    ring = by_name(check_ring_axioms(c, 0, Mode.exhaustive()))
    assert not ring["left-distributivity"].passed
    assert replay(c, ring["left-distributivity"], zero=0) is False


def test_non_associative_mul_detected():
    c = Carrier(range(3), ternary=lambda a, b, c: (a - b + c) % 3, binary_mul=lambda a, b: (a - b) % 3)
    r = by_name(check_truss_axioms(c, Mode.exhaustive()))
    assert not r["mul-associativity"].passed
    assert replay(c, r["mul-associativity"]) is False


def test_group_axioms_need_zero_in_carrier():
    with pytest.raises(ValueError):
        check_group_axioms(zmod(3), 7)
    assert all_passed(check_group_axioms(zmod(3), 2, Mode.exhaustive()))


def test_missing_operations():
    with pytest.raises(ValueError):
        check_heap_axioms(Carrier([1, 2]))
    with pytest.raises(ValueError):
        check_truss_axioms(Carrier([1, 2], ternary=lambda a, b, c: a))


def test_duplicates_rejected():
    with pytest.raises(ValueError):
        Carrier([1, 2, 1])


def test_unhashable_elements_use_equality():
    els = [[i] for i in range(3)]
    c = Carrier(els, ternary=lambda a, b, c: [(a[0] - b[0] + c[0]) % 3])
    assert all_passed(check_heap_axioms(c, Mode.exhaustive()))


def test_sampled_is_deterministic():
    c = Carrier(range(50), ternary=lambda a, b, c: (a + b - c) % 50)
    r1 = check_heap_axioms(c, Mode.sampled(500, seed=3))
    r2 = check_heap_axioms(c, Mode.sampled(500, seed=3))
    assert [x.to_json() for x in r1] == [x.to_json() for x in r2]
    assert not all_passed(r1)


def test_auto_mode_resolution():
    assert Mode.auto().resolve(5, AUTO_CUTOVER[5]).kind == "exhaustive"
    assert Mode.auto().resolve(5, AUTO_CUTOVER[5] + 1).kind == "sampled"
    assert str(Mode.sampled(10, 4)) == "sampled(10, 4)"


def test_closure_failure_is_reported():
    # multiplication escaping the carrier: table path refuses, direct path reports inequality
    c = Carrier(range(3), ternary=lambda a, b, c: (a - b + c) % 3, binary_mul=lambda a, b: a * b)
    assert c.cayley_tables() is None
    r = by_name(check_ring_axioms(c, 0, Mode.exhaustive()))
    assert not r["left-distributivity"].passed


def test_threads_env(monkeypatch):
    monkeypatch.setenv("HEAPCURVE_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("HEAPCURVE_THREADS", "1")
    assert all_passed(check_heap_axioms(zmod(4, tabulate=False), Mode.exhaustive()))


def test_report_json_and_line():
    c = Carrier(range(4), ternary=lambda a, b, c: (a + b + c) % 4)
    r = by_name(check_heap_axioms(c, Mode.exhaustive()))["malcev"]
    assert r.to_json() == {"axiom": "malcev", "mode": "exhaustive", "verdict": {"fail": ["0", "1"]}, "cases": 2}
    assert r.line() == "malcev: fail [exhaustive, 2 cases] counterexample: (0; 1)"


@settings(max_examples=25)
@given(st.integers(2, 9), st.integers(0, 8))
def test_table_and_direct_agree(n, shift):
    t = lambda a, b, c: (a - b + c + shift * (a == b)) % n
    tab = check_heap_axioms(Carrier(range(n), ternary=t), Mode.exhaustive())
    direct = check_heap_axioms(Carrier(range(n), ternary=t, tabulate=False), Mode.exhaustive())
    assert [r.passed for r in tab] == [r.passed for r in direct]
