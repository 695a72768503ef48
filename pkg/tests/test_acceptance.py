"""Acceptance suite: one test per criterion, exact equalities over F_p.

Every test prints a single [PASS] line on success (visible with -s or in
the captured output); a failure surfaces as an ordinary assertion error.
Runtime bounds are asserted where the criterion states one.
"""

import json
import time

from thinlie.analysis import (
    FAKE,
    GENUINE_FINITE,
    GENUINE_INFINITE,
    full_report,
)
from thinlie.engine import compute, thin_core
from thinlie.fields import PrimeField, lucas_binomial
from thinlie.harness import (
    exp_adjoint_identities,
    exp_chain_structure,
    exp_theorem41,
)
from thinlie.presentations import Presentation, Word, build_minus1, build_theorem41, v_word

from checkers import antisymmetry_violations, jacobi_violations
from oracles import pascal_triangle_mod, witt_dims


def _announce(tag: str, detail: str) -> None:
    print(f"[PASS] {tag}: {detail}")


def test_a01_engine_sanity_free_dims():
    t0 = time.perf_counter()
    expected = witt_dims(10)
    assert expected == [2, 1, 2, 3, 6, 9, 18, 30, 56, 99]
    for p in (3, 5):
        alg = compute(Presentation(PrimeField(p), ()), 10)
        assert list(alg.dims()) == expected, f"free dims over F_{p}"
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0, f"took {elapsed:.1f}s"
    _announce("A1", f"free algebra dims over F_3 and F_5 match the necklace "
                    f"formula through degree 10 ({elapsed:.2f}s)")


def test_a02_jacobi_brute_force():
    alg = compute(build_theorem41(3, 1, 1), 12)
    bad = jacobi_violations(alg, 12)
    assert bad == 0
    assert antisymmetry_violations(alg, 12) == 0
    _announce("A2", "Jacobi identity holds on every basis triple with degree "
                    "sum <= 12; zero violations")


def test_a03_lucas_oracle():
    t0 = time.perf_counter()
    for p in (3, 5, 7):
        f = PrimeField(p)
        tri = pascal_triangle_mod(2000, p)
        for a in range(2000):
            row = tri[a].tolist()
            for b in range(a + 1):
                assert lucas_binomial(a, b, f).value == row[b], (a, b, p)
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0, f"took {elapsed:.1f}s"
    _announce("A3", f"digit-wise binomials agree with Pascal's triangle for "
                    f"all 0 <= b <= a < 2000, p in {{3,5,7}} ({elapsed:.2f}s)")


def test_a04_pattern_q3():
    t0 = time.perf_counter()
    core = thin_core(compute(build_theorem41(3, 1, 1), 25))
    report = full_report(core)
    dims = list(core.dims())
    assert set(dims) <= {1, 2}
    kinds = {r.degree: (r.kind, r.lam) for r in report.records}
    # diamonds, genuine or fake, at every odd degree in the reliable range
    for h in range(3, 23, 2):
        assert kinds[h][0] in (GENUINE_FINITE, GENUINE_INFINITE, FAKE), h
    for h in range(2, 24, 2):
        assert kinds[h][0] == "chain", h
    assert kinds[9] == (GENUINE_FINITE, 1)
    assert kinds[15] == (GENUINE_FINITE, 2)
    assert kinds[21] == (FAKE, None)
    assert kinds[3] == (FAKE, None)
    assert report.covering_ok_upto == 22 and not report.covering_failures
    assert not report.findings  # includes the y-centralizer checks
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0, f"took {elapsed:.1f}s"
    _announce("A4", f"q=3 core: diamonds at odd degrees, types 1, 2, fake at "
                    f"9, 15, 21; covering and centralizers clean ({elapsed:.2f}s)")


def test_a05_pattern_q5():
    t0 = time.perf_counter()
    core = thin_core(compute(build_theorem41(5, 1, 1), 30))
    report = full_report(core)
    kinds = {r.degree: (r.kind, r.lam) for r in report.records}
    assert report.second_diamond == 9
    for h in (9, 13, 17, 21):
        assert kinds[h] == (GENUINE_INFINITE, None), h
    assert kinds[25] == (GENUINE_FINITE, 1)
    assert not report.findings
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0, f"took {elapsed:.1f}s"
    _announce("A5", f"q=5 core: second diamond at 9, infinite types at "
                    f"13,17,21, type 1 at 25 ({elapsed:.2f}s)")


def test_a06_pattern_q9():
    t0 = time.perf_counter()
    core = thin_core(compute(build_theorem41(3, 2, 1), 36))
    report = full_report(core)
    kinds = {r.degree: (r.kind, r.lam) for r in report.records}
    assert report.second_diamond == 17
    assert kinds[17] == (GENUINE_INFINITE, None)
    assert kinds[33] == (GENUINE_FINITE, 1)
    assert not report.findings
    elapsed = time.perf_counter() - t0
    assert elapsed < 120.0, f"took {elapsed:.1f}s"
    _announce("A6", f"q=9 core: second diamond at 17, type 1 at 33 "
                    f"({elapsed:.2f}s)")


def test_a07_odd_a_relation_is_automatic():
    pres = build_minus1(5, 1, 3, 1)
    no_type = Presentation(pres.field, pres.relators[:-1], "custom",
                           dict(pres.params))
    assert [r.degree for r in no_type.relators if r.degree > 8] == [10]
    core = thin_core(compute(no_type, 16))
    v3xx = core.evaluate_word(Word(v_word(3, 5).letters + ("x", "x")))
    assert v3xx.is_zero()
    _announce("A7", "p=q=5 with [v_2 x x] = 0 only: [v_3 x x] = 0 holds "
                    "automatically in the core")


def test_a08_even_a_collapse():
    t0 = time.perf_counter()
    core = thin_core(compute(build_minus1(5, 1, 4, 1), 28))
    assert core.dims()[23 - 1] == 0
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0, f"took {elapsed:.1f}s"
    _announce("A8", f"p=q=5, a=4: the degree-23 component of the core is zero "
                    f"({elapsed:.2f}s)")


def test_a09_a_cong_one_collapse():
    t0 = time.perf_counter()
    core = thin_core(compute(build_minus1(3, 1, 7, 1), 26))
    assert core.dims()[22 - 1] == 0
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0, f"took {elapsed:.1f}s"
    _announce("A9", f"p=q=3, a=7: the degree-22 component of the core is zero "
                    f"({elapsed:.2f}s)")


def test_a10_power_of_p_control():
    core = thin_core(compute(build_minus1(3, 1, 4, 1), 32))
    dims = list(core.dims())
    assert len(dims) == 30
    assert all(d > 0 for d in dims)
    _announce("A10", "p=q=3, a=4 (a-1 = p): every component through degree 30 "
                     "is nonzero")


def test_a11_adjoint_identities_q5():
    res = exp_adjoint_identities(5, 1, 1, 28)
    assert res.verdict
    ks = {c["what"].split(":")[0] for c in res.checks}
    assert {"k=2", "k=3", "k=4", "k=5"} <= ks
    assert all(c["ok"] for c in res.checks)
    _announce("A11", f"q=5 adjoint identities hold exactly for k = 2..5 "
                     f"({len(res.checks)} identities, infinite type read as "
                     f"inverse zero)")


def test_a12_chain_structure_all_families():
    for p, n, s, D in ((3, 1, 1, 25), (5, 1, 1, 30), (3, 2, 1, 36)):
        q = p**n
        res = exp_chain_structure(p, n, s, D)
        assert res.verdict, (p, n)
        assert all(dist == q - 1 for dist in res.evidence["distances"])
        pattern = exp_theorem41(p, n, s, D)
        assert pattern.verdict  # includes the y-centralizer comparison
    _announce("A12", "chain lengths, y-centralization and end-of-chain "
                     "relations verified in all three families")


def test_a13_superfluity_of_odd_k():
    for p, n, a, D in ((3, 1, 4, 16), (5, 1, 4, 22)):
        with_odd = thin_core(compute(build_minus1(p, n, a, 1, include_odd_k=True), D))
        without = thin_core(compute(build_minus1(p, n, a, 1, include_odd_k=False), D))
        assert with_odd.dims() == without.dims(), (p, a)
    _announce("A13", "odd-k chain relations do not change the core for "
                     "(p,q,a) = (3,3,4) and (5,5,4)")


def test_a14_determinism():
    reports = []
    for _ in range(2):
        core = thin_core(compute(build_theorem41(3, 1, 1), 25))
        reports.append(full_report(core).to_json().encode())
    assert reports[0] == reports[1]
    json.loads(reports[0])
    _announce("A14", "repeated q=3 runs serialize to byte-identical JSON "
                     "reports")
