import random
from itertools import combinations

import pytest

from oracles import det_cofactor, legendre_by_squares, primes_upto
from sundet.errors import ConsistencyError, DomainError, TheoremViolation
from sundet.exact_linalg import det_bareiss, det_crt
from sundet.fp_linalg import rank_fp
from sundet.modmath import factorize, valuation
from sundet.quadform_fp import reduced_coeff_matrix
from sundet.sun_core import (
    SunParams,
    VerificationRecord,
    build_sun_matrix,
    check_composite_case,
    composite_audit,
    compute_dn,
    prime_decomposition_check,
    specialization_divisibility,
    verify_theorem,
    vn_product,
    vn_valuation,
)


def test_params_validation():
    with pytest.raises(DomainError):
        SunParams(3, 0, 0)
    assert SunParams(4, 1, 2) < SunParams(4, 2, 0) < SunParams(5, -9, -9)


def test_build_sun_matrix_entries():
    assert build_sun_matrix(SunParams(4, 1, 1))[1][2] == 49
    assert build_sun_matrix(SunParams(5, 0, 2))[2][1] == 216
    A = build_sun_matrix(SunParams(6, 0, 0))
    assert all(A[i][j] == i ** 8 for i in range(6) for j in range(6))
    assert build_sun_matrix(SunParams(7, 3, -4))[0][0] == 0


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_compute_dn_zero_form(n):
    assert compute_dn(SunParams(n, 0, 0)) == 0


def test_compute_dn_against_cofactor():
    for c, d in [(1, 1), (-2, 3), (0, 2)]:
        A = build_sun_matrix(SunParams(5, c, d))
        assert compute_dn(SunParams(5, c, d)) == det_cofactor(A)


def test_compute_dn_examples():
    assert compute_dn(SunParams(5, 0, 2)) % 25 == 0
    for c in range(-2, 3):
        for d in range(-2, 3):
            assert compute_dn(SunParams(4, c, d)) % 16 == 0


def test_compute_dn_detects_disagreement(monkeypatch):
    import sundet.exact_linalg as el

    monkeypatch.setattr(el, "det_crt", lambda A: det_bareiss(A) + 1)
    with pytest.raises(ConsistencyError):
        compute_dn(SunParams(4, 1, 1))


@pytest.mark.parametrize("n,expected", [(2, 1), (4, 12), (6, 34560)])
def test_vn_product_examples(n, expected):
    assert vn_product(n) == expected


def test_vn_product_formulas_and_valuations():
    for n in range(2, 41):
        v = vn_product(n)
        for p, e in factorize(v).items():
            assert vn_valuation(n, p) == e
        for p in primes_upto(n + 3):
            if p not in factorize(v):
                assert vn_valuation(n, p) == 0
        assert v > 0 and valuation(v, 2) == vn_valuation(n, 2)


def test_vn_valuation_examples():
    assert vn_valuation(4, 2) == 2
    assert vn_valuation(6, 3) == 3 >= 6 - 3
    assert vn_valuation(4, 5) == 0


def test_check_composite_case():
    assert check_composite_case(4)
    assert composite_audit(9) == {3: (2, vn_valuation(9, 3))}
    assert vn_valuation(9, 3) >= 6
    assert check_composite_case(9)
    for n in (5, 7, 3, 2):
        with pytest.raises(DomainError):
            check_composite_case(n)


def test_composite_case_up_to_500():
    for n in range(4, 501):
        if len(factorize(n)) > 1 or max(factorize(n).values()) > 1:
            assert check_composite_case(n)
            for p in factorize(n):
                assert vn_valuation(n, p) >= n - p


def vandermonde(xs):
    out = 1
    for r, s in combinations(range(len(xs)), 2):
        out *= xs[s] - xs[r]
    return out


def test_specialization_natural_nodes():
    for n in (4, 5, 6):
        x = list(range(n))
        assert specialization_divisibility(n, 1, 3, x, x)
        assert compute_dn(SunParams(n, 1, 3)) % vn_product(n) ** 2 == 0


def test_specialization_example():
    x, y = (0, 1, 2, 3), (1, 3, 5, 7)
    phi = det_cofactor([[(a * a + a * b + b * b) ** 2 for b in y] for a in x])
    assert phi % (vandermonde(x) * vandermonde(y)) == 0
    assert specialization_divisibility(4, 1, 1, x, y)


def test_specialization_random():
    rng = random.Random(10)
    for _ in range(20):
        n = rng.choice([4, 5])
        x = rng.sample(range(-5, 9), n)
        y = rng.sample(range(-5, 9), n)
        assert specialization_divisibility(n, rng.randint(-3, 3), rng.randint(-3, 3), x, y)


def test_specialization_rejects_repeats():
    with pytest.raises(DomainError):
        specialization_divisibility(4, 1, 1, (0, 1, 1, 2), (0, 1, 2, 3))
    with pytest.raises(DomainError):
        specialization_divisibility(4, 1, 1, (0, 1, 2), (0, 1, 2, 3))


def test_prime_decomposition_example():
    assert prime_decomposition_check(5, 0, 2) == (2, True)


def test_prime_decomposition_p7_all_cells():
    for c in range(7):
        for d in range(1, 7):
            rank, ok = prime_decomposition_check(7, c, d)
            assert ok
            assert rank == rank_fp(reduced_coeff_matrix(c, d, 7))


@pytest.mark.parametrize("p", [5, 7, 11])
def test_prime_decomposition_rank_bound(p):
    for d in range(1, p):
        if legendre_by_squares(d, p) == -1:
            for c in range(p):
                assert prime_decomposition_check(p, c, d)[0] <= p - 2


def test_prime_decomposition_detects_mismatch(monkeypatch):
    import sundet.sun_core as sc
    from sundet.fp_linalg import FpMatrix

    monkeypatch.setattr(sc, "reduced_coeff_matrix", lambda c, d, p: FpMatrix.identity(p, p))
    with pytest.raises(ConsistencyError):
        prime_decomposition_check(5, 0, 2)


def test_prime_decomposition_domain():
    with pytest.raises(DomainError):
        prime_decomposition_check(9, 0, 2)


def test_verify_theorem_examples():
    rec = verify_theorem(SunParams(6, 1, 2))
    assert rec.n_class == "composite" and rec.symbol_d is None
    assert rec.hypothesis_met and rec.d_mod_n2 == 0 and rec.theorem_holds

    rec = verify_theorem(SunParams(5, 0, 1))
    assert rec.n_class == "prime" and rec.symbol_d == 1 and not rec.hypothesis_met
    assert rec.theorem_holds == (rec.d_mod_n2 == 0)

    rec = verify_theorem(SunParams(7, 2, 3))
    assert rec.symbol_d == -1 and rec.hypothesis_met and rec.d_mod_n2 == 0

    rec = verify_theorem(SunParams(7, 2, 3), decompose=True)
    assert rec.decomposition_rank is not None and rec.decomposition_rank <= 5
    assert rec.ms is not None and rec.ms >= 0


def test_verify_theorem_residue_matches_determinant():
    for params in [SunParams(5, 1, 1), SunParams(7, 0, 7), SunParams(8, -1, 2)]:
        rec = verify_theorem(params, strict=False)
        assert rec.d_mod_n2 == det_crt(build_sun_matrix(params)) % params.n**2
        assert 0 <= rec.d_mod_n2 < params.n**2


def test_verify_theorem_strict_raises(monkeypatch):
    import sundet.sun_core as sc

    monkeypatch.setattr(sc, "compute_dn", lambda params: 1)
    with pytest.raises(TheoremViolation) as info:
        verify_theorem(SunParams(6, 0, 0))
    assert info.value.record.d_mod_n2 == 1
    assert verify_theorem(SunParams(6, 0, 0), strict=False).violated


def test_record_symbol_invariant():
    with pytest.raises(DomainError):
        VerificationRecord(SunParams(6, 0, 0), "composite", 1, True, 0, True)
    with pytest.raises(DomainError):
        VerificationRecord(SunParams(5, 0, 0), "prime", None, False, 0, True)
