"""Normalizations, exact sign extraction, tallies, and the tail inequality."""

import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hilbert_signs import (
    EigenvalueSeries,
    HasseBoundViolated,
    MissingPrime,
    SignSurvey,
    TALLY_CSV_HEADER,
    ValidationError,
    density_string,
    enumerate_prime_ideals,
    epsilon_cutoff_check,
    hecke_eigenvalue,
    lambda_sign,
    make_field,
    renormalize_C,
    sato_tate_coordinate,
    split_rational_prime,
    tally_csv_row,
    tally_signs,
)

Q = make_field(1)


def series_over_Q(X, cfun, weight=(2,), label="test"):
    entries = {P: cfun(P) for P in enumerate_prime_ideals(Q, X)}
    return EigenvalueSeries(Q, weight, label, entries)


def seeded_series_over_Q(X, seed, weight=(2,)):
    rng = random.Random(seed)

    def cfun(P):
        c = Fraction(rng.randint(-1000, 1000), 1000)
        while c * c * P.norm > 4:
            c = Fraction(c.numerator - (1 if c > 0 else -1), 1000)
        return c

    return series_over_Q(X, cfun, weight=weight, label=f"seeded-{seed}")


# ----------------------------------------------------------------------
# pointwise maps
# ----------------------------------------------------------------------


def test_hecke_eigenvalue_examples():
    assert hecke_eigenvalue(Fraction(0), 7) == 0
    assert hecke_eigenvalue(Fraction(-1, 5), 5) == -1
    assert hecke_eigenvalue(Fraction(3, 11), 11) == 3
    assert isinstance(hecke_eigenvalue(Fraction(1, 2), 4), Fraction)


def test_renormalize_examples():
    assert renormalize_C(Fraction(0), 11, 2) == 0
    assert renormalize_C(Fraction(-2, 11), 11, 2) == -2
    assert renormalize_C(Fraction(3, 2401), 7, 4) == Fraction(3, 49)
    with pytest.raises(ValidationError):
        renormalize_C(Fraction(1, 2), 11, 3)


def test_sato_tate_coordinate_examples():
    assert sato_tate_coordinate(Fraction(0), 11, 2) == 0.0
    B = sato_tate_coordinate(Fraction(-2), 11, 2)
    assert B == pytest.approx(-1 / 11**0.5, abs=1e-15)
    assert abs(B + 0.30151) < 1e-5


def test_sato_tate_bound_is_exact():
    # (199/30)^2 * 900 = 39601 > 39600 = 44 * 900: barely over 2*sqrt(11)
    with pytest.raises(HasseBoundViolated):
        sato_tate_coordinate(Fraction(199, 30), 11, 2)
    assert sato_tate_coordinate(Fraction(6633, 1000), 11, 2) < 1


def test_sato_tate_boundary_allowed():
    # norm 9 has rational 2 sqrt(N) = 6, so B = +-1 exactly
    assert sato_tate_coordinate(Fraction(6), 9, 2) == 1.0
    assert sato_tate_coordinate(Fraction(-6), 9, 2) == -1.0
    with pytest.raises(HasseBoundViolated):
        sato_tate_coordinate(Fraction(6000000000001, 10**12), 9, 2)


def test_lambda_sign_examples():
    assert lambda_sign(Fraction(3, 11), 1, 11) == 1
    assert lambda_sign(Fraction(1, 11), 1, 11) == 0
    assert lambda_sign(Fraction(0), -1, 11) == 1
    assert lambda_sign(Fraction(-3, 7), -1, 7) == -1


def test_lambda_sign_near_tie_is_exact():
    eps = Fraction(1, 10**18)
    assert lambda_sign(Fraction(1, 11) + eps, 1, 11) == 1
    assert lambda_sign(Fraction(1, 11) - eps, 1, 11) == -1
    # the float route collapses the same difference to zero
    assert float(Fraction(1, 11) + eps) - float(Fraction(1, 11)) == 0.0


@given(
    num=st.integers(min_value=-(10**6), max_value=10**6),
    den=st.integers(min_value=1, max_value=10**6),
    chi=st.sampled_from([-1, 1]),
    norm=st.sampled_from([3, 5, 7, 11, 101, 9973]),
)
def test_lambda_sign_matches_high_precision_float(num, den, chi, norm):
    c = Fraction(num, den)
    with mpmath.workprec(256):
        v = mpmath.mpf(num) / den - mpmath.mpf(chi) / norm
        if abs(v) > mpmath.mpf("1e-30"):
            assert lambda_sign(c, chi, norm) == (1 if v > 0 else -1)
        else:
            assert lambda_sign(c, chi, norm) == 0


# ----------------------------------------------------------------------
# series container validation
# ----------------------------------------------------------------------


def test_series_rejects_bad_weight():
    with pytest.raises(ValidationError):
        EigenvalueSeries(Q, (3,), "odd", {})
    with pytest.raises(ValidationError):
        EigenvalueSeries(Q, (0,), "small", {})
    with pytest.raises(ValidationError):
        EigenvalueSeries(Q, (), "empty", {})


def test_series_rejects_nonzero_omega():
    with pytest.raises(ValidationError):
        EigenvalueSeries(Q, (2,), "omega", {}, omega=Fraction(1, 2))


def test_series_rejects_hasse_violation():
    (P3,) = split_rational_prime(Q, 3)
    with pytest.raises(HasseBoundViolated):
        EigenvalueSeries(Q, (2,), "fat", {P3: Fraction(2)})
    ok = EigenvalueSeries(Q, (2,), "edge", {P3: Fraction(1)})  # 1*1*3 <= 4
    assert ok.entries[P3] == 1


def test_series_rejects_foreign_primes(field5):
    P3 = split_rational_prime(field5, 3)[0]
    with pytest.raises(ValidationError):
        EigenvalueSeries(Q, (2,), "foreign", {P3: Fraction(0)})


def test_k0_is_max_component():
    E = EigenvalueSeries(Q, (2, 4), "mixed", {})
    assert E.k0 == 4


# ----------------------------------------------------------------------
# tallies
# ----------------------------------------------------------------------


def test_forced_positive_tally():
    # c = 2/N makes lambda = (2 - chi)/N > 0 at every good prime
    E = series_over_Q(300, lambda P: Fraction(2, P.norm))
    t = tally_signs(E, 1, x=300)
    assert t.pos == t.total - t.bad and t.neg == 0 and t.zero == 0
    assert t.bad == 1  # only the prime above 2


def test_forced_zero_tally():
    E = series_over_Q(300, lambda P: Fraction(1, P.norm))
    t = tally_signs(E, 1, x=300)  # chi = +1 off the bad set, so c = chi/N
    assert t.zero == t.total - t.bad and t.pos == 0 and t.neg == 0


def test_tally_partition_and_monotonicity():
    E = seeded_series_over_Q(2000, 7)
    survey = SignSurvey(E, 5, x=2000)
    prev = None
    for x in (50, 100, 400, 900, 1600, 2000):
        t = survey.tally(x)
        assert t.pos + t.neg + t.zero + t.bad == t.total
        if prev is not None:
            assert t.pos >= prev.pos and t.neg >= prev.neg
            assert t.zero >= prev.zero and t.bad >= prev.bad
        prev = t


def test_survey_matches_fresh_tally():
    E = seeded_series_over_Q(1000, 13)
    survey = SignSurvey(E, 5, x=1000)
    assert survey.tally(400) == tally_signs(E, 5, x=400)
    with pytest.raises(ValueError):
        survey.tally(1001)
    with pytest.raises(ValueError):
        SignSurvey(E, 5)  # cutoff is mandatory


def test_missing_prime():
    entries = {P: Fraction(0) for P in enumerate_prime_ideals(Q, 100)}
    del entries[split_rational_prime(Q, 97)[0]]
    E = EigenvalueSeries(Q, (2,), "gappy", entries)
    with pytest.raises(MissingPrime):
        tally_signs(E, 1, x=100)
    # but a tighter cutoff never touches the gap
    assert tally_signs(E, 1, x=90).total == 24


def test_sign_flip_witnesses():
    # flipping chi at P changes the sign iff |c| < 1/N
    for N in (3, 7, 11, 101):
        small = Fraction(1, 2 * N)
        assert lambda_sign(small, 1, N) == -1 and lambda_sign(small, -1, N) == 1
        big = Fraction(3, 2 * N)
        assert lambda_sign(big, 1, N) == lambda_sign(big, -1, N) == 1
        assert lambda_sign(-big, 1, N) == lambda_sign(-big, -1, N) == -1


def test_tally_bad_set_excluded_from_numerators():
    E = seeded_series_over_Q(500, 3)
    t = tally_signs(E, 5, x=500)
    assert t.bad == 2  # (2) and (5)
    assert t.total == 95  # pi(500)
    assert t.pos + t.neg + t.zero == 93


# ----------------------------------------------------------------------
# tail inequality
# ----------------------------------------------------------------------


def test_cutoff_trivial_regimes():
    E = seeded_series_over_Q(1000, 29)
    r = epsilon_cutoff_check(E, 1, x=1000, epsilon=1.0)
    assert r.rhs == 0 and r.holds
    r = epsilon_cutoff_check(E, 1, x=1000, epsilon=Fraction(1, 100))
    assert r.holds  # 1/(4 eps^2) = 2500 >= x, so lhs dominates by counting
    with pytest.raises(ValueError):
        epsilon_cutoff_check(E, 1, x=1000, epsilon=0.0)


def test_cutoff_exact_and_batch_agree():
    E = seeded_series_over_Q(2000, 57)
    survey = SignSurvey(E, 1, x=2000)
    for eps in (0.03, 0.11, 0.37, 0.52, 0.9):
        # keep clear of the float comparison boundary, then demand equality
        assert min(abs(abs(b) - eps) for b in survey.coords.tolist()) > 1e-9
        exact = epsilon_cutoff_check(E, 1, x=2000, epsilon=eps)
        batch = survey.cutoff_report(2000, eps)
        assert (exact.lhs, exact.rhs, exact.holds) == (batch.lhs, batch.rhs, batch.holds)
    with pytest.raises(ValueError):
        survey.cutoff_report(2000, -0.5)
    with pytest.raises(ValueError):
        survey.cutoff_report(4000, 0.5)


@settings(max_examples=40)
@given(
    seed=st.integers(min_value=0, max_value=10),
    eps_thousandths=st.integers(min_value=1, max_value=1000),
    x=st.integers(min_value=2, max_value=1000),
)
def test_cutoff_inequality_always_holds(seed, eps_thousandths, x):
    E = seeded_series_over_Q(1000, seed)
    r = epsilon_cutoff_check(E, 1, x=x, epsilon=Fraction(eps_thousandths, 1000))
    assert r.holds and r.lhs >= r.rhs


# ----------------------------------------------------------------------
# text output
# ----------------------------------------------------------------------


def test_density_string():
    assert density_string(1, 3) == "0.333333333333"
    assert density_string(2, 3) == "0.666666666667"
    assert density_string(1, 2) == "0.500000000000"
    assert density_string(0, 0) == "0.000000000000"
    assert density_string(9592, 9592) == "1.000000000000"


def test_tally_csv():
    assert TALLY_CSV_HEADER == "x,total,pos,neg,zero,pos_density"
    E = series_over_Q(100, lambda P: Fraction(2, P.norm))
    row = tally_csv_row(tally_signs(E, 1, x=100))
    x, total, pos, neg, zero, dens = row.split(",")
    assert (x, total) == ("100", "25")
    assert int(pos) + int(neg) + int(zero) == 24
    assert dens == density_string(int(pos), 25)
