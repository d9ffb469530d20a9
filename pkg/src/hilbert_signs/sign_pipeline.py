"""From ideal-indexed coefficient data to exact sign statistics.

For a primitive coefficient family c(P) (normalized so c(O_K) = 1 is
scaled out) and the quadratic ideal character chi = psi * eps_tau, the
reconstructed eigenvalue at a good prime is

    lambda(P) = c(P) - chi(P)/N(P),

and its sign is decided in exact rational arithmetic; floats appear only
in the Sato-Tate coordinate B(P) = C(P) / (2 N(P)^{(k0-1)/2}) used for
distribution statistics, never in sign decisions.

Counting conventions.  The denominator of every reported density is the
number of ALL prime ideals of norm <= x; the numerator sets (positive,
negative, zero) run over good primes only, i.e. primes off the
character's bad set.  The tally therefore also reports the bad count, and
pos + neg + zero + bad = total.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .characters import IdealCharacter
from .errors import HasseBoundViolated, MissingPrime, ValidationError
from .field_arith import (
    FieldElement,
    IdealFactorization,
    PrimeIdeal,
    QuadField,
    as_element,
    count_prime_ideals,
    enumerate_prime_ideals,
    factor_principal_ideal,
    squarefree_decompose,
)

# ======================================================================
# eigenvalue containers
# ======================================================================


class EigenvalueSeries:
    """Coefficients c(P) of one form, with weight and level bookkeeping.

    entries maps prime ideals to exact rationals.  Ingestion enforces the
    Hasse-type bound |c(P)| <= 2 N(P)^{-1/2} (checked exactly as
    c^2 N <= 4), even weights >= 2, and omega = 0.
    """

    def __init__(
        self,
        field: QuadField,
        weight,
        label: str,
        entries: dict[PrimeIdeal, Fraction],
        level_support=(),
        omega=Fraction(0),
    ):
        weight = tuple(int(k) for k in weight)
        if not weight or any(k < 2 or k % 2 for k in weight):
            raise ValidationError(f"weights must be even integers >= 2, got {weight}")
        if Fraction(omega) != 0:
            raise ValidationError(f"omega must be 0, got {omega}")
        self.field = field
        self.weight = weight
        self.label = str(label)
        self.level_support = frozenset(int(p) for p in level_support)
        self.omega = Fraction(0)
        self.entries = {}
        for P, c in entries.items():
            if P.field != field:
                raise ValidationError(f"entry at {P} does not belong to {field}")
            c = Fraction(c)
            if c * c * P.norm > 4:
                raise HasseBoundViolated(
                    f"{label}: |c({P})| = |{c}| exceeds 2/sqrt({P.norm})"
                )
            self.entries[P] = c

    @property
    def k0(self) -> int:
        return max(self.weight)

    def __repr__(self):
        return (
            f"EigenvalueSeries({self.label!r}, {self.field}, weight={self.weight}, "
            f"{len(self.entries)} primes)"
        )


# ======================================================================
# pointwise normalizations
# ======================================================================


def hecke_eigenvalue(c: Fraction, norm: int) -> Fraction:
    """Hecke eigenvalue from the raw coefficient: lambda_P = c(P) N(P)."""
    return Fraction(c) * norm


def renormalize_C(c: Fraction, norm: int, k0: int) -> Fraction:
    """C(P) = c(P) N(P)^{k0/2}; exact because k0 is even."""
    if k0 % 2:
        raise ValidationError(f"k0 must be even, got {k0}")
    return Fraction(c) * norm ** (k0 // 2)


def sato_tate_coordinate(C, norm: int, k0: int) -> float:
    """B(P) = C(P) / (2 N(P)^{(k0-1)/2}) in [-1, 1].

    For k0 = 2 this is the classical a_p / (2 sqrt(p)).  The containment
    check is exact when C is rational: C^2 <= 4 N^{k0-1}.
    """
    C = Fraction(C)
    if C * C > 4 * norm ** (k0 - 1):
        raise HasseBoundViolated(f"|C| = |{C}| exceeds 2 N^{{(k0-1)/2}} at N = {norm}")
    return float(C) / (2.0 * math.sqrt(float(norm)) ** (k0 - 1))


def lambda_sign(c: Fraction, chi_p: int, norm: int) -> int:
    """sign(c(P) - chi(P)/N(P)) decided in exact rational arithmetic."""
    lam = Fraction(c) - Fraction(chi_p, norm)
    return (lam > 0) - (lam < 0)


# ======================================================================
# surveys and tallies
# ======================================================================


@dataclass(frozen=True)
class SignTally:
    """Sign counts at cutoff x; densities use the all-primes denominator."""

    x: int
    tau: FieldElement
    a_ideal: IdealFactorization
    pos: int
    neg: int
    zero: int
    bad: int
    total: int

    def density(self, count: int) -> Fraction:
        return Fraction(count, self.total) if self.total else Fraction(0)

    @property
    def pos_density(self) -> Fraction:
        return self.density(self.pos)

    @property
    def neg_density(self) -> Fraction:
        return self.density(self.neg)

    @property
    def zero_density(self) -> Fraction:
        return self.density(self.zero)


@dataclass(frozen=True)
class EpsilonCutoffReport:
    """One instance of the tail inequality

    pi_{>0}(x) + pi(1/(4 eps^2)) >= #{good P : N(P) <= x, B(P) > eps}.
    """

    x: int
    epsilon: float
    lhs: int
    rhs: int
    holds: bool


class SignSurvey:
    """Per-prime sign data for one (series, tau, psi) triple up to x.

    Built once, then queried at any cutoff <= x.  Signs are decided with
    exact rationals at construction time; batch queries compare the float
    Sato-Tate coordinates (the one-shot epsilon_cutoff_check stays fully
    rational).
    """

    def __init__(self, E: EigenvalueSeries, tau, psi=None, x: int | None = None):
        if x is None:
            raise ValueError("survey needs an explicit norm cutoff x")
        self.series = E
        self.x = int(x)
        self.tau = as_element(E.field, tau)
        self.chi = IdealCharacter.from_tau(
            E.field, self.tau, psi_table=psi, level_support=E.level_support
        )
        self.a_ideal = squarefree_decompose(
            factor_principal_ideal(E.field, self.tau)
        ).a
        k0 = E.k0
        all_norms: list[int] = []
        good_norms: list[int] = []
        signs: list[int] = []
        coords: list[float] = []
        self._good_coeffs: list[Fraction] = []
        for P in enumerate_prime_ideals(E.field, self.x):
            all_norms.append(P.norm)
            v = self.chi.value_at(P)
            if v == 0:
                continue
            c = E.entries.get(P)
            if c is None:
                raise MissingPrime(f"{E.label}: no coefficient at good prime {P}")
            good_norms.append(P.norm)
            signs.append(lambda_sign(c, v, P.norm))
            C = renormalize_C(c, P.norm, k0)
            coords.append(sato_tate_coordinate(C, P.norm, k0))
            self._good_coeffs.append(c)
        self.all_norms = np.asarray(all_norms, dtype=np.int64)
        self.good_norms = np.asarray(good_norms, dtype=np.int64)
        self.signs = np.asarray(signs, dtype=np.int8)
        self.coords = np.asarray(coords, dtype=np.float64)

    def tally(self, x: int | None = None) -> SignTally:
        x = self.x if x is None else int(x)
        if x > self.x:
            raise ValueError(f"survey only extends to {self.x}, asked for {x}")
        total = int(np.searchsorted(self.all_norms, x, side="right"))
        ngood = int(np.searchsorted(self.good_norms, x, side="right"))
        s = self.signs[:ngood]
        pos = int(np.count_nonzero(s > 0))
        neg = int(np.count_nonzero(s < 0))
        zero = ngood - pos - neg
        return SignTally(
            x=x,
            tau=self.tau,
            a_ideal=self.a_ideal,
            pos=pos,
            neg=neg,
            zero=zero,
            bad=total - ngood,
            total=total,
        )

    def pi_ideals(self, bound: int) -> int:
        """#{prime ideals with norm <= bound}, using the local table if it reaches."""
        if bound <= self.x:
            return int(np.searchsorted(self.all_norms, bound, side="right"))
        return count_prime_ideals(self.series.field, bound)

    def cutoff_report(self, x: int, epsilon: float) -> EpsilonCutoffReport:
        if epsilon <= 0:
            raise ValueError(f"epsilon must be positive, got {epsilon}")
        x = int(x)
        if x > self.x:
            raise ValueError(f"survey only extends to {self.x}, asked for {x}")
        t = int(Fraction(1, 4) / (Fraction(epsilon) ** 2))
        ngood = int(np.searchsorted(self.good_norms, x, side="right"))
        pos = int(np.count_nonzero(self.signs[:ngood] > 0))
        rhs = int(np.count_nonzero(self.coords[:ngood] > epsilon))
        lhs = pos + self.pi_ideals(t)
        return EpsilonCutoffReport(
            x=x, epsilon=float(epsilon), lhs=lhs, rhs=rhs, holds=lhs >= rhs
        )


def tally_signs(E: EigenvalueSeries, tau, psi=None, x: int | None = None) -> SignTally:
    """Count positive/negative/zero lambda signs over primes of norm <= x."""
    return SignSurvey(E, tau, psi=psi, x=x).tally()


def epsilon_cutoff_check(
    E: EigenvalueSeries, tau, psi=None, x: int | None = None, epsilon: float = 0.5
) -> EpsilonCutoffReport:
    """Verify the tail inequality at one (x, epsilon), fully in rationals.

    B(P) > eps is evaluated as c(P) > 0 and c(P)^2 N(P) > 4 eps^2 with eps
    taken as an exact Fraction, so the report is free of float rounding.
    """
    if epsilon is None or not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    survey = SignSurvey(E, tau, psi=psi, x=x)
    eps = Fraction(epsilon)
    four_eps2 = 4 * eps * eps
    rhs = 0
    for norm, c in zip(survey.good_norms.tolist(), survey._good_coeffs):
        if c > 0 and c * c * norm > four_eps2:
            rhs += 1
    pos = int(np.count_nonzero(survey.signs > 0))
    t = int(Fraction(1, 4) / (eps * eps))
    lhs = pos + survey.pi_ideals(t)
    return EpsilonCutoffReport(
        x=survey.x, epsilon=float(epsilon), lhs=lhs, rhs=rhs, holds=lhs >= rhs
    )


# ======================================================================
# output formats
# ======================================================================

TALLY_CSV_HEADER = "x,total,pos,neg,zero,pos_density"


def density_string(num: int, den: int, digits: int = 12) -> str:
    """num/den as a fixed-point decimal string, rounded half away from zero."""
    if den == 0:
        return "0." + "0" * digits
    scale = 10**digits
    q, r = divmod(num * scale, den)
    if 2 * r >= den:
        q += 1
    whole, frac = divmod(q, scale)
    return f"{whole}.{frac:0{digits}d}"


def tally_csv_row(t: SignTally) -> str:
    return f"{t.x},{t.total},{t.pos},{t.neg},{t.zero},{density_string(t.pos, t.total)}"


def tally_to_obj(t: SignTally) -> dict:
    return {
        "x": t.x,
        "tau": repr(t.tau),
        "a_ideal": repr(t.a_ideal),
        "counts": {
            "pos": t.pos,
            "neg": t.neg,
            "zero": t.zero,
            "bad": t.bad,
            "total": t.total,
        },
        "pos_density": density_string(t.pos, t.total),
        "neg_density": density_string(t.neg, t.total),
        "zero_density": density_string(t.zero, t.total),
    }
