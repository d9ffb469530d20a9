"""Exact ideal arithmetic in Q and in real quadratic fields Q(sqrt(d)).

Prime splitting, principal-ideal factorization, enumeration of prime
ideals by norm, and quadratic residue symbols in the residue fields via
the Euler criterion.  Everything is integer or Fraction arithmetic; no
floating point enters this module, so downstream sign decisions built on
it stay exact.

Conventions.  d = 1 encodes Q itself (degree 1).  For quadratic d the
ring of integers is Z[w] with

    w = (1 + sqrt(d)) / 2   and   w^2 = w + (d-1)/4     if d = 1 mod 4,
    w = sqrt(d)             and   w^2 = d               otherwise.

A degree-one prime above p is identified by the root of the minimal
polynomial of w mod p that generates its reduction map; the two primes
above a split p are ordered by that root as an integer in [0, p), the
smaller root getting label 0.  Inert primes carry root 0 (unused).  Over
Q every prime is the unique degree-one prime above itself and is labeled
as the first "split" prime so the (norm, p, label) sort key stays total.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import (
    EvenCharacteristic,
    FieldMismatch,
    NotIntegral,
    NotSquarefree,
    NotTotallyPositive,
    UnsupportedField,
)

# d values for which every ideal class is trivial in the narrow sense
# (class number one and a fundamental unit of norm -1), so square roots
# of principal ideals and coefficient indexing are unambiguous.  1 is Q.
NARROW_CLASS_NUMBER_ONE = (1, 2, 5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97)

# ======================================================================
# fields and elements
# ======================================================================


@dataclass(frozen=True)
class QuadField:
    """Q (d = 1) or the real quadratic field Q(sqrt(d)), d squarefree."""

    d: int
    disc: int
    degree: int

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def omega_square(self) -> tuple[int, int]:
        """(s, c) with w^2 = s*w + c for the integral generator w."""
        if self.d % 4 == 1:
            return 1, (self.d - 1) // 4
        return 0, self.d

    def __repr__(self):
        return "Q" if self.is_rational else f"Q(sqrt({self.d}))"


def _squarefree(n: int) -> bool:
    if n % 4 == 0:
        return False
    p = 3
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 2
    return True


def make_field(d: int) -> QuadField:
    """Construct Q (d = 1) or Q(sqrt(d)) for squarefree allowlisted d."""
    if d < 1 or not _squarefree(d):
        raise NotSquarefree(f"d must be squarefree and positive, got {d}")
    if d not in NARROW_CLASS_NUMBER_ONE:
        raise UnsupportedField(
            f"d={d} is outside the supported narrow-class-number-one list "
            f"{NARROW_CLASS_NUMBER_ONE}"
        )
    if d == 1:
        return QuadField(d=1, disc=1, degree=1)
    disc = d if d % 4 == 1 else 4 * d
    return QuadField(d=d, disc=disc, degree=2)


@dataclass(frozen=True)
class FieldElement:
    """a + b*sqrt(d) with rational a, b.  Over Q, b is folded into a."""

    field: QuadField
    a: Fraction
    b: Fraction

    def norm(self) -> Fraction:
        if self.field.is_rational:
            return self.a
        return self.a * self.a - self.field.d * self.b * self.b

    def omega_coords(self) -> tuple[Fraction, Fraction]:
        """(x, y) with self = x + y*w in the integral basis {1, w}."""
        if self.field.is_rational:
            return self.a, Fraction(0)
        if self.field.d % 4 == 1:
            return self.a - self.b, 2 * self.b
        return self.a, self.b

    def is_integral(self) -> bool:
        x, y = self.omega_coords()
        return x.denominator == 1 and y.denominator == 1

    def is_totally_positive(self) -> bool:
        # a + b*sqrt(d) > 0 under both embeddings  <=>  a > 0 and a^2 > d*b^2.
        if self.b == 0:
            return self.a > 0
        return self.a > 0 and self.a * self.a > self.field.d * self.b * self.b

    def __repr__(self):
        if self.field.is_rational or self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt({self.field.d})"


def element(K: QuadField, a, b=0) -> FieldElement:
    """Build a + b*sqrt(d) in K; over Q the sqrt(1) part folds into a."""
    a, b = Fraction(a), Fraction(b)
    if K.is_rational:
        return FieldElement(K, a + b, Fraction(0))
    return FieldElement(K, a, b)


def as_element(K: QuadField, tau) -> FieldElement:
    """Coerce an int, Fraction, (a, b) pair, or FieldElement into K."""
    if isinstance(tau, FieldElement):
        if tau.field != K:
            raise FieldMismatch(f"element of {tau.field} used in {K}")
        return tau
    if isinstance(tau, tuple):
        return element(K, *tau)
    return element(K, tau)


# ======================================================================
# prime ideals
# ======================================================================


class Splitting(Enum):
    SPLIT_FIRST = "split_first"
    SPLIT_SECOND = "split_second"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class PrimeIdeal:
    """A maximal ideal of O_K, identified by (p, residue degree, root).

    root is the distinguished root in [0, p) of the minimal polynomial of
    w mod p for degree-one primes (reduction sends w to root); it is 0 and
    unused for inert primes.
    """

    field: QuadField
    rational_prime: int
    residue_degree: int
    norm: int
    splitting: Splitting
    root: int

    @property
    def root_label(self) -> int:
        return 1 if self.splitting is Splitting.SPLIT_SECOND else 0

    @property
    def sort_key(self) -> tuple[int, int, int]:
        return (self.norm, self.rational_prime, self.root_label)

    def __repr__(self):
        if self.field.is_rational:
            return f"({self.rational_prime})"
        tag = {
            Splitting.SPLIT_FIRST: "a",
            Splitting.SPLIT_SECOND: "b",
            Splitting.INERT: "i",
            Splitting.RAMIFIED: "r",
        }[self.splitting]
        return f"P{self.rational_prime}{tag}"


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all 64-bit inputs."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    r, s = n - 1, 0
    while r % 2 == 0:
        r //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, r, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _sqrt_mod(a: int, p: int) -> int:
    """Tonelli-Shanks.  Requires odd prime p and a an actual square mod p."""
    a %= p
    if a == 0:
        return 0
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # p = 1 mod 4: full Tonelli-Shanks with the smallest nonresidue as base
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t * t % p, 1
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _omega_roots_mod(K: QuadField, p: int) -> list[int]:
    """Roots in [0, p) of the minimal polynomial of w mod p (may be empty)."""
    s, c = K.omega_square()  # w^2 = s*w + c
    if p < 30:
        return [x for x in range(p) if (x * x - s * x - c) % p == 0]
    # odd p >= 30: both shapes reduce to a square root of d mod p
    dm = K.d % p
    if pow(dm, (p - 1) // 2, p) == p - 1:
        return []
    sq = _sqrt_mod(dm, p)
    if s == 0:
        roots = {sq % p, (p - sq) % p}
    else:
        inv2 = (p + 1) // 2
        roots = {(1 + sq) * inv2 % p, (1 - sq) * inv2 % p}
    return sorted(roots)


def split_rational_prime(K: QuadField, p: int) -> list[PrimeIdeal]:
    """Prime ideals of O_K above p, sorted by (norm, p, root_label)."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if K.is_rational:
        return [PrimeIdeal(K, p, 1, p, Splitting.SPLIT_FIRST, 0)]
    if K.disc % p == 0:
        roots = _omega_roots_mod(K, p)
        # ramified: the minimal polynomial has a double root mod p
        return [PrimeIdeal(K, p, 1, p, Splitting.RAMIFIED, roots[0])]
    roots = _omega_roots_mod(K, p)
    if not roots:
        return [PrimeIdeal(K, p, 2, p * p, Splitting.INERT, 0)]
    return [
        PrimeIdeal(K, p, 1, p, Splitting.SPLIT_FIRST, roots[0]),
        PrimeIdeal(K, p, 1, p, Splitting.SPLIT_SECOND, roots[1]),
    ]


def primes_upto(n: int) -> np.ndarray:
    """Rational primes <= n, ascending."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


@lru_cache(maxsize=None)
def _split_residue_set(disc: int) -> frozenset[int]:
    """Residues r mod |disc| with Kronecker symbol (disc/r) = +1.

    Splitting of an unramified p depends only on p mod disc; this set is
    the +1 fiber of the quadratic character attached to disc.
    """
    return frozenset(
        r
        for r in range(1, abs(disc))
        if math.gcd(r, disc) == 1 and kronecker_symbol(disc, r) == 1
    )


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n), the usual extension of Jacobi to all n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -sign
    if a < 0:
        # (-1/n) is determined by the odd part of n mod 4
        a = -a
        m = n
        while m % 2 == 0:
            m //= 2
        if m % 4 == 3:
            sign = -sign
    # strip factors of 2 from n; (a/2) depends on a mod 8
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            sign = -sign
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a  # quadratic reciprocity for odd positive arguments
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def enumerate_prime_ideals(K: QuadField, X: int) -> list[PrimeIdeal]:
    """All prime ideals of norm <= X, sorted by (norm, p, root_label)."""
    out: list[PrimeIdeal] = []
    if K.is_rational:
        for p in primes_upto(X):
            out.append(PrimeIdeal(K, int(p), 1, int(p), Splitting.SPLIT_FIRST, 0))
        return out
    split_res = _split_residue_set(K.disc)
    for q in primes_upto(X):
        p = int(q)
        if K.disc % p == 0:
            out.append(PrimeIdeal(K, p, 1, p, Splitting.RAMIFIED, _omega_roots_mod(K, p)[0]))
        elif p % K.disc in split_res:
            r1, r2 = _omega_roots_mod(K, p)
            out.append(PrimeIdeal(K, p, 1, p, Splitting.SPLIT_FIRST, r1))
            out.append(PrimeIdeal(K, p, 1, p, Splitting.SPLIT_SECOND, r2))
        elif p * p <= X:
            out.append(PrimeIdeal(K, p, 2, p * p, Splitting.INERT, 0))
    out.sort(key=lambda P: P.sort_key)
    return out


_SEGMENT = 1 << 24


def _prime_residue_counts(n: int, modulus: int) -> np.ndarray:
    """counts[r] = #{prime p <= n : p = r mod modulus}, segmented sieve."""
    counts = np.zeros(modulus, dtype=np.int64)
    if n < 2:
        return counts
    base = primes_upto(math.isqrt(n))
    for lo in range(2, n + 1, _SEGMENT):
        hi = min(lo + _SEGMENT - 1, n)
        mask = np.ones(hi - lo + 1, dtype=bool)
        for q in base:
            p = int(q)
            if p * p > hi:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            mask[start - lo :: p] = False
        ps = np.nonzero(mask)[0] + lo
        counts += np.bincount(ps % modulus, minlength=modulus)
    return counts


def count_prime_ideals(K: QuadField, X: int) -> int:
    """#{prime ideals of O_K with norm <= X}, without materializing them."""
    if X < 2:
        return 0
    if K.is_rational:
        return int(_prime_residue_counts(X, 1)[0])
    disc = K.disc
    counts = _prime_residue_counts(X, disc)
    split_res = _split_residue_set(disc)
    n_ram = sum(1 for p in _prime_factors(disc) if p <= X)
    n_split = int(sum(counts[r] for r in split_res))
    # inert primes contribute norm p^2, so only p <= sqrt(X) qualify
    root = math.isqrt(X)
    counts_small = _prime_residue_counts(root, disc)
    n_small = int(counts_small.sum())
    n_small_split = int(sum(counts_small[r] for r in split_res))
    n_small_ram = sum(1 for p in _prime_factors(disc) if p <= root)
    n_inert = n_small - n_small_split - n_small_ram
    return 2 * n_split + n_inert + n_ram


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ======================================================================
# quadratic residue symbols
# ======================================================================


def _fp2_pow(u: tuple[int, int], e: int, p: int, sq: tuple[int, int]) -> tuple[int, int]:
    """u^e in F_p[w]/(w^2 - s*w - c), elements as (x, y) = x + y*w."""
    s, c = sq
    rx, ry = 1, 0
    bx, by = u
    while e:
        if e & 1:
            # (rx + ry w)(bx + by w), reduced via w^2 = s w + c
            t = ry * by % p
            rx, ry = (rx * bx + c * t) % p, (rx * by + ry * bx + s * t) % p
        t = by * by % p
        bx, by = (bx * bx + c * t) % p, (2 * bx * by + s * t) % p
        e >>= 1
    return rx, ry


def quadratic_residue_symbol(a, P: PrimeIdeal) -> int:
    """Euler-criterion symbol of a in the residue field O_K/P: -1, 0, or +1.

    +1 iff a reduces to a nonzero square, 0 iff P divides a.  Only odd
    residue characteristic is meaningful; characteristic 2 raises.
    """
    p = P.rational_prime
    if p == 2:
        raise EvenCharacteristic("no quadratic residue symbol in characteristic 2")
    el = as_element(P.field, a)
    x, y = el.omega_coords()
    if x.denominator != 1 or y.denominator != 1:
        raise NotIntegral(f"{el} is not integral, cannot reduce mod {P}")
    x, y = int(x) % p, int(y) % p
    if P.residue_degree == 1:
        r = (x + y * P.root) % p
        t = pow(r, (p - 1) // 2, p)
        return -1 if t == p - 1 else t
    if x == 0 and y == 0:
        return 0
    rx, ry = _fp2_pow((x, y), (p * p - 1) // 2, p, P.field.omega_square())
    if (rx, ry) == (1, 0):
        return 1
    if (rx, ry) == (p - 1, 0):
        return -1
    raise ArithmeticError(f"Euler criterion did not land in {{-1,0,1}} at {P}")


# ======================================================================
# ideal factorizations
# ======================================================================


@dataclass(frozen=True)
class IdealFactorization:
    """An integral ideal as a sorted tuple of (PrimeIdeal, exponent > 0).

    The empty tuple is the unit ideal O_K.  Instances are canonical, so
    equality and hashing are structural.
    """

    field: QuadField
    factors: tuple[tuple[PrimeIdeal, int], ...]

    @classmethod
    def unit(cls, K: QuadField) -> "IdealFactorization":
        return cls(K, ())

    @classmethod
    def from_pairs(cls, K: QuadField, pairs) -> "IdealFactorization":
        merged: dict[PrimeIdeal, int] = {}
        for P, e in pairs:
            if P.field != K:
                raise FieldMismatch(f"prime of {P.field} in ideal of {K}")
            if e:
                merged[P] = merged.get(P, 0) + e
        if any(e < 0 for e in merged.values()):
            raise ValueError("negative exponent: only integral ideals are supported")
        items = tuple(sorted(((P, e) for P, e in merged.items() if e), key=lambda t: t[0].sort_key))
        return cls(K, items)

    @classmethod
    def from_prime(cls, P: PrimeIdeal, e: int = 1) -> "IdealFactorization":
        return cls.from_pairs(P.field, [(P, e)])

    @property
    def norm(self) -> int:
        n = 1
        for P, e in self.factors:
            n *= P.norm**e
        return n

    @property
    def is_unit(self) -> bool:
        return not self.factors

    def exponent_of(self, P: PrimeIdeal) -> int:
        for Q, e in self.factors:
            if Q == P:
                return e
        return 0

    def support(self) -> tuple[PrimeIdeal, ...]:
        return tuple(P for P, _ in self.factors)

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def __mul__(self, other: "IdealFactorization") -> "IdealFactorization":
        if self.field != other.field:
            raise FieldMismatch("cannot multiply ideals of different fields")
        return IdealFactorization.from_pairs(self.field, self.factors + other.factors)

    def __repr__(self):
        if self.is_unit:
            return "(1)"
        return "*".join(f"{P}^{e}" if e > 1 else f"{P}" for P, e in self.factors)


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """f = a^2 * r with r squarefree; both parts share f's field."""

    a: IdealFactorization
    r: IdealFactorization


def _factor_int(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in _prime_factors(n):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out[p] = e
    return out


def factor_principal_ideal(K: QuadField, tau) -> IdealFactorization:
    """Factor the principal ideal tau*O_K into prime ideals.

    tau must be a totally positive algebraic integer.  The result is
    verified against |N(tau)| before being returned.
    """
    el = as_element(K, tau)
    if not el.is_integral():
        raise NotIntegral(f"{el} is not an algebraic integer of {K}")
    if not el.is_totally_positive():
        raise NotTotallyPositive(f"{el} is not totally positive")
    n = int(abs(el.norm()))
    pairs: list[tuple[PrimeIdeal, int]] = []
    if K.is_rational:
        for p, e in _factor_int(n).items():
            pairs.append((split_rational_prime(K, p)[0], e))
    else:
        x, y = (int(c) for c in el.omega_coords())
        for p, e_total in _factor_int(n).items():
            above = split_rational_prime(K, p)
            if above[0].splitting is Splitting.RAMIFIED:
                # N(P) = p and P is alone above p, so v_P = v_p(norm)
                pairs.append((above[0], e_total))
            elif above[0].splitting is Splitting.INERT:
                if e_total % 2:
                    raise ArithmeticError(f"odd valuation {e_total} at inert {p}")
                pairs.append((above[0], e_total // 2))
            else:
                P1, P2 = above
                vg = 0  # valuation of the rational content at p
                x1, y1 = x, y
                while x1 % p == 0 and y1 % p == 0:
                    x1, y1, vg = x1 // p, y1 // p, vg + 1
                rest = e_total - 2 * vg
                e1, e2 = vg, vg
                if rest:
                    # primitive part is divisible by exactly one of P1, P2
                    if (x1 + y1 * P1.root) % p == 0:
                        e1 += rest
                    elif (x1 + y1 * P2.root) % p == 0:
                        e2 += rest
                    else:
                        raise ArithmeticError(f"split prime {p} divides neither root branch")
                if e1:
                    pairs.append((P1, e1))
                if e2:
                    pairs.append((P2, e2))
    result = IdealFactorization.from_pairs(K, pairs)
    if result.norm != n:
        raise ArithmeticError(f"factorization norm {result.norm} != |N(tau)| = {n}")
    return result


def squarefree_decompose(f: IdealFactorization) -> SquarefreeDecomposition:
    """Split f = a^2 * r with squarefree r."""
    a = IdealFactorization.from_pairs(f.field, ((P, e // 2) for P, e in f.factors))
    r = IdealFactorization.from_pairs(f.field, ((P, e % 2) for P, e in f.factors))
    assert (a * a * r) == f and r.is_squarefree
    return SquarefreeDecomposition(a=a, r=r)
