"""Quadratic ideal characters twisted by a square class.

eps_tau is the quadratic character cut out by K(sqrt(tau))/K; at an odd
unramified prime P not dividing tau it equals the residue symbol of tau
in O_K/P, so it is +1 identically (off the bad set) when tau is a square.
An explicit finite table psi of +-1 values (trivial by default) multiplies
it, and the product extends to all integral ideals by complete
multiplicativity.

The extended character is zero exactly on a finite conservative bad set:
primes above 2, primes dividing the field discriminant, primes dividing
tau, and primes above any declared level support.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import EvenCharacteristic, FieldMismatch, ParseError, ValidationError
from .field_arith import (
    FieldElement,
    IdealFactorization,
    PrimeIdeal,
    QuadField,
    _prime_factors,
    as_element,
    factor_principal_ideal,
    quadratic_residue_symbol,
    split_rational_prime,
)


def epsilon_tau(tau, P: PrimeIdeal) -> int:
    """Value at P of the quadratic character attached to K(sqrt(tau))/K.

    Computed as the Euler-criterion residue symbol of tau mod P, so it is
    0 when P divides tau and undefined (raises) in characteristic 2.
    """
    return quadratic_residue_symbol(tau, P)


@dataclass
class IdealCharacter:
    """(psi * eps_tau) extended multiplicatively to integral ideals."""

    field: QuadField
    tau: FieldElement
    psi_table: dict[PrimeIdeal, int]
    bad_set: frozenset[PrimeIdeal]
    _cache: dict[PrimeIdeal, int] = dc_field(default_factory=dict, repr=False)

    @classmethod
    def from_tau(
        cls,
        K: QuadField,
        tau,
        psi_table: dict[PrimeIdeal, int] | None = None,
        level_support=(),
    ) -> "IdealCharacter":
        el = as_element(K, tau)
        psi = dict(psi_table or {})
        for P, v in psi.items():
            if P.field != K:
                raise FieldMismatch(f"psi table prime {P} is not a prime of {K}")
            if v not in (-1, 1):
                raise ValidationError(f"psi value at {P} must be +-1, got {v}")
        bad: set[PrimeIdeal] = set()
        for p in sorted({2, *level_support, *_prime_factors(K.disc)}):
            bad.update(split_rational_prime(K, p))
        bad.update(factor_principal_ideal(K, el).support())
        return cls(field=K, tau=el, psi_table=psi, bad_set=frozenset(bad))

    def value_at(self, P: PrimeIdeal) -> int:
        """chi(P) in {-1, 0, +1}; zero exactly on the bad set."""
        if P.field != self.field:
            raise FieldMismatch(f"{P} is not a prime of {self.field}")
        v = self._cache.get(P)
        if v is None:
            if P in self.bad_set:
                v = 0
            else:
                v = self.psi_table.get(P, 1) * epsilon_tau(self.tau, P)
            self._cache[P] = v
        return v


def induced_value(chi: IdealCharacter, m: IdealFactorization) -> int:
    """chi extended to the ideal m by complete multiplicativity."""
    if m.field != chi.field:
        raise FieldMismatch("ideal and character live in different fields")
    out = 1
    for P, e in m.factors:
        v = chi.value_at(P)
        if v == 0:
            return 0
        if e % 2:  # v is +-1, so v^e depends only on e mod 2
            out *= v
    return out


def chi_over_norm(chi: IdealCharacter, P: PrimeIdeal) -> Fraction:
    """chi(P)/N(P) as an exact rational, the shift term in the sign relation."""
    return Fraction(chi.value_at(P), P.norm)


# ----------------------------------------------------------------------
# psi tables as JSON documents
# ----------------------------------------------------------------------


def load_psi_table(K: QuadField, source) -> dict[PrimeIdeal, int]:
    """Read a psi table: a JSON list of {prime_norm, rational_prime, root_label, value}.

    source may be a path or an already-decoded list.  Entries must name
    primes that exist in K; values must be +-1.
    """
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        try:
            with open(source, "rb") as fh:
                doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise ParseError(f"{source}: line {e.lineno} col {e.colno}: {e.msg}") from e
        except OSError as e:
            raise ParseError(f"cannot read psi table {source}: {e}") from e
    else:
        doc = source
    if not isinstance(doc, list):
        raise ParseError("psi table must be a JSON list of entries")
    table: dict[PrimeIdeal, int] = {}
    for i, entry in enumerate(doc):
        try:
            norm = int(entry["prime_norm"])
            p = int(entry["rational_prime"])
            label = int(entry["root_label"])
            value = int(entry["value"])
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"psi entry {i}: missing or ill-typed field ({e})") from e
        if value not in (-1, 1):
            raise ValidationError(f"psi entry {i}: value must be +-1, got {value}")
        matches = [
            P
            for P in split_rational_prime(K, p)
            if P.norm == norm and P.root_label == label
        ]
        if not matches:
            raise ValidationError(
                f"psi entry {i}: no prime of norm {norm}, label {label} above {p} in {K}"
            )
        table[matches[0]] = value
    return table
