"""
Sparse Laurent polynomials with exact integer coefficients.

A LaurentPoly is an element of Z[t1^±1, ..., tmu^±1], stored as a map from
exponent tuples to nonzero Python integers. Values are immutable; every
operation returns a new polynomial. The zero polynomial keeps its variable
count so that matrix code never has to guess an arity.

Monomials are ordered lexicographically with tmu most significant. Text
rendering lists terms in ascending order, e.g. ``1 - t1 - t2 + t1*t2``.

The multivariate gcd and exact quotient clear monomial denominators and then
run sympy's dense recursive routines over ZZ (primitive PRS gcd, exact
division).
"""

import math
import re
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import symbols
from sympy.polys.densearith import dmp_exquo
from sympy.polys.densebasic import dmp_from_dict, dmp_to_dict
from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dmp_rr_prs_gcd
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyerrors import ExactQuotientFailed

from .errors import DimensionError, ParseError

Monomial = Tuple[int, ...]
Scalar = Union[int, "LaurentPoly"]


def _order_key(monomial: Monomial) -> Monomial:
    return tuple(reversed(monomial))


class LaurentPoly:
    """Element of the Laurent polynomial ring in ``mu`` variables."""

    __slots__ = ("_mu", "_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Sequence[int], int]] = None, mu: int = 0):
        """
        Build a polynomial from a monomial → coefficient map.

        Args:
            terms: Map from exponent sequences (length ``mu``) to integers
            mu: Number of variables

        Raises:
            DimensionError: If an exponent sequence has the wrong length
        """
        if mu < 0:
            raise DimensionError(f"Variable count must be nonnegative, got {mu}")
        clean: Dict[Monomial, int] = {}
        for monomial, coeff in (terms or {}).items():
            key = tuple(int(e) for e in monomial)
            if len(key) != mu:
                raise DimensionError(
                    f"Monomial {key} has {len(key)} exponents, expected {mu}"
                )
            value = clean.get(key, 0) + int(coeff)
            if value:
                clean[key] = value
            else:
                clean.pop(key, None)
        self._mu = mu
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, int], mu: int) -> "LaurentPoly":
        # Trusted constructor: keys already validated, coefficients nonzero.
        poly = object.__new__(cls)
        poly._mu = mu
        poly._terms = terms
        poly._hash = None
        return poly

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, mu: int) -> "LaurentPoly":
        return cls._raw({}, mu)

    @classmethod
    def one(cls, mu: int) -> "LaurentPoly":
        return cls._raw({(0,) * mu: 1}, mu)

    @classmethod
    def constant(cls, value: int, mu: int) -> "LaurentPoly":
        value = int(value)
        return cls._raw({(0,) * mu: value} if value else {}, mu)

    @classmethod
    def variable(cls, index: int, mu: int) -> "LaurentPoly":
        """The variable ``t_index`` (1-based)."""
        if not 1 <= index <= mu:
            raise DimensionError(f"Variable t{index} does not exist when mu = {mu}")
        exps = [0] * mu
        exps[index - 1] = 1
        return cls._raw({tuple(exps): 1}, mu)

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        mu = len(exponents)
        coeff = int(coeff)
        return cls._raw({tuple(int(e) for e in exponents): coeff} if coeff else {}, mu)

    # ------------------------------------------------------------------
    # inspection

    @property
    def mu(self) -> int:
        return self._mu

    @property
    def terms(self) -> List[Tuple[Monomial, int]]:
        """Terms in canonical ascending order."""
        return sorted(self._terms.items(), key=lambda item: _order_key(item[0]))

    def as_dict(self) -> Dict[Monomial, int]:
        return dict(self._terms)

    def coefficient(self, monomial: Sequence[int]) -> int:
        return self._terms.get(tuple(monomial), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        """True iff the polynomial is ±monomial."""
        if len(self._terms) != 1:
            return False
        (coeff,) = self._terms.values()
        return coeff in (1, -1)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def augmentation(self) -> int:
        """Value under t_i ↦ 1 for every i."""
        return sum(self._terms.values())

    def min_exponents(self) -> Monomial:
        if not self._terms:
            return (0,) * self._mu
        return tuple(min(m[i] for m in self._terms) for i in range(self._mu))

    def leading_coefficient(self) -> int:
        if not self._terms:
            return 0
        return self.terms[-1][1]

    # ------------------------------------------------------------------
    # arithmetic

    def _coerce(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other._mu != self._mu:
                raise DimensionError(
                    f"Variable-count mismatch: {self._mu} vs {other._mu}"
                )
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self._mu)
        raise TypeError(f"Cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other: Scalar) -> "LaurentPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        result = dict(self._terms)
        for monomial, coeff in other._terms.items():
            value = result.get(monomial, 0) + coeff
            if value:
                result[monomial] = value
            else:
                del result[monomial]
        return LaurentPoly._raw(result, self._mu)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({m: -c for m, c in self._terms.items()}, self._mu)

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            if not other:
                return LaurentPoly.zero(self._mu)
            return LaurentPoly._raw({m: c * other for m, c in self._terms.items()}, self._mu)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        result: Dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(m1, m2))
                value = result.get(key, 0) + c1 * c2
                if value:
                    result[key] = value
                else:
                    result.pop(key, None)
        return LaurentPoly._raw(result, self._mu)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentPoly":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = LaurentPoly.one(self._mu)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "LaurentPoly":
        """Multiplicative inverse of a unit."""
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit of the Laurent ring")
        ((monomial, coeff),) = self._terms.items()
        return LaurentPoly._raw({tuple(-e for e in monomial): coeff}, self._mu)

    def shift(self, exponents: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial t^exponents."""
        return LaurentPoly._raw(
            {tuple(a + b for a, b in zip(m, exponents)): c for m, c in self._terms.items()},
            self._mu,
        )

    def normalizing_unit(self) -> "LaurentPoly":
        """
        Unit u such that u*self is unit-normalized.

        Normalized means every variable has minimum exponent 0 and the
        highest term in canonical order has a positive coefficient.
        """
        if not self._terms:
            return LaurentPoly.one(self._mu)
        shift = tuple(-e for e in self.min_exponents())
        sign = 1 if self.leading_coefficient() > 0 else -1
        return LaurentPoly.monomial(shift, sign)

    def unit_normalize(self) -> "LaurentPoly":
        if not self._terms:
            return self
        return self * self.normalizing_unit()

    def exact_divide(self, other: "LaurentPoly") -> Optional["LaurentPoly"]:
        """
        Quotient self / other in the Laurent ring, or None if it does not exist.

        Raises:
            ZeroDivisionError: If other is zero
        """
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("Division by the zero polynomial")
        if self.is_zero():
            return self
        if other.is_unit():
            return self * other.inverse()
        if self._mu == 0:
            a, b = self.augmentation(), other.augmentation()
            return LaurentPoly.constant(a // b, 0) if a % b == 0 else None
        u = self._mu - 1
        low_p, low_q = self.min_exponents(), other.min_exponents()
        try:
            dense = dmp_exquo(_to_dense(self, low_p), _to_dense(other, low_q), u, ZZ)
        except ExactQuotientFailed:
            return None
        quotient = _from_dense(dense, self._mu)
        return quotient.shift(tuple(a - b for a, b in zip(low_p, low_q)))

    def substitute(self, ring_map):
        """Image under a ring map (see crowell.ring_maps)."""
        return ring_map.substitute(self)

    # ------------------------------------------------------------------
    # protocol

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._mu == other._mu and self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({(0,) * self._mu: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._mu, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __reduce__(self):
        return (LaurentPoly, (self._terms, self._mu))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly('{format_poly(self)}', mu={self._mu})"


# ----------------------------------------------------------------------
# dense conversion for sympy


def _to_dense(poly: LaurentPoly, low: Monomial):
    shifted = {
        tuple(a - b for a, b in zip(m, low)): ZZ(c) for m, c in poly._terms.items()
    }
    return dmp_from_dict(shifted, poly.mu - 1, ZZ)


def _from_dense(dense, mu: int) -> LaurentPoly:
    terms = dmp_to_dict(dense, mu - 1, ZZ)
    return LaurentPoly({tuple(m): int(c) for m, c in terms.items()}, mu)


# ----------------------------------------------------------------------
# ring operations as functions


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def is_unit(p: LaurentPoly) -> bool:
    return p.is_unit()


def unit_normalize(p: LaurentPoly) -> LaurentPoly:
    return p.unit_normalize()


def substitute(p: LaurentPoly, ring_map):
    return ring_map.substitute(p)


def gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """
    Unit-normalized gcd of two Laurent polynomials.

    Monomial denominators are cleared first; the gcd is then taken in
    Z[t1, ..., tmu] with sympy's recursive primitive PRS algorithm.

    Args:
        p: First polynomial
        q: Second polynomial, same variable count

    Returns:
        gcd(p, q) normalized; gcd(p, 0) = unit_normalize(p)
    """
    q = p._coerce(q)
    if q.is_zero():
        return p.unit_normalize()
    if p.is_zero():
        return q.unit_normalize()
    if p.mu == 0:
        return LaurentPoly.constant(math.gcd(p.augmentation(), q.augmentation()), 0)
    u = p.mu - 1
    h, _, _ = dmp_rr_prs_gcd(
        _to_dense(p, p.min_exponents()), _to_dense(q, q.min_exponents()), u, ZZ
    )
    return _from_dense(h, p.mu).unit_normalize()


def determinant(matrix: Sequence[Sequence[LaurentPoly]], mu: int) -> LaurentPoly:
    """
    Determinant of a square matrix over the Laurent ring.

    Each row is multiplied by a monomial so that all its exponents are
    nonnegative; the determinant is then taken over ZZ[t1, ..., tmu] by
    sympy's fraction-free elimination and the monomial is divided back out.
    """
    size = len(matrix)
    if size == 0:
        return LaurentPoly.one(mu)
    if mu == 0:
        rows = [[ZZ(entry.augmentation()) for entry in row] for row in matrix]
        return LaurentPoly.constant(int(DomainMatrix(rows, (size, size), ZZ).det()), 0)
    domain = ZZ.poly_ring(*symbols(f"t1:{mu + 1}"))
    total_shift = [0] * mu
    rows = []
    for row in matrix:
        lows = [e.min_exponents() for e in row if not e.is_zero()]
        low = tuple(min(column) for column in zip(*lows)) if lows else (0,) * mu
        total_shift = [a + b for a, b in zip(total_shift, low)]
        rows.append([
            domain.ring.from_dict({
                tuple(a - b for a, b in zip(m, low)): ZZ(c) for m, c in entry._terms.items()
            })
            for entry in row
        ])
    det = DomainMatrix(rows, (size, size), domain).det()
    return LaurentPoly({tuple(m): int(c) for m, c in dict(det).items()}, mu).shift(total_shift)


# ----------------------------------------------------------------------
# text format


def _format_monomial(monomial: Monomial) -> str:
    parts = []
    for index, exponent in enumerate(monomial, start=1):
        if exponent == 1:
            parts.append(f"t{index}")
        elif exponent:
            parts.append(f"t{index}^{exponent}")
    return "*".join(parts)


def format_poly(poly: LaurentPoly) -> str:
    """Render a polynomial in canonical ascending order."""
    if poly.is_zero():
        return "0"
    chunks = []
    for position, (monomial, coeff) in enumerate(poly.terms):
        mono = _format_monomial(monomial)
        size = abs(coeff)
        if not mono:
            body = str(size)
        elif size == 1:
            body = mono
        else:
            body = f"{size}*{mono}"
        if position == 0:
            chunks.append(f"-{body}" if coeff < 0 else body)
        else:
            chunks.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(chunks)


def format_combination(combo: Mapping[str, LaurentPoly], order: Sequence[str]) -> str:
    """Render a generator combination such as ``(1 - t2)*a5 + t1*a3 - a1``."""
    chunks = []
    for gen in order:
        coeff = combo.get(gen)
        if coeff is None or coeff.is_zero():
            continue
        negative = False
        if coeff.is_monomial():
            ((monomial, value),) = coeff.terms
            negative = value < 0
            magnitude = -coeff if negative else coeff
            text = "" if magnitude == 1 else f"{format_poly(magnitude)}*"
        else:
            text = f"({format_poly(coeff)})*"
        body = f"{text}{gen}"
        if not chunks:
            chunks.append(f"-{body}" if negative else body)
        else:
            chunks.append(f" - {body}" if negative else f" + {body}")
    return "".join(chunks) if chunks else "0"


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[-+*^()]))")
_VARIABLE = re.compile(r"t(\d*)")

Combination = Dict[Optional[str], LaurentPoly]


class _Parser:
    """Recursive-descent parser for polynomials and generator combinations."""

    def __init__(self, text: str, mu: int, generators: Optional[Sequence[str]]):
        self.text = text
        self.mu = mu
        self.generators = set(generators) if generators is not None else None
        self.tokens = self._tokenize(text)
        self.position = 0

    def _tokenize(self, text: str) -> List[Tuple[str, str]]:
        tokens = []
        index = 0
        stripped = text.rstrip()
        while index < len(stripped):
            match = _TOKEN.match(stripped, index)
            if not match or match.end() == index:
                raise ParseError(f"Unexpected character at {index} in {text!r}")
            kind = match.lastgroup
            tokens.append((kind, match.group(kind)))
            index = match.end()
        return tokens

    def _peek(self) -> Optional[str]:
        if self.position < len(self.tokens):
            return self.tokens[self.position][1]
        return None

    def _next(self) -> Tuple[str, str]:
        if self.position >= len(self.tokens):
            raise ParseError(f"Unexpected end of input in {self.text!r}")
        token = self.tokens[self.position]
        self.position += 1
        return token

    def _expect(self, symbol: str) -> None:
        kind, value = self._next()
        if value != symbol:
            raise ParseError(f"Expected {symbol!r}, found {value!r} in {self.text!r}")

    def parse(self) -> Combination:
        if not self.tokens:
            raise ParseError("Empty polynomial text")
        result = self._expr()
        if self.position != len(self.tokens):
            raise ParseError(f"Trailing input {self._peek()!r} in {self.text!r}")
        return result

    def _expr(self) -> Combination:
        sign = 1
        if self._peek() in ("+", "-"):
            sign = -1 if self._next()[1] == "-" else 1
        total = _scale(self._term(), sign)
        while self._peek() in ("+", "-"):
            sign = -1 if self._next()[1] == "-" else 1
            total = _combine(total, _scale(self._term(), sign))
        return total

    def _term(self) -> Combination:
        result = self._factor()
        while self._peek() == "*":
            self._next()
            result = self._product(result, self._factor())
        return result

    def _factor(self) -> Combination:
        kind, value = self._next()
        if value == "-":
            return _scale(self._factor(), -1)
        if kind == "int":
            return {None: LaurentPoly.constant(int(value), self.mu)}
        if value == "(":
            inner = self._expr()
            self._expect(")")
            if self._peek() == "^":
                self._next()
                exponent = self._exponent()
                if set(inner) - {None}:
                    raise ParseError(f"Cannot raise a generator combination to a power in {self.text!r}")
                base = inner.get(None, LaurentPoly.zero(self.mu))
                try:
                    return {None: base ** exponent}
                except ZeroDivisionError as e:
                    raise ParseError(f"{e} in {self.text!r}") from e
            return inner
        if kind == "name":
            match = _VARIABLE.fullmatch(value)
            if match:
                index = int(match.group(1)) if match.group(1) else (1 if self.mu == 1 else 0)
                if not 1 <= index <= self.mu:
                    raise ParseError(f"Unknown variable {value!r} for mu = {self.mu}")
                exponent = 1
                if self._peek() == "^":
                    self._next()
                    exponent = self._exponent()
                exps = [0] * self.mu
                exps[index - 1] = exponent
                return {None: LaurentPoly.monomial(exps)}
            if self.generators is not None and value in self.generators:
                return {value: LaurentPoly.one(self.mu)}
            raise ParseError(f"Unknown symbol {value!r} in {self.text!r}")
        raise ParseError(f"Unexpected token {value!r} in {self.text!r}")

    def _exponent(self) -> int:
        wrapped = self._peek() == "("
        if wrapped:
            self._next()
        sign = 1
        if self._peek() in ("+", "-"):
            sign = -1 if self._next()[1] == "-" else 1
        kind, value = self._next()
        if kind != "int":
            raise ParseError(f"Exponent must be an integer, found {value!r}")
        if wrapped:
            self._expect(")")
        return sign * int(value)

    def _product(self, left: Combination, right: Combination) -> Combination:
        if set(left) <= {None}:
            scalar, other = left.get(None), right
        elif set(right) <= {None}:
            scalar, other = right.get(None), left
        else:
            raise ParseError(f"Product of two generators in {self.text!r}")
        if scalar is None:
            return {}
        return {k: v * scalar for k, v in other.items() if not (v * scalar).is_zero()}


def _scale(combo: Combination, sign: int) -> Combination:
    return {k: v * sign for k, v in combo.items()}


def _combine(left: Combination, right: Combination) -> Combination:
    result = dict(left)
    for key, value in right.items():
        total = result[key] + value if key in result else value
        if total.is_zero():
            result.pop(key, None)
        else:
            result[key] = total
    return result


def parse_poly(text: str, mu: int) -> LaurentPoly:
    """
    Parse polynomial text such as ``1 - t1 - t2 + t1*t2`` or ``t1^-1*t2``.

    Raises:
        ParseError: On malformed text or unknown variables
    """
    combo = _Parser(str(text), mu, None).parse()
    return combo.get(None, LaurentPoly.zero(mu))


def parse_combination(text: str, mu: int, generators: Sequence[str]) -> Dict[str, LaurentPoly]:
    """
    Parse a Laurent-linear combination of generator symbols.

    Args:
        text: Combination text, e.g. ``(1 - t2)*a5 + t1*a3 - a1``
        mu: Number of variables
        generators: Allowed generator symbols

    Returns:
        Map generator → nonzero coefficient

    Raises:
        ParseError: On malformed text or a term without a generator
    """
    if str(text).strip() == "0":
        return {}
    combo = _Parser(str(text), mu, generators).parse()
    if None in combo:
        raise ParseError(f"Term without a generator in {text!r}")
    return {k: v for k, v in combo.items() if k is not None}
