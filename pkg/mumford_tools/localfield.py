"""
Exact arithmetic in F_q and in Laurent series over F_q.

Field elements are stored as integers whose base-p digits are the coefficients of
the residue polynomial (lowest degree first).  Series are sparse: a sorted tuple of
(exponent, residue) pairs plus the precision N up to which the digits are known;
`precision=None` means the series is an exact Laurent polynomial.
"""

import itertools
import logging
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Tuple, Union

from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_gcdex, gf_irreducible_p, gf_mul, gf_rem, gf_strip

from settings import get_setting

from .framework import IndeterminateError, InvalidInputError

logger = logging.getLogger("Mumford.localfield")

# fields up to this size get precomputed operation tables
TABLE_LIMIT = 64

INF = math.inf


@dataclass(frozen=True)
class FqSpec:
    """The finite field F_p[x]/(modulus), q = p^t; modulus listed highest degree first."""
    p: int
    t: int
    modulus: Tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.t

    def __str__(self) -> str:
        return f"F_{self.q}"

    # -- integer encoding ------------------------------------------------------
    def _to_poly(self, value: int) -> List[int]:
        digits = []
        while value:
            digits.append(value % self.p)
            value //= self.p
        return gf_strip(list(reversed(digits)))

    def _from_poly(self, poly: Iterable[int]) -> int:
        value = 0
        for c in poly:
            value = value * self.p + int(c) % self.p
        return value

    def _digits(self, value: int) -> Tuple[int, ...]:
        out = []
        for _ in range(self.t):
            out.append(value % self.p)
            value //= self.p
        return tuple(out)

    def _undigits(self, digits: Iterable[int]) -> int:
        value = 0
        for c in reversed(list(digits)):
            value = value * self.p + c % self.p
        return value

    # -- raw operations on encoded values -------------------------------------
    def _add_raw(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        da, db = self._digits(a), self._digits(b)
        return self._undigits((x + y) % self.p for x, y in zip(da, db))

    def _neg_raw(self, a: int) -> int:
        return self._undigits((-x) % self.p for x in self._digits(a))

    def _mul_raw(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        product = gf_mul(self._to_poly(a), self._to_poly(b), self.p, ZZ)
        return self._from_poly(gf_rem(product, list(self.modulus), self.p, ZZ))

    def _inv_raw(self, a: int) -> int:
        if a == 0:
            raise InvalidInputError(f"Division by zero in {self}")
        s, _, h = gf_gcdex(self._to_poly(a), list(self.modulus), self.p, ZZ)
        # h is the monic gcd, always 1 for a nonzero residue
        return self._from_poly(gf_rem(s, list(self.modulus), self.p, ZZ))

    @cached_property
    def _tables(self) -> Optional[Tuple[list, list, list, list]]:
        if self.q > TABLE_LIMIT:
            return None
        q = self.q
        add = [[self._add_raw(a, b) for b in range(q)] for a in range(q)]
        mul = [[self._mul_raw(a, b) for b in range(q)] for a in range(q)]
        neg = [self._neg_raw(a) for a in range(q)]
        inv = [0] + [self._inv_raw(a) for a in range(1, q)]
        logger.debug(f"Built operation tables for {self}")
        return add, mul, neg, inv

    def add(self, a: int, b: int) -> int:
        tables = self._tables
        return tables[0][a][b] if tables else self._add_raw(a, b)

    def mul(self, a: int, b: int) -> int:
        tables = self._tables
        return tables[1][a][b] if tables else self._mul_raw(a, b)

    def neg(self, a: int) -> int:
        tables = self._tables
        return tables[2][a] if tables else self._neg_raw(a)

    def inv(self, a: int) -> int:
        if a == 0:
            raise InvalidInputError(f"Division by zero in {self}")
        tables = self._tables
        return tables[3][a] if tables else self._inv_raw(a)

    # -- element constructors --------------------------------------------------
    def element(self, value: Union[int, Iterable[int]]) -> "FqElement":
        """Element from its integer code or from a coefficient vector (lowest degree first)."""
        if isinstance(value, int):
            if not 0 <= value < self.q:
                raise InvalidInputError(f"Element code {value} outside {self}")
            return FqElement(self, value)
        return FqElement(self, self._undigits(value))

    def from_int(self, n: int) -> "FqElement":
        """Image of the integer n under Z -> F_p -> F_q."""
        return FqElement(self, n % self.p)

    def zero(self) -> "FqElement":
        return FqElement(self, 0)

    def one(self) -> "FqElement":
        return FqElement(self, 1)

    def generator(self) -> "FqElement":
        """The class of x, printed as `g`."""
        if self.t == 1:
            return FqElement(self, self._from_poly(gf_rem([1, 0], list(self.modulus), self.p, ZZ)))
        return FqElement(self, self.p)

    def elements(self) -> List["FqElement"]:
        return [FqElement(self, v) for v in range(self.q)]

    def nonzero_elements(self) -> List["FqElement"]:
        return [FqElement(self, v) for v in range(1, self.q)]

    @cached_property
    def _primitive(self) -> "FqElement":
        for x in self.nonzero_elements():
            if x.order() == self.q - 1:
                return x
        raise InvalidInputError(f"No primitive element found in {self}")

    def primitive_element(self) -> "FqElement":
        """Least primitive element by integer code."""
        return self._primitive

    def root_of_unity(self, n: int) -> "FqElement":
        """A primitive n-th root of unity, n | q-1."""
        if n < 1 or (self.q - 1) % n:
            raise InvalidInputError(f"{self} has no primitive {n}-th root of unity")
        return self._primitive ** ((self.q - 1) // n)

    def subfield_basis(self, s: int) -> List["FqElement"]:
        """F_p-basis 1, h, ..., h^(s-1) of the subfield with p^s elements (s | t)."""
        if s < 1 or self.t % s:
            raise InvalidInputError(f"{self} has no subfield of degree {s}")
        h = self._primitive ** ((self.q - 1) // (self.p ** s - 1))
        return [h ** i for i in range(s)]

    def parse(self, text: str) -> "FqElement":
        """Parse a polynomial in `g`, e.g. "g^2+2g+1"; integers are read mod p."""
        text = text.replace(" ", "").strip("()")
        if not text:
            raise InvalidInputError("Empty field element")
        g = self.generator()
        result = self.zero()
        for term in text.split("+"):
            match = re.fullmatch(r"(-?\d*)\*?(g(?:\^(\d+))?)?", term)
            if not match or (not match.group(1) and not match.group(2)):
                raise InvalidInputError(f"Cannot parse field element term: {term!r}")
            c = match.group(1)
            coeff = int(c) if c not in ("", "-") else (-1 if c == "-" else 1)
            power = 0
            if match.group(2):
                power = int(match.group(3)) if match.group(3) else 1
            result = result + self.from_int(coeff) * g ** power
        return result


def make_field(p: int, t: int = 1) -> FqSpec:
    """
    Build F_{p^t} with the lexicographically least monic irreducible modulus.

    Args:
        p: Characteristic (prime)
        t: Degree over F_p

    Returns:
        FqSpec with a deterministic modulus

    Raises:
        InvalidInputError: If p is not prime or t < 1
    """
    if not isprime(p):
        raise InvalidInputError(f"Characteristic must be prime, got {p}")
    if t < 1:
        raise InvalidInputError(f"Field degree must be >= 1, got {t}")

    for tail in itertools.product(range(p), repeat=t):
        candidate = [1] + list(tail)
        if gf_irreducible_p(candidate, p, ZZ):
            spec = FqSpec(p, t, tuple(candidate))
            logger.debug(f"make_field({p}, {t}) -> modulus {candidate}")
            return spec
    raise InvalidInputError(f"No irreducible polynomial of degree {t} over F_{p}")


@dataclass(frozen=True)
class FqElement:
    """Element of F_q; `value` encodes the coefficient vector in base p."""
    spec: FqSpec
    value: int

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self.spec._digits(self.value)

    def _check(self, other: "FqElement") -> None:
        if self.spec != other.spec:
            raise InvalidInputError(f"Field mismatch: {self.spec} vs {other.spec}")

    def _coerce(self, other) -> "FqElement":
        if isinstance(other, int):
            return self.spec.from_int(other)
        self._check(other)
        return other

    def __add__(self, other) -> "FqElement":
        other = self._coerce(other)
        return FqElement(self.spec, self.spec.add(self.value, other.value))

    __radd__ = __add__

    def __neg__(self) -> "FqElement":
        return FqElement(self.spec, self.spec.neg(self.value))

    def __sub__(self, other) -> "FqElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "FqElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "FqElement":
        other = self._coerce(other)
        return FqElement(self.spec, self.spec.mul(self.value, other.value))

    __rmul__ = __mul__

    def inverse(self) -> "FqElement":
        return FqElement(self.spec, self.spec.inv(self.value))

    def __truediv__(self, other) -> "FqElement":
        return self * self._coerce(other).inverse()

    def __pow__(self, k: int) -> "FqElement":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.spec.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self) -> bool:
        return self.value != 0

    def order(self) -> int:
        """Multiplicative order."""
        if self.value == 0:
            raise InvalidInputError("Zero has no multiplicative order")
        n = self.spec.q - 1
        for r in factorint(n):
            while n % r == 0 and (self ** (n // r)).value == 1:
                n //= r
        return n

    def is_square(self) -> bool:
        if self.value == 0 or self.spec.p == 2:
            return True
        return (self ** ((self.spec.q - 1) // 2)).value == 1

    def __str__(self) -> str:
        terms = []
        for power, c in reversed(list(enumerate(self.coeffs))):
            if c == 0:
                continue
            if power == 0:
                terms.append(str(c))
            elif power == 1:
                terms.append("g" if c == 1 else f"{c}g")
            else:
                terms.append(f"g^{power}" if c == 1 else f"{c}g^{power}")
        return "+".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"FqElement({self}, {self.spec})"


def default_precision() -> int:
    return int(get_setting("field", "precision", 64))


def _add_precision(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True)
class LocalElement:
    """
    Laurent series sum c_k pi^k over F_q, known modulo pi^precision.

    Exact zero is `terms=()` with `precision=None`; `terms=()` with an integer
    precision N means "zero modulo pi^N", whose valuation is unknown.
    """
    spec: FqSpec
    terms: Tuple[Tuple[int, int], ...] = ()
    precision: Optional[int] = None

    # -- constructors ----------------------------------------------------------
    @classmethod
    def from_dict(cls, spec: FqSpec, coeffs: Dict[int, int], precision: Optional[int] = None) -> "LocalElement":
        items = sorted(
            (k, v) for k, v in coeffs.items()
            if v and (precision is None or k < precision)
        )
        return cls(spec, tuple(items), precision)

    @classmethod
    def zero(cls, spec: FqSpec) -> "LocalElement":
        return cls(spec)

    @classmethod
    def one(cls, spec: FqSpec) -> "LocalElement":
        return cls(spec, ((0, 1),))

    @classmethod
    def constant(cls, spec: FqSpec, c: Union[int, FqElement]) -> "LocalElement":
        value = c.value if isinstance(c, FqElement) else spec.from_int(c).value
        return cls(spec, ((0, value),) if value else ())

    @classmethod
    def monomial(cls, spec: FqSpec, c: Union[int, FqElement], k: int) -> "LocalElement":
        return cls.constant(spec, c).shift(k)

    @classmethod
    def pi(cls, spec: FqSpec, k: int = 1) -> "LocalElement":
        return cls(spec, ((k, 1),))

    # -- inspection ------------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.precision is None

    @property
    def is_exact_zero(self) -> bool:
        return not self.terms and self.precision is None

    def valuation(self) -> Union[int, float]:
        """Exponent of the first nonzero digit; inf for exact zero."""
        if self.terms:
            return self.terms[0][0]
        if self.precision is None:
            return INF
        raise IndeterminateError(f"Valuation undecidable: element is zero modulo pi^{self.precision}")

    def _floor_valuation(self) -> Union[int, float]:
        if self.terms:
            return self.terms[0][0]
        return INF if self.precision is None else self.precision

    def is_zero(self) -> bool:
        if self.terms:
            return False
        if self.precision is None:
            return True
        raise IndeterminateError(f"Zero test undecidable modulo pi^{self.precision}")

    def digit(self, k: int) -> int:
        if self.precision is not None and k >= self.precision:
            raise IndeterminateError(f"Digit {k} beyond precision {self.precision}")
        for exp, value in self.terms:
            if exp == k:
                return value
            if exp > k:
                break
        return 0

    def coefficient(self, k: int) -> FqElement:
        return FqElement(self.spec, self.digit(k))

    def leading(self) -> FqElement:
        self.valuation()
        if not self.terms:
            raise InvalidInputError("Exact zero has no leading coefficient")
        return FqElement(self.spec, self.terms[0][1])

    # -- arithmetic ------------------------------------------------------------
    def _coerce(self, other) -> "LocalElement":
        if isinstance(other, LocalElement):
            if other.spec != self.spec:
                raise InvalidInputError(f"Field mismatch: {self.spec} vs {other.spec}")
            return other
        if isinstance(other, (int, FqElement)):
            return LocalElement.constant(self.spec, other)
        return NotImplemented

    def __add__(self, other) -> "LocalElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        precision = _add_precision(self.precision, other.precision)
        coeffs: Dict[int, int] = dict(self.terms)
        add = self.spec.add
        for k, v in other.terms:
            coeffs[k] = add(coeffs[k], v) if k in coeffs else v
        return LocalElement.from_dict(self.spec, coeffs, precision)

    __radd__ = __add__

    def __neg__(self) -> "LocalElement":
        neg = self.spec.neg
        return LocalElement(self.spec, tuple((k, neg(v)) for k, v in self.terms), self.precision)

    def __sub__(self, other) -> "LocalElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LocalElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LocalElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        px = INF if self.precision is None else self.precision
        py = INF if other.precision is None else other.precision
        bound = min(px + other._floor_valuation(), py + self._floor_valuation())
        precision = None if bound == INF else int(bound)

        coeffs: Dict[int, int] = {}
        add, mul = self.spec.add, self.spec.mul
        for i, a in self.terms:
            for j, b in other.terms:
                k = i + j
                if precision is not None and k >= precision:
                    break
                c = mul(a, b)
                coeffs[k] = add(coeffs[k], c) if k in coeffs else c
        return LocalElement.from_dict(self.spec, coeffs, precision)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LocalElement":
        """Multiply by pi^k."""
        precision = None if self.precision is None else self.precision + k
        return LocalElement(self.spec, tuple((e + k, v) for e, v in self.terms), precision)

    def inverse(self, precision: Optional[int] = None) -> "LocalElement":
        """
        Multiplicative inverse.

        Monomials invert exactly.  Otherwise the unit part is inverted as a power
        series to relative precision (known digits of self, or `precision` /
        the configured default when self is exact).

        Raises:
            InvalidInputError: On exact zero
            IndeterminateError: If the valuation is not determined
        """
        if self.is_exact_zero:
            raise InvalidInputError("Inversion of exact zero")
        v = self.valuation()
        spec = self.spec
        if len(self.terms) == 1 and self.precision is None:
            return LocalElement(spec, ((-v, spec.inv(self.terms[0][1])),))

        if self.precision is not None:
            relative = self.precision - v
        else:
            relative = precision if precision is not None else default_precision()
        d = {k - v: c for k, c in self.terms}
        e0 = spec.inv(d[0])
        neg_e0 = spec.neg(e0)
        e = [e0]
        add, mul = spec.add, spec.mul
        for k in range(1, relative):
            acc = 0
            for i in range(1, k + 1):
                di = d.get(i)
                if di and e[k - i]:
                    acc = add(acc, mul(di, e[k - i]))
            e.append(mul(neg_e0, acc))
        coeffs = {k - v: c for k, c in enumerate(e) if c}
        return LocalElement.from_dict(spec, coeffs, relative - v)

    def __truediv__(self, other) -> "LocalElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, k: int) -> "LocalElement":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = LocalElement.one(self.spec), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def reduce_mod(self, n: int) -> "LocalElement":
        """Exact representative of self modulo pi^n."""
        if self.precision is not None and self.precision < n:
            raise IndeterminateError(f"Cannot reduce modulo pi^{n}: only known modulo pi^{self.precision}")
        return LocalElement(self.spec, tuple((k, v) for k, v in self.terms if k < n))

    def truncate(self, n: int) -> "LocalElement":
        """Forget digits from pi^n on (result known modulo pi^n)."""
        precision = n if self.precision is None else min(n, self.precision)
        return LocalElement(self.spec, tuple((k, v) for k, v in self.terms if k < precision), precision)

    def agrees_with(self, other: "LocalElement") -> bool:
        """True if both are equal on every digit known to both."""
        bound = _add_precision(self.precision, other.precision)
        diff = self - other
        if bound is None:
            return diff.is_exact_zero
        return not diff.terms

    # -- text ------------------------------------------------------------------
    def __str__(self) -> str:
        parts = []
        for k, value in self.terms:
            c = str(FqElement(self.spec, value))
            if "+" in c:
                c = f"({c})"
            if k == 0:
                parts.append(c)
            else:
                power = "π" if k == 1 else f"π^{k}"
                parts.append(power if c == "1" else f"{c}·{power}")
        if self.precision is not None:
            parts.append(f"O(π^{self.precision})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"LocalElement({self})"


_SERIES_TERM = re.compile(
    r"(?:(?P<coef>\([^()]*\)|-?[0-9g^]+)\s*[·*]?\s*)?(?P<pi>π|pi)(?:\^\(?(?P<exp>-?\d+)\)?)?"
)


def _split_top_level(text: str) -> List[str]:
    # a top-level "-" opens a new term and stays with it, except after "^" or "("
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            parts.append("".join(current))
            current = []
            continue
        if ch == "-" and depth == 0 and current and current[-1] not in "^(":
            parts.append("".join(current))
            current = []
        current.append(ch)
    parts.append("".join(current))
    return [p.strip() for p in parts if p.strip()]


def parse_local(text: str, spec: FqSpec) -> LocalElement:
    """
    Parse the textual series format, e.g. "1 + 2·π^3 + (g+1)·π^-2 + O(π^10)".

    Raises:
        InvalidInputError: On malformed input
    """
    text = text.replace(" ", "").replace("pi", "π").replace("−", "-")
    if text in ("", "0"):
        return LocalElement.zero(spec)
    coeffs: Dict[int, int] = {}
    precision: Optional[int] = None
    for term in _split_top_level(text):
        sign = -1 if term.startswith("-") else 1
        term = term[1:] if sign < 0 else term
        big_o = re.fullmatch(r"O\(π(?:\^\(?(-?\d+)\)?)?\)", term)
        if big_o:
            precision = int(big_o.group(1)) if big_o.group(1) else 1
            continue
        match = _SERIES_TERM.fullmatch(term)
        if match:
            coef = spec.parse(match.group("coef")) if match.group("coef") else spec.one()
            exp = int(match.group("exp")) if match.group("exp") else 1
        elif re.fullmatch(r"\(?[-0-9g^+*]+\)?", term):
            coef, exp = spec.parse(term), 0
        else:
            raise InvalidInputError(f"Cannot parse series term: {term!r}")
        if sign < 0:
            coef = -coef
        previous = FqElement(spec, coeffs.get(exp, 0))
        coeffs[exp] = (previous + coef).value
    return LocalElement.from_dict(spec, coeffs, precision)


@dataclass(frozen=True)
class ProjPoint:
    """Point of P^1(K): a finite value z (pair (z,1)) or infinity (pair (1,0))."""
    spec: FqSpec
    value: Optional[LocalElement] = None

    @classmethod
    def infinity(cls, spec: FqSpec) -> "ProjPoint":
        return cls(spec, None)

    @classmethod
    def finite(cls, x: Union[LocalElement, int, FqElement], spec: Optional[FqSpec] = None) -> "ProjPoint":
        if isinstance(x, LocalElement):
            return cls(x.spec, x)
        return cls(spec, LocalElement.constant(spec, x))

    @classmethod
    def from_pair(cls, a: LocalElement, b: LocalElement) -> "ProjPoint":
        if b.is_exact_zero:
            if a.is_exact_zero:
                raise InvalidInputError("(0:0) is not a point of P^1")
            return cls.infinity(a.spec)
        if b.terms == ((0, 1),) and b.precision is None:
            return cls(a.spec, a)
        return cls(a.spec, a / b)

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    def pair(self) -> Tuple[LocalElement, LocalElement]:
        if self.value is None:
            return LocalElement.one(self.spec), LocalElement.zero(self.spec)
        return self.value, LocalElement.one(self.spec)

    def same_point(self, other: "ProjPoint") -> bool:
        """Equality of points; raises IndeterminateError when digits run out."""
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return (self.value - other.value).is_zero()

    def __str__(self) -> str:
        return "∞" if self.value is None else str(self.value)


def parse_point(text: str, spec: FqSpec) -> ProjPoint:
    """Parse "inf"/"∞" or a series."""
    if text.strip().lower() in ("inf", "infinity", "∞", "oo"):
        return ProjPoint.infinity(spec)
    return ProjPoint.finite(parse_local(text, spec))
