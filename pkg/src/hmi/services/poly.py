"""Dense polynomials over exact rationals and Sturm root counting."""

import logging
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from hmi.errors import DomainError, EndpointRoot

logger = logging.getLogger(__name__)

Rational = Union[Fraction, int, str]

ENDPOINT_RETRIES = 3


def _q(value: Rational) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


class RationalPoly:
    """Immutable polynomial with Fraction coefficients in ascending degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational]):
        cs = [_q(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def from_descending(cls, coeffs: Sequence[Rational]) -> "RationalPoly":
        """Build from highest-degree-first coefficients, e.g. "1 0 -2" for x^2-2."""
        return cls(reversed([_q(c) for c in coeffs]))

    @classmethod
    def constant(cls, c: Rational) -> "RationalPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls([0, 1])

    # ------------------------------------------------------------------
    # Structure
    # ------------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RationalPoly({[str(c) for c in self.coeffs]})"

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: Union["RationalPoly", Rational]) -> "RationalPoly":
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other: Union["RationalPoly", Rational]) -> "RationalPoly":
        return self + (-_lift(other))

    def __rsub__(self, other: Rational) -> "RationalPoly":
        return _lift(other) - self

    def __mul__(self, other: Union["RationalPoly", Rational]) -> "RationalPoly":
        other = _lift(other)
        if self.is_zero() or other.is_zero():
            return RationalPoly([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RationalPoly":
        result = RationalPoly([1])
        for _ in range(n):
            result = result * self
        return result

    def __call__(self, x: Rational) -> Fraction:
        return self.evaluate(x)

    def evaluate(self, x: Rational) -> Fraction:
        x = _q(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def derivative(self) -> "RationalPoly":
        return RationalPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def __divmod__(self, other: "RationalPoly") -> Tuple["RationalPoly", "RationalPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.leading
        for shift in range(len(quot) - 1, -1, -1):
            factor = rem[shift + other.degree] / lead
            quot[shift] = factor
            if factor:
                for j, c in enumerate(other.coeffs):
                    rem[shift + j] -= factor * c
        return RationalPoly(quot), RationalPoly(rem[: other.degree])

    def __mod__(self, other: "RationalPoly") -> "RationalPoly":
        return divmod(self, other)[1]

    def __floordiv__(self, other: "RationalPoly") -> "RationalPoly":
        return divmod(self, other)[0]

    def compose_linear(self, alpha: Rational, beta: Rational) -> "RationalPoly":
        """p(alpha*x + beta)."""
        inner = RationalPoly([beta, alpha])
        acc = RationalPoly([])
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def reversed(self) -> "RationalPoly":
        """x^deg p(1/x)."""
        return RationalPoly(reversed(self.coeffs))

    # ------------------------------------------------------------------
    # Normal forms
    # ------------------------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self/c integral and primitive."""
        if self.is_zero():
            return Fraction(0)
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        num = reduce(gcd, (abs(c.numerator * (den // c.denominator)) for c in self.coeffs), 0)
        return Fraction(num, den)

    def primitive(self) -> "RationalPoly":
        """Integer-coefficient multiple of self by a positive constant.

        Sign-preserving, so it is safe inside a Sturm chain.
        """
        if self.is_zero():
            return self
        c = self.content()
        return RationalPoly(a / c for a in self.coeffs)

    def monic(self) -> "RationalPoly":
        return RationalPoly(c / self.leading for c in self.coeffs)

    def square_free(self) -> "RationalPoly":
        """p / gcd(p, p'), up to a positive constant."""
        g = poly_gcd(self, self.derivative())
        if g.degree <= 0:
            return self.primitive()
        return (self // g).primitive()


def _lift(value: Union[RationalPoly, Rational]) -> RationalPoly:
    return value if isinstance(value, RationalPoly) else RationalPoly.constant(value)


def poly_gcd(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    """Monic gcd by the Euclidean algorithm with primitive-part reduction."""
    while not b.is_zero():
        a, b = b, (a % b).primitive()
    return a.monic() if not a.is_zero() else a


def sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


# ----------------------------------------------------------------------
# Sturm
# ----------------------------------------------------------------------


def sturm_sequence(p: RationalPoly) -> List[RationalPoly]:
    """p0 = squarefree(p), p1 = p0', p_{i+1} = -rem(p_{i-1}, p_i).

    Members are rescaled by positive constants, which leaves every sign
    variation count unchanged.
    """
    if p.is_zero():
        raise DomainError("Sturm sequence of the zero polynomial", {"poly": repr(p)})
    if p.degree > 0 and poly_gcd(p, p.derivative()).degree > 0:
        logger.debug("sturm: reducing %r to its square-free part", p)
        p = p.square_free()
    chain = [p]
    if p.degree == 0:
        return chain
    chain.append(p.derivative())
    while chain[-1].degree > 0:
        rem = -(chain[-2] % chain[-1])
        if rem.is_zero():
            break
        chain.append(rem.primitive())
    return chain


def _variations(signs: Iterable[int]) -> int:
    nonzero = [s for s in signs if s]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


def sign_variations(chain: Sequence[RationalPoly], x: Optional[Rational]) -> int:
    """Sign changes along the chain at x; x=None means +infinity."""
    if x is None:
        return _variations(sign(q.leading) for q in chain)
    x = _q(x)
    return _variations(sign(q(x)) for q in chain)


def _nudge(p: RationalPoly, x: Fraction, eps: Fraction, direction: int, label: str) -> Fraction:
    original = x
    for attempt in range(ENDPOINT_RETRIES + 1):
        if p(x) != 0:
            if x != original:
                logger.info("sturm: endpoint %s moved %s -> %s", label, original, x)
            return x
        x = original + direction * eps * (attempt + 1)
    raise EndpointRoot(
        f"endpoint {label}={original} is a root after {ENDPOINT_RETRIES} perturbations",
        {"endpoint": str(original), "eps": str(eps)},
    )


def count_roots_detail(
    p: RationalPoly,
    a: Rational,
    b: Optional[Rational],
    eps: Rational = Fraction(1, 10**9),
) -> Tuple[int, Fraction, Optional[Fraction]]:
    """Distinct roots in (a, b] plus the endpoints actually used.

    An endpoint that is itself a root is moved right by eps (retrying with
    2eps, 3eps, ...), so a root at a is excluded and a root at b is kept.
    """
    a = _q(a)
    bq = None if b is None else _q(b)
    if bq is not None and not a < bq:
        raise DomainError("count_roots_in requires a < b", {"a": str(a), "b": str(bq)})
    eps = _q(eps)
    chain = sturm_sequence(p)
    base = chain[0]
    a_used = _nudge(base, a, eps, +1, "a")
    b_used = None if bq is None else _nudge(base, bq, eps, +1, "b")
    count = sign_variations(chain, a_used) - sign_variations(chain, b_used)
    return count, a_used, b_used


def count_roots_in(
    p: RationalPoly, a: Rational, b: Optional[Rational], eps: Rational = Fraction(1, 10**9)
) -> int:
    """Exact number of distinct real roots of p in (a, b]."""
    return count_roots_detail(p, a, b, eps)[0]


def cauchy_bound(p: RationalPoly) -> Fraction:
    """Every real root r satisfies |r| < 1 + max |a_i / a_n|."""
    if p.degree < 1:
        return Fraction(0)
    lead = abs(p.leading)
    return 1 + max(abs(c) / lead for c in p.coeffs[:-1])


def isolate_roots(
    p: RationalPoly, a: Rational, b: Rational, width: Rational = Fraction(1, 10**12)
) -> List[Tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], each holding exactly one root, hi - lo <= width."""
    chain = sturm_sequence(p)
    width = _q(width)

    def count(lo: Fraction, hi: Fraction) -> int:
        return sign_variations(chain, lo) - sign_variations(chain, hi)

    out: List[Tuple[Fraction, Fraction]] = []
    stack = [(_q(a), _q(b))]
    while stack:
        lo, hi = stack.pop()
        n = count(lo, hi)
        if n == 0:
            continue
        if n == 1 and hi - lo <= width:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out)


# ----------------------------------------------------------------------
# Descartes bisection (independent count)
# ----------------------------------------------------------------------


def _coeff_variations(p: RationalPoly) -> int:
    return _variations(sign(c) for c in p.coeffs)


def _roots_in_unit(q: RationalPoly, depth: int = 0) -> int:
    """Distinct roots of a square-free q in the open interval (0, 1)."""
    if q.degree < 1:
        return 0
    if depth > 200:
        raise RuntimeError("Descartes bisection failed to separate roots")
    while q.coeffs and q.coeffs[0] == 0:  # root at 0 lies outside (0, 1)
        q = RationalPoly(q.coeffs[1:])
    if q.degree < 1:
        return 0
    v = _coeff_variations(q.reversed().compose_linear(1, 1))
    if v <= 1:
        return v
    half = Fraction(1, 2)
    left = q.compose_linear(half, 0)
    right = q.compose_linear(half, half)
    at_mid = 1 if q(half) == 0 else 0
    return _roots_in_unit(left, depth + 1) + _roots_in_unit(right, depth + 1) + at_mid


def descartes_root_count(p: RationalPoly, a: Rational, b: Rational) -> int:
    """Distinct roots in the open interval (a, b) by Descartes' rule and bisection."""
    a, b = _q(a), _q(b)
    if p.is_zero():
        raise DomainError("root count of the zero polynomial", {})
    q = p.square_free() if p.degree > 0 else p
    return _roots_in_unit(q.compose_linear(b - a, a))
