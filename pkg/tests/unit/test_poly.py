import random
from fractions import Fraction

import pytest

from hmi.errors import DomainError, EndpointRoot
from hmi.services.poly import (
    RationalPoly,
    cauchy_bound,
    count_roots_detail,
    count_roots_in,
    descartes_root_count,
    isolate_roots,
    sturm_sequence,
)

X = RationalPoly.x()


def test_arithmetic():
    assert (X + 1) * (X - 1) == X**2 - 1
    q, r = divmod(X**3 - 1, X - 1)
    assert q == X**2 + X + 1
    assert r.is_zero()
    assert (X**2).compose_linear(2, 1) == 4 * X**2 + 4 * X + 1
    assert RationalPoly([1, 2, 3]).reversed() == RationalPoly([3, 2, 1])
    assert (X**3 - 2 * X).derivative() == 3 * X**2 - 2


def test_from_descending_and_evaluate():
    p = RationalPoly.from_descending(["1", "0", "-2"])
    assert p == X**2 - 2
    assert p(Fraction(3, 2)) == Fraction(1, 4)
    assert p.evaluate_float(3.0) == pytest.approx(7.0)
    assert p.degree == 2 and p.leading == 1


def test_primitive_keeps_sign():
    p = RationalPoly([Fraction(1, 3), Fraction(1, 2)])
    assert p.content() == Fraction(1, 6)
    assert p.primitive() == RationalPoly([2, 3])
    assert (-p).primitive() == RationalPoly([-2, -3])


def test_sturm_chain_of_x2_minus_2():
    chain = sturm_sequence(X**2 - 2)
    assert chain == [RationalPoly([-2, 0, 1]), RationalPoly([0, 2]), RationalPoly([1])]


def test_sturm_of_zero_polynomial():
    with pytest.raises(DomainError):
        sturm_sequence(RationalPoly([]))


def test_count_roots():
    p = X**2 - 2
    assert count_roots_in(p, 0, 2) == 1
    assert count_roots_in(p, -2, 2) == 2
    assert count_roots_in(p, 2, None) == 0
    # repeated roots count once
    assert count_roots_in((X - 1) ** 2 * (X + 1), -2, 2) == 2


def test_count_is_additive_over_adjacent_intervals():
    p = (X + 1) * (X - 1) * (X - 2)
    # the shared endpoint 1 is a root: counted on the left piece only
    assert count_roots_in(p, -2, 1) == 2
    assert count_roots_in(p, 1, 3) == 1
    assert count_roots_in(p, -2, 1) + count_roots_in(p, 1, 3) == count_roots_in(p, -2, 3) == 3
    q = X**2 - 2
    assert count_roots_in(q, -2, 0) + count_roots_in(q, 0, 2) == count_roots_in(q, -2, 2)


def test_additivity_on_random_polynomials():
    rng = random.Random(7)
    for _ in range(20):
        roots = [Fraction(rng.randint(-20, 20), 10) for _ in range(rng.randint(1, 5))]
        p = RationalPoly([1])
        for r in roots:
            p = p * (X - r)
        # split at one of the roots so the shared endpoint is a root
        a, m, b = Fraction(-3), rng.choice(roots), Fraction(3)
        assert count_roots_in(p, a, m) + count_roots_in(p, m, b) == count_roots_in(p, a, b), p


def test_endpoint_roots_are_nudged():
    p = X**2 - 4
    count, a_used, b_used = count_roots_detail(p, 2, 3)
    assert count == 0 and a_used > 2
    count, _, b_used = count_roots_detail(p, 0, 2)
    assert count == 1 and b_used > 2


def test_endpoint_root_after_retries():
    e = Fraction(1, 10)
    p = X * (X - e) * (X - 2 * e) * (X - 3 * e)
    with pytest.raises(EndpointRoot) as exc:
        count_roots_detail(p, 0, 1, eps=e)
    assert exc.value.code == "endpoint_root"


def test_count_needs_ordered_interval():
    with pytest.raises(DomainError):
        count_roots_in(X - 1, 2, 1)


def test_isolate_roots():
    brackets = isolate_roots(X**2 - 2, 0, 2, Fraction(1, 10**12))
    assert len(brackets) == 1
    lo, hi = brackets[0]
    assert lo * lo < 2 <= hi * hi
    assert hi - lo <= Fraction(1, 10**12)


def test_cauchy_bound():
    assert cauchy_bound(X**2 - 2) == 3
    assert cauchy_bound(RationalPoly([5])) == 0


def test_quartic_root_count():
    p = RationalPoly.from_descending([1, 0, 4, 0, -1])
    assert count_roots_in(p, 0, 1) == 1
    assert descartes_root_count(p, 0, 1) == 1


def test_sturm_agrees_with_descartes_on_random_polynomials():
    rng = random.Random(20240611)
    # endpoints with denominator 10 cannot be roots of these polynomials
    a, b = Fraction(-31, 10), Fraction(29, 10)
    for _ in range(20):
        degree = rng.randint(1, 6)
        coeffs = [rng.randint(-5, 5) for _ in range(degree)] + [rng.choice([-3, -1, 1, 2, 5])]
        p = RationalPoly(coeffs)
        assert count_roots_in(p, a, b) == descartes_root_count(p, a, b), p
