"""``hmi sturm``: root count and sign certificate for a polynomial."""

import argparse
from fractions import Fraction
from typing import get_args

from hmi.errors import CertificationFailure, DomainError
from hmi.schemas.poly import CoeffEnclosure, NamedPolyId
from hmi.services.named_polys import build_named_poly, certify_sign
from hmi.services.poly import RationalPoly, count_roots_detail, sign


def add_parser(subparsers) -> argparse.ArgumentParser:
    p = subparsers.add_parser("sturm", help="Sturm root count and sign certificate")
    p.add_argument(
        "poly",
        help=f"one of {', '.join(get_args(NamedPolyId))}, or descending coefficients "
        '"1 0 -2"',
    )
    p.add_argument("a", help="left endpoint (rational, e.g. 1/2)")
    p.add_argument("b", nargs="?", default=None, help="right endpoint")
    p.add_argument("--infinite", action="store_true", help="treat b as +infinity")
    p.set_defaults(run=run)
    return p


def parse_poly(text: str) -> CoeffEnclosure:
    if text in get_args(NamedPolyId):
        return build_named_poly(text)
    try:
        coeffs = [Fraction(c) for c in text.replace(",", " ").split()]
    except ValueError:
        raise DomainError(f"cannot parse polynomial {text!r}", {"poly": text}) from None
    poly = RationalPoly.from_descending(coeffs)
    if poly.is_zero():
        raise DomainError("the zero polynomial has no Sturm sequence", {"poly": text})
    return CoeffEnclosure(poly_id=text, poly=poly)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ValueError:
        raise DomainError(f"not a rational number: {text!r}", {"value": text}) from None


def run(args: argparse.Namespace) -> int:
    if args.infinite == (args.b is not None):
        args.parser.error("give b or --infinite")
    enclosure = parse_poly(args.poly)
    a = _rational(args.a)
    b = None if args.infinite else _rational(args.b)
    eps = Fraction(args.settings.sturm_eps)

    if b is None:
        count, a_used, _ = count_roots_detail(enclosure.poly, a, None, eps)
        label = f"({a}, inf)"
    else:
        count, a_used, b_used = count_roots_detail(enclosure.poly, a, b, eps)
        label = f"({a}, {b}]"
    print(f"poly={enclosure.poly_id} interval={label} roots={count}")
    if count:
        return 0

    probe = a_used + 1 if b is None else (a + b) / 2
    mid = sign(enclosure.poly(probe))
    try:
        cert = certify_sign(enclosure, a, b, mid)
    except CertificationFailure as exc:
        print(f"sign={'+' if mid > 0 else '-'} certificate failed: {exc.message}")
        return 1
    print(
        f"sign={'+' if cert.sign > 0 else '-'} margin={cert.margin:.6e} "
        f"perturbation={cert.perturbation_bound:.6e} status={cert.status} method={cert.method}"
    )
    return 0
