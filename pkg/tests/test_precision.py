from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpf

from rrh.errors import PrecisionError
from rrh.precision import APComplex, as_exact, parse_number, to_mpc


def test_make_from_rational_string():
    z = APComplex.make("1/3", 128)
    assert z.prec == 128
    with mp.workprec(200):
        assert abs(z.re - mpf(1) / 3) < mpf(2) ** -127
    assert z.im == 0


def test_make_from_fraction_and_complex():
    z = APComplex.make(Fraction(-7, 4), 96)
    assert z.re == mpf("-1.75")
    w = APComplex.make(1 + 2j, 96)
    assert (w.re, w.im) == (1, 2)


def test_min_precision_propagation():
    a = APComplex.make(1, 256)
    b = APComplex.make(2, 128)
    assert (a + b).prec == 128
    assert (a * b).prec == 128
    assert (a - b).prec == 128
    assert (a / b).prec == 128


def test_plain_numbers_do_not_promote():
    a = APComplex.make("0.1", 96)
    assert (a + 1).prec == 96
    assert (3 * a).prec == 96
    assert (1 / a).prec == 96


def test_precision_floor_enforced():
    with pytest.raises(PrecisionError):
        APComplex.make(1, 32)
    with pytest.raises(PrecisionError):
        APComplex.make(1, 63)


def test_conjugate_neg_abs():
    z = APComplex.make(3 + 4j, 64)
    assert z.conjugate().im == -4
    assert (-z).re == -3
    assert abs(z) == 5
    assert complex(z) == 3 + 4j


def test_rounding_happens_at_stated_precision():
    lo = APComplex.make("1/3", 64)
    hi = APComplex.make("1/3", 192)
    assert lo.re != hi.re  # different roundings of the same rational
    # the product of a 192-bit and 64-bit value is a 64-bit value
    assert (hi * APComplex.make(1, 64)).re == lo.re


def test_parse_number_forms():
    with mp.workprec(80):
        assert parse_number("-3/8") == mpf(-3) / 8
        assert parse_number("0.25") == mpf("0.25")
        assert parse_number("2i") == mpmath.mpc(0, 2)
        assert parse_number("1.5+0.5j") == mpmath.mpc("1.5", "0.5")
    with pytest.raises(ValueError):
        parse_number("zebra")


def test_to_mpc_rejects_garbage():
    with pytest.raises(TypeError):
        to_mpc(object(), 128)


def test_as_exact():
    assert as_exact(3) == Fraction(3)
    assert as_exact(Fraction(1, 3)) == Fraction(1, 3)
    assert as_exact(0.5) is None
    assert as_exact(APComplex.make(1, 64)) is None


def test_workprec_state_restored():
    before = mp.prec
    APComplex.make("1/7", 512)
    assert mp.prec == before
