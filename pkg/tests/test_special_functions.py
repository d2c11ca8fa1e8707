import math

import pytest

from polyspread.errors import DomainError
from polyspread.special_functions import digamma, log_gamma, log_gamma_ratio

# reference values computed with mpmath at 40 digits and frozen here
LGAMMA_REF = [
    (1e-6, 13.81550998074943166920783),
    (1e-3, 6.907178885383853682512345),
    (0.07, 2.622753760603215492585091),
    (0.5, 0.5723649429247000870717137),
    (1.0, 0.0),
    (1.4616321449683623, -0.1214862905358496080955146),
    (1.5, -0.1207822376352452223455184),
    (2.0, 0.0),
    (3.7, 1.428072326665387921872381),
    (11.9, 17.2584774505955211471716),
    (12.0, 17.50230784587388583928765),
    (127.25, 487.9195692365366252107284),
    (1e4, 82099.71749644237727264896),
    (3.3e6, 46231122.40146318380214925),
    (1e9, 19723265827.50371677097672),
]

DIGAMMA_REF = [
    (1e-6, -1000000.577214019968668068),
    (1e-3, -1000.575571931810300471473),
    (0.07, -14.75332670558183934548261),
    (0.5, -1.963510026021423479440976),
    (1.0, -0.5772156649015328606065121),
    (1.4616321449683623, 0.0),  # the positive root of psi
    (1.5, 0.03648997397857652055902367),
    (2.0, 0.4227843350984671393934879),
    (3.7, 1.167153539361511385873864),
    (11.9, 2.43393353688253745476113),
    (12.0, 2.442661679975812016738365),
    (127.25, 4.842219235982276812658387),
    (1e4, 9.210290371142849403571966),
    (3.3e6, 15.00943287492154948811525),
    (1e9, 20.72326583644641115607859),
]

RATIO_REF = [
    (3.0, 2.0, 0.6931471805599453094172321),
    (1000001.0, 1000000.0, 13.81551055796427410410795),
    (1e9, 999999999.5, 10.36163291809820557795596),
    (127.25, 3.5, 486.7185956341895509859124),
    (0.75, 0.25, -1.084741573266782085889177),
    (12.0, 11.5, 1.210307369306644519043049),
    (200000.5, 100000.0, 1189927.739070702722339989),
]


@pytest.mark.parametrize("x,ref", LGAMMA_REF)
def test_log_gamma_grid(x, ref):
    got = log_gamma(x)
    assert got == pytest.approx(ref, rel=1e-13, abs=1e-14)


def test_log_gamma_exact_at_roots():
    # the series branch evaluates the roots exactly, no cancellation residue
    assert log_gamma(1.0) == 0.0
    assert log_gamma(2.0) == 0.0


def test_log_gamma_small_integers():
    assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)
    assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)


@pytest.mark.parametrize("x,ref", DIGAMMA_REF)
def test_digamma_grid(x, ref):
    got = digamma(x)
    # absolute contract; at |psi| ~ 1e6 double spacing dominates, use relative
    assert got == pytest.approx(ref, rel=5e-14, abs=1e-13)


def test_digamma_half():
    ref = -EULER - 2.0 * math.log(2.0)
    assert digamma(0.5) == pytest.approx(ref, abs=1e-13)


EULER = 0.5772156649015328606065121


@pytest.mark.parametrize("a,b,ref", RATIO_REF)
def test_log_gamma_ratio_grid(a, b, ref):
    assert log_gamma_ratio(a, b) == pytest.approx(ref, rel=1e-12)


def test_log_gamma_ratio_identity():
    for x in (1e-5, 0.3, 1.0, 7.7, 1e8):
        assert log_gamma_ratio(x, x) == 0.0


def test_log_gamma_ratio_antisymmetric():
    ab = [(4.2, 1.1), (100.0, 99.25), (2e6, 2e6 - 1.0)]
    for a, b in ab:
        assert log_gamma_ratio(a, b) == pytest.approx(-log_gamma_ratio(b, a),
                                                      rel=1e-14)


def test_recurrence_property():
    # lnG(x+1) - lnG(x) = ln x
    x = 0.1
    while x < 1e8:
        diff = log_gamma_ratio(x + 1.0, x)
        assert diff == pytest.approx(math.log(x), rel=1e-12, abs=1e-12)
        x *= 9.7


def test_digamma_reflection():
    # psi(1-x) - psi(x) = pi cot(pi x) on a 50-point grid
    for i in range(1, 50):
        x = i / 50.0
        if abs(x - 0.5) < 1e-12:
            continue
        lhs = digamma(1.0 - x) - digamma(x)
        rhs = math.pi / math.tan(math.pi * x)
        assert lhs == pytest.approx(rhs, abs=1e-10)


def test_ratio_agrees_with_difference_moderate():
    for a, b in [(3.0, 2.0), (50.5, 7.25), (120.0, 119.0), (0.75, 0.25)]:
        direct = log_gamma(a) - log_gamma(b)
        assert log_gamma_ratio(a, b) == pytest.approx(direct, abs=1e-11)


def test_domain_errors():
    with pytest.raises(DomainError):
        log_gamma(0.0)
    with pytest.raises(DomainError):
        log_gamma(-1.5)
    with pytest.raises(DomainError):
        digamma(0.0)
    with pytest.raises(DomainError):
        log_gamma_ratio(1.0, 0.0)
    with pytest.raises(DomainError):
        log_gamma_ratio(-2.0, 1.0)
