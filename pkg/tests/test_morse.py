"""Closed-form sign rules and the subconfiguration Morse index."""

import math

import numpy as np
import pytest

from conftest import random_linkage, regular_polygon_points
from linkmorse import (
    CircleFit,
    Configuration,
    CyclicDescriptor,
    Linkage,
    closing_chord,
    delta,
    enumerate_cyclic,
    fit_circle,
    hessian_sign,
    morse_index,
    reconstruct,
    sign_report,
    subconfig_sign_sequence,
)
from linkmorse.errors import (
    CentralConfigurationError,
    InvalidConfigurationError,
    NonGenericError,
    VanishingChordError,
)

PENTA_L = Linkage([1, 1, 1, 1, 1])
GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0


def _regular(winding=1, ccw=True):
    pts, center, radius = regular_polygon_points(5, winding=winding, ccw=ccw)
    return Configuration(pts), CircleFit(center=center, radius=radius)


def test_delta_square():
    assert delta([math.pi / 4] * 4, (1, 1, 1, 1)) == pytest.approx(4.0, abs=1e-12)


def test_delta_anticonvex_square():
    assert delta([math.pi / 4] * 4, (-1, -1, -1, -1)) == pytest.approx(-4.0, abs=1e-12)


def test_delta_pentagram():
    value = delta([2 * math.pi / 5] * 5, (1, 1, 1, 1, 1))
    assert value == pytest.approx(5.0 * math.tan(math.radians(72.0)), abs=1e-9)
    assert value == pytest.approx(15.3884176858763, abs=1e-9)


def test_delta_rejects_central_half_angle():
    with pytest.raises(CentralConfigurationError):
        delta([math.pi / 2, 0.3, 0.3], (1, 1, 1))


def test_hessian_sign_formula():
    assert hessian_sign((1, 1, 1, 1, 1), 2.5) == 1      # e = 5, d = +1
    assert hessian_sign((1, 1, 1, 1), 4.0) == -1        # e = 4, d = +1
    assert hessian_sign((-1, -1, -1, -1, -1), -2.5) == 1  # e = 0, d = -1


def test_hessian_sign_rejects_boundary():
    with pytest.raises(NonGenericError):
        hessian_sign((1, 1, 1, 1), 0.0)
    with pytest.raises(NonGenericError):
        hessian_sign((1, 1, 1, 1), 1e-12, tol=1e-9)


def test_sign_report_invariant():
    report = sign_report([math.pi / 5] * 5, (1, 1, 1, 1, 1))
    assert report.e == 5
    assert report.d == 1
    assert report.h_sign == -report.d * (-1) ** report.e == 1


def test_closing_chord_regular_pentagon():
    config, fit = _regular()
    length, eps, alpha = closing_chord(config, fit, 4)
    assert length == pytest.approx(GOLDEN, abs=1e-12)
    assert eps == 1
    assert alpha == pytest.approx(math.radians(72.0), abs=1e-12)


def test_closing_chord_regular_pentagram():
    config, fit = _regular(winding=2)
    length, eps, alpha = closing_chord(config, fit, 4)
    assert length == pytest.approx(GOLDEN - 1.0, abs=1e-12)
    assert eps == -1
    assert alpha == pytest.approx(math.radians(36.0), abs=1e-12)


def test_closing_chord_square_diagonal_is_diameter():
    pts = np.array([(0.0, 0.0), (0.0, 1.0), (-1.0, 1.0), (-1.0, 0.0)])
    fit = fit_circle(pts)
    with pytest.raises(CentralConfigurationError):
        closing_chord(Configuration(pts), fit, 3)


def test_closing_chord_index_bounds():
    config, fit = _regular()
    with pytest.raises(InvalidConfigurationError):
        closing_chord(config, fit, 5)  # i = n closes with the real last edge


def test_sequence_convex_pentagon():
    config, fit = _regular()
    assert subconfig_sign_sequence(config, fit) == (1, -1, 1)


def test_sequence_anticonvex_pentagon():
    config, fit = _regular(ccw=False)
    assert subconfig_sign_sequence(config, fit) == (1, 1, 1)


def test_sequence_ccw_pentagram():
    # positively oriented star: no sign change, a local minimum (verified
    # against the numerical Hessian oracle)
    config, fit = _regular(winding=2)
    assert subconfig_sign_sequence(config, fit) == (1, 1, 1)


def test_sequence_cw_pentagram():
    config, fit = _regular(winding=2, ccw=False)
    assert subconfig_sign_sequence(config, fit) == (1, -1, 1)


def test_morse_index_pentagon_family():
    assert morse_index(*_regular()).index == 2
    assert morse_index(*_regular(ccw=False)).index == 0
    assert morse_index(*_regular(winding=2)).index == 0
    assert morse_index(*_regular(winding=2, ccw=False)).index == 2


def test_morse_index_triangle():
    pts, center, radius = regular_polygon_points(3)
    report = morse_index(Configuration(pts), CircleFit(center=center, radius=radius))
    assert report.h_sequence == (1,)
    assert report.index == 0


def test_morse_index_convex_square():
    pts, center, radius = regular_polygon_points(4)
    report = morse_index(Configuration(pts), CircleFit(center=center, radius=radius))
    assert report.h_sequence == (1, -1)
    assert report.index == 1


def test_aligned_pentagon_configurations_are_degenerate():
    # three consecutive edges on one line: the subconfiguration sequence hits
    # a vanishing chord or a delta zero depending on the backtracking edge
    r = 1.0 / math.sqrt(3.0)
    desc = CyclicDescriptor.from_radius(PENTA_L, (1, 1, 1, 1, -1), 1, r)
    config = reconstruct(PENTA_L, desc)
    with pytest.raises(VanishingChordError) as info:
        subconfig_sign_sequence(config, desc.circle)
    assert info.value.index == 4

    desc2 = CyclicDescriptor.from_radius(PENTA_L, (-1, 1, 1, 1, 1), 1, r)
    config2 = reconstruct(PENTA_L, desc2)
    with pytest.raises(NonGenericError) as info2:
        subconfig_sign_sequence(config2, desc2.circle)
    assert info2.value.index == 4


def test_morse_index_requires_cyclic_input():
    pts = [(0.0, 0.0), (0.0, 1.0), (-1.0, 1.2), (-1.3, 0.1)]
    with pytest.raises(InvalidConfigurationError):
        morse_index(Configuration(pts))


def test_mirror_duality_on_enumerated_configurations():
    rng = np.random.default_rng(17)
    for n in (4, 5, 6):
        linkage = random_linkage(rng, n)
        items = enumerate_cyclic(linkage)
        table = {(it.descriptor.eps.eps, it.descriptor.winding): it for it in items}
        for (eps, k), item in table.items():
            partner = table[(tuple(-v for v in eps), -k)]
            m = morse_index(item.configuration, item.descriptor.circle).index
            m_mirror = morse_index(partner.configuration, partner.descriptor.circle).index
            assert m + m_mirror == n - 3
