"""Time evolution: survival amplitude, revival structure, time scales."""

import math

import numpy as np
import pytest

from dirac_revivals.catstate import CatSpec, expand, gaussian_fit, initial_profile
from dirac_revivals.evolution import (TimeSeries, autocorrelation_series,
                                      evolve_profile, evolve_state, kz_for_ab_ratio,
                                      survival_amplitude, survival_series, time_scales)
from dirac_revivals.landau import PhysicalParams, one_particle_params
from dirac_revivals.numerics import find_peaks

MASSLESS = PhysicalParams(M=0.0, kz=0.0, eB=1.0)


@pytest.fixture(scope="module")
def cat5():
    return expand(CatSpec("S", 5.0, MASSLESS))


@pytest.fixture(scope="module")
def scales5(cat5):
    return time_scales(gaussian_fit(cat5).n0, MASSLESS)


class TestTimeScales:
    def test_ordering(self, scales5):
        assert scales5.T1 < scales5.T2 < scales5.T3

    def test_fig_values_massless_a5(self, scales5):
        assert abs(scales5.T1 - 15.0) <= 1.0
        assert abs(scales5.T2 - 3.7e2) <= 0.05 * 3.7e2

    def test_infinite_scale_instead_of_error(self):
        # an eB -> 0+ limit drives every derivative to zero smoothly; emulate
        # the degenerate case directly through a zero derivative
        from dirac_revivals.evolution import TimeScales
        sc = time_scales(1e12, PhysicalParams(M=1.0, eB=1e-300))
        assert isinstance(sc, TimeScales)
        assert sc.T2 == math.inf or sc.T2 > 1e100

    def test_kz_solver(self):
        n0 = 12.25
        kz = kz_for_ab_ratio(2.04, n0, 1.0)
        q = one_particle_params(n0, PhysicalParams(M=0.0, kz=kz, eB=1.0))
        assert q.A / q.B == pytest.approx(2.04, rel=1e-12)
        # mass independence of the ratio
        qm = one_particle_params(n0, PhysicalParams(M=3.0, kz=kz, eB=1.0))
        assert qm.A / qm.B == pytest.approx(2.04, rel=1e-12)


class TestSurvivalAmplitude:
    def test_unity_at_zero(self, cat5):
        assert abs(survival_amplitude(cat5, 0.0) - 1.0) < 1e-12

    def test_bounded_by_one(self, cat5):
        ts = np.linspace(0.0, 500.0, 20001)
        assert np.abs(survival_amplitude(cat5, ts)).max() <= 1.0 + 1e-12

    def test_time_reversal_symmetry(self, cat5):
        ts = np.linspace(0.1, 60.0, 500)
        fwd = np.abs(survival_amplitude(cat5, ts))
        bwd = np.abs(survival_amplitude(cat5, -ts))
        assert np.abs(fwd - bwd).max() < 1e-13

    def test_near_stationary_state_oscillation_band(self):
        # a = 0 leaves a single level with branch weights eta_1 and 1-eta_1,
        # so |C| swings exactly between 2*eta_1-1 and 1
        p = PhysicalParams(M=5.0)
        exp = expand(CatSpec("S", 0.0, p))
        eta1 = one_particle_params(1, p).eta
        ts = np.linspace(0.0, 50.0, 40001)
        mag = np.abs(survival_amplitude(exp, ts))
        assert mag.max() <= 1.0 + 1e-12
        assert mag.min() == pytest.approx(2.0 * eta1 - 1.0, abs=1e-6)

    def test_heavy_mass_point_state_is_almost_stationary(self):
        exp = expand(CatSpec("S", 0.0, PhysicalParams(M=500.0)))
        ts = np.linspace(0.0, 100.0, 20001)
        assert np.abs(survival_amplitude(exp, ts)).min() > 1.0 - 1e-5

    def test_revival_peak_near_T1(self, cat5, scales5):
        T1 = scales5.T1
        series = survival_series(cat5, 1e-9, 2.0 * T1, 40001)
        peaks = find_peaks(series, min_height=0.5, min_separation=0.3)
        nearest = min(peaks, key=lambda p: abs(p[0] - T1))
        assert abs(nearest[0] - T1) <= 0.05 * T1
        # outside the initial interference transient the revival packet wins;
        # its highest crest also sits within 5% of T1
        late = [p for p in peaks if p[0] > T1 / 3.0]
        top = max(late, key=lambda p: p[1])
        assert abs(top[0] - T1) <= 0.05 * T1

    def test_half_revival_peak(self, cat5, scales5):
        T2 = scales5.T2
        series = survival_series(cat5, 1e-9, 1.2 * T2, 120001)
        peaks = find_peaks(series, min_height=0.5, min_separation=T2 / 40.0)
        assert any(abs(p[0] - T2 / 2.0) <= 0.05 * (T2 / 2.0) for p in peaks)


class TestSurvivalSeries:
    def test_shape_and_grid(self, cat5):
        series = survival_series(cat5, 0.0, 10.0, 101)
        assert series.dt == pytest.approx(0.1)
        assert len(series.values) == 101
        assert series.values[0] == pytest.approx(1.0, abs=1e-12)

    def test_deterministic_against_chunking(self, cat5):
        full = survival_series(cat5, 0.0, 30.0, 301).values
        # same grid points evaluated one by one must be bit-identical
        single = np.array([abs(survival_amplitude(cat5, t)) for t in np.linspace(0.0, 30.0, 301)])
        assert np.array_equal(full, single)

    def test_complex_series_matches_magnitude(self, cat5):
        za = autocorrelation_series(cat5, 0.0, 10.0, 101)
        ab = survival_series(cat5, 0.0, 10.0, 101)
        assert np.abs(np.abs(za.values) - ab.values).max() == 0.0

    def test_argument_validation(self, cat5):
        with pytest.raises(ValueError):
            survival_series(cat5, 0.0, 1.0, 1)
        with pytest.raises(ValueError):
            survival_series(cat5, 1.0, 0.5, 10)


def test_weak_field_fractional_revival_periods():
    # quarter- and half-revival packets carry local periods T1/2 and T1
    n0 = gaussian_fit(expand(CatSpec("S", 5.0, MASSLESS))).n0
    kz = kz_for_ab_ratio(2.04, n0, 1.0)
    p = PhysicalParams(M=0.0, kz=kz, eB=1.0)
    exp = expand(CatSpec("S", 5.0, p))
    sc = time_scales(n0, p)
    for frac, period in ((0.25, sc.T1 / 2.0), (0.5, sc.T1)):
        t0 = frac * sc.T2 - 3.2 * period
        series = survival_series(exp, t0, frac * sc.T2 + 3.2 * period, 8001)
        peaks = find_peaks(series, min_height=np.percentile(series.values, 85),
                           min_separation=0.55 * period)
        spacings = np.diff([pk[0] for pk in peaks])
        spacings = spacings[spacings < 1.8 * period]
        assert spacings.size >= 3
        assert np.median(spacings) == pytest.approx(period, rel=0.2)


class TestEvolveState:
    def test_initial_profile_pointwise(self):
        # tight truncation: the pointwise error scales like sqrt(tail_eps)
        spec = CatSpec("S", 5.0, MASSLESS)
        exp = expand(spec, tail_eps=1e-15)
        s = np.linspace(-10.0, 10.0, 501)
        comps = evolve_profile(exp, s, 0.0)
        target = initial_profile(spec, s, normalized=True)
        assert np.abs(comps[0] - target).max() < 1e-8
        assert max(np.abs(comps[j]).max() for j in (1, 2, 3)) < 1e-14

    def test_origin_value(self):
        spec = CatSpec("S", 5.0, MASSLESS)
        exp = expand(spec, tail_eps=1e-15)
        psi = evolve_state(exp, 0.0, 0.0)
        expected = math.pi ** -0.25 * math.exp(-12.5) / math.sqrt(0.5 * (1 + math.exp(-25.0)))
        # absolute pointwise tolerance: truncation leaves sqrt(tail_eps)-scale dust
        assert psi[0].real == pytest.approx(expected, abs=1e-8)

    @pytest.mark.parametrize("t", (0.0, 7.3, 15.549, 95.2))
    def test_unitarity(self, cat5, t):
        s = np.linspace(-11.0, 11.0, 4001)
        comps = evolve_profile(cat5, s, t)
        dens = np.einsum("cs,cs->s", comps.conj(), comps).real
        assert np.trapezoid(dens, s) == pytest.approx(1.0, abs=1e-8)

    def test_overlap_equals_survival_amplitude(self, cat5):
        s = np.linspace(-12.0, 12.0, 6001)
        psi0 = evolve_profile(cat5, s, 0.0)
        for t in (0.9, 7.7, 33.3):
            psit = evolve_profile(cat5, s, t)
            overlap = np.trapezoid(np.einsum("cs,cs->s", psi0.conj(), psit), s)
            assert abs(overlap - survival_amplitude(cat5, t)) < 1e-8


def test_spectrum_line_at_inverse_T1(cat5, scales5):
    # |C|^2 over [0, 4 T1]: dominant nonzero line sits at 1/T1, i.e. bin 4
    T1 = scales5.T1
    n = 8192
    ts = np.linspace(0.0, 4.0 * T1, n, endpoint=False)
    power = np.abs(survival_amplitude(cat5, ts)) ** 2
    spec = np.abs(np.fft.rfft(power - power.mean()))
    assert int(np.argmax(spec[1:])) + 1 == 4


def test_mass_dominated_recurrence():
    # almost-periodic recurrence probe: a window of 10 T2 contains a return
    p = PhysicalParams(M=5.0)
    exp = expand(CatSpec("S", 5.0, p))
    n0 = gaussian_fit(exp).n0
    sc = time_scales(n0, p)
    series = survival_series(exp, sc.T2, 11.0 * sc.T2, 400001)
    assert series.values.max() > 0.8
