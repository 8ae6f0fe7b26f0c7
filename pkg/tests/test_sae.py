"""Extension-parameter conditions, boundary map, extended modes, reference values."""

import math

import pytest

from abmodes.errors import (
    ChannelMismatchError,
    DegenerateError,
    DomainError,
    InfiniteParameterError,
)
from abmodes.flux import EquationKind, decompose
from abmodes.modes import DiracKinematics
from abmodes.overlap import (
    mode_overlap_finite_part,
    mode_overlap_finite_part_numeric,
)
from abmodes.sae import (
    Channel,
    ExtensionParameter,
    boundary_ratio_from_alpha,
    dirac_ratio,
    make_extended_mode,
    reference_extension_parameters,
    schrodinger_ratio,
)
from abmodes.modes import small_rho_signature


class TestSchrodingerRatio:
    def test_zero_alpha(self):
        ep = ExtensionParameter.finite(Channel.SCHRODINGER_N, 0.0)
        assert schrodinger_ratio(ep, decompose(0.3), 2.0, 1.0) == 0.0

    def test_reference_momentum(self):
        ep = ExtensionParameter.finite(Channel.SCHRODINGER_N, 1.0)
        for delta in (0.2, 0.5, 0.8):
            assert schrodinger_ratio(ep, decompose(delta), 1.0, 1.0) == pytest.approx(
                1.0, rel=1e-15
            )

    def test_direct_substitution(self):
        ep = ExtensionParameter.finite(Channel.SCHRODINGER_N, 2.0)
        assert schrodinger_ratio(ep, decompose(0.5), 0.25, 1.0) == pytest.approx(
            0.5, rel=1e-15
        )

    def test_channel_n_plus_1_exponent(self):
        ep = ExtensionParameter.finite(Channel.SCHRODINGER_N_PLUS_1, 1.0)
        f = decompose(0.3)
        assert schrodinger_ratio(ep, f, 2.0, 1.0) == pytest.approx(
            2.0**1.4, rel=1e-14
        )

    def test_infinite_parameter(self):
        ep = ExtensionParameter.infinite(Channel.SCHRODINGER_N)
        with pytest.raises(InfiniteParameterError):
            schrodinger_ratio(ep, decompose(0.3), 1.0, 1.0)

    def test_dirac_channel_rejected(self):
        ep = ExtensionParameter.finite(Channel.DIRAC_N, 1.0)
        with pytest.raises(ChannelMismatchError):
            schrodinger_ratio(ep, decompose(0.3), 1.0, 1.0)

    def test_linear_in_alpha_and_increasing_in_p(self):
        f = decompose(0.3)
        p_grid = [0.5, 1.0, 1.5, 2.0, 3.0]
        for channel in (Channel.SCHRODINGER_N, Channel.SCHRODINGER_N_PLUS_1):
            base = [
                schrodinger_ratio(ExtensionParameter.finite(channel, 1.0), f, p, 1.0)
                for p in p_grid
            ]
            for alpha in (0.5, 2.0, -3.0):
                ep = ExtensionParameter.finite(channel, alpha)
                for p, r0 in zip(p_grid, base):
                    assert schrodinger_ratio(ep, f, p, 1.0) == pytest.approx(
                        alpha * r0, rel=1e-14
                    )
            assert all(b > a for a, b in zip(base, base[1:]))


class TestDiracRatio:
    def test_explicit_values(self):
        f = decompose(0.5)
        kin_plus = DiracKinematics.from_momenta(1.0, 1.0, 0.0, 1)
        kin_minus = DiracKinematics.from_momenta(1.0, 1.0, 0.0, -1)
        ep = ExtensionParameter.finite(Channel.DIRAC_N, 1.0)
        assert dirac_ratio(ep, f, kin_plus) == pytest.approx(
            1.0 / (1.0 + math.sqrt(2.0)), rel=1e-14
        )
        assert dirac_ratio(ep, f, kin_minus) == pytest.approx(
            1.0 / (math.sqrt(2.0) - 1.0), rel=1e-14
        )

    def test_vanishes_with_momentum(self):
        f = decompose(0.5)
        ep = ExtensionParameter.finite(Channel.DIRAC_N, 1.0)
        kin = DiracKinematics.from_momenta(1.0, 1e-8, 0.0, 1)
        assert abs(dirac_ratio(ep, f, kin)) < 1e-7

    def test_momentum_dependence_is_pure_power(self):
        f = decompose(0.3)
        alpha = 1.7
        ep = ExtensionParameter.finite(Channel.DIRAC_N, alpha)
        for s in (1, -1):
            for p_perp in [0.01, 0.1, 1.0, 5.0, 10.0]:
                kin = DiracKinematics.from_momenta(1.0, p_perp, 0.0, s)
                recovered = (
                    dirac_ratio(ep, f, kin)
                    * (kin.M / kin.p_perp) ** (2.0 * f.delta)
                    * (kin.E + s * kin.M)
                    / kin.M
                )
                assert recovered == pytest.approx(alpha, rel=1e-12)

    def test_schrodinger_channel_rejected(self):
        ep = ExtensionParameter.finite(Channel.SCHRODINGER_N, 1.0)
        with pytest.raises(ChannelMismatchError):
            dirac_ratio(ep, decompose(0.3), DiracKinematics.from_momenta(1.0, 1.0))


class TestBoundaryRatio:
    def test_half_order(self):
        # 2 Gamma(1/2)/Gamma(-1/2) = -1
        for alpha in (1.0, -2.5, 0.3):
            assert boundary_ratio_from_alpha(alpha, 0.5) == pytest.approx(
                -alpha, rel=1e-12
            )

    def test_zero_alpha(self):
        assert boundary_ratio_from_alpha(0.0, 0.3) == 0.0

    def test_generic_order(self):
        assert boundary_ratio_from_alpha(1.0, 0.3) == pytest.approx(
            -1.0479608751150151, rel=1e-12
        )

    def test_order_domain(self):
        with pytest.raises(DomainError):
            boundary_ratio_from_alpha(1.0, 1.3)


class TestExtendedModes:
    def test_zero_alpha_is_regular(self):
        f = decompose(0.3)
        ep = ExtensionParameter.finite(Channel.SCHRODINGER_N, 0.0)
        mode = make_extended_mode(ep, f, 0, 1.0, 1.0)
        assert (mode.a, mode.b) == (1.0, 0.0)

    def test_infinite_is_pure_irregular(self):
        f = decompose(0.3)
        ep = ExtensionParameter.infinite(Channel.SCHRODINGER_N)
        mode = make_extended_mode(ep, f, 0, 1.0, 1.0)
        assert (mode.a, mode.b) == (0.0, 1.0)

    def test_coefficients_from_ratio(self):
        f = decompose(0.3)
        ep = ExtensionParameter.finite(Channel.SCHRODINGER_N, 1.0)
        mode = make_extended_mode(ep, f, 0, 2.0, 1.0)
        assert mode.b == pytest.approx(2.0**0.6, rel=1e-14)

    def test_channel_mismatch(self):
        f = decompose(0.3)
        ep = ExtensionParameter.finite(Channel.SCHRODINGER_N, 1.0)
        with pytest.raises(ChannelMismatchError):
            make_extended_mode(ep, f, 1, 1.0, 1.0)
        with pytest.raises(ChannelMismatchError):
            make_extended_mode(
                ExtensionParameter.finite(Channel.DIRAC_N, 1.0), f, 0, 1.0, 1.0
            )

    def test_orthogonality_closure_analytic(self):
        # extended modes at distinct momenta have no finite overlap part
        for delta in (0.2, 0.5, 0.8):
            f = decompose(delta)
            for channel, l in (
                (Channel.SCHRODINGER_N, f.n),
                (Channel.SCHRODINGER_N_PLUS_1, f.n + 1),
            ):
                for alpha in (0.0, 0.7, -1.3, 10.0):
                    ep = ExtensionParameter.finite(channel, alpha)
                    m1 = make_extended_mode(ep, f, l, 0.8, 1.0)
                    m2 = make_extended_mode(ep, f, l, 1.9, 1.0)
                    assert abs(mode_overlap_finite_part(m1, m2)) <= 1e-12

    def test_orthogonality_closure_numeric(self):
        f = decompose(0.4)
        ep = ExtensionParameter.finite(Channel.SCHRODINGER_N, 0.9)
        m1 = make_extended_mode(ep, f, 0, 0.8, 1.0)
        m2 = make_extended_mode(ep, f, 0, 1.9, 1.0)
        value, est = mode_overlap_finite_part_numeric(m1, m2)
        assert abs(value) <= 1e-3

    def test_boundary_condition_consistency(self):
        # signature of an extended mode reproduces the boundary-ratio map
        for delta in (0.3, 0.5, 0.7):
            f = decompose(delta)
            for alpha in (0.4, 1.0, -2.0):
                ep = ExtensionParameter.finite(Channel.SCHRODINGER_N, alpha)
                for p in (0.5, 1.0, 2.0):
                    mode = make_extended_mode(ep, f, 0, p, 1.0)
                    sig = small_rho_signature(mode, 1.0)
                    assert sig.boundary_ratio == pytest.approx(
                        boundary_ratio_from_alpha(alpha, f.delta), rel=1e-6
                    )

    def test_pure_irregular_signature_degenerates(self):
        f = decompose(0.3)
        ep = ExtensionParameter.infinite(Channel.SCHRODINGER_N)
        mode = make_extended_mode(ep, f, 0, 1.0, 1.0)
        with pytest.raises(DegenerateError):
            small_rho_signature(mode, 1.0)


class TestReferenceValues:
    def test_schrodinger_both_channels_regular(self):
        pair = reference_extension_parameters(EquationKind.SCHRODINGER, 1, decompose(2.3))
        assert [ep.alpha for ep in pair] == [0.0, 0.0]
        assert pair[0].channel is Channel.SCHRODINGER_N
        assert pair[1].channel is Channel.SCHRODINGER_N_PLUS_1

    def test_dirac_sign_rule(self):
        f = decompose(2.3)
        assert reference_extension_parameters(EquationKind.DIRAC, 1, f).is_infinite
        ep = reference_extension_parameters(EquationKind.DIRAC, -1, f)
        assert ep.alpha == 0.0
        fneg = decompose(-0.7)
        assert reference_extension_parameters(EquationKind.DIRAC, -1, fneg).is_infinite
        assert reference_extension_parameters(EquationKind.DIRAC, 1, fneg).alpha == 0.0

    def test_bad_spin(self):
        with pytest.raises(DomainError):
            reference_extension_parameters(EquationKind.DIRAC, 0, decompose(0.3))
