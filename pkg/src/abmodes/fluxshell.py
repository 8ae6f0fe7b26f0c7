"""Finite-radius flux shell with a contact magnetic-moment coupling.

All flux sits on the cylinder rho = rho0 and the particle carries a moment
mu_z = g e/(2M), so the radial equation gains a delta-shell term
(g phi/rho0) delta(rho - rho0) R.  Interior solution c J_{|l|}(p rho); the
exterior sees the full flux, a J_{|l-phi|} + b J_{-|l-phi|}.  Matching
(continuity plus the derivative jump R'(+) - R'(-) = -g phi R/rho0) fixes

    b/a = - [J'_nu Jl - J_nu (Jl' - (g phi/x) Jl)]
          / [J'_{-nu} Jl - J_{-nu} (Jl' - (g phi/x) Jl)]      (x = p rho0)

whose vanishing-radius limit is

    b/a -> (nu - |l| + g phi)/(nu + |l| - g phi)
           * Gamma(1-nu)/Gamma(1+nu) * (p rho0/2)^{2 nu} .

As rho0 -> 0 the ratio dies for every l unless the denominator crosses
zero: the resonance |l - phi| + |l| - g phi = 0, possible only in the
critical channels.  Inverting the limit against the extension-parameter
conditions gives the g <-> alpha dictionary (`g_from_alpha`); nontrivial
alpha forces g onto the resonance as rho0 -> 0.

Note the sign of the limit and of the dictionary: both are fixed here by
requiring consistency with the matching ratio (itself verified against
direct ODE integration) and with the orthogonality-derived coefficient
conditions; see g_asymptotic for the historical first-order forms, kept
verbatim for the audit.  Units: lengths in 1/M, momenta in M.
"""

from dataclasses import dataclass, replace

from .errors import (
    DegenerateDenominatorError,
    DegenerateError,
    DomainError,
    InfiniteParameterError,
    NoBracketError,
    NumericalPoleError,
    ResonantError,
    ZeroAlphaError,
)
from .flux import FluxParameter
from .sae import Channel, ExtensionParameter
from .specfun import bessel_j, bessel_j_prime, gamma

__all__ = [
    "FluxShellProblem",
    "piecewise_solution",
    "matching_ratio",
    "limit_ratio",
    "resonance_defect",
    "g_from_alpha",
    "g_asymptotic",
    "solve_g",
]

RESONANCE_TOL = 1e-12
_POLE_REL_TOL = 1e-13


@dataclass(frozen=True)
class FluxShellProblem:
    """Shell configuration: radius rho0 (units 1/M), moment factor g, channel l."""

    rho0: float
    g: float
    l: int
    flux: FluxParameter
    p: float
    M: float = 1.0

    def __post_init__(self):
        if self.rho0 <= 0.0 or self.p <= 0.0 or self.M <= 0.0:
            raise DomainError(
                f"rho0, p, M must be positive, got {self.rho0}, {self.p}, {self.M}"
            )

    @property
    def x(self) -> float:
        """Dimensionless matching point p * rho0."""
        return self.p * self.rho0

    @property
    def nu(self) -> float:
        return abs(self.l - self.flux.phi)


def piecewise_solution(prob: FluxShellProblem, a: float, b: float):
    """Evaluator rho -> R(rho) with the interior amplitude fixed by continuity.

    Interior (rho < rho0): c J_{|l|}(p rho); exterior: a J_{+nu} + b J_{-nu}.
    The derivative jump holds when (a, b) satisfy the matching ratio.
    DegenerateError when J_{|l|}(p rho0) = 0 (continuity cannot fix c).
    """
    if a == 0.0 and b == 0.0:
        raise DegenerateError("a = b = 0 gives the zero solution")
    x0 = prob.x
    nu = prob.nu
    order_l = float(abs(prob.l))
    j_interior = bessel_j(order_l, x0)
    exterior_at_shell = a * bessel_j(nu, x0) + b * bessel_j(-nu, x0)
    if abs(j_interior) < 1e-13:
        raise DegenerateError(
            f"interior Bessel node at the shell: J_{abs(prob.l)}({x0:.6g}) ~ 0"
        )
    c = exterior_at_shell / j_interior

    def evaluator(rho: float) -> float:
        if rho <= 0.0:
            raise DomainError(f"rho must be > 0, got {rho}")
        z = prob.p * rho
        if rho < prob.rho0:
            return c * bessel_j(order_l, z)
        return a * bessel_j(nu, z) + b * bessel_j(-nu, z)

    return evaluator


def matching_ratio(prob: FluxShellProblem) -> float:
    """Exterior coefficient ratio b/a fixed by the shell matching conditions."""
    x = prob.x
    nu = prob.nu
    order_l = float(abs(prob.l))
    jl = bessel_j(order_l, x)
    moment_term = bessel_j_prime(order_l, x) - (prob.g * prob.flux.phi / x) * jl
    num = bessel_j_prime(nu, x) * jl - bessel_j(nu, x) * moment_term
    den = bessel_j_prime(-nu, x) * jl - bessel_j(-nu, x) * moment_term
    scale = abs(bessel_j_prime(-nu, x) * jl) + abs(bessel_j(-nu, x) * moment_term)
    if abs(den) < _POLE_REL_TOL * scale:
        raise NumericalPoleError(
            f"matching denominator vanishes at x = {x:.6g} (g = {prob.g})"
        )
    return -num / den


def resonance_defect(l: int, flux: FluxParameter, g: float) -> float:
    """|l - phi| + |l| - g phi; zero on the resonance locus."""
    return abs(l - flux.phi) + abs(l) - g * flux.phi


def limit_ratio(prob: FluxShellProblem) -> float:
    """Vanishing-radius limit of the matching ratio (leading series order).

    (nu - |l| + g phi)/(nu + |l| - g phi) * Gamma(1-nu)/Gamma(1+nu)
    * (p rho0 / 2)^{2 nu}.  ResonantError on the resonance (the next series
    order is not implemented; use matching_ratio there).
    """
    defect = resonance_defect(prob.l, prob.flux, prob.g)
    if abs(defect) <= RESONANCE_TOL:
        raise ResonantError(
            f"resonance |l-phi| + |l| - g phi = {defect:.3e}: the limit formula "
            "degenerates; evaluate matching_ratio at finite rho0 instead"
        )
    nu = prob.nu
    numer = nu - abs(prob.l) + prob.g * prob.flux.phi
    return (
        (numer / defect)
        * (gamma(1.0 - nu) / gamma(1.0 + nu))
        * (0.5 * prob.x) ** (2.0 * nu)
    )


def _dictionary_parts(ep: ExtensionParameter, flux: FluxParameter, rho0: float, M: float):
    if ep.is_infinite:
        raise InfiniteParameterError(
            "the g-factor dictionary needs a finite extension parameter"
        )
    if rho0 <= 0.0 or M <= 0.0:
        raise DomainError(f"rho0 and M must be positive, got {rho0}, {M}")
    delta = flux.delta
    n = flux.n
    if ep.channel is Channel.SCHRODINGER_N:
        u = (0.5 * M * rho0) ** (2.0 * delta)
        shell = gamma(-delta) * u
        ext = ep.alpha * gamma(delta)
        lead_in, lead_out = abs(n) - delta, abs(n) + delta
    elif ep.channel is Channel.SCHRODINGER_N_PLUS_1:
        u = (0.5 * M * rho0) ** (2.0 * (1.0 - delta))
        shell = gamma(delta - 1.0) * u
        ext = ep.alpha * gamma(1.0 - delta)
        lead_in, lead_out = abs(n + 1) - 1.0 + delta, abs(n + 1) + 1.0 - delta
    else:
        raise InfiniteParameterError(
            "the shell model is nonrelativistic; only the Schrodinger channels map"
        )
    return shell, ext, lead_in, lead_out, n + delta


def g_from_alpha(
    ep: ExtensionParameter, flux: FluxParameter, rho0: float, M: float = 1.0
) -> float:
    """Shell g-factor whose vanishing-radius limit realizes the extension parameter.

    Closed form (channel N; the N+1 channel swaps delta -> 1-delta and the
    leading weights):

        g = [Gamma(-d) u (|N|-d) - a Gamma(d) (|N|+d)]
            / [(N+d) (Gamma(-d) u - a Gamma(d))],      u = (M rho0/2)^{2d}.

    Exact special values: alpha = 0, N = 0 gives g = -1; channel N+1 with
    alpha = 0 and N >= 0 gives g = +1.  DegenerateDenominatorError at the
    isolated negative-alpha combinations where the denominator vanishes.
    """
    shell, ext, lead_in, lead_out, nd = _dictionary_parts(ep, flux, rho0, M)
    den = shell - ext
    if abs(den) < 1e-14 * (abs(shell) + abs(ext)):
        raise DegenerateDenominatorError(
            f"dictionary denominator vanishes (alpha = {ep.alpha}, rho0 = {rho0})"
        )
    return (shell * lead_in - ext * lead_out) / (nd * den)


def g_asymptotic(
    ep: ExtensionParameter, flux: FluxParameter, rho0: float, M: float = 1.0
) -> float:
    """Historical first-order small-rho0 forms of the g-factor, verbatim.

    Channel N:    1 + (1/a) (N-d)/(N+d) Gamma(-d)/Gamma(d) (M rho0/2)^{2d}
    Channel N+1: -1 - (1/a) (N+2-d)/(N+d) Gamma(d-1)/Gamma(1-d) (M rho0/2)^{2(1-d)}

    Kept exactly as printed for the asymptotic-formula audit: the
    first-order coefficient disagrees with the expansion of g_from_alpha
    (see the acceptance audit fixture); the full formula is the one that
    round-trips through limit_ratio.
    """
    if ep.is_infinite:
        raise InfiniteParameterError(
            "the asymptotic form needs a finite extension parameter"
        )
    if ep.alpha == 0.0:
        raise ZeroAlphaError("the first-order correction carries 1/alpha")
    if rho0 <= 0.0 or M <= 0.0:
        raise DomainError(f"rho0 and M must be positive, got {rho0}, {M}")
    delta = flux.delta
    n = flux.n
    if ep.channel is Channel.SCHRODINGER_N:
        u = (0.5 * M * rho0) ** (2.0 * delta)
        return 1.0 + (1.0 / ep.alpha) * ((n - delta) / (n + delta)) * (
            gamma(-delta) / gamma(delta)
        ) * u
    if ep.channel is Channel.SCHRODINGER_N_PLUS_1:
        u = (0.5 * M * rho0) ** (2.0 * (1.0 - delta))
        return -1.0 - (1.0 / ep.alpha) * ((n + 2.0 - delta) / (n + delta)) * (
            gamma(delta - 1.0) / gamma(1.0 - delta)
        ) * u
    raise InfiniteParameterError(
        "the shell model is nonrelativistic; only the Schrodinger channels map"
    )


def solve_g(
    prob_template: FluxShellProblem,
    target_ratio: float,
    g_lo: float = -10.0,
    g_hi: float = 10.0,
    *,
    cells: int = 64,
    max_iter: int = 200,
) -> float:
    """Invert matching_ratio in g: find g with matching_ratio(g) = target_ratio.

    Deterministic scan of [g_lo, g_hi] in `cells` equal cells for sign
    changes of the residual, bisection on the first bracketing cell, then
    secant polish.  The ratio is a Moebius function of g (one root, one
    pole); cells containing the pole fail the residual check and are
    skipped.  NoBracketError when no cell yields a root within tolerance.
    """
    if g_hi <= g_lo:
        raise DomainError(f"empty bracket [{g_lo}, {g_hi}]")

    def residual(g):
        return matching_ratio(replace(prob_template, g=g)) - target_ratio

    tol = 1e-10 * max(1.0, abs(target_ratio))
    gs = [g_lo + (g_hi - g_lo) * i / cells for i in range(cells + 1)]
    fs = [residual(g) for g in gs]
    for i in range(cells):
        fa, fb = fs[i], fs[i + 1]
        if fa == 0.0:
            return gs[i]
        if fa * fb > 0.0:
            continue
        a, b = gs[i], gs[i + 1]
        for _ in range(max_iter):
            m = 0.5 * (a + b)
            fm = residual(m)
            if fa * fm <= 0.0:
                b, fb = m, fm
            else:
                a, fa = m, fm
            if b - a <= 1e-15 * max(1.0, abs(m)):
                break
        # secant polish inside the bracket
        x0, x1 = a, b
        f0, f1 = fa, fb
        for _ in range(8):
            if f1 == f0:
                break
            x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
            if not a <= x2 <= b:
                break
            x0, f0 = x1, f1
            x1, f1 = x2, residual(x2)
        best = x1 if abs(f1) < abs(residual(0.5 * (a + b))) else 0.5 * (a + b)
        if abs(residual(best)) <= tol:
            return best
    raise NoBracketError(
        f"no g in [{g_lo}, {g_hi}] reaches matching_ratio = {target_ratio:.6g} "
        f"within tolerance {tol:.1e}"
    )
