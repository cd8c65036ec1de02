"""Complex probe susceptibility of a driven Lambda vapor and derived dispersion.

Two routes are provided.  :func:`chi_closed_form` is the rational expression
obtained when the velocity distribution is Lorentzian and the two wavenumbers
coincide.  :func:`chi_velocity_integral` integrates the velocity-resolved
response numerically for any :class:`DopplerModel`; for the Lorentzian model it
must agree with the closed form, which the tests rely on.

Every function broadcasts over array-valued ``omega``, ``Delta_p`` and
``delta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Union

import numpy as np
from scipy.integrate import quad_vec
from scipy.special import roots_hermite

from .errors import ConvergenceError, InvalidParameterError, SingularConfigurationError
from .medium import C_LIGHT, AtomicMedium, eta

_SINGULAR = 1e-300


# --- Doppler models -------------------------------------------------------

@dataclass(frozen=True)
class Cold:
    """No velocity averaging: atoms at rest."""

    width = 0.0


@dataclass(frozen=True)
class Lorentzian:
    """Lorentzian velocity distribution of half-width ``width`` (rad/s).

    Integrated adaptively after mapping the velocity axis onto a finite angle.
    """

    width: float
    rtol: float = 1e-12
    limit: int = 20000


@dataclass(frozen=True)
class Gaussian:
    """Maxwellian velocities with half-width at half-maximum ``width`` (rad/s).

    Integrated with Gauss-Hermite nodes, doubling from ``nodes`` until two
    successive estimates agree to ``rtol``.
    """

    width: float
    nodes: int = 201
    rtol: float = 1e-8
    max_nodes: int = 1608

    @property
    def sigma(self) -> float:
        return self.width / np.sqrt(2.0 * np.log(2.0))


DopplerModel = Union[Cold, Lorentzian, Gaussian]


def doppler_model(kind: str, medium: AtomicMedium) -> DopplerModel:
    """Build a model by name, taking the Doppler width from ``medium``."""
    kind = kind.lower()
    if kind == "cold":
        return Cold()
    if kind == "lorentzian":
        return Lorentzian(medium.delta_omega_D)
    if kind == "gaussian":
        return Gaussian(medium.delta_omega_D)
    raise InvalidParameterError(f"unknown Doppler model {kind!r}")


def _check_model(model):
    if not isinstance(model, (Cold, Lorentzian, Gaussian)):
        raise InvalidParameterError(f"not a Doppler model: {model!r}")
    if not isinstance(model, Cold) and not model.width > 0:
        raise InvalidParameterError("averaged Doppler models need a positive width")


# --- records --------------------------------------------------------------

@dataclass(frozen=True)
class ComplexSusceptibility:
    chi_real: np.ndarray | float
    chi_imag: np.ndarray | float
    delta: np.ndarray | float = 0.0
    Delta_p: np.ndarray | float = 0.0
    error_estimate: float = 0.0

    @classmethod
    def from_complex(cls, chi, delta=0.0, Delta_p=0.0, error_estimate=0.0):
        chi = np.asarray(chi)
        re, im = chi.real, chi.imag
        if chi.ndim == 0:
            re, im = float(re), float(im)
        return cls(re, im, delta, Delta_p, float(error_estimate))

    @property
    def value(self):
        return self.chi_real + 1j * np.asarray(self.chi_imag)


@dataclass(frozen=True)
class DispersionSummary:
    alpha: np.ndarray | float  # m^-1
    n_g: np.ndarray | float
    v_g: np.ndarray | float  # m/s
    T_g: np.ndarray | float  # s
    delta_omega_dis: np.ndarray | float  # rad/s, inf when T_g == 0
    transmission: np.ndarray | float


def _scalarize(x):
    x = np.asarray(x)
    return float(x) if x.ndim == 0 else x


# --- closed form ----------------------------------------------------------

def chi_closed_form(medium: AtomicMedium, omega, Delta_p=0.0, delta=0.0,
                    doppler_width=None) -> ComplexSusceptibility:
    """eta*gamma_r*(i*gamma_bc - delta) / ((gamma + D + i*Delta_p)(gamma_bc + i*delta) + omega^2).

    ``doppler_width`` defaults to the medium's Doppler half-width; pass 0 for
    the stationary-atom limit.
    """
    width = medium.delta_omega_D if doppler_width is None else doppler_width
    omega, Delta_p, delta = np.broadcast_arrays(*(np.asarray(x, dtype=float)
                                                  for x in (omega, Delta_p, delta)))
    num = eta(medium) * medium.gamma_r * (1j * medium.gamma_bc - delta)
    den = (medium.gamma + width + 1j * Delta_p) * (medium.gamma_bc + 1j * delta) + omega**2
    if np.any(np.abs(den) < _SINGULAR):
        raise SingularConfigurationError("susceptibility denominator vanishes")
    return ComplexSusceptibility.from_complex(num / den, _scalarize(delta), _scalarize(Delta_p))


# --- velocity integral ----------------------------------------------------

def _integrand(medium, omega, Delta_p, delta, u, mismatch):
    """Velocity-class response; ``u = k_p v`` on the trailing axis."""
    g_bc = medium.gamma_bc + 1j * (delta[..., None] + mismatch * u)
    den = g_bc * (medium.gamma + 1j * (Delta_p[..., None] + u)) + omega[..., None] ** 2
    return 1j * eta(medium) * medium.gamma_r * g_bc / den


@lru_cache(maxsize=16)
def _hermite(n):
    return roots_hermite(n)


def _lorentz_average(model, medium, omega, Delta_p, delta, mismatch):
    # u = width * tan(theta) turns the Lorentzian into a uniform density on (-pi/2, pi/2)
    def integrand(theta):
        u = np.array([model.width * np.tan(theta)])
        return _integrand(medium, omega, Delta_p, delta, u, mismatch)[..., 0] / np.pi

    result, err, info = quad_vec(integrand, -0.5 * np.pi, 0.5 * np.pi, epsabs=1e-300,
                                 epsrel=model.rtol, norm="max", limit=model.limit,
                                 full_output=True)
    scale = float(np.max(np.abs(result))) if np.size(result) else 0.0
    achieved = err / scale if scale > 0 else 0.0
    if not info.success:
        raise ConvergenceError(f"Lorentzian velocity average failed: {info.message}",
                               achieved=achieved)
    return result, achieved


def _hermite_average(model, medium, omega, Delta_p, delta, mismatch, n):
    x, wts = _hermite(n)
    u = np.sqrt(2.0) * model.sigma * x
    return np.sum(_integrand(medium, omega, Delta_p, delta, u, mismatch) * wts, axis=-1) / np.sqrt(np.pi)


def chi_velocity_integral(medium: AtomicMedium, omega, Delta_p=0.0, delta=0.0,
                          k_p=None, k_d=None, model: DopplerModel | None = None
                          ) -> ComplexSusceptibility:
    """Average the velocity-resolved susceptibility over the model's distribution.

    ``k_p`` and ``k_d`` default to the medium's probe wavenumber; a mismatch
    leaves a residual ``(k_p - k_d) v`` in the two-photon coherence.
    """
    model = Lorentzian(medium.delta_omega_D) if model is None else model
    _check_model(model)
    k_p = medium.k if k_p is None else k_p
    k_d = k_p if k_d is None else k_d
    mismatch = (k_p - k_d) / k_p
    omega, Delta_p, delta = np.broadcast_arrays(*(np.asarray(x, dtype=float)
                                                  for x in (omega, Delta_p, delta)))

    if isinstance(model, Cold):
        chi = _integrand(medium, omega, Delta_p, delta, np.zeros(1), mismatch)[..., 0]
        return ComplexSusceptibility.from_complex(chi, _scalarize(delta), _scalarize(Delta_p))

    if isinstance(model, Lorentzian):
        chi, err = _lorentz_average(model, medium, omega, Delta_p, delta, mismatch)
        return ComplexSusceptibility.from_complex(chi, _scalarize(delta), _scalarize(Delta_p), err)

    n = model.nodes
    previous = _hermite_average(model, medium, omega, Delta_p, delta, mismatch, n)
    err = np.inf
    while 2 * n <= model.max_nodes:
        n *= 2
        current = _hermite_average(model, medium, omega, Delta_p, delta, mismatch, n)
        scale = np.maximum(np.abs(current), np.finfo(float).tiny)
        diff = np.abs(current - previous)
        err = float(np.max(np.where(diff == 0, 0.0, diff / scale)))
        if err <= model.rtol:
            return ComplexSusceptibility.from_complex(current, _scalarize(delta),
                                                      _scalarize(Delta_p), err)
        previous = current
    raise ConvergenceError(
        f"{type(model).__name__} velocity average did not reach rtol={model.rtol:g} "
        f"with {n} nodes", achieved=err)


# --- derived quantities ---------------------------------------------------

def absorption_coeff(chi: ComplexSusceptibility, k: float):
    """Field absorption coefficient (k/2) chi'' in m^-1."""
    return _scalarize(0.5 * k * np.asarray(chi.chi_imag))


def eit_linewidth(medium: AtomicMedium, omega, doppler_width=None):
    """Power-broadened transparency half-width (rad/s)."""
    width = medium.delta_omega_D if doppler_width is None else doppler_width
    g = medium.gamma + width
    return (medium.gamma_bc * g + np.asarray(omega) ** 2) / g


def group_index_analytic(medium: AtomicMedium, omega, doppler_width=None):
    """(3/8pi) N lambda^2 gamma_r omega^2 c / (gamma_bc (gamma + D) + omega^2)^2."""
    width = medium.delta_omega_D if doppler_width is None else doppler_width
    omega2 = np.asarray(omega, dtype=float) ** 2
    pref = 3.0 / (8.0 * np.pi) * medium.N * medium.wavelength**2
    den = (medium.gamma_bc * (medium.gamma + width) + omega2) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        n_g = np.where(omega2 == 0, 0.0, pref * medium.gamma_r * omega2 * C_LIGHT / den)
    return _scalarize(n_g)


def group_index_numeric(medium: AtomicMedium, omega, model: DopplerModel | None = None,
                        step=None, Delta_p=0.0,
                        chi_func: Callable | None = None):
    """Group index (nu/2) dchi'/dnu from a centered difference around delta = 0.

    ``chi_func(delta) -> complex`` replaces the susceptibility evaluation when
    given.  The difference is repeated with half the step; a relative change
    above 1% raises :class:`ConvergenceError`.
    """
    model = Lorentzian(medium.delta_omega_D) if model is None else model
    omega = np.asarray(omega, dtype=float)
    if step is None:
        step = 1e-3 * eit_linewidth(medium, omega, model.width)
    step = np.asarray(step, dtype=float)
    if np.any(step <= 0):
        raise InvalidParameterError("finite-difference step must be positive")
    if chi_func is None:
        def chi_func(d):
            return chi_velocity_integral(medium, omega, Delta_p, d, model=model).value

    def slope(h):
        return (np.real(chi_func(h)) - np.real(chi_func(-h))) / (2.0 * h)

    coarse, fine = slope(step), slope(0.5 * step)
    scale = np.maximum(np.abs(fine), np.finfo(float).tiny)
    change = np.where(coarse == fine, 0.0, np.abs(coarse - fine) / scale)
    if np.max(change) > 0.01:
        raise ConvergenceError("finite-difference group index not converged; reduce step",
                               achieved=float(np.max(change)))
    # d/dnu_p = -d/ddelta since delta = Delta_p - Delta_d and Delta_p = omega_ab - nu_p
    return _scalarize(-0.5 * medium.nu * fine)


def summarize(medium: AtomicMedium, alpha, n_g) -> DispersionSummary:
    """Bundle alpha and n_g into the full set of propagation figures."""
    alpha = np.asarray(alpha, dtype=float)
    n_g = np.asarray(n_g, dtype=float)
    T_g = n_g * medium.L / C_LIGHT
    with np.errstate(divide="ignore"):
        dis = np.where(T_g > 0, np.pi / (2.0 * np.where(T_g > 0, T_g, 1.0)), np.inf)
    return DispersionSummary(
        alpha=_scalarize(alpha),
        n_g=_scalarize(n_g),
        v_g=_scalarize(C_LIGHT / (1.0 + n_g)),
        T_g=_scalarize(T_g),
        delta_omega_dis=_scalarize(dis),
        transmission=_scalarize(np.exp(-2.0 * alpha * medium.L)),
    )


def dispersion_summary(medium: AtomicMedium, omega, model: DopplerModel | None = None
                       ) -> DispersionSummary:
    """Line-center absorption, group index, velocity, delay and dispersive width.

    Lorentzian and cold models use the closed forms; the Gaussian model uses the
    velocity integral and a numerical derivative.
    """
    model = Lorentzian(medium.delta_omega_D) if model is None else model
    _check_model(model)
    if isinstance(model, Gaussian):
        chi = chi_velocity_integral(medium, omega, 0.0, 0.0, model=model)
        n_g = group_index_numeric(medium, omega, model)
    else:
        chi = chi_closed_form(medium, omega, 0.0, 0.0, doppler_width=model.width)
        n_g = group_index_analytic(medium, omega, model.width)
    return summarize(medium, absorption_coeff(chi, medium.k), n_g)
