"""
Discrete Fourier transform over Z/pZ.

    f^(xi) = sum_x f(x) e(-xi x),   e(x) = exp(2 pi i x / p)

Direct O(p^2) summation. Phases are reduced mod p as integers before the
table lookup, and every sum goes through math.fsum, so the output does not
depend on summation order.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from .energy import tsum_Tk
from .errors import ModulusMismatch, TooSmall
from .sets import CountVector, ResidueSet, convolve, indicator
from .types import ConvolutionMode


@dataclass(frozen=True)
class Spectrum:
    modulus: int
    coefficients: Tuple[complex, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.modulus:
            raise ValueError(f"spectrum has length {len(self.coefficients)}, expected {self.modulus}")

    def __getitem__(self, xi: int) -> complex:
        return self.coefficients[xi % self.modulus]

    def magnitudes(self) -> np.ndarray:
        return np.abs(np.array(self.coefficients, dtype=complex))


@lru_cache(maxsize=64)
def _unit_circle(p: int) -> Tuple[np.ndarray, np.ndarray]:
    angles = 2.0 * math.pi * np.arange(p, dtype=np.float64) / p
    return np.cos(angles), np.sin(angles)


def _as_counts(f: Union[CountVector, ResidueSet]) -> CountVector:
    return indicator(f) if isinstance(f, ResidueSet) else f


def dft(f: Union[CountVector, ResidueSet]) -> Spectrum:
    f = _as_counts(f)
    p = f.modulus
    cos_t, sin_t = _unit_circle(p)
    support = np.array([x for x, _ in f.items()], dtype=np.int64)
    values = np.array([float(c) for _, c in f.items()], dtype=np.float64)
    coefficients = []
    for xi in range(p):
        phase = (support * xi) % p
        re = math.fsum(values * cos_t[phase])
        im = -math.fsum(values * sin_t[phase])
        coefficients.append(complex(re, im))
    return Spectrum(p, tuple(coefficients))


def idft(spectrum: Spectrum) -> List[complex]:
    """f(x) = (1/p) sum_xi f^(xi) e(xi x)"""
    p = spectrum.modulus
    cos_t, sin_t = _unit_circle(p)
    coeffs = np.array(spectrum.coefficients, dtype=complex)
    re_c, im_c = coeffs.real, coeffs.imag
    frequencies = np.arange(p, dtype=np.int64)
    out = []
    for x in range(p):
        phase = (frequencies * x) % p
        c, s = cos_t[phase], sin_t[phase]
        re = math.fsum(re_c * c - im_c * s)
        im = math.fsum(re_c * s + im_c * c)
        out.append(complex(re / p, im / p))
    return out


def _relative(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a))


def parseval_residual(f: Union[CountVector, ResidueSet]) -> float:
    f = _as_counts(f)
    exact = sum(c * c for c in f.counts)
    spectral = math.fsum(abs(c) ** 2 for c in dft(f).coefficients) / f.modulus
    return _relative(exact, spectral)


def convolution_residual(f: CountVector, g: CountVector) -> float:
    """sum_y (f*g)(y)^2 against (1/p) sum_xi |f^|^2 |g^|^2, relative."""
    if f.modulus != g.modulus:
        raise ModulusMismatch(f.modulus, g.modulus)
    exact = sum(c * c for c in convolve(f, g, ConvolutionMode.STAR).counts)
    fs, gs = dft(f), dft(g)
    spectral = math.fsum(abs(a) ** 2 * abs(b) ** 2 for a, b in zip(fs.coefficients, gs.coefficients)) / f.modulus
    return _relative(exact, spectral)


def transform_residual(f: CountVector, g: CountVector, mode: ConvolutionMode = ConvolutionMode.STAR) -> float:
    """
    star:   (f*g)^ = f^ g^
    circle: (f o g)^ = conj(f^) g^
    Returns max_xi |lhs - rhs| / max(1, max_xi |rhs|).
    """
    mode = ConvolutionMode(mode)
    lhs = dft(convolve(f, g, mode)).coefficients
    fs, gs = dft(f).coefficients, dft(g).coefficients
    if mode == ConvolutionMode.STAR:
        rhs = [a * b for a, b in zip(fs, gs)]
    else:
        rhs = [a.conjugate() * b for a, b in zip(fs, gs)]
    scale = max([1.0] + [abs(r) for r in rhs])
    return max(abs(a - b) for a, b in zip(lhs, rhs)) / scale


def inversion_residual(f: Union[CountVector, ResidueSet]) -> float:
    """max_x |idft(dft(f))(x) - f(x)|"""
    f = _as_counts(f)
    recovered = idft(dft(f))
    return max(abs(r - c) for r, c in zip(recovered, f.counts))


def tk_via_spectrum(A: Union[ResidueSet, CountVector], k: int) -> float:
    """(1/p) sum_xi |A^(xi)|^{2k}"""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    spectrum = dft(A)
    return math.fsum(abs(c) ** (2 * k) for c in spectrum.coefficients) / spectrum.modulus


def max_nontrivial_coefficient(A: ResidueSet) -> float:
    if len(A) < 1:
        raise TooSmall("max coefficient needs a nonempty set")
    return max(abs(c) for c in dft(A).coefficients[1:])


# =============================================================================
# Identity audit
# =============================================================================

@dataclass(frozen=True)
class IdentityAudit:
    """Residuals of the Fourier identities for one pair of sets, with the tolerance each must meet."""
    modulus: int
    k: int
    residuals: Dict[str, float]
    tolerances: Dict[str, float]
    tk_exact: int
    tk_spectral: float

    @property
    def tk_rounds(self) -> bool:
        return round(self.tk_spectral) == self.tk_exact

    @property
    def failures(self) -> List[str]:
        failed = [name for name, r in self.residuals.items() if not r <= self.tolerances[name]]
        if not self.tk_rounds:
            failed.append("tk_nearest_integer")
        return failed

    @property
    def passed(self) -> bool:
        return not self.failures

    def rows(self) -> List[Dict[str, object]]:
        out = [
            {"identity": name, "residual": r, "tolerance": self.tolerances[name], "ok": r <= self.tolerances[name]}
            for name, r in self.residuals.items()
        ]
        out.append({"identity": "tk_nearest_integer", "residual": abs(self.tk_spectral - self.tk_exact),
                    "tolerance": 0.5, "ok": self.tk_rounds})
        return out


def audit_identities(A: ResidueSet, B: Optional[ResidueSet] = None, k: int = 2,
                     identity_tolerance: float = 1e-9, moment_tolerance: float = 1e-6) -> IdentityAudit:
    """
    Parseval, the convolution and transform identities and inversion against
    identity_tolerance; T_k through the spectrum against the exact count with
    moment_tolerance, then rounded to the nearest integer.
    """
    B = A if B is None else B
    if A.modulus != B.modulus:
        raise ModulusMismatch(A.modulus, B.modulus)
    f, g = indicator(A), indicator(B)
    exact = tsum_Tk(A, k)
    spectral = tk_via_spectrum(A, k)
    residuals = {
        "parseval": parseval_residual(f),
        "convolution": convolution_residual(f, g),
        "transform_star": transform_residual(f, g, ConvolutionMode.STAR),
        "transform_circle": transform_residual(f, g, ConvolutionMode.CIRCLE),
        "inversion": inversion_residual(f),
        "tk_spectral": _relative(exact, spectral),
    }
    tolerances = {name: identity_tolerance for name in residuals}
    tolerances["tk_spectral"] = moment_tolerance
    return IdentityAudit(A.modulus, k, residuals, tolerances, exact, spectral)
