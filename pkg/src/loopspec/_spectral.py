"""Fourier machinery for smooth periodic data on a uniform grid.

Everything in the package that differentiates, integrates or evaluates a
sampled loop quantity off-grid goes through these helpers, so spectral
accuracy (and its failure modes) live in one place.
"""

import numpy as np

_EVAL_BLOCK = 8192  # cap the (points x modes) work array


def wavenumbers(m, length):
    """Angular wavenumbers matching numpy's rfft layout for period `length`."""
    return 2.0 * np.pi * np.fft.rfftfreq(m, d=length / m)


def derivative(values, length, order=1):
    """Spectral derivative of uniformly sampled periodic data."""
    values = np.asarray(values, dtype=float)
    m = values.size
    coef = np.fft.rfft(values)
    coef = coef * (1j * wavenumbers(m, length)) ** order
    if order % 2 == 1 and m % 2 == 0:
        coef[-1] = 0.0  # the unpaired Nyquist cosine has no odd derivative
    return np.fft.irfft(coef, n=m)


def mean_and_oscillation(values, length):
    """Split the antiderivative of periodic samples into mean and wiggle.

    Returns ``(mean, p)`` with ``p`` sampled on the grid, ``p(0) = 0`` and
    ``d/ds (mean*s + p) = values`` to spectral accuracy, so the cumulative
    integral of `values` from 0 to ``s_i`` is ``mean*s_i + p_i``.
    """
    values = np.asarray(values, dtype=float)
    m = values.size
    coef = np.fft.rfft(values)
    mean = coef[0].real / m
    k = wavenumbers(m, length)
    coef[0] = 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        coef = np.where(k > 0.0, coef / (1j * k), 0.0 + 0.0j)
    if m % 2 == 0:
        coef[-1] = 0.0  # antiderivative of the Nyquist cosine vanishes on the grid
    p = np.fft.irfft(coef, n=m)
    return mean, p - p[0]


class FourierSeries:
    """Trigonometric interpolant of m uniform periodic samples.

    Calling the object evaluates the interpolant (or its derivative) at
    arbitrary points; cost is O(points * modes), blocked to bound memory.
    """

    def __init__(self, values, length):
        values = np.asarray(values, dtype=float)
        self.m = values.size
        self.length = length
        self.coef = np.fft.rfft(values)
        self.k = wavenumbers(self.m, length)
        weights = np.full(self.k.size, 2.0)
        weights[0] = 1.0
        if self.m % 2 == 0:
            weights[-1] = 1.0
        self._weighted = weights * self.coef / self.m

    def __call__(self, s, order=0):
        s = np.asarray(s, dtype=float)
        scalar = s.ndim == 0
        flat = np.atleast_1d(s).ravel()
        c = self._weighted * (1j * self.k) ** order if order else self._weighted
        out = np.empty(flat.size)
        for lo in range(0, flat.size, _EVAL_BLOCK):
            block = flat[lo : lo + _EVAL_BLOCK]
            phase = np.exp(1j * np.multiply.outer(block, self.k))
            out[lo : lo + _EVAL_BLOCK] = (phase @ c).real
        out = out.reshape(np.atleast_1d(s).shape)
        return float(out[0]) if scalar else out
