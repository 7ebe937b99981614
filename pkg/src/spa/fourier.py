"""2-D discrete Fourier transforms and ring-averaged amplitude profiles.

Conventions, fixed once for the whole package:

* forward transform is the unnormalized DFT; the inverse divides by ``H * W``;
* the phase of a zero-magnitude entry is 0;
* ``center_shift`` moves index (0, 0) to ``(H // 2, W // 2)`` and
  ``center_unshift`` is its exact inverse for every size, odd sizes included;
* amplitude profiles average over concentric rectangles: each entry is binned
  by its Chebyshev distance from the center index, scaled per axis so that the
  outermost ring index is ``max(H, W) // 2``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "dft2_forward",
    "dft2_inverse",
    "split_amplitude_phase",
    "combine_amplitude_phase",
    "center_shift",
    "center_unshift",
    "ring_index_grid",
    "rapsd",
    "rapsd_of_image",
    "mean_rapsd",
    "RadialProfile",
]


def _check_finite(arr: np.ndarray, name: str) -> None:
    bad = ~np.isfinite(arr)
    if bad.any():
        idx = tuple(int(v) for v in np.argwhere(bad)[0])
        raise ValueError(f"{name} contains a non-finite value at index {idx}")


def _check_2d(arr: np.ndarray, name: str) -> np.ndarray:
    arr = np.asarray(arr)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    return arr


def dft2_forward(img: np.ndarray) -> np.ndarray:
    """Unnormalized 2-D DFT of a single-channel image (DC at index (0, 0))."""
    img = _check_2d(np.asarray(img, dtype=np.float64), "image")
    _check_finite(img, "image")
    return np.fft.fft2(img)


def dft2_inverse(spec: np.ndarray, imag_warn: float = 1e-6) -> np.ndarray:
    """Real part of the normalized (1 / HW) inverse DFT.

    Warns when the discarded imaginary residue exceeds ``imag_warn``; a large
    residue means the input spectrum was far from Hermitian.
    """
    spec = _check_2d(np.asarray(spec, dtype=np.complex128), "spectrum")
    _check_finite(spec.real, "spectrum (real part)")
    _check_finite(spec.imag, "spectrum (imaginary part)")
    z = np.fft.ifft2(spec)
    residue = float(np.max(np.abs(z.imag))) if z.size else 0.0
    if residue > imag_warn:
        warnings.warn(
            f"inverse transform discarded imaginary residue {residue:.3e}",
            RuntimeWarning,
            stacklevel=2,
        )
    return np.ascontiguousarray(z.real)


def split_amplitude_phase(spec: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Polar decomposition: (|spec|, angle(spec)); angle(0) := 0."""
    spec = _check_2d(np.asarray(spec, dtype=np.complex128), "spectrum")
    _check_finite(spec.real, "spectrum (real part)")
    _check_finite(spec.imag, "spectrum (imaginary part)")
    return np.abs(spec), np.angle(spec)


def combine_amplitude_phase(amplitude: np.ndarray, phase: np.ndarray) -> np.ndarray:
    amplitude = _check_2d(np.asarray(amplitude, dtype=np.float64), "amplitude")
    phase = _check_2d(np.asarray(phase, dtype=np.float64), "phase")
    if amplitude.shape != phase.shape:
        raise ValueError(
            f"amplitude shape {amplitude.shape} != phase shape {phase.shape}"
        )
    _check_finite(amplitude, "amplitude")
    _check_finite(phase, "phase")
    if (amplitude < 0).any():
        idx = tuple(int(v) for v in np.argwhere(amplitude < 0)[0])
        raise ValueError(f"amplitude is negative at index {idx}")
    return amplitude * np.exp(1j * phase)


def center_shift(grid: np.ndarray) -> np.ndarray:
    """Cyclic half-rotation moving index (0, 0) to (H // 2, W // 2)."""
    return np.fft.fftshift(np.asarray(grid))


def center_unshift(grid: np.ndarray) -> np.ndarray:
    """Exact inverse of :func:`center_shift` for all sizes."""
    return np.fft.ifftshift(np.asarray(grid))


def ring_index_grid(h: int, w: int) -> np.ndarray:
    """Ring index of every entry of a center-shifted H x W grid.

    Rings are concentric rectangles around the center index
    ``(h // 2, w // 2)``: per-axis distances are scaled so both axes reach the
    outermost ring ``max(h, w) // 2`` at the grid edge, then the Chebyshev
    maximum is rounded (half away from zero) to an integer ring.
    """
    if h < 1 or w < 1:
        raise ValueError(f"grid size must be positive, got {h}x{w}")
    ci, cj = h // 2, w // 2
    n_rings = max(h, w) // 2
    di = np.abs(np.arange(h) - ci).astype(np.float64)
    dj = np.abs(np.arange(w) - cj).astype(np.float64)
    ri_max = di.max() if h > 1 else 1.0
    rj_max = dj.max() if w > 1 else 1.0
    si = di * (n_rings / ri_max) if h > 1 else di
    sj = dj * (n_rings / rj_max) if w > 1 else dj
    cheb = np.maximum(si[:, None], sj[None, :])
    return np.floor(cheb + 0.5).astype(np.int64)


@dataclass(frozen=True)
class RadialProfile:
    """Per-ring mean spectral amplitude of a center-shifted amplitude grid."""

    ring: np.ndarray
    mean_amplitude: np.ndarray
    count: np.ndarray

    def __post_init__(self):
        if not (len(self.ring) == len(self.mean_amplitude) == len(self.count)):
            raise ValueError("profile fields must have equal length")

    @property
    def n_rings(self) -> int:
        return len(self.ring)

    def to_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_csv_text())

    def to_csv_text(self) -> str:
        lines = ["ring,mean_amplitude,count"]
        for k, a, c in zip(self.ring, self.mean_amplitude, self.count):
            lines.append(f"{int(k)},{a:.12g},{int(c)}")
        return "\n".join(lines) + "\n"


def rapsd(amplitude: np.ndarray) -> RadialProfile:
    """Ring-averaged profile of a center-shifted amplitude grid."""
    amp = _check_2d(np.asarray(amplitude, dtype=np.float64), "amplitude")
    _check_finite(amp, "amplitude")
    h, w = amp.shape
    rings = ring_index_grid(h, w)
    n_rings = max(h, w) // 2 + 1
    counts = np.bincount(rings.ravel(), minlength=n_rings)
    sums = np.bincount(rings.ravel(), weights=amp.ravel(), minlength=n_rings)
    assert counts.sum() == h * w, "ring counts must partition the grid"
    assert (counts > 0).all(), "every ring must be populated by construction"
    return RadialProfile(
        ring=np.arange(n_rings),
        mean_amplitude=sums / counts,
        count=counts,
    )


def rapsd_of_image(img: np.ndarray) -> RadialProfile:
    """Profile of one single-channel image: shifted DFT amplitude, ring-averaged."""
    amp, _ = split_amplitude_phase(dft2_forward(img))
    return rapsd(center_shift(amp))


def mean_rapsd(images) -> RadialProfile:
    """Per-ring mean of the per-image profiles of equally sized images."""
    images = list(images)
    if not images:
        raise ValueError("mean_rapsd needs at least one image")
    first = np.asarray(images[0])
    profiles = []
    for i, img in enumerate(images):
        img = np.asarray(img)
        if img.shape != first.shape:
            raise ValueError(
                f"image {i} has shape {img.shape}, expected {first.shape}"
            )
        profiles.append(rapsd_of_image(img))
    mean_amp = np.mean([p.mean_amplitude for p in profiles], axis=0)
    return RadialProfile(
        ring=profiles[0].ring.copy(),
        mean_amplitude=mean_amp,
        count=profiles[0].count.copy(),
    )
