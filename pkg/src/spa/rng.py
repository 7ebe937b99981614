"""Deterministic random streams.

Every random draw in this package flows through :class:`Rng`, which wraps a
counter-based Philox 4x64 bit generator.  The layers on top are fixed so that
streams can be reproduced from the written description alone:

* uniform doubles: the top 53 bits of a 64-bit word, mapped to ``(0, 1]`` via
  ``(bits + 1) * 2**-53``;
* standard normals: Box-Muller on uniform pairs,
  ``sqrt(-2 ln u1) * (cos, sin)(2 pi u2)``;
* k-of-n subset selection: a partial Fisher-Yates pass,
  ``j = i + floor(u * (n - i))`` (clamped to ``n - 1``), keeping the first
  ``k`` slots;
* sub-stream seeds: splitmix64 folding of FNV-1a hashes of string labels.

Identical seeds give identical streams on any platform with IEEE-754 doubles
and the same numpy build.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    """splitmix64 finalizer."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for byte in data:
        h ^= byte
        h = (h * 0x100000001B3) & _MASK64
    return h


def derive_seed(seed: int, *labels) -> int:
    """Derive a child seed from ``seed`` and a sequence of labels.

    Labels are stringified, hashed with FNV-1a, and folded into the running
    state with one splitmix64 round each.  The scheme is order-sensitive.
    """
    z = seed & _MASK64
    for label in labels:
        t = _fnv1a64(str(label).encode("utf-8"))
        z = _mix64((z ^ t) + _GOLDEN)
    return z


class Rng:
    """Seeded stream of uniforms, normals, integers, and subset draws."""

    def __init__(self, seed: int):
        self.seed = seed & _MASK64
        self._gen = np.random.Generator(np.random.Philox(key=self.seed))

    def spawn(self, *labels) -> "Rng":
        """Independent child stream named by ``labels``."""
        return Rng(derive_seed(self.seed, *labels))

    def uniforms(self, n: int) -> np.ndarray:
        """n doubles uniform on (0, 1]."""
        bits = self._gen.integers(0, 1 << 53, size=n, dtype=np.uint64)
        return (bits.astype(np.float64) + 1.0) * 2.0**-53

    def uniform(self, low: float, high: float, shape=None) -> np.ndarray | float:
        n = 1 if shape is None else int(np.prod(shape))
        u = low + (high - low) * self.uniforms(n)
        if shape is None:
            return float(u[0])
        return u.reshape(shape)

    def normals(self, shape) -> np.ndarray:
        """Standard normals via Box-Muller."""
        shape = (shape,) if np.isscalar(shape) else tuple(shape)
        n = int(np.prod(shape)) if shape else 1
        m = (n + 1) // 2
        u1 = self.uniforms(m)
        u2 = self.uniforms(m)
        r = np.sqrt(-2.0 * np.log(u1))
        theta = 2.0 * np.pi * u2
        z = np.concatenate([r * np.cos(theta), r * np.sin(theta)])[:n]
        return z.reshape(shape)

    def randint(self, low: int, high: int) -> int:
        """One integer uniform on [low, high)."""
        if high <= low:
            raise ValueError(f"empty integer range [{low}, {high})")
        u = self.uniforms(1)[0]
        return min(low + int(u * (high - low)), high - 1)

    def choose(self, n: int, k: int) -> np.ndarray:
        """k distinct indices from range(n), uniform without replacement."""
        if not 0 <= k <= n:
            raise ValueError(f"cannot choose {k} of {n}")
        idx = np.arange(n)
        if k == 0:
            return idx[:0]
        u = self.uniforms(k)
        for i in range(k):
            j = min(i + int(u[i] * (n - i)), n - 1)
            idx[i], idx[j] = idx[j], idx[i]
        return idx[:k].copy()

    def shuffled(self, n: int) -> np.ndarray:
        """A full permutation of range(n) (Fisher-Yates)."""
        if n == 0:
            return np.arange(0)
        perm = self.choose(n, n)
        return perm
