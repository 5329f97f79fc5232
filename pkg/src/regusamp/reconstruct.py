"""Localized reconstruction of bandlimited functions from equispaced samples.

The reconstruction operator sums 2m windowed-sinc terms around the target
point: for t in the grid cell (k/L, (k+1)/L) with k = floor(L*t),

    (R f)(t) = sum_{l=k-m+1}^{k+m} f(l/L) * psi(t - l/L),

and R interpolates the samples exactly on (1/L)*Z.  Sample sets carry an
optional bounded perturbation so clean and noisy evaluations share one set
of function values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .kernel import KernelEval, psi, sinc
from .windows import SamplingConfig, WindowKind, WindowSpec


class IndexOutOfRange(IndexError):
    """The 2m-sample window around the target point is not covered."""


class TestFunctionKind(str, Enum):
    __test__ = False  # not a pytest collection target

    SINC_BAND = "sincband"
    SINC_SQ_BAND = "sincsqband"
    CUSTOM = "custom"


@dataclass(frozen=True)
class TestFunction:
    """Bandlimited test signal with bandwidth parameter delta.

    sincband:   f(t) = sqrt(2*delta) * sinc(2*delta*pi*t), unit L2 norm,
                flat spectrum on [-delta, delta].
    sincsqband: f(t) = delta * sinc(delta*pi*t)^2, triangular spectrum on
                [-delta, delta], L2 norm sqrt(2*delta/3).
    custom:     any callable plus its L2 norm (needed for bound scaling).
    """

    __test__ = False  # not a pytest collection target

    kind: TestFunctionKind
    delta: float
    func: object = None
    norm: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", TestFunctionKind(self.kind))
        if self.delta <= 0:
            raise ValueError(f"delta must be > 0, got {self.delta!r}")
        if self.kind is TestFunctionKind.CUSTOM and self.func is None:
            raise ValueError("custom test function needs a callable")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind is TestFunctionKind.SINC_BAND:
            out = math.sqrt(2.0 * self.delta) * sinc(2.0 * self.delta * math.pi * t)
        elif self.kind is TestFunctionKind.SINC_SQ_BAND:
            out = self.delta * np.asarray(sinc(self.delta * math.pi * t)) ** 2
        else:
            out = np.asarray(self.func(t), dtype=float)
        out = np.asarray(out)
        return out if out.ndim else float(out)

    @property
    def l2_norm(self) -> float:
        if self.kind is TestFunctionKind.SINC_BAND:
            return 1.0
        if self.kind is TestFunctionKind.SINC_SQ_BAND:
            return math.sqrt(2.0 * self.delta / 3.0)
        if self.norm is None:
            raise ValueError("custom test function has no recorded L2 norm")
        return self.norm


@dataclass
class SampleSet:
    """Equispaced samples f(l/L) for l = index_lo..index_hi.

    ``noise`` stores bounded perturbations separately from the clean values,
    so both variants are evaluable from one set.  Arrays are frozen after
    construction; ``reads`` counts sample-value accesses (a diagnostic for
    the 2m-locality contract, not synchronized across threads).
    """

    cfg: SamplingConfig
    index_lo: int
    index_hi: int
    values: np.ndarray
    noise: np.ndarray | None = None
    noise_eps: float = 0.0
    reads: int = field(default=0, compare=False)

    def __post_init__(self):
        n = self.index_hi - self.index_lo + 1
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (n,):
            raise ValueError(
                f"values must have length {n} for index range "
                f"[{self.index_lo}, {self.index_hi}], got shape {self.values.shape}"
            )
        self.values.flags.writeable = False
        if self.noise is not None:
            self.noise = np.asarray(self.noise, dtype=float)
            if self.noise.shape != (n,):
                raise ValueError("noise must align with the sample range")
            if self.noise_eps <= 0:
                raise ValueError("noise present but noise_eps not positive")
            if np.max(np.abs(self.noise)) > self.noise_eps:
                raise ValueError("stored perturbations exceed the declared bound")
            self.noise.flags.writeable = False
        elif self.noise_eps != 0.0:
            raise ValueError("noise_eps set without stored perturbations")

    def __len__(self):
        return self.index_hi - self.index_lo + 1

    def take(self, indices, noisy: bool = False) -> np.ndarray:
        """Sample values at the given absolute indices (counts reads)."""
        idx = np.asarray(indices)
        if idx.size and (idx.min() < self.index_lo or idx.max() > self.index_hi):
            raise IndexOutOfRange(
                f"indices [{idx.min()}, {idx.max()}] outside sample range "
                f"[{self.index_lo}, {self.index_hi}]"
            )
        self.reads += idx.size
        out = self.values[idx - self.index_lo]
        if noisy:
            if self.noise is None:
                raise ValueError("sample set carries no perturbations")
            out = out + self.noise[idx - self.index_lo]
        return out


def sample(f: TestFunction, cfg: SamplingConfig, lo: int, hi: int) -> SampleSet:
    """Clean samples f(l/L) for l = lo..hi."""
    if lo > hi:
        raise ValueError(f"need lo <= hi, got {lo} > {hi}")
    ell = np.arange(lo, hi + 1)
    return SampleSet(cfg, int(lo), int(hi), np.asarray(f(ell / cfg.L), dtype=float))


def _draw_noise(n: int, eps: float, seed) -> np.ndarray:
    """n i.i.d. uniform draws on (-eps, eps) from a PCG64 stream.

    ``seed`` may be an int or a numpy SeedSequence; the same seed yields the
    same stream on every platform.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    return eps * (2.0 * rng.random(n) - 1.0)


def perturb(ss: SampleSet, eps: float, seed: int) -> SampleSet:
    """New SampleSet sharing the clean values, with seeded uniform noise."""
    if eps <= 0:
        raise ValueError(f"eps must be > 0, got {eps!r}")
    noise = _draw_noise(len(ss), eps, seed)
    return SampleSet(ss.cfg, ss.index_lo, ss.index_hi, ss.values, noise, eps)


def _window_indices(cfg: SamplingConfig, t: float) -> tuple[int, int]:
    """Absolute index range {k-m+1, ..., k+m} with k = floor(L*t)."""
    k = math.floor(cfg.L * t)
    return k - cfg.m + 1, k + cfg.m


def reconstruct_at(ss: SampleSet, w: WindowSpec, t: float, use_noisy: bool = False,
                   kahan: bool = False) -> float:
    """Localized reconstruction at a single point from exactly 2m samples.

    On-grid points t = j/L short-circuit to the sample value, which realizes
    the interpolation property exactly and avoids the ambiguity of assigning
    a grid point to one of its two adjacent cells.  Off-grid, the 2m terms
    are accumulated from the window edges inward (smallest kernel magnitude
    first); ``kahan`` adds compensated summation on top.
    """
    cfg = ss.cfg
    Lt = cfg.L * t
    j = round(Lt)
    if Lt == j:
        if not ss.index_lo <= j <= ss.index_hi:
            raise IndexOutOfRange(
                f"t = {t!r} needs sample index {j}; sample set covers "
                f"[{ss.index_lo}, {ss.index_hi}]"
            )
        return float(ss.take(np.array([j]), use_noisy)[0])
    lo, hi = _window_indices(cfg, t)
    if lo < ss.index_lo or hi > ss.index_hi:
        raise IndexOutOfRange(
            f"t = {t!r} requires samples for indices [{lo}, {hi}]; sample set "
            f"covers [{ss.index_lo}, {ss.index_hi}]"
        )
    ell = np.arange(lo, hi + 1)
    vals = ss.take(ell, use_noisy)
    terms = vals * psi(KernelEval(w, cfg), t - ell / cfg.L)
    order = np.argsort(-np.abs(t - ell / cfg.L))  # edges first
    terms = terms[order]
    if not kahan:
        total = 0.0
        for v in terms:
            total += v
        return float(total)
    total = 0.0
    carry = 0.0
    for v in terms:
        y = v - carry
        tmp = total + y
        carry = (tmp - total) - y
        total = tmp
    return float(total)


def classical_truncated(ss: SampleSet, t: float, use_noisy: bool = False) -> float:
    """Truncated classical series: reconstruction with the rect window.

    The baseline formula; its uniform error decays only like 1/sqrt(m).
    """
    return reconstruct_at(ss, WindowSpec(WindowKind.RECT), t, use_noisy)


def kernel_matrix(cfg: SamplingConfig, w: WindowSpec, t):
    """Per-point sample indices and kernel weights for a batch of targets.

    Returns (idx, weights, ongrid, j): for row i the reconstruction is
    sum(values[idx[i]] * weights[i]); rows at exact grid points are encoded
    as a single unit weight on index j[i].  Shared by the grid evaluator and
    the perturbation trials, which reuse one matrix across noise draws.
    """
    t = np.asarray(t, dtype=float)
    if t.ndim != 1:
        raise ValueError("t must be one-dimensional")
    L, m = cfg.L, cfg.m
    Lt = L * t
    j = np.rint(Lt)
    ongrid = Lt == j
    j = j.astype(np.int64)
    k = np.floor(Lt).astype(np.int64)
    offs = np.arange(-m + 1, m + 1, dtype=np.int64)
    idx = k[:, None] + offs[None, :]
    x = t[:, None] - idx / L
    weights = np.asarray(psi(KernelEval(w, cfg), x))
    if np.any(ongrid):
        idx[ongrid] = j[ongrid, None]
        unit = np.zeros(2 * m)
        unit[0] = 1.0
        weights[ongrid] = unit
    return idx, weights, ongrid, j


def reconstruct_grid(ss: SampleSet, w: WindowSpec, t, use_noisy: bool = False) -> np.ndarray:
    """Vectorized reconstruct_at over a 1-D array of targets."""
    idx, weights, _, _ = kernel_matrix(ss.cfg, w, t)
    if idx.size:
        lo, hi = int(idx.min()), int(idx.max())
        if lo < ss.index_lo or hi > ss.index_hi:
            raise IndexOutOfRange(
                f"targets require samples for indices [{lo}, {hi}]; sample set "
                f"covers [{ss.index_lo}, {ss.index_hi}]"
            )
    vals = ss.take(idx, use_noisy)
    return np.einsum("ij,ij->i", vals, weights)


def save_samples(ss: SampleSet, path) -> None:
    """Write the clean samples as CSV with header ``index,value``."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write("index,value\n")
        for ell, val in zip(range(ss.index_lo, ss.index_hi + 1), ss.values):
            fh.write(f"{ell},{val:.17g}\n")


def load_samples(path, cfg: SamplingConfig) -> SampleSet:
    """Read an ``index,value`` CSV into a SampleSet.

    Indices must form a contiguous ascending range.
    """
    indices = []
    values = []
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip()
        if header != "index,value":
            raise ValueError(f"expected header 'index,value', got {header!r}")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            s_idx, s_val = line.split(",")
            indices.append(int(s_idx))
            values.append(float(s_val))
    if not indices:
        raise ValueError("sample file contains no rows")
    lo, hi = indices[0], indices[-1]
    if indices != list(range(lo, hi + 1)):
        raise ValueError("sample indices must be contiguous and ascending")
    return SampleSet(cfg, lo, hi, np.array(values))
