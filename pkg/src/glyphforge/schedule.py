"""Forward diffusion: variance schedule, noising, and x0 recovery.

Timesteps are 1-based (t in [1, T]); index 0 of the stored arrays corresponds
to t=1. alpha_bar(0) is defined as 1 so that a final denoising step lands on
the clean image.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import torch

from .errors import ConfigError

# Estimates of x0 recovered mid-sampling are clamped to this range before
# reuse; unbounded estimates at high t destabilize subsequence sampling.
X0_CLIP = 1.5


@dataclass(frozen=True)
class NoiseSchedule:
    betas: np.ndarray  # (T,) float64, strictly increasing in (0, 1)
    beta_start: float
    beta_end: float

    def __post_init__(self):
        betas = np.asarray(self.betas, dtype=np.float64)
        if betas.ndim != 1 or betas.size < 1:
            raise ConfigError("betas must be a non-empty 1-d sequence")
        if betas[0] <= 0.0 or betas[-1] >= 1.0:
            raise ConfigError("betas must lie strictly inside (0, 1)")
        if betas.size > 1 and not np.all(np.diff(betas) > 0):
            raise ConfigError("betas must be strictly increasing")
        object.__setattr__(self, "betas", betas)
        # cumulative product in log space for stability at large T
        log_alphas = np.log1p(-betas)
        object.__setattr__(self, "_alpha_bars", np.exp(np.cumsum(log_alphas)))

    @property
    def T(self) -> int:
        return int(self.betas.size)

    @property
    def alphas(self) -> np.ndarray:
        return 1.0 - self.betas

    @property
    def alpha_bars(self) -> np.ndarray:
        return self._alpha_bars

    def beta(self, t: int) -> float:
        self._check_t(t)
        return float(self.betas[t - 1])

    def alpha_bar(self, t: int) -> float:
        """alpha_bar(t) with the alpha_bar(0) := 1 convention."""
        if t == 0:
            return 1.0
        self._check_t(t)
        return float(self._alpha_bars[t - 1])

    def _check_t(self, t) -> None:
        t = np.asarray(t)
        if np.any(t < 1) or np.any(t > self.T):
            raise ConfigError(f"timestep out of range [1, {self.T}]")

    def gather_alpha_bar(self, t: torch.Tensor, ndim: int) -> torch.Tensor:
        """Per-sample alpha_bar broadcast to an ndim-shaped batch tensor."""
        self._check_t(t.detach().cpu().numpy())
        table = torch.from_numpy(self._alpha_bars).to(torch.float64)
        vals = table[t.long() - 1]
        return vals.reshape(-1, *([1] * (ndim - 1)))


def make_linear_schedule(T: int, beta_start: float = 1e-4, beta_end: float = 0.02) -> NoiseSchedule:
    """Linearly spaced betas inclusive of both endpoints."""
    if T < 1:
        raise ConfigError(f"T must be >= 1, got {T}")
    if not (0.0 < beta_start < beta_end < 1.0):
        raise ConfigError(
            f"need 0 < beta_start < beta_end < 1, got ({beta_start}, {beta_end})"
        )
    if T == 1:
        betas = np.array([beta_start], dtype=np.float64)
    else:
        betas = np.linspace(beta_start, beta_end, T, dtype=np.float64)
    return NoiseSchedule(betas=betas, beta_start=beta_start, beta_end=beta_end)


def q_sample(
    x0: torch.Tensor, t: torch.Tensor, eps: torch.Tensor, schedule: NoiseSchedule
) -> torch.Tensor:
    """Noised sample x_t = sqrt(a_bar_t) x0 + sqrt(1 - a_bar_t) eps."""
    if eps.shape != x0.shape:
        raise ConfigError(f"eps shape {tuple(eps.shape)} != x0 shape {tuple(x0.shape)}")
    ab = schedule.gather_alpha_bar(t, x0.ndim).to(x0.dtype)
    return torch.sqrt(ab) * x0 + torch.sqrt(1.0 - ab) * eps


def predict_x0(
    x_t: torch.Tensor,
    t: torch.Tensor,
    eps_pred: torch.Tensor,
    schedule: NoiseSchedule,
    clip: float | None = X0_CLIP,
) -> torch.Tensor:
    """Invert q_sample: (x_t - sqrt(1 - a_bar_t) eps) / sqrt(a_bar_t).

    Computed in float64 (the division by sqrt(a_bar_t) amplifies rounding
    error near t = T) and cast back to the input dtype.
    """
    ab = schedule.gather_alpha_bar(t, x_t.ndim)
    x0 = (x_t.double() - torch.sqrt(1.0 - ab) * eps_pred.double()) / torch.sqrt(ab)
    if clip is not None:
        x0 = x0.clamp(-clip, clip)
    return x0.to(x_t.dtype)
