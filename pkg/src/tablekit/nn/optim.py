"""AdamW with decoupled weight decay, and the warmup + cosine decay schedule."""

from __future__ import annotations

import math
from typing import Iterable, Optional

import numpy as np

from ..errors import InvalidSchedule
from .tensor import Tensor


class AdamW:
    """AdamW over named parameters.

    Weight decay is decoupled: theta <- theta - lr * (m_hat / (sqrt(v_hat)
    + eps) + wd * theta), so a zero-gradient step with decay scales the
    parameter by (1 - lr * wd) exactly. Moment buffers exist only for the
    parameters handed in, so frozen parameters cost no state.
    """

    def __init__(
        self,
        named_params: Iterable[tuple[str, Tensor]],
        betas: tuple[float, float] = (0.9, 0.999),
        eps: float = 1e-8,
        weight_decay: float = 0.01,
    ):
        self.params = list(named_params)
        self.beta1, self.beta2 = betas
        self.eps = eps
        self.weight_decay = weight_decay
        self.step_count = 0
        self.m = {name: np.zeros_like(p.data) for name, p in self.params}
        self.v = {name: np.zeros_like(p.data) for name, p in self.params}

    def zero_grad(self) -> None:
        for _, p in self.params:
            p.grad = None

    def step(self, lr: float) -> None:
        self.step_count += 1
        t = self.step_count
        bc1 = 1.0 - self.beta1**t
        bc2 = 1.0 - self.beta2**t
        for name, p in self.params:
            g = p.grad if p.grad is not None else np.zeros_like(p.data)
            m = self.m[name]
            v = self.v[name]
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * g * g
            update = (m / bc1) / (np.sqrt(v / bc2) + self.eps)
            if self.weight_decay:
                update = update + self.weight_decay * p.data
            p.data -= lr * update


def cosine_warmup_lr(step: int, warmup_steps: int, total_steps: int, peak_lr: float) -> float:
    """Linear ramp 0 -> peak over the warmup, cosine decay peak -> 0 at the end."""
    if total_steps <= 0 or warmup_steps < 0 or warmup_steps >= total_steps:
        raise InvalidSchedule(f"warmup_steps={warmup_steps} must be in [0, total_steps={total_steps})")
    if not 0 <= step <= total_steps:
        raise InvalidSchedule(f"step {step} outside [0, {total_steps}]")
    if warmup_steps > 0 and step <= warmup_steps:
        return peak_lr * step / warmup_steps
    progress = (step - warmup_steps) / (total_steps - warmup_steps)
    return peak_lr * 0.5 * (1.0 + math.cos(math.pi * progress))


class LrSchedule:
    """cosine_warmup_lr bound to a fixed (warmup, total, peak) triple."""

    def __init__(self, warmup_steps: int, total_steps: int, peak_lr: float):
        cosine_warmup_lr(0, warmup_steps, total_steps, peak_lr)  # validate now
        self.warmup_steps = warmup_steps
        self.total_steps = total_steps
        self.peak_lr = peak_lr

    def __call__(self, step: int) -> float:
        return cosine_warmup_lr(min(step, self.total_steps), self.warmup_steps, self.total_steps, self.peak_lr)
