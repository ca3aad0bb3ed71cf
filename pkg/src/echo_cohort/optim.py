"""AdamW with decoupled weight decay and linear warmup/decay scheduling.

One optimizer instance owns a named set of parameter arrays and updates
them in place.  Moment state is keyed by parameter name, so parameters
can be any shapes as long as the names stay stable across steps.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

from .errors import TrainingError


def warmup_linear(step: int, warmup_steps: int, total_steps: int) -> float:
    """Schedule factor in [0, 1]: linear ramp up, then linear decay to 0.

    `step` is 1-based (the factor multiplies the lr of that step's update).
    """
    if total_steps < 1:
        raise TrainingError(f"total_steps must be positive, got {total_steps}")
    if not 0 <= warmup_steps <= total_steps:
        raise TrainingError(
            f"warmup_steps must lie in [0, total_steps], got {warmup_steps}"
        )
    if step < 1:
        raise TrainingError(f"step is 1-based, got {step}")
    if warmup_steps > 0 and step <= warmup_steps:
        return step / warmup_steps
    if total_steps == warmup_steps:
        return 1.0
    return max(0.0, (total_steps - step) / (total_steps - warmup_steps))


class AdamW:
    def __init__(
        self,
        params: Mapping[str, np.ndarray],
        lr: float,
        beta1: float = 0.9,
        beta2: float = 0.999,
        eps: float = 1e-8,
        weight_decay: float = 0.01,
    ):
        if lr <= 0:
            raise TrainingError(f"lr must be positive, got {lr}")
        self.params = dict(params)
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.weight_decay = weight_decay
        self.t = 0
        self._m = {k: np.zeros_like(v) for k, v in self.params.items()}
        self._v = {k: np.zeros_like(v) for k, v in self.params.items()}

    def step(self, grads: Mapping[str, np.ndarray], lr_factor: float = 1.0) -> None:
        """One update over every parameter present in `grads`.

        Weight decay is decoupled: applied directly to the parameter,
        scaled by the effective lr, never entering the moment estimates.
        """
        unknown = set(grads) - set(self.params)
        if unknown:
            raise TrainingError(f"gradient for unknown parameter {sorted(unknown)[0]!r}")
        self.t += 1
        lr_t = self.lr * lr_factor
        for name, g in grads.items():
            p = self.params[name]
            m = self._m[name]
            v = self._v[name]
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * np.square(g)
            m_hat = m / (1.0 - self.beta1**self.t)
            v_hat = v / (1.0 - self.beta2**self.t)
            p -= lr_t * (m_hat / (np.sqrt(v_hat) + self.eps))
            if self.weight_decay != 0.0:
                p -= lr_t * self.weight_decay * p
