"""Fixed-step fourth-order Runge-Kutta integration of autonomous fields."""

# Standard Python Libraries
from collections.abc import Callable
import logging
from typing import Any

# Third-Party Libraries
import numpy as np

from .errors import DivergenceError

logger = logging.getLogger(__name__)

METHOD = "rk4"


class Trajectory:
    """States of an integration on a uniform time grid.

    ``states[s]`` is the state at ``times[s] = s · dt``.
    """

    def __init__(self, times: np.ndarray, states: np.ndarray, dt: float, method: str = METHOD):
        if times.ndim != 1 or states.ndim != 2 or states.shape[0] != times.shape[0]:
            raise ValueError(
                f"Trajectory shapes do not match: times {times.shape}, states {states.shape}"
            )
        self.times = times
        self.states = states
        self.dt = dt
        self.method = method

    @property
    def steps(self) -> int:
        """Number of integration steps."""
        return len(self.times) - 1

    @property
    def final(self) -> np.ndarray:
        """State at the last time."""
        return self.states[-1]

    def __len__(self) -> int:
        return len(self.times)

    def __repr__(self) -> str:
        return f"Trajectory(steps={self.steps}, dt={self.dt}, method={self.method})"


def rk4_step(F: Callable[[np.ndarray], np.ndarray], x: np.ndarray, dt: float) -> np.ndarray:
    """Advance one classical Runge-Kutta step."""
    k1 = F(x)
    k2 = F(x + 0.5 * dt * k1)
    k3 = F(x + 0.5 * dt * k2)
    k4 = F(x + dt * k3)
    return x + dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0


def integrate(F: Callable[[np.ndarray], Any], x0: Any, dt: float, steps: int) -> Trajectory:
    """Integrate ``x' = F(x)`` from x0 with a fixed step.

    Raises
    ------
    ValueError
        If dt is not positive or steps is smaller than 1.
    DivergenceError
        If a state stops being finite; the error carries the step index.

    """
    if not dt > 0:
        raise ValueError(f"Time step must be positive, got {dt}")
    if steps < 1:
        raise ValueError(f"Need at least one step, got {steps}")
    x = np.array(x0, dtype=float).reshape(-1)
    if not np.all(np.isfinite(x)):
        raise DivergenceError("Initial state is not finite", step=0)

    def field(state: np.ndarray) -> np.ndarray:
        return np.asarray(F(state), dtype=float)

    states = np.empty((steps + 1, x.size))
    states[0] = x
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(1, steps + 1):
            x = rk4_step(field, x, dt)
            if not np.all(np.isfinite(x)):
                raise DivergenceError(
                    f"State is not finite after step {step} (t={step * dt:g})", step=step
                )
            states[step] = x
    logger.debug(f"Integrated {steps} steps of size {dt}")
    return Trajectory(np.arange(steps + 1) * dt, states, dt)
