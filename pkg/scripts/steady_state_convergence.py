#!/usr/bin/env python3
"""Integrate the collective-dissipation master equation from the canonical
initial states and watch the trace distance to the matching closed-form
steady state decay.
"""

import numpy as np

from qthermo import (
    DensityMatrix,
    ModelParams,
    analytic_steady_state,
    effective_c,
    evolve,
    pure_state,
    trace_distance,
)
from qthermo.dissipation import KET_EE, KET_GG, PSI_MINUS

CHECKPOINTS = (1.0, 5.0, 10.0, 25.0, 50.0)


def main():
    params = ModelParams()
    initial_states = {
        "|gg><gg|": pure_state(KET_GG, dims=(2, 2)),
        "|ee><ee|": pure_state(KET_EE, dims=(2, 2)),
        "I/4": DensityMatrix(np.eye(4, dtype=complex) / 4.0, dims=(2, 2)),
        "singlet": pure_state(PSI_MINUS, dims=(2, 2)),
    }
    header = "".join(f"  t={t:<6g}" for t in CHECKPOINTS)
    print(f"{'initial state':14s}  c    {header}")
    for label, rho0 in initial_states.items():
        c = effective_c(rho0)
        target = analytic_steady_state(c, params)
        trajectory = evolve(rho0, params, dt=0.005, t_max=max(CHECKPOINTS))
        line = f"{label:14s} {c:.2f} "
        for t in CHECKPOINTS:
            index = min(int(round(t / 0.005)), len(trajectory.states) - 1)
            line += f" {trace_distance(trajectory.states[index], target):8.1e}"
        print(line)


if __name__ == "__main__":
    main()
