"""Tabulated data behind the three Q-function figures."""
import math

import numpy as np

from .qfuncs import q1, q2, q_d

S_GRID = np.round(np.arange(0, 401) * 0.1, 10)
FIGURES = ("fig1", "fig2", "fig3")


def figure_data(name):
    """Return ``(provenance, columns, rows)`` for ``fig1``, ``fig2`` or ``fig3``.

    Rows are lists of floats; a value whose series did not converge is NaN.
    """
    rows = []
    if name == "fig1":
        cols = ["s", "Q1", "Q2", "Q1+Q2"]
        for s in S_GRID:
            a, b = q1(s, 0.5), q2(s, 0.5)
            rows.append([float(s), a, b, a + b])
        prov = "fig1 sigma=0.5 s=0:40:0.1"
    elif name == "fig2":
        sig = (1.0, 0.5, 0.25)
        cols = ["s"] + [f"sum(sigma={x:g})" for x in sig]
        for s in S_GRID:
            rows.append([float(s)] + [q1(s, x) + q2(s, x) for x in sig])
        prov = "fig2 sigma=1,0.5,0.25 s=0:40:0.1"
    elif name == "fig3":
        cols = ["s"] + [f"Q(d={d})" for d in range(1, 6)]
        for s in S_GRID:
            row = [float(s)]
            for d in range(1, 6):
                r = q_d(d, float(s), 0.5)
                row.append(r.value if r.converged else math.nan)
            rows.append(row)
        prov = "fig3 sigma=0.5 d=1..5 s=0:40:0.1"
    else:
        raise ValueError(f"unknown figure {name!r}")
    return prov, cols, rows


def sign_changes(values):
    v = [x for x in values if x != 0.0 and not math.isnan(x)]
    return sum(1 for a, b in zip(v, v[1:]) if (a > 0) != (b > 0))
