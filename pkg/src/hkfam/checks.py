"""Verification grids behind ``hk check``.

Each check returns a :class:`CheckReport`; a suite is a list of checks.
"""
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import transforms as tr
from .coeffs import ConstantPotential, FamilyIndex, Flat, Table
from .figures import figure_data, sign_changes
from .green import (CutoffParameter, GreenExpansion, dimension_shift_check, expansion_terms,
                    green, green_closed_form, green_regularized, taylor_kernel_transform)
from .hankel import verify_g19
from .psiphi import phi, psi, radial_laplacian
from .qfuncs import q1, q2, q_d, q_sum_oracle, t_appendix, t_ode_residual, t_quadrature
from .specfun import harmonic


@dataclass
class CheckReport:
    check_name: str
    grid: list
    residuals: list
    tolerance: float
    passed: bool = False

    def __post_init__(self):
        self.residuals = [float(r) for r in self.residuals]
        self.passed = bool(self.residuals) and max(self.residuals) <= self.tolerance

    @property
    def max_residual(self):
        return max(self.residuals) if self.residuals else math.nan

    def to_dict(self):
        out = asdict(self)
        out["grid"] = [list(g) if isinstance(g, (tuple, list)) else g for g in self.grid]
        out["max_residual"] = self.max_residual
        return out


def _rel(a, b, scale):
    return abs(a - b) / max(scale, 1e-300)


def _provider_name(p):
    return p.kind if not isinstance(p, ConstantPotential) else f"constpot:{p.v:g}"


# -- hankel ------------------------------------------------------------------

def check_g19():
    grid, res = [], []
    for lam in (0.5, 1.0, 2.0, 5.0, 10.0):
        for tau in (0.05, 0.1, 0.3, 0.5, 1.0):
            grid.append((lam, tau))
            res.append(verify_g19(lam, tau))
    return [CheckReport("g19", grid, res, 1e-6)]


# -- chains ------------------------------------------------------------------

CHAIN_PROVIDERS = (Flat(), ConstantPotential(0.7))
INT_INDICES = tuple(range(-4, 4))
HALF_INDICES = tuple(FamilyIndex(t) for t in range(-7, 6, 2))
OMEGAS = (0.3, 1.0, 3.0)


def _fd_omega(f, w):
    h = 1e-5 * w
    return (f(w + h) - f(w - h)) / (2.0 * h)


def check_psi_omega_chain():
    grid, res = [], []
    for p in CHAIN_PROVIDERS:
        for idx in INT_INDICES + HALF_INDICES:
            ix = FamilyIndex.of(idx)
            for w in OMEGAS:
                lhs = -2.0 * _fd_omega(lambda x: psi(p, ix, x).value, w)
                rhs = psi(p, ix.shift(1), w).value
                scale = max(abs(rhs), abs(psi(p, ix, w).value))
                grid.append((_provider_name(p), ix.value, w))
                res.append(_rel(lhs, rhs, scale))
    return [CheckReport("psi omega chain", grid, res, 1e-6)]


def check_phi_omega_chain():
    grid, res = [], []
    for p in CHAIN_PROVIDERS:
        for k in INT_INDICES:
            for w in OMEGAS:
                lhs = -2.0 * _fd_omega(lambda x: phi(p, k, x).value, w)
                rhs = phi(p, k + 1, w).value
                scale = max(abs(rhs), abs(phi(p, k, w).value))
                grid.append((_provider_name(p), k, w))
                res.append(_rel(lhs, rhs, scale))
    return [CheckReport("phi omega chain", grid, res, 1e-6)]


def _operator(f, r, d, v):
    """(-Laplacian - v) f at radius r."""
    return -radial_laplacian(f, r, d) - v * f(r)


def check_laplacian_chain():
    grid, res = [], []
    for p in CHAIN_PROVIDERS:
        v = p.potential()
        for d in range(1, 6):
            for idx in INT_INDICES + HALF_INDICES:
                ix = FamilyIndex.of(idx)
                for r in (0.6, 1.0, 1.6):
                    def f(x):
                        return psi(p, ix, 0.5 * x * x).value
                    lhs = _operator(f, r, d, v)
                    rhs = (0.5 * d - ix.value - 1.0) * psi(p, ix.shift(1), 0.5 * r * r).value
                    scale = max(abs(rhs), abs(f(r)))
                    grid.append((_provider_name(p), d, ix.value, r))
                    res.append(_rel(lhs, rhs, scale))
    return [CheckReport("laplacian chain", grid, res, 1e-5)]


def check_even_annihilation():
    grid, res = [], []
    for p in CHAIN_PROVIDERS:
        v = p.potential()
        for d in (2, 4):
            for r in np.linspace(0.5, 2.0, 7):
                r = float(r)

                def f(x):
                    return psi(p, d // 2 - 1, 0.5 * x * x).value
                grid.append((_provider_name(p), d, r))
                res.append(abs(_operator(f, r, d, v)) / max(abs(f(r)), 1.0))
    return [CheckReport("even-d kernel annihilation", grid, res, 1e-8)]


def check_odd_fundamental():
    grid, closed, lap = [], [], []
    norm = (4.0 * math.pi) ** -1.5
    for r in np.linspace(0.5, 2.0, 7):
        r = float(r)

        def f(x):
            return norm * psi(Flat(), 0.5, 0.5 * x * x).value
        grid.append((3, r))
        closed.append(_rel(f(r), 1.0 / (4.0 * math.pi * r), 1.0 / (4.0 * math.pi * r)))
        lap.append(abs(radial_laplacian(f, r, 3)))
    return [CheckReport("odd-d fundamental solution closed form", grid, closed, 1e-14),
            CheckReport("odd-d fundamental solution harmonic", grid, lap, 1e-8)]


def check_phi_ladder():
    """(-Laplacian - v)(Phi_{d/2-k-1} + H_k Psi_{d/2-k-1}) = k (Phi_{d/2-k} + H_{k-1} Psi_{d/2-k})."""
    reports = []
    for p, tol in ((Flat(), 1e-7), (ConstantPotential(0.7), 1e-5)):
        grid, res = [], []
        v = p.potential()
        for d in (2, 4):
            h = d // 2
            for k in range(0, 4):
                for r in (0.6, 1.0, 1.6):
                    def f(x):
                        w = 0.5 * x * x
                        q = h - k - 1
                        return phi(p, q, w).value + harmonic(k) * psi(p, q, w).value
                    lhs = _operator(f, r, d, v)
                    w = 0.5 * r * r
                    if k == 0:
                        rhs = -psi(p, h, w).value
                    else:
                        rhs = k * (phi(p, h - k, w).value + harmonic(k - 1) * psi(p, h - k, w).value)
                    scale = max(abs(rhs), abs(f(r)), 1.0)
                    grid.append((d, k, r))
                    res.append(_rel(lhs, rhs, scale))
        reports.append(CheckReport(f"phi ladder {_provider_name(p)}", grid, res, tol))
    return reports


# -- theorems ----------------------------------------------------------------

ODD_POINTS = ((Flat(), 1, 1.0, 0.1, 0.2, 1e-5),
              (Flat(), 3, 1.0, 0.1, 0.5, 1e-5),
              (ConstantPotential(0.5), 1, 2.0, 0.05, 0.3, 1e-4))
EVEN_POINTS = ((Flat(), 2, 1.0, 0.1, 0.3, 1e-5),
               (ConstantPotential(0.4), 2, 1.5, 0.05, 0.2, 1e-4),
               (Flat(), 4, 1.0, 0.1, 0.3, 1e-5))


def check_theorem_odd():
    out = []
    for p, d, m2, tau, w, tol in ODD_POINTS:
        r = tr.verify_theorem_odd(p, d, m2, tau, w)
        out.append(CheckReport(f"odd transform {_provider_name(p)} d={d}",
                               [(d, m2, tau, w)], [r], tol))
    return out


def check_theorem_even():
    out = []
    for p, d, m2, tau, w, tol in EVEN_POINTS:
        name = f"{_provider_name(p)} d={d}"
        r = tr.verify_theorem_even(p, d, m2, tau, w)
        pt = [(d, m2, tau, w)]
        out.append(CheckReport(f"even transform, subtracted kernel, {name}", pt, [r.theorem3], tol))
        out.append(CheckReport(f"even transform, full kernel, {name}", pt, [r.theorem5], tol))
        om = tr.verify_theorem_omega(p, d, m2, tau, w)
        out.append(CheckReport(f"even transform, Omega piece, {name}", pt, [om], tol))
    grid, res = [], []
    for p, d, m2, tau, w, _ in EVEN_POINTS:
        c = tr.TransformCoefficients("even", m2, d)
        f3 = tr.IntegrandAssembly(c, p, w, kind="theorem3")
        f4 = tr.IntegrandAssembly(c, p, w, kind="theorem4")
        f5 = tr.IntegrandAssembly(c, p, w, kind="theorem5")
        for s in (0.01, 0.3, 1.0, 4.0, 20.0, 150.0, 2000.0):
            grid.append((_provider_name(p), d, s))
            res.append(abs(f5(s) - f3(s) - f4(s)))
    out.append(CheckReport("even integrand additivity", grid, res, 1e-12))
    return out


def check_late_time():
    pts = ((Flat(), 2, 1.0, 5, 1e-12), (Table([1.0, 0.5, 0.1]), 2, 0.7, 4, 1e-10),
           (Flat(), 4, 1.0, 5, 1e-12), (ConstantPotential(0.3), 2, 0.5, 5, 1e-10),
           (ConstantPotential(0.3), 4, 0.5, 5, 1e-10))
    out = []
    for p, d, w, n, tol in pts:
        r = tr.verify_late_time_split(p, d, w, n)
        out.append(CheckReport(f"late-time split {_provider_name(p)} d={d}", [(d, w, n)], [r], tol))
    return out


# -- green -------------------------------------------------------------------

def check_green_closed_forms():
    out = []
    for d in (1, 2, 3, 4, 5):
        grid, res = [], []
        for m2 in (0.5, 1.0, 2.0):
            for mr in np.linspace(0.2, 2.0, 7):
                sigma = 0.5 * float(mr) ** 2 / m2
                g = green(GreenExpansion(d, m2), sigma).value
                c = green_closed_form(d, m2, sigma)
                grid.append((d, m2, float(mr)))
                res.append(_rel(g, c, abs(c)))
        out.append(CheckReport(f"green closed form d={d}", grid, res, 1e-8))
    grid, res = [], []
    for d in (1, 2, 3, 4):
        for sigma in (0.1, 0.5, 1.5):
            g = green(GreenExpansion(d, 1.5, ConstantPotential(0.5)), sigma).value
            c = green(GreenExpansion(d, 1.0), sigma).value
            grid.append((d, sigma))
            res.append(_rel(g, c, abs(c)))
    out.append(CheckReport("green constant potential mass shift", grid, res, 1e-8))
    return out


def check_green_structure():
    out = []
    # defining equation (-Laplacian + m2) G = 0 off the diagonal
    grid, res = [], []
    for r in np.linspace(0.5, 2.0, 7):
        r = float(r)

        def f(x):
            return green(GreenExpansion(3, 1.0), 0.5 * x * x).value
        grid.append((3, r))
        res.append(abs(-radial_laplacian(f, r, 3) + f(r)) / abs(f(r)))
    out.append(CheckReport("green defining equation d=3", grid, res, 1e-5))
    # leading coefficients of the odd expansion: b_1 = 1 and c_0 = sqrt(pi/m2)
    grid, res = [], []
    for m2 in (0.5, 1.0, 2.0):
        terms = expansion_terms(GreenExpansion(1, m2), 0.5, n_bands=1)
        b1 = terms[0].coef * m2 ** terms[0].expo
        c0 = terms[1].coef * m2 ** terms[1].expo
        grid.append((m2,))
        res.append(max(abs(b1 - 1.0), abs(c0 - math.sqrt(math.pi / m2))))
    out.append(CheckReport("green seed coefficients", grid, res, 1e-14))
    # cut-off regularization
    exp = GreenExpansion(3, 1.0)
    grid = [(0.0, 10.0), (0.5, 1000.0), (0.5, 0.5)]
    res = [abs(green_regularized(exp, 0.0, CutoffParameter(10.0)).value - green(exp, 0.005).value),
           abs(green_regularized(exp, 0.5, CutoffParameter(1e3)).value - green(exp, 0.5).value),
           abs(green_regularized(exp, 0.5, CutoffParameter(0.5)).value - green(exp, 2.0).value)]
    out.append(CheckReport("green cut-off", grid, res, 1e-15))
    # Taylor kernel: C = tau gives -d/dm2 of the Yukawa form
    grid, res = [], []
    for m2 in (0.5, 1.0, 2.0):
        m = math.sqrt(m2)
        closed = math.exp(-m) / (8.0 * math.pi * m)
        t = taylor_kernel_transform(GreenExpansion(3, m2), [0.0, 1.0], 0.5).value
        grid.append((m2,))
        res.append(_rel(t, closed, closed))
    out.append(CheckReport("taylor kernel transform d=3", grid, res, 1e-7))
    return out


def check_dimshift():
    pts = ((1, 2, 1.0, 0.5), (2, 1, 1.0, 0.5), (3, 2, 2.0, 0.25))
    return [CheckReport("dimension shift", list(pts), [dimension_shift_check(*p) for p in pts], 1e-7)]


# -- qfuncs ------------------------------------------------------------------

def _fd_sigma(f, x, order, h=1e-3):
    if order == 1:
        return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)
    return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h)


def check_qfuncs():
    out = []
    grid, res = [], []
    for s in (0.5, 1.0, 2.0, 5.0, 10.0):
        for sg in (0.25, 0.5, 1.0):
            grid.append((s, sg))
            res.append(abs(q_sum_oracle(s, sg).value - q1(s, sg) - q2(s, sg)))
    out.append(CheckReport("Q1+Q2 against its defining integral", grid, res, 1e-6))

    grid, res = [], []
    for s in (0.1, 1.0, 5.0, 20.0):
        for sg in (0.25, 0.5, 1.0):
            grid.append((s, sg))
            a, b = q1(s, sg), q2(s, sg)
            res.append(_rel(q_d(1, s, sg).value, a + b, abs(a) + abs(b)))
    out.append(CheckReport("Q(1) = Q1 + Q2", grid, res, 1e-14))

    grid, res = [], []
    for d in (3, 5):
        j = (d - 1) // 2
        for s in (0.5, 2.0, 5.0):
            for sg in (0.5, 1.0):
                oracle = (-0.5 / math.pi) ** j * _fd_sigma(lambda x: q1(s, x) + q2(s, x), sg, j)
                grid.append((d, s, sg))
                res.append(abs(q_d(d, s, sg).value - oracle))
    out.append(CheckReport("Q(3), Q(5) against sigma derivatives", grid, res, 1e-4))

    grid, res = [], []
    for s in (0.3, 1.0, 3.0, 8.0):
        for sg in (0.25, 0.5, 1.0):
            total = []
            for n in range(1, 60):
                f, g = tr.m_to_zero_limits(n, s, "even")
                total.append(f * phi(Flat(), 1 - n, sg).value + g * psi(Flat(), 1 - n, sg).value)
            grid.append((s, sg))
            res.append(abs(q_d(2, s, sg).value - math.fsum(total) / (4.0 * math.pi)))
    out.append(CheckReport("Q(2) against massless even sums", grid, res, 1e-8))

    grid, res = [], []
    for s in np.linspace(0.1, 5.0, 6):
        s = float(s)
        for sg in (0.25, 0.5, 1.0):
            fs, gs = [], []
            for n in range(1, 60):
                f, _ = tr.m_to_zero_limits(n, s, "odd")
                fs.append(f * psi(Flat(), FamilyIndex(1 - 2 * n), sg).value)
            for n in range(0, 60):
                _, g = tr.m_to_zero_limits(n, s, "odd")
                gs.append(g * psi(Flat(), -n, sg).value)
            norm = 1.0 / math.sqrt(4.0 * math.pi)
            grid.append((s, sg))
            res.append(max(abs(norm * math.fsum(fs) - q1(s, sg)),
                           abs(norm * math.fsum(gs) - q2(s, sg))))
    out.append(CheckReport("massless odd split into Q1 and Q2", grid, res, 1e-9))
    out.extend(check_figures())
    return out


def check_figures():
    out = []
    _, _, rows = figure_data("fig1")
    a = np.array(rows)
    tail = a[a[:, 0] >= 10.0, 1]
    steps = np.diff(tail)
    out.append(CheckReport("fig1 row s=0 is zero", [(0.0,)], [float(np.max(np.abs(a[0, 1:])))], 0.0))
    out.append(CheckReport("fig1 Q1 increasing for s >= 10", [(10.0, 40.0)],
                           [max(0.0, -float(np.min(steps)))], 0.0))
    _, cols, rows = figure_data("fig2")
    a = np.array(rows)
    grid, changes, decay = [], [], []
    for j in range(1, a.shape[1]):
        col = a[:, j]
        grid.append((cols[j],))
        changes.append(max(0, 3 - sign_changes(col)))
        decay.append(abs(col[-1]) / np.max(np.abs(col)))
    out.append(CheckReport("fig2 missing sign changes (need 3 on (0, 40))", grid, changes, 0.0))
    out.append(CheckReport("fig2 |sum(40)| / max|sum|", grid, decay, 0.05))
    _, cols, rows = figure_data("fig3")
    a = np.array(rows)
    out.append(CheckReport("fig3 non-converged entries", [(c,) for c in cols[1:]],
                           [float(np.isnan(a[:, j]).sum()) for j in range(1, a.shape[1])], 0.0))
    return out


def check_appendix():
    grid, quad, ode = [], [], []
    for w in (0.5, 1.0, 2.0):
        for s in (0.5, 1.0, 2.0):
            grid.append((w, s))
            quad.append(abs(t_appendix(w, s).value - t_quadrature(w, s).value))
            ode.append(t_ode_residual(w, s))
    return [CheckReport("T series against quadrature", grid, quad, 1e-6),
            CheckReport("T differential equation", grid, ode, 1e-10)]


SUITES = {
    "g19": (check_g19,),
    "chains": (check_psi_omega_chain, check_phi_omega_chain, check_laplacian_chain,
               check_even_annihilation, check_odd_fundamental, check_phi_ladder),
    "theorem-odd": (check_theorem_odd,),
    "theorem-even": (check_theorem_even,),
    "late-time": (check_late_time,),
    "green": (check_green_closed_forms, check_green_structure),
    "qfuncs": (check_qfuncs,),
    "appendix": (check_appendix,),
    "dimshift": (check_dimshift,),
}


def run_suite(name):
    """Run one suite (or ``all``) and return its reports."""
    names = list(SUITES) if name == "all" else [name]
    out = []
    for n in names:
        if n not in SUITES:
            raise KeyError(n)
        for fn in SUITES[n]:
            out.extend(fn())
    return out
