"""Two-phase primal simplex on a dense tableau.

The entering variable is the one with the most negative reduced cost and the
leaving variable is chosen by the lexicographic ratio rule, so the method
cannot cycle on degenerate problems.  Every optimal answer carries a dual solution and is
checked against it before being returned; a failed check raises
:class:`LpNumericalError` instead of handing back a wrong answer.

Sign convention (minimisation): a ``>=`` row has dual ``>= 0``, a ``<=`` row
has dual ``<= 0``, an ``=`` row is free.  Upper-bound multipliers are ``<= 0``
and the lower-bound multipliers are the reduced costs, which are ``>= 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

FEAS_TOL = 1e-7
RC_TOL = 1e-9
PIVOT_TOL = 1e-11
CERT_TOL = 1e-6

RELATIONS = ("<=", ">=", "=")


class LpError(ValueError):
    pass


class LpNumericalError(ArithmeticError):
    pass


@dataclass
class LpProblem:
    """minimize objective . x  subject to constraints and lower <= x <= upper.

    ``constraints`` holds ``(coefficients, relation, rhs)`` triples.  A bound's
    upper end may be ``None`` (unbounded).  Default bounds are ``[0, inf)``.
    """

    objective: Sequence[float]
    constraints: list = field(default_factory=list)
    bounds: list | None = None

    def __post_init__(self):
        n = len(self.objective)
        if n == 0:
            raise LpError("an LP needs at least one variable")
        if self.bounds is None:
            self.bounds = [(0.0, None)] * n
        if len(self.bounds) != n:
            raise LpError(f"{len(self.bounds)} bounds for {n} variables")
        for coeffs, rel, _ in self.constraints:
            if len(coeffs) != n:
                raise LpError(f"constraint has {len(coeffs)} coefficients, expected {n}")
            if rel not in RELATIONS:
                raise LpError(f"unknown relation {rel!r}")
        for lo, hi in self.bounds:
            if lo is None or lo < 0 or not math.isfinite(lo):
                raise LpError("lower bounds must be finite and >= 0")
            if hi is not None and hi < lo:
                raise LpError("upper bound below lower bound")

    @property
    def num_vars(self) -> int:
        return len(self.objective)


@dataclass
class LpSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    values: np.ndarray | None = None
    objective_value: float | None = None
    duals: np.ndarray | None = None
    bound_duals: np.ndarray | None = None
    reduced_costs: np.ndarray | None = None
    basis: list | None = None
    iterations: int = 0


class SimplexSolver:
    """One solve at a time; the tableau is private mutable state."""

    def __init__(self, max_iterations: int = 50_000):
        self.max_iterations = max_iterations
        self.iterations = 0

    def _pivot(self, T, basis, r, c):
        T[r] /= T[r, c]
        col = T[:, c].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        basis[r] = c

    def _leaving_row(self, T, col, pos, lexcols):
        """Minimum-ratio row; ties broken lexicographically on the starting-basis columns."""
        ratios = T[pos, -1] / col[pos]
        best = ratios.min()
        ties = pos[ratios <= best + 1e-12 * max(1.0, abs(best))]
        for k in lexcols:
            if ties.size == 1:
                break
            vals = T[ties, k] / col[ties]
            ties = ties[vals <= vals.min() + 1e-12]
        return int(ties[0]), best

    def _run(self, T, basis, allowed, lexcols):
        """Optimise the tableau whose last row holds reduced costs.

        The entering column has the most negative reduced cost (lowest index
        on ties).  The leaving row follows the lexicographic rule relative to
        the starting basis, which keeps the basis sequence from cycling on
        degenerate problems.
        """
        nrows = T.shape[0] - 1
        while True:
            self.iterations += 1
            if self.iterations > self.max_iterations:
                raise LpNumericalError("simplex iteration limit reached")
            z = np.where(allowed, T[-1, :-1], 0.0)
            c = int(np.argmin(z))
            if z[c] >= -RC_TOL:
                return "optimal"
            col = T[:nrows, c]
            pos = np.nonzero(col > PIVOT_TOL)[0]
            if pos.size == 0:
                return "unbounded"
            r, _ = self._leaving_row(T, col, pos, lexcols)
            self._pivot(T, basis, r, c)

    def solve(self, p: LpProblem) -> LpSolution:
        self.iterations = 0
        n = p.num_vars
        c = np.asarray(p.objective, dtype=float)
        lo = np.array([b[0] for b in p.bounds], dtype=float)

        # rows: constraints, then finite upper bounds on the shifted variables
        A_rows, rels, rhs, origin = [], [], [], []
        for i, (coeffs, rel, b) in enumerate(p.constraints):
            a = np.asarray(coeffs, dtype=float)
            A_rows.append(a)
            rels.append(rel)
            rhs.append(float(b) - float(a @ lo))
            origin.append(("row", i))
        for j, (l, h) in enumerate(p.bounds):
            if h is not None and math.isfinite(h):
                a = np.zeros(n)
                a[j] = 1.0
                A_rows.append(a)
                rels.append("<=")
                rhs.append(float(h) - float(l))
                origin.append(("ub", j))
        m = len(A_rows)
        A = np.array(A_rows).reshape(m, n)
        b = np.array(rhs)
        sign = np.where(b < 0, -1.0, 1.0)
        A = A * sign[:, None]
        b = b * sign
        rels = [r if s > 0 else {"<=": ">=", ">=": "<=", "=": "="}[r] for r, s in zip(rels, sign)]

        # columns: structural | slack/surplus per inequality | artificial
        slack_cols, art_rows = [], []
        for i, r in enumerate(rels):
            if r != "=":
                slack_cols.append(i)
            if r != "<=":
                art_rows.append(i)
        ns, na = len(slack_cols), len(art_rows)
        ncols = n + ns + na
        S = np.zeros((m, ncols))
        S[:, :n] = A
        basis = [-1] * m
        for k, i in enumerate(slack_cols):
            S[i, n + k] = 1.0 if rels[i] == "<=" else -1.0
            if rels[i] == "<=":
                basis[i] = n + k
        for k, i in enumerate(art_rows):
            S[i, n + ns + k] = 1.0
            basis[i] = n + ns + k
        c_std = np.concatenate([c, np.zeros(ns + na)])

        lexcols = list(basis)  # starting basis: one slack or artificial per row
        T = np.zeros((m + 1, ncols + 1))
        T[:m, :ncols] = S
        T[:m, -1] = b
        is_art = np.zeros(ncols, dtype=bool)
        is_art[n + ns:] = True

        # phase 1
        if na:
            T[-1, n + ns:ncols] = 1.0
            for i in art_rows:
                T[-1] -= T[i]
            self._run(T, basis, np.ones(ncols, dtype=bool), lexcols)
            scale = max(1.0, float(np.abs(b).max(initial=0.0)))
            if -T[-1, -1] > FEAS_TOL * scale:
                return LpSolution("infeasible", iterations=self.iterations)
            keep, dropped = list(range(m)), set()
            for i in range(m):
                if basis[i] >= 0 and is_art[basis[i]]:
                    nz = np.nonzero((np.abs(T[i, :ncols]) > 1e-9) & ~is_art)[0]
                    if nz.size:
                        self._pivot(T, basis, i, int(nz[0]))
                    else:
                        # the constraint owning this artificial is redundant
                        keep.remove(i)
                        dropped.add(art_rows[basis[i] - n - ns])
            rows = keep + [m]
            T = T[rows]
            basis = [basis[i] for i in keep]
        else:
            dropped = set()

        # phase 2
        T[-1, :] = 0.0
        T[-1, :ncols] = c_std
        for i, j in enumerate(basis):
            T[-1] -= c_std[j] * T[i]
        status = self._run(T, basis, ~is_art, lexcols)
        if status == "unbounded":
            return LpSolution("unbounded", iterations=self.iterations)

        x_std = np.zeros(ncols)
        for i, j in enumerate(basis):
            x_std[j] = max(T[i, -1], 0.0)
        x = lo + x_std[:n]

        # duals from the final basis: B^T y = c_B on the non-redundant rows
        keep = [i for i in range(m) if i not in dropped]
        B = S[keep][:, basis]
        try:
            y_kept = np.linalg.solve(B.T, c_std[basis])
        except np.linalg.LinAlgError as exc:
            raise LpNumericalError("singular final basis") from exc
        y_std = np.zeros(m)
        y_std[keep] = y_kept
        y_std *= sign
        duals = np.zeros(len(p.constraints))
        bound_duals = np.zeros(n)
        for (kind, idx), yv in zip(origin, y_std):
            if kind == "row":
                duals[idx] = yv
            else:
                bound_duals[idx] = yv
        A_orig = np.array([np.asarray(co, dtype=float) for co, _, _ in p.constraints]).reshape(-1, n)
        reduced = c - A_orig.T @ duals - bound_duals
        sol = LpSolution("optimal", x, float(c @ x), duals, bound_duals, reduced,
                         list(basis), self.iterations)
        cert = certificate(p, sol)
        scale = max(1.0, abs(sol.objective_value))
        if cert["primal_infeasibility"] > FEAS_TOL * scale or max(cert.values()) > CERT_TOL * scale:
            raise LpNumericalError(f"optimality certificate failed: {cert}")
        return sol


def solve_lp(p: LpProblem, max_iterations: int = 50_000) -> LpSolution:
    return SimplexSolver(max_iterations).solve(p)


def certificate(p: LpProblem, sol: LpSolution) -> dict[str, float]:
    """Primal/dual residuals of an optimal solution in the problem's own terms."""
    x, y, w, d = sol.values, sol.duals, sol.bound_duals, sol.reduced_costs
    c = np.asarray(p.objective, dtype=float)
    primal = dual = slack_prod = 0.0
    dual_obj = 0.0
    for (coeffs, rel, b), yi in zip(p.constraints, y):
        act = float(np.dot(coeffs, x)) - float(b)
        if rel == "<=":
            primal = max(primal, act)
            dual = max(dual, yi)
        elif rel == ">=":
            primal = max(primal, -act)
            dual = max(dual, -yi)
        else:
            primal = max(primal, abs(act))
        slack_prod = max(slack_prod, abs(yi * act))
        dual_obj += yi * float(b)
    for j, (lo, hi) in enumerate(p.bounds):
        primal = max(primal, lo - x[j])
        dual = max(dual, -d[j])
        slack_prod = max(slack_prod, abs(d[j] * (x[j] - lo)))
        dual_obj += d[j] * lo
        if hi is not None and math.isfinite(hi):
            primal = max(primal, x[j] - hi)
            dual = max(dual, w[j])
            slack_prod = max(slack_prod, abs(w[j] * (x[j] - hi)))
            dual_obj += w[j] * hi
        else:
            dual = max(dual, abs(w[j]))
    return {
        "primal_infeasibility": max(primal, 0.0),
        "dual_infeasibility": max(dual, 0.0),
        "duality_gap": abs(float(c @ x) - dual_obj),
        "complementary_slackness": slack_prod,
    }
