"""Rank-3 realizability of (0,1) patterns as point/line configurations.

Exact engine: elements are placed greedily (most incidences to already-placed
elements first); coordinates live in a polynomial ring over the field, every
incidence onto placed elements becomes a polynomial constraint, and branching
covers all cases (coordinate charts, vanishing/nonvanishing of pivot
coefficients, complete root sets).  ProvedInfeasible is reported only when
every branch closed with a contradiction; any stuck or budget-cut branch
degrades the verdict to Unknown, never to a false negative.

Over GF(p) the leftover free parameters are enumerated exhaustively, so both
positive and negative leaf verdicts are exact.  Over Q a leaf with consistent
constraints picks generic parameter values (finitely many bad hypersurfaces),
and the produced configuration is re-verified against the pattern.

A note on finite fields: a Realized verdict over GF(p) certifies
configuration realizability of the pattern over that field; unlike the
rational case it is not packaged here as a statement about lift ranks.

Float engine: random-restart least squares on the incidence residuals with a
hinge pushing non-incidence products above a margin; answers are only ever
Realized (re-verified against the float tolerances) or Unknown.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .barvinok import barvinok_rank
from .multipoly import Poly, univariate_roots
from .patterns import (
    Configuration,
    IncidencePattern,
    check_realization_exact,
    check_realization_float,
)
from .rank import tropical_rank
from .tropical import INF, TropicalMatrix


@dataclass(frozen=True)
class Realized:
    configuration: Configuration
    detail: str = ""


@dataclass(frozen=True)
class ProvedInfeasible:
    trace: tuple  # one line per closed branch


@dataclass(frozen=True)
class Unknown:
    report: str


@dataclass(frozen=True)
class RealizeBudget:
    nodes: int = 200_000
    gf_points: int = 65_536     # max parameter assignments enumerated per leaf
    value_attempts: int = 64    # generic value draws per rational leaf
    restarts: int = 100         # float engine restarts


def _gauge_quadruple(pattern: IncidencePattern):
    """Up to four points, preferring high degree and no three on a pattern line.

    These are pinned to a projective frame first (with degeneracy branches),
    which keeps later coordinates small.
    """
    deg = {i: sum(pattern.bits[i]) for i in range(pattern.rows)}
    by_degree = sorted(range(pattern.rows), key=lambda i: (-deg[i], i))
    chosen = []
    for i in by_degree:
        if len(chosen) == 4:
            break
        bad = False
        for j in range(pattern.cols):
            on = sum(pattern.bits[p][j] for p in chosen + [i])
            if on >= 3:
                bad = True
                break
        if not bad:
            chosen.append(i)
    for i in by_degree:
        if len(chosen) == 4:
            break
        if i not in chosen:
            chosen.append(i)
    return chosen


def _element_order(pattern: IncidencePattern):
    """Frame quadruple first, then greedy most-incidences-to-placed.

    Returns (order, n_gauge): the first n_gauge entries are the points the
    engine may pin with the projective gauge.
    """
    elems = [("P", i) for i in range(pattern.rows)] + [("L", j) for j in range(pattern.cols)]
    deg = {}
    for kind, idx in elems:
        if kind == "P":
            deg[(kind, idx)] = sum(pattern.bits[idx])
        else:
            deg[(kind, idx)] = sum(pattern.bits[i][idx] for i in range(pattern.rows))
    gauge = [("P", i) for i in _gauge_quadruple(pattern)]
    placed = list(gauge)
    remaining = set(elems) - set(placed)
    while remaining:
        def placed_incidence(e):
            kind, idx = e
            count = 0
            for other in placed:
                if other[0] == kind:
                    continue
                i, j = (idx, other[1]) if kind == "P" else (other[1], idx)
                count += pattern.bits[i][j]
            return count

        best = max(
            remaining,
            key=lambda e: (placed_incidence(e), deg[e], e[0] == "P", -e[1]),
        )
        placed.append(best)
        remaining.remove(best)
    return placed, len(gauge)


@dataclass
class _Node:
    next_elem: int
    coords: dict
    queue: list
    diseqs: list      # groups: tuple of Polys, "not all zero"
    subs: list        # (var, num, den) in creation order
    nparams: int
    gauge: object     # 0..4 rungs of the frame ladder, or None once stopped
    path: tuple


class _ExactEngine:
    def __init__(self, pattern, field, seed, budget: RealizeBudget):
        self.pattern = pattern
        self.field = field  # None for Q, int p for GF(p)
        self.seed = seed
        self.budget = budget
        self.order, self.n_gauge = _element_order(pattern)
        self.dead = []
        self.dead_count = 0
        self.unknowns = []
        self.nodes = 0
        self.leaves = 0

    # ---- polynomial helpers -------------------------------------------------

    def _c(self, x):
        return Poly.const(x, self.field)

    def _reduce(self, poly, subs):
        for var, num, den in subs:
            if var in poly.variables():
                poly = poly.subs_clear(var, num, den)
        return poly

    def _dot(self, u, x):
        return u[0] * x[0] + u[1] * x[1] + u[2] * x[2]

    def _cross(self, u, v):
        return (
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        )

    def _norm_triple(self, coords):
        """Remove the common scalar content of a coordinate triple."""
        if self.field is not None:
            for p in coords:
                for mono in sorted(p.terms):
                    inv = pow(p.terms[mono], -1, self.field)
                    return tuple(
                        Poly(self.field, {m: (c * inv) % self.field for m, c in q.terms.items()})
                        for q in coords
                    )
            return coords
        from math import gcd, lcm

        nums = []
        dens = []
        for p in coords:
            for c in p.terms.values():
                nums.append(c.numerator)
                dens.append(c.denominator)
        if not nums:
            return coords
        den = lcm(*dens)
        g = 0
        for n, d in zip(nums, dens):
            g = gcd(g, n * (den // d))
        scale = Fraction(den, g)
        first = None
        for p in coords:
            for mono in sorted(p.terms):
                first = p.terms[mono]
                break
            if first is not None:
                break
        if first is not None and first * scale < 0:
            scale = -scale
        return tuple(
            Poly(None, {m: c * scale for m, c in p.terms.items()}) for p in coords
        )

    # ---- search -------------------------------------------------------------

    def run(self):
        root = _Node(0, {}, [], [], [], 0, 0, ())
        stack = [root]
        while stack:
            node = stack.pop()
            self.nodes += 1
            if self.nodes > self.budget.nodes:
                self.unknowns.append("node budget exhausted")
                break
            outcome = self._process(node)
            if isinstance(outcome, Realized):
                return outcome
            if outcome is not None:
                # children pushed in reverse so the listed order is DFS order
                for child in reversed(outcome):
                    stack.append(child)
        if self.unknowns:
            return Unknown(
                "exact engine inconclusive: "
                + "; ".join(sorted(set(self.unknowns)))
                + f" ({self.nodes} nodes, {self.dead_count} closed branches)"
            )
        return ProvedInfeasible(tuple(self.dead))

    def _close(self, node, reason):
        self.dead_count += 1
        if len(self.dead) < 5000:
            self.dead.append(" > ".join(node.path + (reason,)))
        return None

    def _process(self, node):
        """Returns Realized, None (branch closed/unknown), or a child list."""
        while node.queue:
            eq = self._reduce(node.queue.pop(0), node.subs).primitive()
            if eq.is_zero():
                continue
            if eq.is_constant():
                return self._close(node, f"contradiction: {eq.render()} = 0")
            step = self._solve_equation(node, eq)
            if step == "dead-no-roots":
                return self._close(node, f"no roots in the field: {eq.render()} = 0")
            if step == "stuck":
                self.unknowns.append(f"unsolvable constraint degree: {eq.render()}")
                return None
            if isinstance(step, list):
                return step
            # step was a direct substitution; keep draining the queue
        # eager prune on recorded non-incidences
        for group in node.diseqs:
            reduced = [self._reduce(p, node.subs) for p in group]
            if all(p.is_zero() for p in reduced):
                return self._close(node, "required non-incidence vanishes identically")
        if node.next_elem < len(self.order):
            return self._place(node)
        return self._leaf(node)

    def _solve_equation(self, node, eq):
        """Apply a substitution in place, return child specs, or classify."""
        variables = sorted(eq.variables())
        # 1) linear with a constant coefficient: substitute, no branching
        for v in variables:
            buckets = eq.coeffs_in(v)
            if max(buckets) == 1 and buckets[1].is_constant():
                b = buckets.get(0, self._c(0))
                node.subs.append((v, -b, buckets[1]))
                return "sub"
        # 2) linear with a polynomial coefficient: two branches
        for v in variables:
            buckets = eq.coeffs_in(v)
            if max(buckets) == 1:
                a = buckets[1]
                b = buckets.get(0, self._c(0))
                child1 = self._clone(node, f"coeff[{a.render()}]!=0")
                child1.diseqs.append((a,))
                child1.subs.append((v, -b, a))
                child2 = self._clone(node, f"coeff[{a.render()}]=0")
                child2.queue = [a, b] + child2.queue
                return [child1, child2]
        # 3) univariate: complete root enumeration
        if len(variables) == 1:
            v = variables[0]
            roots = univariate_roots(eq, v)
            if roots is None:
                return "stuck"
            if not roots:
                return "dead-no-roots"
            children = []
            for r in roots:
                child = self._clone(node, f"p{v}={r}")
                child.subs.append((v, self._c(r), self._c(1)))
                children.append(child)
            return children
        # 4) common monomial factor: var = 0 or cofactor = 0
        common = None
        for v in variables:
            if all(any(var == v for var, _ in mono) for mono in eq.terms):
                common = v
                break
        if common is not None:
            child1 = self._clone(node, f"p{common}=0")
            child1.subs.append((common, self._c(0), self._c(1)))
            cofactor = Poly(
                eq.field,
                {
                    tuple((var, e) if var != common else (var, e - 1) for var, e in mono if var != common or e > 1):
                    c
                    for mono, c in eq.terms.items()
                },
            )
            child2 = self._clone(node, f"cofactor[{common}]")
            child2.queue = [cofactor] + child2.queue
            return [child1, child2]
        return "stuck"

    def _clone(self, node, label):
        return _Node(
            node.next_elem,
            dict(node.coords),
            list(node.queue),
            list(node.diseqs),
            list(node.subs),
            node.nparams,
            node.gauge,
            node.path + (label,),
        )

    def _fresh(self, node):
        v = node.nparams
        node.nparams += 1
        return v

    def _place(self, node):
        elem = self.order[node.next_elem]
        kind, idx = elem
        partners = []
        avoids = []
        for other in self.order[: node.next_elem]:
            if other[0] == kind:
                continue
            i, j = (idx, other[1]) if kind == "P" else (other[1], idx)
            u = self._norm_triple(
                tuple(self._reduce(p, node.subs) for p in node.coords[other])
            )
            if self.pattern.bits[i][j]:
                partners.append(u)
            else:
                avoids.append((u, other))
        children = []
        name = f"{kind}{idx}"

        def finish(child, coords, extra_eqs):
            child.next_elem = node.next_elem + 1
            child.coords[elem] = coords
            child.queue.extend(extra_eqs)
            for u, other in avoids:
                group = (self._dot(u, coords),)
                reduced = self._reduce(group[0], child.subs)
                if reduced.is_zero():
                    self._close(child, f"{name} cannot avoid {other[0]}{other[1]}")
                    return
                child.diseqs.append(group)
            children.append(child)

        if node.next_elem < self.n_gauge and node.gauge is not None and node.gauge < 4:
            for child, coords in self._gauge_rungs(node, name):
                finish(child, coords, [])
            return children if children else None

        if len(partners) == 0:
            for chart, coords in self._charts(node):
                child = self._clone(node, f"{name}:{chart}")
                finish(child, coords(child), [])
        elif len(partners) == 1:
            for child, coords in self._complement_charts(node, name, partners[0]):
                finish(child, coords, [])
        else:
            u1, u2 = partners[0], partners[1]
            extras = partners[2:]
            cross = self._norm_triple(
                tuple(self._reduce(p, node.subs) for p in self._cross(u1, u2))
            )
            if not all(p.is_zero() for p in cross):
                child = self._clone(node, f"{name}:meet")
                child.diseqs.append(cross)
                finish(child, cross, [self._dot(u, cross) for u in extras])
            childb = self._clone(node, f"{name}:parallel")
            childb.queue = [p for p in cross if not p.is_zero()] + childb.queue
            for cb, coords in self._complement_charts(childb, name, u1):
                finish(cb, coords, [self._dot(u, coords) for u in [u2] + extras])
        return children if children else None

    def _gauge_rungs(self, node, name):
        """Pin a frame point using the projective group, exhaustively by case.

        Rung 0 sends the point to e1; rung 1 to e1 (coincidence) or e2; rung 2
        to e1/e2, the pinned span point (1,1,0), or e3; rung 3 to one of the
        seven coordinate-support representatives.  Branches that consume the
        remaining torus stop the ladder (gauge None); coincidence branches
        keep the rung.  Every projective point falls in exactly one case, so
        the cover is exhaustive and infeasibility verdicts remain complete.
        """
        c0, c1 = self._c(0), self._c(1)
        e1 = (c1, c0, c0)
        e2 = (c0, c1, c0)
        e3 = (c0, c0, c1)
        rung = node.gauge
        out = []

        def child_with(coords, label, new_gauge):
            child = self._clone(node, f"{name}:{label}")
            child.gauge = new_gauge
            return (child, coords)

        if rung == 0:
            out.append(child_with(e1, "g=e1", 1))
        elif rung == 1:
            out.append(child_with(e1, "g=e1", 1))
            out.append(child_with(e2, "g=e2", 2))
        elif rung == 2:
            out.append(child_with(e1, "g=e1", 2))
            out.append(child_with(e2, "g=e2", 2))
            out.append(child_with((c1, c1, c0), "g=(1,1,0)", None))
            out.append(child_with(e3, "g=e3", 3))
        else:
            out.append(child_with(e1, "g=e1", 3))
            out.append(child_with(e2, "g=e2", 3))
            out.append(child_with(e3, "g=e3", 3))
            out.append(child_with((c1, c1, c0), "g=(1,1,0)", None))
            out.append(child_with((c1, c0, c1), "g=(1,0,1)", None))
            out.append(child_with((c0, c1, c1), "g=(0,1,1)", None))
            out.append(child_with((c1, c1, c1), "g=(1,1,1)", 4))
        return out

    def _charts(self, node):
        """Projective charts covering every nonzero coordinate vector."""
        def c1(child):
            a, b = self._fresh(child), self._fresh(child)
            return (self._c(1), Poly.var(a, self.field), Poly.var(b, self.field))

        def c2(child):
            c = self._fresh(child)
            return (self._c(0), self._c(1), Poly.var(c, self.field))

        def c3(child):
            return (self._c(0), self._c(0), self._c(1))

        return [("x", c1), ("y", c2), ("z", c3)]

    def _complement_charts(self, node, name, u):
        """Children placing a vector orthogonal to u (nonzero in each branch).

        Chart k assumes u[k] is the first nonzero coordinate of u; within a
        chart the orthogonal plane is spanned by v1, v2 and the new element is
        v1 + t*v2 or v2 (two cases, covering the projective line).
        """
        out = []
        ured = [self._reduce(p, node.subs) for p in u]
        for k in range(3):
            if ured[k].is_zero():
                continue
            prefix_eqs = [u[m] for m in range(k) if not ured[m].is_zero()]
            if any(ured[m].is_constant() and not ured[m].is_zero() for m in range(k)):
                continue  # an earlier coordinate is a nonzero constant
            others = [m for m in range(3) if m != k]
            j1, j2 = others
            v1 = [self._c(0)] * 3
            v1[j1] = u[k]
            v1[k] = -u[j1]
            v2 = [self._c(0)] * 3
            v2[j2] = u[k]
            v2[k] = -u[j2]
            v1, v2 = tuple(v1), tuple(v2)
            for tag, make in (("span", None), ("edge", None)):
                child = self._clone(node, f"{name}:perp{k}:{tag}")
                child.queue = prefix_eqs + child.queue
                child.diseqs.append((u[k],))
                if tag == "span":
                    t = self._fresh(child)
                    tv = Poly.var(t, self.field)
                    coords = tuple(v1[m] + tv * v2[m] for m in range(3))
                else:
                    coords = v2
                out.append((child, coords))
        return out

    # ---- leaves -------------------------------------------------------------

    def _leaf(self, node):
        self.leaves += 1
        groups = []
        for group in node.diseqs:
            reduced = [self._reduce(p, node.subs) for p in group]
            if all(p.is_zero() for p in reduced):
                return self._close(node, "required non-incidence vanishes identically")
            groups.append([p for p in reduced if not p.is_zero()])
        free = sorted(
            set(range(node.nparams)) - {v for v, _, _ in node.subs}
        )
        if self.field is None:
            return self._leaf_rational(node, groups, free)
        return self._leaf_galois(node, groups, free)

    def _evaluate_all(self, node, assignment):
        """Back-substitute and evaluate every placed coordinate.  None when a
        substitution denominator vanishes at this assignment."""
        vals = dict(assignment)
        for var, num, den in reversed(node.subs):
            dv = den.evaluate(vals)
            if dv == 0:
                return None
            nv = num.evaluate(vals)
            if self.field is None:
                vals[var] = nv / dv
            else:
                vals[var] = (nv * pow(dv, -1, self.field)) % self.field
        pts = {}
        lns = {}
        for (kind, idx), triple in node.coords.items():
            vec = tuple(p.evaluate(vals) for p in triple)
            (pts if kind == "P" else lns)[idx] = vec
        points = tuple(pts[i] for i in range(self.pattern.rows))
        lines = tuple(lns[j] for j in range(self.pattern.cols))
        return points, lines

    def _leaf_rational(self, node, groups, free):
        for attempt in range(self.budget.value_attempts):
            rng = random.Random(f"{self.seed}:{self.leaves}:{attempt}:leaf")
            span = 4 + 8 * (attempt + 1)
            assignment = {v: Fraction(rng.randint(1, span)) for v in free}
            if any(all(p.evaluate(assignment) == 0 for p in g) for g in groups):
                continue
            got = self._evaluate_all(node, assignment)
            if got is None:
                continue
            points, lines = got
            problem = check_realization_exact(self.pattern, points, lines)
            if problem is None:
                return Realized(
                    Configuration(None, points, lines),
                    detail=f"exact engine, {self.nodes} nodes",
                )
        self.unknowns.append("no generic parameter values found at a consistent leaf")
        return None

    def _leaf_galois(self, node, groups, free):
        p = self.field
        total = p ** len(free)
        if total > self.budget.gf_points:
            self.unknowns.append(
                f"parameter space GF({p})^{len(free)} exceeds enumeration budget"
            )
            return None
        for values in itertools.product(range(p), repeat=len(free)):
            assignment = dict(zip(free, values))
            if any(all(q.evaluate(assignment) == 0 for q in g) for g in groups):
                continue
            got = self._evaluate_all(node, assignment)
            if got is None:
                continue
            points, lines = got
            problem = check_realization_exact(self.pattern, points, lines, field=p)
            if problem is None:
                return Realized(
                    Configuration(p, points, lines),
                    detail=f"exact engine, {self.nodes} nodes",
                )
        return self._close(node, f"all GF({p}) parameter assignments fail")


# ---- float engine -----------------------------------------------------------


def _float_realize(pattern, seed, restarts):
    from scipy.optimize import least_squares

    n, m = pattern.rows, pattern.cols
    oi = np.array([i for i, j in pattern.ones()], dtype=np.intp)
    oj = np.array([j for i, j in pattern.ones()], dtype=np.intp)
    zi = np.array(
        [i for i in range(n) for j in range(m) if not pattern.bits[i][j]], dtype=np.intp
    )
    zj = np.array(
        [j for i in range(n) for j in range(m) if not pattern.bits[i][j]], dtype=np.intp
    )
    margin = 3e-4  # optimize above the acceptance margin for hysteresis
    nvar = 3 * (n + m)
    k1, k2 = len(oi), len(zi)

    def _unpack(x):
        pts = x[: 3 * n].reshape(n, 3)
        lns = x[3 * n :].reshape(m, 3)
        pn = np.linalg.norm(pts, axis=1) + 1e-12
        ln = np.linalg.norm(lns, axis=1) + 1e-12
        return pts, lns, pn, ln

    def residuals(x):
        pts, lns, pn, ln = _unpack(x)
        s = np.einsum("ik,ik->i", pts[oi], lns[oj]) / (pn[oi] * ln[oj]) if k1 else np.zeros(0)
        sz = np.einsum("ik,ik->i", pts[zi], lns[zj]) / (pn[zi] * ln[zj]) if k2 else np.zeros(0)
        hinge = np.maximum(0.0, margin - np.abs(sz))
        return np.concatenate([s, hinge, 0.25 * (pn * pn - 1.0), 0.25 * (ln * ln - 1.0)])

    def _scaled_grads(pts, lns, pn, ln, ii, jj):
        """d(scaled dot)/d point and /d line for the listed pairs."""
        u = pts[ii]
        v = lns[jj]
        nu = pn[ii][:, None]
        nv = ln[jj][:, None]
        d = np.einsum("ik,ik->i", u, v)[:, None]
        gu = v / (nu * nv) - d * u / (nu**3 * nv)
        gv = u / (nu * nv) - d * v / (nu * nv**3)
        return d, gu, gv

    def jacobian(x):
        pts, lns, pn, ln = _unpack(x)
        J = np.zeros((k1 + k2 + n + m, nvar))
        rows = np.arange(k1)
        if k1:
            _, gu, gv = _scaled_grads(pts, lns, pn, ln, oi, oj)
            for c in range(3):
                J[rows, 3 * oi + c] += gu[:, c]
                J[rows, 3 * (n + oj) + c] += gv[:, c]
        if k2:
            d, gu, gv = _scaled_grads(pts, lns, pn, ln, zi, zj)
            s = d[:, 0] / (pn[zi] * ln[zj])
            active = np.abs(s) < margin
            coef = np.where(active, -np.sign(s), 0.0)
            rows = k1 + np.arange(k2)
            for c in range(3):
                J[rows, 3 * zi + c] += coef * gu[:, c]
                J[rows, 3 * (n + zj) + c] += coef * gv[:, c]
        rows = k1 + k2 + np.arange(n)
        for c in range(3):
            J[rows, 3 * np.arange(n) + c] = 0.5 * pts[:, c]
        rows = k1 + k2 + n + np.arange(m)
        for c in range(3):
            J[rows, 3 * (n + np.arange(m)) + c] = 0.5 * lns[:, c]
        return J

    for r in range(restarts):
        rng = np.random.default_rng([seed, r, 77])
        x0 = rng.normal(size=nvar)
        try:
            sol = least_squares(residuals, x0, jac=jacobian, method="trf", max_nfev=120)
        except Exception:
            continue
        pts = sol.x[: 3 * n].reshape(n, 3)
        lns = sol.x[3 * n :].reshape(m, 3)
        if check_realization_float(pattern, pts.tolist(), lns.tolist()) is None:
            cfg = Configuration(
                "float",
                tuple(tuple(float(c) for c in row) for row in pts),
                tuple(tuple(float(c) for c in row) for row in lns),
            )
            return Realized(cfg, detail=f"float engine, restart {r}")
    return Unknown(f"float engine: no realization in {restarts} restarts")


def realize_rank3(
    pattern: IncidencePattern,
    field=None,
    seed: int = 0,
    budget: Optional[RealizeBudget] = None,
):
    """Decide whether the pattern is realizable by 3-vectors over the field.

    field None = Q (exact), int p = GF(p) (exact, exhaustive over leftover
    parameters), "float" = numeric search (never proves infeasibility).
    """
    budget = budget or RealizeBudget()
    if field == "float":
        return _float_realize(pattern, seed, budget.restarts)
    if field is not None:
        if not isinstance(field, int) or field < 2 or any(
            field % f == 0 for f in range(2, int(field**0.5) + 1)
        ):
            raise ValueError(
                f"exact realizability needs Q (None) or a prime field, got {field!r}"
            )
    engine = _ExactEngine(pattern, field, seed, budget)
    verdict = engine.run()
    if isinstance(verdict, Realized):
        problem = check_realization_exact(
            pattern,
            verdict.configuration.points,
            verdict.configuration.lines,
            field=field,
        )
        if problem is not None:
            raise RuntimeError(f"engine produced an invalid realization: {problem}")
    return verdict


# ---- rank bounds ------------------------------------------------------------


@dataclass(frozen=True)
class BoundsReport:
    lower: int
    upper: int
    tight: bool
    lower_certified: bool
    upper_certified: bool
    notes: tuple


def kapranov_bounds(
    m: TropicalMatrix,
    field=None,
    kmax: Optional[int] = None,
    rank_budget: Optional[int] = None,
    barvinok_budget: Optional[int] = None,
    realize_budget: Optional[RealizeBudget] = None,
    seed: int = 0,
) -> BoundsReport:
    """Sandwich the lift rank: tropical rank below, factorization rank above.

    For a (0,1) matrix over the rationals a successful rank-3 realization
    improves the upper bound to 3 (the realization lifts).  Realizations over
    finite fields are deliberately not used this way.

    The factorization search defaults to a bounded covering budget; when it
    runs out, the trivial min(rows, cols) upper bound stands in.
    """
    notes = []
    rk = tropical_rank(m, budget=rank_budget)
    lower = rk.rank
    lower_cert = rk.certified
    if not rk.certified:
        notes.append("tropical rank budget exhausted; lower bound is best-found")
    if barvinok_budget is None:
        barvinok_budget = 200_000
    bar = barvinok_rank(m, kmax=kmax, budget=barvinok_budget)
    if bar.rank is not None:
        upper = bar.rank
        upper_cert = True
    else:
        upper = min(m.rows, m.cols)
        upper_cert = True
        notes.append(
            "factorization search inconclusive; trivial upper bound min(rows, cols)"
        )
    is01 = all(v is not INF and v in (0, 1) for v in m.entries)
    if is01 and upper > 3 and field is None:
        verdict = realize_rank3(
            IncidencePattern.from_matrix(m), field=None, seed=seed, budget=realize_budget
        )
        if isinstance(verdict, Realized):
            upper = 3 if lower <= 3 else upper
            notes.append("rational rank-3 realization found; upper bound improved to 3")
        elif isinstance(verdict, ProvedInfeasible):
            notes.append("no rational rank-3 realization exists")
        else:
            notes.append("rank-3 realization search inconclusive")
    elif is01 and upper > 3 and field is not None:
        notes.append("finite-field realizations are not used to improve the bound")
    tight = lower_cert and upper_cert and lower == upper
    return BoundsReport(lower, upper, tight, lower_cert, upper_cert, tuple(notes))
