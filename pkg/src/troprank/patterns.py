"""(0,1) incidence patterns and realizing point/line configurations.

Convention throughout the package: a 1 entry demands a vanishing inner
product (incidence), a 0 entry demands a nonvanishing one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .galois import make_field
from .tropical import INF, TropicalMatrix

INCIDENCE_TOL = 1e-9      # float incidence: |v.w| <= tol * |v||w|
NONINCIDENCE_MARGIN = 1e-4  # float non-incidence: |v.w| >= margin * |v||w|


@dataclass(frozen=True)
class IncidencePattern:
    rows: int
    cols: int
    bits: tuple  # tuple of row tuples over {0, 1}

    def __post_init__(self):
        if len(self.bits) != self.rows or any(len(r) != self.cols for r in self.bits):
            raise ValueError("pattern shape mismatch")
        if any(b not in (0, 1) for r in self.bits for b in r):
            raise ValueError("pattern entries must be 0 or 1")

    @staticmethod
    def from_rows(rows) -> "IncidencePattern":
        bits = tuple(tuple(int(b) for b in r) for r in rows)
        return IncidencePattern(len(bits), len(bits[0]) if bits else 0, bits)

    @staticmethod
    def from_matrix(m: TropicalMatrix) -> "IncidencePattern":
        """Read a (0,1)-valued tropical matrix as a pattern (1 = incidence)."""
        bits = []
        for i in range(m.rows):
            row = []
            for v in m.row(i):
                if v is INF or v not in (0, 1):
                    raise ValueError("matrix is not (0,1)-valued")
                row.append(int(v))
            bits.append(tuple(row))
        return IncidencePattern(m.rows, m.cols, tuple(bits))

    def to_tropical(self) -> TropicalMatrix:
        return TropicalMatrix.from_rows(self.bits)

    def ones(self):
        for i in range(self.rows):
            for j in range(self.cols):
                if self.bits[i][j]:
                    yield i, j

    def transpose(self) -> "IncidencePattern":
        return IncidencePattern.from_rows(zip(*self.bits))


@dataclass(frozen=True)
class Configuration:
    """Realizing family: nonzero point vectors and line covectors in 3-space.

    field is None for exact rationals, an int p for GF(p), or "float".
    """

    field: object
    points: tuple
    lines: tuple


def check_realization_exact(
    pattern: IncidencePattern,
    points,
    lines,
    field=None,
    require_nonincidence: bool = True,
) -> Optional[str]:
    """None when the configuration realizes the pattern; else the first problem."""
    if len(points) != pattern.rows or len(lines) != pattern.cols:
        return "configuration size does not match pattern"
    if field is None:
        def dot(u, v):
            return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]

        def is_zero(x):
            return x == 0
    else:
        f = make_field(field)

        def dot(u, v):
            return f.dot(u, v)

        def is_zero(x):
            return x == 0
    for i, pt in enumerate(points):
        if all(is_zero(c) for c in pt):
            return f"point {i} is the zero vector"
    for j, ln in enumerate(lines):
        if all(is_zero(c) for c in ln):
            return f"line {j} is the zero vector"
    for i in range(pattern.rows):
        for j in range(pattern.cols):
            z = is_zero(dot(points[i], lines[j]))
            if pattern.bits[i][j] == 1 and not z:
                return f"required incidence ({i},{j}) fails"
            if pattern.bits[i][j] == 0 and z and require_nonincidence:
                return f"required non-incidence ({i},{j}) vanishes"
    return None


def check_realization_float(pattern: IncidencePattern, points, lines) -> Optional[str]:
    """Scale-invariant float verification with a deliberate accept/reject gap."""
    if len(points) != pattern.rows or len(lines) != pattern.cols:
        return "configuration size does not match pattern"
    pn = [math.sqrt(sum(c * c for c in pt)) for pt in points]
    ln = [math.sqrt(sum(c * c for c in lv)) for lv in lines]
    if any(x == 0.0 for x in pn) or any(x == 0.0 for x in ln):
        return "zero vector in configuration"
    for i in range(pattern.rows):
        for j in range(pattern.cols):
            d = abs(sum(a * b for a, b in zip(points[i], lines[j])))
            bound = pn[i] * ln[j]
            if pattern.bits[i][j] == 1:
                if d > INCIDENCE_TOL * bound:
                    return f"incidence ({i},{j}) residual {d / bound:.3e}"
            else:
                if d < NONINCIDENCE_MARGIN * bound:
                    return f"non-incidence ({i},{j}) margin {d / bound:.3e}"
    return None


def _format_coord(c, field):
    if field == "float":
        return f"{float(c):.17g}"
    if isinstance(c, Fraction):
        return str(c) if c.denominator != 1 else str(c.numerator)
    return str(c)


def format_configuration(cfg: Configuration) -> str:
    if cfg.field is None:
        tag = "q"
    elif cfg.field == "float":
        tag = "float"
    else:
        tag = f"gf{cfg.field}"
    out = [f"field {tag}"]
    for i, pt in enumerate(cfg.points):
        out.append("P " + str(i) + " " + " ".join(_format_coord(c, cfg.field) for c in pt))
    for j, ln in enumerate(cfg.lines):
        out.append("L " + str(j) + " " + " ".join(_format_coord(c, cfg.field) for c in ln))
    return "\n".join(out) + "\n"


def parse_field_tag(tag: str):
    tag = tag.strip().lower()
    if tag in ("q", "rational", "rationals"):
        return None
    if tag == "float":
        return "float"
    if tag.startswith("gf"):
        return int(tag[2:])
    raise ValueError(f"unknown field tag {tag!r}")


def parse_configuration(text: str) -> Configuration:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines or not lines[0].startswith("field"):
        raise ValueError("configuration certificate must start with a field line")
    field = parse_field_tag(lines[0].split()[1])
    pts = {}
    lns = {}
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != 5 or toks[0] not in ("P", "L"):
            raise ValueError(f"bad configuration row: {ln!r}")
        idx = int(toks[1])
        if field == "float":
            coords = tuple(float(t) for t in toks[2:])
        elif field is None:
            coords = tuple(Fraction(t) for t in toks[2:])
        else:
            coords = tuple(int(t) for t in toks[2:])
        (pts if toks[0] == "P" else lns)[idx] = coords
    points = tuple(pts[i] for i in sorted(pts))
    lines_v = tuple(lns[j] for j in sorted(lns))
    return Configuration(field, points, lines_v)
