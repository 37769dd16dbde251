"""Floating-point evaluation in spheroidal coordinates, plus a Monte Carlo integrator.

The coordinate path evaluates

    U[n,m] = (-1)^m gamma(n,m) mu^(n-m) rho^m c(t1) c(t2) Phi_m(phi)

with t1 = 2 x0/omega, t2 = omega/(2 mu) and c = d^m P_n/dt^m from the
three-term recurrence; the two branch factors of P_n^m combine into
(rho/mu)^m.  For oblate shapes mu = i|mu| and t2 is imaginary; the product
is real and computed in complex arithmetic.  V = dU[n+1,m]/dx0 is taken by
the chain rule in (t1, t2) at fixed rho.

None of this touches the exact Cartesian polynomials, so comparing the two
is a genuine cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .exactcore import QPoly, ScalarPoly, ShapeKind, SpheroidShape
from .harmonics import normalize_parity
from .legendre import core_eval, gamma_coeff


@dataclass(frozen=True)
class PointR3:
    x0: float
    x1: float
    x2: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x0, self.x1, self.x2)):
            raise ValueError("point coordinates must be finite")

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.x0, self.x1, self.x2)


@dataclass(frozen=True)
class SpheroidalCoords:
    u: float
    v: float
    phi: float
    branch: str  # "prolate" or "oblate"


def _mu(shape: SpheroidShape) -> complex:
    if shape.kind is ShapeKind.SPHERE:
        raise ValueError("spheroidal coordinates degenerate on the sphere; use the exact path")
    if shape.kind is ShapeKind.PROLATE:
        return complex(math.sqrt(float(shape.tau)), 0.0)
    return complex(0.0, math.sqrt(-float(shape.tau)))


def _as_array(points) -> np.ndarray:
    if isinstance(points, PointR3):
        points = [points]
    pts = [p.as_tuple() if isinstance(p, PointR3) else p for p in points]
    arr = np.asarray(pts, dtype=float).reshape(-1, 3)
    return arr


def _inside(arr: np.ndarray, shape: SpheroidShape) -> np.ndarray:
    wsq = float(shape.wsq)
    return arr[:, 0] ** 2 + (arr[:, 1] ** 2 + arr[:, 2] ** 2) / wsq < 1


def _omega(arr: np.ndarray, shape: SpheroidShape) -> np.ndarray:
    x0 = arr[:, 0]
    r2 = (arr ** 2).sum(axis=1)
    tau = float(shape.tau)
    if shape.kind is ShapeKind.PROLATE:
        mu = math.sqrt(tau)
        rho2 = r2 - x0 ** 2
        return np.sqrt((x0 + mu) ** 2 + rho2) + np.sqrt((x0 - mu) ** 2 + rho2)
    zeta = (r2 + tau) + 2j * x0 * math.sqrt(-tau)
    mod, re = np.abs(zeta), zeta.real
    # |zeta| + Re zeta cancels near the focal disk; use Im^2 / (|zeta| - Re) there
    with np.errstate(invalid="ignore", divide="ignore"):
        alt = zeta.imag ** 2 / np.where(re < 0, mod - re, 1.0)
    return np.sqrt(2 * np.where(re < 0, alt, mod + re))


def _t_coords(arr: np.ndarray, shape: SpheroidShape):
    omega = _omega(arr, shape)
    mu = _mu(shape)
    with np.errstate(invalid="ignore", divide="ignore"):
        t1 = np.where(omega > 0, 2 * arr[:, 0] / np.where(omega > 0, omega, 1), 0.0)
    t1 = np.clip(t1, -1.0, 1.0)
    t2 = omega / (2 * mu)
    return t1, t2, mu


def to_spheroidal(p: PointR3, shape: SpheroidShape) -> SpheroidalCoords:
    arr = _as_array(p)
    if not _inside(arr, shape).all():
        raise ValueError(f"point {p} lies outside the spheroid tau={shape.tau}")
    t1, t2, mu = _t_coords(arr, shape)
    u = float(np.arccos(t1[0]))
    phi = math.atan2(arr[0, 2], arr[0, 1]) % (2 * math.pi)
    if shape.kind is ShapeKind.PROLATE:
        v = float(np.arccosh(max(1.0, t2[0].real)))
        return SpheroidalCoords(u, v, phi, "prolate")
    # t2 = -i sinh v with mu = i|mu|
    v = float(np.arcsinh(-t2[0].imag))
    return SpheroidalCoords(u, v, phi, "oblate")


def from_spheroidal(c: SpheroidalCoords, shape: SpheroidShape) -> PointR3:
    a = abs(_mu(shape))
    if c.branch == "prolate":
        x0 = a * math.cos(c.u) * math.cosh(c.v)
        rho = a * math.sin(c.u) * math.sinh(c.v)
    elif c.branch == "oblate":
        x0 = a * math.cos(c.u) * math.sinh(c.v)
        rho = a * math.sin(c.u) * math.cosh(c.v)
    else:
        raise ValueError(f"unknown branch {c.branch!r}")
    return PointR3(x0, rho * math.cos(c.phi), rho * math.sin(c.phi))


def random_interior_points(shape: SpheroidShape, count: int, seed: int = 0, stream: int = 0) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream,)))
    w = math.sqrt(float(shape.wsq))
    out = []
    have = 0
    while have < count:
        batch = rng.uniform(-1.0, 1.0, size=(max(2 * (count - have), 64), 3))
        batch[:, 1:] *= w
        batch = batch[_inside(batch, shape)]
        out.append(batch)
        have += len(batch)
    return np.concatenate(out)[:count]


# ---------------------------------------------------------------------------
# coordinate-product evaluation


def _angular(m: int, parity: str, arr: np.ndarray) -> np.ndarray:
    phi = np.arctan2(arr[:, 2], arr[:, 1])
    rho = np.hypot(arr[:, 1], arr[:, 2])
    trig = np.cos(m * phi) if parity == "+" else np.sin(m * phi)
    return rho ** m * trig


def _U_num(n: int, m: int, parity: str, arr, t1, t2, mu) -> np.ndarray:
    if m > n or m < 0 or (m == 0 and parity == "-"):
        return np.zeros(len(arr))
    k = (-1) ** m * float(gamma_coeff(n, m))
    val = k * mu ** (n - m) * core_eval(n, m, t1) * core_eval(n, m, t2)
    return _real(val) * _angular(m, parity, arr)


def _V_num(n: int, m: int, parity: str, arr, t1, t2, mu) -> np.ndarray:
    if m == -1:
        # order -1 enters only through V[n,-1] = -V[n,1]/((n+1)(n+2)) with the
        # angular factor stripped; Phi_(-1) is (cos phi, -sin phi)
        sign = -1 if parity == "+" else 1
        return sign * _V_num(n, 1, parity, arr, t1, t2, mu) / ((n + 1) * (n + 2))
    N = n + 1
    if m > n or m < 0 or (m == 0 and parity == "-"):
        return np.zeros(len(arr))
    k = (-1) ** m * float(gamma_coeff(N, m))
    c1, c2 = core_eval(N, m, t1), core_eval(N, m, t2)
    d1, d2 = core_eval(N, m + 1, t1), core_eval(N, m + 1, t2)
    num = t2 * (1 - t1 ** 2) * d1 * c2 + t1 * (t2 ** 2 - 1) * c1 * d2
    val = k * mu ** (n - m) * num / (t2 ** 2 - t1 ** 2)
    return _real(val) * _angular(m, parity, arr)


def _real(val) -> np.ndarray:
    val = np.asarray(val)
    if np.iscomplexobj(val):
        return val.real
    return val


def _X_num(n, m, parity, arr, t1, t2, mu) -> np.ndarray:
    other = "-" if parity == "+" else "+"
    s = 1 if parity == "+" else -1
    V = lambda mm, p: _V_num(n, mm, p, arr, t1, t2, mu)  # noqa: E731
    e0 = V(m, parity)
    e1 = 0.5 * ((n + m + 1) * V(m - 1, parity) - V(m + 1, parity) / (n + m + 2))
    e2 = -s * 0.5 * ((n + m + 1) * V(m - 1, other) + V(m + 1, other) / (n + m + 2))
    return np.stack([e0, e1, e2], axis=1)


def _Z_num(n, m, parity, arr, t1, t2, mu, shape) -> np.ndarray:
    from .contragenics import a_coeff

    V = lambda mm, p: _V_num(n, mm, p, arr, t1, t2, mu)  # noqa: E731
    zero = np.zeros(len(arr))
    if m == 0:
        return np.stack([zero, V(1, "-") / (n + 2), -V(1, "+") / (n + 2)], axis=1)
    other = "-" if parity == "+" else "+"
    s = 1 if parity == "+" else -1
    a = float(a_coeff(n, m, shape))
    e1 = a * V(m - 1, other) + V(m + 1, other) / (n + m + 2)
    e2 = s * (a * V(m - 1, parity) - V(m + 1, parity) / (n + m + 2))
    return np.stack([zero, e1, e2], axis=1)


def _unpack(index) -> Tuple[int, int, Optional[str]]:
    if isinstance(index, tuple):
        n, m, *rest = index
        return n, m, rest[0] if rest else "+"
    inner = getattr(index, "index", index)
    return inner.n, inner.m, inner.parity


def eval_basis_numeric(family: str, index, points, shape: SpheroidShape) -> np.ndarray:
    """Values of U, V (shape (N,)) or X, Z (shape (N, 3)) by the coordinate path."""
    from .contragenics import ContragenicIndex
    from .harmonics import HarmonicIndex
    from .monogenics import MonogenicIndex

    n, m, parity = _unpack(index)
    family = family.upper()
    if family in ("U", "V"):
        HarmonicIndex(n, m, parity)
    elif family == "X":
        MonogenicIndex(n, m, parity)
    elif family == "Z":
        ContragenicIndex(n, m, parity)
    else:
        raise ValueError(f"unknown family {family!r}")
    parity = normalize_parity(parity) if parity is not None else None
    arr = _as_array(points)
    if not _inside(arr, shape).all():
        raise ValueError("all points must lie inside the spheroid")
    t1, t2, mu = _t_coords(arr, shape)
    if family == "U":
        return _U_num(n, m, parity, arr, t1, t2, mu)
    if family == "V":
        return _V_num(n, m, parity, arr, t1, t2, mu)
    if family == "X":
        return _X_num(n, m, parity, arr, t1, t2, mu)
    return _Z_num(n, m, parity, arr, t1, t2, mu, shape)


# ---------------------------------------------------------------------------
# exact polynomials at many points


class _Powers:
    """Lazily cached integer powers of each coordinate column."""

    def __init__(self, arr: np.ndarray):
        self.cols = [arr[:, i] for i in range(3)]
        self.cache = {}

    def __call__(self, axis: int, k: int) -> np.ndarray:
        key = (axis, k)
        if key not in self.cache:
            if k == 0:
                self.cache[key] = np.ones_like(self.cols[axis])
            else:
                self.cache[key] = self(axis, k - 1) * self.cols[axis]
        return self.cache[key]


def _eval(p: ScalarPoly, pw: _Powers, tau: float, n: int) -> np.ndarray:
    grouped = {}
    for (a, b, c, k), v in p.raw_terms().items():
        grouped[(a, b, c)] = grouped.get((a, b, c), 0.0) + float(v) * tau ** k
    out = np.zeros(n)
    for (a, b, c), v in grouped.items():
        if v:
            out += v * (pw(0, a) * pw(1, b) * pw(2, c))
    return out


def eval_poly(p: ScalarPoly, points, tau=0.0) -> np.ndarray:
    arr = _as_array(points)
    return _eval(p, _Powers(arr), float(tau), len(arr))


def eval_qpoly(q: QPoly, points, tau=0.0) -> np.ndarray:
    arr = _as_array(points)
    pw = _Powers(arr)
    return np.stack([_eval(c, pw, float(tau), len(arr)) for c in q.components[:3]], axis=1)


def relative_error(numeric: np.ndarray, exact: np.ndarray) -> float:
    """max |numeric - exact| over the sample, divided by max |exact|."""
    scale = float(np.max(np.abs(exact)))
    err = float(np.max(np.abs(numeric - exact)))
    return err if scale == 0 else err / scale


# ---------------------------------------------------------------------------
# Monte Carlo


@dataclass(frozen=True)
class MCResult:
    estimate: float
    stderr: float
    n: int
    seed: int

    def to_json(self) -> dict:
        return {"estimate": self.estimate, "stderr": self.stderr, "n": self.n, "seed": self.seed}


def acceptance_rate(shape: SpheroidShape) -> float:
    """vol(spheroid) / vol(box [-1,1] x [-w,w]^2) = pi/6 for every shape."""
    return math.pi / 6


def mc_inner_product(f: QPoly, g: QPoly, shape: SpheroidShape, n_samples: int, seed: int = 0, stream: int = 0) -> MCResult:
    """Uniform rejection sampling; the estimate is vol * mean(f.g) over accepted points."""
    if n_samples <= 0:
        raise ValueError("n_samples must be positive")
    if isinstance(f, ScalarPoly):
        f = QPoly.scalar(f)
    if isinstance(g, ScalarPoly):
        g = QPoly.scalar(g)
    if not (f.is_r3() and g.is_r3()):
        raise ValueError("inner products need R^3-valued inputs")
    pts = random_interior_points(shape, n_samples, seed, stream)
    tau = float(shape.tau)
    vals = (eval_qpoly(f, pts, tau) * eval_qpoly(g, pts, tau)).sum(axis=1)
    vol = 4 * math.pi / 3 * float(shape.wsq)
    est = vol * float(vals.mean())
    se = vol * float(vals.std(ddof=1)) / math.sqrt(n_samples) if n_samples > 1 else float("inf")
    return MCResult(est, se, n_samples, seed)
