"""Volume-one convex bodies, exact orientation predicate, and cap geometry.

Supported bodies (all normalized to volume one, dimensions 2..6):

* ``ball``      - Euclidean ball of radius ``omega_d**(-1/d)`` centered at 0.
* ``cube``      - the unit cube ``[0, 1]**d``.
* ``simplex``   - ``s * conv{0, e_1, ..., e_d}`` with ``s = (d!)**(1/d)``.
* ``ellipsoid`` - axis-aligned, semi-axes rescaled so the volume is one.

Caps are half-space intersections ``{y in K : u . y >= t}``.  All four bodies
have closed-form cap volumes: regularized incomplete beta for the ball, an
affine reduction to the ball for the ellipsoid, the weighted Irwin-Hall
distribution for the cube, and the B-spline law of a linear functional over a
simplex (Curry-Schoenberg) for the simplex.  Each is exact up to floating
point, far inside the 1e-9 tolerance the rest of the package assumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy.interpolate import BSpline
from scipy.special import betainc, gammaln

from .errors import DegenerateInputError, InvalidInputError

BODY_KINDS = ("ball", "cube", "simplex", "ellipsoid")

MIN_DIM = 2
MAX_DIM = 6

#: absolute tolerance for cap volumes (closed forms are much better; the
#: bisection in cap_for_volume targets this).
CAP_VOLUME_TOL = 1e-9

_UNIT_NORM_TOL = 1e-9
_CONTAINS_SLACK = 1e-12

# float epsilon used by the orientation filter
_EPS = np.finfo(np.float64).eps


def unit_ball_volume(dim: int) -> float:
    """Volume of the Euclidean unit ball in R^dim."""
    return math.exp(dim / 2.0 * math.log(math.pi) - gammaln(dim / 2.0 + 1.0))


@dataclass(frozen=True)
class Body:
    """Descriptor of a volume-one convex body.

    ``params`` holds the normalized ellipsoid semi-axes (empty for the other
    kinds); ``scale`` is the kind-specific normalization factor: ball radius,
    cube edge (always 1), simplex edge scale.
    """

    kind: str
    dim: int
    params: tuple[float, ...]
    scale: float

    @property
    def radius(self) -> float:
        if self.kind not in ("ball",):
            raise InvalidInputError(f"radius undefined for body kind {self.kind!r}")
        return self.scale

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        """Axis-aligned bounding box (lo, hi)."""
        d = self.dim
        if self.kind == "ball":
            r = self.scale
            return -r * np.ones(d), r * np.ones(d)
        if self.kind == "cube":
            return np.zeros(d), np.ones(d)
        if self.kind == "simplex":
            return np.zeros(d), self.scale * np.ones(d)
        a = np.asarray(self.params)
        return -a, a

    def volume(self) -> float:
        """Recompute the body volume from its parameters (should be 1)."""
        d = self.dim
        if self.kind == "ball":
            return unit_ball_volume(d) * self.scale**d
        if self.kind == "cube":
            return 1.0
        if self.kind == "simplex":
            return self.scale**d / math.factorial(d)
        return unit_ball_volume(d) * float(np.prod(self.params))


def make_body(kind: str, dim: int, params=None) -> Body:
    """Build a volume-one body descriptor.

    ``params`` is only consulted for ellipsoids: a sequence of d positive
    semi-axis ratios, rescaled uniformly so the volume is one.
    """
    if kind not in BODY_KINDS:
        raise InvalidInputError(f"unknown body kind {kind!r}; expected one of {BODY_KINDS}")
    if not isinstance(dim, (int, np.integer)) or not (MIN_DIM <= dim <= MAX_DIM):
        raise InvalidInputError(f"dimension must be an integer in [{MIN_DIM}, {MAX_DIM}], got {dim!r}")
    dim = int(dim)
    if kind == "ball":
        body = Body("ball", dim, (), unit_ball_volume(dim) ** (-1.0 / dim))
    elif kind == "cube":
        body = Body("cube", dim, (), 1.0)
    elif kind == "simplex":
        body = Body("simplex", dim, (), math.factorial(dim) ** (1.0 / dim))
    else:
        if params is None:
            raise InvalidInputError("ellipsoid requires semi-axis params")
        axes = np.asarray(params, dtype=float)
        if axes.shape != (dim,) or not np.all(np.isfinite(axes)) or np.any(axes <= 0):
            raise InvalidInputError("ellipsoid params must be d positive finite semi-axes")
        # rescale uniformly: vol = omega_d * prod(axes * c) = 1
        c = (unit_ball_volume(dim) * float(np.prod(axes))) ** (-1.0 / dim)
        body = Body("ellipsoid", dim, tuple(float(a) for a in axes * c), 1.0)
    vol = body.volume()
    if abs(vol - 1.0) > 1e-12:
        raise InvalidInputError(f"body normalization failed: volume {vol}")
    return body


def ball(dim: int) -> Body:
    return make_body("ball", dim)


def cube(dim: int) -> Body:
    return make_body("cube", dim)


def simplex(dim: int) -> Body:
    return make_body("simplex", dim)


def ellipsoid(dim: int, semi_axes) -> Body:
    return make_body("ellipsoid", dim, semi_axes)


@dataclass(frozen=True)
class Cap:
    """A half-space cap {y in K : direction . y >= offset} with its volume."""

    direction: np.ndarray
    offset: float
    volume: float


# ---------------------------------------------------------------------------
# orientation predicate
# ---------------------------------------------------------------------------


def _det_float(m: np.ndarray) -> float:
    d = m.shape[0]
    if d == 1:
        return float(m[0, 0])
    if d == 2:
        return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    if d == 3:
        return float(
            m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
            - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
            + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0])
        )
    return float(np.linalg.det(m))


def _det_error_bound(m: np.ndarray) -> float:
    # conservative forward-error bound: eps * 2^(2d) * prod of row 1-norms
    # (the row-norm product dominates the permanent of |m|).
    d = m.shape[0]
    prod = float(np.prod(np.abs(m).sum(axis=1)))
    return _EPS * (1 << (2 * d)) * prod


def _exact_det_sign(m: np.ndarray) -> int:
    """Sign of det(m) by fraction-free Bareiss elimination (exact)."""
    a = [[Fraction(float(x)) for x in row] for row in m]
    n = len(a)
    sign = 1
    for k in range(n):
        # pivot
        piv = None
        for r in range(k, n):
            if a[r][k] != 0:
                piv = r
                break
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for r in range(k + 1, n):
            factor = a[r][k] / a[k][k]
            for c in range(k, n):
                a[r][c] -= factor * a[k][c]
    result = sign
    for k in range(n):
        if a[k][k] > 0:
            continue
        if a[k][k] < 0:
            result = -result
        else:  # unreachable after elimination, kept for safety
            return 0
    return result


def orientation(simplex_points) -> int:
    """Sign of the determinant of edge vectors from the first point.

    Robust: a floating-point determinant with a forward error bound decides
    the easy cases; uncertain signs fall back to exact rational arithmetic.
    Returns +1, 0, or -1.
    """
    pts = np.asarray(simplex_points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] != pts.shape[1] + 1:
        raise InvalidInputError(f"orientation needs d+1 points of dimension d, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise InvalidInputError("orientation: non-finite coordinates")
    edges = pts[1:] - pts[0]
    det = _det_float(edges)
    bound = _det_error_bound(edges)
    if abs(det) > bound:
        return 1 if det > 0 else -1
    return _exact_det_sign(edges)


# ---------------------------------------------------------------------------
# membership / support
# ---------------------------------------------------------------------------


def _check_point(body: Body, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (body.dim,):
        raise InvalidInputError(f"point of dimension {x.shape} vs body dimension {body.dim}")
    return x


def contains(body: Body, x) -> bool:
    """Closed-body membership test (boundary counts as inside)."""
    x = _check_point(body, x)
    eps = _CONTAINS_SLACK
    if body.kind == "ball":
        return float(np.linalg.norm(x)) <= body.scale + eps
    if body.kind == "cube":
        return bool(np.all(x >= -eps) and np.all(x <= 1.0 + eps))
    if body.kind == "simplex":
        s = body.scale
        return bool(np.all(x >= -s * eps) and float(x.sum()) <= s * (1.0 + eps))
    a = np.asarray(body.params)
    return float(np.sum((x / a) ** 2)) <= 1.0 + eps


def contains_batch(body: Body, pts: np.ndarray) -> np.ndarray:
    """Vectorized membership for an (n, d) array of points."""
    pts = np.asarray(pts, dtype=float)
    eps = _CONTAINS_SLACK
    if body.kind == "ball":
        return np.einsum("ij,ij->i", pts, pts) <= (body.scale + eps) ** 2
    if body.kind == "cube":
        return np.all(pts >= -eps, axis=1) & np.all(pts <= 1.0 + eps, axis=1)
    if body.kind == "simplex":
        s = body.scale
        return np.all(pts >= -s * eps, axis=1) & (pts.sum(axis=1) <= s * (1.0 + eps))
    a = np.asarray(body.params)
    q = pts / a
    return np.einsum("ij,ij->i", q, q) <= 1.0 + eps


def _unit(u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    norm = float(np.linalg.norm(u))
    if norm == 0.0:
        raise InvalidInputError("direction must be a nonzero vector")
    if abs(norm - 1.0) > _UNIT_NORM_TOL:
        raise InvalidInputError(f"direction must be a unit vector (|u| = {norm})")
    return u / norm


def support(body: Body, u) -> float:
    """Support value h_K(u) = max over y in K of u . y."""
    u = _unit(u)
    if u.shape != (body.dim,):
        raise InvalidInputError("direction dimension mismatch")
    if body.kind == "ball":
        return body.scale
    if body.kind == "cube":
        return float(np.maximum(u, 0.0).sum())
    if body.kind == "simplex":
        return float(body.scale * max(0.0, float(u.max())))
    a = np.asarray(body.params)
    return float(np.linalg.norm(a * u))


# ---------------------------------------------------------------------------
# cap volumes (closed forms)
# ---------------------------------------------------------------------------


def _ball_cap_volume(dim: int, radius: float, t) -> np.ndarray:
    """Volume of {y in ball : u.y >= t}, vectorized over t.

    The ball has volume one by construction, so this equals half the
    regularized incomplete beta I_{1-(t/r)^2}((d+1)/2, 1/2) for t >= 0 and the
    reflected complement for t < 0.
    """
    t = np.asarray(t, dtype=float)
    ratio = np.clip(np.abs(t) / radius, 0.0, 1.0)
    x = 1.0 - ratio**2
    half = 0.5 * betainc((dim + 1) / 2.0, 0.5, x)
    out = np.where(t >= 0.0, half, 1.0 - half)
    out = np.where(t >= radius, 0.0, out)
    out = np.where(t <= -radius, 1.0, out)
    return out


def _cube_cap_volume(u: np.ndarray, t) -> np.ndarray:
    """Volume of {y in [0,1]^d : u.y >= t}, vectorized over t.

    Flipping the negative-weight coordinates reduces to the CDF of a weighted
    Irwin-Hall sum with positive weights a_i:
    P(sum a_i W_i <= s) = sum over subsets S of (-1)^|S| (s - a_S)_+^k / (k! prod a).
    """
    t = np.asarray(t, dtype=float)
    neg = u < 0
    shift = float(u[neg].sum())
    a = np.abs(u)
    a = a[a > 1e-300]
    k = a.size
    s = t - shift
    if k == 0:
        return np.where(s <= 0.0, 1.0, 0.0)
    total = float(a.sum())
    # subset sums; 2^k <= 64 terms for d <= 6
    subset_sums = np.zeros(1)
    for w in a:
        subset_sums = np.concatenate([subset_sums, subset_sums + w])
    signs = np.ones(subset_sums.size)
    # parity of subset size
    sizes = np.zeros(1, dtype=int)
    for _ in range(k):
        sizes = np.concatenate([sizes, sizes + 1])
    signs[sizes % 2 == 1] = -1.0
    denom = math.factorial(k) * float(np.prod(a))
    sc = np.clip(s, 0.0, total)
    terms = signs * np.maximum(sc[..., None] - subset_sums, 0.0) ** k
    cdf = terms.sum(axis=-1) / denom
    cdf = np.clip(cdf, 0.0, 1.0)
    cdf = np.where(s <= 0.0, 0.0, np.where(s >= total, 1.0, cdf))
    return 1.0 - cdf


def _simplex_linear_cdf(gammas: np.ndarray):
    """CDF of u . X for X uniform on a simplex with vertex values ``gammas``.

    The density is the B-spline with knots at the (sorted) vertex values
    (Curry-Schoenberg); repeated knots handle ties exactly.  Returns a
    callable mapping arrays of t to probabilities.
    """
    knots = np.sort(np.asarray(gammas, dtype=float))
    lo, hi = knots[0], knots[-1]
    if hi - lo < 1e-300:
        return lambda t: np.where(np.asarray(t, float) >= lo, 1.0, 0.0)
    k = knots.size - 1  # antiderivative of the basis element integrates to (hi-lo)/k
    basis = BSpline.basis_element(knots, extrapolate=False)
    anti = basis.antiderivative()
    total = (hi - lo) / k

    def cdf(t):
        t = np.asarray(t, dtype=float)
        tc = np.clip(t, lo, hi)
        vals = anti(tc) / total
        vals = np.nan_to_num(vals, nan=0.0)
        return np.where(t >= hi, 1.0, np.where(t <= lo, 0.0, np.clip(vals, 0.0, 1.0)))

    return cdf


def _simplex_vertex_values(body: Body, u: np.ndarray) -> np.ndarray:
    # vertices are 0 and scale * e_i
    return np.concatenate([[0.0], body.scale * u])


def cap_volume(body: Body, u, t: float) -> float:
    """Volume of the cap {y in K : u . y >= t} in [0, 1]."""
    u = _unit(u)
    if u.shape != (body.dim,):
        raise InvalidInputError("direction dimension mismatch")
    return float(_cap_volume_profile(body, u, np.asarray([t], dtype=float))[0])


def _cap_volume_profile(body: Body, u: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """Vectorized cap volume over offsets ``ts`` for a fixed unit direction."""
    if body.kind == "ball":
        return _ball_cap_volume(body.dim, body.scale, ts)
    if body.kind == "ellipsoid":
        # volume-preserving map to the volume-one ball: z_i = y_i * r / A_i
        r = unit_ball_volume(body.dim) ** (-1.0 / body.dim)
        w = u * np.asarray(body.params) / r
        wn = float(np.linalg.norm(w))
        return _ball_cap_volume(body.dim, r, ts / wn)
    if body.kind == "cube":
        return _cube_cap_volume(u, ts)
    cdf = _simplex_linear_cdf(_simplex_vertex_values(body, u))
    return 1.0 - cdf(ts)


def cap_for_volume(body: Body, u, eps: float) -> Cap:
    """Find the cap of volume ``eps`` in direction ``u`` by monotone bisection."""
    u = _unit(u)
    if not (0.0 < eps < 1.0):
        raise InvalidInputError(f"cap volume must lie in (0, 1), got {eps}")
    lo = -support(body, -u)  # cap volume 1 here
    hi = support(body, u)  # cap volume 0 here
    flo, fhi = 1.0, 0.0
    t = 0.5 * (lo + hi)
    v = cap_volume(body, u, t)
    it = 0
    while it < 200:
        if abs(v - eps) <= 0.25 * CAP_VOLUME_TOL:
            break
        if v > eps:
            lo, flo = t, v
        else:
            hi, fhi = t, v
        if hi - lo <= 4.0 * _EPS * max(1.0, abs(lo), abs(hi)):
            break
        t = 0.5 * (lo + hi)
        v = cap_volume(body, u, t)
        it += 1
    del flo, fhi
    return Cap(direction=u, offset=float(t), volume=float(v))


# ---------------------------------------------------------------------------
# helpers shared with the hull engine and tests
# ---------------------------------------------------------------------------


def simplex_volume(points) -> float:
    """Volume of the simplex spanned by d+1 points (|det| / d!)."""
    pts = np.asarray(points, dtype=float)
    d = pts.shape[1]
    edges = pts[1:] - pts[0]
    return abs(_det_float(edges)) / math.factorial(d)


def face_subsets(vertex_tuple, size: int):
    """All ``size``-subsets of a facet's vertex indices, as sorted tuples."""
    return combinations(sorted(vertex_tuple), size)
