"""Independent floating-point oracles for the core identities.

Everything here is recomputed from the raw scenario text in coordinates:
the coordinate metric comes from the frame matrix and the Gram matrix,
Christoffel symbols and exterior derivatives come from central finite
differences, and the Reeb fields are solved pointwise by least squares.
None of the exact symbolic machinery is reused, so agreement between the
two pipelines is meaningful evidence.

Step sizes: first derivatives use 1e-6; derivatives of Christoffel
symbols (which are themselves finite differences) use an outer step of
1e-3 so that rounding noise from the inner differences stays near 1e-7,
below the 1e-6 acceptance tolerance.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .scalars import ScalarExpr, parse_expr

_H1 = 1e-6
_H2 = 1e-3
_MAX_RESAMPLE = 100

ORACLE_IDS = ("d_squared", "pair.reeb", "metric.associated",
              "normality.N1", "connection.reeb_derivative",
              "curvature.reeb_identity")

Point = Dict[str, float]


class _Numeric:
    """Coordinate-level numeric view of a scenario."""

    def __init__(self, scenario):
        self.scenario = scenario
        self.coords: List[str] = list(scenario.coordinates)
        self.n = len(self.coords)
        var = tuple(self.coords)

        def grid(rows):
            return [[parse_expr(str(t), var) for t in row] for row in rows]

        self.alpha = (
            [parse_expr(str(t), var) for t in scenario.alpha1],
            [parse_expr(str(t), var) for t in scenario.alpha2])
        self.frame_exprs = grid(scenario.frame)
        self.gram_exprs = grid(scenario.metric)
        self.phi_exprs = grid(scenario.phi)
        self.base = {key: float(Fraction(value))
                     for key, value in scenario.base_point.items()}

    # -- pointwise evaluation ------------------------------------------

    def _mat(self, exprs, point: Point) -> np.ndarray:
        return np.array([[entry.evaluate_float(point) for entry in row]
                         for row in exprs])

    def alpha_at(self, i: int, point: Point) -> np.ndarray:
        return np.array([comp.evaluate_float(point)
                         for comp in self.alpha[i]])

    def frame_at(self, point: Point) -> np.ndarray:
        return self._mat(self.frame_exprs, point)

    def metric_at(self, point: Point) -> np.ndarray:
        a_inv = np.linalg.inv(self.frame_at(point))
        gram = self._mat(self.gram_exprs, point)
        return a_inv.T @ gram @ a_inv

    def phi_at(self, point: Point) -> np.ndarray:
        frame = self.frame_at(point)
        return frame @ self._mat(self.phi_exprs, point) \
            @ np.linalg.inv(frame)

    def d_alpha_at(self, i: int, point: Point) -> np.ndarray:
        """Exterior derivative with the 1/2 normalization, so that
        d(alpha)(X, Y) = (X alpha(Y) - Y alpha(X)) / 2 on coordinate
        fields."""
        partials = np.array([
            _partial(lambda p: self.alpha_at(i, p), point, coord)
            for coord in self.coords])
        return 0.5 * (partials - partials.T)

    def reeb_at(self, i: int, point: Point) -> np.ndarray:
        j = 1 - i
        rows = [self.alpha_at(i, point)[None, :],
                self.alpha_at(j, point)[None, :],
                self.d_alpha_at(i, point).T,
                self.d_alpha_at(j, point).T]
        matrix = np.vstack(rows)
        target = np.zeros(matrix.shape[0])
        target[0] = 1.0
        solution = np.linalg.lstsq(matrix, target, rcond=None)[0]
        return solution

    def christoffel(self, point: Point) -> np.ndarray:
        """Gamma[k, i, j] of the Levi-Civita connection in coordinates."""
        g = self.metric_at(point)
        g_inv = np.linalg.inv(g)
        dg = np.array([_partial(self.metric_at, point, coord)
                       for coord in self.coords])  # dg[i, j, l]
        # 1/2 g^{kl} (d_i g_{jl} + d_j g_{il} - d_l g_{ij})
        bracket = (dg.transpose(0, 1, 2) + dg.transpose(1, 0, 2)
                   - dg.transpose(1, 2, 0))
        return 0.5 * np.einsum("kl,ijl->kij", g_inv, bracket)

    def curvature_at(self, point: Point) -> np.ndarray:
        """R[l, k, a, b] with R(e_a, e_b) e_k = R^l_{k a b} e_l."""
        gamma = self.christoffel(point)
        dgamma = np.array([_partial(self.christoffel, point, coord, _H2)
                           for coord in self.coords])  # dgamma[a, l, b, k]
        riemann = np.empty((self.n,) * 4)
        prod = np.einsum("lam,mbk->lkab", gamma, gamma)
        for a in range(self.n):
            for b in range(self.n):
                riemann[:, :, a, b] = (dgamma[a, :, b, :]
                                       - dgamma[b, :, a, :]
                                       + prod[:, :, a, b]
                                       - prod[:, :, b, a])
        return riemann

    def foliation_split(self, point: Point) -> Tuple[np.ndarray, np.ndarray]:
        """Pointwise bases of the two integrable factors: factor i is the
        joint kernel of the other contact form and its differential."""
        bases = []
        for i in (0, 1):
            j = 1 - i
            rows = np.vstack([self.alpha_at(j, point)[None, :],
                              self.d_alpha_at(j, point).T])
            bases.append(_nullspace(rows))
        return bases[0], bases[1]

    # -- probe sampling -------------------------------------------------

    def probe_points(self, count: int, seed: int) -> List[Point]:
        rng = random.Random(seed)
        points = []
        while len(points) < count:
            for _ in range(_MAX_RESAMPLE):
                point = {coord: self.base[coord] + rng.uniform(-0.5, 0.5)
                         for coord in self.coords}
                if self._regular(point):
                    points.append(point)
                    break
            else:
                raise ValueError("could not sample a regular probe point")
        return points

    def _regular(self, point: Point) -> bool:
        try:
            frame = self.frame_at(point)
            if abs(np.linalg.det(frame)) < 1e-8:
                return False
            self.metric_at(point)
            self.phi_at(point)
            for i in (0, 1):
                self.alpha_at(i, point)
        except (ZeroDivisionError, np.linalg.LinAlgError, OverflowError):
            return False
        return True


def _partial(func: Callable[[Point], np.ndarray], point: Point,
             coord: str, step: float = _H1) -> np.ndarray:
    plus = dict(point)
    minus = dict(point)
    plus[coord] += step
    minus[coord] -= step
    return (np.asarray(func(plus)) - np.asarray(func(minus))) / (2 * step)


def _second_partial(func, point: Point, ci: str, cj: str,
                    step: float = 1e-4) -> np.ndarray:
    """Symmetric second-difference stencil; by construction the result is
    identical for (ci, cj) and (cj, ci)."""
    if ci == cj:
        plus, minus = dict(point), dict(point)
        plus[ci] += step
        minus[ci] -= step
        return (np.asarray(func(plus)) - 2 * np.asarray(func(point))
                + np.asarray(func(minus))) / step ** 2
    lo, hi = sorted((ci, cj))
    values = []
    for si, sj in ((step, step), (step, -step), (-step, step),
                   (-step, -step)):
        shifted = dict(point)
        shifted[lo] += si
        shifted[hi] += sj
        values.append(np.asarray(func(shifted)))
    return (values[0] - values[1] - values[2] + values[3]) / (4 * step ** 2)


def _nullspace(matrix: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    _, sigma, vt = np.linalg.svd(matrix)
    rank = int(np.sum(sigma > tol * max(1.0, sigma[0] if len(sigma) else 1.0)))
    return vt[rank:].T


# -- identity residuals ------------------------------------------------


def _residual_d_squared(num: _Numeric, points: Sequence[Point]) -> float:
    """d(d alpha) = 0 from second partial derivatives.

    The mixed partials are evaluated once per unordered coordinate pair
    with a shared stencil, so the antisymmetrized combination tests that
    the stencil values genuinely cancel."""
    worst = 0.0
    n = num.n
    for point in points:
        for i in (0, 1):
            func = lambda p, i=i: num.alpha_at(i, p)
            table = {}
            for a in range(n):
                for b in range(a, n):
                    table[(a, b)] = _second_partial(
                        func, point, num.coords[a], num.coords[b])

            def second(a, b):
                return table[(min(a, b), max(a, b))]

            for a in range(n):
                for b in range(a + 1, n):
                    for c in range(b + 1, n):
                        value = (second(a, b)[c] - second(a, c)[b]
                                 - second(b, a)[c] + second(b, c)[a]
                                 + second(c, a)[b] - second(c, b)[a])
                        worst = max(worst, abs(float(value)))
    return worst


def _residual_reeb(num: _Numeric, points: Sequence[Point]) -> float:
    """Compare the exact Reeb fields against pointwise least squares."""
    from .contact import validate_contact_pair

    scenario = num.scenario
    pres = scenario.presentation()
    alpha1, alpha2 = scenario.forms()
    pair = validate_contact_pair(pres, alpha1, alpha2, *scenario.pair_type)
    worst = 0.0
    for point in points:
        frame = num.frame_at(point)
        for i, z_sym in enumerate((pair.z1, pair.z2)):
            sym = frame @ np.array([comp.evaluate_float(point)
                                    for comp in z_sym.components])
            worst = max(worst, float(np.max(np.abs(
                sym - num.reeb_at(i, point)))))
    return worst


def _residual_associated(num: _Numeric, points: Sequence[Point]) -> float:
    worst = 0.0
    for point in points:
        g = num.metric_at(point)
        phi = num.phi_at(point)
        d_sum = num.d_alpha_at(0, point) + num.d_alpha_at(1, point)
        worst = max(worst, float(np.max(np.abs(g @ phi - d_sum))))
        for i in (0, 1):
            duality = g @ num.reeb_at(i, point) - num.alpha_at(i, point)
            worst = max(worst, float(np.max(np.abs(duality))))
    return worst


def _residual_n1(num: _Numeric, points: Sequence[Point]) -> float:
    n = num.n
    worst = 0.0
    for point in points:
        phi = num.phi_at(point)
        dphi = np.array([_partial(num.phi_at, point, coord)
                         for coord in num.coords])  # dphi[c, k, a]
        d1 = num.d_alpha_at(0, point)
        d2 = num.d_alpha_at(1, point)
        z1 = num.reeb_at(0, point)
        z2 = num.reeb_at(1, point)
        for a in range(n):
            for b in range(a + 1, n):
                # [phi e_a, phi e_b] for the column vector fields
                bracket = (phi[:, a] @ dphi[:, :, b]
                           - phi[:, b] @ dphi[:, :, a])
                # - phi [phi e_a, e_b] - phi [e_a, phi e_b]
                bracket += phi @ dphi[b, :, a] - phi @ dphi[a, :, b]
                value = bracket + 2 * d1[a, b] * z1 + 2 * d2[a, b] * z2
                worst = max(worst, float(np.max(np.abs(value))))
    return worst


def _residual_reeb_derivative(num: _Numeric, points: Sequence[Point]
                              ) -> float:
    def reeb_sum(point):
        return num.reeb_at(0, point) + num.reeb_at(1, point)

    worst = 0.0
    for point in points:
        gamma = num.christoffel(point)
        z = reeb_sum(point)
        dz = np.array([_partial(reeb_sum, point, coord)
                       for coord in num.coords])  # dz[a, k]
        phi = num.phi_at(point)
        for a in range(num.n):
            value = dz[a] + gamma[:, a, :] @ z + phi[:, a]
            worst = max(worst, float(np.max(np.abs(value))))
    return worst


def _residual_curvature(num: _Numeric, points: Sequence[Point]) -> float:
    n = num.n
    worst = 0.0
    for point in points:
        riemann = num.curvature_at(point)
        z = num.reeb_at(0, point) + num.reeb_at(1, point)
        b1, b2 = num.foliation_split(point)
        basis = np.hstack([b1, b2])
        if basis.shape[1] != n:
            return float("inf")
        coefficients = np.linalg.solve(basis, np.eye(n))
        split = (b1 @ coefficients[:b1.shape[1]],
                 b2 @ coefficients[b1.shape[1]:])
        alphas = (num.alpha_at(0, point), num.alpha_at(1, point))
        for a in range(n):
            for b in range(a + 1, n):
                lhs = riemann[:, :, a, b] @ z
                rhs = np.zeros(n)
                for i in (0, 1):
                    xa = split[i][:, a]
                    xb = split[i][:, b]
                    rhs += alphas[i] @ xb * xa - alphas[i] @ xa * xb
                worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


_RESIDUALS = {
    "d_squared": _residual_d_squared,
    "pair.reeb": _residual_reeb,
    "metric.associated": _residual_associated,
    "normality.N1": _residual_n1,
    "connection.reeb_derivative": _residual_reeb_derivative,
    "curvature.reeb_identity": _residual_curvature,
}


def numeric_oracle(scenario, identity_id: str, probe_count: int = 8,
                   seed: int = 1) -> float:
    """Maximum residual of the named identity over seeded float probes."""
    if identity_id.startswith("submanifold.") \
            and identity_id.endswith(".minimal"):
        return _submanifold_minimal(scenario, identity_id, probe_count)
    if identity_id not in _RESIDUALS:
        raise ValueError(f"unknown oracle identity {identity_id!r}; "
                         f"choose from {', '.join(ORACLE_IDS)} or "
                         "submanifold.<name>.minimal")
    numeric = _Numeric(scenario)
    points = numeric.probe_points(probe_count, seed)
    return _RESIDUALS[identity_id](numeric, points)


def _submanifold_minimal(scenario, identity_id: str, probe_count: int,
                         seed: int = 1) -> float:
    """Sup-norm of the numerically computed mean curvature vector.

    The span fields, Christoffel symbols and tangential projections are
    all recomputed in floating point, so a small value independently
    certifies minimality and a large value certifies its failure."""
    name = identity_id[len("submanifold."):-len(".minimal")]
    numeric = _Numeric(scenario)
    var = tuple(numeric.coords)
    span_exprs = [[parse_expr(str(t), var) for t in vec]
                  for vec in scenario.submanifolds[name]]
    points = numeric.probe_points(probe_count, seed)
    rank = len(span_exprs)

    def span_field(index):
        def field(point):
            frame = numeric.frame_at(point)
            comps = np.array([entry.evaluate_float(point)
                              for entry in span_exprs[index]])
            return frame @ comps
        return field

    fields = [span_field(index) for index in range(rank)]
    worst = 0.0
    for point in points:
        gamma = numeric.christoffel(point)
        g = numeric.metric_at(point)
        tangent = np.column_stack([field(point) for field in fields])
        gram = tangent.T @ g @ tangent
        gram_inv = np.linalg.inv(gram)
        mean = np.zeros(numeric.n)
        for a in range(rank):
            u = tangent[:, a]
            for b in range(rank):
                dv = np.array([_partial(fields[b], point, coord)
                               for coord in numeric.coords])  # dv[i, k]
                nabla = u @ dv + np.einsum("kij,i,j->k", gamma, u,
                                           tangent[:, b])
                coeff = np.linalg.solve(gram, tangent.T @ g @ nabla)
                normal = nabla - tangent @ coeff
                mean += gram_inv[a, b] * normal
        worst = max(worst, float(np.max(np.abs(mean / rank))))
    return worst
