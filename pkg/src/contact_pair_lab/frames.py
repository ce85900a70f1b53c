"""Differential geometry over an explicit frame presentation.

A manifold is modeled by a chart plus a pointwise-invertible matrix of
frame vector fields with rational-function coefficients.  Vector fields,
forms, endomorphism fields and metrics are stored in frame components, so
every geometric identity reduces to canonical-form equality of scalars.

Convention ledger (fixed once, asserted by tests):
  * wedge products multiply coefficients with the determinant convention
    on strictly increasing index tuples (no 1/p!q! factor);
  * form evaluation carries the 1/p! factor, so that
    (a ^ b)(X, Y) = (a(X)b(Y) - a(Y)b(X)) / 2 and
    d(alpha)(X, Y) = (X alpha(Y) - Y alpha(X) - alpha([X, Y])) / 2;
  * the curvature operator is R_{XY} = [nabla_X, nabla_Y] - nabla_[X,Y].
"""

from __future__ import annotations

import random
import warnings
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .scalars import Rational, ScalarExpr, parse_expr

Point = Mapping[str, Fraction]


class FrameError(Exception):
    pass


class ChartDomainWarning(UserWarning):
    """A symbolically nonzero quantity vanished at a probe point."""


def _perm_sign(indices: Sequence[int]) -> int:
    sign = 1
    seq = list(indices)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class FramePresentation:
    """Chart coordinates plus an invertible matrix of frame vector fields.

    ``frame[i][a]`` is the coefficient of d/dx_i in the frame field e_a.
    The dual coframe and the bracket coefficients C^c_ab with
    [e_a, e_b] = sum_c C^c_ab e_c are computed at construction time, and
    the Jacobi identity is certified symbolically on coordinate brackets.
    """

    def __init__(self, coordinates: Sequence[str], frame: Sequence[Sequence],
                 base_point: Mapping[str, object], check_jacobi: bool = True):
        self.coordinates = tuple(coordinates)
        self.vars = self.coordinates
        n = len(self.coordinates)
        if len(frame) != n or any(len(row) != n for row in frame):
            raise FrameError("frame matrix must be square of the chart dimension")
        self.frame = [[self._scalar(entry) for entry in row] for row in frame]
        self.base_point = {name: Fraction(value)
                           for name, value in base_point.items()}
        missing = set(self.coordinates) - set(self.base_point)
        if missing:
            raise FrameError(f"base point does not assign {sorted(missing)}")
        det = linalg.determinant(self.frame)
        if det.is_zero():
            raise FrameError("frame matrix is singular over the scalar field")
        if det.evaluate(self.base_point) == 0:
            raise FrameError("frame matrix is singular at the base point")
        self.coframe = linalg.invert(self.frame)
        self._structure = self._compute_structure()
        if check_jacobi:
            self._certify_jacobi()

    # -- scalar helpers ---------------------------------------------------

    def _scalar(self, value) -> ScalarExpr:
        if isinstance(value, ScalarExpr):
            if value.vars != self.coordinates:
                raise FrameError("scalar declared over different coordinates")
            return value
        if isinstance(value, str):
            return parse_expr(value, self.coordinates)
        return ScalarExpr.constant(value, self.coordinates)

    def scalar(self, value) -> ScalarExpr:
        return self._scalar(value)

    @property
    def dim(self) -> int:
        return len(self.coordinates)

    @property
    def zero(self) -> ScalarExpr:
        return ScalarExpr.constant(0, self.coordinates)

    @property
    def one(self) -> ScalarExpr:
        return ScalarExpr.constant(1, self.coordinates)

    # -- brackets ----------------------------------------------------------

    def _coordinate_bracket(self, x: Sequence[ScalarExpr],
                            y: Sequence[ScalarExpr]) -> List[ScalarExpr]:
        n = self.dim
        out = []
        for i in range(n):
            acc = self.zero
            for j in range(n):
                if not x[j].is_zero():
                    acc = acc + x[j] * y[i].differentiate(self.coordinates[j])
                if not y[j].is_zero():
                    acc = acc - y[j] * x[i].differentiate(self.coordinates[j])
            out.append(acc)
        return out

    def _compute_structure(self) -> Dict[Tuple[int, int], Tuple[ScalarExpr, ...]]:
        n = self.dim
        structure: Dict[Tuple[int, int], Tuple[ScalarExpr, ...]] = {}
        columns = [[self.frame[i][a] for i in range(n)] for a in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                coords = self._coordinate_bracket(columns[a], columns[b])
                comps = tuple(
                    sum((self.coframe[c][i] * coords[i] for i in range(n)),
                        self.zero)
                    for c in range(n))
                structure[(a, b)] = comps
        return structure

    def bracket_coeffs(self, a: int, b: int) -> Tuple[ScalarExpr, ...]:
        if a == b:
            return (self.zero,) * self.dim
        if a < b:
            return self._structure[(a, b)]
        return tuple(-c for c in self._structure[(b, a)])

    def _certify_jacobi(self) -> None:
        n = self.dim
        columns = [[self.frame[i][a] for i in range(n)] for a in range(n)]
        for a, b, c in combinations(range(n), 3):
            total = [self.zero] * n
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                inner = self._coordinate_bracket(columns[y], columns[z])
                outer = self._coordinate_bracket(columns[x], inner)
                total = [t + o for t, o in zip(total, outer)]
            if any(not t.is_zero() for t in total):
                raise FrameError(
                    f"Jacobi identity fails on frame triple ({a},{b},{c})")

    # -- directional derivative --------------------------------------------

    def direction(self, a: int, f: ScalarExpr) -> ScalarExpr:
        acc = self.zero
        for i, coord in enumerate(self.coordinates):
            if not self.frame[i][a].is_zero():
                acc = acc + self.frame[i][a] * f.differentiate(coord)
        return acc

    # -- conversions ---------------------------------------------------------

    def coordinate_components(self, field: "VectorField") -> List[ScalarExpr]:
        n = self.dim
        return [sum((self.frame[i][a] * field.components[a] for a in range(n)),
                    self.zero) for i in range(n)]

    def vector_from_coordinates(self, coords: Sequence[ScalarExpr]) -> "VectorField":
        n = self.dim
        comps = tuple(
            sum((self.coframe[a][i] * coords[i] for i in range(n)), self.zero)
            for a in range(n))
        return VectorField(self, comps)

    def frame_field(self, a: int) -> "VectorField":
        comps = tuple(self.one if b == a else self.zero for b in range(self.dim))
        return VectorField(self, comps)

    def vector(self, components: Sequence) -> "VectorField":
        return VectorField(self, tuple(self._scalar(c) for c in components))

    def is_regular_at(self, point: Point) -> bool:
        try:
            values = [[entry.evaluate(point) for entry in row]
                      for row in self.frame]
        except Exception:
            return False
        return linalg.rational_rank(values) == self.dim


class VectorField:
    __slots__ = ("frame", "components")

    def __init__(self, frame: FramePresentation, components: Tuple[ScalarExpr, ...]):
        if len(components) != frame.dim:
            raise FrameError("component count must equal the frame dimension")
        self.frame = frame
        self.components = tuple(components)

    def __add__(self, other: "VectorField") -> "VectorField":
        self._check(other)
        return VectorField(self.frame, tuple(a + b for a, b in
                                             zip(self.components, other.components)))

    def __sub__(self, other: "VectorField") -> "VectorField":
        self._check(other)
        return VectorField(self.frame, tuple(a - b for a, b in
                                             zip(self.components, other.components)))

    def __neg__(self) -> "VectorField":
        return VectorField(self.frame, tuple(-a for a in self.components))

    def scale(self, factor: ScalarExpr) -> "VectorField":
        return VectorField(self.frame, tuple(factor * a for a in self.components))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def _check(self, other: "VectorField") -> None:
        if self.frame is not other.frame:
            raise FrameError("mismatched frame presentations")

    def apply(self, f: ScalarExpr) -> ScalarExpr:
        """Directional derivative of a scalar along this field."""
        acc = self.frame.zero
        for a, comp in enumerate(self.components):
            if not comp.is_zero():
                acc = acc + comp * self.frame.direction(a, f)
        return acc

    def __eq__(self, other) -> bool:
        return (isinstance(other, VectorField) and self.frame is other.frame
                and self.components == other.components)

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"VectorField({[str(c) for c in self.components]})"


def bracket(x: VectorField, y: VectorField) -> VectorField:
    """Exact Lie bracket, via coordinate components and back."""
    x._check(y)
    frame = x.frame
    coords = frame._coordinate_bracket(frame.coordinate_components(x),
                                       frame.coordinate_components(y))
    return frame.vector_from_coordinates(coords)


class PForm:
    """Alternating p-form stored on strictly increasing coframe tuples."""

    __slots__ = ("context", "degree", "coeffs")

    def __init__(self, context, degree: int, coeffs: Mapping[Tuple[int, ...], ScalarExpr]):
        if degree > context.dim:
            raise FrameError("form degree exceeds the frame dimension")
        self.context = context
        self.degree = degree
        self.coeffs = {}
        for key, value in coeffs.items():
            if list(key) != sorted(key) or len(set(key)) != len(key):
                raise FrameError("form keys must be strictly increasing tuples")
            if len(key) != degree:
                raise FrameError("form key length must match the degree")
            if not value.is_zero():
                self.coeffs[tuple(key)] = value

    @classmethod
    def zero_form(cls, context, degree: int) -> "PForm":
        return cls(context, degree, {})

    def get(self, key: Sequence[int]) -> ScalarExpr:
        """Coefficient on an arbitrary tuple, resolved by sign-sorting."""
        if len(set(key)) != len(key):
            return self.context.zero
        ordered = tuple(sorted(key))
        coeff = self.coeffs.get(ordered)
        if coeff is None:
            return self.context.zero
        return coeff if _perm_sign(key) == 1 else -coeff

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "PForm") -> "PForm":
        if self.degree != other.degree or self.context is not other.context:
            raise FrameError("cannot add forms of different degree or context")
        keys = set(self.coeffs) | set(other.coeffs)
        return PForm(self.context, self.degree,
                     {k: self.get(k) + other.get(k) for k in keys})

    def __sub__(self, other: "PForm") -> "PForm":
        return self + other.scale(ScalarExpr.constant(-1, _ctx_vars(self.context)))

    def scale(self, factor: ScalarExpr) -> "PForm":
        return PForm(self.context, self.degree,
                     {k: factor * v for k, v in self.coeffs.items()})

    def nonzero_witness(self) -> Optional[Tuple[Tuple[int, ...], ScalarExpr]]:
        for key in sorted(self.coeffs):
            return key, self.coeffs[key]
        return None

    def vanishes_at(self, point: Point) -> bool:
        return all(v.evaluate(point) == 0 for v in self.coeffs.values())

    def __repr__(self):
        inner = ", ".join(f"{k}: {v}" for k, v in sorted(self.coeffs.items()))
        return f"PForm(deg={self.degree}, {{{inner}}})"


def _ctx_vars(context) -> Tuple[str, ...]:
    return context.vars


def one_form(context, components: Sequence[ScalarExpr]) -> PForm:
    return PForm(context, 1, {(a,): c for a, c in enumerate(components)})


def wedge(a: PForm, b: PForm) -> PForm:
    if a.context is not b.context:
        raise FrameError("wedge operands live on different contexts")
    degree = a.degree + b.degree
    if degree > a.context.dim:
        raise FrameError("wedge degree exceeds the frame dimension")
    coeffs: Dict[Tuple[int, ...], ScalarExpr] = {}
    for ka, va in a.coeffs.items():
        for kb, vb in b.coeffs.items():
            if set(ka) & set(kb):
                continue
            merged = ka + kb
            ordered = tuple(sorted(merged))
            term = va * vb
            if _perm_sign(merged) == -1:
                term = -term
            if ordered in coeffs:
                coeffs[ordered] = coeffs[ordered] + term
            else:
                coeffs[ordered] = term
    return PForm(a.context, degree, coeffs)


def form_power(a: PForm, n: int) -> PForm:
    if n == 0:
        return PForm(a.context, 0, {(): ScalarExpr.constant(1, _ctx_vars(a.context))})
    result = a
    for _ in range(n - 1):
        result = wedge(result, a)
    return result


def _det(matrix: List[List[ScalarExpr]], zero: ScalarExpr) -> ScalarExpr:
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    acc = zero
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * _det(minor, zero)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def eval_form(form: PForm, *fields) -> ScalarExpr:
    """Contract a p-form with p vector fields (1/p! convention)."""
    if len(fields) != form.degree:
        raise FrameError("wrong number of arguments for the form degree")
    zero = ScalarExpr.constant(0, _ctx_vars(form.context))
    if form.degree == 0:
        return form.coeffs.get((), zero)
    comps = [f.components if isinstance(f, VectorField) else tuple(f)
             for f in fields]
    acc = zero
    for key, coeff in form.coeffs.items():
        matrix = [[comps[j][key[i]] for j in range(form.degree)]
                  for i in range(form.degree)]
        acc = acc + coeff * _det(matrix, zero)
    p_factorial = 1
    for i in range(2, form.degree + 1):
        p_factorial *= i
    return acc * ScalarExpr.constant(Fraction(1, p_factorial), _ctx_vars(form.context))


def exterior_derivative(form: PForm) -> PForm:
    """Frame-formula exterior derivative, matched to the 1/p! evaluation."""
    context = form.context
    n = context.dim
    if form.degree >= n:
        raise FrameError("cannot take d of a top-degree form")
    zero = ScalarExpr.constant(0, _ctx_vars(context))
    coeffs: Dict[Tuple[int, ...], ScalarExpr] = {}
    for key in combinations(range(n), form.degree + 1):
        acc = zero
        for i, a in enumerate(key):
            rest = key[:i] + key[i + 1:]
            term = context.direction(a, form.get(rest))
            acc = acc + term if i % 2 == 0 else acc - term
        for i in range(len(key)):
            for j in range(i + 1, len(key)):
                rest = tuple(k for t, k in enumerate(key) if t not in (i, j))
                cs = context.bracket_coeffs(key[i], key[j])
                inner = zero
                for c in range(n):
                    if not cs[c].is_zero():
                        coeff = form.get((c,) + rest)
                        if not coeff.is_zero():
                            inner = inner + cs[c] * coeff
                acc = acc - inner if (i + j) % 2 == 1 else acc + inner
        coeffs[key] = acc
    return PForm(context, form.degree + 1, coeffs)


def d_scalar(context, f: ScalarExpr) -> PForm:
    return PForm(context, 1,
                 {(a,): context.direction(a, f) for a in range(context.dim)})


def seeded_probe_points(presentation, seed: int = 1, count: int = 8,
                        max_attempts: int = 100) -> List[Dict[str, Fraction]]:
    """Deterministic rational probe points where the frame stays invertible.

    Coordinates get nonzero numerators and denominators at most 16, keeping
    exact cross-checks cheap.
    """
    rng = random.Random(seed)
    points = []
    attempts = 0
    while len(points) < count:
        attempts += 1
        if attempts > max_attempts:
            raise FrameError("could not sample regular probe points")
        point = {}
        for name in presentation.coordinates:
            num = rng.randint(1, 16) * rng.choice((-1, 1))
            den = rng.randint(1, 16)
            point[name] = Fraction(num, den)
        if presentation.is_regular_at(point):
            points.append(point)
    return points


def nonvanishing_certificate(label: str, values: Sequence[ScalarExpr],
                             points: Sequence[Point]) -> bool:
    """Probe a symbolically nonzero family; warn when a probe kills it.

    Returns True when the family is nonzero at every probe point.
    """
    ok = True
    for point in points:
        try:
            if all(v.evaluate(point) == 0 for v in values):
                warnings.warn(
                    f"{label} vanishes at probe {dict(point)}; "
                    "verdict holds only off this locus", ChartDomainWarning)
                ok = False
        except Exception:
            continue
    return ok


def cartan_class(alpha: PForm, probe_points: Optional[Sequence[Point]] = None,
                 label: str = "1-form") -> int:
    """Elie Cartan class of a 1-form on its context.

    The class is 2p+1 when alpha ^ (d alpha)^p is nonzero and (d alpha)^{p+1}
    vanishes identically, and 2p+2 when (d alpha)^{p+1} is nonzero while
    alpha ^ (d alpha)^{p+1} vanishes.  Nonvanishing means a nonzero canonical
    coefficient; probe points only feed constancy warnings.
    """
    if alpha.degree != 1:
        raise FrameError("Cartan class is defined for 1-forms")
    context = alpha.context
    n = context.dim
    d_alpha = exterior_derivative(alpha)
    power = PForm(context, 0, {(): ScalarExpr.constant(1, _ctx_vars(context))})
    r = 0
    while 2 * (r + 1) <= n:
        candidate = wedge(power, d_alpha)
        if candidate.is_zero():
            break
        power = candidate
        r += 1
    if 2 * r + 1 > n:
        top = PForm.zero_form(context, 0)
    elif r == 0:
        top = alpha
    else:
        top = wedge(alpha, power)
    if not top.is_zero():
        cls = 2 * r + 1
        witness = top
    else:
        cls = 2 * r
        witness = power
    if probe_points:
        nonvanishing_certificate(f"Cartan-class witness of {label}",
                                 list(witness.coeffs.values()), probe_points)
    return cls


class EndoField:
    """Endomorphism field as a frame-basis matrix; column a is phi(e_a)."""

    __slots__ = ("frame", "matrix")

    def __init__(self, frame: FramePresentation, matrix: Sequence[Sequence[ScalarExpr]]):
        n = frame.dim
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise FrameError("endomorphism matrix must be n x n")
        self.frame = frame
        self.matrix = [list(row) for row in matrix]

    @classmethod
    def identity(cls, frame: FramePresentation) -> "EndoField":
        return cls(frame, [[frame.one if i == j else frame.zero
                            for j in range(frame.dim)] for i in range(frame.dim)])

    @classmethod
    def zero(cls, frame: FramePresentation) -> "EndoField":
        return cls(frame, [[frame.zero] * frame.dim for _ in range(frame.dim)])

    @classmethod
    def outer(cls, alpha: PForm, z: VectorField) -> "EndoField":
        """Tensor product alpha (x) Z as an endomorphism field."""
        frame = z.frame
        return cls(frame, [[alpha.get((a,)) * z.components[c]
                            for a in range(frame.dim)] for c in range(frame.dim)])

    def apply(self, x: VectorField) -> VectorField:
        n = self.frame.dim
        comps = tuple(
            sum((self.matrix[c][a] * x.components[a] for a in range(n)),
                self.frame.zero)
            for c in range(n))
        return VectorField(self.frame, comps)

    def compose(self, other: "EndoField") -> "EndoField":
        return EndoField(self.frame, linalg.matmul(self.matrix, other.matrix))

    def __add__(self, other: "EndoField") -> "EndoField":
        return EndoField(self.frame, [[a + b for a, b in zip(ra, rb)]
                                      for ra, rb in zip(self.matrix, other.matrix)])

    def __sub__(self, other: "EndoField") -> "EndoField":
        return EndoField(self.frame, [[a - b for a, b in zip(ra, rb)]
                                      for ra, rb in zip(self.matrix, other.matrix)])

    def __neg__(self) -> "EndoField":
        return EndoField(self.frame, [[-a for a in row] for row in self.matrix])

    def scale(self, factor: ScalarExpr) -> "EndoField":
        return EndoField(self.frame, [[factor * a for a in row]
                                      for row in self.matrix])

    def is_zero(self) -> bool:
        return all(a.is_zero() for row in self.matrix for a in row)

    def __eq__(self, other) -> bool:
        return (isinstance(other, EndoField) and self.frame is other.frame
                and self.matrix == other.matrix)

    def rank_at(self, point: Point) -> int:
        values = [[entry.evaluate(point) for entry in row]
                  for row in self.matrix]
        return linalg.rational_rank(values)


class MetricField:
    """Riemannian metric as a symmetric Gram matrix on the frame."""

    def __init__(self, frame: FramePresentation, gram: Sequence[Sequence]):
        n = frame.dim
        self.frame = frame
        self.gram = [[frame.scalar(entry) for entry in row] for row in gram]
        if len(self.gram) != n or any(len(row) != n for row in self.gram):
            raise FrameError("Gram matrix must be n x n")
        for i in range(n):
            for j in range(i + 1, n):
                if self.gram[i][j] != self.gram[j][i]:
                    raise FrameError("Gram matrix must be symmetric")
        det = linalg.determinant(self.gram)
        if det.is_zero():
            raise FrameError("Gram matrix is singular over the scalar field")
        for k in range(1, n + 1):
            minor = [[self.gram[i][j].evaluate(frame.base_point)
                      for j in range(k)] for i in range(k)]
            if _fraction_det(minor) <= 0:
                raise FrameError("metric is not positive definite at the base point")
        self.inverse = linalg.invert(self.gram)

    def pair(self, x: VectorField, y: VectorField) -> ScalarExpr:
        n = self.frame.dim
        acc = self.frame.zero
        for a in range(n):
            if x.components[a].is_zero():
                continue
            for b in range(n):
                if not y.components[b].is_zero():
                    acc = acc + x.components[a] * self.gram[a][b] * y.components[b]
        return acc

    def norm_squared(self, x: VectorField) -> ScalarExpr:
        return self.pair(x, x)


def _fraction_det(matrix: List[List[Fraction]]) -> Fraction:
    n = len(matrix)
    m = [list(row) for row in matrix]
    det = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


class LeviCivita:
    """Levi-Civita connection solved from the Koszul formula on the frame."""

    def __init__(self, metric: MetricField):
        self.metric = metric
        self.frame = metric.frame
        n = self.frame.dim
        gram = metric.gram
        half = ScalarExpr.constant(Fraction(1, 2), self.frame.coordinates)

        def g_bracket(a: int, b: int, c: int) -> ScalarExpr:
            cs = self.frame.bracket_coeffs(a, b)
            acc = self.frame.zero
            for d in range(n):
                if not cs[d].is_zero():
                    acc = acc + cs[d] * gram[d][c]
            return acc

        # koszul[a][b][c] = g(nabla_{e_a} e_b, e_c)
        koszul = [[[None] * n for _ in range(n)] for _ in range(n)]
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    term = (self.frame.direction(a, gram[b][c])
                            + self.frame.direction(b, gram[a][c])
                            - self.frame.direction(c, gram[a][b])
                            + g_bracket(a, b, c)
                            - g_bracket(a, c, b)
                            - g_bracket(b, c, a))
                    koszul[a][b][c] = half * term
        inv = metric.inverse
        self.gamma = [[tuple(
            sum((koszul[a][b][c] * inv[c][d] for c in range(n)), self.frame.zero)
            for d in range(n)) for b in range(n)] for a in range(n)]

    def nabla_frame(self, a: int, b: int) -> VectorField:
        return VectorField(self.frame, self.gamma[a][b])

    def nabla(self, x: VectorField, y: VectorField) -> VectorField:
        """Covariant derivative, function-linear in x and Leibniz in y."""
        n = self.frame.dim
        comps = [self.frame.zero] * n
        for a in range(n):
            xa = x.components[a]
            if xa.is_zero():
                continue
            for c in range(n):
                comps[c] = comps[c] + xa * self.frame.direction(a, y.components[c])
            for b in range(n):
                yb = y.components[b]
                if yb.is_zero():
                    continue
                coeff = xa * yb
                for c in range(n):
                    comps[c] = comps[c] + coeff * self.gamma[a][b][c]
        return VectorField(self.frame, tuple(comps))

    def curvature(self, x: VectorField, y: VectorField,
                  w: VectorField) -> VectorField:
        """R_{XY}W = nabla_X nabla_Y W - nabla_Y nabla_X W - nabla_[X,Y] W."""
        return (self.nabla(x, self.nabla(y, w))
                - self.nabla(y, self.nabla(x, w))
                - self.nabla(bracket(x, y), w))

    def nabla_endo(self, a: int, endo: EndoField) -> List[VectorField]:
        """(nabla_{e_a} phi) e_b for every frame index b."""
        out = []
        for b in range(self.frame.dim):
            eb = self.frame.frame_field(b)
            phi_eb = endo.apply(eb)
            value = (self.nabla(self.frame.frame_field(a), phi_eb)
                     - endo.apply(self.nabla_frame(a, b)))
            out.append(value)
        return out


def levi_civita(metric: MetricField) -> LeviCivita:
    return LeviCivita(metric)


def lie_derivative_endo(z: VectorField, endo: EndoField) -> EndoField:
    """(L_Z phi)(X) = [Z, phi X] - phi [Z, X], assembled on the frame basis."""
    frame = z.frame
    columns = []
    for a in range(frame.dim):
        ea = frame.frame_field(a)
        value = bracket(z, endo.apply(ea)) - endo.apply(bracket(z, ea))
        columns.append(value.components)
    return EndoField(frame, [[columns[a][c] for a in range(frame.dim)]
                             for c in range(frame.dim)])


def is_killing(z: VectorField, connection: LeviCivita) -> bool:
    """Killing test: g(nabla_X Z, Y) + g(X, nabla_Y Z) vanishes on frame pairs."""
    frame = z.frame
    g = connection.metric
    nz = [connection.nabla(frame.frame_field(a), z) for a in range(frame.dim)]
    for a in range(frame.dim):
        for b in range(a, frame.dim):
            value = g.pair(nz[a], frame.frame_field(b)) \
                + g.pair(frame.frame_field(a), nz[b])
            if not value.is_zero():
                return False
    return True


def nijenhuis(endo: EndoField) -> Dict[Tuple[int, int], VectorField]:
    """Nijenhuis tensor of an endomorphism field, on frame pairs.

    [A, A](X, Y) = A^2 [X, Y] - A [AX, Y] - A [X, AY] + [AX, AY].
    """
    frame = endo.frame
    out = {}
    for a in range(frame.dim):
        for b in range(a + 1, frame.dim):
            ea, eb = frame.frame_field(a), frame.frame_field(b)
            a_ea, a_eb = endo.apply(ea), endo.apply(eb)
            value = (endo.apply(endo.apply(bracket(ea, eb)))
                     - endo.apply(bracket(a_ea, eb))
                     - endo.apply(bracket(ea, a_eb))
                     + bracket(a_ea, a_eb))
            out[(a, b)] = value
    return out
