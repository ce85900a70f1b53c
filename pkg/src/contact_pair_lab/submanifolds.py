"""Involutive subframes: invariance profiles, second fundamental form,
mean curvature, induced structures, and the minimality certifications.

A submanifold is modeled as an involutive subframe of the ambient frame:
a spanning set of vector fields whose pairwise brackets stay in the span.
All identities are certified as ambient identities along the distribution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .contact import Finding, MetricContactPair, Projections, normality
from .frames import (EndoField, MetricField, PForm, VectorField, bracket,
                     cartan_class, eval_form, exterior_derivative,
                     form_power, levi_civita, nonvanishing_certificate,
                     wedge)
from .scalars import ScalarExpr


class SubframeError(Exception):
    pass


class Subframe:
    """A span of ambient vector fields, closed under the Lie bracket.

    The subframe doubles as a frame context of its own: forms, exterior
    derivatives and Cartan classes of induced objects are computed against
    the span basis with the certified bracket coefficients.
    """

    def __init__(self, ambient, fields: Sequence[VectorField],
                 metric: MetricField, name: str = "subframe"):
        if not fields:
            raise SubframeError("empty span")
        self.ambient = ambient
        self.fields = list(fields)
        self.metric = metric
        self.name = name
        self.coordinates = ambient.coordinates
        self.vars = ambient.vars
        self.base_point = ambient.base_point
        r = len(self.fields)

        point_matrix = [[f.components[a].evaluate(ambient.base_point)
                         for f in self.fields] for a in range(ambient.dim)]
        if linalg.rational_rank(point_matrix) != r:
            raise SubframeError(
                f"{name}: span is linearly dependent at the base point")

        self._span_columns = [[f.components[a] for f in self.fields]
                              for a in range(ambient.dim)]
        self._structure: Dict[Tuple[int, int], Tuple[ScalarExpr, ...]] = {}
        for a in range(r):
            for b in range(a + 1, r):
                lie = bracket(self.fields[a], self.fields[b])
                coeffs = linalg.solve_in_span(self._span_columns,
                                              list(lie.components))
                if coeffs is None:
                    raise SubframeError(
                        f"{name}: bracket of span fields {a} and {b} "
                        f"leaves the span ({lie})")
                self._structure[(a, b)] = tuple(coeffs)

        self.gram = [[metric.pair(x, y) for y in self.fields]
                     for x in self.fields]
        try:
            self.gram_inverse = linalg.invert(self.gram)
        except linalg.LinearAlgebraError as exc:
            raise SubframeError(f"{name}: singular induced metric ({exc})")

    # -- frame-context protocol -------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.fields)

    @property
    def zero(self) -> ScalarExpr:
        return self.ambient.zero

    @property
    def one(self) -> ScalarExpr:
        return self.ambient.one

    def scalar(self, value) -> ScalarExpr:
        return self.ambient.scalar(value)

    def direction(self, a: int, f: ScalarExpr) -> ScalarExpr:
        return self.fields[a].apply(f)

    def bracket_coeffs(self, a: int, b: int) -> Tuple[ScalarExpr, ...]:
        if a == b:
            return (self.zero,) * self.dim
        if a < b:
            return self._structure[(a, b)]
        return tuple(-c for c in self._structure[(b, a)])

    def frame_field(self, a: int) -> VectorField:
        comps = [self.zero] * self.dim
        comps[a] = self.one
        return VectorField(self, tuple(comps))

    def vector(self, components: Sequence) -> VectorField:
        return VectorField(self, tuple(self.scalar(c) for c in components))

    def is_regular_at(self, point) -> bool:
        if not self.ambient.is_regular_at(point):
            return False
        try:
            matrix = [[f.components[a].evaluate(point) for f in self.fields]
                      for a in range(self.ambient.dim)]
        except Exception:
            return False
        return linalg.rational_rank(matrix) == self.dim

    # -- tangential geometry ----------------------------------------------

    def membership(self, v: VectorField) -> Optional[List[ScalarExpr]]:
        """Span coefficients of an ambient field, or None when outside."""
        return linalg.solve_in_span(self._span_columns, list(v.components))

    def contains(self, v: VectorField) -> bool:
        return self.membership(v) is not None

    def tangent(self, v: VectorField) -> VectorField:
        """Orthogonal projection onto the span, as an ambient field."""
        pairings = [self.metric.pair(v, f) for f in self.fields]
        out = None
        for b, fb in enumerate(self.fields):
            coeff = sum((pairings[a] * self.gram_inverse[a][b]
                         for a in range(self.dim)), self.zero)
            term = fb.scale(coeff)
            out = term if out is None else out + term
        return out

    def normal(self, v: VectorField) -> VectorField:
        return v - self.tangent(v)

    def ambient_field(self, v: VectorField) -> VectorField:
        """Ambient components of a field given in span components."""
        out = None
        for a, fa in enumerate(self.fields):
            term = fa.scale(v.components[a])
            out = term if out is None else out + term
        return out

    def restrict_one_form(self, alpha: PForm) -> PForm:
        comps = []
        for f in self.fields:
            comps.append(sum((alpha.get((a,)) * f.components[a]
                              for a in range(self.ambient.dim)), self.zero))
        return PForm(self, 1, {(a,): c for a, c in enumerate(comps)})

    def __repr__(self):
        return f"Subframe({self.name}, dim={self.dim})"


def build_subframe(ambient, fields: Sequence[VectorField],
                   metric: MetricField, name: str = "subframe") -> Subframe:
    return Subframe(ambient, fields, metric, name)


REEB_POSITIONS = ("tangent-both", "tangent-Z1-orthogonal-Z2",
                  "tangent-Z2-orthogonal-Z1",
                  "nowhere-tangent-nowhere-orthogonal", "mixed/unknown")


@dataclass
class InvarianceProfile:
    dimension: int
    phi_invariant: bool
    j_invariant: bool
    t_invariant: bool
    rho_invariant: bool
    reeb_position: str
    z1_tangential: VectorField
    z2_tangential: VectorField
    findings: List[Finding] = field(default_factory=list)

    @property
    def tangent_both(self) -> bool:
        return self.reeb_position == "tangent-both"


def _endo_invariant(sub: Subframe, endo: EndoField) -> bool:
    return all(sub.contains(endo.apply(f)) for f in sub.fields)


def classify(sub: Subframe, mcp: MetricContactPair) -> InvarianceProfile:
    pair = mcp.pair
    g = mcp.metric
    probes = [dict(p) for p in mcp.probes]
    points = [sub.ambient.base_point, *probes]
    findings: List[Finding] = []

    phi_inv = _endo_invariant(sub, mcp.structure.phi)
    j_inv = _endo_invariant(sub, mcp.structure.j)
    t_inv = _endo_invariant(sub, mcp.structure.t)
    rho_inv = _endo_invariant(sub, mcp.structure.rho)

    z1t = sub.tangent(pair.z1)
    z2t = sub.tangent(pair.z2)
    tangent = [(pair.z1 - z1t).is_zero(), (pair.z2 - z2t).is_zero()]
    orthogonal = [z1t.is_zero(), z2t.is_zero()]

    if tangent[0] and tangent[1]:
        position = "tangent-both"
    elif tangent[0] and orthogonal[1]:
        position = "tangent-Z1-orthogonal-Z2"
    elif tangent[1] and orthogonal[0]:
        position = "tangent-Z2-orthogonal-Z1"
    elif not any(tangent) and not any(orthogonal):
        nowhere = True
        for label, v in (("tangential part of Z1", z1t),
                         ("tangential part of Z2", z2t),
                         ("normal part of Z1", pair.z1 - z1t),
                         ("normal part of Z2", pair.z2 - z2t)):
            norm = g.norm_squared(v)
            if norm.is_zero():
                nowhere = False
                break
            if not norm.is_constant() and not nonvanishing_certificate(
                    f"{label} of {sub.name}", [norm], points):
                nowhere = False
                break
        position = ("nowhere-tangent-nowhere-orthogonal" if nowhere
                    else "mixed/unknown")
    else:
        position = "mixed/unknown"

    if phi_inv:
        if position == "tangent-both":
            findings.append(Finding(
                "even dimension for a phi-invariant span tangent to both "
                "Reeb fields", sub.dim % 2 == 0, f"dim {sub.dim}"))
        elif position in ("tangent-Z1-orthogonal-Z2",
                          "tangent-Z2-orthogonal-Z1",
                          "nowhere-tangent-nowhere-orthogonal"):
            findings.append(Finding(
                "odd dimension for a phi-invariant span transverse to one "
                "Reeb direction", sub.dim % 2 == 1, f"dim {sub.dim}"))
        findings.append(Finding(
            "phi-invariant span is not orthogonal to both Reeb fields",
            not (orthogonal[0] and orthogonal[1])))

    return InvarianceProfile(sub.dim, phi_inv, j_inv, t_inv, rho_inv,
                             position, z1t, z2t, findings)


@dataclass
class ShapeData:
    table: Dict[Tuple[int, int], VectorField]
    mean_curvature: VectorField
    minimal: bool


def second_fundamental_form(sub: Subframe, connection, x: VectorField,
                            y: VectorField) -> VectorField:
    """Normal part of the ambient covariant derivative of tangent fields."""
    for label, v in (("first", x), ("second", y)):
        if not sub.contains(v):
            raise SubframeError(f"{label} argument is not tangent to the span")
    return sub.normal(connection.nabla(x, y))


def shape_data(sub: Subframe, connection) -> ShapeData:
    table: Dict[Tuple[int, int], VectorField] = {}
    for a in range(sub.dim):
        for b in range(a, sub.dim):
            table[(a, b)] = sub.normal(
                connection.nabla(sub.fields[a], sub.fields[b]))
    h = None
    for a in range(sub.dim):
        for b in range(sub.dim):
            entry = table[(a, b) if a <= b else (b, a)]
            term = entry.scale(sub.gram_inverse[a][b])
            h = term if h is None else h + term
    h = h.scale(ScalarExpr.constant(Fraction(1, sub.dim), sub.vars))
    return ShapeData(table, h, h.is_zero())


def mean_curvature(sub: Subframe, connection) -> VectorField:
    return shape_data(sub, connection).mean_curvature


def angle_constancy(sub: Subframe, mcp: MetricContactPair,
                    profile: Optional[InvarianceProfile] = None) -> bool:
    """Constancy of the Reeb angle along the vertical tangent direction,
    certified radical-free as Z1T applied to its own squared norm."""
    if profile is None:
        profile = classify(sub, mcp)
    if profile.reeb_position != "nowhere-tangent-nowhere-orthogonal" \
            or not profile.phi_invariant:
        raise SubframeError(
            "angle constancy requires a phi-invariant span nowhere tangent "
            "and nowhere orthogonal to the Reeb fields")
    z1t = profile.z1_tangential
    return z1t.apply(mcp.metric.norm_squared(z1t)).is_zero()


def _induced_pair_verdict(sub: Subframe, alpha1: PForm, alpha2: PForm,
                          points) -> Finding:
    r = sub.dim
    classes = (cartan_class(alpha1, points, "first induced form"),
               cartan_class(alpha2, points, "second induced form"))
    if r % 2 == 1 or r < 2:
        return Finding("induced pair is a contact pair", False,
                       f"dimension {r} is odd; classes {classes}")
    d1 = exterior_derivative(alpha1)
    d2 = exterior_derivative(alpha2)
    for h in range((r - 2) // 2 + 1):
        k = (r - 2) // 2 - h
        volume = wedge(wedge(wedge(alpha1, form_power(d1, h)), alpha2),
                       form_power(d2, k))
        degenerate = all(
            2 * (p + 1) > r or form_power(form, p + 1).is_zero()
            for form, p in ((d1, h), (d2, k)))
        if degenerate and not volume.is_zero():
            return Finding("induced pair is a contact pair", True,
                           f"type ({h},{k}); classes {classes}")
    return Finding("induced pair is a contact pair", False,
                   f"no admissible type; classes {classes}")


def restrict_structure(sub: Subframe, mcp: MetricContactPair,
                       profile: Optional[InvarianceProfile] = None
                       ) -> List[Finding]:
    """Induced forms, metric and endomorphism on the span, with the
    contact-metric and Sasakian certifications when they apply."""
    pair = mcp.pair
    if profile is None:
        profile = classify(sub, mcp)
    points = [sub.base_point] + [dict(p) for p in mcp.probes]
    findings: List[Finding] = []

    alpha1 = sub.restrict_one_form(pair.alpha1)
    alpha2 = sub.restrict_one_form(pair.alpha2)
    findings.append(_induced_pair_verdict(sub, alpha1, alpha2, points))

    semi = profile.phi_invariant and profile.reeb_position in (
        "tangent-Z1-orthogonal-Z2", "tangent-Z2-orthogonal-Z1")
    if not semi:
        return findings

    if profile.reeb_position == "tangent-Z1-orthogonal-Z2":
        alpha, z_amb = alpha1, pair.z1
    else:
        alpha, z_amb = alpha2, pair.z2
    z_coeffs = sub.membership(z_amb)
    reeb = VectorField(sub, tuple(z_coeffs))
    phi_columns = []
    for f in sub.fields:
        coeffs = sub.membership(mcp.structure.phi.apply(f))
        phi_columns.append(coeffs)
    phi_tilde = EndoField(sub, [[phi_columns[a][c] for a in range(sub.dim)]
                                for c in range(sub.dim)])
    g_tilde = MetricField(sub, sub.gram)
    d_alpha = exterior_derivative(alpha)

    value = sum((alpha.get((a,)) * reeb.components[a]
                 for a in range(sub.dim)), sub.zero)
    findings.append(Finding("induced form evaluates to one on the induced "
                            "Reeb field", value == sub.one, str(value)))

    expected = (EndoField.identity(sub).scale(-sub.one)
                + EndoField.outer(alpha, reeb))
    delta = phi_tilde.compose(phi_tilde) - expected
    findings.append(Finding("induced endomorphism squares correctly",
                            delta.is_zero()))

    ok, witness = True, ""
    sub_frame_fields = [sub.frame_field(a) for a in range(sub.dim)]
    phi_fields = [phi_tilde.apply(e) for e in sub_frame_fields]
    for a in range(sub.dim):
        for b in range(sub.dim):
            lhs = g_tilde.pair(sub_frame_fields[a], phi_fields[b])
            rhs = eval_form(d_alpha, sub_frame_fields[a], sub_frame_fields[b])
            if lhs != rhs:
                ok, witness = False, f"residual at ({a},{b}) = {lhs - rhs}"
                break
        if not ok:
            break
    findings.append(Finding("induced metric is associated to the induced "
                            "contact form", ok, witness))

    if normality(mcp).normal_mcp:
        conn = levi_civita(g_tilde)
        ok, witness = True, ""
        for a in range(sub.dim):
            nabla_phi = conn.nabla_endo(a, phi_tilde)
            for b in range(sub.dim):
                value_b = alpha.get((b,))
                rhs = reeb.scale(sub.gram[a][b]) \
                    - sub_frame_fields[a].scale(value_b)
                residual = nabla_phi[b] - rhs
                if not residual.is_zero():
                    ok, witness = False, f"residual at ({a},{b}) = {residual}"
                    break
            if not ok:
                break
        findings.append(Finding("induced structure satisfies the Sasakian "
                                "covariant identity", ok, witness))
    return findings


def _orthogonal_complement_in_span(sub: Subframe, direction: VectorField,
                                   g: MetricField) -> List[VectorField]:
    """Span fields with their components along ``direction`` removed."""
    norm = g.norm_squared(direction)
    out = []
    for f in sub.fields:
        reduced = f - direction.scale(g.pair(f, direction) / norm)
        if not reduced.is_zero():
            out.append(reduced)
    return out


def verify_theorems(sub: Subframe, mcp: MetricContactPair,
                    profile: Optional[InvarianceProfile] = None,
                    numeric_probes: int = 8) -> List[Finding]:
    """Dispatch the minimality certifications on the invariance profile."""
    pair = mcp.pair
    g = mcp.metric
    conn = mcp.connection
    phi = mcp.structure.phi
    j = mcp.structure.j
    if profile is None:
        profile = classify(sub, mcp)
    findings: List[Finding] = list(profile.findings)
    shape = shape_data(sub, conn)
    projections = Projections(mcp)

    def b_of(x: VectorField, y: VectorField) -> VectorField:
        return sub.normal(conn.nabla(x, y))

    semi = profile.phi_invariant and profile.reeb_position in (
        "tangent-Z1-orthogonal-Z2", "tangent-Z2-orthogonal-Z1")
    if semi:
        if profile.reeb_position == "tangent-Z1-orthogonal-Z2":
            z_tan, z_orth = pair.z1, pair.z2
            foliation_index = 2
        else:
            z_tan, z_orth = pair.z2, pair.z1
            foliation_index = 1
        horizontals = _orthogonal_complement_in_span(sub, z_tan, g)
        ok, witness = True, ""
        for x in horizontals:
            for y in horizontals:
                lhs = b_of(x, phi.apply(y)) - phi.apply(b_of(x, y))
                xi = projections.foliation(foliation_index, x)
                yi = projections.foliation(foliation_index, y)
                rhs = (z_orth - z_tan).scale(g.pair(xi, yi))
                residual = lhs - rhs
                if not residual.is_zero():
                    ok, witness = False, f"residual = {residual}"
                    break
            if not ok:
                break
        findings.append(Finding("shape operator pairing identity on "
                                "horizontal span fields", ok, witness))
        findings.append(Finding(
            "shape operator annihilates the tangent Reeb field",
            b_of(z_tan, z_tan).is_zero()))
        findings.append(Finding("mean curvature vanishes", shape.minimal,
                                "" if shape.minimal
                                else f"H = {shape.mean_curvature}"))

    nowhere = profile.phi_invariant and profile.reeb_position == \
        "nowhere-tangent-nowhere-orthogonal"
    if nowhere:
        z1t = profile.z1_tangential
        norm = g.norm_squared(z1t)
        constant = angle_constancy(sub, mcp, profile)
        findings.append(Finding("Reeb angle is constant along the vertical "
                                "tangent direction", constant))
        findings.append(Finding(
            "minimality is equivalent to angle constancy",
            shape.minimal == constant,
            f"minimal={shape.minimal}, constant={constant}"))

        horizontals = _orthogonal_complement_in_span(sub, z1t, g)
        z1_perp = sub.normal(pair.z1)
        z2_perp = sub.normal(pair.z2)
        ok, witness = True, ""
        for x in horizontals:
            for y in horizontals:
                lhs = b_of(x, phi.apply(y)) - phi.apply(b_of(x, y))
                rhs = None
                for i, z_perp in ((1, z1_perp), (2, z2_perp)):
                    xi = projections.foliation(i, x)
                    yi = projections.foliation(i, y)
                    term = z_perp.scale(g.pair(xi, yi))
                    rhs = term if rhs is None else rhs + term
                residual = lhs - rhs
                if not residual.is_zero():
                    ok, witness = False, f"residual = {residual}"
                    break
            if not ok:
                break
        findings.append(Finding("shape operator pairing identity on fields "
                                "orthogonal to the vertical direction",
                                ok, witness))

        trace = shape.mean_curvature.scale(
            ScalarExpr.constant(sub.dim, sub.vars))
        concentrated = trace - b_of(z1t, z1t).scale(sub.one / norm)
        findings.append(Finding(
            "shape trace concentrates on the vertical tangent direction",
            concentrated.is_zero(), "" if concentrated.is_zero()
            else str(concentrated)))

        derivative = conn.nabla(z1t, z1t)
        tangential = sub.tangent(derivative)
        findings.append(Finding(
            "vertical direction derivative has no tangential part",
            tangential.is_zero(), "" if tangential.is_zero()
            else str(tangential)))
        target = sub.normal(j.apply(z1t))
        normal_part = derivative - tangential
        proportional = True
        n_amb = sub.ambient.dim
        for a in range(n_amb):
            for b in range(a + 1, n_amb):
                cross = normal_part.components[a] * target.components[b] \
                    - normal_part.components[b] * target.components[a]
                if not cross.is_zero():
                    proportional = False
                    break
            if not proportional:
                break
        findings.append(Finding(
            "vertical direction derivative is normal along the rotated "
            "vertical direction", proportional))

    if profile.j_invariant:
        probes_fields = list(sub.fields)
        for a in range(sub.dim):
            for b in range(a + 1, sub.dim):
                probes_fields.append(sub.fields[a] + sub.fields[b])
        z1_perp = sub.normal(pair.z1)
        z2_perp = sub.normal(pair.z2)
        two = ScalarExpr.constant(2, sub.vars)
        ok, witness = True, ""
        for x in probes_fields:
            jx = j.apply(x)
            lhs = b_of(x, x) + b_of(jx, jx)
            a1x = sum((pair.alpha1.get((c,)) * x.components[c]
                       for c in range(sub.ambient.dim)), sub.zero)
            a2x = sum((pair.alpha2.get((c,)) * x.components[c]
                       for c in range(sub.ambient.dim)), sub.zero)
            pi1x = projections.pi(1, x)
            pi2x = projections.pi(2, x)
            pi1jx = projections.pi(1, jx)
            pi2jx = projections.pi(2, jx)
            bracket_term = (pi1jx.scale(-a1x) + pi2jx.scale(-a2x)
                            + pi1x.scale(-a2x) + pi2x.scale(a1x))
            rhs = (z1_perp.scale(-two * g.norm_squared(pi2x))
                   + z2_perp.scale(two * g.norm_squared(pi1x))
                   + sub.normal(bracket_term).scale(two))
            residual = lhs - rhs
            if not residual.is_zero():
                ok, witness = False, f"residual = {residual}"
                break
        findings.append(Finding("complex shape identity on span fields",
                                ok, witness))
        findings.append(Finding(
            "minimality is equivalent to Reeb tangency",
            shape.minimal == profile.tangent_both,
            f"minimal={shape.minimal}, tangent-both={profile.tangent_both}"))
        residual = mean_curvature_probe_residual(sub, mcp,
                                                 count=numeric_probes)
        findings.append(Finding(
            "normalized mean curvature probe residual below tolerance",
            residual < 1e-9, f"max residual {residual:.3e}"))

    if profile.phi_invariant:
        for i, z in ((1, pair.z1), (2, pair.z2)):
            zt = profile.z1_tangential if i == 1 else profile.z2_tangential
            zperp = z - zt
            findings.append(Finding(
                f"endomorphism kills the tangential part of Z{i}",
                phi.apply(zt).is_zero()))
            findings.append(Finding(
                f"endomorphism kills the normal part of Z{i}",
                phi.apply(zperp).is_zero()))
            vertical = linalg.solve_in_span(
                [[pair.z1.components[a], pair.z2.components[a]]
                 for a in range(sub.ambient.dim)],
                list(zt.components)) is not None
            findings.append(Finding(
                f"tangential part of Z{i} is vertical", vertical))

    flags = (profile.phi_invariant, profile.j_invariant,
             profile.t_invariant, profile.tangent_both)
    if sum(flags) >= 2:
        findings.append(Finding(
            "two invariance properties imply all four",
            all(flags), f"flags={flags}"))

    return findings


# -- numeric probe check for the normalized mean curvature ----------------

def _float_point(point) -> Dict[str, float]:
    return {k: float(v) for k, v in point.items()}


def mean_curvature_probe_residual(sub: Subframe, mcp: MetricContactPair,
                                  count: int = 8) -> float:
    """Probe the orthonormal-basis mean curvature formula in floating point.

    The right-hand side needs an orthonormal basis adapted to the complex
    structure, which involves radicals, so this is the one identity checked
    numerically (Gram-Schmidt at seeded probe points) instead of exactly.
    """
    import numpy as np

    pair = mcp.pair
    g = mcp.metric
    shape = shape_data(sub, mcp.connection)
    jmat_sym = mcp.structure.j.matrix
    n_amb = sub.ambient.dim
    points = [p for p in [sub.base_point, *mcp.probes]
              if sub.is_regular_at(p)]
    points = points[:max(count, 1)]
    if len(points) < count:
        raise SubframeError("not enough regular probe points")

    h_spans = {1: mcp.pair.splitting["H2"], 2: mcp.pair.splitting["H1"]}
    max_residual = 0.0
    for point in points:
        fp = _float_point(point)
        gm = np.array([[entry.evaluate_float(fp) for entry in row]
                       for row in g.gram])
        jm = np.array([[entry.evaluate_float(fp) for entry in row]
                       for row in jmat_sym])
        span = np.array([[f.components[a].evaluate_float(fp)
                          for f in sub.fields] for a in range(n_amb)])

        def dot(u, v):
            return float(u @ gm @ v)

        def tangent_part(v):
            gram = span.T @ gm @ span
            coeffs = np.linalg.solve(gram, span.T @ gm @ v)
            return span @ coeffs

        def project_onto(columns, v):
            if not columns:
                return np.zeros(n_amb)
            cols = np.array([[f.components[a].evaluate_float(fp)
                              for f in columns] for a in range(n_amb)])
            gram = cols.T @ gm @ cols
            return cols @ np.linalg.solve(gram, cols.T @ gm @ v)

        z1 = np.array([c.evaluate_float(fp) for c in pair.z1.components])
        z2 = np.array([c.evaluate_float(fp) for c in pair.z2.components])
        z1t = tangent_part(z1)
        z2t = tangent_part(z2)
        if dot(z1t, z1t) < 1e-18:
            continue

        basis = []
        e1 = z1t / np.sqrt(dot(z1t, z1t))
        basis.extend([e1, jm @ e1])
        for idx in range(sub.dim):
            w = span[:, idx].copy()
            for b in basis:
                w = w - dot(w, b) * b
            if dot(w, w) > 1e-16:
                e = w / np.sqrt(dot(w, w))
                basis.extend([e, jm @ e])
        leading = [basis[i] for i in range(0, len(basis), 2)]
        n_pairs = len(leading)

        rhs = np.zeros(n_amb)
        for e in leading:
            p2 = project_onto(h_spans[2], e)
            p1 = project_onto(h_spans[1], e)
            rhs = rhs - dot(p2, p2) * (z1 - z1t)
            rhs = rhs + dot(p1, p1) * (z2 - z2t)
        mixed = project_onto(h_spans[2], z1t) - project_onto(h_spans[1], z2t)
        rhs = rhs + (mixed - tangent_part(mixed))
        rhs = rhs / n_pairs

        lhs = np.array([c.evaluate_float(fp)
                        for c in shape.mean_curvature.components])
        residual = float(np.max(np.abs(lhs - rhs)))
        max_residual = max(max_residual, residual)
    return max_residual
