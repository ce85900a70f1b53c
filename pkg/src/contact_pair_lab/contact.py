"""Contact pairs, contact pair structures, metrics and their certification.

All verdicts are produced by canonical-form identity checks on frame
components; every False verdict carries a witness naming the offending
component and its nonzero canonical value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .frames import (EndoField, FramePresentation, LeviCivita, MetricField,
                     PForm, VectorField, bracket, cartan_class,
                     eval_form, exterior_derivative, form_power, is_killing,
                     levi_civita, lie_derivative_endo, nijenhuis,
                     nonvanishing_certificate, one_form, seeded_probe_points,
                     wedge)
from .scalars import ScalarExpr


@dataclass
class Finding:
    condition: str
    ok: bool
    witness: str = ""


@dataclass
class Verdict:
    ok: bool
    witnesses: List[str] = field(default_factory=list)


class ValidationError(Exception):
    def __init__(self, message: str, findings: Sequence[Finding] = ()):
        details = "; ".join(f.condition + (f": {f.witness}" if f.witness else "")
                            for f in findings if not f.ok)
        super().__init__(message + (f" [{details}]" if details else ""))
        self.findings = list(findings)


@dataclass
class ContactPair:
    presentation: FramePresentation
    alpha1: PForm
    alpha2: PForm
    h: int
    k: int
    z1: VectorField
    z2: VectorField
    d_alpha1: PForm
    d_alpha2: PForm
    splitting: Dict[str, List[VectorField]]
    findings: List[Finding]

    @property
    def reeb_sum(self) -> VectorField:
        return self.z1 + self.z2

    def alphas(self) -> Tuple[PForm, PForm]:
        return (self.alpha1, self.alpha2)


def solve_reeb(presentation: FramePresentation, alpha1: PForm, alpha2: PForm,
               d_alpha1: PForm, d_alpha2: PForm) -> Tuple[VectorField, VectorField]:
    """Unique fields with alpha_i(Z_j) = delta_ij and i_{Z_j} d(alpha_i) = 0."""
    n = presentation.dim
    rows: List[List[ScalarExpr]] = []
    rows.append([alpha1.get((a,)) for a in range(n)])
    rows.append([alpha2.get((a,)) for a in range(n)])
    for form in (d_alpha1, d_alpha2):
        for b in range(n):
            rows.append([form.get((a, b)) for a in range(n)])
    solutions = []
    for j in (0, 1):
        rhs = [presentation.one if i == j else presentation.zero
               for i in range(len(rows))]
        try:
            comps = linalg.solve_unique(rows, rhs)
        except linalg.LinearAlgebraError as exc:
            raise ValidationError(f"Reeb system for Z{j + 1}: {exc}")
        solutions.append(VectorField(presentation, tuple(comps)))
    return solutions[0], solutions[1]


def _kernel_fields(presentation: FramePresentation,
                   rows: List[List[ScalarExpr]]) -> List[VectorField]:
    return [VectorField(presentation, tuple(vec))
            for vec in linalg.kernel_basis(rows)]


def _splitting(presentation: FramePresentation, alpha1: PForm, alpha2: PForm,
               d_alpha1: PForm, d_alpha2: PForm, z1: VectorField,
               z2: VectorField) -> Dict[str, List[VectorField]]:
    n = presentation.dim
    a1_row = [alpha1.get((a,)) for a in range(n)]
    a2_row = [alpha2.get((a,)) for a in range(n)]

    def contraction_rows(form: PForm) -> List[List[ScalarExpr]]:
        return [[form.get((a, b)) for a in range(n)] for b in range(n)]

    d1_rows = contraction_rows(d_alpha1)
    d2_rows = contraction_rows(d_alpha2)
    return {
        "H1": _kernel_fields(presentation, d1_rows + [a1_row, a2_row]),
        "H2": _kernel_fields(presentation, d2_rows + [a1_row, a2_row]),
        "V": [z1, z2],
        "TF1": _kernel_fields(presentation, d1_rows + [a1_row]),
        "TF2": _kernel_fields(presentation, d2_rows + [a2_row]),
        "TG1": _kernel_fields(presentation, d1_rows),
        "TG2": _kernel_fields(presentation, d2_rows),
    }


def validate_contact_pair(presentation: FramePresentation, alpha1: PForm,
                          alpha2: PForm, h: int, k: int,
                          probes: Optional[Sequence] = None) -> ContactPair:
    """Certify the contact pair conditions and produce the splitting."""
    n = presentation.dim
    findings: List[Finding] = []
    if n != 2 * h + 2 * k + 2:
        raise ValidationError(
            f"dimension {n} does not match type ({h},{k})")
    if probes is None:
        probes = seeded_probe_points(presentation)
    d1 = exterior_derivative(alpha1)
    d2 = exterior_derivative(alpha2)

    volume = wedge(wedge(wedge(alpha1, form_power(d1, h)), alpha2),
                   form_power(d2, k)) if h or k else \
        wedge(alpha1, alpha2)
    top = volume.nonzero_witness()
    if top is None:
        findings.append(Finding("volume form", False,
                                "top-degree coefficient is identically zero"))
    else:
        findings.append(Finding("volume form", True, f"coefficient {top[1]}"))
        nonvanishing_certificate("volume form", [top[1]],
                                 [presentation.base_point, *probes])

    for name, form, p in (("first", d1, h), ("second", d2, k)):
        if 2 * (p + 1) <= n:
            power = form_power(form, p + 1)
            if power.is_zero():
                findings.append(Finding(f"degeneracy of the {name} form", True))
            else:
                key, value = power.nonzero_witness()
                findings.append(Finding(f"degeneracy of the {name} form", False,
                                        f"power {p + 1} has {key} -> {value}"))

    points = [presentation.base_point, *probes]
    for name, form, expected in (("first", alpha1, 2 * h + 1),
                                 ("second", alpha2, 2 * k + 1)):
        cls = cartan_class(form, points, label=f"{name} 1-form")
        findings.append(Finding(f"Cartan class of the {name} form",
                                cls == expected,
                                f"class {cls}, expected {expected}"))

    if any(not f.ok for f in findings):
        raise ValidationError("not a contact pair", findings)

    z1, z2 = solve_reeb(presentation, alpha1, alpha2, d1, d2)
    commutator = bracket(z1, z2)
    if not commutator.is_zero():
        findings.append(Finding("Reeb fields commute", False,
                                f"[Z1,Z2] = {commutator}"))
        raise ValidationError("not a contact pair", findings)
    findings.append(Finding("Reeb fields commute", True))

    split = _splitting(presentation, alpha1, alpha2, d1, d2, z1, z2)
    expected_dims = {"H1": 2 * k, "H2": 2 * h, "V": 2,
                     "TF1": 2 * k + 1, "TF2": 2 * h + 1,
                     "TG1": 2 * k + 2, "TG2": 2 * h + 2}
    for name, fields in split.items():
        ok = len(fields) == expected_dims[name]
        findings.append(Finding(f"splitting dimension of {name}", ok,
                                f"dim {len(fields)}, expected {expected_dims[name]}"))
    columns = split["H1"] + split["H2"] + split["V"]
    point_matrix = [[f.components[a].evaluate(presentation.base_point)
                     for f in columns] for a in range(n)]
    rank = linalg.rational_rank(point_matrix)
    findings.append(Finding("pointwise splitting spans the tangent space",
                            rank == n, f"rank {rank} at the base point"))
    if any(not f.ok for f in findings):
        raise ValidationError("splitting failure", findings)
    return ContactPair(presentation, alpha1, alpha2, h, k, z1, z2, d1, d2,
                       split, findings)


@dataclass
class ContactPairStructure:
    pair: ContactPair
    phi: EndoField
    j: EndoField
    t: EndoField
    rho: EndoField
    decomposable: Verdict
    findings: List[Finding]


def _membership_verdict(presentation: FramePresentation,
                        span: Sequence[VectorField],
                        images: Sequence[VectorField],
                        label: str) -> Verdict:
    columns = [[f.components[a] for f in span] for a in range(presentation.dim)]
    witnesses = []
    for idx, image in enumerate(images):
        if linalg.solve_in_span(columns, list(image.components)) is None:
            witnesses.append(f"{label}: image of spanning field {idx} "
                             "leaves the distribution")
    return Verdict(not witnesses, witnesses)


def natural_complex_structures(pair: ContactPair, phi: EndoField
                               ) -> Tuple[EndoField, EndoField, EndoField]:
    a2z1 = EndoField.outer(pair.alpha2, pair.z1)
    a1z2 = EndoField.outer(pair.alpha1, pair.z2)
    j = phi - a2z1 + a1z2
    t = phi + a2z1 - a1z2
    rho = a2z1 - a1z2
    return j, t, rho


def validate_structure(pair: ContactPair, phi: EndoField,
                       probes: Optional[Sequence] = None,
                       metric: Optional[MetricField] = None) -> ContactPairStructure:
    presentation = pair.presentation
    n = presentation.dim
    if probes is None:
        probes = seeded_probe_points(presentation)
    findings: List[Finding] = []

    expected = (EndoField.identity(presentation).scale(
        ScalarExpr.constant(-1, presentation.coordinates))
        + EndoField.outer(pair.alpha1, pair.z1)
        + EndoField.outer(pair.alpha2, pair.z2))
    square = phi.compose(phi)
    delta = square - expected
    ok = delta.is_zero()
    witness = ""
    if not ok:
        c, a = next((c, a) for c in range(n) for a in range(n)
                    if not delta.matrix[c][a].is_zero())
        witness = f"component ({c},{a}) = {delta.matrix[c][a]}"
    findings.append(Finding("phi squared identity", ok, witness))

    for name, z in (("Z1", pair.z1), ("Z2", pair.z2)):
        image = phi.apply(z)
        findings.append(Finding(f"phi kills {name}", image.is_zero(),
                                "" if image.is_zero() else f"phi({name}) = {image}"))

    for name, alpha in (("first", pair.alpha1), ("second", pair.alpha2)):
        row = [sum((alpha.get((c,)) * phi.matrix[c][a] for c in range(n)),
                   presentation.zero) for a in range(n)]
        bad = [(a, v) for a, v in enumerate(row) if not v.is_zero()]
        findings.append(Finding(f"{name} form annihilates the image of phi",
                                not bad,
                                "" if not bad else f"alpha(phi e_{bad[0][0]}) = {bad[0][1]}"))

    for point in [presentation.base_point, *probes]:
        rank = phi.rank_at(point)
        if rank != n - 2:
            findings.append(Finding("rank of phi", False,
                                    f"rank {rank} at {dict(point)}, expected {n - 2}"))
            break
    else:
        findings.append(Finding("rank of phi", True))

    if any(not f.ok for f in findings):
        raise ValidationError("not a contact pair structure", findings)

    j, t, rho = natural_complex_structures(pair, phi)

    verdicts = []
    for name in ("TF1", "TF2"):
        span = pair.splitting[name]
        verdicts.append(_membership_verdict(
            presentation, span, [phi.apply(f) for f in span],
            f"phi invariance of {name}"))
    decomposable = Verdict(all(v.ok for v in verdicts),
                           [w for v in verdicts for w in v.witnesses])

    if metric is not None:
        ortho = _span_orthogonal(metric, pair.splitting["TF1"],
                                 pair.splitting["TF2"])
        findings.append(Finding(
            "decomposability matches orthogonality of the characteristic foliations",
            decomposable.ok == ortho,
            f"decomposable={decomposable.ok}, orthogonal={ortho}"))

    return ContactPairStructure(pair, phi, j, t, rho, decomposable, findings)


def _span_orthogonal(metric: MetricField, span_a: Sequence[VectorField],
                     span_b: Sequence[VectorField]) -> bool:
    return all(metric.pair(x, y).is_zero() for x in span_a for y in span_b)


@dataclass
class MetricContactPair:
    structure: ContactPairStructure
    metric: MetricField
    compatible: Verdict
    associated: Verdict
    orthogonal_splitting: Verdict
    probes: List[Dict[str, Fraction]]
    findings: List[Finding]
    _connection: Optional[LeviCivita] = None
    _normality: Optional["NormalityReport"] = None

    @property
    def pair(self) -> ContactPair:
        return self.structure.pair

    @property
    def presentation(self) -> FramePresentation:
        return self.pair.presentation

    @property
    def decomposable(self) -> Verdict:
        return self.structure.decomposable

    @property
    def connection(self) -> LeviCivita:
        if self._connection is None:
            self._connection = levi_civita(self.metric)
        return self._connection

    @property
    def verdicts(self) -> Dict[str, bool]:
        out = {"compatible": self.compatible.ok,
               "associated": self.associated.ok,
               "decomposable": self.decomposable.ok}
        if self._normality is not None:
            out["normal"] = self._normality.normal_mcp
        return out


def validate_metric(structure: ContactPairStructure, metric: MetricField,
                    probes: Optional[Sequence] = None) -> MetricContactPair:
    pair = structure.pair
    presentation = pair.presentation
    n = presentation.dim
    if probes is None:
        probes = seeded_probe_points(presentation)
    phi = structure.phi
    findings: List[Finding] = []

    frame_fields = [presentation.frame_field(a) for a in range(n)]
    phi_fields = [phi.apply(e) for e in frame_fields]
    a1 = [pair.alpha1.get((a,)) for a in range(n)]
    a2 = [pair.alpha2.get((a,)) for a in range(n)]

    compatible_witnesses = []
    for a in range(n):
        for b in range(a, n):
            lhs = metric.pair(phi_fields[a], phi_fields[b])
            rhs = metric.gram[a][b] - a1[a] * a1[b] - a2[a] * a2[b]
            if lhs != rhs:
                compatible_witnesses.append(
                    f"g(phi e_{a}, phi e_{b}) - reduction = {lhs - rhs}")
    compatible = Verdict(not compatible_witnesses, compatible_witnesses)

    d_sum = pair.d_alpha1 + pair.d_alpha2
    associated_witnesses = []
    for a in range(n):
        for b in range(n):
            lhs = metric.pair(frame_fields[a], phi_fields[b])
            rhs = eval_form(d_sum, frame_fields[a], frame_fields[b])
            if lhs != rhs:
                associated_witnesses.append(
                    f"g(e_{a}, phi e_{b}) - d-sum(e_{a}, e_{b}) = {lhs - rhs}")
    for i, (z, alpha) in enumerate(((pair.z1, a1), (pair.z2, a2)), start=1):
        for a in range(n):
            lhs = metric.pair(frame_fields[a], z)
            if lhs != alpha[a]:
                associated_witnesses.append(
                    f"g(e_{a}, Z{i}) - alpha{i}(e_{a}) = {lhs - alpha[a]}")
    associated = Verdict(not associated_witnesses, associated_witnesses)
    if associated.ok and not compatible.ok:
        findings.append(Finding("associated implies compatible", False,
                                compatible.witnesses[0]))
    else:
        findings.append(Finding("associated implies compatible", True))

    split = pair.splitting
    blocks = [("H1", split["H1"]), ("H2", split["H2"]),
              ("RZ1", [pair.z1]), ("RZ2", [pair.z2])]
    ortho_witnesses = []
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            if not _span_orthogonal(metric, blocks[i][1], blocks[j][1]):
                ortho_witnesses.append(
                    f"{blocks[i][0]} and {blocks[j][0]} are not orthogonal")
    orthogonal = Verdict(not ortho_witnesses, ortho_witnesses)

    ortho_f = _span_orthogonal(metric, split["TF1"], split["TF2"])
    findings.append(Finding(
        "decomposability matches orthogonality of the characteristic foliations",
        structure.decomposable.ok == ortho_f,
        f"decomposable={structure.decomposable.ok}, orthogonal={ortho_f}"))

    return MetricContactPair(structure, metric, compatible, associated,
                             orthogonal, [dict(p) for p in probes], findings)


@dataclass
class NormalityReport:
    n1_zero: bool
    nj_zero: bool
    nt_zero: bool
    normal_mcp: bool
    witnesses: List[str]
    findings: List[Finding]


def normality(mcp: MetricContactPair) -> NormalityReport:
    """Certify the normality tensor and the two almost complex structures.

    ``normal_mcp`` asks for the full bundle to be a normal metric contact
    pair: the metric must be associated and the normality tensor must
    vanish.  The raw tensor verdicts are reported separately.
    """
    if mcp._normality is not None:
        return mcp._normality
    pair = mcp.pair
    presentation = mcp.presentation
    phi = mcp.structure.phi
    witnesses: List[str] = []
    findings: List[Finding] = []

    raw = nijenhuis(phi)
    two = ScalarExpr.constant(2, presentation.coordinates)
    n1_zero = True
    for (a, b), value in raw.items():
        ea = presentation.frame_field(a)
        eb = presentation.frame_field(b)
        correction = (pair.z1.scale(two * eval_form(pair.d_alpha1, ea, eb))
                      + pair.z2.scale(two * eval_form(pair.d_alpha2, ea, eb)))
        total = value + correction
        if not total.is_zero():
            n1_zero = False
            witnesses.append(f"N1(e_{a}, e_{b}) = {total}")
    findings.append(Finding("normality tensor vanishes", n1_zero,
                            witnesses[0] if witnesses else ""))

    nj_zero, nt_zero = True, True
    for label, endo in (("J", mcp.structure.j), ("T", mcp.structure.t)):
        for (a, b), value in nijenhuis(endo).items():
            if not value.is_zero():
                if label == "J":
                    nj_zero = False
                else:
                    nt_zero = False
                witnesses.append(f"N_{label}(e_{a}, e_{b}) = {value}")
                break
    findings.append(Finding("J integrable", nj_zero))
    findings.append(Finding("T integrable", nt_zero))

    normal_mcp = n1_zero and mcp.associated.ok
    if not mcp.associated.ok:
        witnesses.extend(mcp.associated.witnesses[:1])
    findings.append(Finding("normal metric contact pair", normal_mcp,
                            witnesses[0] if witnesses else ""))
    report = NormalityReport(n1_zero, nj_zero, nt_zero, normal_mcp,
                             witnesses, findings)
    mcp._normality = report
    return report


class Projections:
    """Orthogonal projections of the splitting, with the index convention
    used throughout: pi_i maps onto the horizontal block H_j with j != i,
    and the foliation projection of index i lands in TF_j with j != i."""

    def __init__(self, mcp: MetricContactPair):
        self.mcp = mcp
        pair = mcp.pair
        self._span_data = {}
        for name in ("H1", "H2"):
            span = pair.splitting[name]
            if span:
                gram = [[mcp.metric.pair(x, y) for y in span] for x in span]
                inverse = linalg.invert(gram)
            else:
                inverse = []
            self._span_data[name] = (span, inverse)

    def _project(self, name: str, v: VectorField) -> VectorField:
        span, inverse = self._span_data[name]
        if not span:
            return VectorField(self.mcp.presentation,
                               (self.mcp.presentation.zero,)
                               * self.mcp.presentation.dim)
        pairings = [self.mcp.metric.pair(v, s) for s in span]
        out = None
        for b, fb in enumerate(span):
            coeff = sum((pairings[a] * inverse[a][b] for a in range(len(span))),
                        self.mcp.presentation.zero)
            term = fb.scale(coeff)
            out = term if out is None else out + term
        return out

    def pi(self, i: int, v: VectorField) -> VectorField:
        """pi_i: projection onto H_j, j != i."""
        return self._project("H2" if i == 1 else "H1", v)

    def foliation(self, i: int, v: VectorField) -> VectorField:
        """Projection onto TF_j (j != i): pi_i(v) + alpha_i(v) Z_i."""
        pair = self.mcp.pair
        alpha = pair.alpha1 if i == 1 else pair.alpha2
        z = pair.z1 if i == 1 else pair.z2
        value = sum((alpha.get((a,)) * v.components[a]
                     for a in range(self.mcp.presentation.dim)),
                    self.mcp.presentation.zero)
        return self.pi(i, v) + z.scale(value)


def check_connection_identities(mcp: MetricContactPair) -> List[Finding]:
    """Certify the covariant-derivative characterizations on frame tuples."""
    pair = mcp.pair
    presentation = mcp.presentation
    n = presentation.dim
    phi = mcp.structure.phi
    conn = mcp.connection
    g = mcp.metric
    findings: List[Finding] = []
    frame_fields = [presentation.frame_field(a) for a in range(n)]
    phi_fields = [phi.apply(e) for e in frame_fields]
    projections = Projections(mcp)
    a_rows = ([pair.alpha1.get((a,)) for a in range(n)],
              [pair.alpha2.get((a,)) for a in range(n)])
    d_forms = (pair.d_alpha1, pair.d_alpha2)
    zs = (pair.z1, pair.z2)

    nabla_phi = [conn.nabla_endo(a, phi) for a in range(n)]

    witness = ""
    ok = True
    for a in range(n):
        # precompute d alpha_i(phi e_b, e_a) and alpha_i(e_b)
        for b in range(n):
            for c in range(n):
                lhs = g.pair(nabla_phi[a][b], frame_fields[c])
                rhs = presentation.zero
                for i in (0, 1):
                    rhs = rhs + eval_form(d_forms[i], phi_fields[b],
                                          frame_fields[a]) * a_rows[i][c]
                    rhs = rhs - eval_form(d_forms[i], phi_fields[c],
                                          frame_fields[a]) * a_rows[i][b]
                if lhs != rhs:
                    ok = False
                    witness = (f"pairing residual at ({a},{b},{c}) = "
                               f"{lhs - rhs}")
                    break
            if not ok:
                break
        if not ok:
            break
    findings.append(Finding("covariant phi pairing identity", ok, witness))

    z = pair.reeb_sum
    ok, witness = True, ""
    for a in range(n):
        residual = conn.nabla(frame_fields[a], z) + phi_fields[a]
        if not residual.is_zero():
            ok, witness = False, f"residual along e_{a} = {residual}"
            break
    findings.append(Finding("Reeb sum derivative identity", ok, witness))

    proj = [[projections.foliation(i, frame_fields[a]) for a in range(n)]
            for i in (1, 2)]
    ok, witness = True, ""
    for a in range(n):
        for b in range(n):
            rhs = None
            for i in (0, 1):
                xa, yb = proj[i][a], proj[i][b]
                value = sum((pair.alphas()[i].get((c,)) * yb.components[c]
                             for c in range(n)), presentation.zero)
                term = zs[i].scale(g.pair(xa, yb)) - xa.scale(value)
                rhs = term if rhs is None else rhs + term
            residual = nabla_phi[a][b] - rhs
            if not residual.is_zero():
                ok, witness = False, f"residual at ({a},{b}) = {residual}"
                break
        if not ok:
            break
    findings.append(Finding("covariant phi projection identity", ok, witness))

    h_endo = lie_derivative_endo(z, phi).scale(
        ScalarExpr.constant(Fraction(1, 2), presentation.coordinates))
    half = ScalarExpr.constant(Fraction(1, 2), presentation.coordinates)
    ok, witness = True, ""
    for a in range(n):
        x = frame_fields[a]
        lhs = (conn.curvature(z, x, z)
               - phi.apply(conn.curvature(z, phi_fields[a], z))).scale(half)
        rhs = phi.apply(phi.apply(x)) + h_endo.apply(h_endo.apply(x))
        residual = lhs - rhs
        if not residual.is_zero():
            ok, witness = False, f"residual along e_{a} = {residual}"
            break
    findings.append(Finding("curvature h-tensor identity", ok, witness))

    ok, witness = True, ""
    for a in range(n):
        residual = (conn.nabla(frame_fields[a], z) + phi_fields[a]
                    + phi.apply(h_endo.apply(frame_fields[a])))
        if not residual.is_zero():
            ok, witness = False, f"residual along e_{a} = {residual}"
            break
    findings.append(Finding("Reeb derivative with h-tensor", ok, witness))

    report = normality(mcp)
    if report.normal_mcp:
        findings.append(Finding("h-tensor vanishes on the normal bundle",
                                h_endo.is_zero()))
        findings.append(Finding("Reeb sum is Killing", is_killing(z, conn)))
    return findings


def check_curvature_identity(mcp: MetricContactPair) -> List[Finding]:
    """Certify the curvature characterization of normality on frame pairs."""
    pair = mcp.pair
    presentation = mcp.presentation
    n = presentation.dim
    conn = mcp.connection
    projections = Projections(mcp)
    frame_fields = [presentation.frame_field(a) for a in range(n)]
    z = pair.reeb_sum
    zs = (pair.z1, pair.z2)
    proj = [[projections.foliation(i, frame_fields[a]) for a in range(n)]
            for i in (1, 2)]
    alpha_of = []
    for i in (0, 1):
        alpha = pair.alphas()[i]
        alpha_of.append([
            sum((alpha.get((c,)) * proj[i][a].components[c] for c in range(n)),
                presentation.zero) for a in range(n)])
    ok, witness = True, ""
    for a in range(n):
        for b in range(a + 1, n):
            lhs = conn.curvature(frame_fields[a], frame_fields[b], z)
            rhs = None
            for i in (0, 1):
                term = (proj[i][a].scale(alpha_of[i][b])
                        - proj[i][b].scale(alpha_of[i][a]))
                rhs = term if rhs is None else rhs + term
            residual = lhs - rhs
            if not residual.is_zero():
                ok, witness = False, f"residual at ({a},{b}) = {residual}"
                break
        if not ok:
            break
    holds = Finding("Reeb curvature identity", ok, witness)
    report = normality(mcp)
    detail = f"identity={ok}, normal={report.normal_mcp}"
    if ok != report.normal_mcp and report.witnesses:
        detail += f"; {report.witnesses[0]}"
    agreement = Finding("curvature identity is equivalent to normality",
                        ok == report.normal_mcp, detail)
    return [holds, agreement]


def hermitian_data(mcp: MetricContactPair) -> List[Finding]:
    """Certify the Hermitian identities driven by the integrable structure J."""
    pair = mcp.pair
    presentation = mcp.presentation
    n = presentation.dim
    g = mcp.metric
    conn = mcp.connection
    j = mcp.structure.j
    findings: List[Finding] = []
    projections = Projections(mcp)
    frame_fields = [presentation.frame_field(a) for a in range(n)]
    j_fields = [j.apply(e) for e in frame_fields]

    fundamental = (pair.d_alpha1 + pair.d_alpha2
                   - wedge(pair.alpha1, pair.alpha2).scale(
                       ScalarExpr.constant(2, presentation.coordinates)))
    d_fundamental = exterior_derivative(fundamental)

    ok, witness = True, ""
    for a in range(n):
        lhs = sum((pair.alpha2.get((c,)) * j_fields[a].components[c]
                   for c in range(n)), presentation.zero)
        rhs = pair.alpha1.get((a,))
        if lhs != rhs:
            ok, witness = False, f"residual on e_{a} = {lhs - rhs}"
            break
    findings.append(Finding("second form pulls back to the first under J",
                            ok, witness))

    ok, witness = True, ""
    for i in (1, 2):
        for a in range(n):
            residual = (projections.pi(i, j_fields[a])
                        - j.apply(projections.pi(i, frame_fields[a])))
            if not residual.is_zero():
                ok, witness = False, f"pi_{i} J residual on e_{a} = {residual}"
                break
        if not ok:
            break
    findings.append(Finding("projections commute with J", ok, witness))

    four = ScalarExpr.constant(4, presentation.coordinates)
    six = ScalarExpr.constant(6, presentation.coordinates)
    nabla_j = [conn.nabla_endo(a, j) for a in range(n)]
    ok, witness = True, ""
    for a in range(n):
        for b in range(n):
            for c in range(n):
                lhs = four * g.pair(nabla_j[a][b], frame_fields[c])
                rhs = six * eval_form(d_fundamental, frame_fields[a],
                                      j_fields[b], j_fields[c]) \
                    - six * eval_form(d_fundamental, frame_fields[a],
                                      frame_fields[b], frame_fields[c])
                if lhs != rhs:
                    ok, witness = False, f"residual at ({a},{b},{c}) = {lhs - rhs}"
                    break
            if not ok:
                break
        if not ok:
            break
    findings.append(Finding("Hermitian covariant identity", ok, witness))

    def closed_form(a: int, b: int) -> VectorField:
        x, y = frame_fields[a], frame_fields[b]
        jx = j_fields[a]
        jy = j_fields[b]
        d1, d2 = pair.d_alpha1, pair.d_alpha2
        alpha1_y = pair.alpha1.get((b,))
        alpha2_y = pair.alpha2.get((b,))
        coeff_z1 = -eval_form(d2, x, y) - eval_form(d1, x, jy)
        coeff_z2 = eval_form(d1, x, y) - eval_form(d2, x, jy)
        return (pair.z1.scale(coeff_z1) + pair.z2.scale(coeff_z2)
                + projections.pi(1, jx).scale(alpha2_y)
                - projections.pi(2, jx).scale(alpha1_y)
                - projections.pi(1, x).scale(alpha1_y)
                - projections.pi(2, x).scale(alpha2_y))

    ok, witness = True, ""
    for a in range(n):
        for b in range(n):
            residual = nabla_j[a][b] - closed_form(a, b)
            if not residual.is_zero():
                ok, witness = False, f"residual at ({a},{b}) = {residual}"
                break
        if not ok:
            break
    findings.append(Finding("closed form of the covariant derivative of J",
                            ok, witness))

    witness_entry = d_fundamental.nonzero_witness()
    findings.append(Finding(
        "fundamental 2-form is not closed", witness_entry is not None,
        "" if witness_entry is None else
        f"coefficient {witness_entry[0]} -> {witness_entry[1]}"))
    return findings
