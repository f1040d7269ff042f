//! Tropical curve of a patchworking family, its skeleton as a metrized
//! complex of elliptic curves, and specialization of divisors to it.

use std::collections::BTreeMap;

use hyperflex_exact::{int, isolate_real_roots, sign_at_root, Scalar, UniPoly};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::inflection::{binom, split_by_order};
use crate::patchwork::{initial_degeneration, EllipticPiece, LatticePoint, PatchworkFamily, Subdivision};
use crate::wronskian::{block_determinant, reduce_over_f};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeShape {
    /// Between u_from and u_to (indices into `vertices`).
    Bounded { from: usize, to: usize },
    /// Unbounded, leaving u_from in a primitive integer direction.
    Ray { from: usize, direction: (i64, i64) },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalEdge {
    pub shape: EdgeShape,
    pub weight: i64,
    /// The dual edge of the subdivision.
    pub dual: [LatticePoint; 2],
    /// Primitive direction from `from` (for bounded edges, toward `to`).
    pub direction: (i64, i64),
    /// For bounded edges, u_to − u_from = length · direction.
    pub length: Option<Scalar>,
}

/// V(max{2y, ix − ν(i)}) with vertices u_i = (a_i, b_i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPlaneCurve {
    pub vertices: Vec<(Scalar, Scalar)>,
    pub edges: Vec<TropicalEdge>,
    /// (exponent of x, exponent of y, −val of the coefficient) for every term.
    terms: Vec<(i64, i64, i64)>,
}

fn primitive(v: (i64, i64)) -> (i64, i64) {
    let g = v.0.gcd(&v.1);
    (v.0 / g, v.1 / g)
}

impl TropicalPlaneCurve {
    /// Values of the terms at (x, y) and the maximum.
    fn evaluate(&self, p: &(Scalar, Scalar)) -> (Vec<Scalar>, Scalar) {
        let vals: Vec<Scalar> = self
            .terms
            .iter()
            .map(|&(i, n, v)| int(i) * &p.0 + int(n) * &p.1 - int(v))
            .collect();
        let max = vals.iter().max().expect("terms are nonempty").clone();
        (vals, max)
    }

    /// Number of terms attaining the maximum at p.
    pub fn active_terms(&self, p: &(Scalar, Scalar)) -> usize {
        let (vals, max) = self.evaluate(p);
        vals.iter().filter(|v| **v == max).count()
    }

    pub fn contains(&self, p: &(Scalar, Scalar)) -> bool {
        self.active_terms(p) >= 2
    }

    /// Σ weight · primitive direction at every vertex.
    pub fn balancing(&self) -> Vec<(i64, i64)> {
        let mut sums = vec![(0, 0); self.vertices.len()];
        for e in &self.edges {
            let (dx, dy) = e.direction;
            match e.shape {
                EdgeShape::Bounded { from, to } => {
                    sums[from].0 += e.weight * dx;
                    sums[from].1 += e.weight * dy;
                    sums[to].0 -= e.weight * dx;
                    sums[to].1 -= e.weight * dy;
                }
                EdgeShape::Ray { from, .. } => {
                    sums[from].0 += e.weight * dx;
                    sums[from].1 += e.weight * dy;
                }
            }
        }
        sums
    }

    /// Index of the vertex with x-coordinate a.
    pub fn vertex_with_x(&self, a: &Scalar) -> Option<usize> {
        self.vertices.iter().position(|v| &v.0 == a)
    }

    /// Lengths of the bounded edges, in order.
    pub fn bounded_lengths(&self) -> Vec<Scalar> {
        self.edges.iter().filter_map(|e| e.length.clone()).collect()
    }
}

/// Dual graph of the subdivision, placed by the lifting values.
pub fn tropicalize(fam: &PatchworkFamily) -> Result<TropicalPlaneCurve> {
    let sub: Subdivision = fam.subdivision()?;
    let nu = &fam.nu;
    let mut terms = vec![(0, 2, 0)];
    for (i, _, e) in fam.terms() {
        terms.push((i as i64, 0, e));
    }
    let vertices: Vec<(Scalar, Scalar)> = sub
        .faces
        .iter()
        .map(|face| {
            let (p, q) = (face.vertices[1].0, face.vertices[2].0);
            let (vp, vq) = (nu.get(p as usize).unwrap(), nu.get(q as usize).unwrap());
            let a = Scalar::new((vq - vp).into(), (q - p).into());
            let b = (int(p) * &a - int(vp)) / int(2);
            (a, b)
        })
        .collect();
    let mut edges = Vec::new();
    for e in &sub.edges {
        let [pp, qq] = e.ends;
        let from = e.faces[0];
        let third = sub.faces[from]
            .vertices
            .iter()
            .copied()
            .find(|v| *v != pp && *v != qq)
            .expect("a triangle has three vertices");
        let perp = primitive((qq.1 - pp.1, pp.0 - qq.0));
        let toward = (pp.0 - third.0) * perp.0 + (pp.1 - third.1) * perp.1;
        let direction = if toward > 0 { perp } else { (-perp.0, -perp.1) };
        let (shape, length) = match e.faces.get(1) {
            Some(&to) => {
                let dx = &vertices[to].0 - &vertices[from].0;
                let dy = &vertices[to].1 - &vertices[from].1;
                let l = if direction.0 != 0 { &dx / int(direction.0) } else { &dy / int(direction.1) };
                if !l.is_positive() || dx != &l * int(direction.0) || dy != &l * int(direction.1) {
                    return Err(Error::Inconsistency("bounded tropical edge is not dual to its face edge".into()));
                }
                (EdgeShape::Bounded { from, to }, Some(l / int(e.lattice_length)))
            }
            None => (EdgeShape::Ray { from, direction }, None),
        };
        edges.push(TropicalEdge { shape, weight: e.lattice_length, dual: e.ends, direction, length });
    }
    Ok(TropicalPlaneCurve { vertices, edges, terms })
}

/// Vertices of the skeleton: type II curves v_i and the type I points of
/// Supp(R_π).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SkeletonVertex {
    Elliptic(usize),
    Zero,
    Infinity,
    Root(usize, usize),
}

impl std::fmt::Display for SkeletonVertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SkeletonVertex::Elliptic(i) => write!(f, "v{i}"),
            SkeletonVertex::Zero => write!(f, "0"),
            SkeletonVertex::Infinity => write!(f, "inf"),
            SkeletonVertex::Root(i, j) => write!(f, "v{i},{j}"),
        }
    }
}

impl SkeletonVertex {
    pub fn is_type_two(&self) -> bool {
        matches!(self, SkeletonVertex::Elliptic(_))
    }
}

/// Boundary points of U_i inside its normalization C_{v_i}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MarkedPoint {
    Zero,
    Infinity,
    Root(usize),
}

impl std::fmt::Display for MarkedPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MarkedPoint::Zero => write!(f, "0"),
            MarkedPoint::Infinity => write!(f, "inf"),
            MarkedPoint::Root(j) => write!(f, "alpha{j}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonEdge {
    pub label: String,
    pub ends: [SkeletonVertex; 2],
    /// `None` for infinite length.
    pub length: Option<Scalar>,
}

/// The marked curve (C_{v_i}, 𝒜_i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCurve {
    pub vertex: usize,
    pub piece: EllipticPiece,
    /// 𝒜_i as marked point ↦ neighbouring skeleton vertex.
    pub marked: Vec<(MarkedPoint, SkeletonVertex)>,
}

impl VertexCurve {
    /// Q_i(X) with Y² = Q_i(X) on U_i.
    pub fn equation(&self) -> UniPoly {
        self.piece.polynomial(self.vertex)
    }

    pub fn neighbor(&self, m: MarkedPoint) -> Option<SkeletonVertex> {
        self.marked.iter().find(|(p, _)| *p == m).map(|(_, v)| *v)
    }

    /// Marked points whose neighbour is another elliptic curve.
    pub fn attachments(&self) -> Vec<MarkedPoint> {
        self.marked.iter().filter(|(_, v)| v.is_type_two()).map(|(p, _)| *p).collect()
    }

    /// 𝒞_i: marked points that are type I vertices.
    pub fn type_one_points(&self) -> Vec<MarkedPoint> {
        self.marked.iter().filter(|(_, v)| !v.is_type_two()).map(|(p, _)| *p).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetrizedComplex {
    pub genus: usize,
    pub vertices: Vec<SkeletonVertex>,
    pub edges: Vec<SkeletonEdge>,
    pub curves: Vec<VertexCurve>,
}

/// Γ: the complex with Supp(R_π) removed, curves Y_{v_i} = C_{v_i} ∖ 𝒞_i
/// marked by ℬ_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelevantPart {
    pub vertices: Vec<SkeletonVertex>,
    pub edges: Vec<SkeletonEdge>,
    pub removed: Vec<Vec<MarkedPoint>>,
    pub marked: Vec<Vec<MarkedPoint>>,
}

impl MetrizedComplex {
    pub fn type_one_vertices(&self) -> Vec<SkeletonVertex> {
        self.vertices.iter().copied().filter(|v| !v.is_type_two()).collect()
    }

    pub fn finite_edges(&self) -> Vec<&SkeletonEdge> {
        self.edges.iter().filter(|e| e.length.is_some()).collect()
    }

    pub fn curve(&self, i: usize) -> &VertexCurve {
        &self.curves[i - 1]
    }

    pub fn relevant_part(&self) -> RelevantPart {
        RelevantPart {
            vertices: self.vertices.iter().copied().filter(SkeletonVertex::is_type_two).collect(),
            edges: self.edges.clone(),
            removed: self.curves.iter().map(VertexCurve::type_one_points).collect(),
            marked: self.curves.iter().map(VertexCurve::attachments).collect(),
        }
    }
}

/// The skeleton of the generic fiber: a chain v_1 - … - v_g with finite
/// edges, one infinite edge per point of Supp(R_π).
pub fn build_skeleton(fam: &PatchworkFamily) -> Result<MetrizedComplex> {
    let g = fam.genus;
    let trop = tropicalize(fam)?;
    let lengths = trop.bounded_lengths();
    let mut vertices: Vec<SkeletonVertex> = (1..=g).map(SkeletonVertex::Elliptic).collect();
    vertices.push(SkeletonVertex::Zero);
    vertices.push(SkeletonVertex::Infinity);
    for i in 1..=g {
        vertices.push(SkeletonVertex::Root(i, 1));
        vertices.push(SkeletonVertex::Root(i, 2));
    }
    let mut edges = Vec::new();
    for i in 1..g {
        edges.push(SkeletonEdge {
            label: format!("e{i}"),
            ends: [SkeletonVertex::Elliptic(i), SkeletonVertex::Elliptic(i + 1)],
            length: Some(lengths[i - 1].clone()),
        });
    }
    edges.push(SkeletonEdge { label: "e0".into(), ends: [SkeletonVertex::Elliptic(1), SkeletonVertex::Zero], length: None });
    edges.push(SkeletonEdge {
        label: "einf".into(),
        ends: [SkeletonVertex::Elliptic(g), SkeletonVertex::Infinity],
        length: None,
    });
    let mut curves = Vec::with_capacity(g);
    for i in 1..=g {
        for j in 1..=2 {
            edges.push(SkeletonEdge {
                label: format!("e{i},{j}"),
                ends: [SkeletonVertex::Elliptic(i), SkeletonVertex::Root(i, j)],
                length: None,
            });
        }
        let piece = initial_degeneration(fam, i)?;
        let below = if i == 1 { SkeletonVertex::Zero } else { SkeletonVertex::Elliptic(i - 1) };
        let above = if i == g { SkeletonVertex::Infinity } else { SkeletonVertex::Elliptic(i + 1) };
        curves.push(VertexCurve {
            vertex: i,
            piece,
            marked: vec![
                (MarkedPoint::Zero, below),
                (MarkedPoint::Infinity, above),
                (MarkedPoint::Root(1), SkeletonVertex::Root(i, 1)),
                (MarkedPoint::Root(2), SkeletonVertex::Root(i, 2)),
            ],
        });
    }
    Ok(MetrizedComplex { genus: g, vertices, edges, curves })
}

/// Points of C_{v_i} ∖ 𝒜_i over the roots of `factor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorPoints {
    pub factor: UniPoly,
    pub multiplicity: i64,
    pub points: usize,
    pub real_points: usize,
}

/// The part D_{v_i} of a divisor on the complex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CurvePart {
    pub marked: BTreeMap<MarkedPoint, i64>,
    pub interior: Vec<InteriorPoints>,
}

impl CurvePart {
    pub fn interior_degree(&self) -> i64 {
        self.interior.iter().map(|p| p.multiplicity * p.points as i64).sum()
    }

    pub fn interior_real_degree(&self) -> i64 {
        self.interior.iter().map(|p| p.multiplicity * p.real_points as i64).sum()
    }
}

/// D_Sk ⊕ Σ D_{v_i}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDivisor {
    pub graph: BTreeMap<SkeletonVertex, i64>,
    pub curves: Vec<CurvePart>,
    pub real_degree: i64,
}

impl ComplexDivisor {
    pub fn empty(g: usize) -> Self {
        ComplexDivisor { graph: BTreeMap::new(), curves: vec![CurvePart::default(); g], real_degree: 0 }
    }

    pub fn degree(&self) -> i64 {
        self.graph.values().sum()
    }

    pub fn at(&self, v: SkeletonVertex) -> i64 {
        self.graph.get(&v).copied().unwrap_or(0)
    }

    /// D_Sk(v_i) = deg(D_{v_i}|_{Y_{v_i}}) and D_Sk(v) = D_{v_i}(p(v)) at
    /// every type I neighbour v.
    pub fn respects_marked_points(&self, skel: &MetrizedComplex) -> bool {
        skel.curves.iter().zip(&self.curves).all(|(c, part)| {
            let on_y: i64 = part.interior_degree()
                + c.attachments().iter().map(|m| part.marked.get(m).copied().unwrap_or(0)).sum::<i64>();
            let type_one_ok = c.type_one_points().iter().all(|m| {
                part.marked.get(m).copied().unwrap_or(0) == self.at(c.neighbor(*m).expect("marked"))
            });
            on_y == self.at(SkeletonVertex::Elliptic(c.vertex)) && type_one_ok
        })
    }

    /// Put weight w at every type I vertex, mirrored on the adjacent curves.
    pub fn add_ramification(&mut self, skel: &MetrizedComplex, w: i64, real: impl Fn(&VertexCurve, MarkedPoint) -> bool) {
        for (c, part) in skel.curves.iter().zip(self.curves.iter_mut()) {
            for m in c.type_one_points() {
                *part.marked.entry(m).or_insert(0) += w;
                *self.graph.entry(c.neighbor(m).expect("marked")).or_insert(0) += w;
                if real(c, m) {
                    self.real_degree += w;
                }
            }
        }
    }
}

/// A point of the generic fiber known through leading terms:
/// x = α t^{−a} + …, y = β t^{−b} + …, with α running over the roots of `factor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerm {
    pub factor: UniPoly,
    pub x_valuation: Scalar,
    pub y_valuation: Option<Scalar>,
    /// 2 for both points (α, ±β), 1 for a single branch.
    pub branches: usize,
    pub multiplicity: i64,
}

/// Route points to the vertices of the complex through the initial
/// coefficient map.
pub fn specialize_divisor(
    points: &[LeadingTerm],
    skel: &MetrizedComplex,
    trop: &TropicalPlaneCurve,
) -> Result<ComplexDivisor> {
    let mut out = ComplexDivisor::empty(skel.genus);
    for p in points {
        let Some(vi) = trop.vertex_with_x(&p.x_valuation) else {
            if let Some(b) = &p.y_valuation {
                if !trop.contains(&(p.x_valuation.clone(), b.clone())) {
                    return Err(Error::ValuationOffCurve);
                }
            }
            return Err(Error::ValuationOnEdge);
        };
        let i = vi + 1;
        let curve = skel.curve(i);
        let quad = curve.piece.quadratic();
        if let Some(b) = &p.y_valuation {
            let u = &trop.vertices[vi];
            if b != &u.1 {
                if b < &u.1 && quad.div_rem(&p.factor).1.is_zero() {
                    let tags: Vec<MarkedPoint> = match (curve.piece.rational_roots(), p.factor.deg()) {
                        (Some((x1, _)), 1) if p.factor.eval(&x1).is_zero() => vec![MarkedPoint::Root(1)],
                        (Some(_), 1) => vec![MarkedPoint::Root(2)],
                        _ => vec![MarkedPoint::Root(1), MarkedPoint::Root(2)],
                    };
                    for tag in tags {
                        *out.curves[vi].marked.entry(tag).or_insert(0) += p.multiplicity;
                        *out.graph.entry(curve.neighbor(tag).expect("marked")).or_insert(0) += p.multiplicity;
                        if curve.piece.has_real_roots() {
                            out.real_degree += p.multiplicity;
                        }
                    }
                    continue;
                }
                return Err(Error::ValuationOffCurve);
            }
        }
        if p.factor.eval(&Scalar::zero()).is_zero() || quad.gcd(&p.factor).deg() > 0 {
            return Err(Error::ValuationOffCurve);
        }
        let q = curve.equation();
        let mut real_points = 0;
        for r in isolate_real_roots(&p.factor)? {
            if sign_at_root(&q, &r) > 0 {
                real_points += p.branches;
            }
        }
        let points = p.factor.deg() * p.branches;
        out.real_degree += p.multiplicity * real_points as i64;
        *out.graph.entry(SkeletonVertex::Elliptic(i)).or_insert(0) += p.multiplicity * points as i64;
        out.curves[vi].interior.push(InteriorPoints {
            factor: p.factor.clone(),
            multiplicity: p.multiplicity,
            points,
            real_points,
        });
    }
    Ok(out)
}

/// The inflection points of the generic fiber with valuation a_i, seen on U_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub vertex: usize,
    pub valuation: (Scalar, Scalar),
    /// Numerator of the Wronskian computed with f replaced by Q_i.
    pub edge_polynomial: UniPoly,
    /// Its part away from X = 0 and the roots of Q_i.
    pub interior: UniPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InflectionSpecialization {
    pub clusters: Vec<Cluster>,
    pub divisor: ComplexDivisor,
    pub cluster_degree: usize,
}

/// τ_*(Inf |L(kD)|) for the generic fiber of the family. Each Q_i is the
/// t → 0 limit of f after x ↦ X t^{−a_i}; the Wronskian numerator rescales
/// the same way, so its leading part on that slope is the numerator computed
/// from Q_i.
pub fn specialize_inflection(fam: &PatchworkFamily, k: usize) -> Result<InflectionSpecialization> {
    let g = fam.genus;
    if k < g {
        return Err(Error::InvalidInput(format!("specialization needs k ≥ g, got k = {k}")));
    }
    let skel = build_skeleton(fam)?;
    let trop = tropicalize(fam)?;
    let y_exponents: Vec<usize> = (0..k - g).collect();
    let expected = 2 * (k + 1) * (k - g);
    let mut clusters = Vec::with_capacity(g);
    let mut points = Vec::new();
    for i in 1..=g {
        let q = skel.curve(i).equation();
        let qz = q.integer_primitive();
        let (d, p) = block_determinant(&qz, k, &y_exponents);
        let num = reduce_over_f(&qz, d, p)?.numerator().clone();
        let (_, interior) = split_by_order(&q, &num);
        if interior.deg() != expected {
            return Err(Error::Inconsistency(format!(
                "cluster {i} holds {} roots, expected {expected}",
                interior.deg()
            )));
        }
        let valuation = trop.vertices[i - 1].clone();
        for (factor, m) in interior.square_free_decomposition() {
            points.push(LeadingTerm {
                factor,
                x_valuation: valuation.0.clone(),
                y_valuation: Some(valuation.1.clone()),
                branches: 2,
                multiplicity: m as i64,
            });
        }
        clusters.push(Cluster { vertex: i, valuation, edge_polynomial: num, interior });
    }
    let mut divisor = specialize_divisor(&points, &skel, &trop)?;
    let w = binom(g + 1, 2);
    divisor.add_ramification(&skel, w, |c, m| match m {
        MarkedPoint::Root(_) => c.piece.has_real_roots(),
        _ => true,
    });
    if !divisor.respects_marked_points(&skel) {
        return Err(Error::Inconsistency("specialized divisor does not respect the marked points".into()));
    }
    let total = g as i64 * (2 * k as i64 - g as i64 + 1).pow(2);
    if divisor.degree() != total {
        return Err(Error::Inconsistency(format!("specialized degree {} differs from {total}", divisor.degree())));
    }
    Ok(InflectionSpecialization { clusters, divisor, cluster_degree: expected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patchwork::{assemble_family, glue_roots, NuFunction};
    use hyperflex_exact::ratio;

    fn family(g: usize) -> PatchworkFamily {
        let roots: Vec<(Scalar, Scalar)> = (0..g).map(|j| (int(3 + j as i64), int(2))).collect();
        assemble_family(&glue_roots(int(1), &roots).unwrap(), None).unwrap()
    }

    #[test]
    fn vertices_and_balancing() {
        let fam = family(2);
        let t = tropicalize(&fam).unwrap();
        assert_eq!(t.vertices, vec![(int(1), ratio(1, 2)), (int(2), int(2))]);
        assert!(t.balancing().iter().all(|&s| s == (0, 0)));
        assert!(t.vertices.iter().all(|u| t.active_terms(u) >= 3));
        assert_eq!(t.bounded_lengths(), vec![ratio(1, 2)]);
        let rays: Vec<_> = t.edges.iter().filter(|e| matches!(e.shape, EdgeShape::Ray { .. })).collect();
        assert_eq!(rays.len(), 4);
        assert_eq!(rays.iter().filter(|e| e.weight == 2).count(), 2);
    }

    #[test]
    fn explicit_nu() {
        let p = glue_roots(int(1), &[(int(3), int(2)), (int(5), int(6))]).unwrap();
        let fam = assemble_family(&p, Some(NuFunction::from_odd(&[0, 0, 2]).unwrap()));
        let fam = fam.unwrap();
        let t = tropicalize(&fam).unwrap();
        assert_eq!(t.vertices[0].0, int(0));
        assert_eq!(t.vertices[1].0, int(1));
    }

    #[test]
    fn skeleton_shape() {
        let s = build_skeleton(&family(2)).unwrap();
        assert_eq!(s.vertices.len(), 2 + 6);
        assert_eq!(s.finite_edges().len(), 1);
        assert_eq!(s.type_one_vertices().len(), 6);
        assert_eq!(s.curve(1).attachments(), vec![MarkedPoint::Infinity]);
        let s1 = build_skeleton(&family(1)).unwrap();
        assert_eq!(s1.edges.len(), 4);
        assert!(s1.curve(1).attachments().is_empty());
    }

    #[test]
    fn off_vertex_points_are_rejected() {
        let fam = family(2);
        let s = build_skeleton(&fam).unwrap();
        let t = tropicalize(&fam).unwrap();
        let p = |a: Scalar, b: Option<Scalar>| LeadingTerm {
            factor: UniPoly::from_ints(&[-7, 1]),
            x_valuation: a,
            y_valuation: b,
            branches: 2,
            multiplicity: 1,
        };
        assert_eq!(specialize_divisor(&[p(ratio(3, 2), None)], &s, &t), Err(Error::ValuationOnEdge));
        assert_eq!(specialize_divisor(&[p(ratio(3, 2), Some(int(9)))], &s, &t), Err(Error::ValuationOffCurve));
        let d = specialize_divisor(&[p(int(1), Some(ratio(1, 2)))], &s, &t).unwrap();
        assert_eq!(d.degree(), 2);
        assert_eq!(d.curves[0].interior_degree(), 2);
        assert_eq!(d.real_degree, 2);
        let root = LeadingTerm { factor: UniPoly::from_ints(&[-1, 1]), y_valuation: Some(int(0)), ..p(int(1), None) };
        let d = specialize_divisor(&[root], &s, &t).unwrap();
        assert_eq!(d.at(SkeletonVertex::Root(1, 1)), 1);
    }

    #[test]
    fn inflection_clusters() {
        for (g, k) in [(1, 2), (2, 3), (2, 4)] {
            let fam = family(g);
            let sp = specialize_inflection(&fam, k).unwrap();
            assert_eq!(sp.clusters.len(), g);
            assert!(sp.clusters.iter().all(|c| c.interior.deg() == 2 * (k + 1) * (k - g)));
            let d = &sp.divisor;
            let skel = build_skeleton(&fam).unwrap();
            assert!(d.respects_marked_points(&skel));
            assert_eq!(d.degree(), g as i64 * (2 * k as i64 - g as i64 + 1).pow(2));
            for i in 1..=g {
                assert_eq!(d.at(SkeletonVertex::Elliptic(i)), 4 * ((k + 1) * (k - g)) as i64);
            }
        }
    }
}
