//! Checks shared by the property tests and the acceptance suite. Each one
//! returns a description of the first violation it finds.

#![allow(dead_code)]

use hyperflex::inflection::initial_order;
use hyperflex::tropical::EdgeShape;
use hyperflex::wronskian::{BlockWronskian, ToeplitzWronskian, WronskianStrategy};
use hyperflex::{
    analyze, analyze_wronskian, assemble_family, build_skeleton, full_wronskian, glue_roots, initial_degeneration,
    tropicalize, Branch, CurvePoint, FFElement, HyperellipticCurve, LocalPoint, PatchworkFamily, SeriesBasis,
    Toolkit,
};
use hyperflex_exact::{int, Scalar, UniPoly};
use num_integer::Integer;
use num_traits::Signed;
use rand::Rng;

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Separable integer f of degree 2g+1 with f(0) = 0.
pub fn random_curve(g: usize, rng: &mut impl Rng) -> HyperellipticCurve {
    loop {
        let mut c = vec![0];
        c.extend((0..2 * g).map(|_| rng.gen_range(-4..=4)));
        c.push([1, -1, 2][rng.gen_range(0..3)]);
        if let Ok(curve) = HyperellipticCurve::from_ints(&c) {
            return curve;
        }
    }
}

pub fn family(shapes: &[(Scalar, Scalar)]) -> Option<PatchworkFamily> {
    assemble_family(&glue_roots(int(1), shapes).ok()?, None).ok()
}

/// Product of random elementary integer operations and its determinant ±1.
pub fn unimodular(n: usize, rng: &mut impl Rng) -> (Vec<Vec<Scalar>>, i64) {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    let mut det = 1;
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..4) {
            0 if i != j => {
                m.swap(i, j);
                det = -det;
            }
            1 => {
                for x in &mut m[i] {
                    *x = -*x;
                }
                det = -det;
            }
            _ if i != j => {
                let c = if rng.gen_bool(0.5) { 1 } else { -1 };
                for col in 0..n {
                    m[i][col] += c * m[j][col];
                }
            }
            _ => {}
        }
    }
    (m.into_iter().map(|r| r.into_iter().map(int).collect()).collect(), det)
}

fn combine(m: &[Vec<Scalar>], basis: &[FFElement]) -> Vec<FFElement> {
    m.iter()
        .map(|row| row.iter().zip(basis).fold(FFElement::default(), |acc, (c, e)| acc.add(&e.scale(c))))
        .collect()
}

/// Ten unimodular changes of the canonical basis leave the divisor, the
/// vanishing sequences at ∞ and at (0, 0), and W up to det M unchanged.
pub fn basis_change(curve: &HyperellipticCurve, k: usize, rng: &mut impl Rng) -> Check {
    let g = curve.genus();
    let basis = SeriesBasis::canonical(g, k);
    let d = basis.pole_bound as i64;
    let start = initial_order(basis.pole_bound, g);
    let elems = basis.elements();
    let tools = Toolkit::default();
    let base = analyze(curve, &basis, &tools, true).map_err(|e| e.to_string())?;
    let w0 = full_wronskian(curve, &elems).map_err(|e| e.to_string())?;
    let origin = LocalPoint::Ramified(int(0));
    let inf0 = curve.vanishing_sequence(&elems, &LocalPoint::Infinity, d, start).map_err(|e| e.to_string())?;
    let org0 = curve.vanishing_sequence(&elems, &origin, d, start).map_err(|e| e.to_string())?;
    for _ in 0..10 {
        let (m, det) = unimodular(elems.len(), rng);
        let changed = combine(&m, &elems);
        let w = full_wronskian(curve, &changed).map_err(|e| e.to_string())?;
        ensure!(w.ratio_to(&w0, curve.f()) == Some(int(det)), "W(M·b) is not det M · W(b)");
        let r = analyze_wronskian(curve, &w, &changed, basis.pole_bound, &tools, true).map_err(|e| e.to_string())?;
        ensure!(r.total_degree == base.total_degree, "total degree moved");
        ensure!(r.real_degree == base.real_degree, "real degree moved");
        ensure!(r.per_component == base.per_component, "component split moved");
        ensure!(r.per_component_points == base.per_component_points, "point counts moved");
        ensure!(r.s_numerator.monic() == base.s_numerator.monic(), "S moved");
        ensure!(r.m_infinity == base.m_infinity, "weight at ∞ moved");
        let inf = curve.vanishing_sequence(&changed, &LocalPoint::Infinity, d, start).map_err(|e| e.to_string())?;
        ensure!(inf == inf0, "vanishing sequence at ∞ moved: {inf:?} vs {inf0:?}");
        let org = curve.vanishing_sequence(&changed, &origin, d, start).map_err(|e| e.to_string())?;
        ensure!(org == org0, "vanishing sequence at (0, 0) moved: {org:?} vs {org0:?}");
    }
    Ok(())
}

/// S is carried to itself by B ↦ −B, both through the Wronskian of the
/// flipped basis and point by point.
pub fn involution_invariance(curve: &HyperellipticCurve, k: usize) -> Check {
    let g = curve.genus();
    let basis = SeriesBasis::canonical(g, k);
    let elems = basis.elements();
    let tools = Toolkit::default();
    let base = analyze(curve, &basis, &tools, false).map_err(|e| e.to_string())?;
    let flipped: Vec<FFElement> = elems.iter().map(FFElement::involution).collect();
    let w = full_wronskian(curve, &flipped).map_err(|e| e.to_string())?;
    let c = w.ratio_to(&base.wronskian, curve.f());
    ensure!(c == Some(int(1)) || c == Some(int(-1)), "flipped Wronskian ratio {c:?}");
    let r = analyze_wronskian(curve, &w, &flipped, basis.pole_bound, &tools, false).map_err(|e| e.to_string())?;
    ensure!(r.s_numerator.monic() == base.s_numerator.monic(), "S changes under the involution");
    let terms = base.s_part.terms();
    let mass = |p: &CurvePoint| -> i64 {
        let key = p.to_string();
        terms.iter().filter(|u| u.point.to_string() == key).map(|u| u.multiplicity * u.count as i64).sum()
    };
    for t in terms {
        let mirror = match &t.point {
            CurvePoint::Affine { x, branch: Branch::Plus } => CurvePoint::Affine { x: x.clone(), branch: Branch::Minus },
            CurvePoint::Affine { x, branch: Branch::Minus } => CurvePoint::Affine { x: x.clone(), branch: Branch::Plus },
            other => return Err(format!("S contains the fixed point {other}")),
        };
        ensure!(mass(&mirror) == mass(&t.point), "S differs at {} and its mirror", t.point);
    }
    Ok(())
}

pub fn block_full_proportional(curve: &HyperellipticCurve, k: usize) -> Check {
    let basis = SeriesBasis::canonical(curve.genus(), k);
    let block = BlockWronskian.wronskian(curve, &basis).map_err(|e| e.to_string())?;
    let full = full_wronskian(curve, &basis.elements()).map_err(|e| e.to_string())?;
    ensure!(full.ratio_to(&block, curve.f()).is_some(), "block and full Wronskians are not proportional");
    Ok(())
}

pub fn toeplitz_block(curve: &HyperellipticCurve, k: usize) -> Check {
    let basis = SeriesBasis::canonical(curve.genus(), k);
    let block = BlockWronskian.wronskian(curve, &basis).map_err(|e| e.to_string())?;
    let toeplitz = ToeplitzWronskian.wronskian(curve, &basis).map_err(|e| e.to_string())?;
    ensure!(toeplitz.ratio_to(&block, curve.f()).is_some(), "Toeplitz and block Wronskians differ");
    let tools = Toolkit::default();
    let a = analyze_wronskian(curve, &block, &basis.elements(), basis.pole_bound, &tools, false).map_err(|e| e.to_string())?;
    let b = analyze_wronskian(curve, &toeplitz, &basis.elements(), basis.pole_bound, &tools, false).map_err(|e| e.to_string())?;
    ensure!(a.real_degree == b.real_degree, "real degrees differ");
    ensure!(a.s_numerator.monic() == b.s_numerator.monic(), "S differs");
    Ok(())
}

/// Σ ord_P over the whole support of y^ey · Π (x − r)^n · (x − c)^{−2},
/// where every r is a root of f and f(c) is a square when such c exists.
pub fn principal_degree_zero(roots: &[i64], ey: i64, ex: &[i64]) -> Check {
    let f = UniPoly::from_roots(&roots.iter().map(|&r| int(r)).collect::<Vec<_>>());
    let curve = HyperellipticCurve::new(f.clone()).map_err(|e| e.to_string())?;
    let mut e = FFElement::constant(int(1));
    let y = FFElement::y();
    for _ in 0..ey.abs() {
        e = if ey > 0 { curve.mul(&e, &y) } else { curve.div(&e, &y).map_err(|e| e.to_string())? };
    }
    for (r, &n) in roots.iter().zip(ex) {
        let lin = FFElement::from_poly(UniPoly::from_ints(&[-r, 1]));
        for _ in 0..n.abs() {
            e = if n > 0 { curve.mul(&e, &lin) } else { curve.div(&e, &lin).map_err(|e| e.to_string())? };
        }
    }
    let mut support: Vec<LocalPoint> = roots.iter().map(|&r| LocalPoint::Ramified(int(r))).collect();
    support.push(LocalPoint::Infinity);
    let square = (-12i64..=12).find_map(|c| {
        let v = f.eval(&int(c));
        if v.is_positive() {
            hyperflex::rational_sqrt(&v).map(|s| (c, s))
        } else {
            None
        }
    });
    if let Some((c, s)) = square {
        let lin = FFElement::from_poly(UniPoly::from_ints(&[-c, 1]));
        e = curve.div(&e, &curve.mul(&lin, &lin)).map_err(|e| e.to_string())?;
        support.push(LocalPoint::Unramified { x: int(c), y: s.clone() });
        support.push(LocalPoint::Unramified { x: int(c), y: -s });
    }
    let mut total = 0;
    for p in &support {
        let s = curve.local_expand(&e, p, 40).map_err(|e| e.to_string())?;
        total += s.valuation().ok_or("element expands to zero")?;
    }
    ensure!(total == 0, "principal divisor has degree {total}");
    Ok(())
}

pub fn derivative_rules(curve: &HyperellipticCurve, p: &FFElement, q: &FFElement, k: i64) -> Check {
    let d = |e: &FFElement| curve.derivative(e);
    let lhs = d(&curve.mul(p, q));
    let rhs = curve.mul(&d(p), q).add(&curve.mul(p, &d(q)));
    ensure!(lhs == rhs, "Leibniz rule fails");
    ensure!(d(&FFElement::constant(int(k))).is_zero(), "constants have nonzero derivative");
    let y = FFElement::y();
    let fp = FFElement::from_poly(curve.f().derivative());
    ensure!(d(&curve.mul(&y, &y)) == fp, "(y²)′ is not f′");
    ensure!(curve.mul(&y, &d(&y)).scale(&int(2)) == fp, "2y·y′ is not f′");
    ensure!(d(&p.involution()) == d(p).involution(), "derivative does not commute with the involution");
    if !q.is_zero() {
        let quo = curve.div(p, q).map_err(|e| e.to_string())?;
        let lhs = curve.mul(&d(&quo), &curve.mul(q, q));
        let rhs = curve.mul(&d(p), q).sub(&curve.mul(p, &d(q)));
        ensure!(lhs == rhs, "quotient rule fails");
    }
    Ok(())
}

/// Balancing recomputed from the dual edges, and every vertex and ray checked
/// against the max-plus polynomial itself.
pub fn tropical_balancing(fam: &PatchworkFamily) -> Check {
    let g = fam.genus;
    let t = tropicalize(fam).map_err(|e| e.to_string())?;
    let terms: Vec<(i64, i64, Scalar)> = std::iter::once((0, 2, int(0)))
        .chain(fam.terms().into_iter().map(|(i, _, nu)| (i as i64, 0, int(nu))))
        .collect();
    let maximizers = |x: &Scalar, y: &Scalar| {
        let vals: Vec<Scalar> = terms.iter().map(|(i, j, nu)| x * int(*i) + y * int(*j) - nu).collect();
        let best = vals.iter().max().unwrap().clone();
        terms.iter().zip(&vals).filter(|(_, v)| **v == best).map(|(t, _)| (t.0, t.1)).collect::<Vec<_>>()
    };
    let mut sums = vec![(0i64, 0i64); t.vertices.len()];
    for e in &t.edges {
        let [p, q] = e.dual;
        let (ex, ey) = (q.0 - p.0, q.1 - p.1);
        ensure!(e.weight == ex.gcd(&ey), "weight {} is not the lattice length of {p:?}{q:?}", e.weight);
        let (dx, dy) = e.direction;
        ensure!(dx * ex + dy * ey == 0, "edge is not normal to its dual");
        ensure!(dx.gcd(&dy) == 1, "direction is not primitive");
        let from = match e.shape {
            EdgeShape::Bounded { from, to } => {
                let l = e.length.clone().ok_or("bounded edge without length")?;
                ensure!(l.is_positive(), "nonpositive length");
                ensure!(&t.vertices[to].0 - &t.vertices[from].0 == &l * int(dx), "length mismatch in x");
                ensure!(&t.vertices[to].1 - &t.vertices[from].1 == &l * int(dy), "length mismatch in y");
                sums[to].0 -= e.weight * dx;
                sums[to].1 -= e.weight * dy;
                from
            }
            EdgeShape::Ray { from, .. } => {
                let (x, y) = &t.vertices[from];
                let m = maximizers(&(x + int(dx)), &(y + int(dy)));
                ensure!(m.contains(&p) && m.contains(&q), "ray leaves the tropical curve");
                ensure!(m.iter().all(|r| (r.0 - p.0) * ey - (r.1 - p.1) * ex == 0), "ray meets an extra term");
                from
            }
        };
        sums[from].0 += e.weight * dx;
        sums[from].1 += e.weight * dy;
    }
    ensure!(sums.iter().all(|&s| s == (0, 0)), "unbalanced vertex: {sums:?}");
    for (x, y) in &t.vertices {
        ensure!(maximizers(x, y).len() >= 3, "vertex is not a corner of the max-plus polynomial");
    }
    let skel = build_skeleton(fam).map_err(|e| e.to_string())?;
    ensure!(skel.type_one_vertices().len() == 2 * g + 2, "type I vertex count");
    ensure!(skel.finite_edges().len() == g - 1, "finite edge count");
    Ok(())
}

pub fn round_trip(fam: &PatchworkFamily) -> Check {
    for (i, piece) in fam.pieces.iter().enumerate() {
        let back = initial_degeneration(fam, i + 1).map_err(|e| e.to_string())?;
        ensure!(&back == piece, "piece {} does not round trip", i + 1);
    }
    let sub = fam.subdivision().map_err(|e| e.to_string())?;
    ensure!(sub.faces.len() == fam.genus, "subdivision has {} faces", sub.faces.len());
    Ok(())
}
