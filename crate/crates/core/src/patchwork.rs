//! Patchworking families y² = Σ a_i t^{ν(i)} x^i built from elliptic pieces
//! Q_j = a_j x^{2j−1}(x − x_{j,1})(x − x_{j,2}).

use hyperflex_exact::{int, Scalar, UniPoly};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::curve::{rational_sqrt, HyperellipticCurve};
use crate::error::{Error, Result};

/// One elliptic piece, stored as its leading coefficient and the elementary
/// symmetric functions of its two nonzero roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticPiece {
    pub a: Scalar,
    pub sum: Scalar,
    pub product: Scalar,
}

impl EllipticPiece {
    pub fn new(a: Scalar, sum: Scalar, product: Scalar) -> Result<Self> {
        let p = EllipticPiece { a, sum, product };
        if p.a.is_zero() || p.product.is_zero() || p.discriminant().is_zero() {
            return Err(Error::SeparabilityFailure(0));
        }
        Ok(p)
    }

    pub fn from_roots(a: Scalar, x1: Scalar, x2: Scalar) -> Result<Self> {
        Self::new(a, &x1 + &x2, x1 * x2)
    }

    pub fn from_ints(a: i64, sum: i64, product: i64) -> Result<Self> {
        Self::new(int(a), int(sum), int(product))
    }

    /// (x − x_1)(x − x_2).
    pub fn quadratic(&self) -> UniPoly {
        UniPoly::new(vec![self.product.clone(), -self.sum.clone(), Scalar::one()])
    }

    pub fn discriminant(&self) -> Scalar {
        &self.sum * &self.sum - int(4) * &self.product
    }

    /// Both roots, when they are rational.
    pub fn rational_roots(&self) -> Option<(Scalar, Scalar)> {
        let r = rational_sqrt(&self.discriminant())?;
        let two = int(2);
        Some(((&self.sum - &r) / &two, (&self.sum + &r) / &two))
    }

    pub fn has_real_roots(&self) -> bool {
        self.discriminant().is_positive()
    }

    /// Number of components of the real locus of y² = Q_j.
    pub fn real_components(&self) -> usize {
        if self.has_real_roots() {
            2
        } else {
            1
        }
    }

    /// Q_j = a x^{2j−1}(x − x_1)(x − x_2).
    pub fn polynomial(&self, j: usize) -> UniPoly {
        self.quadratic().scale(&self.a).shift_up(2 * j - 1)
    }

    /// a x (x − x_1)(x − x_2), the cubic model of the normalization.
    pub fn cubic(&self) -> UniPoly {
        self.polynomial(1)
    }

    /// The coefficient of the lowest monomial x^{2j−1}.
    pub fn lowest(&self) -> Scalar {
        &self.a * &self.product
    }

    /// The same roots with the leading coefficient replaced.
    pub fn with_leading(&self, a: Scalar) -> Result<Self> {
        Self::new(a, self.sum.clone(), self.product.clone())
    }
}

/// Lifting values ν(1), …, ν(2g+1); `None` stands for ∞ (coefficient absent).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuFunction {
    values: Vec<Option<i64>>,
}

impl NuFunction {
    pub fn new(values: Vec<Option<i64>>) -> Result<Self> {
        if values.len() < 3 || values.len() % 2 == 0 {
            return Err(Error::InvalidInput(format!("ν needs 2g+1 values, got {}", values.len())));
        }
        for (i, v) in values.iter().enumerate() {
            match v {
                Some(x) if *x < 0 => {
                    return Err(Error::InvalidInput(format!("ν({}) = {x} is negative", i + 1)))
                }
                None if i % 2 == 0 => {
                    return Err(Error::InvalidInput(format!("ν({}) must be finite", i + 1)))
                }
                _ => {}
            }
        }
        Ok(NuFunction { values })
    }

    /// ν(2j−1) = (j−1)j and ν(2j) = j².
    pub fn default_for(g: usize) -> Self {
        let values = (1..=2 * g + 1)
            .map(|i| {
                let j = (i as i64 + 1) / 2;
                Some(if i % 2 == 1 { (j - 1) * j } else { j * j })
            })
            .collect();
        NuFunction { values }
    }

    /// Odd values only; even entries absent.
    pub fn from_odd(odd: &[i64]) -> Result<Self> {
        let mut values = Vec::new();
        for (j, v) in odd.iter().enumerate() {
            if j > 0 {
                values.push(None);
            }
            values.push(Some(*v));
        }
        Self::new(values)
    }

    pub fn genus(&self) -> usize {
        (self.values.len() - 1) / 2
    }

    /// ν(i) for 1 ≤ i ≤ 2g+1.
    pub fn get(&self, i: usize) -> Option<i64> {
        self.values.get(i.checked_sub(1)?).copied().flatten()
    }

    pub fn set(&mut self, i: usize, v: Option<i64>) {
        self.values[i - 1] = v;
    }

    /// (i, ν(i)) for the finite values.
    pub fn finite(&self) -> Vec<(i64, i64)> {
        (1..=self.values.len()).filter_map(|i| self.get(i).map(|v| (i as i64, v))).collect()
    }

    /// Slope of ν on [2j−1, 2j+1].
    pub fn slope(&self, j: usize) -> Scalar {
        let lo = self.get(2 * j - 1).expect("odd values are finite");
        let hi = self.get(2 * j + 1).expect("odd values are finite");
        Scalar::new((hi - lo).into(), 2.into())
    }
}

/// A lattice point of Δ = Conv{(0,2), (1,0), (2g+1,0)}.
pub type LatticePoint = (i64, i64);

/// A triangle of the induced subdivision with the affine function certifying
/// it: φ(x, y) = c0 + c1·x + c2·y equals the lift on the triangle and lies
/// strictly below it at every lifted point outside the triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: [LatticePoint; 3],
    pub certificate: [Scalar; 3],
    pub interior_points: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionEdge {
    pub ends: [LatticePoint; 2],
    pub lattice_length: i64,
    /// Indices of the faces containing the edge.
    pub faces: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub faces: Vec<Face>,
    pub edges: Vec<SubdivisionEdge>,
}

fn lattice_length(p: LatticePoint, q: LatticePoint) -> i64 {
    (q.0 - p.0).gcd(&(q.1 - p.1))
}

/// Lower convex hull of the lift of Δ's lattice points, projected to Δ.
/// Fails unless the faces are exactly the triangles Θ_j.
pub fn induced_subdivision(nu: &NuFunction) -> Result<Subdivision> {
    let g = nu.genus();
    let pts = nu.finite();
    // Lower hull of the graph of ν, collinear points removed.
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let breaks: Vec<i64> = hull.iter().map(|p| p.0).collect();
    let expected: Vec<i64> = (0..=g as i64).map(|j| 2 * j + 1).collect();
    if breaks != expected {
        return Err(Error::SubdivisionMismatch(format!(
            "the lower hull of ν breaks at {breaks:?}, not at the odd points {expected:?}"
        )));
    }

    let lifted: Vec<(i64, i64, i64)> =
        std::iter::once((0, 2, 0)).chain(pts.iter().map(|&(i, v)| (i, 0, v))).collect();
    let mut faces = Vec::with_capacity(g);
    for w in hull.windows(2) {
        let ((p, vp), (q, vq)) = (w[0], w[1]);
        let c1 = Scalar::new((vq - vp).into(), (q - p).into());
        let c0 = int(vp) - &c1 * int(p);
        let c2 = -&c0 / int(2);
        let phi = |x: i64, y: i64| &c0 + &c1 * int(x) + &c2 * int(y);
        for &(x, y, h) in &lifted {
            let inside = y == 2 || (p <= x && x <= q);
            let gap = int(h) - phi(x, y);
            if gap.is_negative() || (!inside && gap.is_zero()) {
                return Err(Error::SubdivisionMismatch(format!(
                    "the lifted point ({x}, {y}, {h}) breaks the face over [{p}, {q}]"
                )));
            }
        }
        let vertices = [(0, 2), (p, 0), (q, 0)];
        let area2 = 2 * (q - p);
        let boundary = lattice_length(vertices[0], vertices[1])
            + lattice_length(vertices[1], vertices[2])
            + lattice_length(vertices[2], vertices[0]);
        let interior_points = (area2 - boundary + 2) / 2;
        faces.push(Face { vertices, certificate: [c0, c1, c2], interior_points });
    }

    let mut edges: Vec<SubdivisionEdge> = Vec::new();
    for (fi, face) in faces.iter().enumerate() {
        let v = face.vertices;
        for (a, b) in [(v[0], v[1]), (v[1], v[2]), (v[0], v[2])] {
            match edges.iter_mut().find(|e| e.ends == [a, b]) {
                Some(e) => e.faces.push(fi),
                None => edges.push(SubdivisionEdge { ends: [a, b], lattice_length: lattice_length(a, b), faces: vec![fi] }),
            }
        }
    }
    Ok(Subdivision { faces, edges })
}

/// y² − Σ a_i t^{ν(i)} x^i together with the pieces it was glued from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchworkFamily {
    pub genus: usize,
    /// a_0 = 0, a_1, …, a_{2g+1}.
    pub coeffs: Vec<Scalar>,
    pub nu: NuFunction,
    pub pieces: Vec<EllipticPiece>,
}

/// Glue pieces Q_1, …, Q_g. Adjacent pieces must agree on the shared
/// coefficient of x^{2j+1}. Missing ν defaults to [`NuFunction::default_for`];
/// even values are placed on the hull wherever the even coefficient is nonzero.
pub fn assemble_family(pieces: &[EllipticPiece], nu: Option<NuFunction>) -> Result<PatchworkFamily> {
    let g = pieces.len();
    if g == 0 {
        return Err(Error::InvalidInput("a family needs at least one piece".into()));
    }
    for (j, p) in pieces.iter().enumerate() {
        if p.a.is_zero() || p.product.is_zero() || p.discriminant().is_zero() {
            return Err(Error::SeparabilityFailure(j + 1));
        }
    }
    for j in 1..g {
        if pieces[j - 1].a != pieces[j].lowest() {
            return Err(Error::GluingMismatch(j, j + 1));
        }
    }
    let mut coeffs = vec![Scalar::zero(); 2 * g + 2];
    for (j0, p) in pieces.iter().enumerate() {
        let j = j0 + 1;
        coeffs[2 * j - 1] = p.lowest();
        coeffs[2 * j] = -(&p.a * &p.sum);
        coeffs[2 * j + 1] = p.a.clone();
    }
    let mut nu = match nu {
        Some(n) if n.genus() != g => {
            return Err(Error::InvalidInput(format!("ν is for genus {}, the pieces for genus {g}", n.genus())))
        }
        Some(n) => n,
        None => NuFunction::default_for(g),
    };
    for j in 1..=g {
        let i = 2 * j;
        let lo = nu.get(i - 1).expect("odd values are finite");
        let hi = nu.get(i + 1).expect("odd values are finite");
        if coeffs[i].is_zero() {
            if nu.get(i).is_some() {
                return Err(Error::InvalidInput(format!("a_{i} = 0 needs ν({i}) = ∞")));
            }
            continue;
        }
        if (lo + hi) % 2 != 0 {
            return Err(Error::SubdivisionMismatch(format!(
                "ν({}) + ν({}) is odd, so x^{i} cannot lie on the face",
                i - 1,
                i + 1
            )));
        }
        let mid = (lo + hi) / 2;
        match nu.get(i) {
            Some(v) if v != mid => {
                return Err(Error::SubdivisionMismatch(format!(
                    "ν({i}) = {v} but the initial form of piece {j} needs {mid}"
                )))
            }
            _ => nu.set(i, Some(mid)),
        }
    }
    induced_subdivision(&nu)?;
    Ok(PatchworkFamily { genus: g, coeffs, nu, pieces: pieces.to_vec() })
}

/// Pieces with prescribed roots, scaled so the gluing conditions hold with a_1 = a.
pub fn glue_roots(a: Scalar, roots: &[(Scalar, Scalar)]) -> Result<Vec<EllipticPiece>> {
    let mut out: Vec<EllipticPiece> = Vec::with_capacity(roots.len());
    let mut lead = a;
    for (s, p) in roots {
        if p.is_zero() {
            return Err(Error::SeparabilityFailure(out.len() + 1));
        }
        if let Some(prev) = out.last() {
            lead = &prev.a / p;
        }
        let j = out.len() + 1;
        out.push(EllipticPiece::new(lead.clone(), s.clone(), p.clone()).map_err(|_| Error::SeparabilityFailure(j))?);
    }
    Ok(out)
}

impl PatchworkFamily {
    /// f_t as (coefficient, t-exponent) pairs indexed by the power of x.
    pub fn terms(&self) -> Vec<(usize, Scalar, i64)> {
        (1..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .map(|i| (i, self.coeffs[i].clone(), self.nu.get(i).expect("nonzero coefficients have finite ν")))
            .collect()
    }

    /// f at t = ε.
    pub fn f_at(&self, eps: &Scalar) -> UniPoly {
        let mut c = vec![Scalar::zero(); self.coeffs.len()];
        for (i, a, e) in self.terms() {
            c[i] = a * pow(eps, e);
        }
        UniPoly::new(c)
    }

    /// Number of pieces whose roots are real.
    pub fn real_pieces(&self) -> usize {
        self.pieces.iter().filter(|p| p.has_real_roots()).count()
    }

    /// Components of X_ε(ℝ) for small ε: 1 + Σ (n(E_i) − 1).
    pub fn predicted_components(&self) -> usize {
        1 + self.pieces.iter().map(|p| p.real_components() - 1).sum::<usize>()
    }

    pub fn subdivision(&self) -> Result<Subdivision> {
        induced_subdivision(&self.nu)
    }
}

fn pow(x: &Scalar, e: i64) -> Scalar {
    num_traits::pow(x.clone(), e as usize)
}

/// The initial form Σ_{j=2i−1}^{2i+1} a_j X^j at the i-th vertex, as a piece.
pub fn initial_degeneration(fam: &PatchworkFamily, i: usize) -> Result<EllipticPiece> {
    if i == 0 || i > fam.genus {
        return Err(Error::OutOfRange(i));
    }
    let a = fam.coeffs[2 * i + 1].clone();
    let sum = -&fam.coeffs[2 * i] / &a;
    let product = &fam.coeffs[2 * i - 1] / &a;
    EllipticPiece::new(a, sum, product).map_err(|_| Error::SeparabilityFailure(i))
}

/// The initial form as a polynomial in X.
pub fn initial_polynomial(fam: &PatchworkFamily, i: usize) -> Result<UniPoly> {
    Ok(initial_degeneration(fam, i)?.polynomial(i))
}

/// The fiber X_ε: y² = f(x)|_{t=ε}.
pub fn instantiate(fam: &PatchworkFamily, eps: &Scalar) -> Result<HyperellipticCurve> {
    if !eps.is_positive() {
        return Err(Error::InvalidInput(format!("ε = {eps} must be positive")));
    }
    HyperellipticCurve::new(fam.f_at(eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperflex_exact::ratio;

    #[test]
    fn hull_examples() {
        let s = induced_subdivision(&NuFunction::from_odd(&[0, 0, 1]).unwrap()).unwrap();
        assert_eq!(s.faces.len(), 2);
        assert_eq!(s.faces[1].vertices, [(0, 2), (3, 0), (5, 0)]);
        assert!(matches!(
            induced_subdivision(&NuFunction::from_odd(&[0, 0, 0]).unwrap()),
            Err(Error::SubdivisionMismatch(_))
        ));
        let s = induced_subdivision(&NuFunction::from_odd(&[0, 0]).unwrap()).unwrap();
        assert_eq!(s.faces.len(), 1);
        assert!(s.faces.iter().all(|f| f.interior_points == 1));
    }

    #[test]
    fn gluing_and_round_trip() {
        let p1 = EllipticPiece::from_roots(int(1), int(1), int(2)).unwrap();
        let p2 = EllipticPiece::from_roots(ratio(1, 6), int(2), int(3)).unwrap();
        let fam = assemble_family(&[p1.clone(), p2.clone()], None).unwrap();
        assert_eq!(fam.coeffs[3], int(1));
        assert_eq!(initial_degeneration(&fam, 1).unwrap(), p1);
        assert_eq!(initial_degeneration(&fam, 2).unwrap(), p2);
        assert!(initial_degeneration(&fam, 3).is_err());
        let bad = EllipticPiece::from_roots(int(1), int(2), int(3)).unwrap();
        assert_eq!(assemble_family(&[p1, bad], None), Err(Error::GluingMismatch(1, 2)));
    }

    #[test]
    fn instantiate_rejects_nonpositive() {
        let p = EllipticPiece::from_roots(int(1), int(1), int(2)).unwrap();
        let fam = assemble_family(&[p], None).unwrap();
        assert!(instantiate(&fam, &int(0)).is_err());
        assert_eq!(instantiate(&fam, &int(1)).unwrap().real_component_count(), 2);
    }
}
