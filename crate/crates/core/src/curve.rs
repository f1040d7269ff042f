//! The curve y² = f(x), its function field, divisors and local expansions.

use std::fmt;

use hyperflex_exact::{
    int, isolate_real_roots_with, DescartesIsolator, IsolatedRoot, RationalFunction, RootIsolator,
    Scalar, SignOracle, TruncatedSeries, UniPoly,
};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// y² = f(x) with deg f = 2g + 1 and f separable.
#[derive(Clone, Debug)]
pub struct HyperellipticCurve {
    f: UniPoly,
    genus: usize,
    real_roots: Vec<IsolatedRoot>,
    rational_roots: Vec<Option<Scalar>>,
}

/// A connected component of the real locus: a maximal x-interval on which
/// f ≥ 0, bounded by real roots of f (indices into `real_roots`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub index: usize,
    pub lower_root: Option<usize>,
    pub upper_root: Option<usize>,
}

impl Component {
    pub fn contains_infinity(&self) -> bool {
        self.lower_root.is_none() || self.upper_root.is_none()
    }
}

impl HyperellipticCurve {
    pub fn new(f: UniPoly) -> Result<Self> {
        Self::with_isolator(f, &DescartesIsolator)
    }

    pub fn with_isolator(f: UniPoly, isolator: &dyn RootIsolator) -> Result<Self> {
        let d = f.degree().ok_or(Error::InvalidCurve("f is zero".into()))?;
        if d < 3 || d % 2 == 0 {
            return Err(Error::InvalidCurve(format!("deg f = {d} is not 2g + 1 with g ≥ 1")));
        }
        if !f.is_square_free() {
            return Err(Error::NotSeparable);
        }
        let mut real_roots = isolate_real_roots_with(&f, isolator)?;
        let rational_roots = real_roots.iter_mut().map(|r| r.try_rational()).collect();
        Ok(HyperellipticCurve { f, genus: (d - 1) / 2, real_roots, rational_roots })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(UniPoly::from_ints(coeffs))
    }

    pub fn f(&self) -> &UniPoly {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Whether f(0) = 0, the normalization used by patchworking.
    pub fn vanishes_at_origin(&self) -> bool {
        self.f.coeff(0).is_zero()
    }

    pub fn real_roots(&self) -> &[IsolatedRoot] {
        &self.real_roots
    }

    pub fn rational_root(&self, i: usize) -> Option<&Scalar> {
        self.rational_roots[i].as_ref()
    }

    /// n(X): the number of connected components of the real locus.
    pub fn real_component_count(&self) -> usize {
        (self.real_roots.len() + 1) / 2
    }

    /// (g, n, a) with a = 0 exactly when the real locus separates.
    pub fn topological_type(&self) -> (usize, usize, usize) {
        let n = self.real_component_count();
        (self.genus, n, usize::from(n != self.genus + 1))
    }

    fn lc_positive(&self) -> bool {
        self.f.lc().is_positive()
    }

    /// Map a count of real roots of f at or below x to a component.
    fn component_from_count(&self, c: usize) -> usize {
        if self.lc_positive() {
            (c - 1) / 2
        } else {
            c / 2
        }
    }

    pub fn components(&self) -> Vec<Component> {
        let m = self.real_roots.len();
        let n = self.real_component_count();
        (0..n)
            .map(|index| {
                let (lo, hi) = if self.lc_positive() {
                    (Some(2 * index), 2 * index + 1)
                } else {
                    ((2 * index).checked_sub(1), 2 * index)
                };
                Component {
                    index,
                    lower_root: lo,
                    upper_root: (hi < m).then_some(hi),
                }
            })
            .collect()
    }

    pub fn component_of_root(&self, i: usize) -> usize {
        self.component_from_count(i + 1)
    }

    pub fn infinity_component(&self) -> usize {
        if self.lc_positive() {
            self.real_component_count() - 1
        } else {
            0
        }
    }

    /// Component containing the real points over the rational x, if any.
    pub fn component_of_rational(&self, x: &Scalar) -> Option<usize> {
        let v = self.f.eval(x);
        if v.is_negative() {
            return None;
        }
        let oracle = SignOracle::new(&self.f);
        let below = oracle.roots_below_rational(x);
        Some(self.component_from_count(below + usize::from(v.is_zero())))
    }

    /// Component over an algebraic x that is not a root of f; `None` when
    /// f(x) < 0.
    pub fn component_of_algebraic(&self, r: &mut IsolatedRoot) -> Option<usize> {
        let oracle = SignOracle::new(&self.f);
        match oracle.sign(r) {
            s if s < 0 => None,
            0 => panic!("component_of_algebraic called at a root of f"),
            _ => Some(self.component_from_count(oracle.roots_below(r))),
        }
    }

    /// The reduced divisor of the 2g + 2 fixed points of y ↦ −y.
    pub fn ramification_divisor(&self) -> Divisor {
        let mut d = Divisor::default();
        for i in 0..self.real_roots.len() {
            d.push(DivisorTerm {
                point: self.root_point(i),
                multiplicity: 1,
                count: 1,
                real: true,
                component: Some(self.component_of_root(i)),
            });
        }
        let nonreal = 2 * self.genus + 1 - self.real_roots.len();
        if nonreal > 0 {
            d.push(DivisorTerm {
                point: CurvePoint::Affine {
                    x: XCoord::NonReal { factor: self.f.monic(), count: nonreal },
                    branch: Branch::Zero,
                },
                multiplicity: 1,
                count: nonreal,
                real: false,
                component: None,
            });
        }
        d.push(DivisorTerm {
            point: CurvePoint::Infinity,
            multiplicity: 1,
            count: 1,
            real: true,
            component: Some(self.infinity_component()),
        });
        d
    }

    /// The point (r_i, 0) for the i-th real root of f.
    pub fn root_point(&self, i: usize) -> CurvePoint {
        let x = match &self.rational_roots[i] {
            Some(q) => XCoord::Rational(q.clone()),
            None => XCoord::Real(self.real_roots[i].clone()),
        };
        CurvePoint::Affine { x, branch: Branch::Zero }
    }

    // Function field arithmetic.

    pub fn mul(&self, p: &FFElement, q: &FFElement) -> FFElement {
        let fy = RationalFunction::from(self.f.clone());
        FFElement {
            a: p.a.mul(&q.a).add(&p.b.mul(&q.b).mul(&fy)),
            b: p.a.mul(&q.b).add(&p.b.mul(&q.a)),
        }
    }

    /// A² − B²f, the norm to ℚ(x).
    pub fn norm(&self, e: &FFElement) -> RationalFunction {
        let fy = RationalFunction::from(self.f.clone());
        e.a.mul(&e.a).sub(&e.b.mul(&e.b).mul(&fy))
    }

    pub fn inv(&self, e: &FFElement) -> Result<FFElement> {
        let n = self.norm(e);
        if n.is_zero() {
            return Err(Error::Exact(hyperflex_exact::ExactError::ZeroDenominator));
        }
        let ni = n.inv()?;
        Ok(FFElement { a: e.a.mul(&ni), b: e.b.neg().mul(&ni) })
    }

    pub fn div(&self, p: &FFElement, q: &FFElement) -> Result<FFElement> {
        Ok(self.mul(p, &self.inv(q)?))
    }

    /// d/dx using y′ = (f′/2f)·y.
    pub fn derivative(&self, e: &FFElement) -> FFElement {
        let ratio = RationalFunction::new(self.f.derivative(), self.f.scale(&int(2)))
            .expect("f is nonzero");
        FFElement { a: e.a.derivative(), b: e.b.derivative().add(&e.b.mul(&ratio)) }
    }

    /// Local data at a point with rational coordinates.
    pub fn local_point(&self, p: &CurvePoint) -> Result<LocalPoint> {
        match p {
            CurvePoint::Infinity => Ok(LocalPoint::Infinity),
            CurvePoint::Affine { x: XCoord::Rational(x), branch } => {
                let v = self.f.eval(x);
                match branch {
                    Branch::Zero if v.is_zero() => Ok(LocalPoint::Ramified(x.clone())),
                    Branch::Zero => Err(Error::NotOnCurve),
                    _ if v.is_zero() => Err(Error::NotOnCurve),
                    b => {
                        let y = rational_sqrt(&v)
                            .ok_or_else(|| Error::NonRationalPoint(p.to_string()))?;
                        let y = if *b == Branch::Minus { -y } else { y };
                        Ok(LocalPoint::Unramified { x: x.clone(), y })
                    }
                }
            }
            _ => Err(Error::NonRationalPoint(p.to_string())),
        }
    }

    /// Series for x and y in a local uniformizer s at p, known modulo s^order.
    pub fn chart(&self, p: &LocalPoint, order: i64) -> Result<(TruncatedSeries, TruncatedSeries)> {
        match p {
            LocalPoint::Unramified { x, y } => {
                let xs = TruncatedSeries::from_coeffs(0, vec![x.clone(), Scalar::one()], order);
                let shifted = self.f.compose(&UniPoly::new(vec![x.clone(), Scalar::one()]));
                let fp = self.f.eval(x);
                let w = TruncatedSeries::from_poly(&shifted.scale(&fp.recip()), order)
                    .sqrt_with_leading(&Scalar::one())?;
                Ok((xs, w.scale(y)))
            }
            LocalPoint::Ramified(x0) => {
                let g = self.f.compose(&UniPoly::new(vec![x0.clone(), Scalar::one()]));
                let half = order / 2 + 1;
                let h = TruncatedSeries::from_poly(&g, half).revert()?;
                let mut c = vec![Scalar::zero(); (2 * half) as usize];
                c[0] = x0.clone();
                for e in 1..half {
                    c[(2 * e) as usize] = h.coeff(e);
                }
                let xs = TruncatedSeries::from_coeffs(0, c, 2 * half);
                let ys = TruncatedSeries::monomial(Scalar::one(), 1, 2 * half);
                Ok((xs, ys))
            }
            LocalPoint::Infinity => {
                let g = self.genus as i64;
                let c = self.f.lc();
                let xs = TruncatedSeries::monomial(c.clone(), -2, order);
                let top = 2 * g + 1;
                let mut w2 = vec![Scalar::zero(); (2 * top + 1) as usize];
                for (i, a) in self.f.coeffs().iter().enumerate() {
                    let e = i as i64 - 2 * g - 2;
                    let ce = pow_int(&c, e);
                    w2[(2 * (top - i as i64)) as usize] = a * ce;
                }
                let w = TruncatedSeries::from_coeffs(0, w2, order + top).sqrt_with_leading(&Scalar::one())?;
                let scale = TruncatedSeries::monomial(pow_int(&c, g + 1), -top, i64::MAX / 4);
                Ok((xs, w.mul(&scale)))
            }
        }
    }

    /// e expanded in the local uniformizer at p. The valuation of the result is ord_p(e).
    pub fn local_expand(&self, e: &FFElement, p: &LocalPoint, order: i64) -> Result<TruncatedSeries> {
        let mut chart = Chart::new(self.chart(p, order)?);
        chart.expand(e, order)
    }

    /// Distinct vanishing orders of the span of `basis` at p, increasing. At ∞
    /// they are normalized by `pole_bound`, the common pole order allowed.
    pub fn vanishing_sequence(
        &self,
        basis: &[FFElement],
        p: &LocalPoint,
        pole_bound: i64,
        initial_order: i64,
    ) -> Result<Vec<i64>> {
        let shift = if matches!(p, LocalPoint::Infinity) { pole_bound } else { 0 };
        let mut order = initial_order.max(4);
        let limit = 16 * order;
        while order <= limit {
            match self.try_vanishing(basis, p, order)? {
                Some(mut v) => {
                    for o in &mut v {
                        *o += shift;
                    }
                    if v.iter().any(|&o| o < 0) {
                        return Err(Error::PoleBound);
                    }
                    return Ok(v);
                }
                None => order *= 2,
            }
        }
        Err(Error::LinearDependence)
    }

    fn try_vanishing(&self, basis: &[FFElement], p: &LocalPoint, order: i64) -> Result<Option<Vec<i64>>> {
        let mut chart = Chart::new(self.chart(p, order)?);
        let mut series = Vec::with_capacity(basis.len());
        for e in basis {
            match chart.expand(e, order) {
                Ok(s) => series.push(s),
                Err(Error::TruncationInsufficient(_)) => return Ok(None),
                Err(err) => return Err(err),
            }
        }
        let top = series.iter().map(|s| s.truncation_order()).min().unwrap_or(0);
        let bottom = series.iter().filter_map(|s| s.valuation()).min().unwrap_or(top).min(top);
        let width = (top - bottom).max(0) as usize;
        let mut pivots: Vec<(usize, Vec<Scalar>)> = Vec::new();
        for s in &series {
            let mut row: Vec<Scalar> = (0..width).map(|i| s.coeff(bottom + i as i64)).collect();
            for (col, prow) in &pivots {
                if !row[*col].is_zero() {
                    let m = &row[*col] / &prow[*col];
                    for (x, y) in row.iter_mut().zip(prow) {
                        *x -= &m * y;
                    }
                }
            }
            match row.iter().position(|c| !c.is_zero()) {
                Some(col) => pivots.push((col, row)),
                None => return Ok(None),
            }
        }
        let mut v: Vec<i64> = pivots.iter().map(|(c, _)| bottom + *c as i64).collect();
        v.sort_unstable();
        Ok(Some(v))
    }
}

/// Local series of x and y with a cache of powers of x.
struct Chart {
    y: TruncatedSeries,
    powers: Vec<TruncatedSeries>,
}

impl Chart {
    fn new((x, y): (TruncatedSeries, TruncatedSeries)) -> Self {
        let one = TruncatedSeries::constant(Scalar::one(), x.truncation_order().max(y.truncation_order()));
        Chart { y, powers: vec![one, x] }
    }

    fn poly(&mut self, p: &UniPoly) -> TruncatedSeries {
        while self.powers.len() <= p.deg() {
            let next = self.powers.last().unwrap().mul(&self.powers[1]);
            self.powers.push(next);
        }
        let order = self.powers[..=p.deg()].iter().map(|s| s.truncation_order()).min().unwrap();
        let mut acc = TruncatedSeries::zero(order);
        for (i, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.powers[i].scale(c));
            }
        }
        acc
    }

    fn ratfun(&mut self, r: &RationalFunction) -> Result<TruncatedSeries> {
        let n = self.poly(r.numerator());
        if r.denominator().is_constant() {
            return Ok(n.scale(&r.denominator().coeff(0).recip()));
        }
        Ok(n.div(&self.poly(r.denominator()))?)
    }

    fn expand(&mut self, e: &FFElement, order: i64) -> Result<TruncatedSeries> {
        let a = self.ratfun(&e.a)?;
        let s = if e.b.is_zero() { a } else { a.add(&self.ratfun(&e.b)?.mul(&self.y)) };
        if s.is_zero_to_precision() && !e.is_zero() {
            return Err(Error::TruncationInsufficient(order));
        }
        Ok(s)
    }
}

fn pow_int(c: &Scalar, e: i64) -> Scalar {
    let b = if e < 0 { c.recip() } else { c.clone() };
    num_traits::pow(b, e.unsigned_abs() as usize)
}

/// √q when q is the square of a rational.
pub fn rational_sqrt(q: &Scalar) -> Option<Scalar> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Scalar::new(n, d))
}

/// A(x) + B(x)·y in ℚ(x)[y]/(y² − f).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FFElement {
    pub a: RationalFunction,
    pub b: RationalFunction,
}

impl FFElement {
    pub fn new(a: RationalFunction, b: RationalFunction) -> Self {
        FFElement { a, b }
    }

    pub fn from_poly(a: UniPoly) -> Self {
        FFElement { a: a.into(), b: RationalFunction::zero() }
    }

    pub fn x_pow(i: usize) -> Self {
        Self::from_poly(UniPoly::monomial(Scalar::one(), i))
    }

    /// x^i · y.
    pub fn x_pow_y(i: usize) -> Self {
        FFElement { a: RationalFunction::zero(), b: UniPoly::monomial(Scalar::one(), i).into() }
    }

    pub fn y() -> Self {
        Self::x_pow_y(0)
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The hyperelliptic involution B ↦ −B.
    pub fn involution(&self) -> Self {
        FFElement { a: self.a.clone(), b: self.b.neg() }
    }

    pub fn add(&self, o: &Self) -> Self {
        FFElement { a: self.a.add(&o.a), b: self.b.add(&o.b) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        FFElement { a: self.a.sub(&o.a), b: self.b.sub(&o.b) }
    }

    pub fn neg(&self) -> Self {
        FFElement { a: self.a.neg(), b: self.b.neg() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        FFElement { a: self.a.scale(c), b: self.b.scale(c) }
    }
}

/// x-coordinate of a point or of a Galois-stable set of points.
#[derive(Clone, Debug)]
pub enum XCoord {
    Rational(Scalar),
    Real(IsolatedRoot),
    /// All `count` non-real roots of the square-free `factor`.
    NonReal { factor: UniPoly, count: usize },
}

/// The sheet: y = 0, y = +√f(x) or y = −√f(x). For non-real y, Plus is +i√|f|.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Zero,
    Plus,
    Minus,
}

#[derive(Clone, Debug)]
pub enum CurvePoint {
    Infinity,
    Affine { x: XCoord, branch: Branch },
}

impl CurvePoint {
    pub fn rational(x: Scalar, branch: Branch) -> Self {
        CurvePoint::Affine { x: XCoord::Rational(x), branch }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn branch(&self) -> Option<Branch> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { branch, .. } => Some(*branch),
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sheet = |b: &Branch| match b {
            Branch::Zero => "0",
            Branch::Plus => "+",
            Branch::Minus => "-",
        };
        match self {
            CurvePoint::Infinity => write!(f, "∞"),
            CurvePoint::Affine { x: XCoord::Rational(x), branch } => write!(f, "({x}, {})", sheet(branch)),
            CurvePoint::Affine { x: XCoord::Real(r), branch } => {
                let (lo, hi) = r.interval();
                write!(f, "(root of {} in ({lo}, {hi}), {})", r.square_free_factor(), sheet(branch))
            }
            CurvePoint::Affine { x: XCoord::NonReal { factor, count }, branch } => {
                write!(f, "({count} non-real roots of {factor}, {})", sheet(branch))
            }
        }
    }
}

/// A point with rational local coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalPoint {
    Infinity,
    Ramified(Scalar),
    Unramified { x: Scalar, y: Scalar },
}

/// One support entry of a divisor. `count` is the number of geometric points
/// the entry stands for (more than one only for Galois-stable clusters), each
/// carrying `multiplicity`.
#[derive(Clone, Debug)]
pub struct DivisorTerm {
    pub point: CurvePoint,
    pub multiplicity: i64,
    pub count: usize,
    pub real: bool,
    pub component: Option<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct Divisor {
    terms: Vec<DivisorTerm>,
}

impl Divisor {
    pub fn push(&mut self, t: DivisorTerm) {
        if t.multiplicity != 0 && t.count > 0 {
            self.terms.push(t);
        }
    }

    pub fn terms(&self) -> &[DivisorTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|t| t.multiplicity * t.count as i64).sum()
    }

    /// deg_ℝ: the part of the degree carried by real points.
    pub fn real_degree(&self) -> i64 {
        self.terms.iter().filter(|t| t.real).map(|t| t.multiplicity * t.count as i64).sum()
    }

    pub fn real_point_count(&self) -> usize {
        self.terms.iter().filter(|t| t.real).map(|t| t.count).sum()
    }

    /// Weighted degree on each of the n real components.
    pub fn per_component(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for t in &self.terms {
            if let (true, Some(c)) = (t.real, t.component) {
                v[c] += t.multiplicity * t.count as i64;
            }
        }
        v
    }

    pub fn per_component_points(&self, n: usize) -> Vec<usize> {
        let mut v = vec![0; n];
        for t in &self.terms {
            if let (true, Some(c)) = (t.real, t.component) {
                v[c] += t.count;
            }
        }
        v
    }

    pub fn scaled(&self, m: i64) -> Divisor {
        let mut d = Divisor::default();
        for t in &self.terms {
            d.push(DivisorTerm { multiplicity: t.multiplicity * m, ..t.clone() });
        }
        d
    }

    pub fn add(&self, o: &Divisor) -> Divisor {
        let mut d = self.clone();
        for t in &o.terms {
            d.push(t.clone());
        }
        d
    }

    /// Per-component degree mod 2.
    pub fn parity_vector(&self, n: usize) -> Vec<u8> {
        self.per_component(n).iter().map(|d| d.rem_euclid(2) as u8).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperflex_exact::ratio;

    fn quintic() -> HyperellipticCurve {
        HyperellipticCurve::new(UniPoly::from_roots(&[int(0), int(1), int(2), int(3), int(4)])).unwrap()
    }

    #[test]
    fn component_counts() {
        let c = HyperellipticCurve::from_ints(&[0, 1, 0, 1]).unwrap();
        assert_eq!(c.real_component_count(), 1);
        let c = HyperellipticCurve::new(UniPoly::from_roots(&[int(0), int(1), int(2)])).unwrap();
        assert_eq!(c.real_component_count(), 2);
        assert_eq!(quintic().real_component_count(), 3);
        assert_eq!(quintic().topological_type(), (2, 3, 0));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(HyperellipticCurve::from_ints(&[0, 0, 1, 1]).unwrap_err(), Error::NotSeparable);
        assert!(matches!(HyperellipticCurve::from_ints(&[0, 1, 1]), Err(Error::InvalidCurve(_))));
    }

    #[test]
    fn components_and_infinity() {
        let c = quintic();
        let comps = c.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0], Component { index: 0, lower_root: Some(0), upper_root: Some(1) });
        assert!(comps[2].contains_infinity());
        assert_eq!(c.component_of_rational(&ratio(1, 2)), Some(0));
        assert_eq!(c.component_of_rational(&ratio(3, 2)), None);
        assert_eq!(c.component_of_rational(&int(10)), Some(2));
        let neg = HyperellipticCurve::new(UniPoly::from_roots(&[int(0), int(1), int(2)]).scale(&int(-1))).unwrap();
        assert_eq!(neg.infinity_component(), 0);
        assert_eq!(neg.component_of_rational(&int(-5)), Some(0));
        assert_eq!(neg.component_of_rational(&ratio(3, 2)), Some(1));
        assert_eq!(neg.component_of_root(0), 0);
        assert_eq!(neg.component_of_root(2), 1);
    }

    #[test]
    fn ramification_divisor_support() {
        let r = quintic().ramification_divisor();
        assert_eq!(r.degree(), 6);
        assert_eq!(r.real_point_count(), 6);
        assert_eq!(r.parity_vector(3), vec![0, 0, 0]);
        let c = HyperellipticCurve::new(&UniPoly::from_roots(&[int(0), int(1), int(2)]) * &UniPoly::from_ints(&[1, 0, 1])).unwrap();
        let r = c.ramification_divisor();
        assert_eq!(r.degree(), 6);
        assert_eq!(r.real_point_count(), 4);
    }

    #[test]
    fn derivative_rules() {
        let c = quintic();
        let f = c.f().clone();
        let dy = c.derivative(&FFElement::y());
        assert_eq!(dy.b, RationalFunction::new(f.derivative(), f.scale(&int(2))).unwrap());
        assert_eq!(c.derivative(&FFElement::x_pow(3)), FFElement::from_poly(UniPoly::from_ints(&[0, 0, 3])));
        let y2 = c.mul(&FFElement::y(), &FFElement::y());
        assert_eq!(y2, FFElement::from_poly(f.clone()));
        let two_y_dy = c.mul(&FFElement::y(), &dy).scale(&int(2));
        assert_eq!(two_y_dy, FFElement::from_poly(f.derivative()));
    }

    #[test]
    fn local_orders() {
        let c = quintic();
        let origin = c.local_point(&CurvePoint::rational(int(0), Branch::Zero)).unwrap();
        let s = c.local_expand(&FFElement::x_pow(1), &origin, 12).unwrap();
        assert_eq!(s.valuation(), Some(2));
        let s = c.local_expand(&FFElement::y(), &LocalPoint::Infinity, 12).unwrap();
        assert_eq!(s.valuation(), Some(-5));
        let s = c.local_expand(&FFElement::x_pow_y(2), &origin, 12).unwrap();
        assert_eq!(s.valuation(), Some(5));
    }

    #[test]
    fn vanishing_at_ramification_point() {
        let e = HyperellipticCurve::new(UniPoly::from_roots(&[int(0), int(1), int(2)])).unwrap();
        let basis: Vec<FFElement> = (0..3).map(FFElement::x_pow).collect();
        let p = e.local_point(&CurvePoint::rational(int(1), Branch::Zero)).unwrap();
        assert_eq!(e.vanishing_sequence(&basis, &p, 4, 16).unwrap(), vec![0, 2, 4]);
        let basis: Vec<FFElement> = (0..2).map(FFElement::x_pow).collect();
        let f3 = e.f().eval(&int(3));
        assert_eq!(f3, int(6));
        let c = HyperellipticCurve::from_ints(&[0, 0, 0, 1, 0, 0, 0]).err();
        assert!(c.is_some());
        let p = e.local_point(&CurvePoint::rational(int(-1), Branch::Plus));
        assert!(matches!(p, Err(Error::NotOnCurve) | Err(Error::NonRationalPoint(_))));
        let q = HyperellipticCurve::from_ints(&[0, 3, 0, 1]).unwrap();
        let p = q.local_point(&CurvePoint::rational(int(1), Branch::Plus)).unwrap();
        assert_eq!(p, LocalPoint::Unramified { x: int(1), y: int(2) });
        assert_eq!(q.vanishing_sequence(&basis, &p, 2, 8).unwrap(), vec![0, 1]);
    }
}
