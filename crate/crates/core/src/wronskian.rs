//! Wronskian determinants of monomial series on y² = f(x).

use hyperflex_exact::{bareiss, RationalFunction, Scalar, UniPoly, ZPoly};
use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::One;

use crate::curve::{FFElement, HyperellipticCurve};
use crate::error::{Error, Result};
use crate::inflection::SeriesBasis;

/// W = scale · q(x) · y^{y_power}, the Wronskian with respect to x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wronskian {
    pub scale: Scalar,
    pub q: RationalFunction,
    pub y_power: usize,
}

impl Wronskian {
    /// (scale · q · f^{⌊p/2⌋}, p mod 2): the form A or B·y.
    pub fn reduced(&self, f: &UniPoly) -> (RationalFunction, usize) {
        let lift = RationalFunction::from(f.pow(self.y_power / 2));
        (self.q.mul(&lift).scale(&self.scale), self.y_power % 2)
    }

    /// c with self = c · other, when the two are proportional.
    pub fn ratio_to(&self, other: &Wronskian, f: &UniPoly) -> Option<Scalar> {
        let (a, pa) = self.reduced(f);
        let (b, pb) = other.reduced(f);
        if pa != pb || b.is_zero() {
            return None;
        }
        let r = a.div(&b).ok()?;
        (r.numerator().is_constant() && r.denominator().is_constant() && !r.is_zero())
            .then(|| r.numerator().coeff(0))
    }
}

pub trait WronskianStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn wronskian(&self, curve: &HyperellipticCurve, basis: &SeriesBasis) -> Result<Wronskian>;
}

/// N_j with y^{(j)} = N_j · (2f)^{−j} · y.
pub fn y_derivative_numerators(f: &ZPoly, n: usize) -> Vec<ZPoly> {
    let two_f = f.scale(&BigInt::from(2));
    let df = f.derivative();
    let mut out = vec![ZPoly::one()];
    for j in 0..n {
        let nj = &out[j];
        let next = two_f.mul(&nj.derivative()).sub(&df.mul(nj).scale(&BigInt::from(2 * j as i64 - 1)));
        out.push(next);
    }
    out
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

fn falling(n: usize, l: usize) -> BigInt {
    (0..l).fold(BigInt::one(), |a, i| a * BigInt::from(n - i))
}

/// ∏_{i ≤ k} i!, the determinant of the polynomial block.
pub fn polynomial_block_scale(k: usize) -> Scalar {
    Scalar::from_integer((0..=k).map(factorial).product())
}

/// D and P with det((x^b y)^{(k+1+c)})_{b,c} = D/(2f)^P · y^{|B|}, for any
/// integer polynomial f (separability is not needed).
pub fn block_determinant(f: &ZPoly, k: usize, y_exponents: &[usize]) -> (ZPoly, usize) {
    let n = y_exponents.len();
    if n == 0 {
        return (ZPoly::one(), 0);
    }
    let top = k + n;
    let nseq = y_derivative_numerators(f, top);
    let two_f = f.scale(&BigInt::from(2));
    let max_b = *y_exponents.iter().max().unwrap();
    let mut tf_pow = vec![ZPoly::one()];
    for l in 1..=max_b.min(top) {
        tf_pow.push(tf_pow[l - 1].mul(&two_f));
    }
    let mut rows = Vec::with_capacity(n);
    for &b in y_exponents {
        let mut row = Vec::with_capacity(n);
        for c in 0..n {
            let m = k + 1 + c;
            let mut acc = ZPoly::zero();
            for l in 0..=b.min(m) {
                let coef = binomial(BigInt::from(m), BigInt::from(l)) * falling(b, l);
                let term = nseq[m - l].mul(&tf_pow[l]).shift_up(b - l).scale(&coef);
                acc = acc.add(&term);
            }
            row.push(acc);
        }
        rows.push(row);
    }
    let p = (0..n).map(|c| k + 1 + c).sum();
    (bareiss(rows), p)
}

/// D/(2f)^P as a reduced rational function, stripping common factors with f first.
pub fn reduce_over_f(f: &ZPoly, mut d: ZPoly, p: usize) -> Result<RationalFunction> {
    if d.is_zero() {
        return Err(Error::DegenerateCurve);
    }
    let fp = f.primitive();
    let mut stripped: Vec<ZPoly> = Vec::new();
    let mut g = fp.clone();
    while stripped.len() < p {
        let h = d.gcd(&g).primitive();
        if h.is_constant() {
            break;
        }
        d = d.div_exact(&h).expect("gcd divides");
        g = h.clone();
        stripped.push(h);
    }
    let mut den = fp.scale(&BigInt::from(2)).pow(p);
    for h in &stripped {
        den = den.div_exact(h).expect("stripped factors divide (2f)^P");
    }
    Ok(RationalFunction::new(UniPoly::from_zpoly(&d), UniPoly::from_zpoly(&den))?)
}

/// Block lower-triangular evaluation: only the y-block determinant is computed.
#[derive(Clone, Copy, Debug, Default)]
pub struct BlockWronskian;

impl WronskianStrategy for BlockWronskian {
    fn name(&self) -> &'static str {
        "block"
    }

    fn wronskian(&self, curve: &HyperellipticCurve, basis: &SeriesBasis) -> Result<Wronskian> {
        let f = curve.f().to_zpoly().1;
        let (d, p) = block_determinant(&f, basis.k, &basis.y_exponents);
        Ok(Wronskian {
            scale: polynomial_block_scale(basis.k),
            q: reduce_over_f(&f, d, p)?,
            y_power: basis.y_exponents.len(),
        })
    }
}

/// det((k+j)! y^{(k+1+j−i)}/(k+1+j−i)!), valid when the y-exponents are 0, 1, …, n−1.
#[derive(Clone, Copy, Debug, Default)]
pub struct ToeplitzWronskian;

impl WronskianStrategy for ToeplitzWronskian {
    fn name(&self) -> &'static str {
        "toeplitz"
    }

    fn wronskian(&self, curve: &HyperellipticCurve, basis: &SeriesBasis) -> Result<Wronskian> {
        let n = basis.y_exponents.len();
        if basis.y_exponents.iter().enumerate().any(|(i, &b)| i != b) {
            return Err(Error::InvalidInput(
                "the Toeplitz form needs y-exponents 0, 1, …, n−1".into(),
            ));
        }
        let k = basis.k;
        let f = curve.f().to_zpoly().1;
        let nseq = y_derivative_numerators(&f, k + n);
        // Column j is multiplied through by (2f)^{k+j}.
        let two_f = f.scale(&BigInt::from(2));
        let rows: Vec<Vec<ZPoly>> = (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| {
                        let m = k + 1 + j - i;
                        let c = falling(k + j, i - 1);
                        nseq[m].mul(&two_f.pow(i - 1)).scale(&c)
                    })
                    .collect()
            })
            .collect();
        let d = bareiss(rows);
        let p = n * k + n * (n + 1) / 2;
        Ok(Wronskian {
            scale: polynomial_block_scale(k),
            q: reduce_over_f(&f, d, p)?,
            y_power: n,
        })
    }
}

/// Gaussian elimination on the full Wronskian matrix over the function field.
#[derive(Clone, Copy, Debug, Default)]
pub struct FullWronskian;

impl WronskianStrategy for FullWronskian {
    fn name(&self) -> &'static str {
        "full"
    }

    fn wronskian(&self, curve: &HyperellipticCurve, basis: &SeriesBasis) -> Result<Wronskian> {
        full_wronskian(curve, &basis.elements())
    }
}

/// Wronskian of arbitrary function-field elements.
pub fn full_wronskian(curve: &HyperellipticCurve, elements: &[FFElement]) -> Result<Wronskian> {
    let n = elements.len();
    let mut m: Vec<Vec<FFElement>> = elements
        .iter()
        .map(|e| {
            let mut row = vec![e.clone()];
            for j in 1..n {
                let next = curve.derivative(&row[j - 1]);
                row.push(next);
            }
            row
        })
        .collect();
    let mut det = FFElement::constant(Scalar::one());
    for c in 0..n {
        let Some(pr) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Err(Error::DegenerateCurve);
        };
        if pr != c {
            m.swap(pr, c);
            det = det.neg();
        }
        let piv = m[c][c].clone();
        det = curve.mul(&det, &piv);
        let inv = curve.inv(&piv)?;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let factor = curve.mul(&m[r][c], &inv);
            for j in c..n {
                let t = curve.mul(&factor, &m[c][j]);
                m[r][j] = m[r][j].sub(&t);
            }
        }
    }
    match (det.a.is_zero(), det.b.is_zero()) {
        (_, true) => Ok(Wronskian { scale: Scalar::one(), q: det.a, y_power: 0 }),
        (true, false) => Ok(Wronskian { scale: Scalar::one(), q: det.b, y_power: 1 }),
        _ => Err(Error::Inconsistency("Wronskian is not of the form A or B·y".into())),
    }
}

/// The rational constant 1 as a Wronskian (empty y-block).
pub fn trivial(k: usize) -> Wronskian {
    Wronskian { scale: polynomial_block_scale(k), q: RationalFunction::one(), y_power: 0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperflex_exact::int;

    #[test]
    fn derivative_numerators_match_function_field() {
        let c = HyperellipticCurve::from_ints(&[0, -2, 1, 0, 3, 1]).unwrap();
        let f = c.f().to_zpoly().1;
        let n = y_derivative_numerators(&f, 3);
        let mut e = FFElement::y();
        let two_f = UniPoly::from_zpoly(&f).scale(&int(2));
        for (j, nj) in n.iter().enumerate() {
            let expect = RationalFunction::new(UniPoly::from_zpoly(nj), two_f.pow(j)).unwrap();
            assert!(e.a.is_zero());
            assert_eq!(e.b, expect);
            e = c.derivative(&e);
        }
    }

    #[test]
    fn genus_two_k_three_is_fourth_derivative() {
        let c = HyperellipticCurve::from_ints(&[0, 24, -50, 35, -10, 1]).unwrap();
        let b = SeriesBasis::canonical(2, 3);
        let w = BlockWronskian.wronskian(&c, &b).unwrap();
        let full = FullWronskian.wronskian(&c, &b).unwrap();
        assert!(w.ratio_to(&full, c.f()).is_some());
        let e4 = (0..4).fold(FFElement::y(), |e, _| c.derivative(&e));
        let direct = Wronskian { scale: polynomial_block_scale(3), q: e4.b, y_power: 1 };
        assert_eq!(w.ratio_to(&direct, c.f()), Some(Scalar::one()));
    }
}
