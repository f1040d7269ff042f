//! Dense univariate polynomials over Q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::zpoly::ZPoly;
use crate::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly[{}]", self)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})x", c)?,
                _ => write!(f, "({})x^{}", c, i)?,
            }
        }
        Ok(())
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UniPoly::new(c.iter().map(|&v| Scalar::from_integer(BigInt::from(v))).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Scalar::one())
    }

    pub fn x() -> Self {
        UniPoly::monomial(Scalar::one(), 1)
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn monomial(c: Scalar, n: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = c;
        UniPoly { coeffs }
    }

    /// ∏ (x − r).
    pub fn from_roots(roots: &[Scalar]) -> Self {
        roots.iter().fold(UniPoly::one(), |acc, r| {
            &acc * &UniPoly::new(vec![-r.clone(), Scalar::one()])
        })
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn trailing_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lc().recip();
        self.scale(&l)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Scalar::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        let mut result = UniPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// self(g(x)).
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &UniPoly::constant(c.clone());
        }
        acc
    }

    pub fn shift_up(&self, n: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn shift_down(&self, n: usize) -> UniPoly {
        UniPoly::new(self.coeffs.iter().skip(n).cloned().collect())
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, b: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.deg() < b.deg() || self.is_zero() {
            return (UniPoly::zero(), self.clone());
        }
        let db = b.deg();
        let inv = b.lc().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Scalar::zero(); self.deg() - db + 1];
        for i in (0..q.len()).rev() {
            let lead = &r[i + db] * &inv;
            if lead.is_zero() {
                continue;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[i + j] -= &lead * bc;
            }
            q[i] = lead;
        }
        r.truncate(db);
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Quotient when b divides self exactly.
    pub fn div_exact(&self, b: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(b);
        r.is_zero().then_some(q)
    }

    /// Write self = c · z with z a primitive integer polynomial whose leading
    /// coefficient has the sign of self's, and c > 0 rational.
    pub fn to_zpoly(&self) -> (Scalar, ZPoly) {
        if self.is_zero() {
            return (Scalar::one(), ZPoly::zero());
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let z = ZPoly::new(ints);
        let content = z.content();
        let prim = z.primitive();
        (Scalar::new(content, l), prim)
    }

    /// Primitive integer polynomial with the same roots (positive leading coefficient).
    pub fn integer_primitive(&self) -> ZPoly {
        self.to_zpoly().1.normalized()
    }

    pub fn from_zpoly(z: &ZPoly) -> UniPoly {
        UniPoly::new(z.coeffs().iter().map(|c| Scalar::from_integer(c.clone())).collect())
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let g = self.to_zpoly().1.gcd(&other.to_zpoly().1);
        UniPoly::from_zpoly(&g).monic()
    }

    pub fn is_square_free(&self) -> bool {
        self.to_zpoly().1.is_square_free()
    }

    /// Yun's square-free decomposition: monic factors paired with their
    /// multiplicity, each factor square-free and pairwise coprime. The
    /// product of factor^mult equals self divided by its leading coefficient.
    pub fn square_free_decomposition(&self) -> Vec<(UniPoly, usize)> {
        if self.deg() == 0 {
            return Vec::new();
        }
        let p = self.monic();
        let dp = p.derivative();
        if p.is_square_free() {
            return vec![(p, 1)];
        }
        let mut out = Vec::new();
        let b = p.gcd(&dp);
        let mut c = p.div_exact(&b).expect("gcd divides");
        let mut d = &dp.div_exact(&b).expect("gcd divides") - &c.derivative();
        let mut i = 1;
        while c.deg() > 0 {
            let a = c.gcd(&d);
            let c_next = c.div_exact(&a).expect("gcd divides");
            d = &d.div_exact(&a).expect("gcd divides") - &c_next.derivative();
            if a.deg() > 0 {
                out.push((a, i));
            }
            c = c_next;
            i += 1;
        }
        out
    }

    /// Square-free part (product of the distinct monic factors).
    pub fn square_free_part(&self) -> UniPoly {
        self.square_free_decomposition()
            .into_iter()
            .fold(UniPoly::one(), |acc, (f, _)| &acc * &f)
    }

    /// Multiplicity of `g` (non-constant) as a factor of self.
    pub fn factor_multiplicity(&self, g: &UniPoly) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let mut n = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_exact(g) {
            cur = q;
            n += 1;
        }
        n
    }

    /// Cauchy bound: every root has absolute value below the returned value.
    pub fn cauchy_bound(&self) -> Scalar {
        let l = self.lc().abs();
        let m = self.coeffs[..self.deg()]
            .iter()
            .map(|c| c.abs() / &l)
            .fold(Scalar::zero(), |a, b| if b > a { b } else { a });
        m + Scalar::one()
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, o: UniPoly) -> UniPoly {
        &self + &o
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, o: UniPoly) -> UniPoly {
        &self - &o
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, o: UniPoly) -> UniPoly {
        &self * &o
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

#[cfg(test)]
pub(crate) fn rat(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let a = UniPoly::new(vec![rat(1, 2), rat(-3, 1), rat(0, 1), rat(2, 3), rat(5, 1)]);
        let b = UniPoly::new(vec![rat(1, 1), rat(7, 4), rat(-1, 3)]);
        let (q, r) = a.div_rem(&b);
        assert!(r.deg() < b.deg());
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn yun_multiplicities() {
        let p = &(&UniPoly::from_ints(&[-1, 1]).pow(2) * &UniPoly::from_ints(&[2, 1]))
            * &UniPoly::from_ints(&[1, 0, 1]).pow(3);
        let dec = p.square_free_decomposition();
        let mut total = 0;
        for (f, m) in &dec {
            total += f.deg() * m;
        }
        assert_eq!(total, p.deg());
        assert!(dec.contains(&(UniPoly::from_ints(&[2, 1]), 1)));
        assert!(dec.contains(&(UniPoly::from_ints(&[-1, 1]), 2)));
        assert!(dec.contains(&(UniPoly::from_ints(&[1, 0, 1]), 3)));
    }

    #[test]
    fn to_zpoly_roundtrip() {
        let p = UniPoly::new(vec![rat(-1, 2), rat(0, 1), rat(-3, 4)]);
        let (c, z) = p.to_zpoly();
        assert_eq!(UniPoly::from_zpoly(&z).scale(&c), p);
        assert!(z.lc() < BigInt::zero());
    }
}
