//! Fraction-free (Bareiss) determinants over integral domains with exact division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::UniPoly;
use crate::zpoly::ZPoly;
use crate::Scalar;

pub trait DetRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact quotient; the caller guarantees divisibility.
    fn div_exact(&self, o: &Self) -> Self;
}

impl DetRing for ZPoly {
    fn zero() -> Self {
        ZPoly::zero()
    }
    fn one() -> Self {
        ZPoly::one()
    }
    fn is_zero(&self) -> bool {
        ZPoly::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        ZPoly::mul(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        ZPoly::sub(self, o)
    }
    fn neg(&self) -> Self {
        ZPoly::neg(self)
    }
    fn div_exact(&self, o: &Self) -> Self {
        ZPoly::div_exact(self, o).expect("Bareiss division is exact")
    }
}

impl DetRing for UniPoly {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn one() -> Self {
        UniPoly::one()
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        UniPoly::div_exact(self, o).expect("Bareiss division is exact")
    }
}

impl DetRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem(o);
        debug_assert!(Zero::is_zero(&r));
        q
    }
}

impl DetRing for Scalar {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

/// Determinant of a square matrix given as rows.
pub fn bareiss<T: DetRing>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return T::zero();
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev);
            }
            m[i][k] = T::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        d.neg()
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_determinant() {
        let m: Vec<Vec<BigInt>> = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        assert_eq!(bareiss(m), BigInt::from(4));
        let p: Vec<Vec<BigInt>> = [[0, 1], [1, 0]]
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        assert_eq!(bareiss(p), BigInt::from(-1));
    }

    #[test]
    fn polynomial_determinant() {
        // det [[x, 1], [1, x]] = x^2 - 1
        let x = ZPoly::x();
        let one = ZPoly::one();
        let d = bareiss(vec![vec![x.clone(), one.clone()], vec![one, x]]);
        assert_eq!(d, ZPoly::from_i64(&[-1, 0, 1]));
    }
}
