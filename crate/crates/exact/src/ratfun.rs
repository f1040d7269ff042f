//! Univariate rational functions in lowest terms.

use std::fmt;

use num_traits::{One, Zero};

use crate::poly::UniPoly;
use crate::{ExactError, Scalar};

/// numerator / denominator with gcd 1 and a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        RationalFunction::zero()
    }
}

impl From<UniPoly> for RationalFunction {
    fn from(p: UniPoly) -> Self {
        RationalFunction { num: p, den: UniPoly::one() }
    }
}

impl RationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunction::zero());
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let l = d.lc();
        if !l.is_one() {
            let inv = l.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Ok(RationalFunction { num: n, den: d })
    }

    pub fn zero() -> Self {
        RationalFunction { num: UniPoly::zero(), den: UniPoly::one() }
    }

    pub fn one() -> Self {
        RationalFunction { num: UniPoly::one(), den: UniPoly::one() }
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::constant(c).into()
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn add(&self, o: &RationalFunction) -> RationalFunction {
        if self.den == o.den {
            return RationalFunction::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        RationalFunction::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .unwrap()
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &RationalFunction) -> RationalFunction {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    pub fn scale(&self, c: &Scalar) -> RationalFunction {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RationalFunction, ExactError> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RationalFunction) -> Result<RationalFunction, ExactError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn derivative(&self) -> RationalFunction {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RationalFunction::new(n, &self.den * &self.den).unwrap()
    }

    pub fn eval(&self, x: &Scalar) -> Result<Scalar, ExactError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ExactError::Pole);
        }
        Ok(self.num.eval(x) / d)
    }

    /// deg num − deg den; the negative of the order at infinity.
    pub fn degree(&self) -> i64 {
        self.num.deg() as i64 - self.den.deg() as i64
    }
}
