//! Truncated Laurent series in one variable s with rational coefficients.

use std::fmt;

use num_traits::{One, Zero};

use crate::poly::UniPoly;
use crate::ratfun::RationalFunction;
use crate::{ExactError, Scalar};

/// Σ c_e s^e + O(s^order). When nonzero, the first stored coefficient is
/// nonzero and sits at exponent `valuation`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    valuation: i64,
    coeffs: Vec<Scalar>,
    order: i64,
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                write!(f, "{}·s^{} + ", c, self.valuation + i as i64)?;
            }
        }
        write!(f, "O(s^{})", self.order)
    }
}

impl TruncatedSeries {
    /// Coefficients starting at exponent `start`, known modulo s^order.
    pub fn from_coeffs(start: i64, coeffs: Vec<Scalar>, order: i64) -> Self {
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        let valuation = start + lead as i64;
        let keep = (order - valuation).max(0) as usize;
        let tail: Vec<Scalar> = coeffs.into_iter().skip(lead).take(keep).collect();
        if tail.is_empty() {
            return TruncatedSeries { valuation: order, coeffs: Vec::new(), order };
        }
        let mut s = TruncatedSeries { valuation, coeffs: tail, order };
        s.trim();
        s
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.valuation = self.order;
        }
    }

    pub fn zero(order: i64) -> Self {
        TruncatedSeries { valuation: order, coeffs: Vec::new(), order }
    }

    pub fn constant(c: Scalar, order: i64) -> Self {
        TruncatedSeries::from_coeffs(0, vec![c], order)
    }

    pub fn monomial(c: Scalar, e: i64, order: i64) -> Self {
        TruncatedSeries::from_coeffs(e, vec![c], order)
    }

    /// A polynomial in s, truncated at `order`.
    pub fn from_poly(p: &UniPoly, order: i64) -> Self {
        TruncatedSeries::from_coeffs(0, p.coeffs().to_vec(), order)
    }

    /// Order of the lowest nonzero term; `None` if zero to the known precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.valuation)
    }

    pub fn truncation_order(&self) -> i64 {
        self.order
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of s^e (zero outside the stored range).
    pub fn coeff(&self, e: i64) -> Scalar {
        assert!(e < self.order, "coefficient beyond truncation order");
        let i = e - self.valuation;
        if i < 0 {
            return Scalar::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.first()
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            order: self.order,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let live: Vec<&Self> = [self, o].into_iter().filter(|s| !s.coeffs.is_empty()).collect();
        if live.is_empty() {
            return TruncatedSeries::zero(order);
        }
        let start = live.iter().map(|s| s.valuation).min().unwrap().min(order);
        let end = live
            .iter()
            .map(|s| s.valuation + s.coeffs.len() as i64)
            .max()
            .unwrap()
            .min(order);
        let n = (end - start).max(0) as usize;
        let mut out = vec![Scalar::zero(); n];
        for src in [self, o] {
            for (i, c) in src.coeffs.iter().enumerate() {
                let e = src.valuation + i as i64;
                if e < end {
                    out[(e - start) as usize] += c;
                }
            }
        }
        TruncatedSeries::from_coeffs(start, out, order)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return TruncatedSeries::zero(self.order);
        }
        TruncatedSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            order: self.order,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order = (self.order + o.valuation).min(o.order + self.valuation);
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return TruncatedSeries::zero(order);
        }
        let start = self.valuation + o.valuation;
        let n = ((order - start).max(0) as usize).min(self.coeffs.len() + o.coeffs.len() - 1);
        let mut out = vec![Scalar::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= n || a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries::from_coeffs(start, out, order)
    }

    /// Multiplicative inverse; fails when the series is zero to precision.
    pub fn inv(&self) -> Result<Self, ExactError> {
        let Some(c0) = self.coeffs.first() else {
            return Err(ExactError::SeriesPrecision);
        };
        let v = self.valuation;
        let p = (self.order - v) as usize;
        let inv0 = c0.recip();
        let mut b: Vec<Scalar> = Vec::with_capacity(p);
        b.push(inv0.clone());
        for n in 1..p {
            let mut acc = Scalar::zero();
            for i in 1..=n.min(self.coeffs.len() - 1) {
                acc += &self.coeffs[i] * &b[n - i];
            }
            b.push(-acc * &inv0);
        }
        Ok(TruncatedSeries::from_coeffs(-v, b, -v + p as i64))
    }

    pub fn div(&self, o: &Self) -> Result<Self, ExactError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = TruncatedSeries::constant(Scalar::one(), i64::MAX / 4);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Square root with the given leading coefficient (whose square must be
    /// the leading coefficient of self). Requires an even valuation.
    pub fn sqrt_with_leading(&self, lead: &Scalar) -> Result<Self, ExactError> {
        let Some(c0) = self.coeffs.first() else {
            return Err(ExactError::SeriesPrecision);
        };
        if self.valuation % 2 != 0 || &(lead * lead) != c0 {
            return Err(ExactError::NotASquare);
        }
        let p = (self.order - self.valuation) as usize;
        let two_lead = lead * Scalar::from_integer(2.into());
        let mut b: Vec<Scalar> = vec![lead.clone()];
        for n in 1..p {
            let mut acc = self.coeffs.get(n).cloned().unwrap_or_else(Scalar::zero);
            for i in 1..n {
                acc -= &b[i] * &b[n - i];
            }
            b.push(acc / &two_lead);
        }
        let v = self.valuation / 2;
        Ok(TruncatedSeries::from_coeffs(v, b, v + p as i64))
    }

    /// p(self) by Horner's rule.
    pub fn compose_poly(p: &UniPoly, s: &Self) -> Self {
        let mut acc = TruncatedSeries::zero(i64::MAX / 4);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(s).add(&TruncatedSeries::constant(c.clone(), i64::MAX / 4));
        }
        if p.is_zero() {
            return TruncatedSeries::zero(s.order.max(0));
        }
        let o = acc.order.min(s.order);
        acc.truncate(o)
    }

    /// r(self) for a rational function r.
    pub fn compose_ratfun(r: &RationalFunction, s: &Self) -> Result<Self, ExactError> {
        let n = TruncatedSeries::compose_poly(r.numerator(), s);
        let d = TruncatedSeries::compose_poly(r.denominator(), s);
        n.div(&d)
    }

    /// Compositional inverse of a series g(u) = c1 u + c2 u² + … with c1 ≠ 0:
    /// returns h(z) with g(h(z)) = z + O(z^order), by Newton iteration.
    pub fn revert(&self) -> Result<Self, ExactError> {
        if self.valuation() != Some(1) {
            return Err(ExactError::SeriesPrecision);
        }
        let order = self.order;
        let g = UniPoly::new(
            std::iter::once(Scalar::zero()).chain(self.coeffs.iter().cloned()).collect(),
        );
        let dg = g.derivative();
        let mut u = TruncatedSeries::monomial(self.coeffs[0].recip(), 1, 2.min(order));
        let mut prec = 2.min(order);
        while prec < order {
            prec = (2 * prec).min(order);
            let up = TruncatedSeries::from_coeffs(u.valuation, u.coeffs.clone(), prec);
            let z = TruncatedSeries::monomial(Scalar::one(), 1, prec);
            let gu = TruncatedSeries::compose_poly(&g, &up).sub(&z);
            let dgu = TruncatedSeries::compose_poly(&dg, &up);
            u = up.sub(&gu.div(&dgu)?).truncate(prec);
        }
        Ok(TruncatedSeries::from_coeffs(u.valuation, u.coeffs, order))
    }

    /// Reduce the truncation order.
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        TruncatedSeries::from_coeffs(self.valuation, self.coeffs.clone(), order)
    }
}
