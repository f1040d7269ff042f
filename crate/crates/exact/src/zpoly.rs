//! Dense univariate polynomials over the integers.
//!
//! The heavy kernels (gcd, exact division, Sturm chains, Descartes) live here.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::modp;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        ZPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly::constant(BigInt::one())
    }

    pub fn x() -> Self {
        ZPoly::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        ZPoly::new(vec![c])
    }

    pub fn monomial(c: BigInt, n: usize) -> Self {
        if c.is_zero() {
            return ZPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = c;
        ZPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    /// Multiplicity of 0 as a root.
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_default();
            if let Some(o) = other.coeffs.get(i) {
                c += o;
            }
            out.push(c);
        }
        ZPoly::new(out)
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_default();
            if let Some(o) = other.coeffs.get(i) {
                c -= o;
            }
            out.push(c);
        }
        ZPoly::new(out)
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        ZPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> ZPoly {
        if c.is_zero() {
            return ZPoly::zero();
        }
        ZPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, e: usize) -> ZPoly {
        let mut result = ZPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiply by x^n.
    pub fn shift_up(&self, n: usize) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs }
    }

    /// Divide by x^n, dropping low terms.
    pub fn shift_down(&self, n: usize) -> ZPoly {
        ZPoly::new(self.coeffs.iter().skip(n).cloned().collect())
    }

    pub fn derivative(&self) -> ZPoly {
        ZPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content, keeping the sign of every coefficient.
    pub fn primitive(&self) -> ZPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        ZPoly { coeffs: self.coeffs.iter().map(|a| a / &c).collect() }
    }

    /// Primitive part with positive leading coefficient.
    pub fn normalized(&self) -> ZPoly {
        let p = self.primitive();
        if p.lc().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// lc(b)^(deg a - deg b + 1) · a mod b.
    pub fn pseudo_rem(&self, b: &ZPoly) -> ZPoly {
        assert!(!b.is_zero(), "pseudo-remainder by zero");
        let db = b.deg();
        let lb = b.lc();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return self.clone();
        }
        let steps = r.len() - db;
        for step in 0..steps {
            let top = r.len() - 1 - step;
            let lead = std::mem::take(&mut r[top]);
            for c in r.iter_mut().take(top) {
                *c *= &lb;
            }
            if !lead.is_zero() {
                let off = top - db;
                for (j, bc) in b.coeffs.iter().enumerate().take(db) {
                    r[off + j] -= &lead * bc;
                }
            }
        }
        r.truncate(db);
        ZPoly::new(r)
    }

    /// Exact quotient self / b, or `None` when b does not divide self over Z.
    pub fn div_exact(&self, b: &ZPoly) -> Option<ZPoly> {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        let db = b.deg();
        let da = self.deg();
        if da < db {
            return None;
        }
        let lb = b.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); da - db + 1];
        for i in (0..=da - db).rev() {
            let lead = &r[i + db];
            if lead.is_zero() {
                continue;
            }
            let (qi, rem) = lead.div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[i + j] -= &qi * bc;
            }
            q[i] = qi;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(ZPoly::new(q))
    }

    /// Greatest common divisor, normalized to positive leading coefficient
    /// and scaled by the gcd of the contents.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return other.normalized_with_content();
        }
        if other.is_zero() {
            return self.normalized_with_content();
        }
        let c = self.content().gcd(&other.content());
        let (mut p, mut q) = if self.deg() >= other.deg() {
            (self.primitive(), other.primitive())
        } else {
            (other.primitive(), self.primitive())
        };
        if q.is_constant() {
            return ZPoly::constant(c);
        }
        if modp::certify_coprime(&p, &q) {
            return ZPoly::constant(c);
        }
        while !q.is_zero() {
            let r = p.pseudo_rem(&q).primitive();
            p = q;
            q = r;
            if q.is_constant() && !q.is_zero() {
                return ZPoly::constant(c);
            }
        }
        p.normalized().scale(&c)
    }

    fn normalized_with_content(&self) -> ZPoly {
        if self.lc().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// True when gcd(self, self') is constant.
    pub fn is_square_free(&self) -> bool {
        if self.deg() <= 1 {
            return true;
        }
        let d = self.derivative();
        if modp::certify_coprime(self, &d) {
            return true;
        }
        self.gcd(&d).is_constant()
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let (p, q) = (x.numer(), x.denom());
        let (num, den) = self.eval_homogeneous(p, q);
        BigRational::new(num, den)
    }

    /// Returns (Σ a_i p^i q^(n-i), q^n) for x = p/q with q > 0.
    fn eval_homogeneous(&self, p: &BigInt, q: &BigInt) -> (BigInt, BigInt) {
        if self.is_zero() {
            return (BigInt::zero(), BigInt::one());
        }
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        (acc, qpow / q)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of the value at a rational point.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        let (num, _) = self.eval_homogeneous(x.numer(), x.denom());
        sign(&num)
    }

    /// Sign as x → +∞ (`positive = true`) or x → −∞.
    pub fn sign_at_infinity(&self, positive: bool) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let s = sign(&self.lc());
        if positive || self.deg() % 2 == 0 {
            s
        } else {
            -s
        }
    }

    /// p(-x).
    pub fn reflect(&self) -> ZPoly {
        ZPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// x^n p(1/x).
    pub fn reverse(&self) -> ZPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        ZPoly::new(c)
    }

    /// p(x + 1).
    pub fn taylor_shift_one(&self) -> ZPoly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let (lo, hi) = c.split_at_mut(j + 1);
                lo[j] += &hi[0];
            }
        }
        ZPoly::new(c)
    }

    /// Divide out the largest power of two common to all coefficients.
    pub fn strip_two_content(&self) -> ZPoly {
        let Some(t) = self.coeffs.iter().filter_map(|c| c.trailing_zeros()).min() else {
            return self.clone();
        };
        if t == 0 {
            return self.clone();
        }
        ZPoly { coeffs: self.coeffs.iter().map(|c| c >> t).collect() }
    }

    /// p(x + a) for an integer a.
    pub fn taylor_shift(&self, a: &BigInt) -> ZPoly {
        if a.is_zero() {
            return self.clone();
        }
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        ZPoly::new(c)
    }

    /// 2^(n·k)·p(x / 2^k) with n = deg p, keeping integer coefficients.
    pub fn scale_down_pow2(&self, k: u64) -> ZPoly {
        let n = self.deg() as u64;
        ZPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c << ((n - i as u64) * k))
                .collect(),
        }
    }

    /// p(2^k x).
    pub fn scale_up_pow2(&self, k: u64) -> ZPoly {
        ZPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c << (i as u64 * k))
                .collect(),
        }
    }

    /// Number of sign changes in the coefficient sequence, zeros skipped.
    pub fn sign_variations(&self) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for c in &self.coeffs {
            let s = sign(c);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Largest coefficient bit length.
    pub fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// q^n·self(p·x/q), that is Σ a_i p^i q^(n-i) x^i.
    pub fn scale_rational(&self, p: &BigInt, q: &BigInt) -> ZPoly {
        let n = self.deg();
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut ppow = BigInt::one();
        let qpows: Vec<BigInt> = {
            let mut v = vec![BigInt::one()];
            for _ in 0..n {
                let next = v.last().unwrap() * q;
                v.push(next);
            }
            v
        };
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c * &ppow * &qpows[n - i]);
            ppow *= p;
        }
        ZPoly::new(out)
    }
}

pub(crate) fn sign(c: &BigInt) -> i8 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}
