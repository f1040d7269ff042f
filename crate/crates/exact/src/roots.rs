//! Real root counting and isolation.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::UniPoly;
use crate::zpoly::ZPoly;
use crate::{ExactError, Scalar};

/// Sturm sequence of an integer polynomial, with signs preserved.
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<ZPoly>,
}

impl SturmChain {
    pub fn new(p: &ZPoly) -> Self {
        let mut polys = vec![p.primitive()];
        if p.deg() == 0 {
            return SturmChain { polys };
        }
        polys.push(p.derivative().primitive());
        loop {
            let n = polys.len();
            let (a, b) = (&polys[n - 2], &polys[n - 1]);
            if b.is_constant() {
                break;
            }
            let delta = a.deg() - b.deg();
            let r = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            // rem = prem / lc(b)^(delta+1); the next term is −rem up to a positive factor.
            let lc_sign_odd = b.lc().is_negative() && (delta + 1) % 2 == 1;
            let next = if lc_sign_odd { r } else { r.neg() };
            polys.push(next.primitive());
        }
        SturmChain { polys }
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0;
        let mut v = 0;
        for s in signs {
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations_at(&self, x: &Scalar) -> usize {
        SturmChain::variations(self.polys.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        SturmChain::variations(self.polys.iter().map(|p| p.sign_at_infinity(positive)))
    }

    /// Distinct real roots in (lo, hi); the endpoints must not be roots.
    pub fn count(&self, lo: &Scalar, hi: &Scalar) -> usize {
        self.variations_at(lo) - self.variations_at(hi)
    }

    /// Distinct real roots below x (x must not be a root).
    pub fn count_below(&self, x: &Scalar) -> usize {
        self.variations_at_infinity(false) - self.variations_at(x)
    }

    pub fn total(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    pub fn poly(&self) -> &ZPoly {
        &self.polys[0]
    }
}

/// Number of distinct real roots of p in (lo, hi).
pub fn sturm_count(p: &UniPoly, lo: &Scalar, hi: &Scalar) -> Result<usize, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(ExactError::EmptyInterval);
    }
    if p.eval(lo).is_zero() || p.eval(hi).is_zero() {
        return Err(ExactError::EndpointIsRoot);
    }
    let z = p.to_zpoly().1;
    Ok(SturmChain::new(&z).count(lo, hi))
}

/// Output of a primitive isolation strategy.
#[derive(Clone, Debug, PartialEq)]
pub enum RawRoot {
    Exact(Scalar),
    /// Open interval containing exactly one root; endpoints may be roots.
    Interval(Scalar, Scalar),
}

/// A real-root isolation strategy for square-free integer polynomials.
pub trait RootIsolator: Send + Sync {
    fn name(&self) -> &'static str;
    fn isolate(&self, p: &ZPoly) -> Vec<RawRoot>;
}

/// Bits b with every root of p below 2^b in absolute value (Fujiwara's bound).
fn root_bound_bits(p: &ZPoly) -> u64 {
    let n = p.deg();
    let top = p.coeffs()[n].bits() as i64 - 1;
    let mut best: i64 = 0;
    for i in 1..=n {
        let c = &p.coeffs()[n - i];
        if c.is_zero() {
            continue;
        }
        // |c / lc| < 2^(bits(c) − top), so its i-th root is below 2^ceil(that / i).
        let e = c.bits() as i64 - top;
        let e = if i == n { e - 1 } else { e };
        let r = if e <= 0 { 0 } else { (e + i as i64 - 1) / i as i64 };
        best = best.max(r);
    }
    best as u64 + 1
}

fn dyadic(c: &BigInt, shift: i64) -> Scalar {
    if shift >= 0 {
        Scalar::from_integer(c << shift as u64)
    } else {
        Scalar::new(c.clone(), BigInt::one() << (-shift) as u64)
    }
}

/// Vincent–Collins–Akritas bisection driven by Descartes' rule of signs.
#[derive(Clone, Copy, Debug, Default)]
pub struct DescartesIsolator;

impl DescartesIsolator {
    fn positive(p: &ZPoly, out: &mut Vec<RawRoot>, negate: bool) {
        if p.deg() == 0 {
            return;
        }
        let b = root_bound_bits(p);
        let mut stack: Vec<(ZPoly, BigInt, u64)> =
            vec![(p.scale_up_pow2(b).primitive(), BigInt::zero(), 0)];
        let map = |c: &BigInt, k: u64| dyadic(c, b as i64 - k as i64);
        let push = |out: &mut Vec<RawRoot>, r: RawRoot| {
            let r = if negate {
                match r {
                    RawRoot::Exact(x) => RawRoot::Exact(-x),
                    RawRoot::Interval(lo, hi) => RawRoot::Interval(-hi, -lo),
                }
            } else {
                r
            };
            out.push(r);
        };
        while let Some((q, c, k)) = stack.pop() {
            if q.deg() == 0 {
                continue;
            }
            let v = q.reverse().taylor_shift_one().sign_variations();
            match v {
                0 => {}
                1 => push(out, RawRoot::Interval(map(&c, k), map(&(&c + 1), k))),
                _ => {
                    let left = q.scale_down_pow2(1).strip_two_content();
                    let mut right = left.taylor_shift_one();
                    let c2 = &c << 1u32;
                    if right.coeff(0).is_zero() {
                        push(out, RawRoot::Exact(map(&(&c2 + 1), k + 1)));
                        right = right.shift_down(1);
                    }
                    stack.push((right.strip_two_content(), &c2 + 1, k + 1));
                    stack.push((left, c2, k + 1));
                }
            }
        }
    }
}

impl RootIsolator for DescartesIsolator {
    fn name(&self) -> &'static str {
        "descartes"
    }

    fn isolate(&self, p: &ZPoly) -> Vec<RawRoot> {
        let mut out = Vec::new();
        let mut q = p.clone();
        if q.coeff(0).is_zero() {
            out.push(RawRoot::Exact(Scalar::zero()));
            q = q.shift_down(q.trailing_zeros());
        }
        DescartesIsolator::positive(&q, &mut out, false);
        DescartesIsolator::positive(&q.reflect(), &mut out, true);
        out
    }
}

/// Bisection driven by Sturm sequence counts.
#[derive(Clone, Copy, Debug, Default)]
pub struct SturmIsolator;

impl RootIsolator for SturmIsolator {
    fn name(&self) -> &'static str {
        "sturm"
    }

    fn isolate(&self, p: &ZPoly) -> Vec<RawRoot> {
        let mut out = Vec::new();
        if p.deg() == 0 {
            return out;
        }
        let chain = SturmChain::new(p);
        let bound = dyadic(&BigInt::one(), root_bound_bits(p) as i64);
        let mut stack = vec![(-bound.clone(), bound, chain.total())];
        let two = Scalar::from_integer(BigInt::from(2));
        while let Some((lo, hi, n)) = stack.pop() {
            match n {
                0 => {}
                1 => out.push(RawRoot::Interval(lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / &two;
                    if p.sign_at(&mid) == 0 {
                        out.push(RawRoot::Exact(mid.clone()));
                        let mut d = (&hi - &lo) / Scalar::from_integer(BigInt::from(4));
                        loop {
                            let (a, b) = (&mid - &d, &mid + &d);
                            if p.sign_at(&a) != 0 && p.sign_at(&b) != 0 && chain.count(&a, &b) == 1
                            {
                                let nl = chain.count(&lo, &a);
                                let nr = chain.count(&b, &hi);
                                stack.push((b, hi.clone(), nr));
                                stack.push((lo.clone(), a, nl));
                                break;
                            }
                            d /= &two;
                        }
                    } else {
                        let nl = chain.count(&lo, &mid);
                        stack.push((mid.clone(), hi, n - nl));
                        stack.push((lo, mid, nl));
                    }
                }
            }
        }
        out
    }
}

/// A real algebraic number: the unique root of a square-free factor inside
/// an open interval whose endpoints are not roots.
#[derive(Clone)]
pub struct IsolatedRoot {
    factor: UniPoly,
    zfactor: ZPoly,
    lo: Scalar,
    hi: Scalar,
    multiplicity: usize,
    exact: Option<Scalar>,
}

impl fmt::Debug for IsolatedRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Root({} in ({}, {}), mult {}{})",
            self.factor,
            self.lo,
            self.hi,
            self.multiplicity,
            self.exact.as_ref().map(|e| format!(", = {e}")).unwrap_or_default()
        )
    }
}

impl IsolatedRoot {
    /// Build from an isolating interval of `factor`. Checks the invariant.
    pub fn new(
        factor: UniPoly,
        lo: Scalar,
        hi: Scalar,
        multiplicity: usize,
    ) -> Result<Self, ExactError> {
        let zfactor = factor.integer_primitive();
        if lo >= hi {
            return Err(ExactError::EmptyInterval);
        }
        if zfactor.sign_at(&lo) == 0 || zfactor.sign_at(&hi) == 0 {
            return Err(ExactError::EndpointIsRoot);
        }
        if SturmChain::new(&zfactor).count(&lo, &hi) != 1 {
            return Err(ExactError::NotIsolating);
        }
        let exact = if factor.deg() == 1 {
            Some(-factor.coeff(0) / factor.coeff(1))
        } else {
            None
        };
        Ok(IsolatedRoot { factor: factor.monic(), zfactor, lo, hi, multiplicity, exact })
    }

    pub fn square_free_factor(&self) -> &UniPoly {
        &self.factor
    }

    pub fn interval(&self) -> (&Scalar, &Scalar) {
        (&self.lo, &self.hi)
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn exact_value(&self) -> Option<&Scalar> {
        self.exact.as_ref()
    }

    pub fn with_multiplicity(mut self, m: usize) -> Self {
        self.multiplicity = m;
        self
    }

    pub fn width(&self) -> Scalar {
        &self.hi - &self.lo
    }

    /// Midpoint as a float, for display only.
    pub fn approx(&self) -> f64 {
        let m = (&self.lo + &self.hi) / Scalar::from_integer(BigInt::from(2));
        to_f64(self.exact.as_ref().unwrap_or(&m))
    }

    /// Halve the interval.
    pub fn refine(&mut self) {
        let two = Scalar::from_integer(BigInt::from(2));
        if let Some(x) = &self.exact {
            let d = (&self.hi - &self.lo) / Scalar::from_integer(BigInt::from(4));
            self.lo = x - &d;
            self.hi = x + &d;
            return;
        }
        let mid = (&self.lo + &self.hi) / &two;
        let sm = self.zfactor.sign_at(&mid);
        if sm == 0 {
            // Rational root found; keep a symmetric interval around it.
            let d = (&self.hi - &self.lo) / Scalar::from_integer(BigInt::from(4));
            self.lo = &mid - &d;
            self.hi = &mid + &d;
            self.exact = Some(mid);
            return;
        }
        if self.zfactor.sign_at(&self.lo) == sm {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Detect whether the root is rational. Any rational root of a primitive
    /// integer polynomial lies in (1/lc)·Z, so one candidate check suffices
    /// once the interval is narrower than 1/lc.
    pub fn try_rational(&mut self) -> Option<Scalar> {
        if let Some(x) = &self.exact {
            return Some(x.clone());
        }
        let lc = self.zfactor.lc().abs();
        let w = Scalar::new(BigInt::one(), lc.clone());
        self.refine_until_width(&w);
        if let Some(x) = &self.exact {
            return Some(x.clone());
        }
        let m = (&self.lo * Scalar::from_integer(lc.clone())).ceil().to_integer();
        let cand = Scalar::new(m, lc);
        if &cand > &self.lo && &cand < &self.hi && self.zfactor.sign_at(&cand) == 0 {
            self.exact = Some(cand.clone());
            return Some(cand);
        }
        None
    }

    pub fn refine_until_width(&mut self, w: &Scalar) {
        while &self.width() > w {
            self.refine();
        }
    }

    /// Compare with a rational number.
    pub fn cmp_rational(&mut self, c: &Scalar) -> Ordering {
        if let Some(x) = &self.exact {
            return x.cmp(c);
        }
        if self.zfactor.sign_at(c) == 0 && &self.lo < c && c < &self.hi {
            return Ordering::Equal;
        }
        loop {
            if c <= &self.lo {
                return Ordering::Greater;
            }
            if c >= &self.hi {
                return Ordering::Less;
            }
            self.refine();
            if let Some(x) = &self.exact {
                return x.cmp(c);
            }
        }
    }

    /// True when the two represent the same real number.
    pub fn same_number(&mut self, other: &mut IsolatedRoot) -> bool {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return a == b;
        }
        let g = self.factor.gcd(&other.factor);
        if g.deg() == 0 {
            return false;
        }
        // Same number iff both lie on a common root of g.
        let a = root_of_divisor(&g, self);
        let b = root_of_divisor(&g, other);
        if !(a && b) {
            return false;
        }
        loop {
            if self.hi <= other.lo || other.hi <= self.lo {
                return false;
            }
            let lo = if self.lo > other.lo { &self.lo } else { &other.lo };
            let hi = if self.hi < other.hi { &self.hi } else { &other.hi };
            let zg = g.integer_primitive();
            if zg.sign_at(lo) != 0 && zg.sign_at(hi) != 0 && SturmChain::new(&zg).count(lo, hi) == 1
            {
                return true;
            }
            self.refine();
            other.refine();
        }
    }
}

/// Whether the root represented by r is a root of g, where g divides r's factor.
fn root_of_divisor(g: &UniPoly, r: &IsolatedRoot) -> bool {
    if let Some(x) = &r.exact {
        return g.eval(x).is_zero();
    }
    let zg = g.integer_primitive();
    zg.sign_at(&r.lo) != zg.sign_at(&r.hi)
}

pub fn to_f64(x: &Scalar) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().bits() as i64;
        let d = x.denom().bits() as i64;
        let shift = n.max(d) - 60;
        let nn = (x.numer() >> shift.max(0) as u64).to_f64().unwrap_or(0.0);
        let dd = (x.denom() >> shift.max(0) as u64).to_f64().unwrap_or(1.0);
        nn / dd
    })
}

/// Turn raw strategy output for a square-free p into certified IsolatedRoots.
fn finalize(p: &ZPoly, factor: &UniPoly, raw: Vec<RawRoot>, mult: usize) -> Vec<IsolatedRoot> {
    let dp = p.derivative();
    let two = Scalar::from_integer(BigInt::from(2));
    let mut exact: Vec<Scalar> = Vec::new();
    let mut intervals: Vec<(Scalar, Scalar)> = Vec::new();
    for r in raw {
        match r {
            RawRoot::Exact(x) => exact.push(x),
            RawRoot::Interval(mut lo, mut hi) => {
                if p.sign_at(&lo) == 0 {
                    let want = dp.sign_at(&lo);
                    let mut step = (&hi - &lo) / &two;
                    loop {
                        let cand = &lo + &step;
                        if p.sign_at(&cand) == want {
                            lo = cand;
                            break;
                        }
                        step /= &two;
                    }
                }
                if p.sign_at(&hi) == 0 {
                    let want = -dp.sign_at(&hi);
                    let mut step = (&hi - &lo) / &two;
                    loop {
                        let cand = &hi - &step;
                        if p.sign_at(&cand) == want {
                            hi = cand;
                            break;
                        }
                        step /= &two;
                    }
                }
                intervals.push((lo, hi));
            }
        }
    }
    let linear_root = (factor.deg() == 1).then(|| -factor.coeff(0) / factor.coeff(1));
    let mut out: Vec<IsolatedRoot> = intervals
        .into_iter()
        .map(|(lo, hi)| IsolatedRoot {
            factor: factor.clone(),
            zfactor: p.clone(),
            exact: linear_root.clone(),
            lo,
            hi,
            multiplicity: mult,
        })
        .collect();
    for x in exact {
        let mut d = Scalar::one();
        for r in &out {
            for e in [&r.lo, &r.hi] {
                let gap = (e - &x).abs() / &two;
                if gap < d {
                    d = gap;
                }
            }
        }
        out.push(IsolatedRoot {
            factor: factor.clone(),
            zfactor: p.clone(),
            lo: &x - &d,
            hi: &x + &d,
            exact: Some(x),
            multiplicity: mult,
        });
    }
    // Exact roots found late may sit close to each other.
    separate(&mut out);
    out
}

/// Refine until the intervals are pairwise disjoint, then sort.
fn separate(roots: &mut [IsolatedRoot]) {
    loop {
        roots.sort_by(|a, b| a.lo.cmp(&b.lo));
        let mut clean = true;
        for i in 1..roots.len() {
            if roots[i - 1].hi > roots[i].lo {
                clean = false;
                roots[i - 1].refine();
                roots[i].refine();
            }
        }
        if clean {
            return;
        }
    }
}

pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<IsolatedRoot>, ExactError> {
    isolate_real_roots_with(p, &DescartesIsolator)
}

/// One IsolatedRoot per distinct real root, sorted, intervals disjoint.
pub fn isolate_real_roots_with(
    p: &UniPoly,
    isolator: &dyn RootIsolator,
) -> Result<Vec<IsolatedRoot>, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let mut all = Vec::new();
    for (factor, mult) in p.square_free_decomposition() {
        all.extend(isolate_square_free(&factor, mult, isolator));
    }
    separate(&mut all);
    Ok(all)
}

/// Roots of a square-free factor, tagged with the given multiplicity.
pub fn isolate_square_free(
    factor: &UniPoly,
    mult: usize,
    isolator: &dyn RootIsolator,
) -> Vec<IsolatedRoot> {
    let z = factor.integer_primitive();
    let raw = isolator.isolate(&z);
    finalize(&z, &factor.monic(), raw, mult)
}

/// Answers sign queries of a fixed polynomial at algebraic points.
#[derive(Clone, Debug)]
pub struct SignOracle {
    poly: UniPoly,
    zpoly: ZPoly,
    chain: SturmChain,
}

impl SignOracle {
    pub fn new(p: &UniPoly) -> Self {
        let zpoly = p.to_zpoly().1;
        let chain = SturmChain::new(&zpoly);
        SignOracle { poly: p.clone(), zpoly, chain }
    }

    /// Sign of the polynomial at r, refining r in place.
    pub fn sign(&self, r: &mut IsolatedRoot) -> i8 {
        if let Some(x) = &r.exact {
            return self.zpoly.sign_at(x);
        }
        let g = self.poly.gcd(&r.factor);
        if g.deg() > 0 && root_of_divisor(&g, r) {
            return 0;
        }
        loop {
            if let Some(x) = &r.exact {
                return self.zpoly.sign_at(x);
            }
            let sl = self.zpoly.sign_at(&r.lo);
            if sl != 0 && self.zpoly.sign_at(&r.hi) != 0 && self.chain.count(&r.lo, &r.hi) == 0 {
                return sl;
            }
            r.refine();
        }
    }

    /// Number of distinct real roots of the polynomial strictly below r.
    /// Requires the polynomial not to vanish at r.
    pub fn roots_below(&self, r: &mut IsolatedRoot) -> usize {
        let s = self.sign(r);
        assert!(s != 0, "roots_below queried at a root");
        if let Some(x) = &r.exact {
            return self.chain.count_below(x);
        }
        self.chain.count_below(&r.lo)
    }

    pub fn roots_below_rational(&self, x: &Scalar) -> usize {
        self.chain.count_below(x)
    }
}

/// Sign of p at the algebraic number r.
pub fn sign_at_root(p: &UniPoly, r: &IsolatedRoot) -> i8 {
    let mut r = r.clone();
    SignOracle::new(p).sign(&mut r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn sturm_examples() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &rat(0, 1), &rat(2, 1)).unwrap(), 1);
        let q = UniPoly::from_ints(&[1, 0, 1]);
        assert_eq!(sturm_count(&q, &rat(-10, 1), &rat(10, 1)).unwrap(), 0);
        let f = UniPoly::from_roots(&[rat(0, 1), rat(1, 1), rat(2, 1), rat(3, 1), rat(4, 1)]);
        assert_eq!(sturm_count(&f, &rat(-1, 1), &rat(5, 1)).unwrap(), 5);
        assert!(matches!(sturm_count(&f, &rat(0, 1), &rat(5, 1)), Err(ExactError::EndpointIsRoot)));
    }

    #[test]
    fn isolation_with_rational_roots_on_split_points() {
        let f = UniPoly::from_roots(&[rat(0, 1), rat(1, 1), rat(2, 1), rat(3, 1), rat(4, 1)]);
        for iso in [&DescartesIsolator as &dyn RootIsolator, &SturmIsolator] {
            let r = isolate_real_roots_with(&f, iso).unwrap();
            assert_eq!(r.len(), 5, "{}", iso.name());
            for (i, root) in r.iter().enumerate() {
                let (lo, hi) = root.interval();
                assert!(lo < &rat(i as i64, 1) && &rat(i as i64, 1) < hi);
                assert!(f.eval(&root.lo) != rat(0, 1) && f.eval(&root.hi) != rat(0, 1));
            }
        }
    }

    #[test]
    fn multiplicities() {
        let p = &UniPoly::from_ints(&[-1, 1]).pow(2) * &UniPoly::from_ints(&[2, 1]);
        let r = isolate_real_roots(&p).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].multiplicity(), 1);
        assert_eq!(r[0].exact_value(), Some(&rat(-2, 1)));
        assert_eq!(r[1].multiplicity(), 2);
        assert!(isolate_real_roots(&UniPoly::from_ints(&[1, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn signs_at_sqrt2() {
        let s2 = UniPoly::from_ints(&[-2, 0, 1]);
        let r = IsolatedRoot::new(s2.clone(), rat(1, 1), rat(2, 1), 1).unwrap();
        assert_eq!(sign_at_root(&UniPoly::from_ints(&[-3, 1]), &r), -1);
        assert_eq!(sign_at_root(&s2, &r), 0);
        // x^2 - 2x - 1 has roots 1 ± √2, positive just above √2? (√2)^2 − 2√2 − 1 = 1 − 2√2 < 0
        assert_eq!(sign_at_root(&UniPoly::from_ints(&[-1, -2, 1]), &r), -1);
        // 10x - 14 at √2 ≈ 1.41421 is positive
        assert_eq!(sign_at_root(&UniPoly::from_ints(&[-14, 10]), &r), 1);
    }
}
