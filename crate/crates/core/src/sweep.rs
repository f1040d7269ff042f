//! ε-sweeps over a patchworking family: instantiate at ε₀/2^h, record the
//! real inflection data and detect when it settles.

use std::cmp::Ordering;

use hyperflex_exact::{
    discriminant, format_scalar, isolate_real_roots, roots::to_f64, BiPoly, IsolatedRoot, Scalar, UniPoly, Var,
};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::curve::HyperellipticCurve;
use crate::error::{Error, Result};
use crate::inflection::{analyze, SeriesBasis};
use crate::patchwork::{initial_degeneration, PatchworkFamily};
use crate::registry::Toolkit;
use crate::tropical::{specialize_inflection, tropicalize};

pub const DEFAULT_EPS0: (i64, i64) = (1, 2);
pub const DEFAULT_MAX_HALVINGS: usize = 40;
/// Consecutive identical samples needed to call a sweep stable.
pub const STABLE_WINDOW: usize = 3;
const CHUNK: usize = 4;

/// Integer observables of one fiber X_ε.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleRecord {
    pub components: usize,
    pub total_degree: i64,
    pub real_degree: i64,
    pub per_component: Vec<i64>,
    pub real_points: usize,
    pub s_real_degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSample {
    pub halvings: usize,
    pub epsilon: Scalar,
    /// `None` when X_ε is singular.
    pub record: Option<SampleRecord>,
    pub below_threshold: bool,
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub k: usize,
    pub samples: Vec<SweepSample>,
    /// Smallest positive root of disc_x(f_t); below it the topology of X_ε is fixed.
    pub threshold: Option<IsolatedRoot>,
    pub predicted_components: usize,
    pub expected_total: i64,
    /// Earliest halving a stable window may start at.
    pub scale_floor: usize,
    pub stabilized: bool,
    /// First sample of the stable window.
    pub stable_index: Option<usize>,
    pub stable_value: Option<SampleRecord>,
}

impl SweepResult {
    pub fn epsilons(&self) -> Vec<Scalar> {
        self.samples.iter().map(|s| s.epsilon.clone()).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("halvings,epsilon,below_threshold,components,total_degree,real_degree,real_points,s_real_degree,per_component\n");
        for s in &self.samples {
            let eps = format_scalar(&s.epsilon);
            match &s.record {
                Some(r) => {
                    let per: Vec<String> = r.per_component.iter().map(i64::to_string).collect();
                    out.push_str(&format!(
                        "{},{eps},{},{},{},{},{},{},{}\n",
                        s.halvings,
                        s.below_threshold,
                        r.components,
                        r.total_degree,
                        r.real_degree,
                        r.real_points,
                        r.s_real_degree,
                        per.join(";")
                    ));
                }
                None => out.push_str(&format!("{},{eps},{},singular,,,,,\n", s.halvings, s.below_threshold)),
            }
        }
        out
    }
}

/// disc_x(Σ a_i t^{ν(i)} x^i) with the powers of t removed.
pub fn discriminant_in_t(fam: &PatchworkFamily) -> Result<UniPoly> {
    let terms = fam.terms();
    let top = terms.iter().map(|t| t.2).max().unwrap_or(0) as usize;
    let deg = 2 * fam.genus + 1;
    let mut c = vec![vec![Scalar::zero(); deg + 1]; top + 1];
    for (i, a, e) in terms {
        c[e as usize][i] = a;
    }
    let d = discriminant(&BiPoly::new(c), Var::Y)?;
    if d.is_zero() {
        return Err(Error::DegenerateCurve);
    }
    Ok(d.shift_down(d.trailing_zeros()))
}

/// Smallest positive root of the t-discriminant.
pub fn stability_threshold(fam: &PatchworkFamily) -> Result<Option<IsolatedRoot>> {
    let d = discriminant_in_t(fam)?;
    let roots = isolate_real_roots(&d)?;
    Ok(roots.into_iter().find_map(|mut r| (r.cmp_rational(&Scalar::zero()) == Ordering::Greater).then_some(r)))
}

fn below(threshold: &Option<IsolatedRoot>, eps: &Scalar) -> bool {
    match threshold {
        None => true,
        Some(r) => r.clone().cmp_rational(eps) == Ordering::Greater,
    }
}

/// Real inflection record of X_ε, or `None` if f_ε is not separable.
pub fn sample(fam: &PatchworkFamily, k: usize, eps: &Scalar, tools: &Toolkit) -> Result<Option<SampleRecord>> {
    let curve = match HyperellipticCurve::with_isolator(fam.f_at(eps), tools.isolator.as_ref()) {
        Ok(c) => c,
        Err(Error::NotSeparable) => return Ok(None),
        Err(e) => return Err(e),
    };
    let r = analyze(&curve, &SeriesBasis::canonical(fam.genus, k), tools, false)?;
    Ok(Some(SampleRecord {
        components: curve.real_component_count(),
        total_degree: r.total_degree,
        real_degree: r.real_degree,
        per_component: r.per_component.clone(),
        real_points: r.real_point_count,
        s_real_degree: r.s_real_degree(),
    }))
}

fn log2_abs(x: &Scalar) -> f64 {
    fn log2_int(n: &num_bigint::BigInt) -> f64 {
        let b = n.bits() as i64;
        let shift = (b - 60).max(0);
        let top = (n.magnitude() >> shift as u64).to_f64().unwrap_or(1.0);
        top.log2() + shift as f64
    }
    log2_int(x.numer()) - log2_int(x.denom())
}

/// log₂ of Fujiwara's bound on the root moduli of p.
fn log2_root_bound(p: &UniPoly) -> f64 {
    let n = p.deg();
    let lc = log2_abs(&p.lc());
    (1..=n)
        .filter(|&i| !p.coeff(n - i).is_zero())
        .map(|i| {
            let c = log2_abs(&p.coeff(n - i)) - lc - if i == n { 1.0 } else { 0.0 };
            1.0 + c / i as f64
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// First halving at which neighbouring clusters are separated: with
/// roots of cluster i below 2^{U_i} and those of cluster i+1 above
/// 2^{L_{i+1}} in the rescaled coordinate, ε^{a_{i+1}−a_i} must beat
/// 2^{U_i − L_{i+1} + 4}. Cluster i holds the roots of Q_i/x^{2i−1} and, for
/// k > g, of the edge polynomial S_i.
pub fn scale_floor(fam: &PatchworkFamily, k: usize, eps0: &Scalar) -> Result<usize> {
    let g = fam.genus;
    let trop = tropicalize(fam)?;
    let clusters = if k > g { Some(specialize_inflection(fam, k)?.clusters) } else { None };
    let mut polys = Vec::with_capacity(g);
    for i in 1..=g {
        let mut p = initial_degeneration(fam, i)?.quadratic();
        if let Some(c) = &clusters {
            p = &p * &c[i - 1].interior;
        }
        polys.push(p);
    }
    let mut floor = 0f64;
    for i in 0..g.saturating_sub(1) {
        let upper = log2_root_bound(&polys[i]);
        let rev = UniPoly::new(polys[i + 1].coeffs().iter().rev().cloned().collect());
        let lower = -log2_root_bound(&rev);
        let gap = to_f64(&(&trop.vertices[i + 1].0 - &trop.vertices[i].0));
        let h = (upper - lower + 4.0) / gap + log2_abs(eps0);
        floor = floor.max(h.ceil());
    }
    Ok(floor.max(0.0) as usize)
}

fn window_holds(samples: &[SweepSample], start: usize, predicted: usize) -> bool {
    let window = &samples[start..start + STABLE_WINDOW];
    let Some(first) = &window[0].record else {
        return false;
    };
    window.iter().all(|s| agrees(s, first, predicted))
}

fn agrees(s: &SweepSample, record: &SampleRecord, predicted: usize) -> bool {
    s.below_threshold && s.record.as_ref().is_some_and(|r| r == record && r.components == predicted)
}

/// Halving at which a window starting at h is confirmed.
pub fn confirmation_halving(h: usize) -> usize {
    2 * h + 4
}

/// Halve ε from ε₀ until the records settle or `max_halvings` is spent.
/// A window of identical samples must start at or after the scale floor,
/// and counts only if the sample at halving 2h + 4 agrees with it. Samples are computed in parallel
/// chunks; the scan over them runs in order.
pub fn run_sweep(
    fam: &PatchworkFamily,
    k: usize,
    eps0: &Scalar,
    max_halvings: usize,
    tools: &Toolkit,
) -> Result<SweepResult> {
    if eps0 <= &Scalar::zero() {
        return Err(Error::InvalidInput("ε₀ must be positive".into()));
    }
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let g = fam.genus as i64;
    let kk = k as i64;
    let expected_total = if kk <= g { kk * (kk + 1) * (g + 1) } else { g * (2 * kk - g + 1).pow(2) };
    let threshold = stability_threshold(fam)?;
    let floor = scale_floor(fam, k, eps0)?;
    let predicted = fam.predicted_components();
    let compute = |h: usize| -> Result<SweepSample> {
        let epsilon = eps0 / Scalar::from_integer(num_bigint::BigInt::one() << h);
        let record = sample(fam, k, &epsilon, tools)?;
        if let Some(r) = &record {
            if r.total_degree != expected_total {
                return Err(Error::Inconsistency(format!(
                    "total degree {} at ε = {} differs from {expected_total}",
                    r.total_degree,
                    format_scalar(&epsilon)
                )));
            }
        }
        let below_threshold = below(&threshold, &epsilon);
        Ok(SweepSample { halvings: h, epsilon, record, below_threshold })
    };
    let mut samples: Vec<SweepSample> = Vec::new();
    let extend_to = |samples: &mut Vec<SweepSample>, h: usize| -> Result<()> {
        while samples.len() <= h.min(max_halvings) {
            let from = samples.len();
            let hs: Vec<usize> = (from..(from + CHUNK).min(max_halvings + 1)).collect();
            let chunk: Vec<Result<SweepSample>> = hs.par_iter().map(|&h| compute(h)).collect();
            for s in chunk {
                samples.push(s?);
            }
        }
        Ok(())
    };
    let mut stable_index = None;
    let mut start = floor;
    while confirmation_halving(start) <= max_halvings {
        extend_to(&mut samples, start + STABLE_WINDOW - 1)?;
        if window_holds(&samples, start, predicted) {
            let c = confirmation_halving(start);
            extend_to(&mut samples, c)?;
            let first = samples[start].record.clone().expect("window holds");
            if agrees(&samples[c], &first, predicted) {
                stable_index = Some(start);
                break;
            }
        }
        start += 1;
    }
    if stable_index.is_none() {
        extend_to(&mut samples, max_halvings)?;
    }
    let stable_value = stable_index.and_then(|i| samples[i].record.clone());
    Ok(SweepResult {
        k,
        samples,
        threshold,
        predicted_components: predicted,
        expected_total,
        scale_floor: floor,
        stabilized: stable_index.is_some(),
        stable_index,
        stable_value,
    })
}

/// ε₀ = 1/2.
pub fn default_eps0() -> Scalar {
    Scalar::new(DEFAULT_EPS0.0.into(), DEFAULT_EPS0.1.into())
}
