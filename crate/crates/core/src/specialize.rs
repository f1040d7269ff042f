//! The series H_j on the elliptic pieces, their inflection at the marked
//! points, and the regeneration count for the nearby smooth fiber.

use hyperflex_exact::{int, Scalar};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::curve::{HyperellipticCurve, LocalPoint};
use crate::error::{Error, Result};
use crate::inflection::{analyze, binom, initial_order, sequence_weight, InflectionReport, SeriesBasis};
use crate::patchwork::{assemble_family, glue_roots, initial_degeneration, EllipticPiece, PatchworkFamily};
use crate::registry::Toolkit;
use crate::sweep::{run_sweep, SweepResult};

/// H_j = ⟨1, x, …, x^k, y, …, x^{k−g−1}y⟩ on the j-th piece of a genus g family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticSeries {
    pub piece: EllipticPiece,
    pub j: usize,
    pub g: usize,
    pub k: usize,
}

impl EllipticSeries {
    pub fn new(piece: EllipticPiece, j: usize, g: usize, k: usize) -> Result<Self> {
        if j == 0 || j > g {
            return Err(Error::OutOfRange(j));
        }
        if k < g {
            return Err(Error::InvalidInput(format!("H_j needs k ≥ g, got k = {k}, g = {g}")));
        }
        Ok(EllipticSeries { piece, j, g, k })
    }

    /// All series of a family, j = 1…g.
    pub fn of_family(fam: &PatchworkFamily, k: usize) -> Result<Vec<Self>> {
        (1..=fam.genus).map(|i| EllipticSeries::new(initial_degeneration(fam, i)?, i, fam.genus, k)).collect()
    }

    /// The cubic model Y² = a x (x² − s x + p), with y = x^{j−1} Y.
    pub fn curve(&self) -> Result<HyperellipticCurve> {
        HyperellipticCurve::new(self.piece.cubic())
    }

    pub fn basis(&self) -> SeriesBasis {
        SeriesBasis::elliptic(self.g, self.j, self.k)
    }

    pub fn rank(&self) -> usize {
        2 * self.k - self.g
    }

    /// |0|, |∞| and |(α, 0)| as predicted.
    pub fn closed_form(&self) -> MarkedWeights {
        let (g, k, j) = (self.g as i64, self.k as i64, self.j as i64);
        let base = binom(self.g + 1, 2);
        MarkedWeights { zero: base + 2 * (k - g) * (j - 1), infinity: base + 2 * (k - g) * (g - j), alpha: [base, base] }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MarkedWeights {
    pub zero: i64,
    pub infinity: i64,
    pub alpha: [i64; 2],
}

impl MarkedWeights {
    pub fn sum(&self) -> i64 {
        self.zero + self.infinity + self.alpha[0] + self.alpha[1]
    }
}

/// Weights at the marked points with the vanishing orders behind them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPointData {
    pub weights: MarkedWeights,
    pub zero_orders: Vec<i64>,
    pub infinity_orders: Vec<i64>,
    /// Orders at (α₁, 0), (α₂, 0) when the roots are rational.
    pub alpha_orders: Option<[Vec<i64>; 2]>,
}

fn orders_at(es: &EllipticSeries, curve: &HyperellipticCurve, p: &LocalPoint) -> Result<Vec<i64>> {
    let b = es.basis();
    curve.vanishing_sequence(&b.elements(), p, b.pole_bound as i64, initial_order(b.pole_bound, 1))
}

/// Marked-point weights from vanishing sequences. Irrational α take their
/// weight from the order of the Wronskian there.
pub fn marked_point_weights(es: &EllipticSeries, tools: &Toolkit) -> Result<MarkedPointData> {
    let curve = es.curve()?;
    let zero_orders = orders_at(es, &curve, &LocalPoint::Ramified(Scalar::zero()))?;
    let infinity_orders = orders_at(es, &curve, &LocalPoint::Infinity)?;
    let (alpha, alpha_orders) = match es.piece.rational_roots() {
        Some((x1, x2)) => {
            let o1 = orders_at(es, &curve, &LocalPoint::Ramified(x1))?;
            let o2 = orders_at(es, &curve, &LocalPoint::Ramified(x2))?;
            ([sequence_weight(&o1), sequence_weight(&o2)], Some([o1, o2]))
        }
        None => {
            let report = analyze(&curve, &es.basis(), tools, false)?;
            let quad = es.piece.quadratic();
            let w = report
                .ramification
                .iter()
                .find(|r| r.factor.div_rem(&quad).1.is_zero())
                .map(|r| r.weight)
                .ok_or_else(|| Error::Inconsistency("no ramification weight over the quadratic factor".into()))?;
            ([w, w], None)
        }
    };
    let weights = MarkedWeights {
        zero: sequence_weight(&zero_orders),
        infinity: sequence_weight(&infinity_orders),
        alpha,
    };
    let expected = es.closed_form();
    if weights != expected {
        return Err(Error::Inconsistency(format!(
            "marked weights {weights:?} on piece {} differ from {expected:?}",
            es.j
        )));
    }
    Ok(MarkedPointData { weights, zero_orders, infinity_orders, alpha_orders })
}

/// o_i(H_j, ∞) + o_{r−i}(H_{j+1}, 0) for one consecutive pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityRow {
    pub j: usize,
    pub infinity_orders: Vec<i64>,
    pub zero_orders: Vec<i64>,
    pub sums: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityReport {
    pub holds: bool,
    pub target: i64,
    pub rows: Vec<CompatibilityRow>,
}

pub fn compatibility_check(series: &[EllipticSeries]) -> Result<CompatibilityReport> {
    let Some(first) = series.first() else {
        return Ok(CompatibilityReport { holds: true, target: 0, rows: vec![] });
    };
    let target = 2 * first.k as i64;
    let mut rows = Vec::new();
    for w in series.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if b.j != a.j + 1 || a.k != b.k || a.g != b.g {
            return Err(Error::InvalidInput(format!("series {} and {} are not consecutive", a.j, b.j)));
        }
        let infinity_orders = orders_at(a, &a.curve()?, &LocalPoint::Infinity)?;
        let zero_orders = orders_at(b, &b.curve()?, &LocalPoint::Ramified(Scalar::zero()))?;
        let r = infinity_orders.len() - 1;
        let sums = (0..=r).map(|i| infinity_orders[i] + zero_orders[r - i]).collect();
        rows.push(CompatibilityRow { j: a.j, infinity_orders, zero_orders, sums });
    }
    let holds = rows.iter().all(|row| row.sums.iter().all(|&s| s == target));
    Ok(CompatibilityReport { holds, target, rows })
}

#[derive(Clone, Debug)]
pub struct EllipticInflection {
    pub j: usize,
    pub report: InflectionReport,
    pub marked: MarkedPointData,
    pub interior_degree: i64,
    /// s_ℝ: weighted real degree of the interior part S_j.
    pub interior_real_degree: i64,
}

impl EllipticInflection {
    /// deg_ℝ Inf(H_j).
    pub fn real_degree(&self) -> i64 {
        self.report.real_degree
    }
}

pub fn elliptic_inflection(es: &EllipticSeries, tools: &Toolkit) -> Result<EllipticInflection> {
    let curve = es.curve()?;
    let report = analyze(&curve, &es.basis(), tools, true)?;
    let marked = marked_point_weights(es, tools)?;
    let r = es.rank() as i64;
    let total = (r + 1) * 2 * es.k as i64;
    let interior_degree = report.s_part.degree();
    let expected = 4 * ((es.k + 1) * (es.k - es.g)) as i64;
    if report.total_degree != total || interior_degree != expected || marked.weights.sum() + interior_degree != total {
        return Err(Error::Inconsistency(format!(
            "piece {}: total {} and interior {interior_degree}, expected {total} and {expected}",
            es.j, report.total_degree
        )));
    }
    Ok(EllipticInflection { j: es.j, interior_real_degree: report.s_real_degree(), report, marked, interior_degree })
}

/// g(2k−g+1): the weight carried by the two attachment points of one edge.
pub fn attachment_weight(g: usize, k: usize) -> i64 {
    g as i64 * (2 * k as i64 - g as i64 + 1)
}

#[derive(Clone, Debug)]
pub struct RegenerationReport {
    pub genus: usize,
    pub k: usize,
    pub pieces: Vec<EllipticInflection>,
    pub correction: i64,
    /// Σ deg_ℝ Inf(H_i) − g(g−1)(2k−g+1).
    pub predicted_real_degree: i64,
    /// Stabilized deg_ℝ Inf on the nearby fiber.
    pub measured_real_degree: Option<i64>,
    pub complex_identity: (i64, i64, i64),
    pub sweep: SweepResult,
}

impl RegenerationReport {
    pub fn complex_holds(&self) -> bool {
        let (lhs, elliptic, corr) = self.complex_identity;
        lhs == elliptic - corr
    }

    pub fn real_holds(&self) -> bool {
        self.measured_real_degree == Some(self.predicted_real_degree)
    }
}

pub fn regeneration_check(
    fam: &PatchworkFamily,
    k: usize,
    eps0: &Scalar,
    max_halvings: usize,
    tools: &Toolkit,
) -> Result<RegenerationReport> {
    let g = fam.genus;
    let series = EllipticSeries::of_family(fam, k)?;
    let pieces = series.par_iter().map(|es| elliptic_inflection(es, tools)).collect::<Result<Vec<_>>>()?;
    let correction = (g as i64 - 1) * attachment_weight(g, k);
    let predicted_real_degree = pieces.iter().map(EllipticInflection::real_degree).sum::<i64>() - correction;
    let elliptic_total: i64 = pieces.iter().map(|p| p.report.total_degree).sum();
    let lhs = g as i64 * (2 * k as i64 - g as i64 + 1).pow(2);
    let sweep = run_sweep(fam, k, eps0, max_halvings, tools)?;
    let measured_real_degree = sweep.stable_value.as_ref().map(|r| r.real_degree);
    Ok(RegenerationReport {
        genus: g,
        k,
        pieces,
        correction,
        predicted_real_degree,
        measured_real_degree,
        complex_identity: (lhs, elliptic_total, correction),
        sweep,
    })
}

/// A piece shape with its measured s_ℝ at every slot j = 1…g.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LibraryEntry {
    pub piece: EllipticPiece,
    pub real_type: bool,
    pub s_real: Vec<i64>,
}

impl LibraryEntry {
    /// s_ℝ when it does not depend on the slot.
    pub fn uniform(&self) -> Option<i64> {
        let first = *self.s_real.first()?;
        self.s_real.iter().all(|&s| s == first).then_some(first)
    }
}

/// Integer cubics x(x² − s x + p) with p > 0, of both real types.
pub fn default_library() -> Vec<EllipticPiece> {
    [(3, 2), (5, 6), (4, 3), (7, 12), (1, 1), (2, 5), (0, 1), (2, 2), (-3, 2), (-1, 1)]
        .iter()
        .map(|&(s, p)| EllipticPiece::from_ints(1, s, p).expect("library pieces are separable"))
        .collect()
}

/// `count` pieces with random small rational coefficients, p > 0.
pub fn random_pieces(seed: u64, count: usize) -> Vec<EllipticPiece> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let s = Scalar::new(rng.gen_range(-12..=12).into(), rng.gen_range(1..=4).into());
        let p = Scalar::new(rng.gen_range(1..=12).into(), rng.gen_range(1..=4).into());
        if let Ok(piece) = EllipticPiece::new(int(1), s, p) {
            out.push(piece);
        }
    }
    out
}

/// Measure s_ℝ of each piece in every slot of a genus g family.
pub fn measure_library(pieces: &[EllipticPiece], g: usize, k: usize, tools: &Toolkit) -> Result<Vec<LibraryEntry>> {
    pieces
        .par_iter()
        .map(|piece| {
            if !piece.product.is_positive() {
                return Err(Error::InvalidInput("library pieces need a positive root product".into()));
            }
            let s_real = (1..=g)
                .map(|j| Ok(elliptic_inflection(&EllipticSeries::new(piece.clone(), j, g, k)?, tools)?.interior_real_degree))
                .collect::<Result<Vec<_>>>()?;
            Ok(LibraryEntry { piece: piece.clone(), real_type: piece.has_real_roots(), s_real })
        })
        .collect()
}

/// (g(g+1) + s₂)·n + (g − n + 1)·s₁ − s₂.
pub fn lower_bound_formula(g: usize, n: usize, s1: i64, s2: i64) -> i64 {
    let (g, n) = (g as i64, n as i64);
    (g * (g + 1) + s2) * n + (g - n + 1) * s1 - s2
}

#[derive(Clone, Debug)]
pub struct LowerBoundInstance {
    pub n: usize,
    pub targets: (i64, i64),
    pub family: PatchworkFamily,
    pub predicted: i64,
    pub achieved: Option<i64>,
    pub sweep: SweepResult,
}

impl LowerBoundInstance {
    pub fn holds(&self) -> bool {
        self.achieved == Some(self.predicted)
    }
}

fn pick(library: &[LibraryEntry], real: bool, target: i64) -> Result<&EllipticPiece> {
    library
        .iter()
        .find(|e| e.real_type == real && e.uniform() == Some(target))
        .map(|e| &e.piece)
        .ok_or(Error::NoPieceFound(target))
}

/// Family from E₁ (conjugate roots) used g+1−n times and E₂ (real roots)
/// used n−1 times, checked against the formula on the nearby fiber.
pub fn lower_bound_instances(
    g: usize,
    k: usize,
    n: usize,
    targets: (i64, i64),
    library: &[LibraryEntry],
    eps0: &Scalar,
    max_halvings: usize,
    tools: &Toolkit,
) -> Result<LowerBoundInstance> {
    if n == 0 || n > g + 1 {
        return Err(Error::InvalidInput(format!("n must lie in 1..={}, got {n}", g + 1)));
    }
    let e1 = if n < g + 1 { Some(pick(library, false, targets.0)?) } else { None };
    let e2 = if n > 1 { Some(pick(library, true, targets.1)?) } else { None };
    let mut shapes = Vec::with_capacity(g);
    for i in 0..g {
        let piece = if i < n - 1 { e2 } else { e1 }.expect("the counts match n");
        shapes.push((piece.sum.clone(), piece.product.clone()));
    }
    let family = assemble_family(&glue_roots(int(1), &shapes)?, None)?;
    let sweep = run_sweep(&family, k, eps0, max_halvings, tools)?;
    Ok(LowerBoundInstance {
        n,
        targets,
        predicted: lower_bound_formula(g, n, targets.0, targets.1),
        achieved: sweep.stable_value.as_ref().map(|r| r.real_degree),
        family,
        sweep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(s: i64, p: i64, j: usize, g: usize, k: usize) -> EllipticSeries {
        EllipticSeries::new(EllipticPiece::from_ints(1, s, p).unwrap(), j, g, k).unwrap()
    }

    #[test]
    fn marked_weights_small_cases() {
        let t = Toolkit::default();
        let w1 = marked_point_weights(&series(3, 2, 1, 2, 3), &t).unwrap().weights;
        assert_eq!((w1.zero, w1.infinity, w1.alpha), (3, 5, [3, 3]));
        let w2 = marked_point_weights(&series(3, 2, 2, 2, 3), &t).unwrap().weights;
        assert_eq!((w2.zero, w2.infinity, w2.alpha), (5, 3, [3, 3]));
        let w3 = marked_point_weights(&series(1, 1, 1, 2, 3), &t).unwrap().weights;
        assert_eq!(w3.alpha, [3, 3]);
    }

    #[test]
    fn k_equal_g_has_empty_interior() {
        let e = elliptic_inflection(&series(3, 2, 1, 2, 2), &Toolkit::default()).unwrap();
        assert_eq!(e.interior_degree, 0);
        assert_eq!(e.report.total_degree, e.marked.weights.sum());
    }

    #[test]
    fn compatibility_pairs() {
        let s = [series(3, 2, 1, 2, 3), series(5, 6, 2, 2, 3)];
        let c = compatibility_check(&s).unwrap();
        assert!(c.holds);
        assert_eq!(c.rows[0].sums, vec![6; 5]);
        assert!(compatibility_check(&s[..1]).unwrap().rows.is_empty());
    }

    #[test]
    fn formula_values() {
        assert_eq!(lower_bound_formula(2, 3, 7, 5), 18 + 2 * 5);
        assert_eq!(lower_bound_formula(2, 1, 4, 9), 6 + 2 * 4);
        assert_eq!(attachment_weight(2, 3), 10);
    }
}
