//! Inflection divisors of monomial linear series on y² = f(x).

use hyperflex_exact::{isolate_square_free, SignOracle, UniPoly};
use num_integer::binomial;
use num_traits::Zero;

use crate::curve::{Branch, CurvePoint, Divisor, DivisorTerm, FFElement, HyperellipticCurve, LocalPoint, XCoord};
use crate::error::{Error, Result};
use crate::registry::Toolkit;
use crate::wronskian::Wronskian;

/// The series spanned by 1, x, …, x^k and x^b·y for b in `y_exponents`,
/// inside L(pole_bound · ∞).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesBasis {
    pub k: usize,
    pub y_exponents: Vec<usize>,
    pub pole_bound: usize,
}

impl SeriesBasis {
    /// H⁰(L(k·D)) on a genus g curve, D = 2·∞.
    pub fn canonical(g: usize, k: usize) -> Self {
        let y_exponents = if k > g { (0..k - g).collect() } else { Vec::new() };
        SeriesBasis { k, y_exponents, pole_bound: 2 * k }
    }

    /// The series H_j read on the cubic model of the j-th elliptic piece of a
    /// genus g family: y = x^{j−1}·Y turns x^b y into x^{b+j−1} Y.
    pub fn elliptic(g: usize, j: usize, k: usize) -> Self {
        assert!(j >= 1 && k >= g);
        SeriesBasis {
            k,
            y_exponents: (j - 1..j - 1 + k - g).collect(),
            pole_bound: 2 * k,
        }
    }

    pub fn elements(&self) -> Vec<FFElement> {
        (0..=self.k)
            .map(FFElement::x_pow)
            .chain(self.y_exponents.iter().map(|&b| FFElement::x_pow_y(b)))
            .collect()
    }

    pub fn dimension(&self) -> usize {
        self.k + 1 + self.y_exponents.len()
    }

    pub fn rank(&self) -> usize {
        self.dimension() - 1
    }
}

/// Order of the Wronskian factor q at the roots of `factor` (a factor of f)
/// and the resulting inflection weight there.
#[derive(Clone, Debug)]
pub struct RamificationWeight {
    pub factor: UniPoly,
    pub order: i64,
    pub weight: i64,
    /// Indices of the real roots of f that are roots of `factor`.
    pub real_roots: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct VanishingCheck {
    pub point: CurvePoint,
    pub orders: Vec<i64>,
    pub weight: i64,
}

#[derive(Clone, Debug)]
pub struct InflectionReport {
    pub genus: usize,
    pub rank: usize,
    pub degree: usize,
    pub wronskian: Wronskian,
    pub ramification: Vec<RamificationWeight>,
    pub infinity_weight: i64,
    /// Weights on the ramification points, with ∞ carrying the smallest
    /// ramification weight; the excess at ∞ is `m_infinity`.
    pub r_part: Divisor,
    pub s_part: Divisor,
    pub m_infinity: i64,
    /// Numerator of q with every root of f removed; its roots are the
    /// x-coordinates of the support of S.
    pub s_numerator: UniPoly,
    pub total_degree: i64,
    pub expected_degree: i64,
    pub real_degree: i64,
    pub real_point_count: usize,
    pub per_component: Vec<i64>,
    pub per_component_points: Vec<usize>,
    pub vanishing_checks: Vec<VanishingCheck>,
}

impl InflectionReport {
    /// Weight at the i-th real root of f.
    pub fn weight_at_root(&self, i: usize) -> Option<i64> {
        self.ramification.iter().find(|r| r.real_roots.contains(&i)).map(|r| r.weight)
    }

    pub fn s_real_degree(&self) -> i64 {
        self.s_part.real_degree()
    }
}

pub fn binom(n: usize, k: usize) -> i64 {
    binomial(n as i64, k as i64)
}

/// (r+1)(d + r(g−1)).
pub fn expected_degree(g: usize, r: usize, d: usize) -> i64 {
    (r as i64 + 1) * (d as i64 + r as i64 * (g as i64 - 1))
}

/// Inflection divisor of |L(kD)| with the default algorithms.
pub fn inflection_divisor(curve: &HyperellipticCurve, k: usize) -> Result<InflectionReport> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    analyze(curve, &SeriesBasis::canonical(curve.genus(), k), &Toolkit::default(), true)
}

/// Weighted real degree and its split over the real components.
pub fn real_inflection_summary(curve: &HyperellipticCurve, k: usize) -> Result<(i64, Vec<i64>)> {
    let r = inflection_divisor(curve, k)?;
    Ok((r.real_degree, r.per_component))
}

/// Inflection data of a monomial series. With `cross_check`, weights at the
/// rational ramification points are recomputed from vanishing sequences.
pub fn analyze(
    curve: &HyperellipticCurve,
    basis: &SeriesBasis,
    tools: &Toolkit,
    cross_check: bool,
) -> Result<InflectionReport> {
    if basis.y_exponents.iter().any(|&b| 2 * b + 2 * curve.genus() + 1 > basis.pole_bound)
        || basis.k * 2 > basis.pole_bound
    {
        return Err(Error::PoleBound);
    }
    let w = tools.wronskian.wronskian(curve, basis)?;
    analyze_wronskian(curve, &w, &basis.elements(), basis.pole_bound, tools, cross_check)
}

/// Assemble the inflection divisor from a Wronskian of `elements`.
pub fn analyze_wronskian(
    curve: &HyperellipticCurve,
    w: &Wronskian,
    elements: &[FFElement],
    pole_bound: usize,
    tools: &Toolkit,
    cross_check: bool,
) -> Result<InflectionReport> {
    let g = curve.genus();
    let f = curve.f();
    let n_comp = curve.real_component_count();
    let r = elements.len() - 1;
    let d = pole_bound;
    let base = binom(r + 1, 2);
    let yp = w.y_power as i64;
    let num = w.q.numerator();
    let den = w.q.denominator();

    let (zeros, s_numerator) = split_by_order(f, num);
    let mut ramification: Vec<RamificationWeight> = Vec::new();
    for (h, e) in zeros {
        if e > 0 {
            ramification.push(RamificationWeight { factor: h, order: e as i64, weight: 0, real_roots: vec![] });
            continue;
        }
        let (poles, _) = split_by_order(&h, den);
        for (h2, e2) in poles {
            ramification.push(RamificationWeight { factor: h2, order: -(e2 as i64), weight: 0, real_roots: vec![] });
        }
    }
    let (_, den_rest) = split_by_order(f, den);
    if den_rest.deg() > 0 {
        return Err(Error::Inconsistency("Wronskian has poles away from the ramification points".into()));
    }
    for rw in &mut ramification {
        rw.weight = 2 * rw.order + yp + base;
    }
    for i in 0..curve.real_roots().len() {
        let root = &curve.real_roots()[i];
        let idx = ramification
            .iter()
            .position(|rw| match curve.rational_root(i) {
                Some(x) => rw.factor.eval(x).is_zero(),
                None => {
                    let z = rw.factor.integer_primitive();
                    let (lo, hi) = root.interval();
                    z.sign_at(lo) != z.sign_at(hi)
                }
            })
            .expect("every root of f lies on one factor");
        ramification[idx].real_roots.push(i);
    }

    let infinity_weight = -2 * (num.deg() as i64 - den.deg() as i64) - yp * (2 * g as i64 + 1) - 3 * base
        + (r as i64 + 1) * d as i64;
    let share = ramification.iter().map(|rw| rw.weight).chain([infinity_weight]).min().unwrap();
    let m_infinity = infinity_weight - share;

    let mut r_part = Divisor::default();
    for rw in &ramification {
        for &i in &rw.real_roots {
            r_part.push(DivisorTerm {
                point: curve.root_point(i),
                multiplicity: rw.weight,
                count: 1,
                real: true,
                component: Some(curve.component_of_root(i)),
            });
        }
        let nonreal = rw.factor.deg() - rw.real_roots.len();
        if nonreal > 0 {
            r_part.push(DivisorTerm {
                point: CurvePoint::Affine {
                    x: XCoord::NonReal { factor: rw.factor.clone(), count: nonreal },
                    branch: Branch::Zero,
                },
                multiplicity: rw.weight,
                count: nonreal,
                real: false,
                component: None,
            });
        }
    }
    r_part.push(DivisorTerm {
        point: CurvePoint::Infinity,
        multiplicity: share,
        count: 1,
        real: true,
        component: Some(curve.infinity_component()),
    });

    let s_part = s_divisor(curve, &s_numerator, tools)?;

    let total_degree = r_part.degree() + s_part.degree() + m_infinity;
    let expected = expected_degree(g, r, d);
    if total_degree != expected {
        return Err(Error::Inconsistency(format!(
            "inflection degree {total_degree} differs from the expected {expected}"
        )));
    }

    let mut vanishing_checks = Vec::new();
    let inf_orders = curve.vanishing_sequence(elements, &LocalPoint::Infinity, d as i64, initial_order(d, g))?;
    let inf_weight = sequence_weight(&inf_orders);
    if inf_weight != infinity_weight {
        return Err(Error::Inconsistency(format!(
            "weight at ∞ is {infinity_weight} from the Wronskian but {inf_weight} from vanishing orders"
        )));
    }
    vanishing_checks.push(VanishingCheck { point: CurvePoint::Infinity, orders: inf_orders, weight: inf_weight });
    if cross_check {
        for rw in &ramification {
            for &i in &rw.real_roots {
                let Some(x) = curve.rational_root(i) else { continue };
                let lp = LocalPoint::Ramified(x.clone());
                let orders = curve.vanishing_sequence(elements, &lp, d as i64, initial_order(d, g))?;
                let wt = sequence_weight(&orders);
                if wt != rw.weight {
                    return Err(Error::Inconsistency(format!(
                        "weight at ({x}, 0) is {} from the Wronskian but {wt} from vanishing orders",
                        rw.weight
                    )));
                }
                vanishing_checks.push(VanishingCheck { point: curve.root_point(i), orders, weight: wt });
            }
        }
    }

    let mut per_component = r_part.per_component(n_comp);
    for (a, b) in per_component.iter_mut().zip(s_part.per_component(n_comp)) {
        *a += b;
    }
    per_component[curve.infinity_component()] += m_infinity;
    let mut per_component_points = r_part.per_component_points(n_comp);
    for (a, b) in per_component_points.iter_mut().zip(s_part.per_component_points(n_comp)) {
        *a += b;
    }

    Ok(InflectionReport {
        genus: g,
        rank: r,
        degree: d,
        wronskian: w.clone(),
        ramification,
        infinity_weight,
        real_degree: r_part.real_degree() + s_part.real_degree() + m_infinity,
        real_point_count: r_part.real_point_count() + s_part.real_point_count(),
        r_part,
        s_part,
        m_infinity,
        s_numerator,
        total_degree,
        expected_degree: expected,
        per_component,
        per_component_points,
        vanishing_checks,
    })
}

/// Initial truncation order for local expansions of a series of degree d.
pub fn initial_order(d: usize, g: usize) -> i64 {
    2 * (d as i64 + g as i64) + 4
}

/// Σ (o_i − i).
pub fn sequence_weight(orders: &[i64]) -> i64 {
    orders.iter().enumerate().map(|(i, o)| o - i as i64).sum()
}

/// Split f into factors on whose roots p vanishes to a common order, and
/// return p with all roots of f removed.
pub fn split_by_order(f: &UniPoly, p: &UniPoly) -> (Vec<(UniPoly, usize)>, UniPoly) {
    let mut levels: Vec<UniPoly> = Vec::new();
    let mut cur = p.clone();
    let mut g = f.monic();
    loop {
        let a = g.gcd(&cur);
        if a.deg() == 0 {
            break;
        }
        cur = cur.div_exact(&a).expect("gcd divides");
        levels.push(a.clone());
        g = a;
    }
    let mut out = Vec::new();
    let mut upper = f.monic();
    for (e, lvl) in levels.iter().enumerate() {
        let part = upper.div_exact(lvl).expect("levels are nested");
        if part.deg() > 0 {
            out.push((part, e));
        }
        upper = lvl.clone();
    }
    if upper.deg() > 0 {
        out.push((upper, levels.len()));
    }
    (out, cur)
}

/// The S divisor: every root p of `numerator` with multiplicity m gives the
/// two points over p, each with multiplicity m.
fn s_divisor(curve: &HyperellipticCurve, numerator: &UniPoly, tools: &Toolkit) -> Result<Divisor> {
    let mut s = Divisor::default();
    if numerator.deg() == 0 {
        return Ok(s);
    }
    let oracle = SignOracle::new(curve.f());
    for (factor, mult) in numerator.square_free_decomposition() {
        let roots = isolate_square_free(&factor, mult, tools.isolator.as_ref());
        let nonreal = factor.deg() - roots.len();
        for mut root in roots {
            let sign = oracle.sign(&mut root);
            if sign == 0 {
                return Err(Error::Inconsistency("S meets the ramification divisor".into()));
            }
            let real = sign > 0;
            let component = if real { curve.component_of_algebraic(&mut root) } else { None };
            let x = match root.exact_value() {
                Some(v) => XCoord::Rational(v.clone()),
                None => XCoord::Real(root.clone()),
            };
            for branch in [Branch::Plus, Branch::Minus] {
                s.push(DivisorTerm {
                    point: CurvePoint::Affine { x: x.clone(), branch },
                    multiplicity: mult as i64,
                    count: 1,
                    real,
                    component,
                });
            }
        }
        if nonreal > 0 {
            for branch in [Branch::Plus, Branch::Minus] {
                s.push(DivisorTerm {
                    point: CurvePoint::Affine {
                        x: XCoord::NonReal { factor: factor.clone(), count: nonreal },
                        branch,
                    },
                    multiplicity: mult as i64,
                    count: nonreal,
                    real: false,
                    component: None,
                });
            }
        }
    }
    Ok(s)
}

/// Per-component degrees mod 2.
pub fn parity_vector(d: &Divisor, curve: &HyperellipticCurve) -> Vec<u8> {
    d.parity_vector(curve.real_component_count())
}

/// Real inflection points per component of a complete series of degree d on a
/// real elliptic curve with n real components and parity vector c.
pub fn elliptic_complete_trichotomy(n: usize, parity: &[u8], d: usize) -> Result<Vec<usize>> {
    if d < 2 {
        return Err(Error::InvalidInput("degree must be at least 2".into()));
    }
    match (n, parity) {
        (1, [c]) if *c as usize % 2 == d % 2 => Ok(vec![d]),
        (2, [a, b]) if (*a + *b) as usize % 2 == d % 2 => Ok(match (a, b) {
            (0, 0) => vec![d, d],
            (1, 1) => vec![0, 0],
            (1, 0) => vec![d, 0],
            _ => vec![0, d],
        }),
        (1, _) | (2, _) => Err(Error::InvalidInput("parity vector does not match the degree".into())),
        _ => Err(Error::InvalidInput(format!("a real elliptic curve has 1 or 2 components, not {n}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperflex_exact::int;

    fn quintic() -> HyperellipticCurve {
        HyperellipticCurve::new(UniPoly::from_roots(&[int(0), int(1), int(2), int(3), int(4)])).unwrap()
    }

    #[test]
    fn canonical_bases() {
        assert_eq!(SeriesBasis::canonical(2, 3).dimension(), 5);
        assert_eq!(SeriesBasis::canonical(2, 2).dimension(), 3);
        assert_eq!(SeriesBasis::canonical(1, 3).elements().len(), 6);
    }

    #[test]
    fn small_k_is_multiple_of_ramification() {
        let r = inflection_divisor(&quintic(), 2).unwrap();
        assert_eq!(r.total_degree, 18);
        assert!(r.s_part.is_empty());
        assert_eq!(r.real_degree, 18);
        assert!(r.ramification.iter().all(|w| w.weight == 3));
    }

    #[test]
    fn genus_two_k_three() {
        let r = inflection_divisor(&quintic(), 3).unwrap();
        assert_eq!(r.total_degree, 50);
        assert_eq!(r.r_part.degree(), 18);
        assert_eq!(r.m_infinity, 0);
        assert_eq!(r.s_part.degree(), 32);
    }

    #[test]
    fn split_orders() {
        let f = UniPoly::from_ints(&[0, -1, 0, 1]);
        let p = &UniPoly::from_ints(&[0, 0, 1]) * &UniPoly::from_ints(&[3, 1]);
        let (parts, rest) = split_by_order(&f, &p);
        assert_eq!(rest.monic(), UniPoly::from_ints(&[3, 1]));
        assert_eq!(parts.iter().map(|(h, e)| h.deg() * e).sum::<usize>(), 2);
    }

    #[test]
    fn trichotomy() {
        assert_eq!(elliptic_complete_trichotomy(1, &[0], 6).unwrap(), vec![6]);
        assert_eq!(elliptic_complete_trichotomy(2, &[0, 0], 6).unwrap(), vec![6, 6]);
        assert_eq!(elliptic_complete_trichotomy(2, &[1, 1], 4).unwrap(), vec![0, 0]);
        assert!(elliptic_complete_trichotomy(2, &[1, 0], 4).is_err());
    }
}
