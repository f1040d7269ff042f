use hyperflex_exact::{
    int, isolate_real_roots, isolate_real_roots_with, ratio, resultant_y, sturm_count, BiPoly,
    DescartesIsolator, RationalFunction, Scalar, SturmIsolator, TruncatedSeries, UniPoly,
};
use num_traits::Zero;
use proptest::prelude::*;

/// ∏ (x − r)^m · ∏ (x² + c) with c > 0: real roots and multiplicities known.
fn build(roots: &[(i64, i64, usize)], quads: &[i64]) -> (UniPoly, Vec<(Scalar, usize)>) {
    let mut p = UniPoly::one();
    let mut known: Vec<(Scalar, usize)> = Vec::new();
    for &(n, d, m) in roots {
        let r = ratio(n, d);
        if known.iter().any(|(s, _)| s == &r) {
            continue;
        }
        p = &p * &UniPoly::new(vec![-r.clone(), int(1)]).pow(m);
        known.push((r, m));
    }
    for &c in quads {
        p = &p * &UniPoly::new(vec![int(c), int(0), int(1)]);
    }
    known.sort_by(|a, b| a.0.cmp(&b.0));
    (p, known)
}

fn roots_strategy() -> impl Strategy<Value = (Vec<(i64, i64, usize)>, Vec<i64>)> {
    (
        prop::collection::vec((-12i64..12, 1i64..4, 1usize..4), 0..6),
        prop::collection::vec(1i64..9, 0..3),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplicity_bookkeeping((roots, quads) in roots_strategy()) {
        let (p, known) = build(&roots, &quads);
        prop_assume!(p.deg() > 0);
        let iso = isolate_real_roots(&p).unwrap();
        prop_assert_eq!(iso.len(), known.len());
        let mut real_mult = 0;
        for (r, (x, m)) in iso.iter().zip(&known) {
            let (lo, hi) = r.interval();
            prop_assert!(lo < x && x < hi);
            prop_assert_eq!(r.multiplicity(), *m);
            prop_assert!(!p.eval(lo).is_zero() && !p.eval(hi).is_zero());
            real_mult += r.multiplicity();
        }
        for w in iso.windows(2) {
            prop_assert!(w[0].interval().1 <= w[1].interval().0);
        }
        prop_assert_eq!(real_mult + 2 * quads.len(), p.deg());
    }

    #[test]
    fn sturm_beyond_cauchy_bound_counts_all((roots, quads) in roots_strategy()) {
        let (p, known) = build(&roots, &quads);
        prop_assume!(p.deg() > 0);
        let m = p.cauchy_bound();
        let n = sturm_count(&p, &-m.clone(), &m).unwrap();
        prop_assert_eq!(n, known.len());
    }

    #[test]
    fn isolators_agree((roots, quads) in roots_strategy()) {
        let (p, _) = build(&roots, &quads);
        prop_assume!(p.deg() > 0);
        let a = isolate_real_roots_with(&p, &DescartesIsolator).unwrap();
        let b = isolate_real_roots_with(&p, &SturmIsolator).unwrap();
        prop_assert_eq!(a.len(), b.len());
        for (mut x, mut y) in a.into_iter().zip(b) {
            prop_assert!(x.same_number(&mut y));
        }
    }

    #[test]
    fn resultant_degree_bound(
        a in prop::collection::vec(-5i64..6, 6),
        b in prop::collection::vec(-5i64..6, 3),
    ) {
        // p of total degree ≤ 2 in (x, y), q of total degree ≤ 1.
        let p = BiPoly::new(vec![
            vec![int(a[0]), int(a[1]), int(a[2])],
            vec![int(a[3]), int(a[4])],
            vec![int(a[5])],
        ]);
        let q = BiPoly::new(vec![vec![int(b[0]), int(b[1])], vec![int(b[2])]]);
        if let Ok(r) = resultant_y(&p, &q) {
            prop_assert!(r.is_zero() || r.deg() <= 2);
        }
    }

    #[test]
    fn series_matches_rational_functions(
        n1 in prop::collection::vec(-6i64..7, 1..5),
        d1 in prop::collection::vec(-6i64..7, 1..4),
        n2 in prop::collection::vec(-6i64..7, 1..5),
        d2 in prop::collection::vec(-6i64..7, 1..4),
        pnum in -5i64..6,
    ) {
        let p = ratio(pnum, 2);
        let mk = |n: &[i64], d: &[i64]| {
            let dd = UniPoly::from_ints(d);
            if dd.is_zero() || dd.eval(&p).is_zero() {
                None
            } else {
                Some(RationalFunction::new(UniPoly::from_ints(n), dd).unwrap())
            }
        };
        let (Some(r1), Some(r2)) = (mk(&n1, &d1), mk(&n2, &d2)) else { return Ok(()); };
        let order = 8;
        let u = TruncatedSeries::from_coeffs(0, vec![p.clone(), int(1)], order);
        let s1 = TruncatedSeries::compose_ratfun(&r1, &u).unwrap();
        let s2 = TruncatedSeries::compose_ratfun(&r2, &u).unwrap();
        let prod = TruncatedSeries::compose_ratfun(&r1.mul(&r2), &u).unwrap();
        let lhs = s1.mul(&s2);
        let o = lhs.truncation_order().min(prod.truncation_order());
        for e in 0..o {
            prop_assert_eq!(lhs.coeff(e), prod.coeff(e));
        }
        prop_assert_eq!(s1.coeff(0), r1.eval(&p).unwrap());
        if !r2.is_zero() {
            let q = s1.div(&s2).unwrap();
            let exact = TruncatedSeries::compose_ratfun(&r1.div(&r2).unwrap(), &u).unwrap();
            let o = q.truncation_order().min(exact.truncation_order());
            for e in q.valuation().unwrap_or(o).min(o)..o {
                prop_assert_eq!(q.coeff(e), exact.coeff(e));
            }
        }
    }

    #[test]
    fn polynomial_series_evaluates_exactly(
        c in prop::collection::vec(-9i64..10, 1..6),
        pnum in -5i64..6,
        unum in -7i64..8,
    ) {
        let poly = UniPoly::from_ints(&c);
        let p = ratio(pnum, 3);
        let u = TruncatedSeries::from_coeffs(0, vec![p.clone(), int(1)], 10);
        let s = TruncatedSeries::compose_poly(&poly, &u);
        let t = ratio(unum, 5);
        let mut acc = Scalar::zero();
        for e in (0..10).rev() {
            acc = acc * &t + s.coeff(e);
        }
        prop_assert_eq!(acc, poly.eval(&(&p + &t)));
    }
}
