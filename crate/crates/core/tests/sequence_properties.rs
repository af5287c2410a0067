use std::sync::Arc;

use ffprng::analysis::{
    correlation_spectrum, exp_sum_rational, lc_profile, linear_complexity, linear_complexity_finite,
    nonlinear_complexity, pattern_count, periodic_correlation, PatternQuery, DEFAULT_MONOMIAL_CAP,
};
use ffprng::bounds::{lc_bound_general, verify_family, BoundInputs, VerifyConfig};
use ffprng::divisor::Divisor;
use ffprng::elliptic::{search_cyclic_curve, Curve};
use ffprng::galois::{Field, Poly};
use ffprng::ratfield::{RatFunction, RationalFunctionField};
use ffprng::seqgen::{generate_sequence, least_period, Family, OrbitSpec, Policy, SeqFunction, Sequence};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rf(p: u64, e: usize) -> Arc<RationalFunctionField> {
    Arc::new(RationalFunctionField::new(Field::new(p, e).unwrap()))
}

fn curve(p: u64, e: usize, t: i64) -> Arc<Curve> {
    Arc::new(search_cyclic_curve(&Field::new(p, e).unwrap(), t).unwrap())
}

fn rational_poly(f: &Field, idx: &[u64]) -> Poly {
    let idx: Vec<u64> = idx.iter().map(|k| k % f.order()).collect();
    Poly::from_indices(f, &idx)
}

fn digits(p: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..p, 1..40)
}

fn sample(fam: &Family) -> Vec<Sequence> {
    fam.iter().collect::<ffprng::Result<_>>().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_law_is_associative(a in any::<usize>(), b in any::<usize>(), c in any::<usize>()) {
        let e = curve(2, 4, 1);
        let pts = e.points();
        let (a, b, c) = (pts[a % pts.len()], pts[b % pts.len()], pts[c % pts.len()]);
        prop_assert_eq!(e.add(&e.add(&a, &b), &c), e.add(&a, &e.add(&b, &c)));
        prop_assert!(e.add(&a, &e.neg(&a)).is_infinity());
        prop_assert_eq!(e.scalar_mul(e.order() as i128, &a), ffprng::elliptic::ECPoint::Infinity);
    }

    #[test]
    fn rational_principal_divisors_have_degree_zero(num in prop::collection::vec(any::<u64>(), 1..5), den in prop::collection::vec(any::<u64>(), 1..5)) {
        let r = rf(3, 2);
        let f = r.field();
        let (a, b) = (rational_poly(f, &num), rational_poly(f, &den));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let z = RatFunction::new(a, b, f).unwrap();
        prop_assert_eq!(r.pole_divisor(&z).unwrap().degree(), r.zero_divisor(&z).unwrap().degree());
    }

    #[test]
    fn constant_shift_adds_trace(seed in any::<u64>(), c in any::<u64>()) {
        let r = rf(3, 2);
        let f = r.field().clone();
        let orbit = OrbitSpec::rational(Arc::clone(&r)).unwrap();
        let place = r.random_place(2, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let basis = r.riemann_roch_basis(&place).unwrap();
        let z = basis[1].clone();
        let c = f.from_index(c % f.order());
        let zc = z.add(&RatFunction::constant(c, &f), &f);
        let a = generate_sequence(&SeqFunction::Rational(z), &orbit).unwrap().digits;
        let b = generate_sequence(&SeqFunction::Rational(zc), &orbit).unwrap().digits;
        let tr = f.trace(&c) as u32;
        let p = f.characteristic() as u32;
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!((x + tr) % p, *y);
        }
        let shift = (seed % orbit.len() as u64) as usize;
        let s = generate_sequence(&SeqFunction::Rational(basis[1].clone()), &orbit.shifted(shift)).unwrap().digits;
        prop_assert_eq!(s, [&a[shift..], &a[..shift]].concat());
        prop_assert_eq!(a.len() % least_period(&a), 0);
    }

    #[test]
    fn linear_complexity_is_at_most_length(s in digits(3)) {
        prop_assert!(linear_complexity_finite(&s, 3) <= s.len());
        prop_assert!(linear_complexity(&s, 3) <= s.len());
        prop_assert_eq!(linear_complexity_finite(&s, 3), *lc_profile(&s, 3).last().unwrap());
    }

    #[test]
    fn profile_jumps_follow_massey_rule(s in digits(2)) {
        let prof = lc_profile(&s, 2);
        let mut prev = 0usize;
        for (i, &l) in prof.iter().enumerate() {
            prop_assert!(l >= prev);
            if l > prev {
                prop_assert_eq!(l, i + 1 - prev);
            }
            prev = l;
        }
    }

    #[test]
    fn correlation_tables_and_symmetry(pair in (1usize..30).prop_flat_map(|n| (prop::collection::vec(0u32..3, n), prop::collection::vec(0u32..3, n)))) {
        let (a, b) = pair;
        let n = a.len();
        let ab = correlation_spectrum(&a, &b, 3).unwrap();
        for (tau, c) in ab.iter().enumerate() {
            prop_assert_eq!(c.table.total(), n as u64);
            let back = periodic_correlation(&b, &a, (n - tau) % n, 3).unwrap().value();
            prop_assert!((c.value() - back.conj()).norm() < 1e-9);
        }
    }

    #[test]
    fn patterns_partition_the_positions(s in digits(2), t in 0usize..5) {
        let n = s.len();
        let positions = vec![0, t % n];
        prop_assume!(positions[0] != positions[1]);
        let mut total = 0;
        for v in 0..4u32 {
            let q = PatternQuery::new(vec![v & 1, v >> 1], positions.clone(), n, 2).unwrap();
            total += pattern_count(&s, &q);
        }
        prop_assert_eq!(total, n);
    }

    #[test]
    fn nonlinear_complexity_decreases_with_degree(s in prop::collection::vec(0u32..2, 1..16)) {
        let l1 = nonlinear_complexity(&s, 2, 1, DEFAULT_MONOMIAL_CAP).unwrap();
        let l2 = nonlinear_complexity(&s, 2, 2, DEFAULT_MONOMIAL_CAP).unwrap();
        prop_assert!(l2 <= l1);
    }

    #[test]
    fn character_sums_are_bounded_by_place_count(num in prop::collection::vec(any::<u64>(), 1..5), den in prop::collection::vec(any::<u64>(), 1..4)) {
        let f = Field::new(2, 3).unwrap();
        let (a, b) = (rational_poly(&f, &num), rational_poly(&f, &den));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let z = RatFunction::new(a, b, &f).unwrap();
        let sum = exp_sum_rational(&z, &f).unwrap();
        prop_assert!(sum.magnitude() <= sum.places as f64 + 1e-9);
    }

    #[test]
    fn lc_bound_grows_with_period(n in 1u64..10_000, extra in 1u64..1000, m in 1u64..4, d in 1u64..5) {
        let base = BoundInputs { q: 64, p: 2, h: 6, genus: 1, n, d, m_star: m, r: 1, m: 1, t: 0 };
        let longer = BoundInputs { n: n + extra, ..base };
        prop_assert!(lc_bound_general(&longer) > lc_bound_general(&base));
    }
}

#[test]
fn curves_satisfy_hasse() {
    for (p, e) in [(2u64, 3usize), (3, 2), (5, 1), (7, 1), (11, 1)] {
        let f = Field::new(p, e).unwrap();
        let q = f.order() as f64;
        for t in -3i64..=3 {
            if let Ok(c) = search_cyclic_curve(&f, t) {
                assert!((c.frobenius_trace() as f64).abs() <= 2.0 * q.sqrt());
                assert_eq!(c.points().len() as u64, c.order());
            }
        }
    }
}

#[test]
fn elliptic_riemann_roch_dimension_is_degree() {
    let e = curve(3, 2, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in 1..=3 {
        let place = e.random_place(d, &mut rng).unwrap();
        let basis = e.riemann_roch_basis(&Divisor::single(place.clone(), 1)).unwrap();
        assert_eq!(basis.len(), d);
        for z in basis.iter().skip(1) {
            let poles = e.pole_divisor(z).unwrap();
            assert_eq!(poles.degree(), e.zero_divisor(z).unwrap().degree());
            assert_eq!(poles.coefficient(&place), 1);
        }
    }
}

#[test]
fn report_serializes_with_all_checks() {
    let fam = Family::rational(rf(2, 5), 2, Policy::Sample { count: 6, seed: 1 }).unwrap();
    let seqs = sample(&fam);
    let report = verify_family(&seqs, &VerifyConfig::default()).unwrap();
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["checks"].as_array().unwrap().len(), report.checks.len());
    let again = serde_json::to_string(&verify_family(&seqs, &VerifyConfig::default()).unwrap()).unwrap();
    assert_eq!(serde_json::to_string(&report).unwrap(), again);
}
