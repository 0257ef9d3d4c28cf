use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use hankel_cert::functions::TestFunction;
use hankel_cert::grunsky::{coefficients_from_table, CoefficientVector};
use hankel_cert::interval::{Interval, IntervalBox};
use hankel_cert::objective::{DomainPoint, ObjectiveId};
use hankel_cert::optimize::roots::{isolate_roots, Polynomial};
use hankel_cert::scalar::{ExactComplex, Scalar};
use hankel_cert::series::{grunsky_from_series, Series2};

type E = ExactComplex;

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

fn encloses(iv: Interval, value: &BigRational) -> bool {
    exact(iv.lo()) <= *value && *value <= exact(iv.hi())
}

fn interval() -> impl Strategy<Value = Interval> {
    (-1e3f64..1e3, 0f64..10.0).prop_map(|(lo, w)| Interval::new(lo, lo + w))
}

fn member(iv: Interval, t: f64) -> f64 {
    (iv.lo() + t * iv.width()).clamp(iv.lo(), iv.hi())
}

proptest! {
    #[test]
    fn arithmetic_encloses_exact_result(a in interval(), b in interval(), s in 0f64..=1.0, t in 0f64..=1.0) {
        let (x, y) = (exact(member(a, s)), exact(member(b, t)));
        prop_assert!(encloses(a + b, &(&x + &y)));
        prop_assert!(encloses(a - b, &(&x - &y)));
        prop_assert!(encloses(a * b, &(&x * &y)));
        prop_assert!(encloses(-a, &(-&x)));
    }

    #[test]
    fn endpoints_are_outward_rounded(a in -1e3f64..1e3, b in -1e3f64..1e3) {
        let (x, y) = (exact(a), exact(b));
        let p = Interval::point(a) * Interval::point(b);
        prop_assert!(encloses(p, &(&x * &y)));
        let s = Interval::point(a) + Interval::point(b);
        prop_assert!(encloses(s, &(&x + &y)));
    }

    #[test]
    fn sqrt_and_reciprocal_enclose(lo in 1e-6f64..100.0, w in 0f64..10.0) {
        let iv = Interval::new(lo, lo + w);
        let r = iv.sqrt_clamped().unwrap();
        let (rl, rh) = (exact(r.lo()), exact(r.hi()));
        prop_assert!(&rl * &rl <= exact(iv.lo()));
        prop_assert!(&rh * &rh >= exact(iv.hi()));
        let inv = iv.recip_positive().unwrap();
        prop_assert!(exact(inv.lo()) * exact(iv.hi()) <= BigRational::one());
        prop_assert!(exact(inv.hi()) * exact(iv.lo()) >= BigRational::one());
    }

    #[test]
    fn inclusion_is_monotone(a in interval(), b in interval(), shrink in 0f64..0.5) {
        let inner = Interval::new(member(a, shrink), member(a, 1.0 - shrink));
        prop_assert!((inner * b).is_subset_of(&(a * b)));
        prop_assert!((inner + b).is_subset_of(&(a + b)));
        prop_assert!(inner.pow_int(3).is_subset_of(&a.pow_int(3)));
    }

    #[test]
    fn objective_enclosure_contains_samples(
        x0 in 0f64..0.95, y0 in 0f64..0.55, wx in 1e-6f64..0.05, wy in 1e-6f64..0.05,
        s in 0f64..=1.0, t in 0f64..=1.0,
    ) {
        let b = IntervalBox::new(Interval::new(x0, x0 + wx), Interval::new(y0, y0 + wy));
        let p = DomainPoint { x: member(b.x, s), y: member(b.y, t) };
        prop_assume!(p.radicand() >= 0.0);
        for obj in ObjectiveId::ALL {
            let v = obj.eval(p).unwrap();
            let enc = obj.eval_interval(&b).unwrap();
            prop_assert!(enc.contains(v), "{obj} {v} not in {enc:?}");
        }
    }

    #[test]
    fn objectives_match_closed_forms(x in 0f64..1.0, t in 0f64..=1.0) {
        let y = t * ((1.0 - x * x) / 3.0).sqrt();
        let p = DomainPoint::project(x, y);
        let (x, y) = (p.x, p.y);
        let s = p.radicand().max(0.0).sqrt();
        let f1 = 4.0 / 5f64.sqrt() * x * s + x.powi(4) + 4.0 * y * y;
        let f2 = (2.0 / 7f64.sqrt() + 4.0 * x * y + 2.0 * x.powi(3)) * s
            + 0.8 - 0.8 * x * x - 2.4 * y * y + 3.0 * x * x * y * y + 2.0 * y.powi(3);
        prop_assert!((ObjectiveId::F1.eval(p).unwrap() - f1).abs() < 1e-12);
        prop_assert!((ObjectiveId::F2.eval(p).unwrap() - f2).abs() < 1e-12);
    }
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn coefficient_lists() -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(rational(), 1..=6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn odd_transform_table_is_odd_and_round_trips(coeffs in coefficient_lists()) {
        let f = TestFunction::Coefficients(coeffs);
        let odd = f.series::<E>(10).unwrap().odd_transform().unwrap();
        for (n, c) in odd.coeffs().iter().enumerate() {
            prop_assert!(n % 2 == 1 || c.is_zero(), "even coefficient {n} of an odd function");
        }
        let table = grunsky_from_series(&odd, 9).unwrap();
        prop_assert!(table.has_odd_support(0.0));
        let back = coefficients_from_table(&table).unwrap();
        prop_assert_eq!(back, CoefficientVector::from_series(&f.series::<E>(5).unwrap()));
    }

    #[test]
    fn log_of_divided_difference_is_symmetric(coeffs in coefficient_lists()) {
        let f = TestFunction::Coefficients(coeffs).series::<E>(11).unwrap();
        let log = Series2::divided_difference(&f, 5).unwrap().log_unit().unwrap();
        prop_assert!(log.is_symmetric(0.0));
    }

    #[test]
    fn roots_of_products_are_isolated(mut rs in prop::collection::btree_set(-40i64..40, 1..6)) {
        // p(x) = prod (x - r/41): distinct rational roots in (-1, 1).
        let roots: Vec<BigRational> = std::mem::take(&mut rs)
            .into_iter()
            .map(|r| BigRational::new(BigInt::from(r), BigInt::from(41)))
            .collect();
        let mut p = Polynomial::new(vec![BigRational::one()]);
        for r in &roots {
            p = multiply(&p, &Polynomial::new(vec![-r.clone(), BigRational::one()]));
        }
        let found = isolate_roots(&p, &-BigRational::one(), &BigRational::one()).unwrap();
        prop_assert_eq!(found.len(), roots.len());
        for (iv, r) in found.iter().zip(&roots) {
            prop_assert!(iv.lo <= *r && *r <= iv.hi);
            prop_assert!(iv.is_exact() || iv.width() < exact(1e-12));
        }
    }
}

fn multiply(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (a, b) = (a.coeffs(), b.coeffs());
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    Polynomial::new(out)
}

/// `log((k(t) - k(z)) / (t - z))` for `k(z) = z / (1 - z)^2` equals
/// `log(1 - tz) - 2 log(1 - t) - 2 log(1 - z)`.
#[test]
fn koebe_table_matches_power_sums() {
    let k = TestFunction::Koebe.series::<E>(13).unwrap();
    let t = grunsky_from_series(&k, 6).unwrap();
    for p in 0..=6usize {
        for q in p..=6usize {
            let want = match (p, q) {
                (0, 0) => E::zero(),
                (0, q) => E::from_ratio(2, q as i64),
                (p, q) if p == q => E::from_ratio(-1, p as i64),
                _ => E::zero(),
            };
            assert_eq!(t.get(p, q).unwrap(), &want, "omega_({p},{q})");
        }
    }
}

#[test]
fn geometric_table_matches_power_sums() {
    let f = TestFunction::ZOverOneMinusZ.series::<E>(13).unwrap();
    let t = grunsky_from_series(&f, 6).unwrap();
    for p in 0..=6usize {
        for q in p..=6usize {
            let want = if p == 0 && q > 0 { E::from_ratio(1, q as i64) } else { E::zero() };
            assert_eq!(t.get(p, q).unwrap(), &want, "omega_({p},{q})");
        }
    }
}
