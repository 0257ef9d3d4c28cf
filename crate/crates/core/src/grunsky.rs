//! Grunsky tables and the relations between the odd-transform Grunsky
//! coefficients `omega_{p,q}` of `f_2(z) = sqrt(f(z^2))` and the Taylor
//! coefficients `a_2 .. a_5` of `f`.
//!
//! Indices are the actual powers: `omega_{1,3}` is the coefficient of
//! `t z^3` in the expansion for `f_2`.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GrunskyError {
    #[error("Grunsky coefficient omega_{{{p},{q}}} is not in the table")]
    MissingIndex { p: usize, q: usize },
    #[error("cascade level {level} has a negative radicand {radicand}")]
    NegativeRadicand { level: usize, radicand: f64 },
    #[error("cascade bound {level} violated by {margin}")]
    CascadeViolated { level: usize, margin: f64 },
}

/// Symmetric table `omega_{p,q} = omega_{q,p}`. Only `p <= q` is stored, so
/// symmetry holds by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GrunskyTable<S> {
    omega: BTreeMap<(usize, usize), S>,
}

fn key(p: usize, q: usize) -> (usize, usize) {
    (p.min(q), p.max(q))
}

impl<S: Scalar> GrunskyTable<S> {
    /// Builds a table from `((p, q), value)` pairs. Later pairs overwrite
    /// earlier ones, including their transposes.
    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, usize), S)>) -> Self {
        let omega = entries
            .into_iter()
            .map(|((p, q), v)| (key(p, q), v))
            .collect();
        Self { omega }
    }

    /// All entries `0 <= p, q <= n` set to zero.
    pub fn zero(n: usize) -> Self {
        Self::from_entries((0..=n).flat_map(|p| (p..=n).map(move |q| ((p, q), S::zero()))))
    }

    /// Largest index present, or `None` for an empty table.
    pub fn max_index(&self) -> Option<usize> {
        self.omega.keys().map(|&(_, q)| q).max()
    }

    pub fn get(&self, p: usize, q: usize) -> Result<&S, GrunskyError> {
        self.omega
            .get(&key(p, q))
            .ok_or(GrunskyError::MissingIndex { p, q })
    }

    fn w(&self, p: usize, q: usize) -> Result<S, GrunskyError> {
        self.get(p, q).cloned()
    }

    /// Replaces `omega_{p,q}` (and its transpose).
    pub fn set(&mut self, p: usize, q: usize, value: S) {
        self.omega.insert(key(p, q), value);
    }

    pub fn with_entry(mut self, p: usize, q: usize, value: S) -> Self {
        self.set(p, q, value);
        self
    }

    /// Stored entries with `p <= q`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &S)> {
        self.omega.iter().map(|(&k, v)| (k, v))
    }

    /// True when every entry with `p + q` odd vanishes, as it must for the
    /// table of an odd function.
    pub fn has_odd_support(&self, tol: f64) -> bool {
        self.entries()
            .filter(|((p, q), _)| (p + q) % 2 == 1)
            .all(|(_, v)| if S::EXACT { v.is_zero() } else { v.modulus() <= tol })
    }
}

/// Taylor coefficients `a_2 .. a_5` of `f`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector<S> {
    pub a2: S,
    pub a3: S,
    pub a4: S,
    pub a5: S,
}

impl<S: Scalar> CoefficientVector<S> {
    pub fn new(a2: S, a3: S, a4: S, a5: S) -> Self {
        Self { a2, a3, a4, a5 }
    }

    pub fn zero() -> Self {
        Self::new(S::zero(), S::zero(), S::zero(), S::zero())
    }

    pub fn from_ints(a: [i64; 4]) -> Self {
        Self::new(
            S::from_ratio(a[0], 1),
            S::from_ratio(a[1], 1),
            S::from_ratio(a[2], 1),
            S::from_ratio(a[3], 1),
        )
    }

    /// Reads `a_2 .. a_5` from a normalized series (missing terms are 0).
    pub fn from_series(f: &crate::series::Series1<S>) -> Self {
        let a = |n: usize| f.get(n).cloned().unwrap_or_else(S::zero);
        Self::new(a(2), a(3), a(4), a(5))
    }

    pub fn as_array(&self) -> [&S; 4] {
        [&self.a2, &self.a3, &self.a4, &self.a5]
    }
}

/// Weights `x_1`, `x_3` of the two-term Grunsky test sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct TestVector<S> {
    pub x1: S,
    pub x3: S,
}

impl<S: Scalar> TestVector<S> {
    pub fn new(x1: S, x3: S) -> Self {
        Self { x1, x3 }
    }

    /// Random complex weights with components `k/d`, `|k| <= 100`,
    /// `1 <= d <= 100`, so exact fields stay exact.
    pub fn random(rng: &mut impl Rng) -> Self {
        let mut component = || {
            let re = S::from_ratio(rng.gen_range(-100..=100), rng.gen_range(1..=100));
            let im = S::from_ratio(rng.gen_range(-100..=100), rng.gen_range(1..=100));
            let i = S::from_complex64(num_complex::Complex64::new(0.0, 1.0));
            re + i * im
        };
        let x1 = component();
        let x3 = component();
        Self { x1, x3 }
    }
}

/// `a_2 .. a_5` in terms of the odd-transform Grunsky coefficients.
pub fn coefficients_from_table<S: Scalar>(
    t: &GrunskyTable<S>,
) -> Result<CoefficientVector<S>, GrunskyError> {
    let (w11, w13, w33, w35) = (t.w(1, 1)?, t.w(1, 3)?, t.w(3, 3)?, t.w(3, 5)?);
    let w11_2 = w11.clone() * w11.clone();
    let w11_3 = w11_2.clone() * w11.clone();
    let w11_4 = w11_3.clone() * w11.clone();

    let a2 = w11.scale(2, 1);
    let a3 = w13.scale(2, 1) + w11_2.scale(3, 1);
    let a4 = w33.scale(2, 1) + (w11.clone() * w13.clone()).scale(8, 1) + w11_3.scale(10, 3);
    let a5 = w35.scale(2, 1)
        + (w11.clone() * w33).scale(8, 1)
        + (w13.clone() * w13.clone()).scale(5, 1)
        + (w11_2 * w13).scale(18, 1)
        + w11_4.scale(7, 3);
    Ok(CoefficientVector::new(a2, a3, a4, a5))
}

/// The six relation residuals: `a_i` minus its Grunsky expression for
/// `i = 2..5`, then the two constraint relations among the omegas.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityResiduals<S> {
    pub values: [S; 6],
}

impl<S: Scalar> IdentityResiduals<S> {
    pub const LABELS: [&'static str; 6] = [
        "a2 - 2w11",
        "a3 - (2w13 + 3w11^2)",
        "a4 - (2w33 + 8w11w13 + 10/3 w11^3)",
        "a5 - (2w35 + 8w11w33 + 5w13^2 + 18w11^2w13 + 7/3 w11^4)",
        "3w15 - 3w11w13 + w11^3 - 3w33",
        "w17 - w35 - w11w33 - w13^2 + 1/3 w11^4",
    ];

    pub fn all_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn max_modulus(&self) -> f64 {
        self.values.iter().map(Scalar::modulus).fold(0.0, f64::max)
    }

    /// Zero in exact fields, `<= tol` in floating ones.
    pub fn within(&self, tol: f64) -> bool {
        if S::EXACT {
            self.all_zero()
        } else {
            self.max_modulus() <= tol
        }
    }
}

pub fn verify_coefficient_identities<S: Scalar>(
    t: &GrunskyTable<S>,
    c: &CoefficientVector<S>,
) -> Result<IdentityResiduals<S>, GrunskyError> {
    let expressed = coefficients_from_table(t)?;
    let (w11, w13, w15, w17) = (t.w(1, 1)?, t.w(1, 3)?, t.w(1, 5)?, t.w(1, 7)?);
    let (w33, w35) = (t.w(3, 3)?, t.w(3, 5)?);
    let w11_3 = w11.clone() * w11.clone() * w11.clone();
    let w11_4 = w11_3.clone() * w11.clone();

    let constraint5 =
        w15.scale(3, 1) - (w11.clone() * w13.clone()).scale(3, 1) + w11_3 - w33.scale(3, 1);
    let constraint6 =
        w17 - w35 - w11 * w33 - w13.clone() * w13 + w11_4.scale(1, 3);

    Ok(IdentityResiduals {
        values: [
            c.a2.clone() - expressed.a2,
            c.a3.clone() - expressed.a3,
            c.a4.clone() - expressed.a4,
            c.a5.clone() - expressed.a5,
            constraint5,
            constraint6,
        ],
    })
}

/// `omega_{3,3}` recovered from `omega_{1,1}, omega_{1,3}, omega_{1,5}`.
pub fn derived_omega33<S: Scalar>(t: &GrunskyTable<S>) -> Result<S, GrunskyError> {
    let (w11, w13, w15) = (t.w(1, 1)?, t.w(1, 3)?, t.w(1, 5)?);
    let w11_3 = w11.clone() * w11.clone() * w11.clone();
    Ok(w15 - w11 * w13 + w11_3.scale(1, 3))
}

/// `omega_{3,5}` recovered from `omega_{1,1}, omega_{1,3}, omega_{1,5}, omega_{1,7}`.
pub fn derived_omega35<S: Scalar>(t: &GrunskyTable<S>) -> Result<S, GrunskyError> {
    let (w11, w13, w15, w17) = (t.w(1, 1)?, t.w(1, 3)?, t.w(1, 5)?, t.w(1, 7)?);
    Ok(w17 - w11.clone() * w15 + w11.clone() * w11 * w13.clone() - w13.clone() * w13)
}

/// Right side minus left side of the two-term Grunsky inequality
///
/// `sum_{q in 1,3,5,7} q |omega_{1,q} x_1 + omega_{3,q} x_3|^2 <= |x_1|^2 + |x_3|^2 / 3`.
///
/// Nonnegative for every univalent `f`. The value is real (zero imaginary part).
pub fn quadratic_form_slack<S: Scalar>(
    t: &GrunskyTable<S>,
    x: &TestVector<S>,
) -> Result<S, GrunskyError> {
    let mut rhs = x.x1.norm_sqr() + x.x3.norm_sqr().scale(1, 3);
    for q in [1usize, 3, 5, 7] {
        let term = t.w(1, q)? * x.x1.clone() + t.w(3, q)? * x.x3.clone();
        rhs = rhs - term.norm_sqr().scale(q as i64, 1);
    }
    Ok(rhs)
}

/// Margins of the four modulus bounds on `omega_{1,1} .. omega_{1,7}`.
///
/// `margins[k]` is the bound minus `|omega_{1,2k+1}|`; `None` when the bound's
/// radicand is negative (an earlier level already failed).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CascadeReport {
    pub margins: [Option<f64>; 4],
    pub radicands: [f64; 4],
}

impl CascadeReport {
    pub fn holds(&self) -> bool {
        self.check().is_ok()
    }

    pub fn check(&self) -> Result<(), GrunskyError> {
        for (level, (margin, radicand)) in self.margins.iter().zip(self.radicands).enumerate() {
            match margin {
                None => {
                    return Err(GrunskyError::NegativeRadicand {
                        level: level + 1,
                        radicand,
                    })
                }
                Some(m) if *m < 0.0 => {
                    return Err(GrunskyError::CascadeViolated {
                        level: level + 1,
                        margin: *m,
                    })
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// Floating radicands above `-FLOAT_RADICAND_TOL` are rounding noise and read as 0.
pub const FLOAT_RADICAND_TOL: f64 = 1e-12;

pub fn omega_cascade_bounds<S: Scalar>(t: &GrunskyTable<S>) -> Result<CascadeReport, GrunskyError> {
    let omegas = [t.w(1, 1)?, t.w(1, 3)?, t.w(1, 5)?, t.w(1, 7)?];
    let weights = [1i64, 3, 5, 7];
    let mut margins = [None; 4];
    let mut radicands = [0.0; 4];
    // exact running value of 1 - sum_{j<k} (2j+1) |omega_{1,2j+1}|^2
    let mut remaining = S::one();
    for k in 0..4 {
        let mut radicand = remaining.re_f64();
        if !S::EXACT && radicand < 0.0 && radicand > -FLOAT_RADICAND_TOL {
            radicand = 0.0;
        }
        radicands[k] = radicand;
        if radicand >= 0.0 {
            let bound = (radicand / weights[k] as f64).sqrt();
            margins[k] = Some(bound - omegas[k].modulus());
        }
        remaining = remaining - omegas[k].norm_sqr().scale(weights[k], 1);
    }
    Ok(CascadeReport { margins, radicands })
}

/// `2 omega_{1,3} - omega_{1,1}^2`, which equals `a_3 - a_2^2`.
pub fn fekete_szego<S: Scalar>(t: &GrunskyTable<S>) -> Result<S, GrunskyError> {
    let w11 = t.w(1, 1)?;
    Ok(t.w(1, 3)?.scale(2, 1) - w11.clone() * w11)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactComplex;

    type E = ExactComplex;

    fn q(n: i64, d: i64) -> E {
        E::from_ratio(n, d)
    }

    /// Closed-form table of log(1 + s t z) - log(1 - t^2) - log(1 - z^2),
    /// the odd transform of the Koebe function (s = 1) or its rotation by
    /// pi (s = -1), through index 9.
    pub(crate) fn koebe_f2_table(s: i64) -> GrunskyTable<E> {
        let mut t = GrunskyTable::zero(9);
        for k in 1..=9i64 {
            // log(1 + s t z): coefficient of (tz)^k is -(-s)^k / k
            let sign = if k % 2 == 1 { s } else { -1 };
            t.set(k as usize, k as usize, q(sign, k));
        }
        for k in (2..=9usize).step_by(2) {
            t.set(k, 0, q(2, k as i64));
        }
        t
    }

    #[test]
    fn koebe_coefficients() {
        let c = coefficients_from_table(&koebe_f2_table(1)).unwrap();
        assert_eq!(c, CoefficientVector::from_ints([2, 3, 4, 5]));
        let r = coefficients_from_table(&koebe_f2_table(-1)).unwrap();
        assert_eq!(r, CoefficientVector::from_ints([-2, 3, -4, 5]));
        let z = coefficients_from_table(&GrunskyTable::<E>::zero(9)).unwrap();
        assert_eq!(z, CoefficientVector::zero());
    }

    #[test]
    fn residuals_vanish_on_closed_forms() {
        for (s, c) in [(1, [2, 3, 4, 5]), (-1, [-2, 3, -4, 5])] {
            let res = verify_coefficient_identities(
                &koebe_f2_table(s),
                &CoefficientVector::from_ints(c),
            )
            .unwrap();
            assert!(res.all_zero(), "{res:?}");
        }
        let zero = verify_coefficient_identities(&GrunskyTable::<E>::zero(9), &CoefficientVector::zero())
            .unwrap();
        assert!(zero.all_zero());
    }

    #[test]
    fn derived_omegas() {
        let k = koebe_f2_table(1);
        assert_eq!(derived_omega33(&k).unwrap(), q(1, 3));
        assert_eq!(derived_omega35(&k).unwrap(), q(0, 1));
        let r = koebe_f2_table(-1);
        assert_eq!(derived_omega33(&r).unwrap(), q(-1, 3));
        assert_eq!(derived_omega35(&r).unwrap(), q(0, 1));
        let z = GrunskyTable::<E>::zero(9);
        assert_eq!(derived_omega33(&z).unwrap(), q(0, 1));
        assert_eq!(derived_omega35(&z).unwrap(), q(0, 1));
    }

    #[test]
    fn koebe_is_extremal_for_the_quadratic_form() {
        let k = koebe_f2_table(1);
        let slack = |x1, x3| quadratic_form_slack(&k, &TestVector::new(q(x1, 1), q(x3, 1))).unwrap();
        assert_eq!(slack(1, 0), q(0, 1));
        assert_eq!(slack(0, 1), q(0, 1));
        let z = GrunskyTable::<E>::zero(9);
        let x = TestVector::new(q(1, 1), q(0, 1));
        assert_eq!(quadratic_form_slack(&z, &x).unwrap(), q(1, 1));
    }

    #[test]
    fn cascade_margins() {
        let k = omega_cascade_bounds(&koebe_f2_table(1)).unwrap();
        assert_eq!(k.margins, [Some(0.0); 4]);
        assert!(k.holds());

        let z = omega_cascade_bounds(&GrunskyTable::<E>::zero(9)).unwrap();
        let expect = [1.0, 1.0 / 3f64.sqrt(), 1.0 / 5f64.sqrt(), 1.0 / 7f64.sqrt()];
        for (m, e) in z.margins.iter().zip(expect) {
            assert!((m.unwrap() - e).abs() < 1e-15);
        }

        let bad = GrunskyTable::<E>::zero(9).with_entry(1, 1, q(3, 2));
        let report = omega_cascade_bounds(&bad).unwrap();
        assert_eq!(report.margins[0], Some(-0.5));
        assert_eq!(report.margins[1], None);
        assert!(matches!(
            report.check(),
            Err(GrunskyError::CascadeViolated { level: 1, .. })
        ));
    }

    #[test]
    fn missing_entries_are_reported() {
        let t = GrunskyTable::from_entries([((1, 1), q(1, 1)), ((1, 3), q(0, 1))]);
        assert_eq!(
            coefficients_from_table(&t),
            Err(GrunskyError::MissingIndex { p: 3, q: 3 })
        );
        assert_eq!(
            derived_omega35(&t),
            Err(GrunskyError::MissingIndex { p: 1, q: 5 })
        );
        assert_eq!(t.get(3, 1).unwrap(), &q(0, 1));
    }

    #[test]
    fn fekete_szego_matches_coefficients() {
        let k = koebe_f2_table(1);
        let c = coefficients_from_table(&k).unwrap();
        assert_eq!(
            fekete_szego(&k).unwrap(),
            c.a3.clone() - c.a2.clone() * c.a2.clone()
        );
    }
}
