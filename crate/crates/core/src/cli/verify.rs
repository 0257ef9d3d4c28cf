//! Series -> Grunsky table -> identity residuals, quadratic-form slacks and
//! cascade margins for one function.

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::functions::{FunctionError, TestFunction};
use crate::grunsky::{
    derived_omega33, derived_omega35, omega_cascade_bounds, quadratic_form_slack,
    verify_coefficient_identities, CascadeReport, CoefficientVector, GrunskyError, GrunskyTable,
    IdentityResiduals, TestVector,
};
use crate::hankel::HankelValues;
use crate::scalar::Scalar;
use crate::series::{grunsky_from_series, SeriesError};

use super::format::{Row, Section};

pub const DEFAULT_ORDER: usize = 9;
pub const MIN_ORDER: usize = 7;
pub const TEST_VECTORS: usize = 100;
pub const TEST_VECTOR_SEED: u64 = 0x5EED_0F6A;
/// Relative tolerance for identity checks in floating mode.
pub const FLOAT_TOL: f64 = 1e-9;
/// Slack allowed in cascade margins, which are evaluated in `f64`.
pub const CASCADE_TOL: f64 = 1e-12;

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("order {0} is too small; omega_{{1,7}} needs order >= 7")]
    OrderTooSmall(usize),
    #[error(transparent)]
    Function(#[from] FunctionError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Grunsky(#[from] GrunskyError),
}

/// Replacement values for `omega_{1,1}, omega_{1,3}, omega_{1,5}, omega_{1,7}`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OmegaOverrides {
    pub w11: Option<BigRational>,
    pub w13: Option<BigRational>,
    pub w15: Option<BigRational>,
    pub w17: Option<BigRational>,
}

impl OmegaOverrides {
    pub fn is_empty(&self) -> bool {
        self.w11.is_none() && self.w13.is_none() && self.w15.is_none() && self.w17.is_none()
    }

    fn apply<S: Scalar>(&self, t: &mut GrunskyTable<S>) {
        for (q, v) in [(1, &self.w11), (3, &self.w13), (5, &self.w15), (7, &self.w17)] {
            if let Some(v) = v {
                t.set(1, q, S::from_rational(v));
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub function: String,
    pub order: usize,
    pub mode: &'static str,
    pub residuals: [f64; 6],
    pub residuals_exact: [String; 6],
    pub residuals_ok: bool,
    pub omega33_ok: bool,
    pub omega35_ok: bool,
    pub h2_coeffs: String,
    pub h3_coeffs: String,
    pub h2_grunsky: String,
    pub h3_grunsky: String,
    pub hankel_ok: bool,
    pub slack_min: f64,
    pub slack_ok: bool,
    pub cascade: CascadeReport,
    pub cascade_ok: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.residuals_ok
            && self.omega33_ok
            && self.omega35_ok
            && self.hankel_ok
            && self.slack_ok
            && self.cascade_ok
    }

    pub fn json(&self) -> serde_json::Value {
        json!({
            "function": self.function,
            "order": self.order,
            "mode": self.mode,
            "residuals": self.residuals,
            "slack_min": self.slack_min,
            "cascade_margins": self.cascade.margins,
            "checks": {
                "residuals": self.residuals_ok,
                "omega33": self.omega33_ok,
                "omega35": self.omega35_ok,
                "hankel": self.hankel_ok,
                "slack": self.slack_ok,
                "cascade": self.cascade_ok,
            },
            "h2": self.h2_coeffs,
            "h3": self.h3_coeffs,
            "passed": self.passed(),
        })
    }

    pub fn rows(&self) -> Vec<Row> {
        let src = self.function.clone();
        let mut rows = Vec::new();
        for (label, text) in IdentityResiduals::<num_complex::Complex64>::LABELS.iter().zip(&self.residuals_exact) {
            rows.push(Row::new(format!("residual {label}"), text.clone(), &src));
        }
        let flag = |b: bool| if b { "ok" } else { "FAILED" };
        rows.push(Row::new("derived w33", flag(self.omega33_ok), &src));
        rows.push(Row::new("derived w35", flag(self.omega35_ok), &src));
        rows.push(Row::new("H2(2) from coefficients", self.h2_coeffs.clone(), &src));
        rows.push(Row::new("H2(2) from Grunsky", self.h2_grunsky.clone(), &src));
        rows.push(Row::new("H3(1) from coefficients", self.h3_coeffs.clone(), &src));
        rows.push(Row::new("H3(1) from Grunsky", self.h3_grunsky.clone(), &src));
        rows.push(Row::new(format!("min slack over {TEST_VECTORS} vectors"), self.slack_min, &src));
        for (k, m) in self.cascade.margins.iter().enumerate() {
            let value: super::format::Cell = match m {
                Some(m) => (*m).into(),
                None => "negative radicand".into(),
            };
            rows.push(Row::new(format!("cascade margin w1{}", 2 * k + 1), value, &src));
        }
        rows.push(Row::new("passed", flag(self.passed()), &src));
        rows
    }

    pub fn section(&self) -> Section {
        Section {
            key: "verify".into(),
            title: format!("identity verification: {} (order {}, {})", self.function, self.order, self.mode),
            rows: self.rows(),
            json: self.json(),
        }
    }
}

/// The Grunsky table of `f_2 = sqrt(f(z^2))` with all indices `<= order`.
pub fn odd_grunsky_table<S: Scalar>(f: &TestFunction, order: usize) -> Result<GrunskyTable<S>, VerifyError> {
    if order < MIN_ORDER {
        return Err(VerifyError::OrderTooSmall(order));
    }
    let series = f.series::<S>(order + 1)?;
    let f2 = series.odd_transform()?;
    Ok(grunsky_from_series(&f2, order)?)
}

pub fn verify<S: Scalar>(
    f: &TestFunction,
    order: usize,
    overrides: &OmegaOverrides,
) -> Result<VerifyReport, VerifyError> {
    let mut table = odd_grunsky_table::<S>(f, order)?;
    overrides.apply(&mut table);
    let coeffs = CoefficientVector::from_series(&f.series::<S>(order)?);

    let residuals = verify_coefficient_identities(&table, &coeffs)?;
    let residuals_ok = residuals.within(FLOAT_TOL);
    let omega33_ok = derived_omega33(&table)?.close_to(table.get(3, 3)?, FLOAT_TOL);
    let omega35_ok = derived_omega35(&table)?.close_to(table.get(3, 5)?, FLOAT_TOL);

    let from_coeffs = HankelValues::from_coeffs(&coeffs);
    let from_table = HankelValues::from_grunsky(&table)?;
    let hankel_ok = from_coeffs.h2.close_to(&from_table.h2, FLOAT_TOL)
        && from_coeffs.h3.close_to(&from_table.h3, FLOAT_TOL);

    let mut rng = ChaCha8Rng::seed_from_u64(TEST_VECTOR_SEED);
    let mut slack_min = f64::INFINITY;
    let mut slack_ok = true;
    for _ in 0..TEST_VECTORS {
        let x = TestVector::<S>::random(&mut rng);
        let slack = quadratic_form_slack(&table, &x)?;
        let s = slack.re_f64();
        slack_min = slack_min.min(s);
        let scale = x.x1.norm_sqr().re_f64() + x.x3.norm_sqr().re_f64();
        let negative = if S::EXACT { s < 0.0 } else { s < -FLOAT_TOL * scale.max(1.0) };
        if negative {
            slack_ok = false;
        }
    }

    let cascade = omega_cascade_bounds(&table)?;
    let cascade_ok = cascade.margins.iter().all(|m| m.is_some_and(|m| m >= -CASCADE_TOL));

    let render6 = |r: &IdentityResiduals<S>| -> [String; 6] { std::array::from_fn(|k| r.values[k].render()) };
    Ok(VerifyReport {
        function: f.to_string(),
        order,
        mode: if S::EXACT { "exact" } else { "floating" },
        residuals: std::array::from_fn(|k| residuals.values[k].modulus()),
        residuals_exact: render6(&residuals),
        residuals_ok,
        omega33_ok,
        omega35_ok,
        h2_coeffs: from_coeffs.h2.render(),
        h3_coeffs: from_coeffs.h3.render(),
        h2_grunsky: from_table.h2.render(),
        h3_grunsky: from_table.h3.render(),
        hankel_ok,
        slack_min,
        slack_ok,
        cascade,
        cascade_ok,
    })
}
