//! Second- and third-order Hankel determinants, from Taylor coefficients
//! and from Grunsky tables.

use crate::grunsky::{CoefficientVector, GrunskyError, GrunskyTable};
use crate::scalar::Scalar;

/// `H_2(2)` and `H_3(1)` of a single function.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelValues<S> {
    pub h2: S,
    pub h3: S,
}

impl<S: Scalar> HankelValues<S> {
    pub fn from_coeffs(c: &CoefficientVector<S>) -> Self {
        Self {
            h2: h2_from_coeffs(c),
            h3: h3_from_coeffs(c),
        }
    }

    pub fn from_grunsky(t: &GrunskyTable<S>) -> Result<Self, GrunskyError> {
        Ok(Self {
            h2: h2_from_grunsky(t)?,
            h3: h3_from_grunsky(t)?,
        })
    }
}

/// Earlier and improved upper bounds for `|H_2(2)|` and `|H_3(1)|` over
/// the class of univalent functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceBounds {
    pub h2_old: f64,
    pub h3_old: f64,
    pub h2_new: f64,
    pub h3_new: f64,
}

impl ReferenceBounds {
    pub fn published() -> Self {
        Self {
            h2_old: 11.0 / 3.0,
            h3_old: (32.0 + 285f64.sqrt()) / 15.0,
            h2_new: 1.3614,
            h3_new: 1.6787,
        }
    }
}

/// `a_2 a_4 - a_3^2`.
pub fn h2_from_coeffs<S: Scalar>(c: &CoefficientVector<S>) -> S {
    c.a2.clone() * c.a4.clone() - c.a3.clone() * c.a3.clone()
}

/// Cofactor expansion of the 3x3 Hankel matrix along its first row:
/// `a_3 (a_2 a_4 - a_3^2) - a_4 (a_4 - a_2 a_3) + a_5 (a_3 - a_2^2)`.
pub fn h3_from_coeffs<S: Scalar>(c: &CoefficientVector<S>) -> S {
    let CoefficientVector { a2, a3, a4, a5 } = c.clone();
    a3.clone() * h2_from_coeffs(c) - a4.clone() * (a4 - a2.clone() * a3.clone())
        + a5 * (a3 - a2.clone() * a2)
}

/// `4 w11 w15 - w11^4 - 4 w13^2`.
pub fn h2_from_grunsky<S: Scalar>(t: &GrunskyTable<S>) -> Result<S, GrunskyError> {
    let (w11, w13, w15) = (t.get(1, 1)?.clone(), t.get(1, 3)?.clone(), t.get(1, 5)?.clone());
    let w11_2 = w11.clone() * w11.clone();
    Ok((w11 * w15).scale(4, 1) - w11_2.clone() * w11_2 - (w13.clone() * w13).scale(4, 1))
}

/// `2 w17 (2 w13 - w11^2) + 4 w11 w13 w15 + 2 w11^3 w15 - 3 w11^2 w13^2
/// - 2 w13^3 - 4 w15^2`.
pub fn h3_from_grunsky<S: Scalar>(t: &GrunskyTable<S>) -> Result<S, GrunskyError> {
    let w11 = t.get(1, 1)?.clone();
    let w13 = t.get(1, 3)?.clone();
    let w15 = t.get(1, 5)?.clone();
    let w17 = t.get(1, 7)?.clone();
    let w11_2 = w11.clone() * w11.clone();
    let w13_2 = w13.clone() * w13.clone();

    Ok((w17 * (w13.scale(2, 1) - w11_2.clone())).scale(2, 1)
        + (w11.clone() * w13.clone() * w15.clone()).scale(4, 1)
        + (w11_2.clone() * w11 * w15.clone()).scale(2, 1)
        - (w11_2 * w13_2.clone()).scale(3, 1)
        - (w13_2 * w13).scale(2, 1)
        - (w15.clone() * w15).scale(4, 1))
}

/// `a_4` and `a_5` with `omega_{3,3}` and `omega_{3,5}` eliminated:
/// `a_4 = 2 (w15 + 3 w11 w13 + 2 w11^3)`,
/// `a_5 = 2 w17 + 6 w11 w15 + 12 w11^2 w13 + 3 w13^2 + 5 w11^4`.
pub fn reduced_a4_a5<S: Scalar>(t: &GrunskyTable<S>) -> Result<(S, S), GrunskyError> {
    let w11 = t.get(1, 1)?.clone();
    let w13 = t.get(1, 3)?.clone();
    let w15 = t.get(1, 5)?.clone();
    let w17 = t.get(1, 7)?.clone();
    let w11_2 = w11.clone() * w11.clone();
    let w11_3 = w11_2.clone() * w11.clone();

    let a4 = (w15.clone() + (w11.clone() * w13.clone()).scale(3, 1) + w11_3.scale(2, 1)).scale(2, 1);
    let a5 = w17.scale(2, 1)
        + (w11 * w15).scale(6, 1)
        + (w11_2.clone() * w13.clone()).scale(12, 1)
        + (w13.clone() * w13).scale(3, 1)
        + (w11_2.clone() * w11_2).scale(5, 1);
    Ok((a4, a5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactComplex;

    type E = ExactComplex;

    fn q(n: i64) -> E {
        E::from_ratio(n, 1)
    }

    fn koebe_like(s: i64) -> GrunskyTable<E> {
        GrunskyTable::zero(9)
            .with_entry(1, 1, q(s))
            .with_entry(3, 3, E::from_ratio(s, 3))
    }

    #[test]
    fn determinants_from_coefficients() {
        let k = CoefficientVector::<E>::from_ints([2, 3, 4, 5]);
        assert_eq!(h2_from_coeffs(&k), q(-1));
        assert_eq!(h3_from_coeffs(&k), q(0));
        let z = CoefficientVector::<E>::zero();
        assert_eq!(h2_from_coeffs(&z), q(0));
        assert_eq!(h3_from_coeffs(&z), q(0));
        let odd = CoefficientVector::<E>::from_ints([0, 1, 0, 1]);
        assert_eq!(h2_from_coeffs(&odd), q(-1));
        assert_eq!(h3_from_coeffs(&odd), q(0));
        let rot = CoefficientVector::<E>::from_ints([-2, 3, -4, 5]);
        assert_eq!(h3_from_coeffs(&rot), q(0));
    }

    #[test]
    fn determinants_from_grunsky() {
        assert_eq!(h2_from_grunsky(&koebe_like(1)).unwrap(), q(-1));
        assert_eq!(h2_from_grunsky(&koebe_like(-1)).unwrap(), q(-1));
        assert_eq!(h3_from_grunsky(&koebe_like(1)).unwrap(), q(0));
        assert_eq!(h3_from_grunsky(&koebe_like(-1)).unwrap(), q(0));
        let z = GrunskyTable::<E>::zero(9);
        assert_eq!(h2_from_grunsky(&z).unwrap(), q(0));
        assert_eq!(h3_from_grunsky(&z).unwrap(), q(0));
    }

    #[test]
    fn reduced_coefficients() {
        assert_eq!(reduced_a4_a5(&koebe_like(1)).unwrap(), (q(4), q(5)));
        assert_eq!(reduced_a4_a5(&koebe_like(-1)).unwrap(), (q(-4), q(5)));
        assert_eq!(reduced_a4_a5(&GrunskyTable::<E>::zero(9)).unwrap(), (q(0), q(0)));
    }

    #[test]
    fn reference_bounds_improve() {
        let r = ReferenceBounds::published();
        assert!(r.h2_new < r.h2_old);
        assert!(r.h3_new < r.h3_old);
        assert!((r.h3_old - 3.258796).abs() < 1e-6);
    }
}
