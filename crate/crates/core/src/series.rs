//! Truncated formal power series in one and two variables.
//!
//! `Series1` holds `c_0 .. c_N`; `Series2` holds `d_{p,q}` for
//! `0 <= p, q <= N` (per-variable truncation). Arithmetic never produces
//! coefficients past the truncation.

use thiserror::Error;

use crate::grunsky::GrunskyTable;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("square root needs inner constant term 1 (series of the form z^2 (1 + ...))")]
    BadLeadingTerm,
    #[error("series is not normalized: expected c0 = 0 and c1 = 1")]
    NotNormalized,
    #[error("series truncated at degree {have}, but degree {needed} is required")]
    InsufficientOrder { needed: usize, have: usize },
    #[error("logarithm needs constant term 1")]
    BadConstantTerm,
    #[error("Grunsky table is not symmetric at ({p}, {q})")]
    Asymmetric { p: usize, q: usize },
}

/// Univariate series `c_0 + c_1 z + ... + c_N z^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series1<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Series1<S> {
    /// Series truncated at `coeffs.len() - 1`. Panics on an empty vector.
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c0");
        Self { coeffs }
    }

    /// Pads with zeros or truncates to degree `order`.
    pub fn with_order(mut coeffs: Vec<S>, order: usize) -> Self {
        coeffs.resize(order + 1, S::zero());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::with_order(Vec::new(), order)
    }

    /// The normalized series `z + a_2 z^2 + ...`, from `a_2, a_3, ...`.
    pub fn normalized(tail: &[S], order: usize) -> Self {
        let mut coeffs = vec![S::zero(), S::one()];
        coeffs.extend_from_slice(tail);
        Self::with_order(coeffs, order.max(1))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn get(&self, n: usize) -> Option<&S> {
        self.coeffs.get(n)
    }

    pub fn is_normalized(&self) -> bool {
        self.coeffs[0].is_zero() && self.coeffs.get(1).is_some_and(|c| c.is_one())
    }

    /// Cauchy product truncated at the smaller of the two orders.
    pub fn mul1(&self, other: &Series1<S>) -> Series1<S> {
        let n = self.order().min(other.order());
        let mut out = vec![S::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series1 { coeffs: out }
    }

    /// `f(z^2)`, truncated at `2N`.
    pub fn substitute_square(&self) -> Series1<S> {
        let n = self.order();
        let mut out = vec![S::zero(); 2 * n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[2 * k] = c.clone();
        }
        Series1 { coeffs: out }
    }

    /// Square root of a series of the form `z^2 (1 + u(z))`, taking the
    /// branch with leading term `z`. The result is truncated at `N - 1`.
    pub fn sqrt_normalized(&self) -> Result<Series1<S>, SeriesError> {
        let c = &self.coeffs;
        if c.len() < 3 || !c[0].is_zero() || !c[1].is_zero() || !c[2].is_one() {
            return Err(SeriesError::BadLeadingTerm);
        }
        // inner = 1 + u, inner_k = c_{k+2}
        let inner = &c[2..];
        let m = inner.len() - 1;
        let half = S::from_ratio(1, 2);
        let mut root = Vec::with_capacity(m + 1);
        root.push(S::one());
        for n in 1..=m {
            let mut acc = inner[n].clone();
            for k in 1..n {
                acc = acc - root[k].clone() * root[n - k].clone();
            }
            root.push(half.clone() * acc);
        }
        let mut out = Vec::with_capacity(m + 2);
        out.push(S::zero());
        out.extend(root);
        Ok(Series1 { coeffs: out })
    }

    /// `f_2(z) = sqrt(f(z^2))` for a normalized `f` truncated at `N`.
    /// The result is odd and exact through degree `2N - 1`.
    pub fn odd_transform(&self) -> Result<Series1<S>, SeriesError> {
        if !self.is_normalized() {
            return Err(SeriesError::NotNormalized);
        }
        self.substitute_square().sqrt_normalized()
    }
}

/// Bivariate series `sum d_{p,q} t^p z^q`, `0 <= p, q <= N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series2<S> {
    n: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> Series2<S> {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            coeffs: vec![S::zero(); (n + 1) * (n + 1)],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut coeffs = Vec::with_capacity((n + 1) * (n + 1));
        for p in 0..=n {
            for q in 0..=n {
                coeffs.push(f(p, q));
            }
        }
        Self { n, coeffs }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: usize, q: usize) -> &S {
        &self.coeffs[p * (self.n + 1) + q]
    }

    fn set(&mut self, p: usize, q: usize, v: S) {
        let n = self.n;
        self.coeffs[p * (n + 1) + q] = v;
    }

    /// `(f(t) - f(z)) / (t - z)`: the coefficient `c_n` feeds every
    /// `t^i z^j` with `i + j = n - 1`.
    pub fn divided_difference(f: &Series1<S>, n: usize) -> Result<Self, SeriesError> {
        let needed = 2 * n + 1;
        if f.order() < needed {
            return Err(SeriesError::InsufficientOrder {
                needed,
                have: f.order(),
            });
        }
        Ok(Self::from_fn(n, |i, j| f.coeffs[i + j + 1].clone()))
    }

    /// Product truncated per variable.
    pub fn mul(&self, other: &Series2<S>) -> Series2<S> {
        let n = self.n.min(other.n);
        let mut out: Series2<S> = Series2::zero(n);
        for p1 in 0..=n {
            for q1 in 0..=n {
                let a = self.get(p1, q1);
                if a.is_zero() {
                    continue;
                }
                for p2 in 0..=(n - p1) {
                    for q2 in 0..=(n - q1) {
                        let b = other.get(p2, q2);
                        if b.is_zero() {
                            continue;
                        }
                        let cur = out.get(p1 + p2, q1 + q2).clone();
                        out.set(p1 + p2, q1 + q2, cur + a.clone() * b.clone());
                    }
                }
            }
        }
        out
    }

    /// `log(self)` for a series with constant term 1.
    ///
    /// Row `p = 0` uses the univariate recurrence in `z`; rows `p >= 1`
    /// come from `d/dt D = D * d/dt L`.
    pub fn log_unit(&self) -> Result<Series2<S>, SeriesError> {
        if !self.get(0, 0).is_one() {
            return Err(SeriesError::BadConstantTerm);
        }
        let n = self.n;
        let mut log: Series2<S> = Series2::zero(n);
        for q in 1..=n {
            let mut acc = self.get(0, q).scale(q as i64, 1);
            for j in 1..q {
                acc = acc - log.get(0, j).scale(j as i64, 1) * self.get(0, q - j).clone();
            }
            log.set(0, q, acc.scale(1, q as i64));
        }
        for p in 1..=n {
            for q in 0..=n {
                let mut acc = self.get(p, q).scale(p as i64, 1);
                for k in 1..=p {
                    for l in 0..=q {
                        if (k, l) == (p, q) {
                            continue;
                        }
                        let d = self.get(p - k, q - l);
                        if d.is_zero() {
                            continue;
                        }
                        acc = acc - log.get(k, l).scale(k as i64, 1) * d.clone();
                    }
                }
                log.set(p, q, acc.scale(1, p as i64));
            }
        }
        Ok(log)
    }

    pub fn is_symmetric(&self, rel_tol: f64) -> bool {
        self.first_asymmetry(rel_tol).is_none()
    }

    fn first_asymmetry(&self, rel_tol: f64) -> Option<(usize, usize)> {
        (0..=self.n)
            .flat_map(|p| (p + 1..=self.n).map(move |q| (p, q)))
            .find(|&(p, q)| !self.get(p, q).close_to(self.get(q, p), rel_tol))
    }
}

/// Relative tolerance for the symmetry check in floating mode.
pub const FLOAT_SYMMETRY_TOL: f64 = 1e-12;

/// Grunsky coefficients `omega_{p,q}`, `0 <= p, q <= n`, of a normalized
/// series: the coefficients of `log((f(t) - f(z)) / (t - z))`.
///
/// Requires `f` truncated at degree `>= 2n + 1` so that every returned
/// entry is exact.
pub fn grunsky_from_series<S: Scalar>(
    f: &Series1<S>,
    n: usize,
) -> Result<GrunskyTable<S>, SeriesError> {
    if !f.is_normalized() {
        return Err(SeriesError::NotNormalized);
    }
    let log = Series2::divided_difference(f, n)?.log_unit()?;
    if let Some((p, q)) = log.first_asymmetry(FLOAT_SYMMETRY_TOL) {
        return Err(SeriesError::Asymmetric { p, q });
    }
    let entries = (0..=n).flat_map(|p| (p..=n).map(move |q| (p, q)));
    Ok(GrunskyTable::from_entries(
        entries.map(|(p, q)| ((p, q), log.get(p, q).clone())),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactComplex;
    use num_traits::Zero;

    type E = ExactComplex;

    fn q(n: i64, d: i64) -> E {
        E::from_ratio(n, d)
    }

    fn ints(v: &[i64]) -> Series1<E> {
        Series1::new(v.iter().map(|&c| q(c, 1)).collect())
    }

    #[test]
    fn cauchy_products() {
        assert_eq!(ints(&[1, 1, 0]).mul1(&ints(&[1, -1, 0])), ints(&[1, 0, -1]));
        assert_eq!(ints(&[0, 1, 0]).mul1(&ints(&[0, 1, 0])), ints(&[0, 0, 1]));
        assert_eq!(ints(&[1, 1, 1]).mul1(&ints(&[1, 0, 0])), ints(&[1, 1, 1]));
    }

    #[test]
    fn sqrt_of_identity_square() {
        let f = Series1::<E>::normalized(&[], 6);
        assert_eq!(f.odd_transform().unwrap(), Series1::with_order(vec![q(0, 1), q(1, 1)], 11));
    }

    #[test]
    fn sqrt_rejects_bad_leading_term() {
        assert_eq!(
            ints(&[0, 0, 2, 1]).sqrt_normalized(),
            Err(SeriesError::BadLeadingTerm)
        );
        assert_eq!(ints(&[0, 1, 1]).sqrt_normalized(), Err(SeriesError::BadLeadingTerm));
        assert_eq!(ints(&[1, 1, 2]).odd_transform(), Err(SeriesError::NotNormalized));
    }

    #[test]
    fn binomial_expansion_of_quadratic() {
        // f = z + a z^2  =>  f_2 = z + (a/2) z^3 - (a^2/8) z^5 + (a^3/16) z^7
        let a = q(3, 1);
        let f = Series1::normalized(&[a], 4);
        let f2 = f.odd_transform().unwrap();
        assert_eq!(f2.order(), 7);
        let expect = [q(0, 1), q(1, 1), q(0, 1), q(3, 2), q(0, 1), q(-9, 8), q(0, 1), q(27, 16)];
        assert_eq!(f2.coeffs(), &expect);
    }

    #[test]
    fn koebe_odd_transform() {
        let f = Series1::normalized(&(2..=8).map(|n| q(n, 1)).collect::<Vec<_>>(), 8);
        let f2 = f.odd_transform().unwrap();
        for (k, c) in f2.coeffs().iter().enumerate() {
            let expect = if k % 2 == 1 { q(1, 1) } else { q(0, 1) };
            assert_eq!(*c, expect, "degree {k}");
        }
        let rot = Series1::normalized(
            &(2..=8).map(|n| q(if n % 2 == 0 { -n } else { n }, 1)).collect::<Vec<_>>(),
            8,
        );
        let g2 = rot.odd_transform().unwrap();
        for (k, c) in g2.coeffs().iter().enumerate() {
            let expect = match k % 4 {
                1 => q(1, 1),
                3 => q(-1, 1),
                _ => q(0, 1),
            };
            assert_eq!(*c, expect, "degree {k}");
        }
    }

    #[test]
    fn log_of_geometric_pair() {
        // f = z/(1-z): (f(t)-f(z))/(t-z) = 1/((1-t)(1-z))
        let f = Series1::normalized(&vec![q(1, 1); 12], 13);
        let t = grunsky_from_series(&f, 6).unwrap();
        for p in 0..=6usize {
            for r in 0..=6usize {
                let expect = match (p, r) {
                    (0, 0) => q(0, 1),
                    (k, 0) | (0, k) => q(1, k as i64),
                    _ => q(0, 1),
                };
                assert_eq!(*t.get(p, r).unwrap(), expect, "({p},{r})");
            }
        }
    }

    #[test]
    fn insufficient_order_is_reported() {
        let f = Series1::<E>::normalized(&[q(2, 1)], 10);
        assert_eq!(
            grunsky_from_series(&f, 5).unwrap_err(),
            SeriesError::InsufficientOrder { needed: 11, have: 10 }
        );
    }

    #[test]
    fn identity_has_zero_table() {
        let f = Series1::<E>::normalized(&[], 19);
        let t = grunsky_from_series(&f, 9).unwrap();
        assert!(t.entries().all(|(_, v)| v.is_zero()));
    }
}
