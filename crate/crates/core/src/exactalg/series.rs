//! Laurent polynomials in `t` over [`LaurentPoly`], and truncated series
//! expansions of rational functions in `t`. These carry the bigraded
//! Poincare series of colored unknot homology.

use std::collections::BTreeMap;

use super::laurent::LaurentPoly;
use crate::{Error, Result};

/// Polynomial in `t` (Laurent: negative powers allowed) whose coefficients
/// are Laurent polynomials in `q^{1/D}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TPoly {
    coeffs: BTreeMap<i64, LaurentPoly>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly { coeffs: BTreeMap::new() }
    }

    pub fn from_coeffs(it: impl IntoIterator<Item = (i64, LaurentPoly)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in it {
            if !c.is_zero() {
                let entry = coeffs.entry(e).or_insert_with(LaurentPoly::zero);
                *entry = entry.add(&c);
            }
        }
        coeffs.retain(|_, c: &mut LaurentPoly| !c.is_zero());
        TPoly { coeffs }
    }

    pub fn term(t_exp: i64, c: LaurentPoly) -> Self {
        Self::from_coeffs([(t_exp, c)])
    }

    pub fn one() -> Self {
        Self::term(0, LaurentPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, t_exp: i64) -> LaurentPoly {
        self.coeffs.get(&t_exp).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn t_min(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn t_max(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .chain(other.coeffs.iter())
                .map(|(e, c)| (*e, c.clone())),
        )
    }

    pub fn neg(&self) -> Self {
        TPoly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let entry = acc.entry(e1 + e2).or_insert_with(LaurentPoly::zero);
                *entry = entry.add(&c1.mul(c2));
            }
        }
        acc.retain(|_, c| !c.is_zero());
        TPoly { coeffs: acc }
    }

    /// Substitutes `t = 1`, summing all coefficients.
    pub fn eval_t_one(&self) -> LaurentPoly {
        self.coeffs
            .values()
            .fold(LaurentPoly::zero(), |acc, c| acc.add(c))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &LaurentPoly)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }
}

/// Truncated series in `t` with [`LaurentPoly`] coefficients. Coefficients
/// above `t_max` are unknown, not zero.
#[derive(Clone, Debug, PartialEq)]
pub struct BiGradedSeries {
    t_min: i64,
    t_max: i64,
    coeffs: BTreeMap<i64, LaurentPoly>,
}

impl BiGradedSeries {
    pub fn new(t_min: i64, t_max: i64, it: impl IntoIterator<Item = (i64, LaurentPoly)>) -> Self {
        assert!(t_min <= t_max);
        let mut coeffs = BTreeMap::new();
        for (e, c) in it {
            assert!(e >= t_min && e <= t_max, "coefficient outside truncation window");
            if !c.is_zero() {
                let entry = coeffs.entry(e).or_insert_with(LaurentPoly::zero);
                *entry = entry.add(&c);
            }
        }
        coeffs.retain(|_, c: &mut LaurentPoly| !c.is_zero());
        BiGradedSeries { t_min, t_max, coeffs }
    }

    pub fn t_min(&self) -> i64 {
        self.t_min
    }

    pub fn t_max(&self) -> i64 {
        self.t_max
    }

    pub fn truncation_order(&self) -> i64 {
        self.t_max
    }

    /// Coefficient of `t^k`; `None` beyond the truncation order.
    pub fn coeff(&self, k: i64) -> Option<LaurentPoly> {
        if k > self.t_max {
            return None;
        }
        Some(self.coeffs.get(&k).cloned().unwrap_or_else(LaurentPoly::zero))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &LaurentPoly)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        let mut terms = Vec::new();
        for (e, c) in &self.coeffs {
            terms.push(serde_json::json!({"t": e, "coeff": c.to_json()?}));
        }
        Ok(serde_json::json!({
            "t_min": self.t_min,
            "t_max": self.t_max,
            "terms": terms,
        }))
    }
}

impl std::fmt::Display for BiGradedSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        } else {
            let mut first = true;
            for (e, c) in &self.coeffs {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                if *e == 0 {
                    write!(f, "({c})")?;
                } else {
                    write!(f, "({c})*t^{e}")?;
                }
            }
        }
        write!(f, " + O(t^{})", self.t_max + 1)
    }
}

/// Expands `num/den` as a series in `t` through order `t_max`.
///
/// The lowest `t`-coefficient of `den` must be a unit `+-q^{k/D}`.
pub fn series_from_rational(num: &TPoly, den: &TPoly, t_max: i64) -> Result<BiGradedSeries> {
    if den.is_zero() {
        return Err(Error::validation("series denominator is zero"));
    }
    let d_min = den.t_min().unwrap();
    let lead = den.coeff(d_min);
    let lead_inv = lead.unit_inv().ok_or_else(|| {
        Error::validation(format!(
            "lowest t-coefficient of the denominator is not a unit: {lead}"
        ))
    })?;
    if num.is_zero() {
        return Ok(BiGradedSeries::new(t_max.min(0), t_max, []));
    }
    let n_min = num.t_min().unwrap();
    let t_lo = n_min - d_min;
    // Solve den * r = num coefficient by coefficient:
    //   r_k = lead^{-1} (num_{k + d_min} - sum_{j>d_min} den_j r_{k + d_min - j}).
    let mut r: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    for k in t_lo..=t_max {
        let mut acc = num.coeff(k + d_min);
        for (j, dj) in den.iter() {
            if j == d_min {
                continue;
            }
            let idx = k + d_min - j;
            if let Some(prev) = r.get(&idx) {
                acc = acc.sub(&dj.mul(prev));
            }
        }
        let val = acc.mul(&lead_inv);
        if !val.is_zero() {
            r.insert(k, val);
        }
    }
    Ok(BiGradedSeries::new(t_lo.min(t_max), t_max, r))
}

/// Multiplies a truncated series by a `t`-polynomial, truncating at the
/// series' order. Used to check expansions against their defining fraction.
pub fn series_mul_tpoly(s: &BiGradedSeries, p: &TPoly, t_max: i64) -> BiGradedSeries {
    let mut acc: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    for (e1, c1) in s.iter() {
        for (e2, c2) in p.iter() {
            let e = e1 + e2;
            if e > t_max {
                continue;
            }
            let entry = acc.entry(e).or_insert_with(LaurentPoly::zero);
            *entry = entry.add(&c1.mul(c2));
        }
    }
    acc.retain(|_, c| !c.is_zero());
    let t_min = acc.keys().next().copied().unwrap_or(0).min(t_max);
    BiGradedSeries::new(t_min, t_max, acc)
}
