//! Laurent polynomials in `q^{1/D}` with arbitrary-precision integer
//! coefficients.
//!
//! Exponents are stored as integers scaled by `denom_scale`: the key `k`
//! with scale `D` denotes the monomial `q^{k/D}`. Values are kept in a
//! unique normal form (no zero coefficients, minimal scale), so structural
//! equality is value equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    /// Exponent unit is `1/denom_scale`; always >= 1, minimal.
    denom_scale: i64,
    /// Scaled exponent -> nonzero coefficient.
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { denom_scale: 1, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        LaurentPoly { denom_scale: 1, terms }
    }

    /// The monomial `q^{num/den}`.
    pub fn monomial(num: i64, den: i64) -> Self {
        assert!(den > 0, "denominator must be positive");
        let mut p = LaurentPoly {
            denom_scale: den,
            terms: BTreeMap::from([(num, BigInt::one())]),
        };
        p.normalize();
        p
    }

    /// `q` itself.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `c * q^{num/den}`.
    pub fn term(c: impl Into<BigInt>, num: i64, den: i64) -> Self {
        Self::monomial(num, den).mul(&Self::constant(c))
    }

    pub fn from_terms(denom_scale: i64, it: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        assert!(denom_scale > 0);
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in it {
            let cur = terms.entry(e).or_insert_with(BigInt::zero);
            *cur += c;
        }
        let mut p = LaurentPoly { denom_scale, terms };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        if self.terms.is_empty() {
            self.denom_scale = 1;
            return;
        }
        let mut g = self.denom_scale;
        for e in self.terms.keys() {
            g = g.gcd(e);
            if g == 1 {
                return;
            }
        }
        if g > 1 {
            self.denom_scale /= g;
            self.terms = std::mem::take(&mut self.terms)
                .into_iter()
                .map(|(e, c)| (e / g, c))
                .collect();
        }
    }

    pub fn denom_scale(&self) -> i64 {
        self.denom_scale
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.denom_scale == 1 && self.terms.len() == 1 && {
            let (e, c) = self.terms.iter().next().unwrap();
            *e == 0 && c.is_one()
        }
    }

    /// Terms as `(exponent numerator, exponent denominator, coefficient)`,
    /// exponents in increasing order, fractions reduced.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &BigInt)> + '_ {
        self.terms.iter().map(move |(e, c)| {
            let g = e.gcd(&self.denom_scale).max(1);
            (e / g, self.denom_scale / g, c)
        })
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `q^{num/den}`.
    pub fn coeff(&self, num: i64, den: i64) -> BigInt {
        assert!(den > 0);
        // num/den = k/denom_scale  =>  k = num * denom_scale / den.
        let (prod, rem) = (num * self.denom_scale).div_rem(&den);
        if rem != 0 {
            return BigInt::zero();
        }
        self.terms.get(&prod).cloned().unwrap_or_else(BigInt::zero)
    }

    fn rescaled(&self, new_scale: i64) -> BTreeMap<i64, BigInt> {
        debug_assert!(new_scale % self.denom_scale == 0);
        let f = new_scale / self.denom_scale;
        self.terms.iter().map(|(e, c)| (e * f, c.clone())).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let scale = self.denom_scale.lcm(&other.denom_scale);
        let mut terms = self.rescaled(scale);
        for (e, c) in other.rescaled(scale) {
            *terms.entry(e).or_insert_with(BigInt::zero) += c;
        }
        let mut p = LaurentPoly { denom_scale: scale, terms };
        p.normalize();
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            denom_scale: self.denom_scale,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let scale = self.denom_scale.lcm(&other.denom_scale);
        let a = self.rescaled(scale);
        let b = other.rescaled(scale);
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e1, c1) in &a {
            for (e2, c2) in &b {
                let e = e1 + e2;
                let prod = c1 * c2;
                *terms.entry(e).or_insert_with(BigInt::zero) += prod;
            }
        }
        let mut p = LaurentPoly { denom_scale: scale, terms };
        p.normalize();
        p
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// The bar involution `q^{1/D} -> q^{-1/D}`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            denom_scale: self.denom_scale,
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// If this is `+-q^{k/D}`, returns `(sign, scaled exponent, scale)`.
    pub fn as_unit(&self) -> Option<(i8, i64, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if c.is_one() {
            Some((1, *e, self.denom_scale))
        } else if (-c).is_one() {
            Some((-1, *e, self.denom_scale))
        } else {
            None
        }
    }

    /// Inverse of a unit `+-q^{k/D}`.
    pub fn unit_inv(&self) -> Option<Self> {
        let (s, e, d) = self.as_unit()?;
        let mut p = Self::monomial(-e, d);
        if s < 0 {
            p = p.neg();
        }
        Some(p)
    }

    /// Exact division; `None` if the quotient is not a Laurent polynomial
    /// over the integers.
    pub fn exact_div(&self, den: &Self) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let scale = self.denom_scale.lcm(&den.denom_scale);
        let a = self.rescaled(scale);
        let b = den.rescaled(scale);
        // Long division from the top, shifting out the lowest exponents first.
        let a_min = *a.keys().next().unwrap();
        let b_min = *b.keys().next().unwrap();
        let mut rem: BTreeMap<i64, BigInt> = a;
        let b_lead_exp = *b.keys().next_back().unwrap();
        let b_lead = b[&b_lead_exp].clone();
        let mut quot: BTreeMap<i64, BigInt> = BTreeMap::new();
        while let Some((&r_lead_exp, r_lead)) = rem.iter().next_back() {
            let qe = r_lead_exp - b_lead_exp;
            // Quotient exponents are bounded below in an exact division.
            if qe < a_min - b_min {
                return None;
            }
            let (qc, rm) = r_lead.div_rem(&b_lead);
            if !rm.is_zero() {
                return None;
            }
            for (e, c) in &b {
                let t = c * &qc;
                let entry = rem.entry(e + qe).or_insert_with(BigInt::zero);
                *entry -= t;
                if entry.is_zero() {
                    let key = e + qe;
                    rem.remove(&key);
                }
            }
            quot.insert(qe, qc);
        }
        let mut p = LaurentPoly { denom_scale: scale, terms: quot };
        p.normalize();
        Some(p)
    }

    /// Value at `q = 1` (each monomial specializes to 1).
    pub fn specialize_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Lowest and highest exponents as reduced `(num, den)` pairs.
    pub fn exponent_range(&self) -> Option<((i64, i64), (i64, i64))> {
        let lo = *self.terms.keys().next()?;
        let hi = *self.terms.keys().next_back()?;
        let red = |e: i64| {
            let g = e.gcd(&self.denom_scale).max(1);
            (e / g, self.denom_scale / g)
        };
        Some((red(lo), red(hi)))
    }

    /// JSON rendering: list of `[num_exp, den_exp, coeff]` triples in
    /// decreasing exponent order. Coefficients must fit in an `i64`.
    pub fn to_json(&self) -> crate::Result<serde_json::Value> {
        let mut out = Vec::new();
        for (n, d, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let c: i64 = c.try_into().map_err(|_| {
                crate::Error::internal("polynomial coefficient exceeds i64 in JSON rendering")
            })?;
            out.push(serde_json::json!([n, d, c]));
        }
        Ok(serde_json::Value::Array(out))
    }

    pub fn from_json(v: &serde_json::Value) -> crate::Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| crate::Error::parse("polynomial JSON must be an array"))?;
        let mut acc = Self::zero();
        for t in arr {
            let t = t
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| crate::Error::parse("polynomial term must be [num, den, coeff]"))?;
            let num = t[0].as_i64().ok_or_else(|| crate::Error::parse("bad exponent"))?;
            let den = t[1].as_i64().filter(|d| *d > 0).ok_or_else(|| crate::Error::parse("bad exponent denominator"))?;
            let c = t[2].as_i64().ok_or_else(|| crate::Error::parse("bad coefficient"))?;
            acc = acc.add(&Self::term(c, num, den));
        }
        Ok(acc)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Decreasing exponent order.
        for (num, den, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !abs.is_one() || num == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            if num != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if den == 1 {
                    if num == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{num}")?;
                    }
                } else {
                    write!(f, "q^({num}/{den})")?;
                }
            }
        }
        Ok(())
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        LaurentPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        LaurentPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        LaurentPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        LaurentPoly::neg(self)
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
}

/// `[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d})`.
pub fn quantum_integer(n: i64, d: i64) -> LaurentPoly {
    assert!(n >= 0, "quantum integer of negative n");
    assert!(d >= 1);
    let mut p = LaurentPoly::zero();
    // q^{d(n-1)} + q^{d(n-3)} + ... + q^{-d(n-1)}
    let mut e = d * (n - 1);
    while e >= -d * (n - 1) {
        p = p.add(&LaurentPoly::monomial(e, 1));
        e -= 2 * d;
    }
    p
}

/// `[n]_{q^d}!`
pub fn quantum_factorial(n: i64, d: i64) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for k in 2..=n {
        acc = acc.mul(&quantum_integer(k, d));
    }
    acc
}

/// Gaussian binomial `[n choose k]_{q^d}`; the division is exact.
pub fn quantum_binomial(n: i64, k: i64, d: i64) -> LaurentPoly {
    assert!(n >= 0);
    if k < 0 || k > n {
        return LaurentPoly::zero();
    }
    let num = quantum_factorial(n, d);
    let den = quantum_factorial(k, d).mul(&quantum_factorial(n - k, d));
    num.exact_div(&den)
        .expect("quantum binomial division is exact")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentPoly {
        LaurentPoly::q()
    }

    #[test]
    fn square_of_two_term() {
        // (q + q^{-1})^2 = q^2 + 2 + q^{-2}
        let a = q().add(&LaurentPoly::monomial(-1, 1));
        let sq = a.mul(&a);
        let expect = LaurentPoly::from_terms(
            1,
            vec![
                (2, 1.into()),
                (0, 2.into()),
                (-2, 1.into()),
            ],
        );
        assert_eq!(sq, expect);
    }

    #[test]
    fn mul_identity() {
        let a = LaurentPoly::term(3, -5, 2).add(&LaurentPoly::term(-2, 1, 3));
        assert_eq!(a.mul(&LaurentPoly::one()), a);
    }

    #[test]
    fn half_powers_combine() {
        // q^{1/2} * q^{1/2} = q, and the scale drops back to 1.
        let h = LaurentPoly::monomial(1, 2);
        let p = h.mul(&h);
        assert_eq!(p, q());
        assert_eq!(p.denom_scale(), 1);
    }

    #[test]
    fn bar_examples() {
        // q^2 + 3 q^{-1} -> q^{-2} + 3 q
        let a = LaurentPoly::monomial(2, 1).add(&LaurentPoly::term(3, -1, 1));
        let b = LaurentPoly::monomial(-2, 1).add(&LaurentPoly::term(3, 1, 1));
        assert_eq!(a.bar(), b);
        assert_eq!(LaurentPoly::constant(5).bar(), LaurentPoly::constant(5));
        assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn quantum_integers() {
        // [3]_q = q^2 + 1 + q^{-2}
        let three = quantum_integer(3, 1);
        let expect = LaurentPoly::from_terms(
            1,
            vec![(2, 1.into()), (0, 1.into()), (-2, 1.into())],
        );
        assert_eq!(three, expect);
        assert!(quantum_integer(0, 1).is_zero());
        assert!(quantum_integer(1, 1).is_one());
        // [2]_{q^2} = q^2 + q^{-2}
        let expect22 = LaurentPoly::from_terms(1, vec![(2, 1.into()), (-2, 1.into())]);
        assert_eq!(quantum_integer(2, 2), expect22);
    }

    #[test]
    fn binomial_exactness() {
        // [4 choose 2] = [4][3]/[2] = (q^2+1+q^-2)(q^2+q^-2) + ... just check exact + symmetric
        let b = quantum_binomial(4, 2, 1);
        assert_eq!(b, b.bar());
        assert_eq!(b.specialize_one(), 6.into());
        // All coefficients nonnegative.
        for (_, _, c) in b.terms() {
            assert!(!c.is_negative());
        }
    }

    #[test]
    fn exact_division_failure() {
        let a = q().add(&LaurentPoly::one()); // q + 1
        let b = q().sub(&LaurentPoly::one()); // q - 1
        assert!(a.exact_div(&b).is_none());
        assert_eq!(a.exact_div(&a), Some(LaurentPoly::one()));
    }

    #[test]
    fn normal_form_unique() {
        let a = LaurentPoly::from_terms(2, vec![(2, 1.into())]);
        let b = LaurentPoly::monomial(1, 1);
        assert_eq!(a, b);
        assert_eq!(a.denom_scale(), 1);
    }

    #[test]
    fn display_ordering() {
        let p = LaurentPoly::monomial(-2, 1)
            .add(&LaurentPoly::one())
            .add(&LaurentPoly::monomial(2, 1));
        assert_eq!(p.to_string(), "q^2 + 1 + q^-2");
        let h = LaurentPoly::term(-1, 3, 2);
        assert_eq!(h.to_string(), "-q^(3/2)");
    }

    #[test]
    fn json_roundtrip() {
        let p = LaurentPoly::term(2, 3, 2).add(&LaurentPoly::term(-7, -1, 1));
        let v = p.to_json().unwrap();
        assert_eq!(LaurentPoly::from_json(&v).unwrap(), p);
    }
}
