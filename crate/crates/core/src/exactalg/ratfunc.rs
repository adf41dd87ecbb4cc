//! Fraction field over [`LaurentPoly`], used for intermediate exact
//! elimination. Values are kept gcd-reduced with a canonical unit:
//! the denominator is an ordinary polynomial in `q^{1/S}` with nonzero
//! constant term and positive leading coefficient.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::laurent::LaurentPoly;
use crate::linalg::{Field, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFunc { num, den };
        r.reduce();
        r
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_laurent(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Returns the value as a Laurent polynomial when the reduced
    /// denominator is 1.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        Some(self.mul(&other.inv()?))
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        // Work at a common exponent scale, as plain integer polynomials.
        let scale = lcm_i64(self.num.denom_scale(), self.den.denom_scale());
        let (n_off, mut n) = to_dense(&self.num, scale);
        let (d_off, mut d) = to_dense(&self.den, scale);
        // Shift so the denominator has constant term nonzero; the numerator
        // absorbs the compensating power of q.
        let n_shift = n_off - d_off;
        let cn = content(&n);
        let cd = content(&d);
        let g = cn.gcd(&cd);
        divide_content(&mut n, &g);
        divide_content(&mut d, &g);
        let h = poly_gcd(primitive(&n), primitive(&d));
        if poly_deg(&h) > 0 {
            n = poly_div_exact(&n, &h);
            d = poly_div_exact(&d, &h);
        }
        if d.last().map(|c| c.is_negative()).unwrap_or(false) {
            for c in n.iter_mut() {
                *c = -std::mem::take(c);
            }
            for c in d.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        self.num = from_dense(n_shift, &n, scale);
        self.den = from_dense(0, &d, scale);
    }
}

impl std::fmt::Display for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RatFunc::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFunc::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::mul(self, other)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        RatFunc::inv(self)
    }
}

fn lcm_i64(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

/// Dense coefficient vector of `p` at the given scale; returns
/// `(offset, coeffs)` with `coeffs[0]` the coefficient of `q^{offset/scale}`
/// and `coeffs.last()` nonzero.
fn to_dense(p: &LaurentPoly, scale: i64) -> (i64, Vec<BigInt>) {
    assert!(!p.is_zero());
    debug_assert!(scale % p.denom_scale() == 0);
    let terms: Vec<(i64, BigInt)> = p
        .terms()
        .map(|(n, d, c)| (n * (scale / d), c.clone()))
        .collect();
    let min = terms.iter().map(|t| t.0).min().unwrap();
    let max = terms.iter().map(|t| t.0).max().unwrap();
    let mut v = vec![BigInt::zero(); (max - min + 1) as usize];
    for (e, c) in terms {
        v[(e - min) as usize] = c;
    }
    (min, v)
}

fn from_dense(offset: i64, v: &[BigInt], scale: i64) -> LaurentPoly {
    LaurentPoly::from_terms(
        scale,
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (offset + i as i64, c.clone())),
    )
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn poly_deg(v: &[BigInt]) -> i64 {
    v.len() as i64 - 1
}

fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    g
}

fn divide_content(v: &mut [BigInt], g: &BigInt) {
    if g.is_zero() {
        return;
    }
    for c in v.iter_mut() {
        *c = &*c / g;
    }
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = content(v);
    let mut out = v.to_vec();
    divide_content(&mut out, &g);
    out
}

/// Pseudo-remainder of `a` by `b` (deg a >= deg b, b nonzero).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = poly_deg(b);
    let lb = b.last().unwrap().clone();
    while poly_deg(&r) >= db && !r.is_empty() {
        let dr = poly_deg(&r);
        let lr = r.last().unwrap().clone();
        // r = lb * r - lr * x^{dr-db} * b
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        let shift = (dr - db) as usize;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &lr * c;
        }
        trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Gcd of primitive integer polynomials (primitive PRS).
fn poly_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if poly_deg(&a) < poly_deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            let mut g = primitive(&b);
            if g.last().map(|c| c.is_negative()).unwrap_or(false) {
                for c in g.iter_mut() {
                    *c = -std::mem::take(c);
                }
            }
            return g;
        }
        a = b;
        b = primitive(&r);
    }
}

/// Exact polynomial division (panics if inexact; callers guarantee it).
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = poly_deg(b);
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); (poly_deg(&r) - db + 1).max(0) as usize];
    while !r.is_empty() && poly_deg(&r) >= db {
        let dr = poly_deg(&r);
        let (qc, rem) = r.last().unwrap().div_rem(lb);
        assert!(rem.is_zero(), "inexact polynomial division");
        let shift = (dr - db) as usize;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &qc * c;
        }
        q[shift] = qc;
        trim(&mut r);
    }
    assert!(r.is_empty(), "nonzero remainder in exact division");
    q
}
