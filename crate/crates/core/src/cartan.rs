//! Root and weight combinatorics for the finite-type simple Lie algebras.
//!
//! Numbering of simple roots follows Bourbaki throughout:
//!
//! * `A_n`: the chain `1 - 2 - ... - n`.
//! * `B_n`: `1 - ... - (n-1) => n`, the last root short.
//! * `C_n`: `1 - ... - (n-1) <= n`, the last root long.
//! * `D_n`: chain `1 - ... - (n-2)` with both `n-1` and `n` attached to `n-2`.
//! * `E_6/7/8`: node 2 is the branch node, attached to node 4; the chain is
//!   `1 - 3 - 4 - 5 - 6 (- 7 (- 8))`.
//! * `F_4`: `1 - 2 => 3 - 4`, roots 1,2 long, 3,4 short.
//! * `G_2`: root 1 short, root 2 long.
//!
//! The stored Cartan matrix has entries `a[i][j] = alpha_i^vee(alpha_j)`.
//! The symmetrized pairing is normalized so the shortest root has squared
//! length 2; `d_i = <alpha_i, alpha_i>/2` and `<alpha_i, mu> = d_i
//! alpha_i^vee(mu)`. Weights are always held in fundamental-weight
//! coordinates `lambda^i = alpha_i^vee(lambda)`; root-basis coordinates are
//! an internal conversion.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

pub type Rat = Ratio<i64>;

/// One of the seven series of finite-type simple Lie algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    pub series: Series,
    pub rank: usize,
}

impl LieType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 2,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if !ok {
            return Err(Error::validation(format!(
                "rank {rank} is not valid for series {series:?}"
            )));
        }
        Ok(LieType { series, rank })
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = match chars.next() {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('E') => Series::E,
            Some('F') => Series::F,
            Some('G') => Series::G,
            _ => return Err(Error::parse(format!("unknown algebra name {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::parse(format!("bad rank in algebra name {s:?}")))?;
        LieType::new(series, rank).map_err(|e| Error::parse(e.to_string()))
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_antidominant(&self) -> bool {
        self.0.iter().all(|&c| c <= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords: Result<Vec<i64>> = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::parse(format!("bad weight coordinate {p:?}")))
            })
            .collect();
        let coords = coords?;
        if coords.is_empty() {
            return Err(Error::parse("empty weight"));
        }
        Ok(Weight(coords))
    }
}

/// Cartan matrix, symmetrizers, pairing data and longest-word machinery for
/// one simple Lie algebra. Immutable after construction.
#[derive(Clone, Debug)]
pub struct CartanData {
    pub lie_type: LieType,
    pub rank: usize,
    /// `a[i][j] = alpha_i^vee(alpha_j)`.
    a: Vec<Vec<i64>>,
    /// Symmetrizers `d_i = <alpha_i, alpha_i>/2`.
    d: Vec<i64>,
    /// Determinant of the Cartan matrix; exponent denominators divide it.
    det: i64,
    /// `inv_num / det` is the inverse Cartan matrix.
    inv_num: Vec<Vec<i64>>,
    /// Sum of the fundamental weights.
    rho: Weight,
    /// Reduced word for the longest Weyl element (descent-greedy from rho).
    longest_word: Vec<usize>,
    /// All positive roots, in fundamental-weight coordinates.
    pos_roots_fund: Vec<Weight>,
    /// The same roots in simple-root coordinates.
    pos_roots_simple: Vec<Vec<i64>>,
}

impl CartanData {
    pub fn new(lie_type: LieType) -> Result<Self> {
        let n = lie_type.rank;
        let a = cartan_matrix(lie_type);
        let d = symmetrizers(lie_type);
        for i in 0..n {
            for j in 0..n {
                // d_i a_ij symmetric.
                assert_eq!(d[i] * a[i][j], d[j] * a[j][i], "symmetrizability");
            }
        }
        let (inv_num, det) = invert_integer_matrix(&a)
            .ok_or_else(|| Error::internal("Cartan matrix not invertible"))?;
        let rho = Weight(vec![1; n]);
        let mut cd = CartanData {
            lie_type,
            rank: n,
            a,
            d,
            det,
            inv_num,
            rho,
            longest_word: Vec::new(),
            pos_roots_fund: Vec::new(),
            pos_roots_simple: Vec::new(),
        };
        cd.longest_word = cd.longest_word_compute();
        let (pf, ps) = cd.compute_positive_roots();
        cd.pos_roots_fund = pf;
        cd.pos_roots_simple = ps;
        if cd.longest_word.len() != cd.pos_roots_fund.len() {
            return Err(Error::internal(format!(
                "longest word length {} does not match positive root count {}",
                cd.longest_word.len(),
                cd.pos_roots_fund.len()
            )));
        }
        Ok(cd)
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::new(name.parse()?)
    }

    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn symmetrizer(&self, i: usize) -> i64 {
        self.d[i]
    }

    /// Determinant of the Cartan matrix; all pairing denominators divide it.
    pub fn det(&self) -> i64 {
        self.det
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn longest_word(&self) -> &[usize] {
        &self.longest_word
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.pos_roots_fund
    }

    /// The simple root `alpha_i` in fundamental coordinates (column `i` of
    /// the Cartan matrix).
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|j| self.a[j][i]).collect())
    }

    /// Root-basis coordinates of `mu` as exact rationals.
    pub fn root_coords(&self, mu: &Weight) -> Vec<Rat> {
        (0..self.rank)
            .map(|i| {
                let num: i64 = (0..self.rank).map(|j| self.inv_num[i][j] * mu.0[j]).sum();
                Rat::new(num, self.det)
            })
            .collect()
    }

    /// Root-basis coordinates when `mu` lies in the root lattice.
    pub fn root_coords_integral(&self, mu: &Weight) -> Option<Vec<i64>> {
        self.root_coords(mu)
            .into_iter()
            .map(|r| r.is_integer().then(|| r.to_integer()))
            .collect()
    }

    /// The symmetrized invariant pairing `<lambda, mu>`; its denominator
    /// divides the Cartan determinant.
    pub fn pairing(&self, lam: &Weight, mu: &Weight) -> Rat {
        let m = self.root_coords(mu);
        let mut acc = Rat::zero();
        for j in 0..self.rank {
            acc += Rat::from_integer(self.d[j] * lam.0[j]) * m[j];
        }
        acc
    }

    /// `rho^vee(lambda)`: the sum of the root-basis coordinates of `lambda`.
    pub fn rho_check(&self, lam: &Weight) -> Rat {
        self.root_coords(lam).into_iter().sum()
    }

    /// `2 rho^vee(lambda)`, always an integer.
    pub fn two_rho_check(&self, lam: &Weight) -> i64 {
        let r = self.rho_check(lam) * Rat::from_integer(2);
        assert!(r.is_integer(), "2 rho^vee(lambda) must be integral");
        r.to_integer()
    }

    /// Simple reflection `s_i(lambda) = lambda - lambda^i alpha_i`.
    pub fn weyl_act(&self, i: usize, lam: &Weight) -> Weight {
        let c = lam.0[i];
        let alpha = self.simple_root(i);
        lam.sub(&alpha.scale(c))
    }

    /// Descent-greedy reduced word for the longest element: repeatedly apply
    /// the smallest simple reflection with a positive coordinate to `rho`
    /// until antidominant.
    pub fn longest_word_compute(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut mu = self.rho.clone();
        while let Some(i) = (0..self.rank).find(|&i| mu.0[i] > 0) {
            mu = self.weyl_act(i, &mu);
            word.push(i);
        }
        word
    }

    /// Applies the longest element to a weight.
    pub fn w0(&self, lam: &Weight) -> Weight {
        let mut mu = lam.clone();
        for &i in &self.longest_word {
            mu = self.weyl_act(i, &mu);
        }
        mu
    }

    /// Highest weight of the dual representation: `lambda^* = -w_0 lambda`.
    pub fn dual_weight(&self, lam: &Weight) -> Weight {
        self.w0(lam).neg()
    }

    /// The dominant Weyl-chamber representative of `mu`.
    pub fn dominant_rep(&self, mu: &Weight) -> Weight {
        let mut w = mu.clone();
        loop {
            match (0..self.rank).find(|&i| w.0[i] < 0) {
                Some(i) => w = self.weyl_act(i, &w),
                None => return w,
            }
        }
    }

    /// Whether `mu` occurs as a weight of the irreducible with highest
    /// weight `lam`: its dominant representative must differ from `lam` by
    /// a nonnegative integral combination of simple roots.
    pub fn weight_in_rep(&self, lam: &Weight, mu: &Weight) -> bool {
        let dom = self.dominant_rep(mu);
        match self.root_coords_integral(&lam.sub(&dom)) {
            Some(cs) => cs.iter().all(|&c| c >= 0),
            None => false,
        }
    }

    /// Dominant `lam` is minuscule when every weight of `V_lam` is in the
    /// Weyl orbit of `lam`, i.e. no other dominant weight lies below it.
    pub fn is_minuscule(&self, lam: &Weight) -> Result<bool> {
        if !lam.is_dominant() {
            return Err(Error::validation(format!(
                "is_minuscule requires a dominant weight, got {lam}"
            )));
        }
        // BFS down through the weight system looking for a second dominant
        // weight.
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![lam.clone()];
        seen.insert(lam.clone());
        while let Some(mu) = stack.pop() {
            if mu.is_dominant() && mu != *lam {
                return Ok(false);
            }
            for i in 0..self.rank {
                let next = mu.sub(&self.simple_root(i));
                if self.weight_in_rep(lam, &next) && seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
        Ok(true)
    }

    /// Dimension of `V_lam` by the Weyl product formula.
    pub fn weyl_dim(&self, lam: &Weight) -> BigInt {
        let lam_rho = lam.add(&self.rho);
        let mut acc = BigRational::one();
        for beta in &self.pos_roots_fund {
            let num = self.pairing(&lam_rho, beta);
            let den = self.pairing(&self.rho, beta);
            acc *= BigRational::new(BigInt::from(*num.numer()), BigInt::from(*num.denom()))
                / BigRational::new(BigInt::from(*den.numer()), BigInt::from(*den.denom()));
        }
        assert!(acc.is_integer(), "Weyl dimension must be integral");
        acc.to_integer()
    }

    /// Weight multiplicities of `V_lam` by the Freudenthal recursion.
    pub fn freudenthal(&self, lam: &Weight) -> Result<std::collections::BTreeMap<Weight, u64>> {
        if !lam.is_dominant() {
            return Err(Error::validation("freudenthal requires a dominant weight"));
        }
        // Collect the weight system by BFS.
        let mut weights = std::collections::BTreeSet::new();
        let mut stack = vec![lam.clone()];
        weights.insert(lam.clone());
        while let Some(mu) = stack.pop() {
            for i in 0..self.rank {
                let next = mu.sub(&self.simple_root(i));
                if self.weight_in_rep(lam, &next) && weights.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
        // Order by height of lam - mu so dependencies are resolved first.
        let mut by_height: Vec<(Rat, Weight)> = weights
            .into_iter()
            .map(|mu| (self.rho_check(&lam.sub(&mu)), mu))
            .collect();
        by_height.sort();
        let lam_rho = lam.add(&self.rho);
        let c_top = self.pairing(&lam_rho, &lam_rho);
        let mut mult: std::collections::BTreeMap<Weight, u64> = Default::default();
        for (_, mu) in by_height {
            if mu == *lam {
                mult.insert(mu, 1);
                continue;
            }
            let mu_rho = mu.add(&self.rho);
            let denom = c_top - self.pairing(&mu_rho, &mu_rho);
            let mut acc = Rat::zero();
            for beta in &self.pos_roots_fund {
                let mut k = 1i64;
                loop {
                    let up = mu.add(&beta.scale(k));
                    let Some(&m_up) = mult.get(&up) else { break };
                    acc += Rat::from_integer(m_up as i64) * self.pairing(&up, beta);
                    k += 1;
                }
            }
            let m = acc * Rat::from_integer(2) / denom;
            assert!(m.is_integer() && !m.is_negative(), "Freudenthal multiplicity");
            mult.insert(mu, m.to_integer() as u64);
        }
        Ok(mult)
    }

    fn compute_positive_roots(&self) -> (Vec<Weight>, Vec<Vec<i64>>) {
        // Orbit of the simple roots under simple reflections, then keep the
        // positive ones.
        let mut all = std::collections::BTreeSet::new();
        let mut stack: Vec<Weight> = (0..self.rank).map(|i| self.simple_root(i)).collect();
        for r in &stack {
            all.insert(r.clone());
        }
        while let Some(beta) = stack.pop() {
            for i in 0..self.rank {
                let img = self.weyl_act(i, &beta);
                if all.insert(img.clone()) {
                    stack.push(img);
                }
            }
        }
        let mut fund = Vec::new();
        let mut simple = Vec::new();
        for beta in all {
            if let Some(cs) = self.root_coords_integral(&beta) {
                if cs.iter().all(|&c| c >= 0) && cs.iter().any(|&c| c > 0) {
                    fund.push(beta);
                    simple.push(cs);
                }
            }
        }
        (fund, simple)
    }
}

fn cartan_matrix(t: LieType) -> Vec<Vec<i64>> {
    let n = t.rank;
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    let mut bond = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match t.series {
        Series::A => {
            for i in 0..n - 1 {
                bond(i, i + 1, -1, -1);
            }
        }
        Series::B => {
            for i in 0..n - 2 {
                bond(i, i + 1, -1, -1);
            }
            // alpha_{n-1} long, alpha_n short.
            bond(n - 2, n - 1, -1, -2);
        }
        Series::C => {
            for i in 0..n - 2 {
                bond(i, i + 1, -1, -1);
            }
            bond(n - 2, n - 1, -2, -1);
        }
        Series::D => {
            if n >= 3 {
                // Chain through n-2 nodes, then both tail nodes on n-3.
                for i in 0..n - 2 {
                    bond(i, i + 1, -1, -1);
                }
                bond(n - 2, n - 1, 0, 0);
                bond(n - 3, n - 1, -1, -1);
            }
            // D_2 = A_1 x A_1: no bonds at all.
        }
        Series::E => {
            // Chain 1-3-4-5-6(-7)(-8), branch 2-4 (1-indexed).
            let chain: Vec<usize> = std::iter::once(0).chain(2..n).collect();
            for w in chain.windows(2) {
                bond(w[0], w[1], -1, -1);
            }
            bond(1, 3, -1, -1);
        }
        Series::F => {
            bond(0, 1, -1, -1);
            bond(1, 2, -1, -2);
            bond(2, 3, -1, -1);
        }
        Series::G => {
            // Root 1 short, root 2 long.
            bond(0, 1, -3, -1);
        }
    }
    a
}

fn symmetrizers(t: LieType) -> Vec<i64> {
    let n = t.rank;
    match t.series {
        Series::A | Series::D | Series::E => vec![1; n],
        Series::B => {
            let mut d = vec![2; n];
            d[n - 1] = 1;
            d
        }
        Series::C => {
            let mut d = vec![1; n];
            d[n - 1] = 2;
            d
        }
        Series::F => vec![2, 2, 1, 1],
        Series::G => vec![1, 3],
    }
}

/// Exact inverse of an integer matrix: returns `(num, det)` with
/// `inverse = num / det`.
fn invert_integer_matrix(a: &[Vec<i64>]) -> Option<(Vec<Vec<i64>>, i64)> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .map(|row| row.iter().map(|&x| Rat::from_integer(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    let mut det = Rat::one();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        if p != col {
            m.swap(col, p);
            inv.swap(col, p);
            det = -det;
        }
        let piv = m[col][col];
        det *= piv;
        for c in 0..n {
            m[col][c] /= piv;
            inv[col][c] /= piv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in 0..n {
                    let t1 = m[col][c] * f;
                    m[r][c] -= t1;
                    let t2 = inv[col][c] * f;
                    inv[r][c] -= t2;
                }
            }
        }
    }
    assert!(det.is_integer());
    let det_i = det.to_integer();
    let num: Option<Vec<Vec<i64>>> = inv
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let scaled = *x * Rat::from_integer(det_i);
                    scaled.is_integer().then(|| scaled.to_integer())
                })
                .collect()
        })
        .collect();
    Some((num?, det_i))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(name: &str) -> CartanData {
        CartanData::from_name(name).unwrap()
    }

    #[test]
    fn parse_names() {
        assert_eq!(cd("A1").rank, 1);
        assert_eq!(cd("G2").lie_type.series, Series::G);
        assert!(CartanData::from_name("E9").is_err());
        assert!(CartanData::from_name("H3").is_err());
        assert!(CartanData::from_name("F3").is_err());
    }

    #[test]
    fn determinants() {
        assert_eq!(cd("A1").det(), 2);
        assert_eq!(cd("A2").det(), 3);
        assert_eq!(cd("B2").det(), 2);
        assert_eq!(cd("G2").det(), 1);
        assert_eq!(cd("D4").det(), 4);
        assert_eq!(cd("F4").det(), 1);
        assert_eq!(cd("E6").det(), 3);
    }

    #[test]
    fn pairing_values() {
        let a1 = cd("A1");
        let w: Weight = "1".parse().unwrap();
        assert_eq!(a1.pairing(&w, &w), Rat::new(1, 2));

        let a2 = cd("A2");
        let w1 = Weight::fundamental(2, 0);
        let w2 = Weight::fundamental(2, 1);
        assert_eq!(a2.pairing(&w1, &w2), Rat::new(1, 3));

        // <alpha_i, lam> = d_i lam^i on every series we care about.
        for name in ["A2", "B2", "C3", "G2", "F4", "D4"] {
            let c = cd(name);
            let lam = Weight((0..c.rank).map(|i| (i as i64 % 3) + 1).collect());
            for i in 0..c.rank {
                let alpha = c.simple_root(i);
                assert_eq!(
                    c.pairing(&alpha, &lam),
                    Rat::from_integer(c.symmetrizer(i) * lam.0[i]),
                    "{name} root {i}"
                );
            }
        }
    }

    #[test]
    fn pairing_symmetric_and_weyl_invariant() {
        for name in ["A2", "B2", "G2"] {
            let c = cd(name);
            let lam = Weight(vec![2, -1]);
            let mu = Weight(vec![1, 3]);
            assert_eq!(c.pairing(&lam, &mu), c.pairing(&mu, &lam));
            for i in 0..c.rank {
                assert_eq!(
                    c.pairing(&c.weyl_act(i, &lam), &c.weyl_act(i, &mu)),
                    c.pairing(&lam, &mu)
                );
            }
        }
    }

    #[test]
    fn rho_check_values() {
        let a1 = cd("A1");
        assert_eq!(a1.rho_check(&Weight(vec![1])), Rat::new(1, 2));
        assert_eq!(a1.two_rho_check(&Weight(vec![1])), 1);
        assert_eq!(a1.rho_check(&Weight(vec![2])), Rat::one());
        assert_eq!(a1.rho_check(&Weight(vec![0])), Rat::zero());
    }

    #[test]
    fn weyl_and_longest_word() {
        let a1 = cd("A1");
        assert_eq!(a1.weyl_act(0, &Weight(vec![1])), Weight(vec![-1]));
        let a2 = cd("A2");
        assert_eq!(a2.longest_word(), &[0, 1, 0]);
        // Involution.
        let lam = Weight(vec![3, -2]);
        assert_eq!(a2.weyl_act(1, &a2.weyl_act(1, &lam)), lam);
        // w0 sends dominant to antidominant; word length = #positive roots.
        for name in ["A3", "B2", "B3", "C3", "D4", "G2", "F4"] {
            let c = cd(name);
            let lam = Weight(vec![1; c.rank]);
            assert!(c.w0(&lam).is_antidominant(), "{name}");
            assert_eq!(c.longest_word().len(), c.positive_roots().len(), "{name}");
        }
        // Known positive root counts.
        assert_eq!(cd("A3").positive_roots().len(), 6);
        assert_eq!(cd("B3").positive_roots().len(), 9);
        assert_eq!(cd("D4").positive_roots().len(), 12);
        assert_eq!(cd("G2").positive_roots().len(), 6);
        assert_eq!(cd("F4").positive_roots().len(), 24);
        assert_eq!(cd("E6").positive_roots().len(), 36);
    }

    #[test]
    fn minuscule_examples() {
        let a1 = cd("A1");
        assert!(a1.is_minuscule(&Weight(vec![1])).unwrap());
        assert!(!a1.is_minuscule(&Weight(vec![2])).unwrap());
        let a2 = cd("A2");
        assert!(a2.is_minuscule(&Weight(vec![1, 0])).unwrap());
        assert!(!a2.is_minuscule(&Weight(vec![1, 1])).unwrap());
        let b2 = cd("B2");
        // Spinor weight is minuscule, vector weight is not (weight 0 occurs).
        assert!(b2.is_minuscule(&Weight(vec![0, 1])).unwrap());
        assert!(!b2.is_minuscule(&Weight(vec![1, 0])).unwrap());
        assert!(a1.is_minuscule(&Weight(vec![-1])).is_err());
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(cd("A1").weyl_dim(&Weight(vec![3])), 4.into());
        assert_eq!(cd("A2").weyl_dim(&Weight(vec![1, 1])), 8.into());
        assert_eq!(cd("B2").weyl_dim(&Weight(vec![1, 0])), 5.into());
        assert_eq!(cd("B2").weyl_dim(&Weight(vec![0, 1])), 4.into());
        assert_eq!(cd("G2").weyl_dim(&Weight(vec![1, 0])), 7.into());
        assert_eq!(cd("G2").weyl_dim(&Weight(vec![0, 1])), 14.into());
    }

    #[test]
    fn freudenthal_matches_weyl_dim() {
        for (name, lam) in [
            ("A2", Weight(vec![1, 1])),
            ("A2", Weight(vec![2, 1])),
            ("B2", Weight(vec![1, 1])),
            ("G2", Weight(vec![1, 0])),
        ] {
            let c = cd(name);
            let mult = c.freudenthal(&lam).unwrap();
            let total: u64 = mult.values().sum();
            assert_eq!(BigInt::from(total), c.weyl_dim(&lam), "{name} {lam}");
        }
        // Adjoint of A2: zero weight has multiplicity 2.
        let a2 = cd("A2");
        let mult = a2.freudenthal(&Weight(vec![1, 1])).unwrap();
        assert_eq!(mult[&Weight(vec![0, 0])], 2);
    }

    #[test]
    fn dual_weights() {
        let a2 = cd("A2");
        assert_eq!(a2.dual_weight(&Weight(vec![1, 0])), Weight(vec![0, 1]));
        let a1 = cd("A1");
        assert_eq!(a1.dual_weight(&Weight(vec![5])), Weight(vec![5]));
        let b2 = cd("B2");
        assert_eq!(b2.dual_weight(&Weight(vec![1, 2])), Weight(vec![1, 2]));
    }

    #[test]
    fn d_pairing_integral() {
        for name in ["A2", "B3", "C3", "D4", "G2"] {
            let c = cd(name);
            let lam = Weight((0..c.rank).map(|i| i as i64 - 1).collect());
            let mu = Weight((0..c.rank).map(|i| 2 - i as i64).collect());
            let p = c.pairing(&lam, &mu) * Rat::from_integer(c.det());
            assert!(p.is_integer(), "{name}");
        }
    }
}
