//! Graded homological algebra over finite-dimensional graded local
//! algebras: minimal free resolutions, bigraded Tor, and the assembly of
//! the colored unknot Poincare series for `sl_2`.
//!
//! All linear algebra here is exact over the rationals. The shift
//! dictionary used when converting homological data into the bigraded
//! series: a Tor class in homological degree `i` and internal degree `d`,
//! sitting in a summand with shifts `[a](b)`, contributes
//! `(-1)^{i+a} t^{i+a} q^{-(d+b)}`. The unknot series combines three
//! summands with shifts `[-2](-2)`, `[0](0)` and `[2](2)`; the dictionary
//! is pinned by requiring agreement with the closed rational form
//! `q^{-2} t^2 + 1 + q^2 t^{-2} + (q^{-2} - q^{-2} t)/(1 - t^2 q^{-4})`.

use num_rational::BigRational;
use num_traits::{One, Zero};
#[cfg(test)]
use num_traits::Signed;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::exactalg::{series_from_rational, BiGradedSeries, LaurentPoly, TPoly};
use crate::linalg::{DMat, Field, Ring};
use crate::{Error, Result};

type Q = BigRational;

fn q0() -> Q {
    <Q as Zero>::zero()
}

fn q1() -> Q {
    <Q as One>::one()
}

impl Ring for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(<BigRational as One>::one() / self)
        }
    }
}

/// A sparse vector over the rationals.
pub type QVec = Vec<(usize, Q)>;

fn qvec_add_scaled(acc: &mut BTreeMap<usize, Q>, v: &QVec, c: &Q) {
    for (i, x) in v {
        let e = acc.entry(*i).or_insert_with(q0);
        *e += x * c;
    }
}

fn qvec_normalize(acc: BTreeMap<usize, Q>) -> QVec {
    acc.into_iter().filter(|(_, c)| !Zero::is_zero(c)).collect()
}

/// A finite-dimensional graded algebra given by structure constants.
/// Required to be graded-local: the degree-0 part is spanned by the unit.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub basis: Vec<String>,
    pub degrees: Vec<i64>,
    pub unit: usize,
    /// `mult[i][j]` is the expansion of `b_i * b_j`.
    mult: Vec<Vec<QVec>>,
}

impl GradedAlgebra {
    pub fn new(
        basis: Vec<String>,
        degrees: Vec<i64>,
        unit: usize,
        mult: Vec<Vec<QVec>>,
    ) -> Result<Self> {
        let alg = GradedAlgebra { basis, degrees, unit, mult };
        alg.validate()?;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        // Degree-0 part is the unit line (graded-local).
        if self.degrees[self.unit] != 0 {
            return Err(Error::validation("unit must sit in degree 0"));
        }
        if self.degrees.iter().filter(|&&d| d == 0).count() != 1 {
            return Err(Error::validation(
                "algebra is not graded-local: degree-0 part exceeds the unit line",
            ));
        }
        if self.degrees.iter().any(|&d| d < 0) {
            return Err(Error::validation("negative internal degrees are not supported"));
        }
        // Unit laws, degree additivity, associativity.
        for i in 0..n {
            for j in 0..n {
                let prod = &self.mult[i][j];
                for (k, c) in prod {
                    if !Zero::is_zero(c) && self.degrees[*k] != self.degrees[i] + self.degrees[j] {
                        return Err(Error::validation("multiplication is not degree-additive"));
                    }
                }
            }
            let ei = vec![(i, q1())];
            if self.mul_elems(&unit_elem(self.unit), &ei) != ei
                || self.mul_elems(&ei, &unit_elem(self.unit)) != ei
            {
                return Err(Error::validation("unit law fails"));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul_elems(&self.mult[i][j], &vec![(k, q1())]);
                    let right = self.mul_elems(&vec![(i, q1())], &self.mult[j][k]);
                    if left != right {
                        return Err(Error::validation(format!(
                            "associativity fails on basis triple ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn mul_elems(&self, a: &QVec, b: &QVec) -> QVec {
        let mut acc = BTreeMap::new();
        for (i, x) in a {
            for (j, y) in b {
                let c = x * y;
                qvec_add_scaled(&mut acc, &self.mult[*i][*j], &c);
            }
        }
        qvec_normalize(acc)
    }

    /// `K[y_1, ..., y_n] / (y_1^2, ..., y_n^2)` with every generator in the
    /// given positive degree. Basis elements are indexed by subsets.
    pub fn nilpotent_polynomial_algebra(n_vars: usize, var_degree: i64) -> Result<Self> {
        assert!(var_degree > 0);
        let n = 1usize << n_vars;
        let name = |mask: usize| -> String {
            if mask == 0 {
                return "1".to_string();
            }
            (0..n_vars)
                .filter(|v| mask & (1 << v) != 0)
                .map(|v| format!("y{}", v + 1))
                .collect::<Vec<_>>()
                .join("*")
        };
        let basis: Vec<String> = (0..n).map(name).collect();
        let degrees: Vec<i64> =
            (0..n).map(|m| (m.count_ones() as i64) * var_degree).collect();
        let mut mult = vec![vec![QVec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                if a & b == 0 {
                    // Sign-free: the variables commute and square to zero.
                    mult[a][b] = vec![(a | b, q1())];
                }
            }
        }
        Self::new(basis, degrees, 0, mult)
    }

    /// The element `y_{k+1}` of a nilpotent polynomial algebra.
    pub fn var(&self, k: usize) -> QVec {
        vec![(1usize << k, q1())]
    }
}

fn unit_elem(unit: usize) -> QVec {
    vec![(unit, q1())]
}

/// A finite-dimensional graded module given by its action table.
#[derive(Clone, Debug)]
pub struct GradedModule {
    pub algebra: Arc<GradedAlgebra>,
    pub basis: Vec<String>,
    pub degrees: Vec<i64>,
    /// `action[i][m]` is the expansion of `b_i . m`.
    action: Vec<Vec<QVec>>,
}

impl GradedModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The algebra as a free module over itself.
    pub fn free(algebra: &Arc<GradedAlgebra>) -> Self {
        let n = algebra.dim();
        let action = (0..n)
            .map(|i| (0..n).map(|m| algebra.mult[i][m].clone()).collect())
            .collect();
        GradedModule {
            algebra: algebra.clone(),
            basis: algebra.basis.clone(),
            degrees: algebra.degrees.clone(),
            action,
        }
    }

    /// The cyclic quotient `A / sum_k A g_k`.
    pub fn quotient_by_ideal(algebra: &Arc<GradedAlgebra>, gens: &[QVec]) -> Result<Self> {
        let n = algebra.dim();
        // Span of the ideal as a subspace of A.
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for g in gens {
            for i in 0..n {
                let v = algebra.mul_elems(&vec![(i, q1())], g);
                let mut dense = vec![q0(); n];
                for (k, c) in v {
                    dense[k] = c;
                }
                rows.push(dense);
            }
        }
        let mut mat = DMat { rows };
        let pivots = mat.rref();
        let kept: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        let index_of: BTreeMap<usize, usize> =
            kept.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        // Reduction of a basis element modulo the ideal, expressed over kept
        // coordinates.
        let reduce = |i: usize| -> QVec {
            let mut dense = vec![q0(); n];
            dense[i] = q1();
            for (r, &p) in pivots.iter().enumerate() {
                let c = dense[p].clone();
                if Zero::is_zero(&c) {
                    continue;
                }
                for k in 0..n {
                    let t = &mat.rows[r][k] * &c;
                    dense[k] -= t;
                }
            }
            dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !Zero::is_zero(c))
                .map(|(k, c)| (index_of[&k], c))
                .collect()
        };
        let mut action = vec![vec![QVec::new(); kept.len()]; n];
        for i in 0..n {
            for (a, &m) in kept.iter().enumerate() {
                let prod = algebra.mul_elems(&vec![(i, q1())], &vec![(m, q1())]);
                let mut acc = BTreeMap::new();
                for (k, c) in prod {
                    qvec_add_scaled(&mut acc, &reduce(k), &c);
                }
                action[i][a] = qvec_normalize(acc);
            }
        }
        let module = GradedModule {
            algebra: algebra.clone(),
            basis: kept.iter().map(|&i| algebra.basis[i].clone()).collect(),
            degrees: kept.iter().map(|&i| algebra.degrees[i]).collect(),
            action,
        };
        module.validate()?;
        Ok(module)
    }

    pub fn act(&self, a: &QVec, v: &QVec) -> QVec {
        let mut acc = BTreeMap::new();
        for (i, x) in a {
            for (m, y) in v {
                let c = x * y;
                qvec_add_scaled(&mut acc, &self.action[*i][*m], &c);
            }
        }
        qvec_normalize(acc)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.algebra.dim();
        for i in 0..n {
            for j in 0..n {
                for m in 0..self.dim() {
                    let em = vec![(m, q1())];
                    let left = self.act(&self.algebra.mult[i][j], &em);
                    let right = self.act(&vec![(i, q1())], &self.act(&vec![(j, q1())], &em));
                    if left != right {
                        return Err(Error::validation("module axiom fails on a basis triple"));
                    }
                }
            }
        }
        for m in 0..self.dim() {
            let em = vec![(m, q1())];
            if self.act(&unit_elem(self.algebra.unit), &em) != em {
                return Err(Error::validation("module unit law fails"));
            }
        }
        // Degree additivity.
        for i in 0..n {
            for m in 0..self.dim() {
                for (k, c) in &self.action[i][m] {
                    if !Zero::is_zero(c)
                        && self.degrees[*k] != self.algebra.degrees[i] + self.degrees[m]
                    {
                        return Err(Error::validation("module action is not degree-additive"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn graded_dims(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        for &d in &self.degrees {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Minimal resolutions.

/// An element of a free module `(+)_j A(-s_j)`, stored over the product
/// basis (algebra basis x summand).
type FreeVec = QVec;

/// A free graded module with marked generator degrees.
#[derive(Clone, Debug)]
struct FreeMod {
    gen_degrees: Vec<i64>,
}

impl FreeMod {
    fn dim(&self, adim: usize) -> usize {
        self.gen_degrees.len() * adim
    }

    /// Basis index of `(algebra basis b, summand j)`.
    fn idx(&self, adim: usize, b: usize, j: usize) -> usize {
        j * adim + b
    }

    fn degree(&self, alg: &GradedAlgebra, k: usize) -> i64 {
        let (j, b) = (k / alg.dim(), k % alg.dim());
        alg.degrees[b] + self.gen_degrees[j]
    }
}

/// A minimal free resolution: generator degrees per step and differential
/// matrices over the algebra (`differentials[k]` maps step `k+1` to step
/// `k`; entries are algebra elements with no degree-0 part).
#[derive(Clone, Debug)]
pub struct MinimalResolution {
    pub algebra: Arc<GradedAlgebra>,
    /// `steps[k]` lists the generator degrees of the `k`-th free module.
    pub steps: Vec<Vec<i64>>,
    /// `differentials[k][row][col]`: entry of `F_{k+1} -> F_k`.
    pub differentials: Vec<Vec<Vec<QVec>>>,
}

/// Computes `steps + 1` free modules of the minimal resolution of `m`
/// (that is, homological degrees `0 ..= steps`).
pub fn minimal_resolution(m: &GradedModule, steps: usize) -> Result<MinimalResolution> {
    let alg = m.algebra.clone();
    let adim = alg.dim();
    // Current syzygy object: homogeneous vectors spanning a submodule of a
    // free module (for step 0, coordinates in the module itself).
    // We uniformly treat step 0 by viewing `m` with an identity "carrier".
    let mut res = MinimalResolution { algebra: alg.clone(), steps: Vec::new(), differentials: Vec::new() };

    // Positive-degree algebra basis indices.
    let positives: Vec<usize> = (0..adim).filter(|&i| alg.degrees[i] > 0).collect();

    // Generators of m: basis of m / rad m, taken as single basis vectors.
    let rad_rows: Vec<Vec<Q>> = positives
        .iter()
        .flat_map(|&i| {
            (0..m.dim()).map(move |b| (i, b))
        })
        .map(|(i, b)| {
            let v = m.act(&vec![(i, q1())], &vec![(b, q1())]);
            let mut dense = vec![q0(); m.dim()];
            for (k, c) in v {
                dense[k] = c;
            }
            dense
        })
        .collect();
    let mut rad = DMat { rows: rad_rows };
    let pivots = rad.rref();
    let gens: Vec<usize> = (0..m.dim()).filter(|b| !pivots.contains(b)).collect();
    let gen_degs: Vec<i64> = gens.iter().map(|&b| m.degrees[b]).collect();
    res.steps.push(gen_degs.clone());

    let mut carrier = FreeMod { gen_degrees: gen_degs };
    // phi: carrier -> m as a dense matrix (columns over carrier basis).
    let mut phi: Vec<FreeVec> = {
        let mut cols = vec![FreeVec::new(); carrier.dim(adim)];
        for (j, &g) in gens.iter().enumerate() {
            for b in 0..adim {
                let img = m.act(&vec![(b, q1())], &vec![(g, q1())]);
                cols[carrier.idx(adim, b, j)] = img;
            }
        }
        cols
    };
    let mut target_degrees: Vec<i64> = m.degrees.clone();

    for _ in 0..steps {
        // Kernel of phi, degree by degree.
        let kernel = homogeneous_kernel(&carrier, &alg, &phi, &target_degrees);
        // Minimal generators of the kernel: quotient by rad . kernel.
        let kdim = carrier.dim(adim);
        let mut rad_rows: Vec<Vec<Q>> = Vec::new();
        for kv in &kernel {
            for &i in &positives {
                let moved = act_free(&alg, &carrier, i, kv);
                let mut dense = vec![q0(); kdim];
                for (k, c) in moved {
                    dense[k] = c;
                }
                rad_rows.push(dense);
            }
        }
        // Select kernel vectors independent modulo rad (degree order first).
        let mut order: Vec<usize> = (0..kernel.len()).collect();
        order.sort_by_key(|&k| deg_of(&carrier, &alg, &kernel[k]));
        let mut chosen: Vec<usize> = Vec::new();
        for &k in &order {
            let mut probe = rad_rows.clone();
            for &c in &chosen {
                let mut dense = vec![q0(); kdim];
                for (i, x) in &kernel[c] {
                    dense[*i] = x.clone();
                }
                probe.push(dense);
            }
            let before = DMat { rows: probe.clone() }.rank();
            let mut dense = vec![q0(); kdim];
            for (i, x) in &kernel[k] {
                dense[*i] = x.clone();
            }
            probe.push(dense);
            if (DMat { rows: probe }).rank() > before {
                chosen.push(k);
            }
        }
        let new_degs: Vec<i64> =
            chosen.iter().map(|&k| deg_of(&carrier, &alg, &kernel[k])).collect();
        // Differential matrix over the algebra: each chosen generator as an
        // element of the previous free module.
        let prev_rank = carrier.gen_degrees.len();
        let mut diff = vec![vec![QVec::new(); chosen.len()]; prev_rank];
        for (col, &k) in chosen.iter().enumerate() {
            for (idx, c) in &kernel[k] {
                let (j, b) = (idx / adim, idx % adim);
                diff[j][col].push((b, c.clone()));
            }
        }
        // Minimality: no degree-0 components in differential entries.
        for row in &diff {
            for entry in row {
                if entry.iter().any(|(b, c)| alg.degrees[*b] == 0 && !Zero::is_zero(c)) {
                    return Err(Error::internal("resolution differential has a unit entry"));
                }
            }
        }
        res.steps.push(new_degs.clone());
        res.differentials.push(diff);
        if new_degs.is_empty() {
            // The resolution has terminated; later steps are zero.
            break;
        }
        // Next carrier and phi.
        let new_carrier = FreeMod { gen_degrees: new_degs };
        let mut new_phi = vec![FreeVec::new(); new_carrier.dim(adim)];
        for (j, &k) in chosen.iter().enumerate() {
            for b in 0..adim {
                new_phi[new_carrier.idx(adim, b, j)] = act_free(&alg, &carrier, b, &kernel[k]);
            }
        }
        target_degrees = (0..carrier.dim(adim)).map(|k| carrier.degree(&alg, k)).collect();
        phi = new_phi;
        carrier = new_carrier;
    }
    // Pad with zero steps if the resolution terminated early.
    while res.steps.len() < steps + 1 {
        res.steps.push(Vec::new());
        res.differentials.push(Vec::new());
    }
    // d . d = 0 on adjacent differentials.
    for k in 1..res.differentials.len() {
        let d1 = &res.differentials[k - 1]; // F_k -> F_{k-1}
        let d2 = &res.differentials[k]; // F_{k+1} -> F_k
        let rows = d1.len();
        let mids = d2.len();
        let cols = d2.first().map_or(0, |r| r.len());
        for r in 0..rows {
            for c in 0..cols {
                let mut acc = BTreeMap::new();
                for j in 0..mids {
                    let prod = alg.mul_elems(&d1[r][j], &d2[j][c]);
                    qvec_add_scaled(&mut acc, &prod, &q1());
                }
                if !qvec_normalize(acc).is_empty() {
                    return Err(Error::internal("resolution differentials do not compose to zero"));
                }
            }
        }
    }
    Ok(res)
}

fn deg_of(carrier: &FreeMod, alg: &GradedAlgebra, v: &FreeVec) -> i64 {
    let k = v.first().expect("homogeneous vector is nonzero").0;
    carrier.degree(alg, k)
}

/// Action of a single algebra basis element on a free-module vector.
fn act_free(alg: &GradedAlgebra, carrier: &FreeMod, i: usize, v: &FreeVec) -> FreeVec {
    let adim = alg.dim();
    let mut acc = BTreeMap::new();
    for (idx, c) in v {
        let (j, b) = (idx / adim, idx % adim);
        for (k, x) in &alg.mult[i][b] {
            let e = acc.entry(carrier.idx(adim, *k, j)).or_insert_with(q0);
            *e += x * c;
        }
    }
    qvec_normalize(acc)
}

/// Homogeneous basis of the kernel of a degree-preserving map given by its
/// columns over the carrier basis.
fn homogeneous_kernel(
    carrier: &FreeMod,
    alg: &GradedAlgebra,
    phi: &[FreeVec],
    target_degrees: &[i64],
) -> Vec<FreeVec> {
    let sdim = carrier.dim(alg.dim());
    let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for k in 0..sdim {
        by_degree.entry(carrier.degree(alg, k)).or_default().push(k);
    }
    let mut out = Vec::new();
    for (deg, cols) in by_degree {
        let tgt: Vec<usize> = (0..target_degrees.len())
            .filter(|&t| target_degrees[t] == deg)
            .collect();
        let tpos: BTreeMap<usize, usize> =
            tgt.iter().enumerate().map(|(a, &t)| (t, a)).collect();
        let mut rows = vec![vec![q0(); cols.len()]; tgt.len()];
        for (cc, &k) in cols.iter().enumerate() {
            for (t, c) in &phi[k] {
                if let Some(&r) = tpos.get(t) {
                    rows[r][cc] = c.clone();
                }
            }
        }
        for null in DMat::from_rows(rows, cols.len()).nullspace() {
            let v: FreeVec = null
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !Zero::is_zero(c))
                .map(|(cc, c)| (cols[cc], c))
                .collect();
            out.push(v);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Tor.

/// Bigraded Tor dimensions: `(homological degree, internal degree) -> dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorTable {
    pub entries: BTreeMap<(i64, i64), u64>,
    pub i_max: i64,
}

impl TorTable {
    /// Dimension at `(i, d)`; entries beyond `i_max` are unknown, not zero.
    pub fn dim(&self, i: i64, d: i64) -> u64 {
        assert!(i <= self.i_max, "Tor table is truncated at i_max = {}", self.i_max);
        self.entries.get(&(i, d)).copied().unwrap_or(0)
    }
}

/// `Tor^i_A(M, N)` for `i <= i_max`, computed by tensoring `N` with the
/// minimal resolution of `M` and taking graded homology.
pub fn tor_bigraded(m: &GradedModule, n: &GradedModule, i_max: i64) -> Result<TorTable> {
    assert!(i_max >= 0);
    if !Arc::ptr_eq(&m.algebra, &n.algebra) && m.algebra.basis != n.algebra.basis {
        return Err(Error::validation("Tor requires modules over the same algebra"));
    }
    let res = minimal_resolution(m, i_max as usize + 1)?;
    // Complex C_k = N (x)_A F_k: one copy of N per generator, shifted.
    // Basis of C_k: (n-basis, generator j), degree = deg n + shift_j.
    // The differential applies the algebra entries through the N-action.
    let dims = |k: usize| -> Vec<i64> {
        res.steps[k]
            .iter()
            .flat_map(|s| n.degrees.iter().map(move |d| d + s))
            .collect()
    };
    let matrix = |k: usize| -> DMat<Q> {
        // D_k : C_{k+1} -> C_k from differentials[k].
        let d = &res.differentials[k];
        let rows_rank = res.steps[k].len() * n.dim();
        let cols_rank = res.steps[k + 1].len() * n.dim();
        let mut rows = vec![vec![q0(); cols_rank]; rows_rank];
        for (row_gen, row_entries) in d.iter().enumerate() {
            for (col_gen, entry) in row_entries.iter().enumerate() {
                for nb in 0..n.dim() {
                    let img = n.act(entry, &vec![(nb, q1())]);
                    for (t, c) in img {
                        rows[row_gen * n.dim() + t][col_gen * n.dim() + nb] = c;
                    }
                }
            }
        }
        DMat { rows }
    };
    let mut entries = BTreeMap::new();
    for i in 0..=i_max {
        let k = i as usize;
        let cur = dims(k);
        let d_in = if (k + 1) < res.steps.len() && !res.steps[k + 1].is_empty() {
            Some(matrix(k))
        } else {
            None
        };
        let d_out = if k > 0 && !res.steps[k].is_empty() {
            Some(matrix(k - 1))
        } else {
            None
        };
        let prev_dims = if k > 0 { dims(k - 1) } else { Vec::new() };
        let next_dims = if k + 1 < res.steps.len() { dims(k + 1) } else { Vec::new() };
        let degs: std::collections::BTreeSet<i64> = cur.iter().copied().collect();
        for &deg in &degs {
            let cur_idx: Vec<usize> =
                (0..cur.len()).filter(|&a| cur[a] == deg).collect();
            let rank_out = d_out.as_ref().map_or(0, |dm| {
                let rows: Vec<usize> =
                    (0..prev_dims.len()).filter(|&r| prev_dims[r] == deg).collect();
                submatrix_rank(dm, &rows, &cur_idx)
            });
            let rank_in = d_in.as_ref().map_or(0, |dm| {
                let cols: Vec<usize> =
                    (0..next_dims.len()).filter(|&c| next_dims[c] == deg).collect();
                submatrix_rank(dm, &cur_idx, &cols)
            });
            let h = cur_idx.len() as i64 - rank_out as i64 - rank_in as i64;
            if h < 0 {
                return Err(Error::internal("negative homology dimension"));
            }
            if h > 0 {
                entries.insert((i, deg), h as u64);
            }
        }
    }
    Ok(TorTable { entries, i_max })
}

fn submatrix_rank(m: &DMat<Q>, rows: &[usize], cols: &[usize]) -> usize {
    let sub = DMat {
        rows: rows
            .iter()
            .map(|&r| cols.iter().map(|&c| m.rows[r][c].clone()).collect())
            .collect(),
    };
    if rows.is_empty() || cols.is_empty() {
        return 0;
    }
    sub.rank()
}

// ---------------------------------------------------------------------------
// The colored unknot series.

/// The algebra `K[y_1, y_2]/(y_1^2, y_2^2)` with `deg y_i = 2` and the
/// module `A/(y_1 + y_2)A`.
pub fn unknot_algebra_and_module() -> Result<(Arc<GradedAlgebra>, GradedModule)> {
    let alg = Arc::new(GradedAlgebra::nilpotent_polynomial_algebra(2, 2)?);
    let gen = {
        let mut v = alg.var(0);
        v.extend(alg.var(1));
        v
    };
    let m = GradedModule::quotient_by_ideal(&alg, &[gen])?;
    Ok((alg, m))
}

/// The closed rational form of the unknot series, as `(numerator,
/// denominator)` polynomials in `t` over Laurent polynomials in `q`.
pub fn unknot_closed_form() -> (TPoly, TPoly) {
    let mono = |c: i64, qe: i64, te: i64| TPoly::term(te, LaurentPoly::term(c, qe, 1));
    // q^{-2} t^2 + 1 + q^2 t^{-2} + (q^{-2} - q^{-2} t) / (1 - t^2 q^{-4})
    let den = TPoly::one().sub(&mono(1, -4, 2));
    let iso = mono(1, -2, 2).add(&TPoly::one()).add(&mono(1, 2, -2));
    let num = iso.mul(&den).add(&mono(1, -2, 0)).sub(&mono(1, -2, 1));
    (num, den)
}

/// The `t = 1` specialization of the closed form (exact division).
pub fn unknot_euler_characteristic() -> Result<LaurentPoly> {
    let (num, den) = unknot_closed_form();
    num.eval_t_one()
        .exact_div(&den.eval_t_one())
        .ok_or_else(|| Error::internal("Euler specialization is not exact"))
}

/// Assembles the bigraded unknot series from the three Tor summands with
/// shifts `[-2](-2)`, `[0](0)`, `[2](2)` and checks it against the closed
/// form coefficient by coefficient.
pub fn unknot_series(t_max: i64) -> Result<BiGradedSeries> {
    if t_max < 4 {
        return Err(Error::validation("unknot series needs t_max >= 4"));
    }
    let (_alg, m) = unknot_algebra_and_module()?;
    let tor = tor_bigraded(&m, &m, t_max)?;
    let mut coeffs: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    let mut add = |t: i64, c: LaurentPoly| {
        let e = coeffs.entry(t).or_insert_with(LaurentPoly::zero);
        *e = e.add(&c);
    };
    // Trivial summands [a](b) with a = b = -+2: a class in (0, 0) lands at
    // t^a q^{-b}.
    add(-2, LaurentPoly::monomial(2, 1));
    add(2, LaurentPoly::monomial(-2, 1));
    // Tor summand at [0](0): class (i, d) contributes (-1)^i t^i q^{-d}.
    for (&(i, d), &dim) in &tor.entries {
        if i > t_max {
            continue;
        }
        let mut c = LaurentPoly::term(dim as i64, -d, 1);
        if i % 2 != 0 {
            c = c.neg();
        }
        add(i, c);
    }
    let assembled = BiGradedSeries::new(-2, t_max, coeffs);
    // Cross-check against the closed form.
    let (num, den) = unknot_closed_form();
    let expansion = series_from_rational(&num, &den, t_max)?;
    for k in -2..=t_max {
        let a = assembled.coeff(k).unwrap();
        let b = expansion.coeff(k).unwrap();
        if a != b {
            return Err(Error::internal(format!(
                "assembled unknot series disagrees with the closed form at t^{k}: {a} vs {b}"
            )));
        }
    }
    Ok(assembled)
}
