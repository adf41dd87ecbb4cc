//! Irreducible `U_q(g)`-modules as explicit sparse matrices.
//!
//! `V_lambda` is built from the contravariant (Shapovalov-type) form: each
//! weight space is spanned by divided-power monomials
//! `F_{i_1}^{(n_1)} ... F_{i_k}^{(n_k)} v_h`, the form is evaluated by the
//! commutation recursion, and the Gram radical is removed by exact
//! elimination over the fraction field. The resulting bases are integral:
//! every entry of `E_i`, `F_i` and of the divided powers `F_i^{(n)}` is a
//! Laurent polynomial with integer coefficients, and this is checked during
//! construction.
//!
//! Conventions for the Cartan part: `K_mu` acts on a weight-`nu` vector by
//! `q^{<mu, nu>}` (symmetrized pairing), so `K~_{+-i} := K_{+-alpha_i}` acts
//! by `q^{+-<alpha_i, nu>} = q^{+-d_i nu^i}`, which is the normalization the
//! commutator relation `E_i F_j - F_j E_i = delta_ij (K~_i - K~_{-i}) /
//! (q^{d_i} - q^{-d_i})` requires.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::Ratio;

use crate::cartan::{CartanData, LieType, Weight};
use crate::exactalg::{quantum_binomial, quantum_factorial, quantum_integer, LaurentPoly, RatFunc};
use crate::linalg::{DMat, SpMat};
use crate::{Error, Result};

/// A divided-power monomial `F_{i_1}^{(n_1)} ... F_{i_k}^{(n_k)}` with
/// adjacent indices distinct. The empty word is `v_h`.
pub type DivWord = Vec<(usize, u32)>;

/// `[n]_{q^d}` extended to negative `n` by `[-n] = -[n]`.
pub fn qint_signed(n: i64, d: i64) -> LaurentPoly {
    if n < 0 {
        quantum_integer(-n, d).neg()
    } else {
        quantum_integer(n, d)
    }
}

pub(crate) fn monomial_from_ratio(r: Ratio<i64>) -> LaurentPoly {
    LaurentPoly::monomial(*r.numer(), *r.denom())
}

/// An integrable weight module given by explicit matrices. Irreducibles,
/// their duals and (through Kronecker products) tensor products all take
/// this shape.
#[derive(Clone, Debug)]
pub struct Module {
    pub cd: Arc<CartanData>,
    pub dim: usize,
    /// Weight of each basis vector.
    pub weights: Vec<Weight>,
    pub op_e: Vec<SpMat<LaurentPoly>>,
    pub op_f: Vec<SpMat<LaurentPoly>>,
}

impl Module {
    /// Diagonal action of `K_mu` (eigenvalue `q^{<mu, nu>}` on weight `nu`).
    pub fn k_diag(&self, mu: &Weight) -> SpMat<LaurentPoly> {
        let trip = self
            .weights
            .iter()
            .enumerate()
            .map(|(k, nu)| (k, k, monomial_from_ratio(self.cd.pairing(mu, nu))))
            .collect();
        SpMat::from_triplets(self.dim, self.dim, trip)
    }

    /// `K~_{+-i} = K_{+-alpha_i}`.
    pub fn k_tilde_diag(&self, i: usize, sign: i8) -> SpMat<LaurentPoly> {
        let alpha = self.cd.simple_root(i);
        let mu = if sign >= 0 { alpha } else { alpha.neg() };
        self.k_diag(&mu)
    }

    /// Divided power `F_i^{(n)} = F_i^n / [n]!_{q^{d_i}}` (exact).
    pub fn divided_f(&self, i: usize, n: u32) -> Result<SpMat<LaurentPoly>> {
        divided_power(&self.op_f[i], n, self.cd.symmetrizer(i))
    }

    /// Divided power `E_i^{(n)}`.
    pub fn divided_e(&self, i: usize, n: u32) -> Result<SpMat<LaurentPoly>> {
        divided_power(&self.op_e[i], n, self.cd.symmetrizer(i))
    }
}

fn divided_power(op: &SpMat<LaurentPoly>, n: u32, d: i64) -> Result<SpMat<LaurentPoly>> {
    let mut m = SpMat::identity(op.nrows());
    for _ in 0..n {
        m = op.mul_mat(&m);
    }
    let fact = quantum_factorial(n as i64, d);
    m.try_map(|c| c.exact_div(&fact))
        .ok_or_else(|| Error::internal("divided power has non-integral entries"))
}

/// The irreducible highest-weight module `V_lambda`.
#[derive(Clone, Debug)]
pub struct Repn {
    pub cd: Arc<CartanData>,
    pub highest_weight: Weight,
    pub dim: usize,
    /// Index of the highest weight vector (always 0).
    pub v_h: usize,
    /// Divided word realizing each basis vector.
    pub basis_words: Vec<DivWord>,
    /// Weight of each basis vector.
    pub basis_weights: Vec<Weight>,
    /// Weight -> basis indices.
    pub weight_spaces: BTreeMap<Weight, Vec<usize>>,
    pub op_e: Vec<SpMat<LaurentPoly>>,
    pub op_f: Vec<SpMat<LaurentPoly>>,
}

impl Repn {
    pub fn as_module(&self) -> Module {
        Module {
            cd: self.cd.clone(),
            dim: self.dim,
            weights: self.basis_weights.clone(),
            op_e: self.op_e.clone(),
            op_f: self.op_f.clone(),
        }
    }

    pub fn divided_f(&self, i: usize, n: u32) -> Result<SpMat<LaurentPoly>> {
        divided_power(&self.op_f[i], n, self.cd.symmetrizer(i))
    }

    pub fn divided_e(&self, i: usize, n: u32) -> Result<SpMat<LaurentPoly>> {
        divided_power(&self.op_e[i], n, self.cd.symmetrizer(i))
    }

    /// The quantum dimension `sum_mu dim V[mu] q^{<2 rho, mu>}`.
    pub fn quantum_character(&self) -> LaurentPoly {
        let two = Ratio::from_integer(2);
        self.basis_weights.iter().fold(LaurentPoly::zero(), |acc, mu| {
            acc.add(&monomial_from_ratio(self.cd.pairing(self.cd.rho(), mu) * two))
        })
    }

    pub fn weight_multiplicities(&self) -> BTreeMap<Weight, usize> {
        self.weight_spaces.iter().map(|(w, v)| (w.clone(), v.len())).collect()
    }
}

// ---------------------------------------------------------------------------
// Construction.

/// Process-wide memo cache for irreducibles. Construction of the same key is
/// serialized through a per-key cell; distinct keys may build in parallel.
type RepnCell = Arc<OnceLock<std::result::Result<Arc<Repn>, String>>>;

fn repn_cache() -> &'static Mutex<HashMap<(LieType, Vec<i64>), RepnCell>> {
    static CACHE: OnceLock<Mutex<HashMap<(LieType, Vec<i64>), RepnCell>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized construction of `V_lambda`.
pub fn irrep(cd: &Arc<CartanData>, lam: &Weight) -> Result<Arc<Repn>> {
    if lam.rank() != cd.rank {
        return Err(Error::validation(format!(
            "weight {lam} has wrong rank for {}",
            cd.lie_type
        )));
    }
    if !lam.is_dominant() {
        return Err(Error::validation(format!(
            "highest weight must be dominant, got {lam}"
        )));
    }
    let key = (cd.lie_type, lam.0.clone());
    let cell = {
        let mut map = repn_cache().lock().unwrap();
        map.entry(key).or_default().clone()
    };
    let res = cell.get_or_init(|| build_irrep(cd, lam).map(Arc::new).map_err(|e| e.to_string()));
    res.clone().map_err(Error::Internal)
}

/// Total number of divided words allowed per representation; a guard against
/// combinatorial blowup far beyond desk scale.
const MAX_WORDS: usize = 500_000;

fn build_irrep(cd: &Arc<CartanData>, lam: &Weight) -> Result<Repn> {
    let rank = cd.rank;
    // Enumerate the weight system by height below lambda.
    let mut weights: Vec<Weight> = vec![lam.clone()];
    let mut seen: std::collections::BTreeSet<Weight> = weights.iter().cloned().collect();
    let mut frontier = weights.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for mu in &frontier {
            for i in 0..rank {
                let nu = mu.sub(&cd.simple_root(i));
                if cd.weight_in_rep(lam, &nu) && seen.insert(nu.clone()) {
                    next.push(nu);
                }
            }
        }
        weights.extend(next.iter().cloned());
        frontier = next;
    }
    let height = |mu: &Weight| -> i64 {
        let cs = cd
            .root_coords_integral(&lam.sub(mu))
            .expect("weight differences lie in the root lattice");
        cs.iter().sum()
    };
    weights.sort_by_key(|mu| (height(mu), mu.clone()));

    // Divided-word candidates per weight, built by extending enumerated
    // suffixes on the left.
    let mut words: BTreeMap<Weight, Vec<DivWord>> = BTreeMap::new();
    words.insert(lam.clone(), vec![Vec::new()]);
    let mut total_words = 1usize;
    for mu in weights.iter().skip(1) {
        let mut cands: Vec<DivWord> = Vec::new();
        for i in 0..rank {
            let mut n = 1i64;
            loop {
                let src = mu.add(&cd.simple_root(i).scale(n));
                if !cd.weight_in_rep(lam, &src) {
                    break;
                }
                if let Some(ws) = words.get(&src) {
                    for w in ws {
                        if w.first().map(|f| f.0) != Some(i) {
                            let mut w2 = Vec::with_capacity(w.len() + 1);
                            w2.push((i, n as u32));
                            w2.extend(w.iter().cloned());
                            cands.push(w2);
                        }
                    }
                }
                n += 1;
            }
        }
        total_words += cands.len();
        if total_words > MAX_WORDS {
            return Err(Error::internal(format!(
                "representation {lam} of {} exceeds the divided-word budget",
                cd.lie_type
            )));
        }
        cands.sort_by(|a, b| sort_key(a).cmp(&sort_key(b)));
        cands.dedup();
        words.insert(mu.clone(), cands);
    }

    let mut shap = Shapovalov { cd: cd.clone(), lam: lam.clone(), memo: HashMap::new() };

    // Per-weight Gram elimination: pivot words become the basis, and every
    // candidate gets coordinates over the pivots.
    let mut basis_words: Vec<DivWord> = Vec::new();
    let mut basis_weights: Vec<Weight> = Vec::new();
    let mut weight_spaces: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    let mut coords: BTreeMap<Weight, HashMap<DivWord, Vec<RatFunc>>> = BTreeMap::new();

    for mu in &weights {
        let cands = &words[mu];
        let n = cands.len();
        if n == 0 {
            continue;
        }
        let gram = {
            let mut g = vec![vec![RatFunc::zero(); n]; n];
            for r in 0..n {
                for c in r..n {
                    let v = RatFunc::from_laurent(shap.divided(&cands[r], &cands[c])?);
                    g[r][c] = v.clone();
                    g[c][r] = v;
                }
            }
            DMat { rows: g }
        };
        let mut red = gram.clone();
        let pivots = red.rref();
        let dim_mu = pivots.len();
        if dim_mu == 0 {
            continue;
        }
        // Solve G[pivots, pivots] X = G[pivots, all candidates].
        let sub = DMat {
            rows: pivots
                .iter()
                .map(|&r| pivots.iter().map(|&c| gram.rows[r][c].clone()).collect())
                .collect(),
        };
        let rhs = DMat { rows: pivots.iter().map(|&r| gram.rows[r].clone()).collect() };
        let x = sub
            .solve(&rhs)
            .ok_or_else(|| Error::internal("Gram pivot block is singular"))?;
        let mut local = HashMap::new();
        for (ci, w) in cands.iter().enumerate() {
            local.insert(
                w.clone(),
                (0..dim_mu).map(|b| x.rows[b][ci].clone()).collect::<Vec<_>>(),
            );
        }
        coords.insert(mu.clone(), local);
        let start = basis_words.len();
        for &p in &pivots {
            basis_words.push(cands[p].clone());
            basis_weights.push(mu.clone());
        }
        weight_spaces.insert(mu.clone(), (start..basis_words.len()).collect());
    }

    let dim = basis_words.len();
    let expected = cd.weyl_dim(lam);
    if num_bigint::BigInt::from(dim) != expected {
        return Err(Error::internal(format!(
            "dimension {dim} of V_{lam} disagrees with the Weyl formula value {expected}"
        )));
    }
    let lowest = cd.w0(lam);
    if weight_spaces.get(&lowest).map(|v| v.len()) != Some(1) {
        return Err(Error::internal("lowest weight space is not 1-dimensional"));
    }

    // Assemble F_i and E_i.
    let mut op_f = Vec::with_capacity(rank);
    let mut op_e = Vec::with_capacity(rank);
    for i in 0..rank {
        let alpha = cd.simple_root(i);
        let mut f_trip: Vec<(usize, usize, RatFunc)> = Vec::new();
        let mut e_trip: Vec<(usize, usize, RatFunc)> = Vec::new();
        for (col, w) in basis_words.iter().enumerate() {
            let mu = &basis_weights[col];
            let down = mu.sub(&alpha);
            if let Some(local) = coords.get(&down) {
                let (coeff, w2) = f_apply_word(cd, i, w);
                let cs = local
                    .get(&w2)
                    .ok_or_else(|| Error::internal("F-image word missing from candidates"))?;
                for (b, c) in cs.iter().enumerate() {
                    if !c.is_zero() {
                        f_trip.push((
                            weight_spaces[&down][b],
                            col,
                            c.mul(&RatFunc::from_laurent(coeff.clone())),
                        ));
                    }
                }
            }
            let up = mu.add(&alpha);
            if let Some(local) = coords.get(&up) {
                for (coeff, w2) in e_apply_word(cd, lam, i, w) {
                    // A word absent from the candidate set has an
                    // intermediate weight outside the weight system, so it
                    // represents the zero vector.
                    let Some(cs) = local.get(&w2) else { continue };
                    for (b, c) in cs.iter().enumerate() {
                        if !c.is_zero() {
                            e_trip.push((
                                weight_spaces[&up][b],
                                col,
                                c.mul(&RatFunc::from_laurent(coeff.clone())),
                            ));
                        }
                    }
                }
            }
        }
        let to_laurent = |trip: Vec<(usize, usize, RatFunc)>| -> Result<SpMat<LaurentPoly>> {
            SpMat::from_triplets(dim, dim, trip)
                .try_map(|v| v.as_laurent().cloned())
                .ok_or_else(|| {
                    Error::internal("operator entry is not integral; basis is not an integral form")
                })
        };
        op_f.push(to_laurent(f_trip)?);
        op_e.push(to_laurent(e_trip)?);
    }

    let rep = Repn {
        cd: cd.clone(),
        highest_weight: lam.clone(),
        dim,
        v_h: 0,
        basis_words,
        basis_weights,
        weight_spaces,
        op_e,
        op_f,
    };

    for i in 0..rank {
        if !rep.op_e[i].col(rep.v_h).is_empty() {
            return Err(Error::internal("highest weight vector is not singular"));
        }
    }
    // Divided powers stay integral along every i-string.
    for i in 0..rank {
        let mut n = 2u32;
        let mut pw = rep.op_f[i].mul_mat(&rep.op_f[i]);
        while !pw.is_zero_mat() {
            rep.divided_f(i, n)?;
            rep.divided_e(i, n)?;
            pw = pw.mul_mat(&rep.op_f[i]);
            n += 1;
        }
    }
    Ok(rep)
}

// Within a weight space every candidate has the same plain length, so the
// effective order is (factor count, plain sequence): words with higher
// divided powers come first. Pivoting on the most-divided words keeps the
// chosen basis inside the divided-power integral form; plain-first orders
// can pick pivots that are non-unit multiples of lattice generators.
fn sort_key(w: &DivWord) -> (usize, usize, Vec<usize>) {
    let plain = plain_word(w);
    (plain.len(), w.len(), plain)
}

fn plain_word(w: &DivWord) -> Vec<usize> {
    let mut out = Vec::new();
    for &(i, n) in w {
        for _ in 0..n {
            out.push(i);
        }
    }
    out
}

/// `F_i * w` as a single divided word with coefficient (merging with the
/// leading factor when indices agree).
fn f_apply_word(cd: &CartanData, i: usize, w: &DivWord) -> (LaurentPoly, DivWord) {
    if let Some(&(j, m)) = w.first() {
        if j == i {
            let mut w2 = w.clone();
            w2[0].1 = m + 1;
            return (quantum_integer(m as i64 + 1, cd.symmetrizer(i)), w2);
        }
    }
    let mut w2 = Vec::with_capacity(w.len() + 1);
    w2.push((i, 1));
    w2.extend(w.iter().cloned());
    (LaurentPoly::one(), w2)
}

/// `E_i * (w v_h)` expanded over divided words: one term per occurrence of
/// the index `i`, with the quantum-integer coefficient of the commutation
/// past the suffix, merging neighbors when an exponent drops to zero.
fn e_apply_word(
    cd: &CartanData,
    lam: &Weight,
    i: usize,
    w: &DivWord,
) -> Vec<(LaurentPoly, DivWord)> {
    let d_i = cd.symmetrizer(i);
    let mut out = Vec::new();
    let mut suffix_wt = lam.clone();
    let mut suffixes = vec![lam.clone(); w.len()];
    for p in (0..w.len()).rev() {
        suffixes[p] = suffix_wt.clone();
        let (idx, n) = w[p];
        suffix_wt = suffix_wt.sub(&cd.simple_root(idx).scale(n as i64));
    }
    for p in 0..w.len() {
        let (idx, n) = w[p];
        if idx != i {
            continue;
        }
        let a = suffixes[p].0[i] + 1 - n as i64;
        let mut coeff = qint_signed(a, d_i);
        if coeff.is_zero() {
            continue;
        }
        let mut w2 = w.clone();
        if n > 1 {
            w2[p].1 = n - 1;
        } else {
            w2.remove(p);
            // Removing the factor may expose equal neighbors; merge them.
            if p > 0 && p < w2.len() && w2[p - 1].0 == w2[p].0 {
                let (j, a1) = w2[p - 1];
                let (_, a2) = w2[p];
                coeff = coeff.mul(&quantum_binomial(
                    (a1 + a2) as i64,
                    a1 as i64,
                    cd.symmetrizer(j),
                ));
                w2[p - 1].1 = a1 + a2;
                w2.remove(p);
            }
        }
        out.push((coeff, w2));
    }
    out
}

/// Contravariant form evaluator with memoization on plain word pairs.
struct Shapovalov {
    cd: Arc<CartanData>,
    lam: Weight,
    memo: HashMap<(Vec<usize>, Vec<usize>), LaurentPoly>,
}

impl Shapovalov {
    /// `<F_I v_h, F_J v_h>` for plain words.
    fn plain(&mut self, i_word: &[usize], j_word: &[usize]) -> LaurentPoly {
        if i_word.is_empty() {
            return if j_word.is_empty() { LaurentPoly::one() } else { LaurentPoly::zero() };
        }
        if i_word.len() != j_word.len() {
            return LaurentPoly::zero();
        }
        let key = (i_word.to_vec(), j_word.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let head = i_word[0];
        let rest = &i_word[1..];
        // E_head annihilates in place at each matching position of J, with
        // the quantum integer of the weight below that position.
        let mut acc = LaurentPoly::zero();
        let mut suffix_wt = self.lam.clone();
        let mut suffixes = vec![self.lam.clone(); j_word.len()];
        for p in (0..j_word.len()).rev() {
            suffixes[p] = suffix_wt.clone();
            suffix_wt = suffix_wt.sub(&self.cd.simple_root(j_word[p]));
        }
        for p in 0..j_word.len() {
            if j_word[p] != head {
                continue;
            }
            let coeff = qint_signed(suffixes[p].0[head], self.cd.symmetrizer(head));
            if coeff.is_zero() {
                continue;
            }
            let mut rest_j = j_word.to_vec();
            rest_j.remove(p);
            let sub = self.plain(rest, &rest_j);
            acc = acc.add(&coeff.mul(&sub));
        }
        self.memo.insert(key, acc.clone());
        acc
    }

    /// Form on divided words: the plain value divided by both factorials.
    fn divided(&mut self, a: &DivWord, b: &DivWord) -> Result<LaurentPoly> {
        let pa = plain_word(a);
        let pb = plain_word(b);
        let raw = self.plain(&pa, &pb);
        if raw.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let fact = |w: &DivWord| -> LaurentPoly {
            w.iter().fold(LaurentPoly::one(), |acc, &(i, n)| {
                acc.mul(&quantum_factorial(n as i64, self.cd.symmetrizer(i)))
            })
        };
        raw.exact_div(&fact(a).mul(&fact(b)))
            .ok_or_else(|| Error::internal("contravariant form is not integral on divided words"))
    }
}

// ---------------------------------------------------------------------------
// Extremal vectors and duals.

/// Checks that `word` is a reduced expression for the longest element.
fn check_reduced_for_w0(cd: &CartanData, word: &[usize]) -> Result<()> {
    if word.len() != cd.positive_roots().len() {
        return Err(Error::validation("word has wrong length for w0"));
    }
    let mut mu = cd.rho().clone();
    for &i in word {
        if i >= cd.rank {
            return Err(Error::validation("reflection index out of range"));
        }
        mu = cd.weyl_act(i, &mu);
    }
    if !mu.is_antidominant() {
        return Err(Error::validation("word does not represent w0"));
    }
    Ok(())
}

/// The canonical lowest-weight vector: applies the divided-power string
/// `F_{i_1}^{(lambda^{i_1})}, F_{i_2}^{((s_1 lambda)^{i_2})}, ...` along a
/// reduced word for `w_0`. The result spans the lowest weight space.
pub fn extremal_vector(rep: &Repn, word: &[usize]) -> Result<SpMat<LaurentPoly>> {
    check_reduced_for_w0(&rep.cd, word)?;
    let mut v = SpMat::from_triplets(rep.dim, 1, vec![(rep.v_h, 0, LaurentPoly::one())]);
    let mut wt = rep.highest_weight.clone();
    for &i in word {
        let n = wt.0[i];
        if n < 0 {
            return Err(Error::internal("negative divided-power exponent along w0 string"));
        }
        if n > 0 {
            v = rep.divided_f(i, n as u32)?.mul_mat(&v);
        }
        wt = rep.cd.weyl_act(i, &wt);
    }
    if v.is_zero_mat() {
        return Err(Error::internal("extremal vector vanished"));
    }
    if wt != rep.cd.w0(&rep.highest_weight) {
        return Err(Error::internal("extremal vector has wrong weight"));
    }
    Ok(v)
}

/// Solves for the one-dimensional space of invariant pairings
/// `V (x) W -> K` (trivial coproduct action), returned as an unnormalized
/// `dim V x dim W` matrix over the fraction field.
pub fn invariant_pairing_raw(v: &Repn, w: &Repn) -> Result<DMat<RatFunc>> {
    let rank = v.cd.rank;
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    for a in 0..v.dim {
        for b in 0..w.dim {
            if v.basis_weights[a].add(&w.basis_weights[b]).is_zero() {
                index.insert((a, b), unknowns.len());
                unknowns.push((a, b));
            }
        }
    }
    if unknowns.is_empty() {
        return Err(Error::internal("no weight-zero pairs for invariant pairing"));
    }
    let mut rows: Vec<Vec<RatFunc>> = Vec::new();
    let mut push_terms = |terms: Vec<(usize, usize, LaurentPoly)>| {
        let mut row = vec![RatFunc::zero(); unknowns.len()];
        let mut nonzero = false;
        for (a, b, c) in terms {
            if let Some(&k) = index.get(&(a, b)) {
                row[k] = row[k].add(&RatFunc::from_laurent(c));
                nonzero = true;
            }
        }
        if nonzero {
            rows.push(row);
        }
    };
    let vm = v.as_module();
    let wm = w.as_module();
    for i in 0..rank {
        let kv = vm.k_tilde_diag(i, 1);
        let kw_neg = wm.k_tilde_diag(i, -1);
        for a in 0..v.dim {
            for b in 0..w.dim {
                // E-invariance: P(E_i a, b) + P(K~_i a, E_i b) = 0.
                let mut terms = Vec::new();
                for (r, c) in v.op_e[i].col(a) {
                    terms.push((*r, b, c.clone()));
                }
                let ka = kv.entry(a, a);
                for (r, c) in w.op_e[i].col(b) {
                    terms.push((a, *r, c.mul(&ka)));
                }
                push_terms(terms);
                // F-invariance: P(F_i a, K~_{-i} b) + P(a, F_i b) = 0.
                let mut terms = Vec::new();
                let kb = kw_neg.entry(b, b);
                for (r, c) in v.op_f[i].col(a) {
                    terms.push((*r, b, c.mul(&kb)));
                }
                for (r, c) in w.op_f[i].col(b) {
                    terms.push((a, *r, c.clone()));
                }
                push_terms(terms);
            }
        }
    }
    let system = DMat::from_rows(rows, unknowns.len());
    let null = system.nullspace();
    if null.len() != 1 {
        return Err(Error::internal(format!(
            "invariant pairing space has dimension {}, expected 1",
            null.len()
        )));
    }
    let sol = &null[0];
    let mut p = DMat::zero(v.dim, w.dim);
    for (k, &(a, b)) in unknowns.iter().enumerate() {
        p.rows[a][b] = sol[k].clone();
    }
    Ok(p)
}

/// The dual module of `base`, with action through the antipode
/// (`S(E_i) = -K~_{-i} E_i`, `S(F_i) = -F_i K~_i`), together with the fixed
/// isomorphism onto `V_{lambda^*}`.
#[derive(Clone, Debug)]
pub struct DualRepn {
    pub base: Arc<Repn>,
    /// `V_{lambda^*}` as a constructed irreducible.
    pub target: Arc<Repn>,
    /// Dual-basis module with the antipode action.
    pub dual_module: Module,
    /// Matrix of the isomorphism `V_base^* -> V_{lambda^*}` (dual-basis
    /// coordinates to target coordinates).
    pub iso_to_target: DMat<RatFunc>,
    /// The invariant pairing `V (x) V_{lambda^*} -> K` with
    /// `<v_h, v_l> = 1` (entry `[a][b]` pairs base vector `a` with target
    /// vector `b`).
    pub pairing: DMat<RatFunc>,
    /// The evaluation pairing `V_{lambda^*} (x) V -> K` with
    /// `eval(v_l, v_h) = 1`; this is the one inducing the isomorphism.
    pub eval_pairing: DMat<RatFunc>,
    /// The canonical lowest-weight vector of the target.
    pub v_l: SpMat<LaurentPoly>,
}

fn scale_dmat(m: &mut DMat<RatFunc>, s: &RatFunc) {
    for row in m.rows.iter_mut() {
        for val in row.iter_mut() {
            *val = val.mul(s);
        }
    }
}

/// The literal dual module on the dual basis, with action through the
/// antipode: `op^* = (S(op))^T`. The dual-basis lattice is stable under
/// divided powers, so all entries stay integral.
pub fn dual_module_of(rep: &Repn) -> Module {
    let cd = &rep.cd;
    let base_mod = rep.as_module();
    let mut op_e = Vec::new();
    let mut op_f = Vec::new();
    for i in 0..cd.rank {
        let k_neg = base_mod.k_tilde_diag(i, -1);
        let k_pos = base_mod.k_tilde_diag(i, 1);
        let se = k_neg.mul_mat(&rep.op_e[i]).scale(&LaurentPoly::one().neg());
        let sf = rep.op_f[i].mul_mat(&k_pos).scale(&LaurentPoly::one().neg());
        op_e.push(se.transpose());
        op_f.push(sf.transpose());
    }
    Module {
        cd: cd.clone(),
        dim: rep.dim,
        weights: rep.basis_weights.iter().map(|w| w.neg()).collect(),
        op_e,
        op_f,
    }
}

/// Builds the dual of `rep` and fixes `V^* ~ V_{lambda^*}` through the
/// invariant pairings normalized against the extremal vector `v_l`.
pub fn dual_repn(rep: &Arc<Repn>, word: &[usize]) -> Result<DualRepn> {
    let cd = &rep.cd;
    let lam_star = cd.dual_weight(&rep.highest_weight);
    let target = irrep(cd, &lam_star)?;
    let v_l = extremal_vector(&target, word)?;
    let dual_module = dual_module_of(rep);

    // Invariant pairing P : V (x) V_{lambda^*} -> K with P(v_h, v_l) = 1.
    let mut p = invariant_pairing_raw(rep, &target)?;
    let mut norm = RatFunc::zero();
    for (r, c) in v_l.col(0) {
        norm = norm.add(&p.rows[rep.v_h][*r].mul(&RatFunc::from_laurent(c.clone())));
    }
    let scale = norm
        .inv()
        .ok_or_else(|| Error::internal("pairing vanishes on (v_h, v_l)"))?;
    scale_dmat(&mut p, &scale);

    // Evaluation pairing Q : V_{lambda^*} (x) V -> K with Q(v_l, v_h) = 1.
    // The functional x |-> Q(x, -) is a module map onto the antipode dual,
    // so Q induces the isomorphism.
    let mut q = invariant_pairing_raw(&target, rep)?;
    let mut norm = RatFunc::zero();
    for (r, c) in v_l.col(0) {
        norm = norm.add(&q.rows[*r][rep.v_h].mul(&RatFunc::from_laurent(c.clone())));
    }
    let scale = norm
        .inv()
        .ok_or_else(|| Error::internal("eval pairing vanishes on (v_l, v_h)"))?;
    scale_dmat(&mut q, &scale);

    // psi: V_{lambda^*} -> V^* has matrix Q^T; the exposed direction
    // (dual space onto the constructed irreducible) is its inverse.
    let qt = DMat {
        rows: (0..rep.dim)
            .map(|a| (0..target.dim).map(|b| q.rows[b][a].clone()).collect())
            .collect(),
    };
    let iso_to_target = qt
        .invert()
        .ok_or_else(|| Error::internal("evaluation pairing is degenerate"))?;
    Ok(DualRepn {
        base: rep.clone(),
        target,
        dual_module,
        iso_to_target,
        pairing: p,
        eval_pairing: q,
        v_l,
    })
}

impl DualRepn {
    /// Checks that the isomorphism intertwines the antipode action on the
    /// dual basis with the constructed `V_{lambda^*}` on all generators.
    pub fn verify_intertwining(&self) -> Result<()> {
        let to_rf = |m: &SpMat<LaurentPoly>| m.map(|c| RatFunc::from_laurent(c.clone()));
        let iso = SpMat::from_dense(&self.iso_to_target);
        for i in 0..self.base.cd.rank {
            for (name, dual_op, tgt_op) in [
                ("E", &self.dual_module.op_e[i], &self.target.op_e[i]),
                ("F", &self.dual_module.op_f[i], &self.target.op_f[i]),
            ] {
                let lhs = iso.mul_mat(&to_rf(dual_op));
                let rhs = to_rf(tgt_op).mul_mat(&iso);
                if lhs != rhs {
                    return Err(Error::internal(format!(
                        "dual isomorphism fails to intertwine {name}_{i}"
                    )));
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Relation checking.

/// Verifies the defining relations of `U_q(g)` as exact matrix identities on
/// a constructed module: the Cartan laws, the `EF` commutator against
/// `(K~_i - K~_{-i})/(q^{d_i} - q^{-d_i})`, and both quantum Serre
/// relations.
pub fn verify_relations(m: &Module) -> Result<()> {
    let cd = &m.cd;
    let rank = cd.rank;
    let probes: Vec<Weight> = (0..rank)
        .map(|i| Weight::fundamental(rank, i))
        .chain([Weight(vec![1; rank])])
        .collect();
    if !m.k_diag(&Weight::zero(rank)).is_identity() {
        return Err(Error::internal("K_0 is not the identity"));
    }
    for mu in &probes {
        for nu in &probes {
            let lhs = m.k_diag(mu).mul_mat(&m.k_diag(nu));
            if lhs != m.k_diag(&mu.add(nu)) {
                return Err(Error::internal("K_mu K_nu != K_{mu+nu}"));
            }
        }
    }
    for mu in &probes {
        let k = m.k_diag(mu);
        let k_inv = m.k_diag(&mu.neg());
        for i in 0..rank {
            let scal = monomial_from_ratio(cd.pairing(mu, &cd.simple_root(i)));
            let lhs = k.mul_mat(&m.op_e[i]).mul_mat(&k_inv);
            if lhs != m.op_e[i].scale(&scal) {
                return Err(Error::internal(format!("K-E relation fails for i={i}")));
            }
            let lhs_f = k.mul_mat(&m.op_f[i]).mul_mat(&k_inv);
            let scal_inv = scal.unit_inv().expect("K eigenvalues are units");
            if lhs_f != m.op_f[i].scale(&scal_inv) {
                return Err(Error::internal(format!("K-F relation fails for i={i}")));
            }
        }
    }
    for i in 0..rank {
        for j in 0..rank {
            let lhs = m.op_e[i]
                .mul_mat(&m.op_f[j])
                .sub_mat(&m.op_f[j].mul_mat(&m.op_e[i]));
            if i != j {
                if !lhs.is_zero_mat() {
                    return Err(Error::internal(format!("[E_{i}, F_{j}] != 0")));
                }
            } else {
                let d_i = cd.symmetrizer(i);
                let trip = m
                    .weights
                    .iter()
                    .enumerate()
                    .map(|(k, nu)| (k, k, qint_signed(nu.0[i], d_i)))
                    .collect();
                let rhs = SpMat::from_triplets(m.dim, m.dim, trip);
                if lhs != rhs {
                    return Err(Error::internal(format!("EF commutator fails for i={i}")));
                }
            }
        }
    }
    for i in 0..rank {
        for j in 0..rank {
            if i == j {
                continue;
            }
            let n = 1 - cd.cartan_entry(i, j);
            let mut acc_e = SpMat::zero(m.dim, m.dim);
            let mut acc_f = SpMat::zero(m.dim, m.dim);
            for a in 0..=n {
                let b = n - a;
                let sign = if a % 2 == 0 { LaurentPoly::one() } else { LaurentPoly::one().neg() };
                let te = m
                    .divided_e(i, a as u32)?
                    .mul_mat(&m.op_e[j])
                    .mul_mat(&m.divided_e(i, b as u32)?);
                let tf = m
                    .divided_f(i, a as u32)?
                    .mul_mat(&m.op_f[j])
                    .mul_mat(&m.divided_f(i, b as u32)?);
                acc_e = acc_e.add_mat(&te.scale(&sign));
                acc_f = acc_f.add_mat(&tf.scale(&sign));
            }
            if !acc_e.is_zero_mat() || !acc_f.is_zero_mat() {
                return Err(Error::internal(format!("Serre relation fails for ({i},{j})")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(name: &str) -> Arc<CartanData> {
        Arc::new(CartanData::from_name(name).unwrap())
    }

    #[test]
    fn a1_color1() {
        let c = cd("A1");
        let rep = irrep(&c, &Weight(vec![1])).unwrap();
        assert_eq!(rep.dim, 2);
        assert!(rep.basis_weights.contains(&Weight(vec![1])));
        assert!(rep.basis_weights.contains(&Weight(vec![-1])));
        // E F v_h = v_h.
        let ef = rep.op_e[0].mul_mat(&rep.op_f[0]);
        assert_eq!(ef.entry(0, 0), LaurentPoly::one());
    }

    #[test]
    fn a1_color2_structure() {
        let c = cd("A1");
        let rep = irrep(&c, &Weight(vec![2])).unwrap();
        assert_eq!(rep.dim, 3);
        assert_eq!(
            rep.weight_spaces.keys().cloned().collect::<Vec<_>>(),
            vec![Weight(vec![-2]), Weight(vec![0]), Weight(vec![2])]
        );
        // E F v_h = [2] v_h.
        let ef = rep.op_e[0].mul_mat(&rep.op_f[0]);
        assert_eq!(ef.entry(0, 0), quantum_integer(2, 1));
    }

    #[test]
    fn non_dominant_rejected() {
        let c = cd("A1");
        assert!(irrep(&c, &Weight(vec![-1])).is_err());
    }

    #[test]
    fn dims_match_weyl() {
        for (name, lam, dim) in [
            ("A2", vec![1, 1], 8usize),
            ("A2", vec![1, 0], 3),
            ("B2", vec![1, 0], 5),
            ("B2", vec![0, 1], 4),
            ("A1", vec![4], 5),
        ] {
            let c = cd(name);
            let rep = irrep(&c, &Weight(lam)).unwrap();
            assert_eq!(rep.dim, dim, "{name}");
        }
    }

    #[test]
    fn relations_battery() {
        for (name, lams) in [
            ("A1", vec![vec![1], vec![2], vec![3], vec![4]]),
            ("A2", vec![vec![1, 0], vec![0, 1], vec![1, 1]]),
            ("B2", vec![vec![1, 0], vec![0, 1]]),
        ] {
            let c = cd(name);
            for lam in lams {
                let rep = irrep(&c, &Weight(lam.clone())).unwrap();
                verify_relations(&rep.as_module())
                    .unwrap_or_else(|e| panic!("relations fail on {name} {lam:?}: {e}"));
            }
        }
    }

    #[test]
    fn multiplicities_match_freudenthal() {
        for (name, lam) in [
            ("A2", vec![1, 1]),
            ("A2", vec![2, 0]),
            ("B2", vec![1, 1]),
            ("A1", vec![3]),
        ] {
            let c = cd(name);
            let rep = irrep(&c, &Weight(lam.clone())).unwrap();
            let oracle = c.freudenthal(&Weight(lam.clone())).unwrap();
            for (w, m) in rep.weight_multiplicities() {
                assert_eq!(
                    oracle.get(&w).copied().unwrap_or(0) as usize,
                    m,
                    "{name} {lam:?} {w}"
                );
            }
            let total: usize = rep.weight_multiplicities().values().sum();
            assert_eq!(total, rep.dim);
        }
    }

    #[test]
    fn quantum_characters() {
        let c = cd("A1");
        let qdim1 = irrep(&c, &Weight(vec![1])).unwrap().quantum_character();
        assert_eq!(qdim1, quantum_integer(2, 1));
        let qdim2 = irrep(&c, &Weight(vec![2])).unwrap().quantum_character();
        assert_eq!(qdim2, quantum_integer(3, 1));
        let a2 = cd("A2");
        let q3 = irrep(&a2, &Weight(vec![1, 0])).unwrap().quantum_character();
        assert_eq!(q3, quantum_integer(3, 1));
    }

    #[test]
    fn extremal_vectors() {
        let c = cd("A1");
        let rep = irrep(&c, &Weight(vec![2])).unwrap();
        let v = extremal_vector(&rep, &[0]).unwrap();
        assert_eq!(v.col(0).len(), 1);
        let idx = v.col(0)[0].0;
        assert_eq!(rep.basis_weights[idx], Weight(vec![-2]));

        let a2 = cd("A2");
        let rep = irrep(&a2, &Weight(vec![1, 0])).unwrap();
        let v = extremal_vector(&rep, &[0, 1, 0]).unwrap();
        let idx = v.col(0)[0].0;
        assert_eq!(rep.basis_weights[idx], Weight(vec![0, -1]));

        let triv = irrep(&c, &Weight(vec![0])).unwrap();
        let v = extremal_vector(&triv, &[0]).unwrap();
        assert_eq!(v.col(0)[0].0, triv.v_h);
    }

    #[test]
    fn extremal_independent_of_reduced_word() {
        let a2 = cd("A2");
        let rep = irrep(&a2, &Weight(vec![1, 0])).unwrap();
        let v1 = extremal_vector(&rep, &[0, 1, 0]).unwrap();
        let v2 = extremal_vector(&rep, &[1, 0, 1]).unwrap();
        assert_eq!(v1, v2);
        let b2 = cd("B2");
        let rep = irrep(&b2, &Weight(vec![1, 0])).unwrap();
        let v1 = extremal_vector(&rep, &[0, 1, 0, 1]).unwrap();
        let v2 = extremal_vector(&rep, &[1, 0, 1, 0]).unwrap();
        assert_eq!(v1, v2);
    }

    #[test]
    fn dual_examples() {
        let c = cd("A1");
        let rep = irrep(&c, &Weight(vec![1])).unwrap();
        let dual = dual_repn(&rep, &[0]).unwrap();
        assert_eq!(dual.target.highest_weight, Weight(vec![1]));
        dual.verify_intertwining().unwrap();

        let a2 = cd("A2");
        let rep = irrep(&a2, &Weight(vec![1, 0])).unwrap();
        let dual = dual_repn(&rep, &[0, 1, 0]).unwrap();
        assert_eq!(dual.target.highest_weight, Weight(vec![0, 1]));
        dual.verify_intertwining().unwrap();
    }

    #[test]
    fn lowest_space_one_dimensional() {
        for (name, lam) in [("A2", vec![1, 1]), ("B2", vec![1, 0])] {
            let c = cd(name);
            let rep = irrep(&c, &Weight(lam)).unwrap();
            let lowest = c.w0(&rep.highest_weight);
            assert_eq!(rep.weight_spaces[&lowest].len(), 1);
        }
    }
}
