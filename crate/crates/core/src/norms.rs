//! Norms on finitely supported sequences in exact rational arithmetic: the
//! family norm `‖x‖_𝓕 = sup_{F∈𝓕} |Σ_{n∈F} x_n|`, suppression checks, the
//! Tsirelson-type norms `T_α` (see [`tsirelson`]), and the ℓ¹-spreading
//! tools built on them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Neg};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::families::{adequacy, Evaluator, FamilyError, FamilySpec};
use crate::finset::FinSet;
use crate::trees::SetPairs;

pub mod tsirelson;

pub use tsirelson::{tsirelson_norm, Engine, LastEndpoint, TsirelsonOptions, TsirelsonWitness};

pub type Rational = num_rational::BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// A finitely supported rational sequence indexed by positive naturals.
/// Zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoeffVec(BTreeMap<u32, Rational>);

impl CoeffVec {
    /// Drops zero entries; rejects index 0 and repeated indices.
    pub fn new<I: IntoIterator<Item = (u32, Rational)>>(entries: I) -> Result<Self, NormError> {
        let mut map = BTreeMap::new();
        for (i, v) in entries {
            if i == 0 {
                return Err(NormError::InvalidInput(String::from("indices start at 1")));
            }
            if map.contains_key(&i) {
                return Err(NormError::InvalidInput(alloc::format!("index {i} given twice")));
            }
            if !v.is_zero() {
                map.insert(i, v);
            }
        }
        Ok(CoeffVec(map))
    }

    /// `Σ_{n∈F} e_n`.
    pub fn indicator(f: &FinSet) -> Self {
        CoeffVec(f.iter().map(|n| (n, Rational::one())).collect())
    }

    pub fn support(&self) -> FinSet {
        FinSet::from_sorted(self.0.keys().copied().collect())
    }

    pub fn get(&self, n: u32) -> Rational {
        self.0.get(&n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.0.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `x|_G`.
    pub fn restrict(&self, g: &FinSet) -> Self {
        CoeffVec(self.0.iter().filter(|(k, _)| g.contains(**k)).map(|(k, v)| (*k, v.clone())).collect())
    }

    /// Entries with index in `[lo, hi)`.
    pub fn window(&self, lo: u32, hi: u32) -> Self {
        if lo >= hi {
            return CoeffVec::default();
        }
        CoeffVec(self.0.range(lo..hi).map(|(k, v)| (*k, v.clone())).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return CoeffVec::default();
        }
        CoeffVec(self.0.iter().map(|(k, v)| (*k, v * c)).collect())
    }

    pub fn plus(&self, other: &CoeffVec) -> Self {
        let mut map = self.0.clone();
        for (k, v) in &other.0 {
            let e = map.entry(*k).or_insert_with(Rational::zero);
            *e += v;
            if e.is_zero() {
                map.remove(k);
            }
        }
        CoeffVec(map)
    }

    /// `Σ_{n∈F} x_n`.
    pub fn sum_over(&self, f: &FinSet) -> Rational {
        f.iter().filter_map(|n| self.0.get(&n)).sum()
    }

    pub fn l1(&self) -> Rational {
        self.0.values().map(|v| v.abs()).sum()
    }

    pub fn sup(&self) -> Rational {
        self.0.values().map(|v| v.abs()).max().unwrap_or_else(Rational::zero)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The member attaining a family norm.
    Set(FinSet),
    /// The admissible partition tree attaining a Tsirelson norm.
    Tsirelson(TsirelsonWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormResult {
    pub value: Rational,
    pub witness: Witness,
    /// Fixed-point iterations needed before the value stabilised; 0 for
    /// family norms.
    pub iterations: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NormError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("resource cap exceeded: more than {cap} {what}")]
    ResourceCap { what: &'static str, cap: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("window too small: need {needed} candidates at or beyond the start, have {available}")]
    WindowTooSmall { needed: usize, available: usize },
    #[error("Boolean independence fails along the sequence: pattern {pattern:?} is empty")]
    HypothesisFailed { pattern: Vec<bool> },
    #[error("lower estimate fails: ratio {ratio} below {bound}")]
    ConclusionFailed { ratio: Rational, bound: Rational },
}

/// Default bound on how many candidate sets a family norm may visit.
pub const DEFAULT_NORM_CAP: usize = 2_000_000;

/// Orders candidate witnesses: larger value, then fewer elements, then the
/// lexicographically smaller set.
fn better(v: &Rational, f: &FinSet, best_v: &Rational, best_f: &FinSet) -> bool {
    match v.cmp(best_v) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => (f.len(), f) < (best_f.len(), best_f),
    }
}

pub fn family_norm(spec: &FamilySpec, x: &CoeffVec) -> Result<NormResult, NormError> {
    family_norm_capped(spec, x, DEFAULT_NORM_CAP)
}

/// The family norm with its witness member. Ties are broken toward fewer
/// elements, then the lexicographically smaller set.
pub fn family_norm_capped(spec: &FamilySpec, x: &CoeffVec, cap: usize) -> Result<NormResult, NormError> {
    let (value, set) = match spec {
        FamilySpec::Explicit(members) => explicit_norm(members, x),
        _ => {
            let pos: Vec<(u32, Rational)> = x.iter().filter(|(_, v)| v.is_positive()).map(|(k, v)| (k, v.clone())).collect();
            let neg: Vec<(u32, Rational)> = x.iter().filter(|(_, v)| v.is_negative()).map(|(k, v)| (k, -v)).collect();
            let (pv, pf) = best_side(spec, &pos, cap)?;
            let (nv, nf) = best_side(spec, &neg, cap)?;
            if better(&nv, &nf, &pv, &pf) {
                (nv, nf)
            } else {
                (pv, pf)
            }
        }
    };
    Ok(NormResult {
        value,
        witness: Witness::Set(set),
        iterations: 0,
    })
}

fn explicit_norm(members: &BTreeSet<FinSet>, x: &CoeffVec) -> (Rational, FinSet) {
    let supp = x.support();
    let mut best = (Rational::zero(), FinSet::empty());
    for f in members {
        let trace = FinSet::from_sorted(f.iter().filter(|&n| supp.contains(n)).collect());
        let v = x.sum_over(&trace).abs();
        if better(&v, &trace, &best.0, &best.1) {
            best = (v, trace);
        }
    }
    best
}

/// Best member inside one sign class; `side` holds positive weights in
/// increasing index order.
fn best_side(spec: &FamilySpec, side: &[(u32, Rational)], cap: usize) -> Result<(Rational, FinSet), NormError> {
    let empty = (Rational::zero(), FinSet::empty());
    if side.is_empty() {
        return Ok(empty);
    }
    match spec {
        FamilySpec::Singletons => return Ok(best_singleton(side)),
        FamilySpec::Schreier { alpha, .. } if alpha.is_zero() => return Ok(best_singleton(side)),
        FamilySpec::Schreier { alpha, .. } if alpha.as_finite() == Some(1) => return Ok(best_schreier_one(side)),
        _ => {}
    }
    // Depth-first over increasing subsets, pruning at non-members (every
    // family reaching this point is hereditary) and at hopeless branches.
    let mut ev = Evaluator::new(spec);
    let mut suffix = vec![Rational::zero(); side.len() + 1];
    for i in (0..side.len()).rev() {
        suffix[i] = &suffix[i + 1] + &side[i].1;
    }
    let mut best = empty;
    let mut visited = 0usize;
    let mut stack: Vec<(Vec<u32>, Rational, usize)> = vec![(Vec::new(), Rational::zero(), 0)];
    while let Some((cur, sum, next)) = stack.pop() {
        visited += 1;
        if visited > cap {
            return Err(NormError::ResourceCap {
                what: "candidate sets in a family norm",
                cap,
            });
        }
        let f = FinSet::from_sorted(cur.clone());
        if better(&sum, &f, &best.0, &best.1) {
            best = (sum.clone(), f);
        }
        if &sum + &suffix[next] < best.0 {
            continue;
        }
        for i in (next..side.len()).rev() {
            let mut g = cur.clone();
            g.push(side[i].0);
            if ev.member(&FinSet::from_sorted(g.clone())) {
                stack.push((g, &sum + &side[i].1, i + 1));
            }
        }
    }
    Ok(best)
}

fn best_singleton(side: &[(u32, Rational)]) -> (Rational, FinSet) {
    let mut best = (Rational::zero(), FinSet::empty());
    for (k, v) in side {
        let f = FinSet::from_sorted(vec![*k]);
        if better(v, &f, &best.0, &best.1) {
            best = (v.clone(), f);
        }
    }
    best
}

/// `𝓕₁`: for each choice of minimum `m`, add the `m − 1` heaviest later
/// entries.
fn best_schreier_one(side: &[(u32, Rational)]) -> (Rational, FinSet) {
    let mut best = (Rational::zero(), FinSet::empty());
    for t in 0..side.len() {
        let (m, ref w) = side[t];
        let mut rest: Vec<&(u32, Rational)> = side[t + 1..].iter().collect();
        rest.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let take = (m as usize - 1).min(rest.len());
        let mut sum = w.clone();
        let mut elems = vec![m];
        for (k, v) in &rest[..take] {
            sum += v;
            elems.push(*k);
        }
        elems.sort_unstable();
        let f = FinSet::from_sorted(elems);
        if better(&sum, &f, &best.0, &best.1) {
            best = (sum, f);
        }
    }
    best
}

/// Whether `‖x|_G‖ ≤ ‖x‖` for one restriction set `G`.
pub fn suppression_check(spec: &FamilySpec, x: &CoeffVec, g: &FinSet) -> Result<bool, NormError> {
    Ok(family_norm(spec, &x.restrict(g))?.value <= family_norm(spec, x)?.value)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuppressionReport {
    pub restrictions_checked: u64,
    /// A restriction set `G` with `‖x|_G‖ > ‖x‖`, with both norms.
    pub violation: Option<(FinSet, Rational, Rational)>,
}

/// Checks `‖x|_G‖ ≤ ‖x‖` for every `G ⊆ supp x` at once. The norms of all
/// restrictions come from one pass over the traces of the family on the
/// support; integer inputs run in machine integers.
pub fn suppression_sweep(spec: &FamilySpec, x: &CoeffVec) -> Result<SuppressionReport, NormError> {
    let supp: Vec<u32> = x.support().into_vec();
    let k = supp.len();
    if k > 20 {
        return Err(NormError::ResourceCap {
            what: "support elements for a suppression sweep",
            cap: 20,
        });
    }
    // Traces F ∩ supp of members, as bit masks over `supp`.
    let (traces, down_closed): (Vec<usize>, bool) = match spec {
        FamilySpec::Explicit(members) => {
            let mut t: BTreeSet<usize> = BTreeSet::new();
            for f in members {
                t.insert(mask_of(&supp, f));
            }
            (t.into_iter().collect(), adequacy(members).is_adequate())
        }
        _ => {
            let mut ev = Evaluator::new(spec);
            let t = (0..1usize << k)
                .filter(|&m| ev.member(&set_of(&supp, m)))
                .collect();
            (t, true)
        }
    };
    let ints: Option<Vec<i128>> = supp
        .iter()
        .map(|&n| {
            let v = x.get(n);
            if v.is_integer() {
                v.to_integer().to_i64().map(i128::from)
            } else {
                None
            }
        })
        .collect();
    let found = match ints {
        Some(w) => sweep(&w, &traces, down_closed, k).map(|(g, a, b)| (g, Rational::from(BigInt::from(a)), Rational::from(BigInt::from(b)))),
        None => {
            let w: Vec<Rational> = supp.iter().map(|&n| x.get(n)).collect();
            sweep(&w, &traces, down_closed, k)
        }
    };
    Ok(SuppressionReport {
        restrictions_checked: 1u64 << k,
        violation: found.map(|(g, a, b)| (set_of(&supp, g), a, b)),
    })
}

fn mask_of(supp: &[u32], f: &FinSet) -> usize {
    supp.iter()
        .enumerate()
        .filter(|(_, n)| f.contains(**n))
        .fold(0, |m, (i, _)| m | 1 << i)
}

fn set_of(supp: &[u32], mask: usize) -> FinSet {
    FinSet::from_sorted(
        supp.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, n)| *n)
            .collect(),
    )
}

/// Returns the first restriction mask whose norm exceeds the full norm.
fn sweep<T>(w: &[T], traces: &[usize], down_closed: bool, k: usize) -> Option<(usize, T, T)>
where
    T: Clone + Ord + Zero + Add<Output = T> + Neg<Output = T>,
{
    let full = (1usize << k) - 1;
    let mut sums: Vec<T> = vec![T::zero(); 1 << k];
    for m in 1..=full {
        let low = m.trailing_zeros() as usize;
        sums[m] = sums[m & (m - 1)].clone() + w[low].clone();
    }
    let abs = |v: &T| -> T {
        let n = -v.clone();
        if n > *v {
            n
        } else {
            v.clone()
        }
    };
    let norms: Vec<T> = if down_closed {
        // For a down-closed trace family the norm of x|_G is the best
        // member inside G: a subset-maximum transform.
        let mut best: Vec<T> = vec![T::zero(); 1 << k];
        for &t in traces {
            best[t] = abs(&sums[t]);
        }
        for bit in 0..k {
            for m in 0..=full {
                if m >> bit & 1 == 1 {
                    let lower = best[m ^ (1 << bit)].clone();
                    if lower > best[m] {
                        best[m] = lower;
                    }
                }
            }
        }
        best
    } else {
        (0..=full)
            .map(|g| traces.iter().map(|&t| abs(&sums[t & g])).max().unwrap_or_else(T::zero))
            .collect()
    };
    let top = norms[full].clone();
    (0..=full).find(|&g| norms[g] > top).map(|g| (g, norms[g].clone(), top))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCheck {
    /// `½ Σ |c_i|`.
    pub lower: Rational,
    /// `‖Σ c_i u_i‖` with each block normalized.
    pub norm: Rational,
    /// `Σ |c_i|`.
    pub upper: Rational,
    pub holds: bool,
}

/// Checks `½ Σ|c_i| ≤ ‖Σ c_i u_i‖ ≤ Σ|c_i|` in `T_α` for `k` successive
/// blocks supported beyond `k`, each scaled to norm one.
pub fn block_l1_lower_check(
    alpha: &crate::ordinal::Ordinal,
    blocks: &[CoeffVec],
    coeffs: &[Rational],
    opts: &TsirelsonOptions,
) -> Result<BlockCheck, NormError> {
    let bad = |msg: &str| NormError::InvalidInput(String::from(msg));
    let k = blocks.len();
    if k == 0 || coeffs.len() != k {
        return Err(bad("need one coefficient per block"));
    }
    if blocks.iter().any(CoeffVec::is_empty) {
        return Err(bad("blocks must be nonzero"));
    }
    for w in blocks.windows(2) {
        if w[0].support().max_elem() >= w[1].support().min_elem() {
            return Err(bad("blocks must be successive"));
        }
    }
    if (blocks[0].support().min_elem().expect("nonzero") as usize) <= k {
        return Err(bad("blocks must be supported beyond k"));
    }
    let mut sum = CoeffVec::default();
    for (b, c) in blocks.iter().zip(coeffs) {
        let nb = tsirelson_norm(alpha, b, opts)?.value;
        sum = sum.plus(&b.scale(&(c / nb)));
    }
    let upper: Rational = coeffs.iter().map(|c| c.abs()).sum();
    let lower = &upper / Rational::from(BigInt::from(2));
    let norm = tsirelson_norm(alpha, &sum, opts)?.value;
    Ok(BlockCheck {
        holds: lower <= norm && norm <= upper,
        lower,
        norm,
        upper,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpEstimate {
    /// `k⁻¹ · min ‖Σ_{n∈A} x_n‖` over `k`-subsets `A` of the candidates `≥ m`.
    pub value: Rational,
    /// The minimizing subset.
    pub witness: FinSet,
    /// The same estimate for each later start that still leaves `k`
    /// candidates, starting with `m` itself.
    pub profile: Vec<(u32, Rational)>,
    /// Whether the profile is nondecreasing in the start.
    pub monotone: bool,
}

/// Finite-window estimate of the ℓ¹-spreading constant of the indicator
/// sequence `(x_n)` in the norm of `spec`.
pub fn l1_sp_estimate(
    spec: &FamilySpec,
    candidates: &FinSet,
    k: usize,
    m: u32,
    subset_cap: usize,
) -> Result<SpEstimate, NormError> {
    if k == 0 {
        return Err(NormError::InvalidInput(String::from("k must be positive")));
    }
    let starts: Vec<u32> = candidates.iter().filter(|&n| n >= m).collect();
    if starts.len() < k {
        return Err(NormError::WindowTooSmall {
            needed: k,
            available: starts.len(),
        });
    }
    let mut budget = subset_cap;
    let mut profile = Vec::new();
    let mut head = None;
    for (pos, &start) in starts.iter().enumerate() {
        let pool = &starts[pos..];
        if pool.len() < k {
            break;
        }
        let (v, w) = min_over_subsets(spec, pool, k, &mut budget)?;
        let label = if pos == 0 { m } else { start };
        profile.push((label, v.clone()));
        if head.is_none() {
            head = Some((v, w));
        }
    }
    let monotone = profile.windows(2).all(|p| p[0].1 <= p[1].1);
    let (value, witness) = head.expect("at least one window");
    Ok(SpEstimate {
        value,
        witness,
        profile,
        monotone,
    })
}

fn min_over_subsets(
    spec: &FamilySpec,
    pool: &[u32],
    k: usize,
    budget: &mut usize,
) -> Result<(Rational, FinSet), NormError> {
    let mut idx: Vec<usize> = (0..k).collect();
    let kq = Rational::from(BigInt::from(k));
    let mut best: Option<(Rational, FinSet)> = None;
    loop {
        if *budget == 0 {
            return Err(NormError::ResourceCap {
                what: "subsets in a spreading estimate",
                cap: 0,
            });
        }
        *budget -= 1;
        let a = FinSet::from_sorted(idx.iter().map(|&i| pool[i]).collect());
        let v = family_norm(spec, &CoeffVec::indicator(&a))?.value / &kq;
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, a));
        }
        // Next k-combination in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(best.expect("nonempty"));
            }
            i -= 1;
            if idx[i] < pool.len() - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Real functions on a finite set of points, one row per function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionTable {
    pub points: usize,
    pub rows: Vec<Vec<Rational>>,
}

impl FunctionTable {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self, NormError> {
        let points = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != points) {
            return Err(NormError::InvalidInput(String::from("functions must share one point set")));
        }
        Ok(FunctionTable { points, rows })
    }

    /// `sup_p |Σ a_n f_n(p)|`.
    pub fn sup_of_combination(&self, a: &[Rational]) -> Rational {
        (0..self.points)
            .map(|p| {
                self.rows
                    .iter()
                    .zip(a)
                    .map(|(row, c)| &row[p] * c)
                    .sum::<Rational>()
                    .abs()
            })
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// `A_n = {f_n ≥ r + δ}` and `B_n = {f_n ≤ r}`.
    pub fn level_pairs(&self, r: &Rational, delta: &Rational) -> SetPairs {
        let hi = r + delta;
        SetPairs {
            points: self.points,
            pairs: self
                .rows
                .iter()
                .map(|row| {
                    let a = (0..self.points).filter(|&p| row[p] >= hi).collect();
                    let b = (0..self.points).filter(|&p| row[p] <= *r).collect();
                    (a, b)
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L1Certificate {
    /// `δ/2`: `‖Σ a_n f_n‖ ≥ (δ/2) Σ |a_n|`.
    pub lower_constant: Rational,
    /// `2/δ`, the ℓ¹ equivalence constant for functions bounded by 1.
    pub equivalence_constant: Rational,
    pub sign_vectors_checked: usize,
    pub random_vectors_checked: usize,
    /// Smallest observed `‖Σ a_n f_n‖ / Σ |a_n|`.
    pub min_ratio: Rational,
}

/// Largest number of functions for which all sign vectors are enumerated.
pub const MAX_SIGN_FUNCTIONS: usize = 16;

/// Certifies the ℓ¹ lower estimate for functions whose level pairs
/// `({f ≥ r+δ}, {f ≤ r})` are Boolean independent along `1, …, n`. The
/// hypothesis is checked first; the conclusion is then verified on every
/// sign vector and on `samples` seeded random rational vectors.
pub fn boolean_l1_certify(
    table: &FunctionTable,
    r: &Rational,
    delta: &Rational,
    samples: usize,
    seed: u64,
) -> Result<L1Certificate, NormError> {
    if !delta.is_positive() {
        return Err(NormError::InvalidInput(String::from("delta must be positive")));
    }
    let n = table.rows.len();
    let pairs = table.level_pairs(r, delta);
    let tuple: Vec<usize> = (1..=n).collect();
    if let Some(pattern) = pairs.dead_pattern(&tuple) {
        return Err(NormError::HypothesisFailed { pattern });
    }
    let lower = delta / Rational::from(BigInt::from(2));
    let report = lower_bound_sweep(table, &lower, samples, seed)?;
    Ok(L1Certificate {
        equivalence_constant: Rational::from(BigInt::from(2)) / delta,
        lower_constant: lower,
        sign_vectors_checked: report.0,
        random_vectors_checked: report.1,
        min_ratio: report.2,
    })
}

/// Checks `‖Σ a_n f_n‖ ≥ c Σ|a_n|` on all sign vectors and random vectors.
fn lower_bound_sweep(
    table: &FunctionTable,
    c: &Rational,
    samples: usize,
    seed: u64,
) -> Result<(usize, usize, Rational), NormError> {
    let n = table.rows.len();
    if n > MAX_SIGN_FUNCTIONS {
        return Err(NormError::ResourceCap {
            what: "functions for sign-vector enumeration",
            cap: MAX_SIGN_FUNCTIONS,
        });
    }
    let mut min_ratio: Option<Rational> = None;
    let mut check = |a: &[Rational]| -> Result<(), NormError> {
        let l1: Rational = a.iter().map(|v| v.abs()).sum();
        if l1.is_zero() {
            return Ok(());
        }
        let ratio = table.sup_of_combination(a) / &l1;
        if ratio < *c {
            return Err(NormError::ConclusionFailed { ratio, bound: c.clone() });
        }
        if min_ratio.as_ref().is_none_or(|m| ratio < *m) {
            min_ratio = Some(ratio);
        }
        Ok(())
    };
    let mut signs = 0;
    if n > 0 {
        for mask in 0u32..1 << n {
            let a: Vec<Rational> = (0..n)
                .map(|i| if mask >> i & 1 == 1 { Rational::one() } else { -Rational::one() })
                .collect();
            check(&a)?;
            signs += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..=10))).collect();
        check(&a)?;
    }
    Ok((signs, samples, min_ratio.unwrap_or_else(Rational::zero)))
}

/// Lower ℓ¹ constant after perturbing every function by one vector `y`:
/// `max(δ·d/2, δ − ‖y‖)`, where `d` bounds the distance from `y` to the
/// span of the functions from below.
pub fn perturbation_bound(delta: &Rational, y_norm: &Rational, dist: &Rational) -> Rational {
    let a = delta * dist / Rational::from(BigInt::from(2));
    let b = delta - y_norm;
    if a >= b {
        a
    } else {
        b
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbationReport {
    pub bound: Rational,
    pub min_ratio: Rational,
    pub sign_vectors_checked: usize,
    pub random_vectors_checked: usize,
}

/// Verifies [`perturbation_bound`] on an explicit instance: the functions
/// `f_n + y` must satisfy the lower estimate with the predicted constant.
pub fn perturbation_check(
    table: &FunctionTable,
    y: &[Rational],
    delta: &Rational,
    dist: &Rational,
    samples: usize,
    seed: u64,
) -> Result<PerturbationReport, NormError> {
    if y.len() != table.points {
        return Err(NormError::InvalidInput(String::from("perturbation must live on the same points")));
    }
    let y_norm = y.iter().map(|v| v.abs()).max().unwrap_or_else(Rational::zero);
    let bound = perturbation_bound(delta, &y_norm, dist);
    let shifted = FunctionTable {
        points: table.points,
        rows: table
            .rows
            .iter()
            .map(|row| row.iter().zip(y).map(|(a, b)| a + b).collect())
            .collect(),
    };
    let (signs, randoms, min_ratio) = lower_bound_sweep(&shifted, &bound, samples, seed)?;
    Ok(PerturbationReport {
        bound,
        min_ratio,
        sign_vectors_checked: signs,
        random_vectors_checked: randoms,
    })
}
