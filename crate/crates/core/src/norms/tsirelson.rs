//! The Tsirelson-type norm `T_α`: the least norm with
//!
//! ```text
//! ‖x‖ = max( ‖x‖_base , ½ · sup Σ_{i=1}^{k} ‖E_i x‖ )
//! ```
//!
//! where the supremum runs over admissible partitions: `k ≤ p_1 < … < p_k`,
//! `E_i` restricts to `[p_i, p_{i+1})`, and `p_{k+1}` is the end of the
//! support. The base norm is the sup norm for `α = 0` and the Schreier
//! family norm of order `α` otherwise.
//!
//! On a finite support only contiguous runs of support positions matter, so
//! both engines work over the intervals of the support. Partitions with a
//! single nonempty group never beat the base term and are skipped, which
//! makes the recursion well founded.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{family_norm_capped, CoeffVec, NormError, NormResult, Rational, Witness, DEFAULT_NORM_CAP};
use crate::families::FamilySpec;
use crate::finset::FinSet;
use crate::ordinal::Ordinal;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    /// Value iteration over all support intervals, enumerating every
    /// admissible partition afresh in each round.
    Naive,
    /// Interval dynamic programming, `O(L⁴)` in the support size `L`.
    #[default]
    Memoized,
}

/// Where the last block of an admissible partition ends.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LastEndpoint {
    /// At the end of the support.
    #[default]
    EndOfSupport,
    /// Anywhere after the last start; the tail beyond it is dropped.
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TsirelsonOptions {
    pub engine: Engine,
    pub last_endpoint: LastEndpoint,
    /// Largest support size accepted.
    pub max_support: usize,
    /// Candidate-set budget for each base family norm.
    pub family_cap: usize,
}

impl Default for TsirelsonOptions {
    fn default() -> Self {
        TsirelsonOptions {
            engine: Engine::Memoized,
            last_endpoint: LastEndpoint::EndOfSupport,
            max_support: 64,
            family_cap: DEFAULT_NORM_CAP,
        }
    }
}

impl TsirelsonOptions {
    pub fn with_engine(engine: Engine) -> Self {
        TsirelsonOptions {
            engine,
            max_support: match engine {
                Engine::Naive => 16,
                Engine::Memoized => 64,
            },
            ..Default::default()
        }
    }
}

/// How a Tsirelson norm value is attained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TsirelsonWitness {
    /// The base norm, attained on this member of the base family.
    Base(FinSet),
    /// Half the sum over an admissible partition. `bounds` holds
    /// `p_1 < … < p_k` followed by the exclusive end of the last block.
    Split { bounds: Vec<u32>, parts: Vec<TsirelsonWitness> },
}

pub fn base_family(alpha: &Ordinal) -> FamilySpec {
    if alpha.is_zero() {
        FamilySpec::Singletons
    } else {
        FamilySpec::schreier(alpha.clone())
    }
}

pub fn tsirelson_norm(alpha: &Ordinal, x: &CoeffVec, opts: &TsirelsonOptions) -> Result<NormResult, NormError> {
    let setup = Setup::new(alpha, x, opts)?;
    let len = setup.pos.len();
    if len == 0 {
        return Ok(NormResult {
            value: Rational::zero(),
            witness: Witness::Tsirelson(TsirelsonWitness::Base(FinSet::empty())),
            iterations: 0,
        });
    }
    let (value, iterations, witness) = match opts.engine {
        Engine::Memoized => memoized(&setup),
        Engine::Naive => naive(&setup),
    };
    Ok(NormResult {
        value,
        witness: Witness::Tsirelson(witness),
        iterations,
    })
}

/// Recomputes the value a witness certifies, checking admissibility and
/// base-family membership along the way.
pub fn evaluate_witness(alpha: &Ordinal, x: &CoeffVec, w: &TsirelsonWitness) -> Result<Rational, NormError> {
    let bad = |msg: &str| NormError::InvalidInput(alloc::string::String::from(msg));
    match w {
        TsirelsonWitness::Base(f) => {
            if !base_family(alpha).member(f) {
                return Err(bad("base witness is not in the base family"));
            }
            Ok(x.sum_over(f).abs())
        }
        TsirelsonWitness::Split { bounds, parts } => {
            let k = parts.len();
            if k == 0 || bounds.len() != k + 1 {
                return Err(bad("partition shape mismatch"));
            }
            if bounds.windows(2).any(|b| b[0] >= b[1]) {
                return Err(bad("partition points must increase"));
            }
            if (k as u64) > u64::from(bounds[0]) {
                return Err(bad("partition is not admissible: more blocks than its first point"));
            }
            let mut total = Rational::zero();
            for (t, part) in parts.iter().enumerate() {
                total += evaluate_witness(alpha, &x.window(bounds[t], bounds[t + 1]), part)?;
            }
            Ok(total / Rational::from(BigInt::from(2)))
        }
    }
}

struct Setup {
    pos: Vec<u32>,
    free_end: bool,
    /// Base norms and witnesses, indexed by [`Setup::at`].
    base: Vec<(Rational, FinSet)>,
}

impl Setup {
    fn new(alpha: &Ordinal, x: &CoeffVec, opts: &TsirelsonOptions) -> Result<Self, NormError> {
        let pos: Vec<u32> = x.support().into_vec();
        let len = pos.len();
        if len > opts.max_support {
            return Err(NormError::ResourceCap {
                what: "support elements for this engine",
                cap: opts.max_support,
            });
        }
        let fam = base_family(alpha);
        let mut base = vec![(Rational::zero(), FinSet::empty()); (len + 1) * (len + 1)];
        for i in 0..len {
            for j in i + 1..=len {
                let piece = x.window(pos[i], pos[j - 1] + 1);
                let r = family_norm_capped(&fam, &piece, opts.family_cap)?;
                let Witness::Set(f) = r.witness else { unreachable!() };
                base[i * (len + 1) + j] = (r.value, f);
            }
        }
        Ok(Setup {
            pos,
            free_end: opts.last_endpoint == LastEndpoint::Free,
            base,
        })
    }

    fn at(&self, i: usize, j: usize) -> usize {
        i * (self.pos.len() + 1) + j
    }

    /// Most blocks an admissible partition starting at position `c` and
    /// ending before position `e` can use.
    fn max_blocks(&self, c: usize, e: usize) -> usize {
        (self.pos[c] as usize).min(e - c)
    }

    fn ends(&self, c: usize, j: usize) -> core::ops::RangeInclusive<usize> {
        if self.free_end {
            c + 2..=j
        } else {
            j..=j
        }
    }

    /// Exclusive index bound of the run of positions ending before `e`.
    fn end_bound(&self, e: usize) -> u32 {
        self.pos[e - 1] + 1
    }
}

fn half(v: &Rational) -> Rational {
    v / Rational::from(BigInt::from(2))
}

/// Orders (value, depth) pairs: larger value first, then smaller depth.
fn beats(a: &(Rational, u32), b: &(Rational, u32)) -> bool {
    match a.0.cmp(&b.0) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => a.1 < b.1,
    }
}

/// A stored optimum: value, depth, and the first cut (`None` for a single
/// group).
type Cell = (Rational, u32, Option<usize>);

struct Memo<'a> {
    s: &'a Setup,
    val: Vec<(Rational, u32)>,
    /// Chosen split `(c, blocks, e)` per interval, if the split wins.
    choice: Vec<Option<(usize, usize, usize)>>,
    /// `split[at(c, j)][r]`: best partition of positions `c..j` into
    /// between 2 and `r` contiguous groups.
    split: Vec<Vec<Option<Cell>>>,
}

impl Memo<'_> {
    /// Best partition of `c..j` into between 1 and `r` groups.
    fn upto(&self, c: usize, j: usize, r: usize) -> (Rational, u32, Option<usize>) {
        let single = self.val[self.s.at(c, j)].clone();
        let r = r.min(j - c);
        if r >= 2 {
            if let Some((v, d, arg)) = &self.split[self.s.at(c, j)][r] {
                if beats(&(v.clone(), *d), &single) {
                    return (v.clone(), *d, *arg);
                }
            }
        }
        (single.0, single.1, None)
    }

    fn groups(&self, c: usize, j: usize, r: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let (mut c, mut r) = (c, r);
        let (_, _, first) = self.split[self.s.at(c, j)][r.min(j - c)].clone().expect("split exists");
        let mut cut = first;
        loop {
            match cut {
                None => {
                    out.push((c, j));
                    return out;
                }
                Some(d) => {
                    out.push((c, d));
                    c = d;
                    r -= 1;
                    cut = self.upto(c, j, r).2;
                }
            }
        }
    }

    fn witness(&self, i: usize, j: usize) -> TsirelsonWitness {
        match self.choice[self.s.at(i, j)] {
            None => TsirelsonWitness::Base(self.s.base[self.s.at(i, j)].1.clone()),
            Some((c, r, e)) => {
                let groups = self.groups(c, e, r);
                let mut bounds: Vec<u32> = groups.iter().map(|&(a, _)| self.s.pos[a]).collect();
                bounds.push(self.s.end_bound(e));
                TsirelsonWitness::Split {
                    bounds,
                    parts: groups.iter().map(|&(a, b)| self.witness(a, b)).collect(),
                }
            }
        }
    }
}

fn memoized(s: &Setup) -> (Rational, u32, TsirelsonWitness) {
    let len = s.pos.len();
    let cells = (len + 1) * (len + 1);
    let mut m = Memo {
        s,
        val: vec![(Rational::zero(), 0); cells],
        choice: vec![None; cells],
        split: vec![Vec::new(); cells],
    };
    for width in 1..=len {
        for c in 0..=len - width {
            let j = c + width;
            // Partitions of c..j into 2..=r groups: first group c..d, the
            // rest from the best partition of d..j into at most r-1 groups.
            let mut row: Vec<Option<Cell>> = vec![None; width + 1];
            for r in 2..=width {
                let mut best: Option<Cell> = None;
                for d in c + 1..j {
                    let head = &m.val[s.at(c, d)];
                    let (tv, td, _) = m.upto(d, j, r - 1);
                    let cand = (&head.0 + &tv, head.1.max(td));
                    if best.as_ref().is_none_or(|b| beats(&cand, &(b.0.clone(), b.1))) {
                        best = Some((cand.0, cand.1, Some(d)));
                    }
                }
                row[r] = best;
            }
            m.split[s.at(c, j)] = row;
            let base = s.base[s.at(c, j)].0.clone();
            let mut best: Option<((Rational, u32), (usize, usize, usize))> = None;
            for start in c..j {
                for e in s.ends(start, j) {
                    let r = s.max_blocks(start, e);
                    if r < 2 {
                        continue;
                    }
                    let Some((v, d, _)) = &m.split[s.at(start, e)][r] else { continue };
                    let cand = (half(v), *d);
                    if best.as_ref().is_none_or(|b| beats(&cand, &b.0)) {
                        best = Some((cand, (start, r, e)));
                    }
                }
            }
            let at = s.at(c, j);
            match best {
                Some(((v, d), how)) if v > base => {
                    m.val[at] = (v, d + 1);
                    m.choice[at] = Some(how);
                }
                _ => m.val[at] = (base, 0),
            }
        }
    }
    let (value, depth) = m.val[s.at(0, len)].clone();
    (value, depth, m.witness(0, len))
}

/// Cut masks over the gaps of `c..e` giving between 2 and `r` groups.
fn partitions(c: usize, e: usize, r: usize) -> impl Iterator<Item = Vec<(usize, usize)>> {
    let gaps = e - c - 1;
    (1u64..1 << gaps).filter_map(move |mask| {
        if mask.count_ones() as usize + 1 > r {
            return None;
        }
        let mut groups = Vec::new();
        let mut start = c;
        for g in 0..gaps {
            if mask >> g & 1 == 1 {
                groups.push((start, c + g + 1));
                start = c + g + 1;
            }
        }
        groups.push((start, e));
        Some(groups)
    })
}

fn naive(s: &Setup) -> (Rational, u32, TsirelsonWitness) {
    let len = s.pos.len();
    let mut vals: Vec<Rational> = s.base.iter().map(|(v, _)| v.clone()).collect();
    let mut history = vec![vals[s.at(0, len)].clone()];
    loop {
        let mut next = vals.clone();
        for i in 0..len {
            for j in i + 1..=len {
                let mut best = vals[s.at(i, j)].clone();
                for c in i..j {
                    for e in s.ends(c, j) {
                        let r = s.max_blocks(c, e);
                        if r < 2 {
                            continue;
                        }
                        for groups in partitions(c, e, r) {
                            let total: Rational = groups.iter().map(|&(a, b)| &vals[s.at(a, b)]).sum();
                            let v = half(&total);
                            if v > best {
                                best = v;
                            }
                        }
                    }
                }
                next[s.at(i, j)] = best;
            }
        }
        if next == vals {
            break;
        }
        vals = next;
        history.push(vals[s.at(0, len)].clone());
    }
    let value = vals[s.at(0, len)].clone();
    let iterations = history.iter().position(|v| *v == value).expect("final value appears") as u32;
    (value.clone(), iterations, naive_witness(s, &vals, 0, len))
}

fn naive_witness(s: &Setup, vals: &[Rational], i: usize, j: usize) -> TsirelsonWitness {
    let target = &vals[s.at(i, j)];
    let (base, set) = &s.base[s.at(i, j)];
    if base == target {
        return TsirelsonWitness::Base(set.clone());
    }
    for c in i..j {
        for e in s.ends(c, j) {
            let r = s.max_blocks(c, e);
            if r < 2 {
                continue;
            }
            for groups in partitions(c, e, r) {
                let total: Rational = groups.iter().map(|&(a, b)| &vals[s.at(a, b)]).sum();
                if half(&total) == *target {
                    let mut bounds: Vec<u32> = groups.iter().map(|&(a, _)| s.pos[a]).collect();
                    bounds.push(s.end_bound(e));
                    return TsirelsonWitness::Split {
                        bounds,
                        parts: groups.iter().map(|&(a, b)| naive_witness(s, vals, a, b)).collect(),
                    };
                }
            }
        }
    }
    unreachable!("a fixed-point value is attained by the base norm or some partition")
}
