//! Oscillation indices of indicator sequences `x_n = 1_{{F ∈ 𝓕 : n ∈ F}}`
//! on the compact family `𝓕`, finite-order ℓ¹ trees built from them, the
//! Lavrentiev index of step functions (see [`lavrentiev`]), and consistency
//! reports tying these indices to the ℓ¹-spreading estimator.
//!
//! For indicators `x_n(G) − x_m(G) > ε` with `0 < ε < 1` says `n ∈ G` and
//! `m ∉ G`, so `⋂_{m≥M} A⁺_{n,m}` is the set of members containing `n` and
//! contained in `[1, M)`, while `⋂_{m≥M} A⁻_{n,m}` is empty. The oscillation
//! sets are therefore the same for every such `ε` and coincide with the
//! derived sets of the family.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::families::{members_up_to, Evaluator, FamilyError, FamilySpec};
use crate::finset::FinSet;
use crate::norms::{boolean_l1_certify, l1_sp_estimate, FunctionTable, L1Certificate, NormError, Rational};
use crate::ordinal::Ordinal;
use crate::trees::{SetPairs, TreeError, WellFoundedTree};

pub mod lavrentiev;

pub use lavrentiev::{lavrentiev_index, validate_chain, ChainStart, Interval, LavrentievResult, OrdinalCompact, PointSet, StepFn};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("{0} is not a member of the family")]
    NotMember(FinSet),
    #[error("epsilon must lie strictly between 0 and 1")]
    EpsilonOutOfRange,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("precondition fails: the empty set is not in oscillation set {order} (index {index})")]
    Precondition { order: u64, index: Ordinal },
    #[error("tree construction fails at level {level}: {reason}")]
    Construction { level: usize, reason: String },
    #[error("c must be smaller than d")]
    Thresholds,
    #[error("invalid step function: {0}")]
    InvalidStepFn(String),
    #[error("chain violates the definition: {0}")]
    InvalidChain(String),
    #[error("resource cap exceeded: more than {cap} {what}")]
    ResourceCap { what: &'static str, cap: usize },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Norm(#[from] NormError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// The sequence of indicator functions of a family, viewed on the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorSeq {
    pub family: FamilySpec,
}

impl IndicatorSeq {
    pub fn new(family: FamilySpec) -> Self {
        IndicatorSeq { family }
    }

    /// `x_n(G)`.
    pub fn value(&self, n: u32, g: &FinSet) -> u32 {
        u32::from(g.contains(n))
    }
}

/// How oscillation membership is decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OscillationMode {
    /// Through the derived sets of the family.
    #[default]
    Symbolic,
    /// From the definition, one level at a time: `F` is in the next set iff
    /// `F ∪ {n}` is in the current one for all large `n`, probed at `width`
    /// indices starting `gap` past everything `F` and the family mention.
    Direct { gap: u32, width: u32 },
}

impl OscillationMode {
    pub fn direct() -> Self {
        OscillationMode::Direct { gap: 20, width: 2 }
    }
}

fn check_epsilon(epsilon: &Rational) -> Result<(), IndexError> {
    if *epsilon <= Rational::zero() || *epsilon >= Rational::one() {
        return Err(IndexError::EpsilonOutOfRange);
    }
    Ok(())
}

/// Whether `f` lies in the oscillation set `𝒪^λ(ε)` of the indicator
/// sequence.
pub fn oscillation_membership(
    seq: &IndicatorSeq,
    f: &FinSet,
    lambda: &Ordinal,
    epsilon: &Rational,
    mode: OscillationMode,
) -> Result<bool, IndexError> {
    check_epsilon(epsilon)?;
    let mut ev = Evaluator::new(&seq.family);
    if !ev.member(f) {
        return Err(IndexError::NotMember(f.clone()));
    }
    match mode {
        OscillationMode::Symbolic => Ok(ev.in_derivative(f, lambda)),
        OscillationMode::Direct { gap, width } => {
            let j = lambda
                .as_finite()
                .ok_or(IndexError::Unsupported("direct oscillation needs a finite level"))?;
            let j = u32::try_from(j).map_err(|_| IndexError::Unsupported("level too large"))?;
            let mut direct = DirectOscillation::new(&seq.family, gap, width);
            Ok(direct.level(f, j) >= i64::from(j))
        }
    }
}

/// Definitional evaluation of finite oscillation levels.
pub struct DirectOscillation<'a> {
    ev: Evaluator<'a>,
    bound: u32,
    gap: u32,
    width: u32,
    memo: BTreeMap<(FinSet, u32), i64>,
}

impl<'a> DirectOscillation<'a> {
    pub fn new(spec: &'a FamilySpec, gap: u32, width: u32) -> Self {
        let bound = match spec {
            FamilySpec::Explicit(ms) => ms.iter().filter_map(FinSet::max_elem).max().unwrap_or(0),
            _ => 0,
        };
        DirectOscillation {
            ev: Evaluator::new(spec),
            bound,
            gap: gap.max(1),
            width: width.max(1),
            memo: BTreeMap::new(),
        }
    }

    /// The largest `j ≤ cap` with `f ∈ 𝒪^j`, or `−1` when `f` is not a point
    /// of the space. Since `f ∈ 𝒪^{j+1}` iff `f ∈ 𝒪^j` and every probe
    /// `f ∪ {n}` is in `𝒪^j`, a member's level is one more than the least
    /// probe level, capped.
    pub fn level(&mut self, f: &FinSet, cap: u32) -> i64 {
        if let Some(&v) = self.memo.get(&(f.clone(), cap)) {
            return v;
        }
        let v = if !self.ev.member(f) {
            -1
        } else if cap == 0 {
            0
        } else {
            let start = f.max_elem().unwrap_or(0).max(self.bound) + self.gap;
            let least = (start..start + self.width)
                .map(|n| self.level(&f.with(n), cap - 1))
                .min()
                .expect("width is positive");
            (least + 1).min(i64::from(cap))
        };
        self.memo.insert((f.clone(), cap), v);
        v
    }
}

/// The oscillation index: the largest `λ` with `𝒪^λ` nonempty. The last
/// nonempty set is `{∅}`, so this is the rank of `∅`.
pub fn oscillation_index(seq: &IndicatorSeq) -> Result<Ordinal, IndexError> {
    Ok(seq.family.cb_rank(&FinSet::empty())?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L1TreeOptions {
    /// Alternatives tried for `n` at each level.
    pub width: usize,
    /// How far past the previous pair to look for the next `n`.
    pub search: u32,
    /// Random coefficient vectors per branch certificate.
    pub samples: usize,
    pub seed: u64,
}

impl Default for L1TreeOptions {
    fn default() -> Self {
        L1TreeOptions {
            width: 2,
            search: 64,
            samples: 200,
            seed: 0,
        }
    }
}

/// One maximal branch with its level sets and certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchCertificate {
    /// `(n_i, m_i)`: the branch is labeled by `x_{n_i} − x_{m_i}`.
    pub labels: Vec<(u32, u32)>,
    /// The members of the family on which the differences are evaluated.
    pub points: Vec<FinSet>,
    /// `A_i = {x_{n_i} − x_{m_i} ≥ r + δ}` and `B_i = {x_{n_i} − x_{m_i} ≤ r}`.
    pub pairs: SetPairs,
    pub certificate: L1Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L1Tree {
    pub order: u64,
    pub epsilon: Rational,
    pub delta: Rational,
    pub r: Rational,
    pub tree: WellFoundedTree<(u32, u32)>,
    pub branches: Vec<BranchCertificate>,
    /// `order/2`, the ℓ¹ index the general theory predicts.
    pub predicted_index: Ordinal,
}

/// Builds an ℓ¹ tree of finite order on the differences `x_n − x_m`.
///
/// Level `i` picks `n_i > m_{i−1}` with `{n_1, …, n_i}` in `𝒪^{order−i}`
/// and `m_i = n_i + 1`, trying `width` alternatives. Along each branch the
/// points are the subsets of `{n_1, …, n_order}`, and the level pairs at
/// `r = ε/4`, `δ = ε/2` are Boolean independent; the branch is certified to
/// satisfy the ℓ¹ lower estimate with constant `δ/2`.
pub fn build_l1_tree(
    seq: &IndicatorSeq,
    order: u64,
    epsilon: &Rational,
    opts: &L1TreeOptions,
) -> Result<L1Tree, IndexError> {
    check_epsilon(epsilon)?;
    let spec = &seq.family;
    let mut ev = Evaluator::new(spec);
    let order_ord = Ordinal::from(order);
    if !ev.member(&FinSet::empty()) || !ev.in_derivative(&FinSet::empty(), &order_ord) {
        return Err(IndexError::Precondition {
            order,
            index: oscillation_index(seq).unwrap_or_else(|_| Ordinal::zero()),
        });
    }
    let depth = usize::try_from(order).map_err(|_| IndexError::Unsupported("order too large"))?;
    if depth > crate::norms::MAX_SIGN_FUNCTIONS {
        return Err(IndexError::ResourceCap {
            what: "tree levels for sign enumeration",
            cap: crate::norms::MAX_SIGN_FUNCTIONS,
        });
    }
    let four = Rational::from(BigInt::from(4));
    let delta = epsilon / Rational::from(BigInt::from(2));
    let r = epsilon / &four;

    let mut nodes: Vec<Vec<(u32, u32)>> = Vec::new();
    let mut leaves: Vec<Vec<(u32, u32)>> = Vec::new();
    let mut frontier: Vec<Vec<(u32, u32)>> = vec![Vec::new()];
    for level in 1..=depth {
        let target = Ordinal::from(order - level as u64);
        let mut next = Vec::new();
        for node in &frontier {
            let after = node.last().map_or(0, |&(_, m)| m);
            let base: Vec<u32> = node.iter().map(|&(n, _)| n).collect();
            let picks: Vec<u32> = (after + 1..=after + opts.search)
                .filter(|&n| {
                    let mut g = base.clone();
                    g.push(n);
                    ev.in_derivative(&FinSet::from_sorted(g), &target)
                })
                .take(opts.width.max(1))
                .collect();
            if picks.is_empty() {
                return Err(IndexError::Construction {
                    level,
                    reason: alloc::format!("no n in ({after}, {}] keeps the chain in the oscillation set", after + opts.search),
                });
            }
            for n in picks {
                let mut child = node.clone();
                child.push((n, n + 1));
                nodes.push(child.clone());
                next.push(child);
            }
        }
        frontier = next;
    }
    leaves.extend(frontier);
    let tree = WellFoundedTree::new(nodes)?;

    let mut branches = Vec::with_capacity(leaves.len());
    for labels in leaves {
        let ns: Vec<u32> = labels.iter().map(|&(n, _)| n).collect();
        let points: Vec<FinSet> = (0u32..1 << ns.len())
            .map(|mask| FinSet::from_sorted((0..ns.len()).filter(|&i| mask >> i & 1 == 1).map(|i| ns[i]).collect()))
            .collect();
        for p in &points {
            if !ev.member(p) {
                return Err(IndexError::Construction {
                    level: depth,
                    reason: alloc::format!("{p} is not a member"),
                });
            }
        }
        let rows: Vec<Vec<Rational>> = labels
            .iter()
            .map(|&(n, m)| {
                points
                    .iter()
                    .map(|g| Rational::from(BigInt::from(i64::from(seq.value(n, g)) - i64::from(seq.value(m, g)))))
                    .collect()
            })
            .collect();
        let table = FunctionTable::new(rows)?;
        let pairs = table.level_pairs(&r, &delta);
        let certificate = boolean_l1_certify(&table, &r, &delta, opts.samples, opts.seed).map_err(|e| {
            IndexError::Construction {
                level: depth,
                reason: alloc::format!("{e}"),
            }
        })?;
        branches.push(BranchCertificate {
            labels,
            points,
            pairs,
            certificate,
        });
    }
    Ok(L1Tree {
        order,
        epsilon: epsilon.clone(),
        delta,
        r,
        tree,
        branches,
        predicted_index: order_ord.half(),
    })
}

/// One implication checked by a consistency report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportEntry {
    pub claim: String,
    /// Stable tag naming the result the entry checks.
    pub reference: &'static str,
    pub instances: usize,
    pub pass: bool,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub family: FamilySpec,
    pub oscillation_index: Ordinal,
    /// Half the oscillation index: the ℓ¹ index it guarantees.
    pub predicted_l1_index: Ordinal,
    pub entries: Vec<ReportEntry>,
}

impl ConsistencyReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

const REPORT_SUBSET_CAP: usize = 1 << 22;

/// Cross-checks the oscillation sets against the ℓ¹-spreading estimator and
/// against truncations of the family.
///
/// (a) For `k ≤ finite_level`, `∅ ∈ 𝒪^k` forces the estimate over
/// `k`-subsets of `[k, k + window)` to be 1. (b) On the truncation to
/// `[1, window]` every tail function vanishes identically, so no member is
/// in `𝒪¹`, by either evaluation. (c) The predicted ℓ¹ index `index/2` is at
/// most the oscillation index.
pub fn index_consistency_report(
    seq: &IndicatorSeq,
    finite_level: u32,
    window: u32,
) -> Result<ConsistencyReport, IndexError> {
    let spec = &seq.family;
    let index = oscillation_index(seq)?;
    let predicted = index.half();
    let mut ev = Evaluator::new(spec);
    let mut entries = Vec::new();

    let mut pass = true;
    let mut witness = String::new();
    let mut instances = 0;
    for k in 1..=finite_level {
        let holds = ev.in_derivative(&FinSet::empty(), &Ordinal::from(u64::from(k)));
        let candidates = FinSet::from_sorted((k..k + window.max(k)).collect());
        let est = l1_sp_estimate(spec, &candidates, k as usize, k, REPORT_SUBSET_CAP)?;
        if holds {
            instances += 1;
            pass &= est.value.is_one();
        }
        if !witness.is_empty() {
            witness.push_str("; ");
        }
        witness.push_str(&alloc::format!(
            "k={k}: empty set {} level {k}, estimate {} at {}",
            if holds { "in" } else { "not in" },
            est.value,
            est.witness
        ));
    }
    entries.push(ReportEntry {
        claim: String::from("oscillation at a finite level forces l1-spreading estimate 1 for that many terms"),
        reference: "oscillation-implies-l1-spreading",
        instances,
        pass,
        witness,
    });

    let cut = window.clamp(1, 16);
    let truncated = FamilySpec::explicit(members_up_to(spec, cut, 1 << 16)?);
    let members = members_up_to(&truncated, cut, 1 << 16)?;
    let mut direct = DirectOscillation::new(&truncated, 1, 2);
    let mut tev = Evaluator::new(&truncated);
    let offending: Vec<&FinSet> = members
        .iter()
        .filter(|g| tev.in_derivative(g, &Ordinal::one()) || direct.level(g, 1) >= 1)
        .collect();
    entries.push(ReportEntry {
        claim: alloc::format!("tail functions vanish on the truncation to [1,{cut}], so its first oscillation set is empty"),
        reference: "small-tails-imply-no-oscillation",
        instances: members.len(),
        pass: offending.is_empty(),
        witness: match offending.first() {
            Some(g) => alloc::format!("{g} oscillates"),
            None => alloc::format!("{} members checked", members.len()),
        },
    });

    entries.push(ReportEntry {
        claim: String::from("the l1 index guaranteed by the oscillation index is its half"),
        reference: "l1-index-from-oscillation-index",
        instances: 1,
        pass: predicted <= index,
        witness: alloc::format!("index {index}, half {predicted}"),
    });

    Ok(ConsistencyReport {
        family: spec.clone(),
        oscillation_index: index,
        predicted_l1_index: predicted,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::set;
    use crate::norms::rat;
    use crate::ordinal::ord;

    fn s(alpha: &str) -> IndicatorSeq {
        IndicatorSeq::new(FamilySpec::schreier(ord(alpha)))
    }

    #[test]
    fn oscillation_examples() {
        let half = rat(1, 2);
        let sym = OscillationMode::Symbolic;
        assert!(oscillation_membership(&s("1"), &set(&[5, 7]), &ord("3"), &half, sym).unwrap());
        assert!(!oscillation_membership(&s("1"), &set(&[5, 7]), &ord("4"), &half, sym).unwrap());
        for alpha in ["1", "2"] {
            let lam = Ordinal::omega_pow(ord(alpha));
            assert!(oscillation_membership(&s(alpha), &FinSet::empty(), &lam, &half, sym).unwrap());
        }
        let direct = OscillationMode::direct();
        assert!(!oscillation_membership(&s("1"), &set(&[1]), &ord("1"), &half, direct).unwrap());
        assert!(oscillation_membership(&s("1"), &set(&[1, 2]), &ord("1"), &half, sym).is_err());
        assert_eq!(
            oscillation_membership(&s("1"), &set(&[1]), &ord("1"), &rat(1, 1), sym),
            Err(IndexError::EpsilonOutOfRange)
        );
    }

    #[test]
    fn oscillation_indices() {
        assert_eq!(oscillation_index(&s("1")).unwrap(), ord("w"));
        assert_eq!(oscillation_index(&s("2")).unwrap(), ord("w^2"));
        assert_eq!(oscillation_index(&IndicatorSeq::new(FamilySpec::Singletons)).unwrap(), ord("1"));
    }

    #[test]
    fn l1_tree_small_orders() {
        let opts = L1TreeOptions::default();
        let t = build_l1_tree(&s("1"), 1, &rat(1, 2), &opts).unwrap();
        assert_eq!(t.tree.order(), 1);
        let err = build_l1_tree(&IndicatorSeq::new(FamilySpec::Singletons), 2, &rat(1, 2), &opts);
        assert!(matches!(err, Err(IndexError::Precondition { .. })));
    }

    #[test]
    fn singletons_report_is_consistent() {
        let r = index_consistency_report(&IndicatorSeq::new(FamilySpec::Singletons), 3, 8).unwrap();
        assert!(r.all_pass(), "{r:?}");
    }
}
