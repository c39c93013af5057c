//! Families of finite subsets of ℕ: Schreier families of every countable
//! order below ε₀, explicit finite families, and the Cantor–Bendixson
//! structure of their closures.
//!
//! Schreier families are defined recursively. `𝓕₀` is the singletons (with
//! `∅`), `𝓕₁ = {F : |F| ≤ min F}`, and for `α ≥ 2` a nonempty `F` belongs to
//! `𝓕_α` iff it splits into consecutive blocks `F₁ < … < F_n` placed at slot
//! positions `1..=n`, `n ≤ min F`, with the block at slot `i` in `𝓕_{α_i}`.
//! Here `α_i = α − 1` for successor `α` and `α_i = α[i]` (the fundamental
//! sequence) for limit `α`. Blocks may be empty.
//!
//! Derivatives are computed symbolically. A set in slot form with slots
//! `1..=n` sits in the `ρ`-th derivative iff either `ρ ≥ ω^{α_n}` and it sits
//! in the `(ρ − ω^{α_n})`-th derivative with slot `n` removed, or
//! `ρ < ω^{α_n}` and its slot-`n` block sits in the `ρ`-th derivative of
//! `𝓕_{α_n}`. Ranks follow from the same decomposition.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::finset::FinSet;
use crate::ordinal::{Ordinal, OrdinalKind};

/// How many slots a Schreier decomposition may use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockRule {
    /// Slots `1..=n` with `n ≤ min F`; any slot may be empty.
    #[default]
    AtMostMin,
    /// Exactly `min F` slots, and `min F` lies in the block at slot 1.
    MinInFirst,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilySpec {
    /// `{∅} ∪ {{n} : n ∈ ℕ}`.
    Singletons,
    Schreier { alpha: Ordinal, rule: BlockRule },
    /// A finite family listed member by member.
    Explicit(BTreeSet<FinSet>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{0} is not a member of the family")]
    NotMember(FinSet),
    #[error("resource cap exceeded: more than {cap} {what}")]
    ResourceCap { what: &'static str, cap: usize },
}

impl FamilySpec {
    pub fn schreier(alpha: Ordinal) -> Self {
        FamilySpec::Schreier {
            alpha,
            rule: BlockRule::AtMostMin,
        }
    }

    pub fn explicit<I: IntoIterator<Item = FinSet>>(members: I) -> Self {
        FamilySpec::Explicit(members.into_iter().collect())
    }

    pub fn member(&self, f: &FinSet) -> bool {
        Evaluator::new(self).member(f)
    }

    /// Cantor–Bendixson rank of `f` in the closure of the family.
    pub fn cb_rank(&self, f: &FinSet) -> Result<Ordinal, FamilyError> {
        Evaluator::new(self).cb_rank(f)
    }

    /// Whether `f` lies in the `rho`-th derived set of the family.
    pub fn in_derivative(&self, f: &FinSet, rho: &Ordinal) -> bool {
        Evaluator::new(self).in_derivative(f, rho)
    }

    /// Largest element mentioned by an explicit family.
    fn explicit_bound(&self) -> u32 {
        match self {
            FamilySpec::Explicit(ms) => ms.iter().filter_map(FinSet::max_elem).max().unwrap_or(0),
            _ => 0,
        }
    }

    /// Whether pruning a subset search at non-members is sound.
    fn prunable(&self) -> bool {
        match self {
            FamilySpec::Singletons => true,
            FamilySpec::Schreier { alpha, rule } => {
                *rule == BlockRule::AtMostMin || *alpha <= Ordinal::from(2)
            }
            FamilySpec::Explicit(_) => false,
        }
    }
}

/// Memoized evaluation of one family spec. Reuse an evaluator across many
/// queries against the same spec to share its tables.
#[derive(Debug)]
pub struct Evaluator<'a> {
    spec: &'a FamilySpec,
    engine: Engine,
}

impl<'a> Evaluator<'a> {
    pub fn new(spec: &'a FamilySpec) -> Self {
        let rule = match spec {
            FamilySpec::Schreier { rule, .. } => *rule,
            _ => BlockRule::AtMostMin,
        };
        Evaluator {
            spec,
            engine: Engine::new(rule),
        }
    }

    pub fn member(&mut self, f: &FinSet) -> bool {
        match self.spec {
            FamilySpec::Singletons => f.len() <= 1,
            FamilySpec::Schreier { alpha, .. } => self.engine.member(alpha, f.as_slice()),
            FamilySpec::Explicit(ms) => ms.contains(f),
        }
    }

    pub fn cb_rank(&mut self, f: &FinSet) -> Result<Ordinal, FamilyError> {
        if !self.member(f) {
            return Err(FamilyError::NotMember(f.clone()));
        }
        Ok(match self.spec {
            FamilySpec::Singletons => self.engine.rank(&Ordinal::zero(), f.as_slice()),
            FamilySpec::Schreier { alpha, .. } => self.engine.rank(alpha, f.as_slice()),
            FamilySpec::Explicit(_) => Ordinal::zero(),
        })
    }

    pub fn in_derivative(&mut self, f: &FinSet, rho: &Ordinal) -> bool {
        match self.spec {
            FamilySpec::Singletons => self.engine.derivative(&Ordinal::zero(), f.as_slice(), rho),
            FamilySpec::Schreier { alpha, .. } => self.engine.derivative(alpha, f.as_slice(), rho),
            FamilySpec::Explicit(ms) => rho.is_zero() && ms.contains(f),
        }
    }
}

#[derive(Debug)]
struct Engine {
    rule: BlockRule,
    member_memo: BTreeMap<(Ordinal, Vec<u32>), bool>,
    rank_memo: BTreeMap<(Ordinal, Vec<u32>), Ordinal>,
    slot_memo: BTreeMap<Ordinal, Vec<Ordinal>>,
}

/// Which prefixes of a set fit into a given number of leading slots.
enum Fits {
    /// Successor order: `min_blocks[s]` blocks are needed for `f[..s]`.
    Count(Vec<usize>),
    /// Limit order: `table[s][q]` says whether `f[..s]` fits slots `1..=q`.
    Table(Vec<Vec<bool>>),
}

impl Fits {
    fn fits(&self, s: usize, q: usize) -> bool {
        match self {
            Fits::Count(mb) => mb[s] <= q,
            Fits::Table(t) => t[s][q],
        }
    }
}

impl Engine {
    fn new(rule: BlockRule) -> Self {
        Engine {
            rule,
            member_memo: BTreeMap::new(),
            rank_memo: BTreeMap::new(),
            slot_memo: BTreeMap::new(),
        }
    }

    /// `α_q`, the order attached to slot `q ≥ 1`.
    fn slot(&mut self, alpha: &Ordinal, q: usize) -> Ordinal {
        match alpha.classify() {
            OrdinalKind::Successor => alpha.predecessor().expect("successor"),
            OrdinalKind::Limit => {
                let seq = self.slot_memo.entry(alpha.clone()).or_default();
                while seq.len() < q {
                    let next = alpha.fundamental_seq(seq.len() as u64 + 1).expect("limit");
                    seq.push(next);
                }
                seq[q - 1].clone()
            }
            OrdinalKind::Zero => unreachable!("slots exist only for orders ≥ 2"),
        }
    }

    fn member(&mut self, alpha: &Ordinal, f: &[u32]) -> bool {
        if f.is_empty() {
            return true;
        }
        match alpha.as_finite() {
            Some(0) => return f.len() <= 1,
            Some(1) => return f[0] as usize >= f.len(),
            _ => {}
        }
        let key = (alpha.clone(), f.to_vec());
        if let Some(&hit) = self.member_memo.get(&key) {
            return hit;
        }
        let m = f[0] as usize;
        let fits = self.fits(alpha, f, m);
        let res = fits.fits(f.len(), m);
        self.member_memo.insert(key, res);
        res
    }

    fn fits(&mut self, alpha: &Ordinal, f: &[u32], m: usize) -> Fits {
        let len = f.len();
        if alpha.is_successor() {
            let beta = alpha.predecessor().expect("successor");
            let mut mb = vec![usize::MAX; len + 1];
            mb[0] = 0;
            for s in 1..=len {
                for t in (0..s).rev() {
                    if self.member(&beta, &f[t..s]) {
                        mb[s] = mb[s].min(mb[t].saturating_add(1));
                    } else if self.rule == BlockRule::AtMostMin {
                        // Hereditary: longer blocks ending at `s` fail too.
                        break;
                    }
                }
            }
            return Fits::Count(mb);
        }
        let min_in_first = self.rule == BlockRule::MinInFirst;
        let mut table = vec![vec![false; m + 1]; len + 1];
        table[0].iter_mut().for_each(|b| *b = true);
        for q in 1..=m {
            let aq = self.slot(alpha, q);
            for s in 1..=len {
                let mut ok = table[s][q - 1];
                let first_t = if min_in_first && q >= 2 { 1 } else { 0 };
                let mut t = first_t;
                while !ok && t < s {
                    if table[t][q - 1] && self.member(&aq, &f[t..s]) {
                        ok = true;
                    }
                    t += 1;
                }
                table[s][q] = ok;
            }
        }
        Fits::Table(table)
    }

    /// Rank of a member `f` of `𝓕_alpha`.
    fn rank(&mut self, alpha: &Ordinal, f: &[u32]) -> Ordinal {
        if f.is_empty() {
            return Ordinal::omega_pow(alpha.clone());
        }
        match alpha.as_finite() {
            Some(0) => return Ordinal::zero(),
            Some(1) => return Ordinal::from(u64::from(f[0]) - f.len() as u64),
            _ => {}
        }
        let key = (alpha.clone(), f.to_vec());
        if let Some(hit) = self.rank_memo.get(&key) {
            return hit.clone();
        }
        let m = f[0] as usize;
        let len = f.len();
        let fits = self.fits(alpha, f, m);
        let min_in_first = self.rule == BlockRule::MinInFirst;
        let mut best = Ordinal::zero();
        // Walk the last nonempty slot `j` downwards, carrying
        // tail = ω^{α_m} + … + ω^{α_{j+1}}.
        let mut tail = Ordinal::zero();
        for j in (1..=m).rev() {
            if j < m {
                let a_next = self.slot(alpha, j + 1);
                tail = tail.add(&Ordinal::omega_pow(a_next));
            }
            let aj = self.slot(alpha, j);
            for s in 0..len {
                if min_in_first && s == 0 && j > 1 {
                    continue;
                }
                if !fits.fits(s, j - 1) || !self.member(&aj, &f[s..]) {
                    continue;
                }
                let r = self.rank(&aj, &f[s..]);
                let cand = tail.add(&r);
                if cand > best {
                    best = cand;
                }
            }
        }
        self.rank_memo.insert(key, best.clone());
        best
    }

    fn derivative(&mut self, alpha: &Ordinal, f: &[u32], rho: &Ordinal) -> bool {
        if !self.member(alpha, f) {
            return false;
        }
        if rho.is_zero() {
            return true;
        }
        if f.is_empty() {
            return *rho <= Ordinal::omega_pow(alpha.clone());
        }
        match alpha.as_finite() {
            Some(0) => return false,
            Some(1) => {
                return rho
                    .as_finite()
                    .is_some_and(|r| r <= u64::from(f[0]) - f.len() as u64)
            }
            _ => {}
        }
        let m = f[0] as usize;
        let len = f.len();
        let fits = self.fits(alpha, f, m);
        let min_in_first = self.rule == BlockRule::MinInFirst;
        let mut rho = rho.clone();
        let mut n = m;
        loop {
            if n == 0 {
                return false;
            }
            let an = self.slot(alpha, n);
            if let Some(rest) = rho.left_sub_omega_pow(&an) {
                // Slot `n` is used up; continue with slots 1..n-1.
                n -= 1;
                rho = rest;
                if rho.is_zero() {
                    return fits.fits(len, n);
                }
                continue;
            }
            for s in 0..=len {
                if !fits.fits(s, n - 1) {
                    continue;
                }
                if s == len {
                    return true;
                }
                if min_in_first && s == 0 && n > 1 {
                    continue;
                }
                if self.derivative(&an, &f[s..], &rho) {
                    return true;
                }
            }
            return false;
        }
    }
}

/// Whether `f` is in the `j`-th derived set, decided without any rank
/// formula: for `j ≥ 1`, `F` is in the `j`-th derivative iff `F ∪ {p}` is in
/// the `(j−1)`-th for a probe `p` far beyond `max F`. Sound for hereditary
/// spreading families once `window` is large enough for the `j` in question.
pub fn brute_derivative_member(spec: &FamilySpec, f: &FinSet, j: u32, window: u32) -> bool {
    let mut ev = Evaluator::new(spec);
    let bound = spec.explicit_bound();
    let mut cur = f.clone();
    for _ in 0..j {
        if !ev.member(&cur) {
            return false;
        }
        let top = cur.max_elem().unwrap_or(0).max(window).max(bound);
        cur = cur.with(top + window.max(1));
    }
    ev.member(&cur)
}

/// All members contained in `{1, …, n}`, in lexicographic order of their
/// increasing enumerations.
pub fn members_up_to(spec: &FamilySpec, n: u32, cap: usize) -> Result<Vec<FinSet>, FamilyError> {
    let over = FamilyError::ResourceCap {
        what: "family members",
        cap,
    };
    if let FamilySpec::Explicit(ms) = spec {
        let out: Vec<FinSet> = ms
            .iter()
            .filter(|f| f.max_elem().is_none_or(|x| x <= n))
            .cloned()
            .collect();
        return if out.len() > cap { Err(over) } else { Ok(out) };
    }
    let mut ev = Evaluator::new(spec);
    let mut out = Vec::new();
    if spec.prunable() {
        let mut stack = vec![Vec::<u32>::new()];
        // Depth-first in lexicographic order: a set precedes its extensions.
        while let Some(cur) = stack.pop() {
            out.push(FinSet::from_sorted(cur.clone()));
            if out.len() > cap {
                return Err(over);
            }
            let start = cur.last().map_or(1, |&x| x + 1);
            for x in (start..=n).rev() {
                let mut next = cur.clone();
                next.push(x);
                if ev.member(&FinSet::from_sorted(next.clone())) {
                    stack.push(next);
                }
            }
        }
        return Ok(out);
    }
    if n > 24 {
        return Err(FamilyError::ResourceCap {
            what: "ground elements for a non-hereditary scan",
            cap: 24,
        });
    }
    for mask in 0u32..(1u32 << n) {
        let f = FinSet::from_sorted((1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect());
        if ev.member(&f) {
            out.push(f);
            if out.len() > cap {
                return Err(over);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The trace of the family on `{1, …, n}` as an explicit family.
pub fn restrict(spec: &FamilySpec, n: u32, cap: usize) -> Result<FamilySpec, FamilyError> {
    Ok(FamilySpec::explicit(members_up_to(spec, n, cap)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdequacyReport {
    pub contains_empty: bool,
    /// Naturals `n` mentioned by the family for which `{n}` is missing.
    pub missing_singletons: Vec<u32>,
    /// A member with a subset outside the family, and that subset.
    pub hereditary_violation: Option<(FinSet, FinSet)>,
}

impl AdequacyReport {
    pub fn is_adequate(&self) -> bool {
        self.contains_empty && self.missing_singletons.is_empty() && self.hereditary_violation.is_none()
    }
}

/// Adequacy of an explicit family: it contains `∅` and all singletons of its
/// ground set, and is closed under subsets.
pub fn adequacy(members: &BTreeSet<FinSet>) -> AdequacyReport {
    let ground: BTreeSet<u32> = members.iter().flat_map(|f| f.iter()).collect();
    let missing_singletons = ground
        .into_iter()
        .filter(|&n| !members.contains(&FinSet::from_sorted(vec![n])))
        .collect();
    let hereditary_violation = members.iter().find_map(|f| {
        f.iter()
            .map(|x| f.without(x))
            .find(|g| !members.contains(g))
            .map(|g| (f.clone(), g))
    });
    AdequacyReport {
        contains_empty: members.contains(&FinSet::empty()),
        missing_singletons,
        hereditary_violation,
    }
}

pub fn is_adequate(members: &BTreeSet<FinSet>) -> bool {
    adequacy(members).is_adequate()
}

/// Checks spreading on `{1, …, n}`: every spread of a member that stays
/// inside `{1, …, n}` is a member. Every spread is reached from the original
/// set by moving one element up by one at a time, so it suffices to check
/// those single moves. Returns the first failing `(member, spread)` pair.
pub fn spreading_violation(
    spec: &FamilySpec,
    n: u32,
    cap: usize,
) -> Result<Option<(FinSet, FinSet)>, FamilyError> {
    let members = members_up_to(spec, n, cap)?;
    let mut ev = Evaluator::new(spec);
    for f in &members {
        let v = f.as_slice();
        for i in 0..v.len() {
            let next_free = if i + 1 < v.len() { v[i + 1] } else { n + 1 };
            if v[i] + 1 < next_free {
                let mut g = v.to_vec();
                g[i] += 1;
                let g = FinSet::from_sorted(g);
                if !ev.member(&g) {
                    return Ok(Some((f.clone(), g)));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_spreading(spec: &FamilySpec, n: u32, cap: usize) -> Result<bool, FamilyError> {
    Ok(spreading_violation(spec, n, cap)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::set;
    use crate::ordinal::ord;

    #[test]
    fn schreier_one_membership() {
        let s1 = FamilySpec::schreier(ord("1"));
        assert!(s1.member(&set(&[3, 7, 9])));
        assert!(!s1.member(&set(&[2, 5, 6])));
        assert!(s1.member(&FinSet::empty()));
    }

    #[test]
    fn schreier_two_membership() {
        let s2 = FamilySpec::schreier(ord("2"));
        // {2,3} ∪ {4,5,6,7}: two 𝓕₁ blocks, 2 ≤ min.
        assert!(s2.member(&set(&[2, 3, 4, 5, 6, 7])));
        assert!(!s2.member(&set(&[2, 3, 4, 5, 6, 7, 8, 9])));
        assert!(!s2.member(&set(&[1, 2])));
    }

    #[test]
    fn ranks_of_small_orders() {
        let s0 = FamilySpec::Singletons;
        assert_eq!(s0.cb_rank(&FinSet::empty()).unwrap(), ord("1"));
        assert_eq!(s0.cb_rank(&set(&[4])).unwrap(), ord("0"));
        let s1 = FamilySpec::schreier(ord("1"));
        assert_eq!(s1.cb_rank(&FinSet::empty()).unwrap(), ord("w"));
        assert_eq!(s1.cb_rank(&set(&[5, 7])).unwrap(), ord("3"));
        assert!(s1.in_derivative(&set(&[5, 7]), &ord("3")));
        assert!(!s1.in_derivative(&set(&[5, 7]), &ord("4")));
        let s2 = FamilySpec::schreier(ord("2"));
        assert_eq!(s2.cb_rank(&set(&[2])).unwrap(), ord("w+1"));
        assert_eq!(s2.cb_rank(&FinSet::empty()).unwrap(), ord("w^(2)"));
    }

    #[test]
    fn restriction_lists_in_order() {
        let s1 = FamilySpec::schreier(ord("1"));
        let ms = members_up_to(&s1, 3, 100).unwrap();
        let expected = [&[][..], &[1], &[2], &[2, 3], &[3]];
        assert_eq!(ms, expected.iter().map(|v| set(v)).collect::<Vec<_>>());
        assert!(matches!(members_up_to(&s1, 20, 10), Err(FamilyError::ResourceCap { .. })));
    }

    #[test]
    fn adequacy_flags_missing_pieces() {
        let fam: BTreeSet<FinSet> = [FinSet::empty(), set(&[1, 2])].into_iter().collect();
        let rep = adequacy(&fam);
        assert!(!rep.is_adequate());
        assert_eq!(rep.missing_singletons, vec![1, 2]);
    }

    #[test]
    fn spreading_detects_planted_failure() {
        let s2 = FamilySpec::schreier(ord("2"));
        assert!(is_spreading(&s2, 10, 100_000).unwrap());
        let mut fam: BTreeSet<FinSet> = members_up_to(&s2, 8, 100_000).unwrap().into_iter().collect();
        fam.remove(&set(&[3, 5]));
        let planted = FamilySpec::Explicit(fam);
        assert!(!is_spreading(&planted, 8, 100_000).unwrap());
    }
}
