//! Trees of finite ±1 sequences, the box-sum construction, Schreier trees,
//! and the indices attached to well-founded trees and to sequences of pairs
//! of disjoint sets.
//!
//! Every tree contains the root (the empty node). A node `z` of the box sum
//! `A ⊞ B` is either a node of `A` or a concatenation `x + y` with `x ∈ A`
//! and `e_{|x|} + y ∈ B`, where `e_j` is the all-minus node of length `j`.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::families::FamilySpec;
use crate::finset::FinSet;
use crate::ordinal::{sum_of_omega_powers, Ordinal, OrdinalKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

/// A finite sequence of signs; the empty node is the root.
pub type Node = Vec<Sign>;

pub fn render_node(z: &[Sign]) -> String {
    z.iter().map(|s| if *s == Sign::Plus { '+' } else { '-' }).collect()
}

/// Parses `+`/`-` strings; the empty string is the root.
pub fn parse_node(s: &str) -> Option<Node> {
    s.chars()
        .map(|c| match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        })
        .collect()
}

/// `e_j`, the all-minus node of length `j`.
pub fn e(j: usize) -> Node {
    vec![Sign::Minus; j]
}

/// Positions (1-based) carrying `+1`.
pub fn plus_positions(z: &[Sign]) -> FinSet {
    FinSet::from_sorted(
        z.iter()
            .enumerate()
            .filter(|(_, s)| **s == Sign::Plus)
            .map(|(i, _)| i as u32 + 1)
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("node {0:?} is present but its parent is not")]
    NotPrefixClosed(String),
    #[error("no closed form for {0}")]
    Unsupported(&'static str),
    #[error("window too small to decide the branching case at node {node:?}")]
    Undecided { node: String },
    #[error("resource cap exceeded: more than {cap} {what}")]
    ResourceCap { what: &'static str, cap: usize },
}

/// A finite tree given by its nodes. The root is always included.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExplicitTree {
    nodes: BTreeSet<Node>,
}

impl ExplicitTree {
    pub fn new<I: IntoIterator<Item = Node>>(nodes: I) -> Result<Self, TreeError> {
        let mut set: BTreeSet<Node> = nodes.into_iter().collect();
        set.insert(Vec::new());
        for z in &set {
            if let Some((_, parent)) = z.split_last() {
                if !set.contains(parent) {
                    return Err(TreeError::NotPrefixClosed(render_node(z)));
                }
            }
        }
        Ok(ExplicitTree { nodes: set })
    }

    pub fn contains(&self, z: &[Sign]) -> bool {
        self.nodes.contains(z)
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Node> {
        self.nodes.iter()
    }
}

/// A sequence of trees `i ↦ T_i` (`i ≥ 1`) feeding a tree sum.
#[derive(Clone)]
pub enum TreeSeq {
    /// `i ↦ ⊞^i T`.
    Powers(Box<TreeSpec>),
    /// `i ↦ ⊞_{j=1}^{i} S_{α[j]}` for a limit `α`.
    SchreierLimit(Ordinal),
    Custom(Arc<dyn Fn(usize) -> TreeSpec + Send + Sync>),
}

impl fmt::Debug for TreeSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeSeq::Powers(t) => f.debug_tuple("Powers").field(t).finish(),
            TreeSeq::SchreierLimit(a) => f.debug_tuple("SchreierLimit").field(a).finish(),
            TreeSeq::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl TreeSeq {
    pub fn term(&self, i: usize) -> TreeSpec {
        match self {
            TreeSeq::Powers(t) => TreeSpec::BoxPower(vec![(**t).clone(); i]),
            TreeSeq::SchreierLimit(alpha) => TreeSpec::BoxPower(
                (1..=i)
                    .map(|j| TreeSpec::SchreierTree(alpha.fundamental_seq(j as u64).expect("limit order")))
                    .collect(),
            ),
            TreeSeq::Custom(g) => g(i),
        }
    }
}

#[derive(Clone, Debug)]
pub enum TreeSpec {
    Explicit(ExplicitTree),
    /// Nodes whose `+1` positions form a member of the family. For a listed
    /// family this is read as the tree of realised sign patterns: some member
    /// meets the first `|z|` coordinates exactly in the `+1` positions. The
    /// two readings agree on hereditary families, and the second one stays
    /// prefix-closed when the list is not hereditary.
    FromFamily(FamilySpec),
    /// `S_0` = nodes with at most one `+1`; `S_{α+1} = Σ_i ⊞^i S_α`;
    /// `S_α = Σ_i ⊞_{j≤i} S_{α[j]}` for limit `α`.
    SchreierTree(Ordinal),
    BoxPlus(Box<TreeSpec>, Box<TreeSpec>),
    /// `⊞_{i=1}^{n} T_i`, associating to the left; the empty list is `{e_j}`.
    BoxPower(Vec<TreeSpec>),
    /// `L(T, n)`: the nodes `e_j` with `j < n` together with the nodes of `T`
    /// extending `e_{n−1}`.
    LSub(Box<TreeSpec>, usize),
    /// `Σ_i T_i = ⋃_i L(T_i, i)`.
    TreeSum(TreeSeq),
}

impl TreeSpec {
    pub fn contains(&self, z: &[Sign]) -> bool {
        TreeEvaluator::default().member(self, z)
    }

    pub fn box_plus(a: TreeSpec, b: TreeSpec) -> TreeSpec {
        TreeSpec::BoxPlus(Box::new(a), Box::new(b))
    }

    pub fn l_sub(t: TreeSpec, n: usize) -> TreeSpec {
        TreeSpec::LSub(Box::new(t), n)
    }
}

/// Membership with a shared memo for Schreier trees.
#[derive(Debug, Default)]
pub struct TreeEvaluator {
    schreier_memo: BTreeMap<(Ordinal, Node), bool>,
}

fn all_minus(z: &[Sign]) -> bool {
    z.iter().all(|s| *s == Sign::Minus)
}

impl TreeEvaluator {
    pub fn member(&mut self, tree: &TreeSpec, z: &[Sign]) -> bool {
        if z.is_empty() {
            return true;
        }
        match tree {
            TreeSpec::Explicit(t) => t.contains(z),
            TreeSpec::FromFamily(FamilySpec::Explicit(members)) => {
                let plus = plus_positions(z);
                let len = z.len() as u32;
                members.iter().any(|g| g.iter().take_while(|&n| n <= len).eq(plus.iter()))
            }
            TreeSpec::FromFamily(spec) => spec.member(&plus_positions(z)),
            TreeSpec::SchreierTree(alpha) => self.schreier(alpha, z),
            TreeSpec::BoxPlus(a, b) => self.box_power(&[a.as_ref(), b.as_ref()], z),
            TreeSpec::BoxPower(list) => {
                let refs: Vec<&TreeSpec> = list.iter().collect();
                self.box_power(&refs, z)
            }
            TreeSpec::LSub(t, n) => {
                let stem = n.saturating_sub(1);
                if z.len() <= stem {
                    all_minus(z)
                } else {
                    all_minus(&z[..stem]) && self.member(t, z)
                }
            }
            TreeSpec::TreeSum(seq) => self.tree_sum(seq, z),
        }
    }

    fn schreier(&mut self, alpha: &Ordinal, z: &[Sign]) -> bool {
        if alpha.is_zero() {
            return z.iter().filter(|s| **s == Sign::Plus).count() <= 1;
        }
        let key = (alpha.clone(), z.to_vec());
        if let Some(&hit) = self.schreier_memo.get(&key) {
            return hit;
        }
        let seq = match alpha.classify() {
            OrdinalKind::Successor => {
                TreeSeq::Powers(Box::new(TreeSpec::SchreierTree(alpha.predecessor().expect("successor"))))
            }
            _ => TreeSeq::SchreierLimit(alpha.clone()),
        };
        let res = self.tree_sum(&seq, z);
        self.schreier_memo.insert(key, res);
        res
    }

    fn tree_sum(&mut self, seq: &TreeSeq, z: &[Sign]) -> bool {
        let Some(p) = z.iter().position(|s| *s == Sign::Plus) else {
            return true;
        };
        // z extends e_{i-1} exactly for i ≤ p + 1.
        (1..=p + 1).any(|i| {
            let t = seq.term(i);
            self.member(&t, z)
        })
    }

    fn box_power(&mut self, list: &[&TreeSpec], z: &[Sign]) -> bool {
        let len = z.len();
        // reach[a]: z[..a] belongs to the box power of the trees seen so far.
        let mut reach: Vec<bool> = (0..=len).map(|a| all_minus(&z[..a])).collect();
        for t in list {
            let prev = reach.clone();
            for a in 1..=len {
                if reach[a] {
                    continue;
                }
                reach[a] = (0..a).any(|b| {
                    prev[b] && {
                        let mut shifted = e(b);
                        shifted.extend_from_slice(&z[b..a]);
                        self.member(t, &shifted)
                    }
                });
            }
        }
        reach[len]
    }
}

/// Nodes of `tree` up to length `depth`, parents before children.
pub fn nodes_to_depth(tree: &TreeSpec, depth: usize, cap: usize) -> Result<Vec<Node>, TreeError> {
    let mut ev = TreeEvaluator::default();
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for z in &frontier {
            for s in [Sign::Minus, Sign::Plus] {
                let mut c = z.clone();
                c.push(s);
                if ev.member(tree, &c) {
                    next.push(c);
                }
            }
        }
        out.extend(next.iter().cloned());
        if out.len() > cap {
            return Err(TreeError::ResourceCap { what: "tree nodes", cap });
        }
        frontier = next;
    }
    Ok(out)
}

/// Weak independence up to `depth`: turning any `+1` of a node into `−1`
/// stays in the tree. Flipping one sign at a time suffices. Returns a
/// violating `(node, flipped)` pair if there is one.
pub fn weak_independence_violation(
    tree: &TreeSpec,
    depth: usize,
    cap: usize,
) -> Result<Option<(Node, Node)>, TreeError> {
    let mut ev = TreeEvaluator::default();
    for z in nodes_to_depth(tree, depth, cap)? {
        for i in 0..z.len() {
            if z[i] == Sign::Plus {
                let mut w = z.clone();
                w[i] = Sign::Minus;
                if !ev.member(tree, &w) {
                    return Ok(Some((z, w)));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_weakly_independent(tree: &TreeSpec, depth: usize, cap: usize) -> Result<bool, TreeError> {
    Ok(weak_independence_violation(tree, depth, cap)?.is_none())
}

/// Whether `a` and `b` have the same nodes of length at most `depth`.
pub fn equivalent_on_depth(a: &TreeSpec, b: &TreeSpec, depth: usize) -> bool {
    let mut ev = TreeEvaluator::default();
    let mut frontier: Vec<Node> = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for z in &frontier {
            for s in [Sign::Minus, Sign::Plus] {
                let mut c = z.clone();
                c.push(s);
                let (in_a, in_b) = (ev.member(a, &c), ev.member(b, &c));
                if in_a != in_b {
                    return false;
                }
                if in_a {
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    true
}

/// Which side of the branching dichotomy a node falls on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchCase {
    /// `z + e_j + (1)` is a node for every `j`.
    Always,
    /// `z + e_j + (1)` is a node for only finitely many `j`.
    FinitelyOften,
}

/// Decides the branching case at `z` by probing `z + e_j + (1)` for
/// `j < 2·window`: all present gives [`BranchCase::Always`], none among the
/// last `window` gives [`BranchCase::FinitelyOften`].
pub fn branch_case(tree: &TreeSpec, z: &[Sign], window: usize) -> Result<BranchCase, TreeError> {
    let mut ev = TreeEvaluator::default();
    let present: Vec<bool> = (0..2 * window.max(1))
        .map(|j| {
            let mut w = z.to_vec();
            w.extend(e(j));
            w.push(Sign::Plus);
            ev.member(tree, &w)
        })
        .collect();
    if present.iter().all(|&b| b) {
        Ok(BranchCase::Always)
    } else if present[window.max(1)..].iter().all(|&b| !b) {
        Ok(BranchCase::FinitelyOften)
    } else {
        Err(TreeError::Undecided { node: render_node(z) })
    }
}

/// Property FB at `stem`: the extensions `stem + e_j + (1)` are eventually
/// all present or eventually all absent, judged on a window of `probe`
/// indices. Errors with [`TreeError::Undecided`] when the window shows
/// neither.
pub fn has_property_fb(tree: &TreeSpec, stem: &[Sign], probe: usize) -> Result<bool, TreeError> {
    branch_case(tree, stem, probe).map(|_| true)
}

/// The derivation order `δ(T)` of the closure of a tree, for the shapes with
/// a known closed form.
pub fn delta_order(tree: &TreeSpec) -> Result<Ordinal, TreeError> {
    let one = Ordinal::one();
    match tree {
        TreeSpec::Explicit(_) => Ok(one),
        TreeSpec::FromFamily(spec) => spec
            .cb_rank(&FinSet::empty())
            .map(|r| r.successor())
            .map_err(|_| TreeError::Unsupported("families without the empty set")),
        TreeSpec::SchreierTree(alpha) => Ok(Ordinal::omega_pow(alpha.clone()).successor()),
        TreeSpec::LSub(inner, _) => match inner.as_ref() {
            TreeSpec::LSub(..) | TreeSpec::TreeSum(TreeSeq::Custom(_)) => {
                Err(TreeError::Unsupported("nested or custom restrictions"))
            }
            other => delta_order(other),
        },
        TreeSpec::BoxPlus(a, b) => schreier_box_delta(&[a.as_ref(), b.as_ref()]),
        TreeSpec::BoxPower(list) => schreier_box_delta(&list.iter().collect::<Vec<_>>()),
        TreeSpec::TreeSum(TreeSeq::Powers(t)) => match t.as_ref() {
            TreeSpec::SchreierTree(beta) => Ok(Ordinal::omega_pow(beta.successor()).successor()),
            _ => Err(TreeError::Unsupported("tree sums of non-Schreier powers")),
        },
        TreeSpec::TreeSum(TreeSeq::SchreierLimit(alpha)) => Ok(Ordinal::omega_pow(alpha.clone()).successor()),
        TreeSpec::TreeSum(TreeSeq::Custom(_)) => Err(TreeError::Unsupported("custom tree sums")),
    }
}

/// `δ(⊞_{i=1}^{n} S_{β_i}) = ω^{β_n} + … + ω^{β_1} + 1`.
fn schreier_box_delta(list: &[&TreeSpec]) -> Result<Ordinal, TreeError> {
    let mut betas = Vec::with_capacity(list.len());
    for t in list {
        match t {
            TreeSpec::SchreierTree(b) => betas.push(b.clone()),
            _ => return Err(TreeError::Unsupported("box sums of non-Schreier trees")),
        }
    }
    Ok(sum_of_omega_powers(betas.iter().rev()).successor())
}

/// A finite tree of nonempty tuples, closed under nonempty prefixes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellFoundedTree<L: Ord> {
    nodes: BTreeSet<Vec<L>>,
}

impl<L: Ord + Clone> WellFoundedTree<L> {
    pub fn new<I: IntoIterator<Item = Vec<L>>>(nodes: I) -> Result<Self, TreeError> {
        let nodes: BTreeSet<Vec<L>> = nodes.into_iter().collect();
        for z in &nodes {
            if z.is_empty() {
                return Err(TreeError::NotPrefixClosed(String::from("<empty tuple>")));
            }
            if z.len() > 1 && !nodes.contains(&z[..z.len() - 1]) {
                return Err(TreeError::NotPrefixClosed(alloc::format!("tuple of length {}", z.len())));
            }
        }
        Ok(WellFoundedTree { nodes })
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Vec<L>> {
        self.nodes.iter()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, z: &[L]) -> bool {
        self.nodes.contains(z)
    }

    /// The order `o(T)`: how many rounds of deleting nodes without proper
    /// extensions it takes to empty the tree.
    pub fn order(&self) -> u64 {
        let mut cur: BTreeSet<Vec<L>> = self.nodes.clone();
        let mut rounds = 0;
        while !cur.is_empty() {
            let parents: BTreeSet<Vec<L>> = cur.iter().filter(|z| z.len() > 1).map(|z| z[..z.len() - 1].to_vec()).collect();
            cur = parents;
            rounds += 1;
        }
        rounds
    }
}

pub fn wf_order<L: Ord + Clone>(tree: &WellFoundedTree<L>) -> Ordinal {
    Ordinal::from(tree.order())
}

/// A sequence of pairs of disjoint subsets of a finite set of points
/// `0..points`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPairs {
    pub points: usize,
    pub pairs: Vec<(BTreeSet<usize>, BTreeSet<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanTree {
    /// Tuples of 1-based pair indices.
    pub tree: WellFoundedTree<usize>,
    /// Set when some node at the depth cap still had an admissible
    /// extension, so the order is only a lower bound.
    pub truncated: bool,
}

impl BooleanTree {
    pub fn order(&self) -> u64 {
        self.tree.order()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn from_set(s: &BTreeSet<usize>, points: usize) -> Bits {
        let mut v = vec![0u64; points.div_ceil(64)];
        for &p in s.iter().filter(|&&p| p < points) {
            v[p / 64] |= 1 << (p % 64);
        }
        Bits(v)
    }

    fn full(points: usize) -> Bits {
        let mut v = vec![u64::MAX; points.div_ceil(64)];
        if points % 64 != 0 {
            if let Some(last) = v.last_mut() {
                *last = (1u64 << (points % 64)) - 1;
            }
        }
        Bits(v)
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }
}

/// Splits every cell by pair `n`; `None` if some cell misses `A_n` or `B_n`.
fn refine(cells: &[Bits], a: &Bits, b: &Bits) -> Option<Vec<Bits>> {
    let mut next = Vec::with_capacity(cells.len() * 2);
    for c in cells {
        let ca = c.and(a);
        let cb = c.and(b);
        if ca.is_empty() || cb.is_empty() {
            return None;
        }
        next.push(ca);
        next.push(cb);
    }
    Some(next)
}

impl SetPairs {
    fn bits(&self) -> (Vec<Bits>, Vec<Bits>) {
        let a = self.pairs.iter().map(|(s, _)| Bits::from_set(s, self.points)).collect();
        let b = self.pairs.iter().map(|(_, s)| Bits::from_set(s, self.points)).collect();
        (a, b)
    }

    /// Finds a choice of sides along `tuple` (1-based indices) whose
    /// intersection is empty; `true` picks `A`. `None` means the pairs are
    /// Boolean independent along the tuple.
    pub fn dead_pattern(&self, tuple: &[usize]) -> Option<Vec<bool>> {
        let (a, b) = self.bits();
        let mut cells: Vec<(Vec<bool>, Bits)> = vec![(Vec::new(), Bits::full(self.points))];
        for &n in tuple {
            let mut next = Vec::with_capacity(cells.len() * 2);
            for (pat, c) in cells {
                for (side, set) in [(true, &a[n - 1]), (false, &b[n - 1])] {
                    let cell = c.and(set);
                    let mut p = pat.clone();
                    p.push(side);
                    if cell.is_empty() {
                        return Some(p);
                    }
                    next.push((p, cell));
                }
            }
            cells = next;
        }
        None
    }
}

/// The tree of tuples `(n_1, …, n_k)` along which the pairs are Boolean
/// independent: every intersection choosing `A_{n_i}` or `B_{n_i}` for each
/// `i` is nonempty. Indices may repeat; disjoint pairs never allow it.
pub fn boolean_tree(pairs: &SetPairs, depth_cap: usize, node_cap: usize) -> Result<BooleanTree, TreeError> {
    let (a, b) = pairs.bits();
    let mut nodes: Vec<Vec<usize>> = Vec::new();
    let mut truncated = false;
    // Each stack entry: tuple, and the 2^k intersections along it.
    let mut stack: Vec<(Vec<usize>, Vec<Bits>)> = vec![(Vec::new(), vec![Bits::full(pairs.points)])];
    while let Some((tuple, cells)) = stack.pop() {
        for n in 0..a.len() {
            let Some(next) = refine(&cells, &a[n], &b[n]) else {
                continue;
            };
            if tuple.len() == depth_cap {
                truncated = true;
                break;
            }
            let mut t = tuple.clone();
            t.push(n + 1);
            nodes.push(t.clone());
            if nodes.len() > node_cap {
                return Err(TreeError::ResourceCap {
                    what: "Boolean tree nodes",
                    cap: node_cap,
                });
            }
            stack.push((t, next));
        }
    }
    Ok(BooleanTree {
        tree: WellFoundedTree::new(nodes)?,
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::ord;

    fn node(s: &str) -> Node {
        parse_node(s).unwrap()
    }

    #[test]
    fn schreier_zero_and_one() {
        let s0 = TreeSpec::SchreierTree(Ordinal::zero());
        assert!(s0.contains(&node("--+--")));
        assert!(!s0.contains(&node("+-+")));
        let s1 = TreeSpec::SchreierTree(Ordinal::one());
        assert!(s1.contains(&node("-++")));
        assert!(!s1.contains(&node("-+++")));
        assert!(s1.contains(&node("--+++")));
    }

    #[test]
    fn box_power_zero_is_the_minus_spine() {
        let t = TreeSpec::BoxPower(Vec::new());
        assert!(t.contains(&e(7)));
        assert!(!t.contains(&node("-+")));
    }

    #[test]
    fn lsub_keeps_short_spine_and_tail() {
        let t = TreeSpec::l_sub(TreeSpec::SchreierTree(Ordinal::one()), 3);
        assert!(t.contains(&node("-")));
        assert!(!t.contains(&node("+")));
        assert!(t.contains(&node("--++")));
        assert!(!t.contains(&node("-+")));
    }

    #[test]
    fn closed_form_derivation_orders() {
        assert_eq!(delta_order(&TreeSpec::SchreierTree(Ordinal::zero())).unwrap(), ord("2"));
        assert_eq!(delta_order(&TreeSpec::SchreierTree(ord("w"))).unwrap(), ord("w^(w)+1"));
        let t = TreeSpec::BoxPower(vec![TreeSpec::SchreierTree(ord("2")), TreeSpec::SchreierTree(ord("1"))]);
        assert_eq!(delta_order(&t).unwrap(), ord("w+w^(2)+1"));
        assert_eq!(delta_order(&t).unwrap(), ord("w^(2)+1"));
        let t = TreeSpec::BoxPower(vec![TreeSpec::SchreierTree(ord("1")), TreeSpec::SchreierTree(ord("2"))]);
        assert_eq!(delta_order(&t).unwrap(), ord("w^(2)+w+1"));
        assert!(matches!(
            delta_order(&TreeSpec::box_plus(TreeSpec::FromFamily(FamilySpec::Singletons), TreeSpec::SchreierTree(ord("1")))),
            Err(TreeError::Unsupported(_))
        ));
    }

    #[test]
    fn well_founded_order_is_height() {
        let t = WellFoundedTree::new(vec![vec![1u32], vec![1, 2], vec![1, 2, 5], vec![3]]).unwrap();
        assert_eq!(wf_order(&t), ord("3"));
        assert!(WellFoundedTree::new(vec![vec![1u32, 2]]).is_err());
    }

    #[test]
    fn boolean_tree_of_coordinates() {
        // Points 0..4 encode two bits; pair n separates on bit n.
        let pts = 4;
        let pairs = SetPairs {
            points: pts,
            pairs: (0..2)
                .map(|bit| {
                    let a = (0..pts).filter(|p| p >> bit & 1 == 1).collect();
                    let b = (0..pts).filter(|p| p >> bit & 1 == 0).collect();
                    (a, b)
                })
                .collect(),
        };
        let bt = boolean_tree(&pairs, 5, 1000).unwrap();
        assert_eq!(bt.order(), 2);
        assert!(!bt.truncated);
        assert!(bt.tree.contains(&[2, 1]));
        let capped = boolean_tree(&pairs, 1, 1000).unwrap();
        assert!(capped.truncated);
        assert_eq!(pairs.dead_pattern(&[1, 2]), None);
        assert_eq!(pairs.dead_pattern(&[1, 1]), Some(vec![true, false]));
    }
}
