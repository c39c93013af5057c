//! The Lavrentiev index of a step function on a countable ordinal interval
//! `[0, top]` with the order topology.
//!
//! Subsets are finite unions of half-open intervals `[lo, end)` of ordinals.
//! Every interval the step functions need has this shape: `[a, b]` is
//! `[a, b+1)` and `(a, b)` is `[a+1, b)`. The closure of `[lo, end)` adds the
//! point `end` exactly when `end` is a limit ordinal inside the space.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::norms::Rational;
use crate::ordinal::Ordinal;

use super::IndexError;

/// A half-open ordinal interval `[lo, end)`; empty when `lo ≥ end`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub lo: Ordinal,
    pub end: Ordinal,
}

impl Interval {
    pub fn half_open(lo: Ordinal, end: Ordinal) -> Self {
        Interval { lo, end }
    }

    /// `[a, b]`.
    pub fn closed(a: Ordinal, b: Ordinal) -> Self {
        Interval {
            lo: a,
            end: b.successor(),
        }
    }

    /// `(a, b)`.
    pub fn open(a: Ordinal, b: Ordinal) -> Self {
        Interval {
            lo: a.successor(),
            end: b,
        }
    }

    /// `(a, b]`.
    pub fn open_closed(a: Ordinal, b: Ordinal) -> Self {
        Interval {
            lo: a.successor(),
            end: b.successor(),
        }
    }

    pub fn point(p: Ordinal) -> Self {
        Interval::closed(p.clone(), p)
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.end
    }

    pub fn contains(&self, p: &Ordinal) -> bool {
        self.lo <= *p && *p < self.end
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.end.predecessor() {
            Ok(last) => write!(f, "[{},{}]", self.lo, last),
            Err(_) => write!(f, "[{},{})", self.lo, self.end),
        }
    }
}

/// A finite union of intervals, kept sorted, disjoint and with no two
/// intervals touching.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointSet(Vec<Interval>);

impl PointSet {
    pub fn empty() -> Self {
        PointSet(Vec::new())
    }

    pub fn from_intervals<I: IntoIterator<Item = Interval>>(items: I) -> Self {
        let mut v: Vec<Interval> = items.into_iter().filter(|i| !i.is_empty()).collect();
        v.sort();
        let mut out: Vec<Interval> = Vec::with_capacity(v.len());
        for i in v {
            match out.last_mut() {
                Some(last) if i.lo <= last.end => {
                    if i.end > last.end {
                        last.end = i.end;
                    }
                }
                _ => out.push(i),
            }
        }
        PointSet(out)
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: &Ordinal) -> bool {
        self.0.iter().any(|i| i.contains(p))
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        PointSet::from_intervals(self.0.iter().chain(&other.0).cloned())
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut out = Vec::new();
        for a in &self.0 {
            for b in &other.0 {
                let lo = a.lo.clone().max(b.lo.clone());
                let end = a.end.clone().min(b.end.clone());
                out.push(Interval { lo, end });
            }
        }
        PointSet::from_intervals(out)
    }

    /// The points of `[0, bound)` outside the set.
    pub fn complement_below(&self, bound: &Ordinal) -> PointSet {
        let mut out = Vec::new();
        let mut cursor = Ordinal::zero();
        for i in &self.0 {
            out.push(Interval {
                lo: cursor,
                end: i.lo.clone().min(bound.clone()),
            });
            cursor = i.end.clone();
        }
        out.push(Interval {
            lo: cursor,
            end: bound.clone(),
        });
        PointSet::from_intervals(out)
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let bound = self.0.last().map_or_else(Ordinal::zero, |i| i.end.clone());
        self.intersection(&other.complement_below(&bound))
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.difference(other).is_empty()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("{}");
        }
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// The compact space `[0, top]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinalCompact {
    pub top: Ordinal,
}

impl OrdinalCompact {
    pub fn new(top: Ordinal) -> Self {
        OrdinalCompact { top }
    }

    /// One past the last point.
    pub fn bound(&self) -> Ordinal {
        self.top.successor()
    }

    pub fn whole(&self) -> PointSet {
        PointSet::from_intervals([Interval::half_open(Ordinal::zero(), self.bound())])
    }

    pub fn closure(&self, s: &PointSet) -> PointSet {
        PointSet::from_intervals(s.0.iter().map(|i| {
            if i.end.is_limit() && i.end <= self.top {
                Interval::half_open(i.lo.clone(), i.end.successor())
            } else {
                i.clone()
            }
        }))
    }

    pub fn complement(&self, s: &PointSet) -> PointSet {
        s.complement_below(&self.bound())
    }

    pub fn is_closed(&self, s: &PointSet) -> bool {
        self.closure(s) == *s
    }
}

/// A function on `[0, top]` constant on each of finitely many intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFn {
    space: OrdinalCompact,
    pieces: Vec<(Interval, Rational)>,
}

impl StepFn {
    /// The pieces must partition `[0, top]`; they may come in any order.
    pub fn new(top: Ordinal, pieces: Vec<(Interval, Rational)>) -> Result<Self, IndexError> {
        let mut pieces = pieces;
        if let Some((i, _)) = pieces.iter().find(|(i, _)| i.is_empty()) {
            return Err(IndexError::InvalidStepFn(alloc::format!("empty piece {i}")));
        }
        pieces.sort_by(|a, b| a.0.cmp(&b.0));
        let space = OrdinalCompact::new(top);
        let mut cursor = Ordinal::zero();
        for (i, _) in &pieces {
            if i.lo != cursor {
                return Err(IndexError::InvalidStepFn(alloc::format!(
                    "pieces must partition the space; {i} does not start at {cursor}"
                )));
            }
            cursor = i.end.clone();
        }
        if cursor != space.bound() {
            return Err(IndexError::InvalidStepFn(alloc::format!(
                "pieces end before {} or run past it",
                space.top
            )));
        }
        Ok(StepFn { space, pieces })
    }

    pub fn constant(top: Ordinal, value: Rational) -> Self {
        let whole = Interval::half_open(Ordinal::zero(), top.successor());
        StepFn {
            space: OrdinalCompact::new(top),
            pieces: alloc::vec![(whole, value)],
        }
    }

    pub fn space(&self) -> &OrdinalCompact {
        &self.space
    }

    pub fn pieces(&self) -> &[(Interval, Rational)] {
        &self.pieces
    }

    pub fn eval(&self, p: &Ordinal) -> Option<&Rational> {
        self.pieces.iter().find(|(i, _)| i.contains(p)).map(|(_, v)| v)
    }

    /// `{f ≤ c}`.
    pub fn at_most(&self, c: &Rational) -> PointSet {
        PointSet::from_intervals(self.pieces.iter().filter(|(_, v)| v <= c).map(|(i, _)| i.clone()))
    }

    /// `{f ≥ d}`.
    pub fn at_least(&self, d: &Rational) -> PointSet {
        PointSet::from_intervals(self.pieces.iter().filter(|(_, v)| v >= d).map(|(i, _)| i.clone()))
    }
}

/// Which level set the chain removes first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainStart {
    /// `F₁ = closure(D)`: the first difference avoids `D`.
    High,
    /// `F₁ = closure(C)`: the first difference avoids `C`.
    Low,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LavrentievResult {
    pub index: Ordinal,
    /// `F₀ = [0, top] ⊇ F₁ ⊇ … ⊇ F_L = ∅`.
    pub chain: Vec<PointSet>,
    pub start: ChainStart,
}

/// Chains longer than this are reported as a resource failure.
const MAX_CHAIN: usize = 100_000;

/// `L(f, c, d)`: the shortest decreasing chain of closed sets from the whole
/// space down to `∅` whose successive differences each miss `C = {f ≤ c}`
/// or `D = {f ≥ d}`. Both alternating closure chains are built and the
/// shorter one is returned; the result is checked with [`validate_chain`].
pub fn lavrentiev_index(f: &StepFn, c: &Rational, d: &Rational) -> Result<LavrentievResult, IndexError> {
    if c >= d {
        return Err(IndexError::Thresholds);
    }
    let low = f.at_most(c);
    let high = f.at_least(d);
    let mut best: Option<(Vec<PointSet>, ChainStart)> = None;
    for start in [ChainStart::High, ChainStart::Low] {
        let chain = alternating_chain(f.space(), &low, &high, start)?;
        if best.as_ref().is_none_or(|(b, _)| chain.len() < b.len()) {
            best = Some((chain, start));
        }
    }
    let (chain, start) = best.expect("two candidate chains");
    validate_chain(f, c, d, &chain).map_err(IndexError::InvalidChain)?;
    Ok(LavrentievResult {
        index: Ordinal::from((chain.len() - 1) as u64),
        chain,
        start,
    })
}

fn alternating_chain(
    space: &OrdinalCompact,
    low: &PointSet,
    high: &PointSet,
    start: ChainStart,
) -> Result<Vec<PointSet>, IndexError> {
    let mut chain = alloc::vec![space.whole()];
    let mut take_high = start == ChainStart::High;
    while !chain.last().expect("nonempty").is_empty() {
        if chain.len() > MAX_CHAIN {
            return Err(IndexError::ResourceCap {
                what: "sets in a Lavrentiev chain",
                cap: MAX_CHAIN,
            });
        }
        let side = if take_high { high } else { low };
        let next = space.closure(&chain.last().expect("nonempty").intersection(side));
        chain.push(next);
        take_high = !take_high;
    }
    Ok(chain)
}

/// Checks a chain against the definition: it starts at the whole space,
/// ends at `∅`, decreases, consists of closed sets, and each difference
/// misses `{f ≤ c}` or `{f ≥ d}`.
pub fn validate_chain(f: &StepFn, c: &Rational, d: &Rational, chain: &[PointSet]) -> Result<(), String> {
    let space = f.space();
    let low = f.at_most(c);
    let high = f.at_least(d);
    match (chain.first(), chain.last()) {
        (Some(first), Some(last)) => {
            if *first != space.whole() {
                return Err(String::from("the chain must start at the whole space"));
            }
            if !last.is_empty() {
                return Err(String::from("the chain must end at the empty set"));
            }
        }
        _ => return Err(String::from("empty chain")),
    }
    for (k, s) in chain.iter().enumerate() {
        if !space.is_closed(s) {
            return Err(alloc::format!("set {k} is not closed: {s}"));
        }
    }
    for (k, w) in chain.windows(2).enumerate() {
        if !w[1].is_subset(&w[0]) {
            return Err(alloc::format!("set {} is not contained in set {k}", k + 1));
        }
        let diff = w[0].difference(&w[1]);
        if !diff.intersection(&low).is_empty() && !diff.intersection(&high).is_empty() {
            return Err(alloc::format!("difference {k} meets both level sets"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::rat;
    use crate::ordinal::ord;

    #[test]
    fn closure_adds_limit_suprema() {
        let space = OrdinalCompact::new(ord("w*2"));
        let s = PointSet::from_intervals([Interval::half_open(ord("3"), ord("w"))]);
        assert_eq!(space.closure(&s), PointSet::from_intervals([Interval::closed(ord("3"), ord("w"))]));
        let top = PointSet::from_intervals([Interval::half_open(ord("w+1"), ord("w*2+1"))]);
        assert!(space.is_closed(&top));
    }

    #[test]
    fn set_algebra() {
        let a = PointSet::from_intervals([Interval::half_open(ord("0"), ord("5")), Interval::half_open(ord("5"), ord("w"))]);
        assert_eq!(a.intervals().len(), 1);
        let b = PointSet::from_intervals([Interval::point(ord("3"))]);
        let diff = a.difference(&b);
        assert!(!diff.contains(&ord("3")) && diff.contains(&ord("4")) && diff.contains(&ord("2")));
        assert!(b.is_subset(&a));
        assert_eq!(diff.union(&b), a);
    }

    #[test]
    fn point_mass_at_omega() {
        let top = ord("w");
        let f = StepFn::new(
            top.clone(),
            alloc::vec![
                (Interval::half_open(ord("0"), ord("w")), rat(0, 1)),
                (Interval::point(ord("w")), rat(1, 1)),
            ],
        )
        .unwrap();
        let r = lavrentiev_index(&f, &rat(1, 4), &rat(3, 4)).unwrap();
        assert_eq!(r.index, ord("2"));
        assert_eq!(r.chain[1], PointSet::from_intervals([Interval::point(top)]));
        assert_eq!(r.start, ChainStart::High);
    }

    #[test]
    fn constant_functions_have_index_one() {
        for v in [rat(0, 1), rat(1, 2), rat(1, 1)] {
            let f = StepFn::constant(ord("w^2"), v);
            assert_eq!(lavrentiev_index(&f, &rat(1, 4), &rat(3, 4)).unwrap().index, ord("1"));
        }
    }

    #[test]
    fn pieces_must_partition() {
        let gap = alloc::vec![(Interval::half_open(ord("1"), ord("w+1")), rat(0, 1))];
        assert!(StepFn::new(ord("w"), gap).is_err());
        assert!(lavrentiev_index(&StepFn::constant(ord("1"), rat(0, 1)), &rat(1, 1), &rat(1, 1)).is_err());
    }
}
