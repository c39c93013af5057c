use rand::Rng;
use schreier_core::families::BlockRule;
use schreier_core::indices::{Interval, StepFn};
use schreier_core::norms::{rat, Rational};
use schreier_core::ordinal::{ord, Ordinal, OrdinalKind};

/// Order attached to slot `q`, straight from the definition.
pub fn slot_order(alpha: &Ordinal, q: u64) -> Ordinal {
    match alpha.classify() {
        OrdinalKind::Successor => alpha.predecessor().unwrap(),
        OrdinalKind::Limit => alpha.fundamental_seq(q).unwrap(),
        OrdinalKind::Zero => unreachable!(),
    }
}

/// Schreier membership by enumerating every split into consecutive nonempty
/// blocks and every increasing assignment of those blocks to slots.
pub fn member_by_partitions(alpha: &Ordinal, rule: BlockRule, f: &[u32]) -> bool {
    if f.is_empty() {
        return true;
    }
    match alpha.as_finite() {
        Some(0) => return f.len() <= 1,
        Some(1) => return f[0] as usize >= f.len(),
        _ => {}
    }
    let m = f[0] as u64;
    let len = f.len();
    // Each mask over the len-1 gaps gives one split.
    for mask in 0u32..(1 << (len - 1)) {
        let mut blocks: Vec<&[u32]> = Vec::new();
        let mut start = 0;
        for gap in 0..len - 1 {
            if mask >> gap & 1 == 1 {
                blocks.push(&f[start..=gap]);
                start = gap + 1;
            }
        }
        blocks.push(&f[start..]);
        if blocks.len() as u64 > m {
            continue;
        }
        if assign_slots(alpha, rule, &blocks, 1, m, true) {
            return true;
        }
    }
    false
}

fn assign_slots(alpha: &Ordinal, rule: BlockRule, blocks: &[&[u32]], next: u64, m: u64, first: bool) -> bool {
    let Some((head, rest)) = blocks.split_first() else {
        return true;
    };
    let last_slot = if first && rule == BlockRule::MinInFirst { 1 } else { m };
    for q in next..=last_slot {
        if m - q < rest.len() as u64 {
            break;
        }
        if member_by_partitions(&slot_order(alpha, q), rule, head)
            && assign_slots(alpha, rule, rest, q + 1, m, false)
        {
            return true;
        }
    }
    false
}

/// All subsets of `{1, …, n}` as increasing vectors.
pub fn all_subsets(n: u32) -> Vec<Vec<u32>> {
    (0u32..1 << n)
        .map(|mask| (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        .collect()
}

/// The shortest chain of closed sets from the whole space to `∅` whose
/// differences each miss `{f ≤ c}` or `{f ≥ d}`, searched breadth-first over
/// unions of atoms. The atoms are the breakpoints of `f` as single points and
/// the open gaps between consecutive breakpoints.
pub fn lavrentiev_brute(f: &StepFn, c: &Rational, d: &Rational) -> Option<u64> {
    let top = f.space().top.clone();
    let bound = top.successor();
    let breaks: Vec<Ordinal> = f.pieces().iter().map(|(i, _)| i.lo.clone()).collect();
    // (representative point, is a gap, index of the closing breakpoint if
    // the gap's supremum is a limit point of the space)
    let mut atoms: Vec<(Ordinal, Option<usize>)> = Vec::new();
    let mut point_atom = vec![0usize; breaks.len()];
    for (k, b) in breaks.iter().enumerate() {
        point_atom[k] = atoms.len();
        atoms.push((b.clone(), None));
        let next = breaks.get(k + 1).cloned().unwrap_or_else(|| bound.clone());
        let rep = b.successor();
        if rep < next {
            let closer = (next.is_limit() && next <= top).then_some(k + 1);
            atoms.push((rep, closer));
        }
    }
    let n = atoms.len();
    let mut needs = vec![0u32; n];
    let (mut low, mut high) = (0u32, 0u32);
    for (a, (rep, closer)) in atoms.iter().enumerate() {
        if let Some(k) = closer {
            needs[a] = 1 << point_atom[*k];
        }
        let v = f.eval(rep).expect("pieces cover the space");
        if v <= c {
            low |= 1 << a;
        }
        if v >= d {
            high |= 1 << a;
        }
    }
    let closed = |s: u32| (0..n).all(|a| s >> a & 1 == 0 || s & needs[a] == needs[a]);
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut dist: std::collections::HashMap<u32, u64> = std::collections::HashMap::new();
    dist.insert(full, 0);
    let mut queue = std::collections::VecDeque::from([full]);
    while let Some(s) = queue.pop_front() {
        let here = dist[&s];
        if s == 0 {
            return Some(here);
        }
        // Every submask t of s.
        let mut t = s;
        loop {
            t = t.wrapping_sub(1) & s;
            let removed = s & !t;
            if (removed & low == 0 || removed & high == 0) && closed(t) && !dist.contains_key(&t) {
                dist.insert(t, here + 1);
                queue.push_back(t);
            }
            if t == 0 {
                break;
            }
        }
    }
    None
}

/// A random step function on `[0, ω²]` with at most `max_pieces` pieces and
/// values in `{0, 1/2, 1}`. Breakpoints have the form `ω·a + b` with
/// `a, b < 4`, or are `ω²` itself. Usually every breakpoint is split
/// off as a point piece of its own, which puts values on limit ordinals.
pub fn random_step_fn<R: Rng>(rng: &mut R, max_pieces: usize) -> StepFn {
    let top = ord("w^2");
    let isolate = max_pieces >= 2 && rng.gen_bool(0.75);
    let count = if isolate {
        rng.gen_range(1..=max_pieces / 2)
    } else {
        rng.gen_range(1..=max_pieces)
    };
    let mut cuts = std::collections::BTreeSet::new();
    while cuts.len() + 1 < count {
        let p = if rng.gen_ratio(1, 3) {
            top.clone()
        } else {
            Ordinal::omega().nat_mul(rng.gen_range(0..4)).add(&Ordinal::from(rng.gen_range(0..4u64)))
        };
        if !p.is_zero() {
            cuts.insert(p);
        }
    }
    let mut starts: Vec<Ordinal> = vec![Ordinal::zero()];
    starts.extend(cuts);
    let bound = top.successor();
    let mut value = || [rat(0, 1), rat(1, 2), rat(1, 1)][rng.gen_range(0..3)].clone();
    let mut pieces = Vec::new();
    for (k, lo) in starts.iter().enumerate() {
        let end = starts.get(k + 1).cloned().unwrap_or_else(|| bound.clone());
        if isolate {
            pieces.push((Interval::point(lo.clone()), value()));
            let gap = Interval::half_open(lo.successor(), end);
            if !gap.is_empty() {
                pieces.push((gap, value()));
            }
        } else {
            pieces.push((Interval::half_open(lo.clone(), end), value()));
        }
    }
    StepFn::new(top, pieces).unwrap()
}
