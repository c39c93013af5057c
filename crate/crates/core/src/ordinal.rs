//! Countable ordinals below ε₀ in Cantor normal form.
//!
//! An ordinal is a finite sum `ω^γ₁·k₁ + … + ω^γₘ·kₘ` with `γ₁ > … > γₘ` and
//! positive natural coefficients. Exponents are themselves ordinals, so the
//! representation is recursive.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

/// One CNF term `ω^exponent · coefficient`, with `coefficient ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub exponent: Ordinal,
    pub coefficient: u64,
}

/// An ordinal below ε₀. Terms are kept in strictly decreasing exponent order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Ordinal {
    terms: Vec<Term>,
}

/// Zero, successor or limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrdinalKind {
    Zero,
    Successor,
    Limit,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("{0} is not a limit ordinal")]
    NotLimit(Ordinal),
    #[error("{0} is not a successor ordinal")]
    NotSuccessor(Ordinal),
    #[error("fundamental sequence index must be at least 1")]
    ZeroIndex,
    #[error("the operation needs a positive ordinal")]
    ZeroInput,
    #[error("coefficient overflow")]
    Overflow,
    #[error("cannot parse ordinal at byte {pos}: {msg}")]
    Parse { pos: usize, msg: &'static str },
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::from(1u64)
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::one())
    }

    /// `ω^γ`.
    pub fn omega_pow(gamma: Ordinal) -> Self {
        Ordinal {
            terms: alloc::vec![Term {
                exponent: gamma,
                coefficient: 1,
            }],
        }
    }

    /// Builds an ordinal from `(exponent, coefficient)` pairs given in any
    /// order; the pairs are summed left to right with ordinal addition.
    pub fn from_terms<I: IntoIterator<Item = (Ordinal, u64)>>(pairs: I) -> Result<Self, OrdinalError> {
        let mut acc = Ordinal::zero();
        for (e, c) in pairs {
            if c == 0 {
                continue;
            }
            let t = Ordinal {
                terms: alloc::vec![Term {
                    exponent: e,
                    coefficient: c
                }],
            };
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The natural number this ordinal equals, if finite.
    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent.is_zero() => Some(t.coefficient),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    pub fn classify(&self) -> OrdinalKind {
        match self.terms.last() {
            None => OrdinalKind::Zero,
            Some(t) if t.exponent.is_zero() => OrdinalKind::Successor,
            Some(_) => OrdinalKind::Limit,
        }
    }

    pub fn is_limit(&self) -> bool {
        self.classify() == OrdinalKind::Limit
    }

    pub fn is_successor(&self) -> bool {
        self.classify() == OrdinalKind::Successor
    }

    /// `self + 1`.
    pub fn successor(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    pub fn predecessor(&self) -> Result<Ordinal, OrdinalError> {
        if !self.is_successor() {
            return Err(OrdinalError::NotSuccessor(self.clone()));
        }
        let mut out = self.clone();
        let last = out.terms.last_mut().expect("successor has a term");
        last.coefficient -= 1;
        if last.coefficient == 0 {
            out.terms.pop();
        }
        Ok(out)
    }

    /// Ordinal addition. Terms of `self` below the leading exponent of
    /// `other` are absorbed.
    ///
    /// # Panics
    /// On coefficient overflow; see [`Ordinal::checked_add`].
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        self.checked_add(other).expect("ordinal coefficient overflow")
    }

    pub fn checked_add(&self, other: &Ordinal) -> Result<Ordinal, OrdinalError> {
        let Some(lead) = other.terms.first() else {
            return Ok(self.clone());
        };
        let mut terms: Vec<Term> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut merged = None;
        for t in &self.terms {
            match t.exponent.cmp(&lead.exponent) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => merged = Some(t.coefficient),
                Ordering::Less => break,
            }
        }
        let mut rest = other.terms.iter();
        let first = rest.next().expect("nonempty");
        let coefficient = match merged {
            Some(c) => c.checked_add(first.coefficient).ok_or(OrdinalError::Overflow)?,
            None => first.coefficient,
        };
        terms.push(Term {
            exponent: first.exponent.clone(),
            coefficient,
        });
        terms.extend(rest.cloned());
        Ok(Ordinal { terms })
    }

    /// `self · n` for a natural number `n`.
    pub fn nat_mul(&self, n: u64) -> Ordinal {
        if n == 0 || self.is_zero() {
            return Ordinal::zero();
        }
        let mut out = self.clone();
        let lead = &mut out.terms[0];
        lead.coefficient = lead.coefficient.checked_mul(n).expect("ordinal coefficient overflow");
        out
    }

    /// The `i`-th term (`i ≥ 1`) of the standard fundamental sequence of a
    /// limit ordinal.
    ///
    /// Writing `self = c + ω^γ·k`: for `k > 1` the sequence is
    /// `c + ω^γ·(k−1) + (ω^γ)[i]`; `(ω^{δ+1})[i] = ω^δ·i` and
    /// `(ω^γ)[i] = ω^{γ[i]}` for limit `γ`.
    pub fn fundamental_seq(&self, i: u64) -> Result<Ordinal, OrdinalError> {
        if !self.is_limit() {
            return Err(OrdinalError::NotLimit(self.clone()));
        }
        if i == 0 {
            return Err(OrdinalError::ZeroIndex);
        }
        let mut head = self.clone();
        let last = head.terms.pop().expect("limit has a term");
        if last.coefficient > 1 {
            head.terms.push(Term {
                exponent: last.exponent.clone(),
                coefficient: last.coefficient - 1,
            });
        }
        let tail = match last.exponent.classify() {
            OrdinalKind::Successor => Ordinal::omega_pow(last.exponent.predecessor()?).nat_mul(i),
            OrdinalKind::Limit => Ordinal::omega_pow(last.exponent.fundamental_seq(i)?),
            OrdinalKind::Zero => unreachable!("limit ordinals have a positive last exponent"),
        };
        head.checked_add(&tail)
    }

    /// The leading term `ω^γ₁·k₁`.
    pub fn leading_term(&self) -> Ordinal {
        Ordinal {
            terms: self.terms.iter().take(1).cloned().collect(),
        }
    }

    /// `p(α)`, the smallest `β + ρ` over all splittings `α = ρ + β`, which is
    /// the leading term.
    pub fn p_alpha(&self) -> Result<Ordinal, OrdinalError> {
        if self.is_zero() {
            return Err(OrdinalError::ZeroInput);
        }
        Ok(self.leading_term())
    }

    /// `ω^γ₁·⌈k₁/2⌉`: the leading term with its coefficient halved, rounding
    /// up. Used as the predicted lower bound `α/2` for indices.
    pub fn half(&self) -> Ordinal {
        match self.terms.first() {
            None => Ordinal::zero(),
            Some(t) => Ordinal {
                terms: alloc::vec![Term {
                    exponent: t.exponent.clone(),
                    coefficient: t.coefficient.div_ceil(2),
                }],
            },
        }
    }

    /// For `self ≥ ω^γ`, the unique `σ` with `ω^γ + σ = self`.
    pub fn left_sub_omega_pow(&self, gamma: &Ordinal) -> Option<Ordinal> {
        let lead = self.terms.first()?;
        match lead.exponent.cmp(gamma) {
            Ordering::Less => None,
            Ordering::Greater => Some(self.clone()),
            Ordering::Equal => {
                let mut out = self.clone();
                if lead.coefficient == 1 {
                    out.terms.remove(0);
                } else {
                    out.terms[0].coefficient -= 1;
                }
                Some(out)
            }
        }
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: alloc::vec![Term {
                    exponent: Ordinal::zero(),
                    coefficient: n,
                }],
            }
        }
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let o = a.exponent.cmp(&b.exponent).then(a.coefficient.cmp(&b.coefficient));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    /// Canonical text form: `0`, `5`, `w`, `w*3`, `w^(2)+w+1`, `w^(w)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, t) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str("+")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coefficient)?;
                continue;
            }
            if t.exponent == Ordinal::one() {
                f.write_str("w")?;
            } else {
                write!(f, "w^({})", t.exponent)?;
            }
            if t.coefficient > 1 {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    /// Accepts the canonical form plus a few conveniences: whitespace,
    /// `ω` for `w`, `w^w` for `w^(w)`, and non-normalized sums such as `1+w` (evaluated with
    /// ordinal addition).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == 'ω' { 'w' } else { c })
            .collect();
        let mut p = Parser {
            src: cleaned.as_bytes(),
            pos: 0,
        };
        let o = p.sum()?;
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(o)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &'static str) -> OrdinalError {
        OrdinalError::Parse { pos: self.pos, msg }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Ordinal, OrdinalError> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            let t = self.term()?;
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    fn nat(&mut self) -> Result<u64, OrdinalError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| OrdinalError::Overflow)
    }

    fn term(&mut self) -> Result<Ordinal, OrdinalError> {
        if !self.eat(b'w') {
            return Ok(Ordinal::from(self.nat()?));
        }
        let exponent = if self.eat(b'^') {
            if self.eat(b'(') {
                let e = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                e
            } else if self.eat(b'w') {
                Ordinal::omega()
            } else {
                Ordinal::from(self.nat()?)
            }
        } else {
            Ordinal::one()
        };
        let coefficient = if self.eat(b'*') { self.nat()? } else { 1 };
        if coefficient == 0 {
            return Err(self.err("zero coefficient"));
        }
        Ok(Ordinal::omega_pow(exponent).nat_mul(coefficient))
    }
}

/// Shorthand used throughout the crate and its tests.
pub fn ord(s: &str) -> Ordinal {
    s.parse().unwrap_or_else(|e| panic!("bad ordinal literal {s:?}: {e}"))
}

/// `ω^{γ_1} + ω^{γ_2} + …` summed in the given order.
pub fn sum_of_omega_powers<'a, I: IntoIterator<Item = &'a Ordinal>>(exponents: I) -> Ordinal {
    exponents
        .into_iter()
        .fold(Ordinal::zero(), |acc, g| acc.add(&Ordinal::omega_pow(g.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn addition_absorbs() {
        assert_eq!(ord("1").add(&ord("w")), ord("w"));
        assert_eq!(ord("w").add(&ord("1")), ord("w+1"));
        assert_eq!(ord("w+3").add(&ord("w*2")), ord("w*3"));
        assert_eq!(ord("w^(2)+w").add(&ord("w^(2)")), ord("w^(2)*2"));
    }

    #[test]
    fn fundamental_sequences() {
        assert_eq!(ord("w").fundamental_seq(5).unwrap(), ord("5"));
        assert_eq!(ord("w^(2)").fundamental_seq(3).unwrap(), ord("w*3"));
        assert_eq!(ord("w^(w)").fundamental_seq(3).unwrap(), ord("w^(3)"));
        assert_eq!(ord("w*3").fundamental_seq(2).unwrap(), ord("w*2+2"));
        assert_eq!(ord("w^(2)+w").fundamental_seq(4).unwrap(), ord("w^(2)+4"));
        assert!(matches!(ord("5").fundamental_seq(1), Err(OrdinalError::NotLimit(_))));
        assert!(matches!(ord("w").fundamental_seq(0), Err(OrdinalError::ZeroIndex)));
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "7", "w", "w*2+3", "w^(2)+w+1", "w^(w)", "w^(w^(w)+1)*4+w^(3)"] {
            assert_eq!(ord(s).to_string(), s);
        }
        assert_eq!(ord("w^(1)").to_string(), "w");
        assert_eq!(ord("w^2").to_string(), "w^(2)");
        assert_eq!(ord("ω*2").to_string(), "w*2");
        assert!("w*0".parse::<Ordinal>().is_err());
        assert!("w+".parse::<Ordinal>().is_err());
    }

    #[test]
    fn p_alpha_is_the_leading_term() {
        assert_eq!(ord("w^2*3+w*2+5").p_alpha().unwrap(), ord("w^2*3"));
        assert_eq!(ord("7").p_alpha().unwrap(), ord("7"));
        assert_eq!(ord("w^w+w").p_alpha().unwrap(), ord("w^w"));
        assert_eq!(Ordinal::zero().p_alpha(), Err(OrdinalError::ZeroInput));
    }

    #[test]
    fn half_and_leading_term() {
        assert_eq!(ord("w*3+5").half(), ord("w*2"));
        assert_eq!(ord("w^(2)+w").half(), ord("w^(2)"));
        assert_eq!(ord("5").half(), ord("3"));
        assert_eq!(ord("w*3+5").leading_term(), ord("w*3"));
    }

    #[test]
    fn left_subtraction() {
        let w = Ordinal::one();
        assert_eq!(ord("w*2+1").left_sub_omega_pow(&w), Some(ord("w+1")));
        assert_eq!(ord("w^(2)+1").left_sub_omega_pow(&w), Some(ord("w^(2)+1")));
        assert_eq!(ord("5").left_sub_omega_pow(&w), None);
    }
}
