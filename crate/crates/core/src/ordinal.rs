//! Cantor normal form arithmetic for ordinals below `w^w`.
//!
//! An [`Ordinal`] is a finite sum `w^e1*c1 + ... + w^ek*ck` with strictly
//! decreasing natural-number exponents and positive coefficients.  Both
//! exponents and coefficients are arbitrary-precision, so every operation
//! is total on the representable range and never overflows silently.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Arbitrary-precision natural number.
pub type Nat = BigUint;

fn nat(n: u64) -> Nat {
    Nat::from(n)
}

/// An ordinal below `w^w`, stored in Cantor normal form.
///
/// The term list is strictly decreasing in the exponent and every
/// coefficient is at least 1; the empty list denotes 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Nat, Nat)>,
}

/// Kind of an ordinal: zero, successor or limit.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Kind {
    Zero,
    Successor,
    Limit,
}

/// Errors from partial ordinal operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrdinalError {
    #[error("left subtraction requires a <= b, got {a} > {b}")]
    SubtrahendTooLarge { a: String, b: String },
    #[error("leading term of zero")]
    LeadingTermOfZero,
    #[error("{0} is not a successor ordinal")]
    NotASuccessor(String),
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn from_nat<N: Into<Nat>>(n: N) -> Self {
        let c: Nat = n.into();
        if c.is_zero() {
            Ordinal::zero()
        } else {
            Ordinal { terms: vec![(Nat::zero(), c)] }
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(nat(1))
    }

    /// `w^k` for a natural `k`.
    pub fn omega_pow<N: Into<Nat>>(k: N) -> Self {
        Ordinal { terms: vec![(k.into(), Nat::one())] }
    }

    /// `w^e * c`; zero when `c = 0`.
    pub fn omega_pow_times<E: Into<Nat>, C: Into<Nat>>(e: E, c: C) -> Self {
        let c: Nat = c.into();
        if c.is_zero() {
            Ordinal::zero()
        } else {
            Ordinal { terms: vec![(e.into(), c)] }
        }
    }

    /// Builds an ordinal from CNF terms, validating the invariants.
    pub fn from_terms(terms: Vec<(Nat, Nat)>) -> Option<Self> {
        for w in terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return None;
            }
        }
        if terms.iter().any(|(_, c)| c.is_zero()) {
            return None;
        }
        Some(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Nat, Nat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when the value is below `w`.
    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_zero())
    }

    /// The finite value, if below `w`.
    pub fn as_nat(&self) -> Option<Nat> {
        if self.is_zero() {
            Some(Nat::zero())
        } else if self.is_finite() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn as_u64(&self) -> Option<u64> {
        self.as_nat().and_then(|n| u64::try_from(&n).ok())
    }

    pub fn kind(&self) -> Kind {
        match self.terms.last() {
            None => Kind::Zero,
            Some((e, _)) if e.is_zero() => Kind::Successor,
            Some(_) => Kind::Limit,
        }
    }

    /// First CNF term `(exponent, coefficient)`; error on zero.
    pub fn leading_term(&self) -> Result<(Nat, Nat), OrdinalError> {
        self.terms.first().cloned().ok_or(OrdinalError::LeadingTermOfZero)
    }

    fn leading_exp(&self) -> Option<&Nat> {
        self.terms.first().map(|(e, _)| e)
    }

    /// Ordinal sum.  Terms of `self` below the leading exponent of `rhs`
    /// are absorbed; equal leading exponents merge coefficients.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some(lead) = rhs.leading_exp() else {
            return self.clone();
        };
        let mut terms: Vec<(Nat, Nat)> = self
            .terms
            .iter()
            .filter(|(e, _)| e > lead)
            .cloned()
            .collect();
        let mut rest = rhs.terms.iter();
        let (e0, c0) = rest.next().expect("nonzero rhs").clone();
        match self.terms.iter().find(|(e, _)| e == &e0) {
            Some((_, c)) => terms.push((e0, c + &c0)),
            None => terms.push((e0, c0)),
        }
        terms.extend(rest.cloned());
        Ordinal { terms }
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::from_nat(1u64))
    }

    /// The unique `t` with `t + 1 = self`, defined for successors.
    pub fn pred(&self) -> Result<Ordinal, OrdinalError> {
        if self.kind() != Kind::Successor {
            return Err(OrdinalError::NotASuccessor(self.to_string()));
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor is nonzero");
        last.1 -= 1u32;
        if last.1.is_zero() {
            terms.pop();
        }
        Ok(Ordinal { terms })
    }

    /// The unique `t` with `self + t = rhs`, defined when `self <= rhs`.
    pub fn left_sub(&self, rhs: &Ordinal) -> Result<Ordinal, OrdinalError> {
        if self > rhs {
            return Err(OrdinalError::SubtrahendTooLarge {
                a: self.to_string(),
                b: rhs.to_string(),
            });
        }
        // Walk the common prefix of the two term lists.
        let mut k = 0;
        while k < self.terms.len() && k < rhs.terms.len() && self.terms[k] == rhs.terms[k] {
            k += 1;
        }
        if k == self.terms.len() {
            return Ok(Ordinal { terms: rhs.terms[k..].to_vec() });
        }
        // self < rhs, so rhs has a k-th term dominating self's.
        let (ea, ca) = &self.terms[k];
        let (eb, cb) = &rhs.terms[k];
        debug_assert!(k < rhs.terms.len());
        if ea < eb {
            Ok(Ordinal { terms: rhs.terms[k..].to_vec() })
        } else {
            debug_assert_eq!(ea, eb);
            debug_assert!(ca < cb);
            let mut terms = vec![(eb.clone(), cb - ca)];
            terms.extend_from_slice(&rhs.terms[k + 1..]);
            Ok(Ordinal { terms })
        }
    }

    /// Ordinal product, distributing over the CNF terms of `rhs` from the
    /// left: `a * w^e = w^(lead(a)+e)` for `e >= 1`, and `a * n` scales the
    /// leading coefficient.
    pub fn mul(&self, rhs: &Ordinal) -> Ordinal {
        if self.is_zero() || rhs.is_zero() {
            return Ordinal::zero();
        }
        let (lead_e, lead_c) = self.terms[0].clone();
        let mut acc = Ordinal::zero();
        for (e, c) in &rhs.terms {
            let part = if e.is_zero() {
                // a * n: scale the leading coefficient, keep the tail.
                let mut terms = vec![(lead_e.clone(), &lead_c * c)];
                terms.extend_from_slice(&self.terms[1..]);
                Ordinal { terms }
            } else {
                Ordinal { terms: vec![(&lead_e + e, c.clone())] }
            };
            acc = acc.add(&part);
        }
        acc
    }

    /// Writes `self = w*q + r` with `r < w`.
    pub fn divmod_omega(&self) -> (Ordinal, Nat) {
        let mut q = Vec::new();
        let mut r = Nat::zero();
        for (e, c) in &self.terms {
            if e.is_zero() {
                r = c.clone();
            } else {
                q.push((e - 1u32, c.clone()));
            }
        }
        (Ordinal { terms: q }, r)
    }

    /// Writes `self = w^k * q + r` with `r < w^k` and finite `q`, assuming
    /// `self < w^(k+1)`.  Returns `None` when a term exceeds exponent `k`.
    pub fn divmod_omega_pow(&self, k: &Nat) -> Option<(Nat, Ordinal)> {
        let mut q = Nat::zero();
        let mut r = Vec::new();
        for (e, c) in &self.terms {
            match e.cmp(k) {
                Ordering::Greater => return None,
                Ordering::Equal => q = c.clone(),
                Ordering::Less => r.push((e.clone(), c.clone())),
            }
        }
        Some((q, Ordinal { terms: r }))
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        // Lexicographic on (exponent, coefficient) term lists; a longer
        // list with an equal prefix is larger.
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let c = a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
            } else {
                write!(f, "w")?;
                if !e.is_one() {
                    write!(f, "^{e}")?;
                }
                if !c.is_one() {
                    write!(f, "*{c}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A parse failure, with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {pos}: {kind}")]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("expected a term")]
    ExpectedTerm,
    #[error("malformed number")]
    BadNumber,
    #[error("zero coefficient")]
    ZeroCoefficient,
    #[error("zero exponent; write the coefficient as a plain number")]
    ZeroExponent,
    #[error("the literal 0 is only allowed as a complete expression")]
    EmbeddedZero,
    #[error("exponents must be strictly decreasing")]
    NonCanonicalOrder,
    #[error("trailing input")]
    TrailingInput,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { pos: self.pos, kind }
    }

    fn number(&mut self) -> Result<Nat, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(ParseErrorKind::BadNumber));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(Nat::from_str(text).unwrap())
    }
}

impl FromStr for Ordinal {
    type Err = ParseError;

    /// Parses the grammar `expr := term { "+" term }` with
    /// `term := "w" [ "^" nat ] [ "*" nat ] | nat`.  The literal `0` is
    /// only accepted as a complete expression, and terms must appear in
    /// strictly decreasing exponent order.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut cur = Cursor { bytes: s.as_bytes(), pos: 0 };
        cur.skip_ws();
        let mut terms: Vec<(Nat, Nat)> = Vec::new();
        loop {
            let term_pos = cur.pos;
            let (e, c) = if cur.eat(b'w') {
                let e = if cur.eat(b'^') {
                    let p = cur.pos;
                    let e = cur.number()?;
                    if e.is_zero() {
                        return Err(ParseError { pos: p, kind: ParseErrorKind::ZeroExponent });
                    }
                    e
                } else {
                    Nat::one()
                };
                let c = if cur.eat(b'*') {
                    let p = cur.pos;
                    let c = cur.number()?;
                    if c.is_zero() {
                        return Err(ParseError { pos: p, kind: ParseErrorKind::ZeroCoefficient });
                    }
                    c
                } else {
                    Nat::one()
                };
                (e, c)
            } else if cur.peek().is_some_and(|b| b.is_ascii_digit()) {
                let c = cur.number()?;
                if c.is_zero() {
                    cur.skip_ws();
                    if terms.is_empty() && cur.peek().is_none() {
                        return Ok(Ordinal::zero());
                    }
                    return Err(ParseError { pos: term_pos, kind: ParseErrorKind::EmbeddedZero });
                }
                (Nat::zero(), c)
            } else {
                return Err(cur.err(ParseErrorKind::ExpectedTerm));
            };
            if let Some((prev, _)) = terms.last() {
                if *prev <= e {
                    return Err(ParseError { pos: term_pos, kind: ParseErrorKind::NonCanonicalOrder });
                }
            }
            terms.push((e, c));
            cur.skip_ws();
            if cur.eat(b'+') {
                cur.skip_ws();
                continue;
            }
            break;
        }
        if cur.pos != cur.bytes.len() {
            return Err(cur.err(ParseErrorKind::TrailingInput));
        }
        Ok(Ordinal { terms })
    }
}
