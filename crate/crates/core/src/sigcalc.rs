//! Ordered pairs of homeomorphism classes under disjoint-union exchange.
//!
//! A [`ClassPair`] is the class-level avatar of an ordered pair of bounded
//! clopen sets; [`combine`] is the class of a disjoint union, [`sim`] the
//! exchange relation `(P1, Q1) ~ (P2, Q2) iff P1 u Q2 = P2 u Q1` on
//! classes.  Note that `sim` is reflexive and symmetric but not
//! transitive; see the regression test below for the witness triple.

use crate::clopen::{ClopenError, HomeoClass};
use crate::ordinal::Nat;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Class of the disjoint union: empty is neutral, unequal ranks keep the
/// higher-rank class, equal ranks add degrees.
pub fn combine(a: &HomeoClass, b: &HomeoClass) -> HomeoClass {
    match (a, b) {
        (HomeoClass::Empty, x) | (x, HomeoClass::Empty) => x.clone(),
        (
            HomeoClass::Class { rank: ra, degree: da },
            HomeoClass::Class { rank: rb, degree: db },
        ) => match ra.cmp(rb) {
            Ordering::Greater => a.clone(),
            Ordering::Less => b.clone(),
            Ordering::Equal => HomeoClass::Class { rank: ra.clone(), degree: da + db },
        },
    }
}

/// An ordered pair of homeomorphism classes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClassPair {
    pub p: HomeoClass,
    pub q: HomeoClass,
}

impl ClassPair {
    pub fn new(p: HomeoClass, q: HomeoClass) -> Self {
        ClassPair { p, q }
    }

    pub fn zero() -> Self {
        ClassPair { p: HomeoClass::Empty, q: HomeoClass::Empty }
    }

    pub fn is_zero_pair(&self) -> bool {
        self.p == HomeoClass::Empty && self.q == HomeoClass::Empty
    }

    /// Componentwise disjoint union.
    pub fn add(&self, rhs: &ClassPair) -> ClassPair {
        ClassPair { p: combine(&self.p, &rhs.p), q: combine(&self.q, &rhs.q) }
    }

    /// `-(P, Q) = (Q, P)`.
    pub fn neg(&self) -> ClassPair {
        ClassPair { p: self.q.clone(), q: self.p.clone() }
    }

    pub fn sub(&self, rhs: &ClassPair) -> ClassPair {
        self.add(&rhs.neg())
    }
}

/// The exchange relation on pairs.
pub fn sim(x: &ClassPair, y: &ClassPair) -> bool {
    combine(&x.p, &y.q) == combine(&y.p, &x.q)
}

/// Signed canonical form of a pair: a sound refinement of [`sim`]
/// (equal signed forms imply `sim`), strictly finer than it, and not
/// additive under [`ClassPair::add`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SignedClass {
    Zero,
    Plus { rank: Nat, degree: Nat },
    Minus { rank: Nat, degree: Nat },
}

/// Reduces a pair to its signed form: zero when the components are equal,
/// otherwise the dominant side with the rank of the difference.
pub fn signed(x: &ClassPair) -> SignedClass {
    if x.p == x.q {
        return SignedClass::Zero;
    }
    let side = |c: &HomeoClass, plus: bool| -> SignedClass {
        let HomeoClass::Class { rank, degree } = c.clone() else { unreachable!() };
        if plus {
            SignedClass::Plus { rank, degree }
        } else {
            SignedClass::Minus { rank, degree }
        }
    };
    match (&x.p, &x.q) {
        (HomeoClass::Empty, c) => side(c, false),
        (c, HomeoClass::Empty) => side(c, true),
        (
            HomeoClass::Class { rank: rp, degree: dp },
            HomeoClass::Class { rank: rq, degree: dq },
        ) => match rp.cmp(rq) {
            Ordering::Greater => side(&x.p, true),
            Ordering::Less => side(&x.q, false),
            Ordering::Equal => {
                if dp > dq {
                    SignedClass::Plus { rank: rp.clone(), degree: dp - dq }
                } else {
                    SignedClass::Minus { rank: rp.clone(), degree: dq - dp }
                }
            }
        },
    }
}

impl fmt::Display for ClassPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl fmt::Debug for ClassPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ClassPair {
    type Err = ClopenError;

    /// Parses `((r,d),(r',d'))`, with `E` for an empty component.
    fn from_str(s: &str) -> Result<Self, ClopenError> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| ClopenError::Literal(format!("bad pair literal: {s}")))?
            .trim();
        // Split at the top-level comma.
        let mut depth = 0usize;
        let mut split = None;
        for (i, ch) in inner.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    split = Some(i);
                    break;
                }
                _ => {}
            }
        }
        let i = split.ok_or_else(|| ClopenError::Literal(format!("bad pair literal: {s}")))?;
        Ok(ClassPair { p: inner[..i].parse()?, q: inner[i + 1..].parse()? })
    }
}

impl fmt::Display for SignedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignedClass::Zero => write!(f, "0"),
            SignedClass::Plus { rank, degree } => write!(f, "+({rank},{degree})"),
            SignedClass::Minus { rank, degree } => write!(f, "-({rank},{degree})"),
        }
    }
}
