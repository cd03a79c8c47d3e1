//! The boolean algebra of clopen subsets of an ordinal interval `[1, delta]`.
//!
//! Every clopen subset of such a space is a finite union of half-open
//! intervals `(a, b]`; [`ClopenSet`] keeps those intervals merged and
//! sorted so that set equality is syntactic.  On top of the boolean
//! operations the module provides order types, the Cantor--Bendixson
//! derivative (as a coordinate change `x = w*y`), the rank/degree
//! homeomorphism invariant, and the ideal tower of the algebra.

use crate::ordinal::{Nat, Ordinal, OrdinalError, ParseError};
use num_traits::Zero;
use std::fmt;
use std::str::FromStr;

/// The ambient space `[1, delta]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Space {
    delta: Ordinal,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClopenError {
    #[error("ambient endpoint must be at least 1")]
    EmptyAmbient,
    #[error("interval ({lo}, {hi}] is malformed or exceeds delta = {delta}")]
    BadInterval { lo: String, hi: String, delta: String },
    #[error("operands live in different ambient spaces")]
    SpaceMismatch,
    #[error("delta = {0} is not of the form w^a * n")]
    NotMonomial(String),
    #[error("window capacity {capacity} cannot hold a set of class {class}")]
    InsufficientCapacity { capacity: String, class: String },
    #[error("window exceeds the ambient space")]
    WindowOutOfRange,
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("clopen literal: {0}")]
    Literal(String),
}

impl Space {
    pub fn new(delta: Ordinal) -> Result<Self, ClopenError> {
        if delta.is_zero() {
            return Err(ClopenError::EmptyAmbient);
        }
        Ok(Space { delta })
    }

    pub fn delta(&self) -> &Ordinal {
        &self.delta
    }

    /// The full set `(0, delta]`.
    pub fn top(&self) -> ClopenSet {
        ClopenSet {
            space: self.clone(),
            intervals: vec![(Ordinal::zero(), self.delta.clone())],
        }
    }

    pub fn empty(&self) -> ClopenSet {
        ClopenSet { space: self.clone(), intervals: Vec::new() }
    }

    /// Rank and degree of the clopen algebra, defined when
    /// `delta = w^a * n`.
    pub fn algebra_rank_degree(&self) -> Result<(Nat, Nat), ClopenError> {
        if self.delta.terms().len() != 1 {
            return Err(ClopenError::NotMonomial(self.delta.to_string()));
        }
        let (e, c) = self.delta.leading_term()?;
        Ok((e, c))
    }
}

/// A clopen subset of `[1, delta]`: a merged, sorted union of intervals
/// `(lo, hi]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClopenSet {
    space: Space,
    intervals: Vec<(Ordinal, Ordinal)>,
}

/// The homeomorphism invariant of a compact countable space: empty, or a
/// Cantor--Bendixson rank together with the finite degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum HomeoClass {
    Empty,
    Class { rank: Nat, degree: Nat },
}

impl HomeoClass {
    pub fn new<R: Into<Nat>, D: Into<Nat>>(rank: R, degree: D) -> Self {
        let degree: Nat = degree.into();
        assert!(!degree.is_zero(), "degree must be positive");
        HomeoClass::Class { rank: rank.into(), degree }
    }

    pub fn rank(&self) -> Option<&Nat> {
        match self {
            HomeoClass::Empty => None,
            HomeoClass::Class { rank, .. } => Some(rank),
        }
    }
}

/// Atom count of a clopen set: the atoms of the algebra are the
/// singletons of isolated points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Atoms {
    Finite(Nat),
    Infinite,
}

/// A monomial piece of a clopen set: an interval of closed order type
/// `w^grade + 1` (grade >= 1) or a singleton (grade 0).
#[derive(Clone, Debug)]
pub struct MonoPiece {
    pub lo: Ordinal,
    pub hi: Ordinal,
    pub grade: Nat,
}

impl ClopenSet {
    /// Canonicalizes a raw interval list: validates bounds, sorts, and
    /// merges overlapping or adjacent intervals.
    pub fn make(space: &Space, raw: Vec<(Ordinal, Ordinal)>) -> Result<Self, ClopenError> {
        for (lo, hi) in &raw {
            if lo >= hi || hi > &space.delta {
                return Err(ClopenError::BadInterval {
                    lo: lo.to_string(),
                    hi: hi.to_string(),
                    delta: space.delta.to_string(),
                });
            }
        }
        let mut ivs = raw;
        ivs.sort();
        let mut merged: Vec<(Ordinal, Ordinal)> = Vec::with_capacity(ivs.len());
        for (lo, hi) in ivs {
            match merged.last_mut() {
                Some((_, phi)) if *phi >= lo => {
                    if hi > *phi {
                        *phi = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        Ok(ClopenSet { space: space.clone(), intervals: merged })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn intervals(&self) -> &[(Ordinal, Ordinal)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Empty, or the last interval ends strictly below delta.
    pub fn bounded(&self) -> bool {
        match self.intervals.last() {
            None => true,
            Some((_, hi)) => hi < &self.space.delta,
        }
    }

    /// Least upper bound of the set (0 when empty).
    pub fn sup(&self) -> Ordinal {
        self.intervals.last().map(|(_, hi)| hi.clone()).unwrap_or_else(Ordinal::zero)
    }

    pub fn contains(&self, x: &Ordinal) -> bool {
        self.intervals.iter().any(|(lo, hi)| lo < x && x <= hi)
    }

    fn check_space(&self, rhs: &ClopenSet) {
        assert_eq!(self.space, rhs.space, "clopen sets from different ambient spaces");
    }

    pub fn union(&self, rhs: &ClopenSet) -> ClopenSet {
        self.check_space(rhs);
        let mut ivs = self.intervals.clone();
        ivs.extend(rhs.intervals.iter().cloned());
        ClopenSet::make(&self.space, ivs).expect("canonical inputs")
    }

    pub fn complement(&self) -> ClopenSet {
        let mut ivs = Vec::new();
        let mut cur = Ordinal::zero();
        for (lo, hi) in &self.intervals {
            if &cur < lo {
                ivs.push((cur.clone(), lo.clone()));
            }
            cur = hi.clone();
        }
        if cur < self.space.delta {
            ivs.push((cur, self.space.delta.clone()));
        }
        ClopenSet { space: self.space.clone(), intervals: ivs }
    }

    pub fn intersect(&self, rhs: &ClopenSet) -> ClopenSet {
        self.check_space(rhs);
        let mut ivs = Vec::new();
        for (alo, ahi) in &self.intervals {
            for (blo, bhi) in &rhs.intervals {
                let lo = alo.max(blo);
                let hi = ahi.min(bhi);
                if lo < hi {
                    ivs.push((lo.clone(), hi.clone()));
                }
            }
        }
        ClopenSet { space: self.space.clone(), intervals: ivs }
    }

    pub fn difference(&self, rhs: &ClopenSet) -> ClopenSet {
        self.intersect(&rhs.complement())
    }

    pub fn is_subset(&self, rhs: &ClopenSet) -> bool {
        self.difference(rhs).is_empty()
    }

    /// Order type: the sum, over intervals in increasing order, of the
    /// closed type `left_sub(lo+1, hi) + 1`.
    pub fn order_type(&self) -> Ordinal {
        let mut acc = Ordinal::zero();
        for (lo, hi) in &self.intervals {
            let t = lo.succ().left_sub(hi).expect("lo < hi");
            acc = acc.add(&t.succ());
        }
        acc
    }

    /// The Cantor--Bendixson derivative in the coordinate system `x = w*y`:
    /// an interval `(a, b]` with `a = w*p + m`, `b = w*q + n` contributes
    /// `(p, q]` when `q > p`.  The result lives over the derived space
    /// with endpoint `divmod_omega(delta).q`.
    pub fn cb_derivative(&self) -> ClopenSet {
        let (dq, _) = self.space.delta.divmod_omega();
        let delta = if dq.is_zero() { Ordinal::from_nat(1u64) } else { dq };
        let space = Space::new(delta).expect("nonzero");
        let mut ivs = Vec::new();
        for (lo, hi) in &self.intervals {
            let (p, _) = lo.divmod_omega();
            let (q, _) = hi.divmod_omega();
            if q > p && q <= *space.delta() {
                ivs.push((p, q));
            }
        }
        ClopenSet::make(&space, ivs).expect("derived intervals are valid")
    }

    /// Leading-term homeomorphism classification: the leading CNF term of
    /// the order type.
    pub fn homeo_class(&self) -> HomeoClass {
        if self.is_empty() {
            return HomeoClass::Empty;
        }
        let (rank, degree) = self.order_type().leading_term().expect("nonempty");
        HomeoClass::Class { rank, degree }
    }

    /// Classification by iterating the derivative: rank is the number of
    /// derivatives taken before reaching a nonempty set whose derivative
    /// is empty, degree the point count of that last set.
    ///
    /// Independent of [`ClopenSet::homeo_class`]; the two are
    /// cross-checked by the classifier-oracle campaign.
    pub fn homeo_class_by_derivatives(&self) -> HomeoClass {
        if self.is_empty() {
            return HomeoClass::Empty;
        }
        let mut rank = Nat::zero();
        let mut cur = self.clone();
        loop {
            let next = cur.cb_derivative();
            if next.is_empty() {
                let t = cur.order_type();
                let degree = t.as_nat().expect("last nonempty derivative must be finite");
                return HomeoClass::Class { rank, degree };
            }
            rank += 1u32;
            cur = next;
        }
    }

    /// Membership in the ideal `I_beta`: the beta-fold derivative is empty,
    /// i.e. the rank of the set is below beta.
    pub fn in_ideal(&self, beta: u64) -> bool {
        match self.homeo_class() {
            HomeoClass::Empty => true,
            HomeoClass::Class { rank, .. } => rank < Nat::from(beta),
        }
    }

    /// The beta-fold derivative, a boolean-algebra homomorphism onto the
    /// clopen algebra of the derived space with kernel `I_beta`.
    pub fn quotient_project(&self, beta: u64) -> ClopenSet {
        let mut cur = self.clone();
        for _ in 0..beta {
            cur = cur.cb_derivative();
        }
        cur
    }

    /// Number of isolated-point singletons contained in the set.
    pub fn num_atoms(&self) -> Atoms {
        let mut total = Nat::zero();
        for (lo, hi) in &self.intervals {
            let t = lo.succ().left_sub(hi).expect("lo < hi").succ();
            match t.as_nat() {
                Some(n) => total += n,
                None => return Atoms::Infinite,
            }
        }
        Atoms::Finite(total)
    }

    /// Splits every interval into monomial pieces: intervals of closed
    /// type `w^e + 1` and singletons, in increasing position order.
    pub fn monomials(&self) -> Vec<MonoPiece> {
        let mut out = Vec::new();
        for (lo, hi) in &self.intervals {
            let tau = lo.succ().left_sub(hi).expect("lo < hi").succ();
            let mut cur = lo.clone();
            let mut finite = Nat::zero();
            let mut has_limit = false;
            for (e, c) in tau.terms() {
                if e.is_zero() {
                    finite = c.clone();
                    continue;
                }
                has_limit = true;
                let step = Ordinal::omega_pow(e.clone());
                let mut left = c.clone();
                while !left.is_zero() {
                    let next = cur.add(&step);
                    out.push(MonoPiece { lo: cur.clone(), hi: next.clone(), grade: e.clone() });
                    cur = next;
                    left -= 1u32;
                }
            }
            let singles = if has_limit { finite - 1u32 } else { finite };
            let mut left = singles;
            while !left.is_zero() {
                let next = cur.succ();
                out.push(MonoPiece { lo: cur.clone(), hi: next.clone(), grade: Nat::zero() });
                cur = next;
                left -= 1u32;
            }
            debug_assert_eq!(&cur, hi, "monomial cuts must exhaust the interval");
        }
        out
    }

    /// Canonical representative of a class inside a window: the interval
    /// `(base, base + w^rank * degree]`.
    pub fn realize(
        space: &Space,
        class: &HomeoClass,
        base: &Ordinal,
        capacity: &Ordinal,
    ) -> Result<ClopenSet, ClopenError> {
        let HomeoClass::Class { rank, degree } = class else {
            return Ok(space.empty());
        };
        let width = Ordinal::omega_pow_times(rank.clone(), degree.clone());
        if &width > capacity {
            return Err(ClopenError::InsufficientCapacity {
                capacity: capacity.to_string(),
                class: class.to_string(),
            });
        }
        let hi = base.add(&width);
        if hi > *space.delta() {
            return Err(ClopenError::WindowOutOfRange);
        }
        ClopenSet::make(space, vec![(base.clone(), hi)])
    }
}

impl fmt::Display for HomeoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomeoClass::Empty => write!(f, "E"),
            HomeoClass::Class { rank, degree } => write!(f, "({rank},{degree})"),
        }
    }
}

impl FromStr for HomeoClass {
    type Err = ClopenError;

    fn from_str(s: &str) -> Result<Self, ClopenError> {
        let s = s.trim();
        if s == "E" {
            return Ok(HomeoClass::Empty);
        }
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| ClopenError::Literal(format!("bad class literal: {s}")))?;
        let (r, d) = inner
            .split_once(',')
            .ok_or_else(|| ClopenError::Literal(format!("bad class literal: {s}")))?;
        let rank = Nat::from_str(r.trim())
            .map_err(|_| ClopenError::Literal(format!("bad rank in class literal: {s}")))?;
        let degree = Nat::from_str(d.trim())
            .map_err(|_| ClopenError::Literal(format!("bad degree in class literal: {s}")))?;
        if degree.is_zero() {
            return Err(ClopenError::Literal("class degree must be positive".into()));
        }
        Ok(HomeoClass::Class { rank, degree })
    }
}

impl fmt::Display for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (lo, hi)) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({lo}, {hi}]")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a clopen literal `{ (a, b], ... }` (or `{}`) over the given
/// ambient space.
pub fn parse_clopen(space: &Space, text: &str) -> Result<ClopenSet, ClopenError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| ClopenError::Literal("expected { ... }".into()))?
        .trim();
    if inner.is_empty() {
        return Ok(space.empty());
    }
    let mut ivs = Vec::new();
    let mut rest = inner;
    loop {
        let rest2 = rest
            .trim_start()
            .strip_prefix('(')
            .ok_or_else(|| ClopenError::Literal("expected ( to open an interval".into()))?;
        let (lo_text, rest3) = rest2
            .split_once(',')
            .ok_or_else(|| ClopenError::Literal("expected , inside an interval".into()))?;
        let (hi_text, rest4) = rest3
            .split_once(']')
            .ok_or_else(|| ClopenError::Literal("expected ] to close an interval".into()))?;
        let lo: Ordinal = lo_text.trim().parse()?;
        let hi: Ordinal = hi_text.trim().parse()?;
        ivs.push((lo, hi));
        let rest5 = rest4.trim_start();
        if rest5.is_empty() {
            break;
        }
        rest = rest5
            .strip_prefix(',')
            .ok_or_else(|| ClopenError::Literal("expected , between intervals".into()))?;
    }
    ClopenSet::make(space, ivs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn sp(delta: &str) -> Space {
        Space::new(o(delta)).unwrap()
    }

    fn cs(space: &Space, ivs: &[(&str, &str)]) -> ClopenSet {
        ClopenSet::make(space, ivs.iter().map(|(a, b)| (o(a), o(b))).collect()).unwrap()
    }

    #[test]
    fn make_and_boolean_ops() {
        let s = sp("w*2");
        let a = cs(&s, &[("0", "w")]);
        let b = cs(&s, &[("w", "w*2")]);
        assert_eq!(a.union(&b), s.top());
        assert_eq!(a.complement(), b);
        let c = cs(&s, &[("0", "w+5")]);
        assert_eq!(c.intersect(&b), cs(&s, &[("w", "w+5")]));
        assert!(ClopenSet::make(&s, vec![(o("w"), o("w"))]).is_err());
        assert!(ClopenSet::make(&s, vec![(o("0"), o("w*3"))]).is_err());
    }

    #[test]
    fn order_type_examples() {
        let s = sp("w^2");
        assert_eq!(cs(&s, &[("0", "w")]).order_type(), o("w+1"));
        assert_eq!(cs(&s, &[("0", "3"), ("w", "w*2")]).order_type(), o("w+1"));
        assert_eq!(cs(&s, &[("0", "5")]).order_type(), o("5"));
        assert_eq!(s.empty().order_type(), Ordinal::zero());
    }

    #[test]
    fn derivative_examples() {
        let s = sp("w^2");
        let d = cs(&s, &[("0", "w^2")]).cb_derivative();
        assert_eq!(d.space().delta(), &o("w"));
        assert_eq!(d.intervals(), &[(o("0"), o("w"))]);
        assert!(cs(&s, &[("0", "5")]).cb_derivative().is_empty());
        let d2 = cs(&s, &[("0", "3"), ("w", "w*2")]).cb_derivative();
        assert_eq!(d2.intervals(), &[(o("1"), o("2"))]);
    }

    #[test]
    fn class_examples() {
        let s = sp("w^3");
        assert_eq!(cs(&s, &[("0", "w^2*3+4")]).homeo_class(), HomeoClass::new(2u64, 3u64));
        assert_eq!(cs(&s, &[("0", "5")]).homeo_class(), HomeoClass::new(0u64, 5u64));
        assert_eq!(s.empty().homeo_class(), HomeoClass::Empty);
        assert_eq!(
            cs(&s, &[("0", "w^2*3+4")]).homeo_class_by_derivatives(),
            HomeoClass::new(2u64, 3u64)
        );
    }

    #[test]
    fn ideal_and_quotient() {
        let s = sp("w^2");
        assert!(cs(&s, &[("0", "5")]).in_ideal(1));
        assert!(!cs(&s, &[("0", "w")]).in_ideal(1));
        let p = cs(&s, &[("0", "w*3+2")]).quotient_project(1);
        assert_eq!(p.intervals(), &[(o("0"), o("3"))]);
        assert_eq!(p.space().delta(), &o("w"));
    }

    #[test]
    fn rank_degree_and_atoms() {
        assert_eq!(
            sp("w^3*2").algebra_rank_degree().unwrap(),
            (Nat::from(3u64), Nat::from(2u64))
        );
        assert!(sp("w^3*2+1").algebra_rank_degree().is_err());
        let s = sp("w^2");
        assert_eq!(cs(&s, &[("0", "5")]).num_atoms(), Atoms::Finite(Nat::from(5u64)));
        assert_eq!(cs(&s, &[("0", "w")]).num_atoms(), Atoms::Infinite);
    }

    #[test]
    fn realize_examples() {
        let s = sp("w^2");
        let r = ClopenSet::realize(&s, &HomeoClass::new(1u64, 2u64), &o("w*4"), &o("w^2")).unwrap();
        assert_eq!(r.intervals(), &[(o("w*4"), o("w*6"))]);
        assert_eq!(r.homeo_class(), HomeoClass::new(1u64, 2u64));
        let e = ClopenSet::realize(&s, &HomeoClass::Empty, &o("0"), &o("1")).unwrap();
        assert!(e.is_empty());
        let p = ClopenSet::realize(&s, &HomeoClass::new(0u64, 3u64), &o("10"), &o("w")).unwrap();
        assert_eq!(p.intervals(), &[(o("10"), o("13"))]);
        assert!(ClopenSet::realize(&s, &HomeoClass::new(1u64, 1u64), &o("0"), &o("5")).is_err());
    }

    #[test]
    fn monomial_refinement() {
        let s = sp("w^3");
        let p = cs(&s, &[("0", "w^2 + w + 2")]);
        let m = p.monomials();
        let grades: Vec<u64> = m.iter().map(|x| u64::try_from(&x.grade).unwrap()).collect();
        // The closed type is w^2 + w + 3, so two points stay singletons.
        assert_eq!(grades, vec![2, 1, 0, 0]);
        assert_eq!(m.last().unwrap().hi, o("w^2 + w + 2"));
        // A singleton-only interval refines to singletons.
        let q = cs(&s, &[("w", "w+3")]);
        assert_eq!(q.monomials().len(), 3);
    }

    #[test]
    fn bounded_and_literals() {
        let s = sp("w*2");
        assert!(cs(&s, &[("0", "w")]).bounded());
        assert!(!s.top().bounded());
        assert!(s.empty().bounded());
        let p = parse_clopen(&s, "{(0, w], (w+1, w*2]}").unwrap();
        assert_eq!(p.intervals().len(), 2);
        assert_eq!(parse_clopen(&s, "{}").unwrap(), s.empty());
        assert!(parse_clopen(&s, "{(w, 0]}").is_err());
        assert!(parse_clopen(&s, "(0, w]").is_err());
    }

    #[test]
    fn class_text_roundtrip() {
        let c: HomeoClass = "(2,3)".parse().unwrap();
        assert_eq!(c, HomeoClass::new(2u64, 3u64));
        assert_eq!(c.to_string(), "(2,3)");
        assert_eq!("E".parse::<HomeoClass>().unwrap(), HomeoClass::Empty);
        assert!("(2,0)".parse::<HomeoClass>().is_err());
    }
}
