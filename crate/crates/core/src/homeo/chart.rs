//! Finite charts: piecewise canonical order isomorphisms between
//! half-open ordinal intervals.

use crate::homeo::HomeoError;
use crate::ordinal::Ordinal;
use std::fmt;

/// A half-open interval `(lo, hi]`.
pub type Interval = (Ordinal, Ordinal);

/// Closed order type of `(lo, hi]`, i.e. the type of `[lo+1, hi]`.
pub fn interval_type(iv: &Interval) -> Ordinal {
    iv.0.succ().left_sub(&iv.1).expect("lo < hi").succ()
}

pub fn intersect(a: &Interval, b: &Interval) -> Option<Interval> {
    let lo = (&a.0).max(&b.0).clone();
    let hi = (&a.1).min(&b.1).clone();
    if lo < hi {
        Some((lo, hi))
    } else {
        None
    }
}

/// One piece of a chart: the unique order isomorphism from `src` onto
/// `dst`, which requires the two intervals to have equal order type.
#[derive(Clone, PartialEq, Eq)]
pub struct Piece {
    pub src: Interval,
    pub dst: Interval,
}

impl Piece {
    pub fn new(src: Interval, dst: Interval) -> Result<Self, HomeoError> {
        if src.0 >= src.1 || dst.0 >= dst.1 {
            return Err(HomeoError::BadChart(format!(
                "malformed piece interval ({}, {}] -> ({}, {}]",
                src.0, src.1, dst.0, dst.1
            )));
        }
        if interval_type(&src) != interval_type(&dst) {
            return Err(HomeoError::BadChart(format!(
                "piece ({}, {}] -> ({}, {}] has mismatched order types",
                src.0, src.1, dst.0, dst.1
            )));
        }
        Ok(Piece { src, dst })
    }

    pub fn identity(iv: Interval) -> Self {
        Piece { src: iv.clone(), dst: iv }
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst
    }

    /// Image of `x` under the piece, when `x` is in `src`.
    pub fn apply(&self, x: &Ordinal) -> Option<Ordinal> {
        if &self.src.0 < x && x <= &self.src.1 {
            let t = self.src.0.succ().left_sub(x).expect("in range");
            Some(self.dst.0.succ().add(&t))
        } else {
            None
        }
    }

    pub fn unapply(&self, y: &Ordinal) -> Option<Ordinal> {
        self.inverse().apply(y)
    }

    pub fn inverse(&self) -> Piece {
        Piece { src: self.dst.clone(), dst: self.src.clone() }
    }

    /// Restriction to a sub-interval of the source; the image of a
    /// sub-interval is again an interval, mapped canonically.
    pub fn restrict_src(&self, sub: &Interval) -> Piece {
        debug_assert!(sub.0 >= self.src.0 && sub.1 <= self.src.1 && sub.0 < sub.1);
        let hi = self.apply(&sub.1).expect("sub within src");
        let lo = if sub.0 == self.src.0 {
            self.dst.0.clone()
        } else {
            self.apply(&sub.0).expect("sub within src")
        };
        Piece { src: sub.clone(), dst: (lo, hi) }
    }

    pub fn restrict_dst(&self, sub: &Interval) -> Piece {
        self.inverse().restrict_src(sub).inverse()
    }
}

impl fmt::Debug for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}] -> ({}, {}]",
            self.src.0, self.src.1, self.dst.0, self.dst.1
        )
    }
}

/// A finite set of pieces with pairwise disjoint sources and pairwise
/// disjoint targets, kept sorted by source.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chart {
    pieces: Vec<Piece>,
}

impl Chart {
    pub fn new(mut pieces: Vec<Piece>) -> Result<Self, HomeoError> {
        pieces.sort_by(|a, b| a.src.0.cmp(&b.src.0));
        for w in pieces.windows(2) {
            if w[0].src.1 > w[1].src.0 {
                return Err(HomeoError::BadChart(format!(
                    "overlapping sources {:?} and {:?}",
                    w[0], w[1]
                )));
            }
        }
        let mut by_dst: Vec<&Piece> = pieces.iter().collect();
        by_dst.sort_by(|a, b| a.dst.0.cmp(&b.dst.0));
        for w in by_dst.windows(2) {
            if w[0].dst.1 > w[1].dst.0 {
                return Err(HomeoError::BadChart(format!(
                    "overlapping targets {:?} and {:?}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Chart { pieces })
    }

    pub fn empty() -> Self {
        Chart { pieces: Vec::new() }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn apply(&self, x: &Ordinal) -> Option<Ordinal> {
        self.pieces.iter().find_map(|p| p.apply(x))
    }

    pub fn unapply(&self, y: &Ordinal) -> Option<Ordinal> {
        self.pieces.iter().find_map(|p| p.unapply(y))
    }

    pub fn srcs(&self) -> Vec<Interval> {
        self.pieces.iter().map(|p| p.src.clone()).collect()
    }

    pub fn dsts(&self) -> Vec<Interval> {
        self.pieces.iter().map(|p| p.dst.clone()).collect()
    }

    pub fn inverse(&self) -> Result<Chart, HomeoError> {
        Chart::new(self.pieces.iter().map(Piece::inverse).collect())
    }
}
