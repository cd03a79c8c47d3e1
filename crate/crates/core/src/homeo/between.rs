//! Explicit witnesses for class equality and order-type equality of
//! clopen sets, as finite charts.

use crate::clopen::ClopenSet;
use crate::homeo::chart::{interval_type, Chart, Interval, Piece};
use crate::homeo::HomeoError;
use crate::ordinal::{Nat, Ordinal};
use std::collections::BTreeMap;
use std::collections::VecDeque;

fn bucket_by_grade(s: &ClopenSet) -> BTreeMap<Nat, Vec<Interval>> {
    let mut out: BTreeMap<Nat, Vec<Interval>> = BTreeMap::new();
    for m in s.monomials() {
        out.entry(m.grade).or_default().push((m.lo, m.hi));
    }
    out
}

/// Splits `k` pieces of grade `g` off the low end of the first top-grade
/// interval.  The donor keeps its grade because the carved width is
/// below `w^top`.
fn carve(buckets: &mut BTreeMap<Nat, Vec<Interval>>, top: &Nat, g: &Nat, k: usize) {
    let step = Ordinal::omega_pow(g.clone());
    let donor = &mut buckets.get_mut(top).expect("top grade present")[0];
    let mut cur = donor.0.clone();
    let mut carved = Vec::with_capacity(k);
    for _ in 0..k {
        let next = cur.add(&step);
        carved.push((cur.clone(), next.clone()));
        cur = next;
    }
    donor.0 = cur;
    buckets.entry(g.clone()).or_default().extend(carved);
}

/// A finite chart carrying `b` onto `c`, which exists exactly when the
/// two sets lie in the same homeomorphism class.  Both sets must be
/// bounded in their space.
///
/// The construction refines both sets into monomial pieces, balances the
/// piece counts below the top grade by carving from a top-grade piece,
/// and pairs pieces grade by grade in position order.
pub fn build_homeo_between(b: &ClopenSet, c: &ClopenSet) -> Result<Chart, HomeoError> {
    let cb = b.homeo_class();
    let cc = c.homeo_class();
    if cb != cc {
        return Err(HomeoError::ClassMismatch(cb.to_string(), cc.to_string()));
    }
    if b.is_empty() {
        return Ok(Chart::empty());
    }
    let mut gb = bucket_by_grade(b);
    let mut gc = bucket_by_grade(c);
    let top = gb.keys().next_back().cloned().expect("nonempty set");
    debug_assert_eq!(gc.keys().next_back(), Some(&top), "equal classes share top grade");
    let grades: Vec<Nat> = gb
        .keys()
        .chain(gc.keys())
        .filter(|g| **g != top)
        .cloned()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    for g in grades {
        let nb = gb.get(&g).map_or(0, Vec::len);
        let nc = gc.get(&g).map_or(0, Vec::len);
        if nb < nc {
            carve(&mut gb, &top, &g, nc - nb);
        } else if nc < nb {
            carve(&mut gc, &top, &g, nb - nc);
        }
    }
    let mut pieces = Vec::new();
    for (g, mut vb) in gb {
        let mut vc = gc.remove(&g).expect("balanced grades");
        debug_assert_eq!(vb.len(), vc.len());
        vb.sort_by(|a, b| a.0.cmp(&b.0));
        vc.sort_by(|a, b| a.0.cmp(&b.0));
        for (s, d) in vb.into_iter().zip(vc) {
            pieces.push(Piece::new(s, d)?);
        }
    }
    Chart::new(pieces)
}

/// The unique order isomorphism from `b` onto `c` as a finite chart,
/// defined when the two sets have equal order type.
///
/// Walks both interval lists in position order, pairing heads of equal
/// closed type and splitting the longer head otherwise.
pub fn order_iso_chart(b: &ClopenSet, c: &ClopenSet) -> Result<Chart, HomeoError> {
    if b.order_type() != c.order_type() {
        return Err(HomeoError::Domain(format!(
            "order types differ: {} vs {}",
            b.order_type(),
            c.order_type()
        )));
    }
    let mut bs: VecDeque<Interval> = b.intervals().iter().cloned().collect();
    let mut cs: VecDeque<Interval> = c.intervals().iter().cloned().collect();
    let mut pieces = Vec::new();
    while let (Some(bh), Some(ch)) = (bs.front().cloned(), cs.front().cloned()) {
        let tb = interval_type(&bh);
        let tc = interval_type(&ch);
        match tb.cmp(&tc) {
            std::cmp::Ordering::Equal => {
                pieces.push(Piece::new(bh, ch)?);
                bs.pop_front();
                cs.pop_front();
            }
            std::cmp::Ordering::Less => {
                // Pair all of bh with the head chunk of ch of type tb.
                let x = ch.0.succ().add(&tb.pred()?);
                pieces.push(Piece::new(bh, (ch.0.clone(), x.clone()))?);
                bs.pop_front();
                cs.front_mut().expect("nonempty").0 = x;
            }
            std::cmp::Ordering::Greater => {
                let x = bh.0.succ().add(&tc.pred()?);
                pieces.push(Piece::new((bh.0.clone(), x.clone()), ch)?);
                cs.pop_front();
                bs.front_mut().expect("nonempty").0 = x;
            }
        }
    }
    if !bs.is_empty() || !cs.is_empty() {
        return Err(HomeoError::Invariant(
            "order isomorphism left an unmatched residue despite equal types".into(),
        ));
    }
    Chart::new(pieces)
}
