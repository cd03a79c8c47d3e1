//! Conjugating a map with single-cycle block action so that its
//! conjugate attains prescribed signature targets.
//!
//! Given `g` with `pi(g) = sigma` a single infinite cycle and a target
//! function `f`, the pair sequence `(R_i, S_i)` accumulates the
//! difference between achieved and desired signatures along the orbit
//! of the base index.  A blockwise window ladder then realizes a
//! conjugator `h` with `pi(h) = id` and `signature(h, i) ~ -(R_i, S_i)`,
//! which forces `signature(h^-1 g h, i) ~ f(i)` through the cocycle
//! identity.

use crate::clopen::{ClopenSet, HomeoClass};
use crate::homeo::{
    order_iso_chart, BlockSystem, Chart, Homeo, HomeoError, Interval, Perm, Piece, Schematic,
};
use crate::ordinal::{Nat, Ordinal};
use crate::sigcalc::{sim, ClassPair};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

/// A computable signature target function on block indices.
#[derive(Clone)]
pub enum TargetFn {
    /// Trivial outside the listed indices.
    EventuallyTrivial(BTreeMap<u64, ClassPair>),
    /// `f(i)` cycles through the listed values by `(i - 1) mod len`.
    Periodic(Vec<ClassPair>),
    Dyn(Rc<dyn Fn(u64) -> ClassPair>),
}

impl TargetFn {
    pub fn trivial() -> Self {
        TargetFn::EventuallyTrivial(BTreeMap::new())
    }

    pub fn at(&self, i: u64) -> ClassPair {
        match self {
            TargetFn::EventuallyTrivial(m) => {
                m.get(&i).cloned().unwrap_or_else(ClassPair::zero)
            }
            TargetFn::Periodic(v) => v[((i - 1) % v.len() as u64) as usize].clone(),
            TargetFn::Dyn(f) => f(i),
        }
    }
}

const ORBIT_STEP_CAP: u64 = 1 << 22;

/// The accumulated pair sequence along the orbit of the base index 1:
/// the base pair is trivial and
/// `R(sigma i) - R(i) = -signature(g, i) + f(i)`.
pub struct RSSequence {
    g: Homeo,
    f: TargetFn,
    sigma: Perm,
    memo: RefCell<HashMap<u64, ClassPair>>,
    fwd: RefCell<(u64, ClassPair)>,
    bwd: RefCell<(u64, ClassPair)>,
}

impl RSSequence {
    pub fn new(g: &Homeo, f: TargetFn, sigma: &Perm) -> Result<Self, HomeoError> {
        if !sigma.single_cycle_certified() {
            return Err(HomeoError::Domain(
                "pair sequence requires a certified single infinite cycle".into(),
            ));
        }
        Ok(RSSequence {
            g: g.clone(),
            f,
            sigma: sigma.clone(),
            memo: RefCell::new(HashMap::from([(1, ClassPair::zero())])),
            fwd: RefCell::new((1, ClassPair::zero())),
            bwd: RefCell::new((1, ClassPair::zero())),
        })
    }

    pub fn target(&self, i: u64) -> ClassPair {
        self.f.at(i)
    }

    fn sig(&self, j: u64) -> Result<ClassPair, HomeoError> {
        Ok(self.g.signature(j)?.pair)
    }

    /// `(R_i, S_i)`, walking the two-sided orbit as far as needed.
    pub fn at(&self, i: u64) -> Result<ClassPair, HomeoError> {
        if let Some(p) = self.memo.borrow().get(&i) {
            return Ok(p.clone());
        }
        for _ in 0..ORBIT_STEP_CAP {
            let (j, rj) = self.fwd.borrow().clone();
            let nj = self.sigma.apply(j);
            let rn = rj.sub(&self.sig(j)?).add(&self.f.at(j));
            self.memo.borrow_mut().insert(nj, rn.clone());
            *self.fwd.borrow_mut() = (nj, rn.clone());
            if nj == i {
                return Ok(rn);
            }
            let (j, rj) = self.bwd.borrow().clone();
            let pj = self.sigma.inverse_apply(j);
            let rp = rj.add(&self.sig(pj)?).sub(&self.f.at(pj));
            self.memo.borrow_mut().insert(pj, rp.clone());
            *self.bwd.borrow_mut() = (pj, rp.clone());
            if pj == i {
                return Ok(rp);
            }
        }
        Err(HomeoError::Invariant(format!(
            "index {i} not reached on the orbit within the step cap"
        )))
    }

    /// Verifies the defining recurrence at `i` in exchange form:
    /// `R(sigma i) + (-R(i)) ~ (-signature(g, i)) + f(i)`.
    pub fn check_recurrence(&self, i: u64) -> Result<bool, HomeoError> {
        let ri = self.at(i)?;
        let rsi = self.at(self.sigma.apply(i))?;
        let lhs = rsi.add(&ri.neg());
        let rhs = self.sig(i)?.neg().add(&self.f.at(i));
        Ok(sim(&lhs, &rhs))
    }
}

fn class_width(c: &HomeoClass) -> Option<Ordinal> {
    match c {
        HomeoClass::Empty => None,
        HomeoClass::Class { rank, degree } => {
            Some(Ordinal::omega_pow_times(rank.clone(), degree.clone()))
        }
    }
}

fn check_realizable(alpha: u64, pair: &ClassPair, what: &str) -> Result<(), HomeoError> {
    for c in [&pair.p, &pair.q] {
        if let Some(r) = c.rank() {
            if *r >= Nat::from(alpha) {
                return Err(HomeoError::Domain(format!(
                    "{what} component {c} has rank not below alpha = {alpha}"
                )));
            }
        }
    }
    Ok(())
}

/// Canonical window layout for one block of the ladder.  Indexing is
/// 1-based by orbit-walk position `j`; `None` marks an empty class.
struct Windows {
    /// `B_{i j}` for `j <= i`: sources of class `R_j`-first-component.
    b: Vec<Option<Interval>>,
    /// `C_{i j}` for `j <= i-1`: sources of class `R_j`-second-component.
    c: Vec<Option<Interval>>,
    /// `B'_{i j}` for `j <= i-1`: targets, received from block `i-1`.
    bp: Vec<Option<Interval>>,
    /// `C'_{i j}` for `j <= i`: targets, received from block `i+1`.
    cp: Vec<Option<Interval>>,
}

/// The ladder: block `i` sends its `B`-windows up to block `i+1` and its
/// `C`-windows down to block `i-1`, receives symmetrically, and closes
/// the remainder with the order isomorphism onto the remainder.  Every
/// window is placed at a deterministic cursor offset from the block
/// base, so the whole map is replayable.
struct LadderMap {
    rs: Rc<RSSequence>,
    layouts: RefCell<HashMap<u64, Rc<Windows>>>,
}

impl LadderMap {
    fn layout(&self, sys: &BlockSystem, i: u64) -> Rc<Windows> {
        if let Some(w) = self.layouts.borrow().get(&i) {
            return w.clone();
        }
        let (base, _) = sys.block(i);
        let mut cursor = base;
        let mut alloc = |class: &HomeoClass| -> Option<Interval> {
            let width = class_width(class)?;
            let hi = cursor.add(&width);
            let iv = (cursor.clone(), hi.clone());
            cursor = hi;
            Some(iv)
        };
        let pair_at = |j: u64| -> ClassPair {
            let p = self.rs.at(j).expect("orbit walk reaches every index");
            check_realizable(sys.alpha(), &p, "accumulated pair")
                .expect("pair components stay below alpha by construction");
            p
        };
        let pairs: Vec<ClassPair> = (1..=i).map(pair_at).collect();
        let b = (1..=i).map(|j| alloc(&pairs[j as usize - 1].p)).collect();
        let c = (1..i).map(|j| alloc(&pairs[j as usize - 1].q)).collect();
        let bp = (1..i).map(|j| alloc(&pairs[j as usize - 1].p)).collect();
        let cp = (1..=i).map(|j| alloc(&pairs[j as usize - 1].q)).collect();
        let w = Rc::new(Windows { b, c, bp, cp });
        self.layouts.borrow_mut().insert(i, w.clone());
        w
    }
}

impl Schematic for LadderMap {
    fn block_chart(&self, sys: &BlockSystem, i: u64) -> Chart {
        let wi = self.layout(sys, i);
        let wnext = self.layout(sys, i + 1);
        let mut pieces = Vec::new();
        for j in 1..=i {
            if let Some(src) = &wi.b[j as usize - 1] {
                let dst = wnext.bp[j as usize - 1].as_ref().expect("equal class");
                pieces.push(Piece::new(src.clone(), dst.clone()).expect("equal widths"));
            }
        }
        if i >= 2 {
            let wprev = self.layout(sys, i - 1);
            for j in 1..i {
                if let Some(src) = &wi.c[j as usize - 1] {
                    let dst = wprev.cp[j as usize - 1].as_ref().expect("equal class");
                    pieces.push(Piece::new(src.clone(), dst.clone()).expect("equal widths"));
                }
            }
        }
        let space = sys.space();
        let block = ClopenSet::make(&space, vec![sys.block(i)]).unwrap();
        let outgoing: Vec<Interval> =
            wi.b.iter().chain(wi.c.iter()).flatten().cloned().collect();
        let incoming: Vec<Interval> =
            wi.bp.iter().chain(wi.cp.iter()).flatten().cloned().collect();
        let src_rest = block.difference(&ClopenSet::make(&space, outgoing).unwrap());
        let dst_rest = block.difference(&ClopenSet::make(&space, incoming).unwrap());
        let closing =
            order_iso_chart(&src_rest, &dst_rest).expect("window complements share order type");
        pieces.extend(closing.pieces().iter().cloned());
        Chart::new(pieces).expect("ladder pieces are disjoint")
    }

    fn source_blocks(&self, _sys: &BlockSystem, j: u64) -> Vec<u64> {
        if j > 1 {
            vec![j - 1, j, j + 1]
        } else {
            vec![j, j + 1]
        }
    }
}

/// Builds the pair sequence for `(g, f, sigma)`, checking the single
/// cycle certificate and agreement of `pi(g)` with `sigma` up to
/// `bound`.
pub fn rs_sequence(
    g: &Homeo,
    f: TargetFn,
    sigma: &Perm,
    bound: u64,
) -> Result<RSSequence, HomeoError> {
    let rs = RSSequence::new(g, f, sigma)?;
    for i in 1..=bound {
        if g.pi_of(i)? != sigma.apply(i) {
            return Err(HomeoError::Domain(format!(
                "pi(g) disagrees with sigma at block {i}"
            )));
        }
    }
    Ok(rs)
}

/// A conjugator `h` with trivial `pi` whose conjugate `h^-1 g h` attains
/// the targets `f` in the exchange sense.  Target classes are checked to
/// be realizable (rank below alpha) for indices up to `bound`.
pub fn realize_conjugator(
    g: &Homeo,
    f: TargetFn,
    sigma: &Perm,
    bound: u64,
) -> Result<Homeo, HomeoError> {
    let alpha = g.alpha();
    for i in 1..=bound {
        check_realizable(alpha, &f.at(i), "target")?;
    }
    let rs = Rc::new(rs_sequence(g, f, sigma, bound)?);
    Ok(Homeo::schematic(
        alpha,
        Rc::new(LadderMap { rs, layouts: RefCell::new(HashMap::new()) }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cl(r: u64, d: u64) -> HomeoClass {
        HomeoClass::new(r, d)
    }

    #[test]
    fn trivial_targets_give_trivial_sequence() {
        let g = Homeo::lift(2, &Perm::zigzag());
        let rs = rs_sequence(&g, TargetFn::trivial(), &Perm::zigzag(), 10).unwrap();
        for i in [1, 2, 3, 7, 12] {
            assert!(rs.at(i).unwrap().is_zero_pair());
            assert!(rs.check_recurrence(i).unwrap());
        }
    }

    #[test]
    fn one_step_unfolding_and_backward_consistency() {
        let g = Homeo::lift(2, &Perm::zigzag());
        let f = TargetFn::EventuallyTrivial(BTreeMap::from([(
            1,
            ClassPair::new(cl(1, 1), HomeoClass::Empty),
        )]));
        let rs = rs_sequence(&g, f, &Perm::zigzag(), 10).unwrap();
        // zigzag sends 1 to 2: R at 2 = R at 1 - 0 + f(1).
        assert_eq!(rs.at(2).unwrap(), ClassPair::new(cl(1, 1), HomeoClass::Empty));
        assert!(rs.at(1).unwrap().is_zero_pair());
        // Backward of the orbit: zigzag^-1(1) = 3, f trivial there.
        assert!(rs.at(3).unwrap().is_zero_pair());
        for i in 1..=12 {
            assert!(rs.check_recurrence(i).unwrap());
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = Homeo::lift(2, &Perm::zigzag());
        let not_cycle = Perm::table([(1, 2), (2, 1)]).unwrap();
        assert!(rs_sequence(&g, TargetFn::trivial(), &not_cycle, 5).is_err());
        // pi(g) must agree with sigma.
        let h = Homeo::identity(2);
        assert!(rs_sequence(&h, TargetFn::trivial(), &Perm::zigzag(), 5).is_err());
        // Unrealizable target rank.
        let f = TargetFn::EventuallyTrivial(BTreeMap::from([(
            1,
            ClassPair::new(cl(2, 1), HomeoClass::Empty),
        )]));
        assert!(realize_conjugator(&g, f, &Perm::zigzag(), 5).is_err());
    }

    #[test]
    fn conjugator_attains_targets() {
        let g = Homeo::lift(2, &Perm::zigzag());
        let f = TargetFn::EventuallyTrivial(BTreeMap::from([
            (1, ClassPair::new(cl(1, 1), HomeoClass::Empty)),
            (3, ClassPair::new(cl(0, 2), cl(1, 1))),
        ]));
        let h = realize_conjugator(&g, f.clone(), &Perm::zigzag(), 12).unwrap();
        let conj = Homeo::compose_all(&[&Homeo::inverse(&h), &g, &h]);
        for i in 1..=8 {
            assert_eq!(h.pi_of(i).unwrap(), i, "conjugator must have trivial pi");
            let achieved = conj.signature(i).unwrap().pair;
            assert!(
                sim(&achieved, &f.at(i)),
                "block {i}: achieved {achieved:?}, wanted {:?}",
                f.at(i)
            );
        }
    }

    #[test]
    fn periodic_targets() {
        let g = Homeo::lift(2, &Perm::zigzag());
        let f = TargetFn::Periodic(vec![
            ClassPair::zero(),
            ClassPair::new(cl(1, 1), cl(1, 1)),
        ]);
        let h = realize_conjugator(&g, f.clone(), &Perm::zigzag(), 8).unwrap();
        let conj = Homeo::compose_all(&[&Homeo::inverse(&h), &g, &h]);
        for i in 1..=6 {
            assert!(sim(&conj.signature(i).unwrap().pair, &f.at(i)));
        }
    }
}
