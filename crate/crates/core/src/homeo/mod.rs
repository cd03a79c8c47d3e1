//! A composition-closed subgroup of the homeomorphism group of
//! `X = [1, w^(a+1)]`, represented finitely.
//!
//! The space is partitioned into blocks `A_n = (w^a*(n-1), w^a*n]`.  A
//! [`Homeo`] is a description tree (identity, finite chart, block map
//! over a permutation, composition, inverse, or a schematic rule); every
//! variant can produce, for each block, a finite [`Chart`] whose sources
//! partition the block.  Charts are computed lazily and memoized per
//! block, so deep composites stay cheap to evaluate.
//!
//! This is a deliberate proper subgroup of the full homeomorphism group:
//! the full group is uncountable and admits no finite representations,
//! but every construction used by the verifiers instantiates here.
//!
//! Objects use interior mutability for their memo tables and are
//! confined to a single thread (`Rc`, not `Sync`); distinct objects are
//! independently usable in parallel.

mod between;
mod chart;
mod parse;
mod perm;

pub use between::{build_homeo_between, order_iso_chart};
pub use chart::{interval_type, intersect, Chart, Interval, Piece};
pub use parse::parse_homeo;
pub use perm::Perm;

use crate::clopen::{ClopenError, ClopenSet, Space};
use crate::ordinal::{Nat, Ordinal, OrdinalError};
use crate::sigcalc::ClassPair;
use num_traits::Zero;
use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

#[derive(Debug, Clone, thiserror::Error)]
pub enum HomeoError {
    #[error("point {0} outside [1, delta]")]
    PointOutOfRange(String),
    #[error("bad chart: {0}")]
    BadChart(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("cannot compute exactly on an unbounded region: {0}")]
    Unbounded(String),
    #[error("homeomorphism class mismatch: {0} vs {1}")]
    ClassMismatch(String, String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
    #[error(transparent)]
    Clopen(#[from] ClopenError),
}

/// The block partition of `[1, w^(a+1))` into `A_n = (w^a*(n-1), w^a*n]`.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct BlockSystem {
    alpha: u64,
}

impl BlockSystem {
    pub fn new(alpha: u64) -> Self {
        BlockSystem { alpha }
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    /// Right endpoint of the ambient space, `w^(alpha+1)`.
    pub fn delta(&self) -> Ordinal {
        Ordinal::omega_pow(self.alpha + 1)
    }

    pub fn space(&self) -> Space {
        Space::new(self.delta()).expect("delta >= 1")
    }

    /// `w^alpha`.
    pub fn block_width(&self) -> Ordinal {
        Ordinal::omega_pow(self.alpha)
    }

    /// The block `A_n = (w^a*(n-1), w^a*n]`, for `n >= 1`.
    pub fn block(&self, n: u64) -> Interval {
        assert!(n >= 1, "blocks are indexed from 1");
        let w = self.block_width();
        (w.mul(&Ordinal::from_nat(n - 1)), w.mul(&Ordinal::from_nat(n)))
    }

    /// The unique rank-alpha point of `A_n`, `w^a * n`.
    pub fn top_point(&self, n: u64) -> Ordinal {
        self.block_width().mul(&Ordinal::from_nat(n))
    }

    /// Index of the block containing `x`; `None` for `x = delta`.
    pub fn block_of(&self, x: &Ordinal) -> Result<Option<u64>, HomeoError> {
        if x.is_zero() || *x > self.delta() {
            return Err(HomeoError::PointOutOfRange(x.to_string()));
        }
        if *x == self.delta() {
            return Ok(None);
        }
        let (q, r) = x
            .divmod_omega_pow(&Nat::from(self.alpha))
            .expect("x < delta = w^(alpha+1)");
        let q = u64::try_from(&q).map_err(|_| {
            HomeoError::Invariant(format!("block index of {x} does not fit in u64"))
        })?;
        Ok(Some(if r.is_zero() { q } else { q + 1 }))
    }

    /// `n` when `x = w^a * n` with finite `n >= 1`.
    pub fn top_index_of(&self, x: &Ordinal) -> Option<u64> {
        let (q, r) = x.divmod_omega_pow(&Nat::from(self.alpha))?;
        if !r.is_zero() || q.is_zero() {
            return None;
        }
        u64::try_from(&q).ok()
    }

    /// The canonical order isomorphism `[1, w^a] -> A_n`,
    /// `beta -> w^a*(n-1) + beta`.
    pub fn phi(&self, n: u64, beta: &Ordinal) -> Result<Ordinal, HomeoError> {
        if beta.is_zero() || *beta > self.block_width() {
            return Err(HomeoError::Domain(format!(
                "phi argument {beta} outside [1, w^{}]",
                self.alpha
            )));
        }
        let (lo, _) = self.block(n);
        Ok(lo.add(beta))
    }

    pub fn phi_inv(&self, n: u64, x: &Ordinal) -> Result<Ordinal, HomeoError> {
        let (lo, hi) = self.block(n);
        if *x <= lo || *x > hi {
            return Err(HomeoError::Domain(format!("{x} is not in block {n}")));
        }
        Ok(lo.left_sub(x)?)
    }

    /// `phi_ij = phi_j . phi_i^{-1}`, the canonical map `A_i -> A_j`.
    pub fn phi_ij(&self, i: u64, j: u64, x: &Ordinal) -> Result<Ordinal, HomeoError> {
        let beta = self.phi_inv(i, x)?;
        self.phi(j, &beta)
    }

    /// Translates an interval contained in `A_i` to its canonical copy
    /// in `A_j` (endpoints may include the block base).
    pub fn shift_interval(&self, iv: &Interval, i: u64, j: u64) -> Interval {
        let (ilo, _) = self.block(i);
        let (jlo, _) = self.block(j);
        let shift = |x: &Ordinal| jlo.add(&ilo.left_sub(x).expect("within block"));
        (shift(&iv.0), shift(&iv.1))
    }

    /// Finite list of blocks meeting a bounded interval.
    pub fn blocks_spanning(&self, iv: &Interval) -> Result<Vec<u64>, HomeoError> {
        let first = self
            .block_of(&iv.0.succ())?
            .ok_or_else(|| HomeoError::Unbounded(format!("interval ({}, {}]", iv.0, iv.1)))?;
        let last = self
            .block_of(&iv.1)?
            .ok_or_else(|| HomeoError::Unbounded(format!("interval ({}, {}]", iv.0, iv.1)))?;
        Ok((first..=last).collect())
    }
}

/// A schematic block-to-chart rule, the extension point used by the
/// verified constructions (zone copies, block ladders, straightening).
pub trait Schematic {
    /// The chart for block `i`; sources must partition `A_i`.
    fn block_chart(&self, sys: &BlockSystem, i: u64) -> Chart;
    /// Finite superset of the blocks whose image can meet `A_j`.
    fn source_blocks(&self, sys: &BlockSystem, j: u64) -> Vec<u64>;
    /// True when every block is fixed setwise.
    fn blockwise(&self) -> bool {
        false
    }
    /// Finite superset of blocks moved, when one is known.
    fn active_hint(&self) -> Option<BTreeSet<u64>> {
        None
    }
}

enum Kind {
    Identity,
    GlobalChart(Chart),
    BlockMap { sigma: Perm, overrides: BTreeMap<u64, Chart> },
    Compose(Homeo, Homeo),
    Inverse(Homeo),
    Schematic(Rc<dyn Schematic>),
}

struct Node {
    sys: BlockSystem,
    kind: Kind,
    memo: RefCell<HashMap<u64, Rc<Chart>>>,
}

/// A finitely-represented homeomorphism of `[1, w^(alpha+1)]`.
#[derive(Clone)]
pub struct Homeo {
    node: Rc<Node>,
}

/// The signature of `g` at block `i`: the deficiency sets
/// `P = A_{pi(i)} \ g(A_i)` and `Q = A_i \ g^{-1}(A_{pi(i)})`, with their
/// class pair.
pub struct Signature {
    pub p: ClopenSet,
    pub q: ClopenSet,
    pub pair: ClassPair,
}

/// Outcome of a stabilizer query: `exact` distinguishes a full decision
/// from one verified only on blocks up to a bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerAnswer {
    pub holds: bool,
    pub exact: bool,
    pub checked_blocks: u64,
}

impl Homeo {
    fn from_kind(sys: BlockSystem, kind: Kind) -> Self {
        Homeo {
            node: Rc::new(Node { sys, kind, memo: RefCell::new(HashMap::new()) }),
        }
    }

    pub fn identity(alpha: u64) -> Self {
        Homeo::from_kind(BlockSystem::new(alpha), Kind::Identity)
    }

    /// A global finite chart, acting as the identity off its pieces.
    /// Pieces must be bounded and their sources and targets must cover
    /// the same set, so the extension by the identity is a bijection.
    pub fn from_global_chart(alpha: u64, chart: Chart) -> Result<Self, HomeoError> {
        let sys = BlockSystem::new(alpha);
        let delta = sys.delta();
        let space = sys.space();
        for p in chart.pieces() {
            if p.src.1 >= delta || p.dst.1 >= delta {
                return Err(HomeoError::BadChart(format!(
                    "global chart piece {p:?} is not bounded below delta"
                )));
            }
        }
        let srcs = ClopenSet::make(&space, chart.srcs())?;
        let dsts = ClopenSet::make(&space, chart.dsts())?;
        if srcs != dsts {
            return Err(HomeoError::BadChart(
                "global chart sources and targets cover different sets".into(),
            ));
        }
        Ok(Homeo::from_kind(sys, Kind::GlobalChart(chart)))
    }

    /// The blockwise lift of a permutation: `A_i` is mapped onto
    /// `A_{sigma(i)}` by the canonical translation.
    pub fn lift(alpha: u64, sigma: &Perm) -> Self {
        if sigma.is_identity_certified()
            || sigma.support_hint().is_some_and(|s| s.is_empty())
        {
            return Homeo::identity(alpha);
        }
        Homeo::from_kind(
            BlockSystem::new(alpha),
            Kind::BlockMap { sigma: sigma.clone(), overrides: BTreeMap::new() },
        )
    }

    /// A block map with per-block chart overrides; a block without an
    /// override is translated canonically onto its sigma-image.
    pub fn block_map(
        alpha: u64,
        sigma: &Perm,
        overrides: BTreeMap<u64, Chart>,
    ) -> Result<Self, HomeoError> {
        let sys = BlockSystem::new(alpha);
        let space = sys.space();
        let delta = sys.delta();
        for (&i, ch) in &overrides {
            let block = ClopenSet::make(&space, vec![sys.block(i)])?;
            let srcs = ClopenSet::make(&space, ch.srcs())?;
            if srcs != block {
                return Err(HomeoError::BadChart(format!(
                    "override for block {i}: sources do not partition the block"
                )));
            }
            if ch.pieces().iter().any(|p| p.dst.1 >= delta) {
                return Err(HomeoError::BadChart(format!(
                    "override for block {i}: target beyond the last block"
                )));
            }
        }
        Ok(Homeo::from_kind(sys, Kind::BlockMap { sigma: sigma.clone(), overrides }))
    }

    pub fn compose(outer: &Homeo, inner: &Homeo) -> Self {
        assert_eq!(outer.alpha(), inner.alpha(), "mismatched block systems");
        Homeo::from_kind(outer.node.sys, Kind::Compose(outer.clone(), inner.clone()))
    }

    /// Composition applying the arguments right to left.
    pub fn compose_all(factors: &[&Homeo]) -> Self {
        let mut it = factors.iter().rev();
        let first = (*it.next().expect("at least one factor")).clone();
        it.fold(first, |acc, f| Homeo::compose(f, &acc))
    }

    pub fn inverse(g: &Homeo) -> Self {
        Homeo::from_kind(g.node.sys, Kind::Inverse(g.clone()))
    }

    pub fn schematic(alpha: u64, rule: Rc<dyn Schematic>) -> Self {
        Homeo::from_kind(BlockSystem::new(alpha), Kind::Schematic(rule))
    }

    pub fn sys(&self) -> &BlockSystem {
        &self.node.sys
    }

    pub fn alpha(&self) -> u64 {
        self.node.sys.alpha
    }

    /// The finite chart of this homeomorphism on block `i` (memoized).
    pub fn block_chart(&self, i: u64) -> Rc<Chart> {
        if let Some(c) = self.node.memo.borrow().get(&i) {
            return c.clone();
        }
        let chart = Rc::new(self.compute_block_chart(i));
        self.node.memo.borrow_mut().insert(i, chart.clone());
        chart
    }

    fn compute_block_chart(&self, i: u64) -> Chart {
        let sys = &self.node.sys;
        let block = sys.block(i);
        match &self.node.kind {
            Kind::Identity => Chart::new(vec![Piece::identity(block)]).unwrap(),
            Kind::GlobalChart(ch) => {
                let mut pieces = Vec::new();
                let mut covered: Vec<Interval> = Vec::new();
                for p in ch.pieces() {
                    if let Some(sub) = intersect(&p.src, &block) {
                        covered.push(sub.clone());
                        pieces.push(p.restrict_src(&sub));
                    }
                }
                // Identity on the uncovered remainder of the block.
                covered.sort_by(|a, b| a.0.cmp(&b.0));
                let mut cur = block.0.clone();
                for (lo, hi) in &covered {
                    if cur < *lo {
                        pieces.push(Piece::identity((cur, lo.clone())));
                    }
                    cur = hi.clone();
                }
                if cur < block.1 {
                    pieces.push(Piece::identity((cur, block.1.clone())));
                }
                Chart::new(pieces).expect("restricted pieces stay disjoint")
            }
            Kind::BlockMap { sigma, overrides } => match overrides.get(&i) {
                Some(ch) => ch.clone(),
                None => {
                    let target = sys.block(sigma.apply(i));
                    Chart::new(vec![Piece::new(block, target).expect("equal block types")])
                        .unwrap()
                }
            },
            Kind::Compose(outer, inner) => {
                let mut pieces = Vec::new();
                for p in inner.block_chart(i).pieces() {
                    // Split the target across blocks, then refine against
                    // the outer charts there.
                    let mut cur = p.dst.0.clone();
                    while cur < p.dst.1 {
                        let j = sys
                            .block_of(&cur.succ())
                            .expect("within space")
                            .expect("below delta");
                        let (_, bhi) = sys.block(j);
                        let seg_hi = bhi.min(p.dst.1.clone());
                        let seg = (cur.clone(), seg_hi.clone());
                        for op in outer.block_chart(j).pieces() {
                            if let Some(sub) = intersect(&op.src, &seg) {
                                let back = p.restrict_dst(&sub);
                                let fwd = op.restrict_src(&sub);
                                pieces.push(Piece { src: back.src, dst: fwd.dst });
                            }
                        }
                        cur = seg_hi;
                    }
                }
                Chart::new(pieces).expect("refined composition pieces stay disjoint")
            }
            Kind::Inverse(g) => {
                let mut pieces = Vec::new();
                for m in g.in_blocks(i) {
                    for p in g.block_chart(m).pieces() {
                        if let Some(sub) = intersect(&p.dst, &block) {
                            pieces.push(p.restrict_dst(&sub).inverse());
                        }
                    }
                }
                Chart::new(pieces).expect("inverse pieces stay disjoint")
            }
            Kind::Schematic(rule) => rule.block_chart(sys, i),
        }
    }

    /// Finite superset of the blocks whose image under `self` meets `A_j`.
    pub fn in_blocks(&self, j: u64) -> Vec<u64> {
        let sys = &self.node.sys;
        let block = sys.block(j);
        let mut out: BTreeSet<u64> = BTreeSet::new();
        match &self.node.kind {
            Kind::Identity => {
                out.insert(j);
            }
            Kind::GlobalChart(ch) => {
                out.insert(j);
                for p in ch.pieces() {
                    if let Some(sub) = intersect(&p.dst, &block) {
                        let back = p.restrict_dst(&sub);
                        out.extend(sys.blocks_spanning(&back.src).expect("bounded piece"));
                    }
                }
            }
            Kind::BlockMap { sigma, overrides } => {
                out.insert(sigma.inverse_apply(j));
                for (&i, ch) in overrides {
                    if ch.pieces().iter().any(|p| intersect(&p.dst, &block).is_some()) {
                        out.insert(i);
                    }
                }
            }
            Kind::Compose(outer, inner) => {
                for m in outer.in_blocks(j) {
                    out.extend(inner.in_blocks(m));
                }
            }
            Kind::Inverse(g) => {
                for p in g.block_chart(j).pieces() {
                    out.extend(sys.blocks_spanning(&p.dst).expect("bounded piece"));
                }
            }
            Kind::Schematic(rule) => {
                out.extend(rule.source_blocks(sys, j));
            }
        }
        out.into_iter().collect()
    }

    /// Evaluation at a point of `[1, delta]`; `delta` is always fixed.
    pub fn eval(&self, x: &Ordinal) -> Result<Ordinal, HomeoError> {
        match self.node.sys.block_of(x)? {
            None => Ok(x.clone()),
            Some(i) => self.block_chart(i).apply(x).ok_or_else(|| {
                HomeoError::Invariant(format!("block {i} chart does not cover {x}"))
            }),
        }
    }

    pub fn eval_inv(&self, y: &Ordinal) -> Result<Ordinal, HomeoError> {
        match self.node.sys.block_of(y)? {
            None => Ok(y.clone()),
            Some(j) => {
                for m in self.in_blocks(j) {
                    if let Some(x) = self.block_chart(m).unapply(y) {
                        return Ok(x);
                    }
                }
                Err(HomeoError::Invariant(format!("no block maps onto {y}")))
            }
        }
    }

    /// The induced block permutation at `i`, read off from the image of
    /// the top point `w^a * i`.
    pub fn pi_of(&self, i: u64) -> Result<u64, HomeoError> {
        let y = self.eval(&self.node.sys.top_point(i))?;
        self.node.sys.top_index_of(&y).ok_or_else(|| {
            HomeoError::Invariant(format!(
                "image {y} of the top point of block {i} is not a block top"
            ))
        })
    }

    /// Signature pair at block `i`.
    pub fn signature(&self, i: u64) -> Result<Signature, HomeoError> {
        let sys = &self.node.sys;
        let space = sys.space();
        let n = self.pi_of(i)?;
        let target = ClopenSet::make(&space, vec![sys.block(n)])?;
        let source = ClopenSet::make(&space, vec![sys.block(i)])?;
        let chart = self.block_chart(i);
        let image = ClopenSet::make(&space, chart.dsts())?;
        let p = target.difference(&image);
        // Sources of the pieces that land inside the target block.
        let mut pre = Vec::new();
        for piece in chart.pieces() {
            if let Some(sub) = intersect(&piece.dst, &sys.block(n)) {
                pre.push(piece.restrict_dst(&sub).src);
            }
        }
        let q = source.difference(&ClopenSet::make(&space, pre)?);
        let pair = ClassPair::new(p.homeo_class(), q.homeo_class());
        Ok(Signature { p, q, pair })
    }

    /// Image of a clopen set.  Exact for bounded sets, and for unbounded
    /// sets when the moved blocks are finitely known.
    pub fn image_of_set(&self, s: &ClopenSet) -> Result<ClopenSet, HomeoError> {
        let space = s.space().clone();
        if *space.delta() != self.node.sys.delta() {
            return Err(HomeoError::Domain("set lives in a different ambient space".into()));
        }
        if s.bounded() {
            return self.image_of_bounded(s);
        }
        let Some(active) = self.active_hint() else {
            return Err(HomeoError::Unbounded(
                "image of an unbounded set under a homeomorphism without a finite activity bound"
                    .into(),
            ));
        };
        let region = ClopenSet::make(
            &space,
            active.iter().map(|&i| self.node.sys.block(i)).collect(),
        )?;
        let moved = s.intersect(&region);
        let fixed = s.difference(&region);
        Ok(fixed.union(&self.image_of_bounded(&moved)?))
    }

    fn image_of_bounded(&self, s: &ClopenSet) -> Result<ClopenSet, HomeoError> {
        let sys = &self.node.sys;
        let mut out = Vec::new();
        for iv in s.intervals() {
            for i in sys.blocks_spanning(iv)? {
                let block = sys.block(i);
                let Some(part) = intersect(iv, &block) else { continue };
                for piece in self.block_chart(i).pieces() {
                    if let Some(sub) = intersect(&piece.src, &part) {
                        out.push(piece.restrict_src(&sub).dst);
                    }
                }
            }
        }
        Ok(ClopenSet::make(s.space(), out)?)
    }

    pub fn preimage_of_set(&self, s: &ClopenSet) -> Result<ClopenSet, HomeoError> {
        Homeo::inverse(self).image_of_set(s)
    }

    /// Finite superset of blocks where the map may differ from the
    /// identity, when one is known.
    pub fn active_hint(&self) -> Option<BTreeSet<u64>> {
        let sys = &self.node.sys;
        match &self.node.kind {
            Kind::Identity => Some(BTreeSet::new()),
            Kind::GlobalChart(ch) => {
                let mut s = BTreeSet::new();
                for p in ch.pieces() {
                    if p.is_identity() {
                        continue;
                    }
                    s.extend(sys.blocks_spanning(&p.src).expect("bounded piece"));
                    s.extend(sys.blocks_spanning(&p.dst).expect("bounded piece"));
                }
                Some(s)
            }
            Kind::BlockMap { sigma, overrides } => {
                let mut s = sigma.support_hint()?;
                for (&i, ch) in overrides {
                    s.insert(i);
                    for p in ch.pieces() {
                        if !p.is_identity() {
                            s.extend(sys.blocks_spanning(&p.dst).expect("bounded piece"));
                        }
                    }
                }
                Some(s)
            }
            Kind::Compose(outer, inner) => {
                let mut s = outer.active_hint()?;
                s.extend(inner.active_hint()?);
                Some(s)
            }
            Kind::Inverse(g) => g.active_hint(),
            Kind::Schematic(rule) => rule.active_hint(),
        }
    }

    /// Structural certificate that every block is fixed setwise.
    pub fn is_blockwise_certified(&self) -> bool {
        let sys = &self.node.sys;
        let same_block = |iv: &Interval| -> Option<u64> {
            let blocks = sys.blocks_spanning(iv).ok()?;
            if blocks.len() == 1 {
                Some(blocks[0])
            } else {
                None
            }
        };
        match &self.node.kind {
            Kind::Identity => true,
            Kind::GlobalChart(ch) => ch.pieces().iter().all(|p| {
                matches!((same_block(&p.src), same_block(&p.dst)), (Some(a), Some(b)) if a == b)
            }),
            Kind::BlockMap { sigma, overrides } => {
                sigma.support_hint().is_some_and(|s| s.is_empty())
                    && overrides.iter().all(|(&i, ch)| {
                        ch.pieces().iter().all(|p| same_block(&p.dst) == Some(i))
                    })
            }
            Kind::Compose(outer, inner) => {
                outer.is_blockwise_certified() && inner.is_blockwise_certified()
            }
            Kind::Inverse(g) => g.is_blockwise_certified(),
            Kind::Schematic(rule) => rule.blockwise(),
        }
    }

    /// First sampled point where the two maps disagree, if any.
    pub fn first_disagreement(
        g: &Homeo,
        h: &Homeo,
        points: &[Ordinal],
    ) -> Result<Option<Ordinal>, HomeoError> {
        for x in points {
            if g.eval(x)? != h.eval(x)? {
                return Ok(Some(x.clone()));
            }
        }
        Ok(None)
    }

    /// Pointwise agreement on a finite sample; disagreement soundly
    /// refutes extensional equality.
    pub fn eq_on(g: &Homeo, h: &Homeo, points: &[Ordinal]) -> Result<bool, HomeoError> {
        Ok(Homeo::first_disagreement(g, h, points)?.is_none())
    }

    /// Does `self` fix `b` pointwise?  Exact when `b` is bounded or the
    /// activity of the map is finitely known; otherwise verified on
    /// blocks up to `bound`.
    pub fn fixes_pointwise(&self, b: &ClopenSet, bound: u64) -> Result<StabilizerAnswer, HomeoError> {
        let sys = &self.node.sys;
        let (blocks, exact): (Vec<u64>, bool) = if b.bounded() {
            let mut v = BTreeSet::new();
            for iv in b.intervals() {
                v.extend(sys.blocks_spanning(iv)?);
            }
            (v.into_iter().collect(), true)
        } else if let Some(act) = self.active_hint() {
            (act.into_iter().collect(), true)
        } else {
            ((1..=bound).collect(), false)
        };
        let checked = blocks.len() as u64;
        for i in blocks {
            let block = sys.block(i);
            for piece in self.block_chart(i).pieces() {
                for iv in b.intervals() {
                    let Some(in_block) = intersect(iv, &block) else { continue };
                    if let Some(sub) = intersect(&piece.src, &in_block) {
                        if !piece.restrict_src(&sub).is_identity() {
                            return Ok(StabilizerAnswer {
                                holds: false,
                                exact: true,
                                checked_blocks: checked,
                            });
                        }
                    }
                }
            }
        }
        Ok(StabilizerAnswer { holds: true, exact, checked_blocks: checked })
    }

    /// Does `self` map `b` onto itself?  Exactness as for
    /// [`Homeo::fixes_pointwise`].
    pub fn setwise_stabilizes(
        &self,
        b: &ClopenSet,
        bound: u64,
    ) -> Result<StabilizerAnswer, HomeoError> {
        let sys = &self.node.sys;
        if b.bounded() {
            let image = self.image_of_bounded(b)?;
            return Ok(StabilizerAnswer {
                holds: image == *b,
                exact: true,
                checked_blocks: 0,
            });
        }
        if let Some(act) = self.active_hint() {
            let region = ClopenSet::make(
                b.space(),
                act.iter().map(|&i| sys.block(i)).collect(),
            )?;
            let moved = b.intersect(&region);
            let holds = self.image_of_bounded(&moved)? == moved;
            return Ok(StabilizerAnswer { holds, exact: true, checked_blocks: act.len() as u64 });
        }
        // Sound partial check: images and preimages of the portion in
        // the first `bound` blocks must stay inside b.
        for i in 1..=bound {
            let block = ClopenSet::make(b.space(), vec![sys.block(i)])?;
            let part = b.intersect(&block);
            if part.is_empty() {
                continue;
            }
            if !self.image_of_bounded(&part)?.is_subset(b) {
                return Ok(StabilizerAnswer { holds: false, exact: true, checked_blocks: i });
            }
            if !Homeo::inverse(self).image_of_bounded(&part)?.is_subset(b) {
                return Ok(StabilizerAnswer { holds: false, exact: true, checked_blocks: i });
            }
        }
        Ok(StabilizerAnswer { holds: true, exact: false, checked_blocks: bound })
    }
}

#[cfg(test)]
mod tests;
