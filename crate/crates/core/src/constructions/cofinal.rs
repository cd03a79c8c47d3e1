//! Signature computation through a cofinal witness set, and the cocycle
//! identity for composites.

use crate::clopen::ClopenSet;
use crate::homeo::{Homeo, HomeoError};
use crate::sigcalc::{sim, ClassPair};

/// Computes the deficiency pair of `g` at block `i` through a cofinal
/// `B` in `A_i`: returns `(A_{pi(i)} \ gB, A_i \ B)`.
///
/// `B` must contain the block's top point (equivalently its complement
/// in the block is bounded) and `gB` must stay inside the target block.
/// The returned pair is exchange-equivalent to `signature(g, i)`.
pub fn signature_via_cofinal(
    g: &Homeo,
    i: u64,
    b: &ClopenSet,
) -> Result<(ClopenSet, ClopenSet), HomeoError> {
    let sys = g.sys();
    let space = sys.space();
    let block = ClopenSet::make(&space, vec![sys.block(i)])?;
    if !b.is_subset(&block) {
        return Err(HomeoError::Domain(format!("witness set is not a subset of block {i}")));
    }
    if !b.contains(&sys.top_point(i)) {
        return Err(HomeoError::Domain(format!("witness set is not cofinal in block {i}")));
    }
    let n = g.pi_of(i)?;
    let target = ClopenSet::make(&space, vec![sys.block(n)])?;
    let image = g.image_of_set(b)?;
    if !image.is_subset(&target) {
        return Err(HomeoError::Domain(format!(
            "image of the witness set escapes the target block {n}"
        )));
    }
    Ok((target.difference(&image), block.difference(b)))
}

/// Outcome of one cocycle instance, with both sides retained.
#[derive(Clone, Debug)]
pub struct CocycleOutcome {
    /// Signature pair of the composite `h . g` at `i`.
    pub composite: ClassPair,
    /// `signature(g, i) + signature(h, pi(g)(i))`.
    pub sum: ClassPair,
    pub holds: bool,
}

/// Checks the cocycle identity
/// `signature(hg, i) ~ signature(g, i) + signature(h, pi(g)(i))`.
pub fn check_cocycle(g: &Homeo, h: &Homeo, i: u64) -> Result<CocycleOutcome, HomeoError> {
    let composite = Homeo::compose(h, g).signature(i)?.pair;
    let j = g.pi_of(i)?;
    let sum = g.signature(i)?.pair.add(&h.signature(j)?.pair);
    let holds = sim(&composite, &sum);
    Ok(CocycleOutcome { composite, sum, holds })
}
