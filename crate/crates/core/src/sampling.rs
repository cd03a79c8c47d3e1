//! Deterministic seeded generators for verification campaigns.
//!
//! Random homeomorphisms are built by permuting same-grade monomial
//! pieces of a random bounded set, so validity (bijectivity, type
//! matching) holds by construction while signatures and supports vary.

use crate::clopen::{ClopenSet, HomeoClass, Space};
use crate::homeo::{BlockSystem, Chart, Homeo, Perm, Piece};
use crate::ordinal::{Nat, Ordinal};
use crate::sigcalc::ClassPair;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random ordinal with exponents strictly below `exp_bound` and
/// coefficients in `1..=coeff_bound`; zero is possible.
pub fn ordinal_below(rng: &mut impl Rng, exp_bound: u64, coeff_bound: u64) -> Ordinal {
    if exp_bound == 0 {
        return Ordinal::zero();
    }
    let max_terms = exp_bound.min(4);
    let k = rng.gen_range(0..=max_terms);
    let mut exps: Vec<u64> = (0..exp_bound).collect();
    exps.shuffle(rng);
    let mut chosen: Vec<u64> = exps.into_iter().take(k as usize).collect();
    chosen.sort_unstable_by(|a, b| b.cmp(a));
    let terms = chosen
        .into_iter()
        .map(|e| (Nat::from(e), Nat::from(rng.gen_range(1..=coeff_bound))))
        .collect();
    Ordinal::from_terms(terms).expect("strictly decreasing exponents")
}

/// Random point of block `A_i`.
pub fn point_in_block(rng: &mut impl Rng, sys: &BlockSystem, i: u64) -> Ordinal {
    let beta = if rng.gen_ratio(1, 8) {
        sys.block_width()
    } else {
        ordinal_below(rng, sys.alpha(), 5).succ()
    };
    sys.phi(i, &beta).expect("beta within block width")
}

/// Random clopen set with at most `max_intervals` intervals, endpoints
/// drawn below `sup`.
pub fn clopen_below(
    rng: &mut impl Rng,
    space: &Space,
    sup_exp: u64,
    max_intervals: usize,
    coeff_bound: u64,
) -> ClopenSet {
    let mut points: Vec<Ordinal> = (0..2 * max_intervals)
        .map(|_| ordinal_below(rng, sup_exp, coeff_bound))
        .collect();
    points.sort();
    points.dedup();
    let ivs = points.chunks_exact(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    ClopenSet::make(space, ivs).expect("sorted distinct endpoints")
}

/// Random bounded clopen subset of block `A_i` (never touching the
/// block's top point).
pub fn bounded_clopen_in_block(
    rng: &mut impl Rng,
    sys: &BlockSystem,
    i: u64,
    max_intervals: usize,
) -> ClopenSet {
    let space = sys.space();
    let (base, _) = sys.block(i);
    let mut points: Vec<Ordinal> = (0..2 * max_intervals)
        .map(|_| base.add(&ordinal_below(rng, sys.alpha(), 5)))
        .collect();
    points.sort();
    points.dedup();
    let ivs = points.chunks_exact(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    ClopenSet::make(&space, ivs).expect("sorted distinct endpoints")
}

/// Random class with rank strictly below `rank_bound` (`Empty` with
/// probability 1/4).
pub fn class(rng: &mut impl Rng, rank_bound: u64, max_degree: u64) -> HomeoClass {
    if rank_bound == 0 || rng.gen_ratio(1, 4) {
        HomeoClass::Empty
    } else {
        HomeoClass::new(rng.gen_range(0..rank_bound), rng.gen_range(1..=max_degree))
    }
}

pub fn class_pair(rng: &mut impl Rng, rank_bound: u64, max_degree: u64) -> ClassPair {
    ClassPair::new(class(rng, rank_bound, max_degree), class(rng, rank_bound, max_degree))
}

/// Chart permuting same-grade monomial pieces of random bounded subsets
/// of blocks `1..=blocks`.  `within_block` keeps each piece inside its
/// own block (a blockwise map); otherwise pieces may travel between
/// blocks, producing nontrivial signatures while keeping `pi` trivial.
fn monomial_shuffle_chart(
    rng: &mut impl Rng,
    sys: &BlockSystem,
    blocks: u64,
    within_block: bool,
) -> Chart {
    let mut pieces: Vec<Piece> = Vec::new();
    let mut pool: Vec<(Nat, (Ordinal, Ordinal))> = Vec::new();
    for i in 1..=blocks {
        let u = bounded_clopen_in_block(rng, sys, i, 3);
        let mut local: Vec<(Nat, (Ordinal, Ordinal))> = u
            .monomials()
            .into_iter()
            .map(|m| (m.grade, (m.lo, m.hi)))
            .collect();
        if within_block {
            pieces.extend(shuffle_by_grade(rng, local));
        } else {
            pool.append(&mut local);
        }
    }
    if !within_block {
        pieces.extend(shuffle_by_grade(rng, pool));
    }
    Chart::new(pieces).expect("permuted monomial pieces are disjoint")
}

fn shuffle_by_grade(
    rng: &mut impl Rng,
    items: Vec<(Nat, (Ordinal, Ordinal))>,
) -> Vec<Piece> {
    let mut by_grade: std::collections::BTreeMap<Nat, Vec<(Ordinal, Ordinal)>> =
        std::collections::BTreeMap::new();
    for (g, iv) in items {
        by_grade.entry(g).or_default().push(iv);
    }
    let mut out = Vec::new();
    for (_, srcs) in by_grade {
        let mut dsts = srcs.clone();
        dsts.shuffle(rng);
        for (s, d) in srcs.into_iter().zip(dsts) {
            out.push(Piece::new(s, d).expect("same grade, same closed type"));
        }
    }
    out
}

/// Random homeomorphism fixing every block setwise.
pub fn blockwise_homeo(rng: &mut impl Rng, alpha: u64, blocks: u64) -> Homeo {
    let sys = BlockSystem::new(alpha);
    let chart = monomial_shuffle_chart(rng, &sys, blocks, true);
    Homeo::from_global_chart(alpha, chart).expect("sources and targets coincide")
}

/// Random homeomorphism with trivial `pi` but nontrivial signatures.
pub fn chart_homeo(rng: &mut impl Rng, alpha: u64, blocks: u64) -> Homeo {
    let sys = BlockSystem::new(alpha);
    let chart = monomial_shuffle_chart(rng, &sys, blocks, false);
    Homeo::from_global_chart(alpha, chart).expect("sources and targets coincide")
}

/// Random finite-support block permutation moving indices below `bound`.
pub fn finite_perm(rng: &mut impl Rng, bound: u64) -> Perm {
    let mut idx: Vec<u64> = (1..=bound).collect();
    idx.shuffle(rng);
    let k = rng.gen_range(0..=bound.min(5)) as usize;
    let moved = &idx[..k];
    let mut image: Vec<u64> = moved.to_vec();
    image.shuffle(rng);
    Perm::table(moved.iter().copied().zip(image)).expect("permutation of chosen indices")
}

/// Random homeomorphism with nontrivial `pi` and nontrivial signatures.
pub fn general_homeo(rng: &mut impl Rng, alpha: u64, blocks: u64) -> Homeo {
    let lift = Homeo::lift(alpha, &finite_perm(rng, blocks));
    Homeo::compose(&chart_homeo(rng, alpha, blocks), &lift)
}
