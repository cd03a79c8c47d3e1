//! Factoring an arbitrary represented map through block lifts, a
//! blockwise part, and a residual supported on canonical envelopes.

use crate::clopen::ClopenSet;
use crate::homeo::{
    build_homeo_between, intersect, BlockSystem, Chart, Homeo, HomeoError, Perm, Schematic,
};
use crate::constructions::conjugate::{realize_conjugator, TargetFn};
use crate::ordinal::{Nat, Ordinal};
use crate::report::CheckReport;
use crate::sampling;
use crate::sigcalc::sim;
use rand::Rng;
use std::collections::BTreeSet;
use std::rc::Rc;

/// The deficiency sets of `w` at block `i`:
/// `B_i = {a in A_i : w(a) not in A_i}` and
/// `C_i = {a in A_i : w^{-1}(a) not in A_i}`.
/// Requires `pi(w)` to fix `i`; then `A_i \ C_i = w(A_i \ B_i)`.
pub fn deficiency_sets(w: &Homeo, i: u64) -> Result<(ClopenSet, ClopenSet), HomeoError> {
    if w.pi_of(i)? != i {
        return Err(HomeoError::Domain(format!("pi of the map does not fix block {i}")));
    }
    let s = w.signature(i)?;
    Ok((s.q, s.p))
}

/// Blockwise straightening of `w`: agrees with `w` off the deficiency
/// sets, and maps each `B_i` onto `C_i` by a chart between them.
struct StraightenMap {
    w: Homeo,
}

impl Schematic for StraightenMap {
    fn block_chart(&self, sys: &BlockSystem, i: u64) -> Chart {
        let (b, c) = deficiency_sets(&self.w, i).expect("pi of the map fixes every block");
        let mut pieces = Vec::new();
        for p in self.w.block_chart(i).pieces() {
            if let Some(sub) = intersect(&p.dst, &sys.block(i)) {
                pieces.push(p.restrict_dst(&sub));
            }
        }
        let between = build_homeo_between(&b, &c)
            .expect("deficiency sets of an exchange-trivial map share a class");
        pieces.extend(between.pieces().iter().cloned());
        Chart::new(pieces).expect("straightened pieces partition the block")
    }

    fn source_blocks(&self, _sys: &BlockSystem, j: u64) -> Vec<u64> {
        vec![j]
    }

    fn blockwise(&self) -> bool {
        true
    }

    fn active_hint(&self) -> Option<BTreeSet<u64>> {
        self.w.active_hint()
    }
}

/// The straightening of `w`, validated up to `bound`: `pi(w)` must fix
/// every checked block and the deficiency classes must agree (which is
/// implied by exchange-trivial signatures).
pub fn straighten(w: &Homeo, bound: u64) -> Result<Homeo, HomeoError> {
    for i in 1..=bound {
        let (b, c) = deficiency_sets(w, i)?;
        if b.homeo_class() != c.homeo_class() {
            return Err(HomeoError::ClassMismatch(
                format!("block {i} leaves class {}", b.homeo_class()),
                format!("receives class {}", c.homeo_class()),
            ));
        }
    }
    Ok(Homeo::schematic(w.alpha(), Rc::new(StraightenMap { w: w.clone() })))
}

/// A verified factorization `g = k . l . w' . h^{-1}` where `h` and `k`
/// are built from block lifts and a conjugation, `l` fixes every block
/// setwise, and the residual `w'` is supported inside the canonical
/// envelopes `D_i`.
pub struct Certificate {
    pub h: Homeo,
    pub k: Homeo,
    pub l: Homeo,
    /// The residual `w' = l^{-1} k^{-1} g h`.
    pub w: Homeo,
    /// `D_i = (base_i, base_i + w^(alpha-1) * n_i]` with `B_i` contained
    /// and `n_i >= i`, so the union's order type is `w^alpha`.
    pub envelopes: Vec<ClopenSet>,
    pub checks: Vec<CheckReport>,
    pub pass: bool,
}

fn envelope(w_mid: &Homeo, i: u64) -> Result<ClopenSet, HomeoError> {
    let sys = w_mid.sys();
    let alpha = sys.alpha();
    let space = sys.space();
    let (base, _) = sys.block(i);
    let step = Ordinal::omega_pow(alpha - 1);
    let (b_i, _) = deficiency_sets(w_mid, i)?;
    let mut n = i;
    if !b_i.is_empty() {
        let t = base.left_sub(&b_i.sup())?;
        let (q, r) = t
            .divmod_omega_pow(&Nat::from(alpha - 1))
            .expect("bounded subset extent stays below the block width");
        let needed = u64::try_from(&q)
            .map_err(|_| HomeoError::Invariant("envelope extent does not fit in u64".into()))?
            + u64::from(!r.is_zero());
        n = n.max(needed);
    }
    let hi = base.add(&step.mul(&Ordinal::from_nat(n)));
    Ok(ClopenSet::make(&space, vec![(base, hi)])?)
}

/// Builds and verifies the Certificate for `g` against a certified
/// single-cycle `sigma`, checking blocks up to `bound` with at least
/// `samples` seeded sample points.
pub fn factor_certificate(
    g: &Homeo,
    sigma: &Perm,
    bound: u64,
    samples: u64,
    seed: u64,
) -> Result<Certificate, HomeoError> {
    let alpha = g.alpha();
    if alpha == 0 {
        return Err(HomeoError::Domain("envelopes need alpha >= 1".into()));
    }
    if !sigma.single_cycle_certified() {
        return Err(HomeoError::Domain("sigma must be a certified single infinite cycle".into()));
    }
    let sys = *g.sys();
    let pi_g = Perm::induced(g);
    let h = Homeo::lift(alpha, &Perm::compose(&Perm::inverse(&pi_g), sigma));
    let gh = Homeo::compose(g, &h);
    let k0 = Homeo::lift(alpha, sigma);
    let gh_for_targets = gh.clone();
    let targets = TargetFn::Dyn(Rc::new(move |i| {
        gh_for_targets.signature(i).expect("gh is represented").pair
    }));
    let hc = realize_conjugator(&k0, targets, sigma, bound)?;
    let k = Homeo::compose_all(&[&Homeo::inverse(&hc), &k0, &hc]);
    let w_mid = Homeo::compose_all(&[&Homeo::inverse(&k), g, &h]);
    let l = straighten(&w_mid, bound)?;
    let wp = Homeo::compose(&Homeo::inverse(&l), &w_mid);
    let mut envelopes = Vec::new();
    for i in 1..=bound {
        envelopes.push(envelope(&w_mid, i)?);
    }

    let mut checks = Vec::new();

    // Residual signatures of w_mid are exchange-trivial.
    let mut trivial = CheckReport::new("exchange-trivial-residual");
    for i in 1..=bound {
        let pair = w_mid.signature(i)?.pair;
        trivial.record(sim(&pair, &crate::sigcalc::ClassPair::zero()), || {
            format!("block {i}: residual signature {pair:?}")
        });
    }
    checks.push(trivial);

    // Four-factor pointwise identity on chart endpoints plus seeded
    // uniform points.
    let rhs = Homeo::compose_all(&[&k, &l, &wp, &Homeo::inverse(&h)]);
    let mut points: Vec<Ordinal> = Vec::new();
    for i in 1..=bound {
        for p in g.block_chart(i).pieces() {
            points.push(p.src.0.succ());
            points.push(p.src.1.clone());
        }
    }
    let mut rng = sampling::rng(seed);
    while (points.len() as u64) < samples {
        let i = rng.gen_range(1..=bound);
        points.push(sampling::point_in_block(&mut rng, &sys, i));
    }
    let mut identity = CheckReport::new("four-factor-identity");
    for x in &points {
        let lhs = g.eval(x)?;
        let r = rhs.eval(x)?;
        identity.record(lhs == r, || format!("x = {x}: g(x) = {lhs}, factored(x) = {r}"));
    }
    checks.push(identity);

    // pi side conditions of the designed factors.
    let mut pis = CheckReport::new("pi-images");
    for i in 1..=bound {
        let h_ok = h.pi_of(i)? == pi_g.inverse_apply(sigma.apply(i));
        let k_ok = k.pi_of(i)? == sigma.apply(i);
        pis.record(h_ok && k_ok, || format!("block {i}: h or k has a wrong pi image"));
    }
    checks.push(pis);

    let mut wp_pi = CheckReport::new("residual-pi-trivial");
    for i in 1..=bound {
        let img = wp.pi_of(i)?;
        wp_pi.record(img == i, || format!("pi(w')({i}) = {img}"));
    }
    checks.push(wp_pi);

    // Support of the residual inside the envelopes.
    let mut support = CheckReport::new("residual-support-in-envelopes");
    for i in 1..=bound {
        for p in wp.block_chart(i).pieces() {
            if p.is_identity() {
                continue;
            }
            let env_i = &envelopes[i as usize - 1];
            let src_ok = env_i.sup() >= p.src.1;
            let mut dst_ok = true;
            for m in sys.blocks_spanning(&p.dst)? {
                let env_m = if m <= bound {
                    envelopes[m as usize - 1].clone()
                } else {
                    envelope(&w_mid, m)?
                };
                let sub = intersect(&p.dst, &sys.block(m)).expect("spanned block");
                dst_ok &= env_m.sup() >= sub.1;
            }
            support.record(src_ok && dst_ok, || {
                format!("block {i}: moved piece {p:?} escapes the envelopes")
            });
        }
    }
    checks.push(support);

    let mut lw = CheckReport::new("straightening-blockwise");
    lw.record(l.is_blockwise_certified(), || "l is not certified blockwise".into());
    checks.push(lw);

    let pass = checks.iter().all(CheckReport::passed);
    Ok(Certificate { h, k, l, w: wp, envelopes, checks, pass })
}
