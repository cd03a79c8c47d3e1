//! Seeded verification campaigns.  Each driver runs a batch of
//! randomized instances against an independent oracle and returns a
//! structured report; identical config and seed reproduce the report
//! byte for byte.

use crate::clopen::Space;
use crate::constructions::conjugate::{realize_conjugator, TargetFn};
use crate::constructions::{check_cocycle, factor_certificate, signature_via_cofinal};
use crate::constructions::{zone_conjugator, zone_union, ZoneSel, ZoneSystem};
use crate::homeo::{Homeo, Perm};
use crate::ordinal::Ordinal;
use crate::report::{CheckReport, RunReport};
use crate::sampling;
use crate::sigcalc::{sim, ClassPair};
use rand::Rng;
use std::collections::BTreeMap;
use std::collections::BTreeSet;

/// Shared knobs for a verification run.
#[derive(Copy, Clone, Debug)]
pub struct RunConfig {
    pub alpha: u64,
    pub degree: u64,
    pub seed: u64,
    /// Block index bound for per-block checks.
    pub blocks: u64,
    /// Sample point budget per instance.
    pub samples: u64,
}

impl RunConfig {
    pub fn new(alpha: u64, seed: u64) -> Self {
        RunConfig { alpha, degree: 1, seed, blocks: 20, samples: 200 }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.alpha < 1 {
            return Err("alpha must be at least 1".into());
        }
        if self.blocks < 1 {
            return Err("blocks must be at least 1".into());
        }
        if self.samples < 1 {
            return Err("samples must be at least 1".into());
        }
        Ok(())
    }
}

fn report(cfg: &RunConfig, command: &str) -> RunReport {
    RunReport::new(command, cfg.alpha, cfg.degree, cfg.seed)
}

/// Zone copies of a blockwise map commute with zone conjugation:
/// `h_J1^{-1} h_J2 = k h_I1^{-1} h_I2 k^{-1}` pointwise, and copies on
/// distinct zones have disjoint supports.
pub fn verify_copy_conjugation(cfg: &RunConfig, instances: u64) -> RunReport {
    let mut out = report(cfg, "verify lemma21");
    let mut identity = CheckReport::new("copy-conjugation");
    let mut disjoint = CheckReport::new("zone-supports-disjoint");
    let mut rng = sampling::rng(cfg.seed);
    for inst in 0..instances {
        let zs = if inst % 2 == 0 {
            ZoneSystem::residue(6 + inst % 3).expect("positive modulus")
        } else {
            ZoneSystem::dyadic()
        };
        let h = sampling::blockwise_homeo(&mut rng, cfg.alpha, 6);
        // Four pairwise disjoint zone index sets paired off by an
        // involution psi with I1 -> J1 and I2 -> J2.
        let mut zones: Vec<u64> = (1..=6).collect();
        use rand::seq::SliceRandom;
        zones.shuffle(&mut rng);
        let s1 = 1 + (inst as usize) % 2;
        let (i1, rest) = zones.split_at(s1);
        let (j1, rest) = rest.split_at(s1);
        let (i2, rest) = rest.split_at(1);
        let (j2, _) = rest.split_at(1);
        let mut pairs = Vec::new();
        for (a, b) in i1.iter().zip(j1).chain(i2.iter().zip(j2)) {
            pairs.push((*a, *b));
            pairs.push((*b, *a));
        }
        let psi = Perm::table(pairs).expect("involution on disjoint zone sets");
        let sel = |s: &[u64]| ZoneSel::Finite(s.iter().copied().collect::<BTreeSet<_>>());
        let h_i1 = zone_union(&h, zs, sel(i1)).expect("blockwise input");
        let h_i2 = zone_union(&h, zs, sel(i2)).expect("blockwise input");
        let h_j1 = zone_union(&h, zs, sel(j1)).expect("blockwise input");
        let h_j2 = zone_union(&h, zs, sel(j2)).expect("blockwise input");
        let k = zone_conjugator(cfg.alpha, zs, &psi).expect("psi within zone range");
        let lhs = Homeo::compose(&Homeo::inverse(&h_j1), &h_j2);
        let rhs = Homeo::compose_all(&[&k, &Homeo::inverse(&h_i1), &h_i2, &Homeo::inverse(&k)]);
        let sys = *h.sys();
        let mut ok = true;
        let mut first = String::new();
        let mut both = true;
        let mut first_b = String::new();
        for _ in 0..cfg.samples {
            let b = rng.gen_range(1..=cfg.blocks.max(12));
            let x = sampling::point_in_block(&mut rng, &sys, b);
            let l = lhs.eval(&x).expect("total map");
            let r = rhs.eval(&x).expect("total map");
            if ok && l != r {
                ok = false;
                first = format!("instance {inst}, x = {x}: lhs {l}, rhs {r}");
            }
            let moved_1 = h_i1.eval(&x).expect("total map") != x;
            let moved_2 = h_i2.eval(&x).expect("total map") != x;
            if both && moved_1 && moved_2 {
                both = false;
                first_b = format!("instance {inst}, x = {x} moved by both zone copies");
            }
        }
        identity.record(ok, || first);
        disjoint.record(both, || first_b);
    }
    out.push(identity);
    out.push(disjoint);
    out
}

/// Signature through a cofinal witness set matches the direct signature
/// up to exchange equivalence.
pub fn verify_cofinal_reduction(cfg: &RunConfig, instances: u64) -> RunReport {
    let mut out = report(cfg, "verify lemma23");
    let mut check = CheckReport::new("cofinal-reduction");
    let mut rng = sampling::rng(cfg.seed);
    let span = cfg.blocks.min(8).max(2);
    for inst in 0..instances {
        let g = sampling::general_homeo(&mut rng, cfg.alpha, span);
        let sys = *g.sys();
        let space = sys.space();
        let i = rng.gen_range(1..=span);
        let sig = g.signature(i).expect("represented map");
        let block = crate::clopen::ClopenSet::make(&space, vec![sys.block(i)])
            .expect("block interval");
        // Largest admissible witness, then a random bounded shrink.
        let extra = sampling::bounded_clopen_in_block(&mut rng, &sys, i, 3);
        let b = block.difference(&sig.q).difference(&extra);
        let (p, q) = signature_via_cofinal(&g, i, &b).expect("b meets the preconditions");
        let pair = ClassPair::new(p.homeo_class(), q.homeo_class());
        check.record(sim(&pair, &sig.pair), || {
            format!("instance {inst}, block {i}: witness pair {pair:?} vs {:?}", sig.pair)
        });
    }
    out.push(check);
    out
}

/// The cocycle identity for composite signatures.
pub fn verify_cocycle(cfg: &RunConfig, instances: u64) -> RunReport {
    let mut out = report(cfg, "verify lemma24");
    let mut check = CheckReport::new("cocycle");
    let mut rng = sampling::rng(cfg.seed);
    let span = cfg.blocks.min(20);
    for inst in 0..instances {
        let g = sampling::general_homeo(&mut rng, cfg.alpha, 6);
        let h = sampling::general_homeo(&mut rng, cfg.alpha, 6);
        for i in 1..=span {
            let outc = check_cocycle(&g, &h, i).expect("represented maps");
            check.record(outc.holds, || {
                format!(
                    "instance {inst}, block {i}: composite {:?} vs sum {:?}",
                    outc.composite, outc.sum
                )
            });
        }
    }
    out.push(check);
    out
}

/// `pi` turns composition into composition of block permutations.
pub fn verify_pi_homomorphism(cfg: &RunConfig, instances: u64) -> RunReport {
    let mut out = report(cfg, "verify pi");
    let mut check = CheckReport::new("pi-homomorphism");
    let mut rng = sampling::rng(cfg.seed);
    for inst in 0..instances {
        let g = sampling::general_homeo(&mut rng, cfg.alpha, 8);
        let h = sampling::general_homeo(&mut rng, cfg.alpha, 8);
        let gh = Homeo::compose(&g, &h);
        let mut ok = true;
        let mut first = String::new();
        for i in 1..=cfg.blocks {
            let lhs = gh.pi_of(i).expect("represented map");
            let rhs = g.pi_of(h.pi_of(i).expect("represented map")).expect("represented map");
            if lhs != rhs {
                ok = false;
                first = format!("instance {inst}, block {i}: {lhs} vs {rhs}");
                break;
            }
        }
        check.record(ok, || first);
    }
    out.push(check);
    out
}

fn random_targets(rng: &mut impl Rng, alpha: u64, support: u64) -> TargetFn {
    let mut map = BTreeMap::new();
    for i in 1..=support {
        if rng.gen_ratio(1, 2) {
            map.insert(i, sampling::class_pair(rng, alpha, 3));
        }
    }
    TargetFn::EventuallyTrivial(map)
}

/// Conjugation drives signatures to prescribed targets while keeping
/// `pi` trivial.
pub fn verify_signature_targets(cfg: &RunConfig, instances: u64) -> RunReport {
    let mut out = report(cfg, "verify lemma25");
    let mut check = CheckReport::new("signature-targets");
    let mut rng = sampling::rng(cfg.seed);
    let sigma = Perm::zigzag();
    let g = Homeo::lift(cfg.alpha, &sigma);
    let mut fs: Vec<TargetFn> = (0..instances)
        .map(|_| random_targets(&mut rng, cfg.alpha, 6))
        .collect();
    fs.push(TargetFn::Periodic(vec![
        sampling::class_pair(&mut rng, cfg.alpha, 2),
        ClassPair::zero(),
        sampling::class_pair(&mut rng, cfg.alpha, 2),
    ]));
    for (inst, f) in fs.into_iter().enumerate() {
        let h = match realize_conjugator(&g, f.clone(), &sigma, cfg.blocks) {
            Ok(h) => h,
            Err(e) => {
                check.record(false, || format!("instance {inst}: construction failed: {e}"));
                continue;
            }
        };
        let conj = Homeo::compose_all(&[&Homeo::inverse(&h), &g, &h]);
        let mut ok = true;
        let mut first = String::new();
        for i in 1..=cfg.blocks {
            let pi_ok = h.pi_of(i).expect("represented map") == i;
            let got = conj.signature(i).expect("represented map").pair;
            let want = f.at(i);
            if !(pi_ok && sim(&got, &want)) {
                ok = false;
                first = format!("instance {inst}, block {i}: got {got:?}, target {want:?}");
                break;
            }
        }
        check.record(ok, || first);
    }
    out.push(check);
    out
}

/// Full factorization certificates for randomized maps over the zigzag
/// cycle.
pub fn verify_factorization(cfg: &RunConfig, instances: u64) -> RunReport {
    let mut out = report(cfg, "verify lemma26");
    let mut check = CheckReport::new("factorization-certificate");
    let mut rng = sampling::rng(cfg.seed);
    let sigma = Perm::zigzag();
    for inst in 0..instances {
        let g = Homeo::compose(
            &sampling::chart_homeo(&mut rng, cfg.alpha, 4),
            &Homeo::lift(cfg.alpha, &sampling::finite_perm(&mut rng, 5)),
        );
        let seed = rng.gen::<u64>();
        match factor_certificate(&g, &sigma, cfg.blocks, cfg.samples, seed) {
            Ok(cert) => {
                let first = cert
                    .checks
                    .iter()
                    .find(|c| !c.passed())
                    .map(|c| {
                        format!(
                            "instance {inst}: check {} failed: {}",
                            c.name,
                            c.first_counterexample.clone().unwrap_or_default()
                        )
                    })
                    .unwrap_or_default();
                check.record(cert.pass, || first);
            }
            Err(e) => {
                check.record(false, || format!("instance {inst}: construction failed: {e}"));
            }
        }
    }
    out.push(check);
    out
}

/// Cross-check of the leading-term classifier against the iterated
/// derivative oracle.
pub fn verify_classifier_oracle(cfg: &RunConfig, instances: u64) -> RunReport {
    let mut out = report(cfg, "verify oracle");
    let mut check = CheckReport::new("classifier-oracle");
    let mut rng = sampling::rng(cfg.seed);
    let space = Space::new(Ordinal::omega_pow(4u64)).expect("power of omega");
    for inst in 0..instances {
        let u = sampling::clopen_below(&mut rng, &space, 4, 8, 6);
        let fast = u.homeo_class();
        let slow = u.homeo_class_by_derivatives();
        check.record(fast == slow, || {
            format!("instance {inst}: set {u} classed {fast} vs derivative {slow}")
        });
    }
    out.push(check);
    out
}
