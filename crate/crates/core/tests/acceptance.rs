//! Acceptance gate: one check per criterion, each printing a single
//! pass/fail line with its instance count and staying inside its time
//! budget.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::Rng;
use superatomic::campaigns::{self, RunConfig};
use superatomic::clopen::{ClopenSet, HomeoClass, Space};
use superatomic::homeo::{build_homeo_between, interval_type};
use superatomic::ordinal::Ordinal;
use superatomic::report::RunReport;
use superatomic::sampling;
use superatomic::sigcalc::{sim, ClassPair};

fn conclude(name: &str, ok: bool, instances: u64, elapsed: Duration, budget: Duration) {
    let verdict = if ok && elapsed <= budget { "pass" } else { "fail" };
    println!("{name}: {verdict} ({instances} instances, {:.2}s)", elapsed.as_secs_f64());
    assert!(ok, "{name} found a counterexample");
    assert!(elapsed <= budget, "{name} exceeded its {budget:?} budget");
}

fn report_ok(r: &RunReport) -> bool {
    r.pass
}

fn report_instances(r: &RunReport) -> u64 {
    r.checks.iter().map(|c| c.instances).sum()
}

#[test]
fn ordinal_laws() {
    let start = Instant::now();
    let mut rng = sampling::rng(101);
    let n = 10_000;
    let mut ok = true;
    for _ in 0..n {
        let a = sampling::ordinal_below(&mut rng, 6, 20);
        let b = sampling::ordinal_below(&mut rng, 6, 20);
        let c = sampling::ordinal_below(&mut rng, 6, 20);
        ok &= a.add(&b).add(&c) == a.add(&b.add(&c));
        ok &= a.mul(&b).mul(&c) == a.mul(&b.mul(&c));
        ok &= a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c));
        let zero = Ordinal::zero();
        let one = Ordinal::from_nat(BigUint::from(1u32));
        ok &= a.add(&zero) == a && zero.add(&a) == a;
        ok &= a.mul(&one) == a && one.mul(&a) == a;
        let sum = a.add(&b);
        ok &= a.add(&a.left_sub(&sum).expect("a <= a + b")) == sum;
        ok &= a.to_string().parse::<Ordinal>().expect("canonical print") == a;
        if !ok {
            break;
        }
    }
    conclude("ordinal-laws", ok, n, start.elapsed(), Duration::from_secs(10));
}

#[test]
fn classifier_oracle() {
    let start = Instant::now();
    let cfg = RunConfig { alpha: 1, degree: 1, seed: 102, blocks: 1, samples: 1 };
    let r = campaigns::verify_classifier_oracle(&cfg, 1000);
    conclude(
        "classifier-oracle",
        report_ok(&r),
        report_instances(&r),
        start.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn quotient_homomorphism() {
    let start = Instant::now();
    let mut rng = sampling::rng(103);
    let space = Space::new(Ordinal::omega_pow(4u64)).expect("power of omega");
    let mut ok = true;
    let mut n = 0;
    for beta in 1..=3u64 {
        for _ in 0..500 {
            n += 1;
            let u = sampling::clopen_below(&mut rng, &space, 4, 6, 5);
            let v = sampling::clopen_below(&mut rng, &space, 4, 6, 5);
            let p = |s: &ClopenSet| s.quotient_project(beta);
            ok &= p(&u.union(&v)) == p(&u).union(&p(&v));
            ok &= p(&u.intersect(&v)) == p(&u).intersect(&p(&v));
            ok &= p(&u.complement()) == p(&u).complement();
            ok &= p(&u).is_empty() == u.in_ideal(beta);
            if !ok {
                break;
            }
        }
    }
    for alpha in 1..=3u64 {
        for a in 1..=4u64 {
            n += 1;
            let delta = Ordinal::omega_pow_times(alpha, BigUint::from(a));
            let sp = Space::new(delta).expect("valid delta");
            ok &= sp.algebra_rank_degree().expect("rank and degree")
                == (BigUint::from(alpha), BigUint::from(a));
        }
    }
    conclude("quotient-homomorphism", ok, n, start.elapsed(), Duration::from_secs(30));
}

/// Random set of class exactly `(r, d)`: lower-grade noise plus `d`
/// windows each ending at a multiple of `w^r`.
fn set_with_class(rng: &mut impl Rng, space: &Space, r: u64, d: u64) -> ClopenSet {
    let mut ivs: Vec<(Ordinal, Ordinal)> = Vec::new();
    if r == 0 {
        let mut x = Ordinal::zero();
        for _ in 0..d {
            x = x.add(&sampling::ordinal_below(rng, 1, 9).succ());
            ivs.push((x.clone(), x.succ()));
            x = x.succ();
        }
    } else {
        let noise = sampling::clopen_below(rng, space, r, 3, 4);
        ivs.extend(noise.intervals().iter().cloned());
        let step = Ordinal::omega_pow(r);
        for j in 1..=d {
            let base = step.mul(&Ordinal::from_nat(BigUint::from(2 * j - 1)));
            let lo = base.add(&sampling::ordinal_below(rng, r, 4));
            let hi = step.mul(&Ordinal::from_nat(BigUint::from(2 * j)));
            ivs.push((lo, hi));
        }
    }
    ClopenSet::make(space, ivs).expect("constructed intervals are ordered")
}

#[test]
fn chart_between() {
    let start = Instant::now();
    let mut rng = sampling::rng(104);
    let space = Space::new(Ordinal::omega_pow(4u64)).expect("power of omega");
    let mut ok = true;
    let n = 500;
    for _ in 0..n {
        let r = rng.gen_range(0..=2u64);
        let d = rng.gen_range(1..=3u64);
        let u = set_with_class(&mut rng, &space, r, d);
        let v = set_with_class(&mut rng, &space, r, d);
        assert_eq!(u.homeo_class(), v.homeo_class());
        let chart = build_homeo_between(&u, &v).expect("equal classes");
        let mut src_cover = space.empty();
        let mut dst_cover = space.empty();
        for p in chart.pieces() {
            ok &= interval_type(&p.src) == interval_type(&p.dst);
            let s = ClopenSet::make(&space, vec![p.src.clone()]).expect("interval");
            let t = ClopenSet::make(&space, vec![p.dst.clone()]).expect("interval");
            ok &= s.intersect(&src_cover).is_empty();
            ok &= t.intersect(&dst_cover).is_empty();
            src_cover = src_cover.union(&s);
            dst_cover = dst_cover.union(&t);
            // Endpoint bijectivity: first and last point of each piece
            // land on the corresponding endpoints of its target.
            ok &= p.apply(&p.src.0.succ()) == Some(p.dst.0.succ());
            ok &= p.apply(&p.src.1) == Some(p.dst.1.clone());
        }
        ok &= src_cover == u && dst_cover == v;
        if !ok {
            break;
        }
    }
    conclude("chart-between", ok, n, start.elapsed(), Duration::from_secs(30));
}

#[test]
fn cofinal_reduction() {
    let start = Instant::now();
    let mut ok = true;
    let mut n = 0;
    for alpha in 1..=3u64 {
        let cfg = RunConfig { alpha, degree: 1, seed: 105 + alpha, blocks: 8, samples: 1 };
        let r = campaigns::verify_cofinal_reduction(&cfg, 67);
        ok &= report_ok(&r);
        n += report_instances(&r);
    }
    conclude("cofinal-reduction", ok, n, start.elapsed(), Duration::from_secs(60));
}

#[test]
fn cocycle() {
    let start = Instant::now();
    let mut ok = true;
    let mut n = 0;
    for alpha in 1..=3u64 {
        let cfg = RunConfig { alpha, degree: 1, seed: 106 + alpha, blocks: 20, samples: 1 };
        let r = campaigns::verify_cocycle(&cfg, 67);
        ok &= report_ok(&r);
        n += 67;
    }
    conclude("cocycle", ok, n, start.elapsed(), Duration::from_secs(60));
}

#[test]
fn signature_targets() {
    let start = Instant::now();
    let cfg = RunConfig { alpha: 2, degree: 1, seed: 107, blocks: 40, samples: 1 };
    let r = campaigns::verify_signature_targets(&cfg, 50);
    conclude(
        "signature-targets",
        report_ok(&r),
        report_instances(&r),
        start.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn copy_conjugation() {
    let start = Instant::now();
    let cfg = RunConfig { alpha: 1, degree: 1, seed: 108, blocks: 12, samples: 500 };
    let r = campaigns::verify_copy_conjugation(&cfg, 50);
    conclude(
        "copy-conjugation",
        report_ok(&r),
        report_instances(&r),
        start.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn factorization_certificate() {
    let start = Instant::now();
    let cfg = RunConfig { alpha: 2, degree: 1, seed: 109, blocks: 30, samples: 1000 };
    let r = campaigns::verify_factorization(&cfg, 25);
    conclude(
        "factorization-certificate",
        report_ok(&r),
        report_instances(&r),
        start.elapsed(),
        Duration::from_secs(120),
    );
}

#[test]
fn pi_homomorphism() {
    let start = Instant::now();
    let cfg = RunConfig { alpha: 2, degree: 1, seed: 110, blocks: 50, samples: 1 };
    let r = campaigns::verify_pi_homomorphism(&cfg, 200);
    conclude(
        "pi-homomorphism",
        report_ok(&r),
        report_instances(&r),
        start.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn nontransitivity_witness() {
    let start = Instant::now();
    let a = ClassPair::new(HomeoClass::new(1u32, 1u32), HomeoClass::Empty);
    let b = ClassPair::new(HomeoClass::new(2u32, 1u32), HomeoClass::new(2u32, 1u32));
    let c = ClassPair::new(HomeoClass::Empty, HomeoClass::Empty);
    let ok = sim(&a, &b) && sim(&b, &c) && !sim(&a, &c);
    conclude("nontransitivity-witness", ok, 1, start.elapsed(), Duration::from_secs(10));
}
