//! Command line surface: expression queries, homeomorphism spec files,
//! and seeded verification campaigns with machine-readable reports.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse
//! error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::cmp::Ordering;
use std::process::ExitCode;

use superatomic::campaigns::{self, RunConfig};
use superatomic::clopen::{parse_clopen, Atoms, Space};
use superatomic::homeo::{parse_homeo, Homeo};
use superatomic::ordinal::Ordinal;
use superatomic::report::{CheckReport, RunReport};
use superatomic::sampling;
use superatomic::sigcalc::{signed, sim, ClassPair};

#[derive(Parser)]
#[command(name = "superatomic", version, about = "Exact combinatorics of countable compact ordinal spaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Ordinal arithmetic in Cantor normal form.
    Ord {
        #[command(subcommand)]
        op: OrdOp,
    },
    /// Clopen set queries in the interval space [1, delta].
    Clopen {
        #[command(subcommand)]
        op: ClopenOp,
    },
    /// Signature pair calculus.
    Sig {
        #[command(subcommand)]
        op: SigOp,
    },
    /// Queries against a homeomorphism spec file.
    Homeo {
        #[command(subcommand)]
        op: HomeoOp,
    },
    /// Seeded verification campaigns.
    Verify {
        #[command(subcommand)]
        op: VerifyOp,
    },
    /// Worked demonstrations.
    Demo {
        #[command(subcommand)]
        op: DemoOp,
    },
}

#[derive(Subcommand)]
enum OrdOp {
    /// Parse an ordinal literal and print its canonical form.
    Eval { expr: String },
    Add { a: String, b: String },
    Mul { a: String, b: String },
    /// Left subtraction: the unique c with a + c = b (requires a <= b).
    Sub { a: String, b: String },
    /// Prints "<", "=", or ">".
    Cmp { a: String, b: String },
}

#[derive(Subcommand)]
enum ClopenOp {
    /// Homeomorphism class of the set.
    Class {
        set: String,
        #[arg(long, default_value = "w^4")]
        delta: String,
    },
    /// Order type of the set.
    Type {
        set: String,
        #[arg(long, default_value = "w^4")]
        delta: String,
    },
    /// Cantor-Bendixson derivative.
    Derive {
        set: String,
        #[arg(long, default_value = "w^4")]
        delta: String,
    },
    /// Canonical representative modulo the rank ideal I_beta.
    Quotient {
        set: String,
        #[arg(long, default_value = "w^4")]
        delta: String,
        #[arg(long, default_value_t = 1)]
        beta: u64,
    },
    /// Number of isolated points.
    Atoms {
        set: String,
        #[arg(long, default_value = "w^4")]
        delta: String,
    },
}

#[derive(Subcommand)]
enum SigOp {
    /// Exchange equivalence of two class pairs.
    Sim { a: String, b: String },
    Add { a: String, b: String },
    /// Canonical signed form of a class pair.
    Signed { a: String },
}

#[derive(Subcommand)]
enum HomeoOp {
    /// Apply the map to a point.
    Eval {
        file: String,
        point: String,
        #[arg(long, default_value_t = 1)]
        alpha: u64,
    },
    /// Induced block index image.
    Pi {
        file: String,
        index: u64,
        #[arg(long, default_value_t = 1)]
        alpha: u64,
    },
    /// Signature pair at a block.
    Sig {
        file: String,
        index: u64,
        #[arg(long, default_value_t = 1)]
        alpha: u64,
    },
    /// Round-trip and block-action sanity checks.
    Check {
        file: String,
        #[arg(long, default_value_t = 1)]
        alpha: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        blocks: u64,
        #[arg(long, default_value_t = 200)]
        samples: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum VerifyOp {
    /// Zone copies commute with zone conjugation.
    Lemma21(VerifyArgs),
    /// Signatures through cofinal witness sets.
    Lemma23(VerifyArgs),
    /// The cocycle identity for composites.
    Lemma24(VerifyArgs),
    /// Conjugation to prescribed signature targets.
    Lemma25(VerifyArgs),
    /// Four-factor certificates.
    Lemma26(VerifyArgs),
    /// Classifier cross-check campaign.
    Oracle(VerifyArgs),
}

#[derive(Subcommand)]
enum DemoOp {
    /// Factor a perturbed block cycle and print the certificate.
    Factor {
        #[command(flatten)]
        run: VerifyArgs,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    alpha: u64,
    #[arg(long, default_value_t = 1)]
    degree: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Block index bound for per-block checks.
    #[arg(long)]
    blocks: Option<u64>,
    /// Sample point budget per instance.
    #[arg(long)]
    samples: Option<u64>,
    /// Number of randomized instances.
    #[arg(long)]
    instances: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

impl VerifyArgs {
    fn config(&self, blocks: u64, samples: u64) -> RunConfig {
        RunConfig {
            alpha: self.alpha,
            degree: self.degree,
            seed: self.seed,
            blocks: self.blocks.unwrap_or(blocks),
            samples: self.samples.unwrap_or(samples),
        }
    }
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit(report: &RunReport, format: Format) -> ExitCode {
    match format {
        Format::Text => println!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn ord_cmd(op: OrdOp) -> ExitCode {
    let parse = |s: &str| s.parse::<Ordinal>().map_err(|e| e.to_string());
    let result = match op {
        OrdOp::Eval { expr } => parse(&expr).map(|a| a.to_string()),
        OrdOp::Add { a, b } => parse(&a).and_then(|a| Ok(a.add(&parse(&b)?).to_string())),
        OrdOp::Mul { a, b } => parse(&a).and_then(|a| Ok(a.mul(&parse(&b)?).to_string())),
        OrdOp::Sub { a, b } => parse(&a).and_then(|a| {
            parse(&b).and_then(|b| a.left_sub(&b).map(|c| c.to_string()).map_err(|e| e.to_string()))
        }),
        OrdOp::Cmp { a, b } => parse(&a).and_then(|a| {
            Ok(match a.cmp(&parse(&b)?) {
                Ordering::Less => "<",
                Ordering::Equal => "=",
                Ordering::Greater => ">",
            }
            .to_string())
        }),
    };
    match result {
        Ok(s) => {
            println!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => usage(e),
    }
}

fn clopen_cmd(op: ClopenOp) -> ExitCode {
    let (set, delta, action): (&str, &str, Box<dyn Fn(&superatomic::clopen::ClopenSet) -> String>) =
        match &op {
            ClopenOp::Class { set, delta } => (set, delta, Box::new(|u| u.homeo_class().to_string())),
            ClopenOp::Type { set, delta } => (set, delta, Box::new(|u| u.order_type().to_string())),
            ClopenOp::Derive { set, delta } => {
                (set, delta, Box::new(|u| u.cb_derivative().to_string()))
            }
            ClopenOp::Quotient { set, delta, beta } => {
                let beta = *beta;
                (set, delta, Box::new(move |u| u.quotient_project(beta).to_string()))
            }
            ClopenOp::Atoms { set, delta } => (
                set,
                delta,
                Box::new(|u| match u.num_atoms() {
                    Atoms::Finite(n) => n.to_string(),
                    Atoms::Infinite => "infinite".to_string(),
                }),
            ),
        };
    let space = match delta.parse::<Ordinal>().map_err(|e| e.to_string()).and_then(|d| {
        Space::new(d).map_err(|e| e.to_string())
    }) {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    match parse_clopen(&space, set) {
        Ok(u) => {
            println!("{}", action(&u));
            ExitCode::SUCCESS
        }
        Err(e) => usage(e),
    }
}

fn sig_cmd(op: SigOp) -> ExitCode {
    let parse = |s: &str| s.parse::<ClassPair>();
    let result = match op {
        SigOp::Sim { a, b } => {
            parse(&a).and_then(|a| Ok(sim(&a, &parse(&b)?).to_string()))
        }
        SigOp::Add { a, b } => parse(&a).and_then(|a| Ok(a.add(&parse(&b)?).to_string())),
        SigOp::Signed { a } => parse(&a).map(|a| signed(&a).to_string()),
    };
    match result {
        Ok(s) => {
            println!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => usage(e),
    }
}

fn load_homeo(alpha: u64, file: &str) -> Result<Homeo, String> {
    if alpha < 1 {
        return Err("alpha must be at least 1".into());
    }
    let text = std::fs::read_to_string(file).map_err(|e| format!("{file}: {e}"))?;
    parse_homeo(alpha, &text).map_err(|e| e.to_string())
}

fn homeo_cmd(op: HomeoOp) -> ExitCode {
    match op {
        HomeoOp::Eval { file, point, alpha } => {
            let g = match load_homeo(alpha, &file) {
                Ok(g) => g,
                Err(e) => return usage(e),
            };
            let x = match point.parse::<Ordinal>() {
                Ok(x) => x,
                Err(e) => return usage(e),
            };
            match g.eval(&x) {
                Ok(y) => {
                    println!("{y}");
                    ExitCode::SUCCESS
                }
                Err(e) => usage(e),
            }
        }
        HomeoOp::Pi { file, index, alpha } => match load_homeo(alpha, &file)
            .and_then(|g| g.pi_of(index).map_err(|e| e.to_string()))
        {
            Ok(n) => {
                println!("{n}");
                ExitCode::SUCCESS
            }
            Err(e) => usage(e),
        },
        HomeoOp::Sig { file, index, alpha } => match load_homeo(alpha, &file)
            .and_then(|g| g.signature(index).map_err(|e| e.to_string()))
        {
            Ok(s) => {
                println!("{}", s.pair);
                ExitCode::SUCCESS
            }
            Err(e) => usage(e),
        },
        HomeoOp::Check { file, alpha, seed, blocks: bound, samples, format } => {
            let g = match load_homeo(alpha, &file) {
                Ok(g) => g,
                Err(e) => return usage(e),
            };
            if bound < 1 || samples < 1 {
                return usage("blocks and samples must be at least 1");
            }
            let mut report = RunReport::new("homeo check", alpha, 1, seed);
            let mut round = CheckReport::new("eval-roundtrip");
            let mut rng = sampling::rng(seed);
            let sys = *g.sys();
            for _ in 0..samples {
                let i = rand::Rng::gen_range(&mut rng, 1..=bound);
                let x = sampling::point_in_block(&mut rng, &sys, i);
                match g.eval(&x).and_then(|y| g.eval_inv(&y)) {
                    Ok(back) => round.record(back == x, || format!("x = {x} round-trips to {back}")),
                    Err(e) => round.record(false, || format!("x = {x}: {e}")),
                }
            }
            report.push(round);
            let mut blocks = CheckReport::new("block-action-total");
            for i in 1..=bound {
                match g.pi_of(i) {
                    Ok(_) => blocks.record(true, String::new),
                    Err(e) => blocks.record(false, || format!("block {i}: {e}")),
                }
            }
            report.push(blocks);
            emit(&report, format)
        }
    }
}

fn verify_cmd(op: VerifyOp) -> ExitCode {
    // Per-campaign defaults: (blocks, samples, instances).
    let (args, blocks, samples, instances): (&VerifyArgs, u64, u64, u64) = match &op {
        VerifyOp::Lemma21(a) => (a, 12, 200, 10),
        VerifyOp::Lemma23(a) => (a, 8, 100, 50),
        VerifyOp::Lemma24(a) => (a, 20, 100, 20),
        VerifyOp::Lemma25(a) => (a, 40, 100, 10),
        VerifyOp::Lemma26(a) => (a, 30, 500, 3),
        VerifyOp::Oracle(a) => (a, 1, 100, 1000),
    };
    let cfg = args.config(blocks, samples);
    if let Err(e) = cfg.validate() {
        return usage(e);
    }
    let instances = args.instances.unwrap_or(instances);
    let report = match op {
        VerifyOp::Lemma21(_) => campaigns::verify_copy_conjugation(&cfg, instances),
        VerifyOp::Lemma23(_) => campaigns::verify_cofinal_reduction(&cfg, instances),
        VerifyOp::Lemma24(_) => campaigns::verify_cocycle(&cfg, instances),
        VerifyOp::Lemma25(_) => campaigns::verify_signature_targets(&cfg, instances),
        VerifyOp::Lemma26(_) => campaigns::verify_factorization(&cfg, instances),
        VerifyOp::Oracle(_) => campaigns::verify_classifier_oracle(&cfg, instances),
    };
    let format = match &op {
        VerifyOp::Lemma21(a)
        | VerifyOp::Lemma23(a)
        | VerifyOp::Lemma24(a)
        | VerifyOp::Lemma25(a)
        | VerifyOp::Lemma26(a)
        | VerifyOp::Oracle(a) => a.format,
    };
    emit(&report, format)
}

fn demo_cmd(op: DemoOp) -> ExitCode {
    let DemoOp::Factor { run } = op;
    let cfg = run.config(10, 200);
    if let Err(e) = cfg.validate() {
        return usage(e);
    }
    use superatomic::constructions::factor_certificate;
    use superatomic::homeo::Perm;
    let mut rng = sampling::rng(cfg.seed);
    let g = Homeo::compose(
        &sampling::chart_homeo(&mut rng, cfg.alpha, 3),
        &Homeo::lift(cfg.alpha, &Perm::zigzag()),
    );
    let cert = match factor_certificate(&g, &Perm::zigzag(), cfg.blocks, cfg.samples, cfg.seed) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let mut report = RunReport::new("demo factor", cfg.alpha, cfg.degree, cfg.seed);
    for c in cert.checks {
        report.push(c);
    }
    if matches!(run.format, Format::Text) {
        println!("factoring a perturbed block cycle over alpha = {}", cfg.alpha);
        for (i, d) in cert.envelopes.iter().enumerate().take(4) {
            println!("envelope D_{}: {d}", i + 1);
        }
        for i in 1..=4 {
            println!(
                "block {i}: pi(h) = {}, pi(k) = {}, pi(w') = {}",
                cert.h.pi_of(i).unwrap(),
                cert.k.pi_of(i).unwrap(),
                cert.w.pi_of(i).unwrap()
            );
        }
    }
    emit(&report, run.format)
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Ord { op } => ord_cmd(op),
        Cmd::Clopen { op } => clopen_cmd(op),
        Cmd::Sig { op } => sig_cmd(op),
        Cmd::Homeo { op } => homeo_cmd(op),
        Cmd::Verify { op } => verify_cmd(op),
        Cmd::Demo { op } => demo_cmd(op),
    }
}
