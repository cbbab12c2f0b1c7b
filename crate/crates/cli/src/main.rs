//! `specht`: classify partitions, inspect the coherence oracle, and run
//! exhaustive cross-check sweeps.
//!
//! JSON records go to stdout one per line and human-readable text goes to
//! stderr. Exit codes: 0 on success or agreement, 1 when the two methods
//! disagree, 2 on a usage or parse error.

mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use specht_ext::classifier::{ext1_dim, h0_dim, sl2_ext_verdict};
use specht_ext::coherence::{build_relation_system, canonical_slot_order, nullspace};
use specht_ext::partitions::enumerate_partitions;
use specht_ext::{ext1_dim_oracle, Partition, Prime};

use report::{line, slots, BasisRecord, ClassifyRecord, MismatchRecord, Sl2Record, H1};

const EXIT_MISMATCH: u8 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "specht",
    version,
    about = "Low-degree cohomology of Specht modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute H⁰ and dim Ext¹_B for one partition.
    Classify {
        #[arg(long, value_parser = parse_prime)]
        p: Prime,
        /// Comma-separated non-increasing parts, e.g. 3,1,1.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Partition,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        /// Also print a JSON record on stdout.
        #[arg(long)]
        json: bool,
    },
    /// Classify every partition up to a degree bound, optionally checking
    /// each against the oracle.
    Sweep {
        #[arg(long, value_parser = parse_prime)]
        p: Prime,
        #[arg(long)]
        d_max: u64,
        /// Largest number of parts; defaults to the degree, i.e. no limit.
        /// Oracle cost grows quickly with the largest part, so this is the
        /// usual knob for keeping large sweeps affordable.
        #[arg(long)]
        parts_max: Option<usize>,
        /// Compare with the oracle; print only mismatches and exit 1 if any.
        #[arg(long)]
        check: bool,
        /// Worker threads; 0 picks the number of available cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Print a basis of the coherent multi-sequences computed by the oracle.
    Basis {
        #[arg(long, value_parser = parse_prime)]
        p: Prime,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Partition,
        /// Also print the tagged relation system.
        #[arg(long)]
        dump_system: bool,
        #[arg(long)]
        json: bool,
    },
    /// dim Ext¹ between induced SL₂ modules of highest weights r and s.
    Sl2 {
        #[arg(long, value_parser = parse_prime)]
        p: Prime,
        r: u64,
        s: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Oracle,
    Both,
}

fn parse_prime(s: &str) -> Result<Prime, String> {
    let q: u64 = s
        .trim()
        .parse()
        .map_err(|e| format!("{s:?} is not an integer: {e}"))?;
    Prime::new(q).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify {
            p,
            lambda,
            method,
            json,
        } => classify(p, &lambda, method, json),
        Command::Sweep {
            p,
            d_max,
            parts_max,
            check,
            jobs,
        } => sweep(p, d_max, parts_max.unwrap_or(d_max as usize), check, jobs),
        Command::Basis {
            p,
            lambda,
            dump_system,
            json,
        } => basis(p, &lambda, dump_system, json),
        Command::Sl2 { p, r, s, json } => sl2(p, r, s, json),
    }
}

fn h1_relation(exact: bool) -> &'static str {
    if exact {
        "="
    } else {
        "≥"
    }
}

fn classify(p: Prime, lambda: &Partition, method: Method, json: bool) -> ExitCode {
    let closed = (method != Method::Oracle).then(|| ext1_dim(lambda, p));
    let oracle = (method != Method::Closed).then(|| ext1_dim_oracle(lambda, p));
    let h0 = h0_dim(lambda, p);
    let exact = p.get() != 2;

    eprintln!("λ = {lambda}, p = {p}");
    eprintln!("dim H⁰ = {h0}");
    if let Some(c) = &closed {
        eprintln!("dim Ext¹_B = {} (closed form)", c.ext1_dim);
    }
    if let Some(o) = oracle {
        eprintln!("dim Ext¹_B = {o} (oracle)");
    }
    let value = closed
        .as_ref()
        .map_or_else(|| oracle.unwrap_or(0), |c| c.ext1_dim);
    eprintln!("dim H¹ {} {value}", h1_relation(exact));
    if let Some(c) = &closed {
        eprintln!("case: {}", c.case_tag);
        if let Some(w) = &c.witness {
            eprintln!("witness:");
            for slot in slots(w, lambda) {
                eprintln!("  y({},{})_{} = {}", slot.r, slot.s, slot.i, slot.v);
            }
        }
    }

    let agree = match (&closed, oracle) {
        (Some(c), Some(o)) => c.ext1_dim == o,
        _ => true,
    };
    if !agree {
        eprintln!("MISMATCH: closed form and oracle disagree");
    }

    if json {
        let record = ClassifyRecord {
            p: p.get(),
            lambda: lambda.parts().to_vec(),
            h0,
            ext1_b: value,
            h1: H1 { value, exact },
            case: closed
                .as_ref()
                .map_or_else(|| "oracle".to_string(), |c| c.case_tag.to_string()),
            witness: closed
                .as_ref()
                .and_then(|c| c.witness.as_ref())
                .map(|w| slots(w, lambda)),
        };
        println!("{}", line(&record));
    }

    ExitCode::from(status(agree))
}

enum Outcome {
    Classified(ClassifyRecord),
    Mismatch(MismatchRecord),
    Agreed,
}

fn sweep_one(lambda: &Partition, p: Prime, check: bool) -> Outcome {
    let c = ext1_dim(lambda, p);
    if !check {
        return Outcome::Classified(ClassifyRecord {
            p: p.get(),
            lambda: lambda.parts().to_vec(),
            h0: c.h0,
            ext1_b: c.ext1_dim,
            h1: H1 {
                value: c.ext1_dim,
                exact: c.h1_exact,
            },
            case: c.case_tag.to_string(),
            witness: c.witness.as_ref().map(|w| slots(w, lambda)),
        });
    }
    let oracle = ext1_dim_oracle(lambda, p);
    if oracle == c.ext1_dim {
        Outcome::Agreed
    } else {
        Outcome::Mismatch(MismatchRecord {
            p: p.get(),
            lambda: lambda.parts().to_vec(),
            classifier_dim: c.ext1_dim,
            oracle_dim: oracle,
            case: c.case_tag.to_string(),
        })
    }
}

fn sweep(p: Prime, d_max: u64, parts_max: usize, check: bool, jobs: usize) -> ExitCode {
    let start = Instant::now();
    let work: Vec<Partition> = (0..=d_max)
        .flat_map(|d| enumerate_partitions(d, parts_max))
        .collect();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    };
    // An indexed parallel collect keeps results in enumeration order.
    let outcomes: Vec<Outcome> =
        pool.install(|| work.par_iter().map(|l| sweep_one(l, p, check)).collect());

    let lines = render(&outcomes);
    for l in &lines {
        println!("{l}");
    }
    let mismatches = count_mismatches(&outcomes);
    let elapsed = start.elapsed();
    if check {
        eprintln!(
            "p = {p}, degree ≤ {d_max}, at most {parts_max} parts: {} partitions, {mismatches} mismatches, {:.2?}",
            work.len(),
            elapsed
        );
    } else {
        eprintln!(
            "p = {p}, degree ≤ {d_max}, at most {parts_max} parts: {} partitions classified, {:.2?}",
            work.len(),
            elapsed
        );
    }
    ExitCode::from(status(mismatches == 0))
}

/// Stdout lines for a sweep, in the order of `outcomes`.
fn render(outcomes: &[Outcome]) -> Vec<String> {
    outcomes
        .iter()
        .filter_map(|o| match o {
            Outcome::Classified(record) => Some(line(record)),
            Outcome::Mismatch(record) => Some(line(record)),
            Outcome::Agreed => None,
        })
        .collect()
}

fn count_mismatches(outcomes: &[Outcome]) -> usize {
    outcomes
        .iter()
        .filter(|o| matches!(o, Outcome::Mismatch(_)))
        .count()
}

fn status(agree: bool) -> u8 {
    if agree {
        0
    } else {
        EXIT_MISMATCH
    }
}

fn basis(p: Prime, lambda: &Partition, dump_system: bool, json: bool) -> ExitCode {
    let system = build_relation_system(lambda, p);
    if dump_system {
        eprint!("{}", system.dump());
    }
    let vectors = nullspace(&system);
    let order = canonical_slot_order(lambda);
    eprintln!("λ = {lambda}, p = {p}");
    eprintln!("dim E(λ) = {}", vectors.len());
    for (k, v) in vectors.iter().enumerate() {
        eprintln!("vector {}:", k + 1);
        for (slot, x) in order.iter().zip(&v.values) {
            eprintln!("  {slot} = {x}");
        }
    }
    if json {
        let record = BasisRecord {
            p: p.get(),
            lambda: lambda.parts().to_vec(),
            dim: vectors.len(),
            basis: vectors.iter().map(|v| slots(v, lambda)).collect(),
        };
        println!("{}", line(&record));
    }
    ExitCode::SUCCESS
}

fn sl2(p: Prime, r: u64, s: u64, json: bool) -> ExitCode {
    let (ext1, reason) = sl2_ext_verdict(r, s, p);
    eprintln!("dim Ext¹_SL₂(∇({r}), ∇({s})) = {ext1} at p = {p} ({reason})");
    if json {
        let record = Sl2Record {
            p: p.get(),
            r,
            s,
            ext1,
            reason: reason.to_string(),
        };
        println!("{}", line(&record));
    }
    ExitCode::SUCCESS
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatches_are_reported_and_fail_the_run() {
        let bad = MismatchRecord {
            p: 3,
            lambda: vec![2, 1],
            classifier_dim: 1,
            oracle_dim: 0,
            case: "two-part".into(),
        };
        let outcomes = vec![Outcome::Agreed, Outcome::Mismatch(bad), Outcome::Agreed];
        assert_eq!(count_mismatches(&outcomes), 1);
        assert_eq!(
            render(&outcomes),
            [r#"{"p":3,"lambda":[2,1],"classifier_dim":1,"oracle_dim":0,"case":"two-part"}"#]
        );
        assert_eq!(status(false), 1);
        assert_eq!(status(true), 0);
    }

    #[test]
    fn agreement_prints_nothing_in_check_mode() {
        let p = Prime::new(3).unwrap();
        let outcomes: Vec<Outcome> = enumerate_partitions(6, 6)
            .map(|l| sweep_one(&l, p, true))
            .collect();
        assert!(render(&outcomes).is_empty());
        assert_eq!(count_mismatches(&outcomes), 0);
    }
}
