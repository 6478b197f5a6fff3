//! Command-line front end for `hjplumb`.

pub mod census;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use thiserror::Error;

use hjplumb::cfrac::{cf_dual, cf_eval, cf_expand, cf_reverse, CfString};
use hjplumb::lisca::{
    fillings, fillings_with_euler, verify_theorem1_capped, LensSpace, VerifyStatus,
    DEFAULT_VERIFY_CAP,
};
use hjplumb::palf::{
    boundary_h1_palf, euler_char_palf, h1_total, key_pair_check, seed_abcdef_system,
    seed_substitution_chain, seed_x_system, Factorization,
};
use hjplumb::plumbing::exotic::{assert_report, dataset, gram_report};
use hjplumb::plumbing::{meridian_presentation, AbelianGroup, PlumbingTree, Presentation};
use hjplumb::properties::run_property_suite;
use hjplumb::Rational;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] hjplumb::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(hjplumb::Error::NotAdmissible { .. }) => 3,
            _ => 2,
        }
    }
}

/// What a successful run found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Mismatch,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Mismatch => 1,
        }
    }

    fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Ok
        } else {
            Status::Mismatch
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hjplumb",
    version,
    about = "Continued fractions, lens space fillings and plumbing homology"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct JsonFlag {
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Continued fraction arithmetic.
    #[command(subcommand)]
    Cf(CfCommand),
    /// Minimal symplectic fillings of L(p,q).
    Fillings {
        p: i64,
        q: i64,
        /// Only fillings with this Euler characteristic.
        #[arg(long)]
        k: Option<i64>,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Write a CSV census of all lens spaces up to `--pmax`.
    Census {
        #[arg(long)]
        pmax: i64,
        /// Euler characteristic of the witness column.
        #[arg(long, default_value_t = 2)]
        k: i64,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run a built-in verification suite.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Plumbing tree invariants.
    #[command(subcommand)]
    Tree(TreeCommand),
    /// Abelianize a group presentation.
    Abelianize {
        file: PathBuf,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Lefschetz fibration factorizations.
    #[command(subcommand)]
    Palf(PalfCommand),
}

#[derive(Debug, Subcommand)]
pub enum CfCommand {
    /// Evaluate a string exactly.
    Eval {
        #[arg(allow_hyphen_values = true)]
        string: CfString,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Expansion of a rational above 1, such as 45/26.
    Expand {
        value: Rational,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Dual expansion string.
    Dual {
        string: CfString,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Reverse a string.
    Reverse {
        #[arg(allow_hyphen_values = true)]
        string: CfString,
        #[command(flatten)]
        json: JsonFlag,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Compare 2-replaceable plumbings with the generated families.
    Theorem1 {
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 7)]
        max_entry: i64,
        /// Stop after examining this many sequences.
        #[arg(long, default_value_t = DEFAULT_VERIFY_CAP)]
        cap: usize,
    },
    /// Exhaustive continued fraction identities.
    Lemmas {
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 6)]
        max_entry: i64,
        #[arg(long, default_value_t = 9)]
        max_zero_len: usize,
    },
    /// Seed fibration: Euler characteristics and boundary homology.
    PalfSeed,
    /// Pairings, abelianization and Gram data of the exotic construction.
    Section3,
}

#[derive(Debug, Subcommand)]
pub enum TreeCommand {
    /// chi, sigma, det and boundary H1 of a tree file.
    Invariants {
        file: PathBuf,
        #[command(flatten)]
        json: JsonFlag,
    },
}

#[derive(Debug, Subcommand)]
pub enum PalfCommand {
    /// Compare the boundaries of a c-side and b-side factorization.
    Check {
        c_side: PathBuf,
        b_side: PathBuf,
        #[command(flatten)]
        json: JsonFlag,
    },
    /// Euler characteristic and homology of one factorization.
    Invariants {
        file: PathBuf,
        #[command(flatten)]
        json: JsonFlag,
    },
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.display().to_string(),
        source,
    })
}

fn emit(out: &mut dyn Write, mut v: Value) -> Result<(), CliError> {
    v["schema"] = json!(SCHEMA);
    writeln!(out, "{v}")?;
    Ok(())
}

fn entries(s: &CfString) -> Value {
    json!({ "entries": s.entries() })
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Status, CliError> {
    match cli.command {
        Command::Cf(op) => run_cf(op, out),
        Command::Fillings { p, q, k, json } => run_fillings(p, q, k, json.json, out),
        Command::Census {
            pmax,
            k,
            out: path,
            jobs,
        } => {
            let jobs =
                jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let rows = census::census(pmax, k, jobs)?;
            census::write_csv(&path, &rows)?;
            writeln!(out, "wrote {} rows to {}", rows.len(), path.display())?;
            Ok(Status::Ok)
        }
        Command::Verify(v) => run_verify(v, out),
        Command::Tree(TreeCommand::Invariants { file, json }) => {
            let tree: PlumbingTree = read_json(&file)?;
            let inv = tree.invariants();
            if json.json {
                emit(out, serde_json::to_value(&inv).expect("serializable"))?;
            } else {
                writeln!(out, "{inv}")?;
            }
            Ok(Status::Ok)
        }
        Command::Abelianize { file, json } => {
            let p: Presentation = read_json(&file)?;
            let g = p.abelianization();
            if json.json {
                emit(
                    out,
                    json!({ "group": g, "torsion": g.torsion().iter().map(|t| t.to_string()).collect::<Vec<_>>(), "free_rank": g.free_rank() }),
                )?;
            } else {
                writeln!(out, "{g}")?;
            }
            Ok(Status::Ok)
        }
        Command::Palf(op) => run_palf(op, out),
    }
}

fn run_cf(op: CfCommand, out: &mut dyn Write) -> Result<Status, CliError> {
    let (string, json) = match op {
        CfCommand::Eval { string, json } => {
            let v = cf_eval(&string)?;
            if json.json {
                emit(
                    out,
                    json!({ "value": { "num": v.numer().to_string(), "den": v.denom().to_string() } }),
                )?;
            } else {
                writeln!(out, "{v}")?;
            }
            return Ok(Status::Ok);
        }
        CfCommand::Expand { value, json } => (cf_expand(&value)?, json),
        CfCommand::Dual { string, json } => (cf_dual(&string)?, json),
        CfCommand::Reverse { string, json } => (cf_reverse(&string), json),
    };
    if json.json {
        emit(out, entries(&string))?;
    } else {
        writeln!(out, "{string}")?;
    }
    Ok(Status::Ok)
}

fn run_fillings(
    p: i64,
    q: i64,
    k: Option<i64>,
    json: bool,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let lens = LensSpace::new(p, q)?;
    let list = match k {
        Some(k) => fillings_with_euler(&lens, k),
        None => fillings(&lens),
    };
    if json {
        let rows: Vec<Value> = list
            .iter()
            .map(|f| json!({ "euler": f.euler, "zero_string": f.zero_string.entries() }))
            .collect();
        emit(
            out,
            json!({ "p": p.to_string(), "q": q.to_string(), "dual": lens.dual_string().entries(), "fillings": rows }),
        )?;
    } else {
        writeln!(out, "{lens} dual {}", lens.dual_string())?;
        writeln!(out, "euler\tzero_string")?;
        for f in &list {
            writeln!(out, "{}\t{}", f.euler, f.zero_string)?;
        }
    }
    Ok(Status::Ok)
}

fn run_verify(v: VerifyCommand, out: &mut dyn Write) -> Result<Status, CliError> {
    match v {
        VerifyCommand::Theorem1 {
            max_len,
            max_entry,
            cap,
        } => {
            let r = verify_theorem1_capped(max_len, max_entry, cap);
            writeln!(
                out,
                "max_len={max_len} max_entry={max_entry}: examined {}, 2-replaceable {}, generated {}",
                r.examined, r.replaceable_count, r.family_count
            )?;
            if let VerifyStatus::Partial { examined } = r.status {
                writeln!(out, "stopped at the cap after {examined} sequences")?;
            }
            for (f, z) in &r.missing_from_families {
                writeln!(out, "missing: {f} (filling {z})")?;
            }
            for (f, tag) in &r.not_replaceable {
                writeln!(out, "not 2-replaceable: {f} (family {tag})")?;
            }
            Ok(Status::from_ok(r.success()))
        }
        VerifyCommand::Lemmas {
            max_len,
            max_entry,
            max_zero_len,
        } => {
            let checks = run_property_suite(max_len, max_entry, max_zero_len);
            let mut ok = true;
            for c in &checks {
                ok &= c.passed();
                writeln!(
                    out,
                    "{} {} ({} cases)",
                    if c.passed() { "ok  " } else { "FAIL" },
                    c.name,
                    c.cases
                )?;
                for e in &c.examples {
                    writeln!(out, "    {e}")?;
                }
            }
            Ok(Status::from_ok(ok))
        }
        VerifyCommand::PalfSeed => {
            let chain = seed_substitution_chain()?;
            let z45 = AbelianGroup::cyclic(45);
            let mut ok = true;
            for f in &chain {
                let b = boundary_h1_palf(f);
                ok &= b == z45;
                writeln!(out, "euler={} boundary={} {f}", euler_char_palf(f), b)?;
            }
            ok &= euler_char_palf(&chain[0]) == 5
                && euler_char_palf(&chain[chain.len() - 1]) == 2
                && chain[0] == seed_x_system()
                && chain[chain.len() - 1] == seed_abcdef_system();
            Ok(Status::from_ok(ok))
        }
        VerifyCommand::Section3 => {
            let d = dataset();
            let a = assert_report(&d);
            writeln!(
                out,
                "alpha.alpha={} K.alpha={} h.alpha={} alpha.u={:?}",
                a.alpha_squared, a.canonical_alpha, a.hyperplane_alpha, a.alpha_spheres
            )?;
            writeln!(
                out,
                "chi={} sigma={} odd form forced: {}",
                a.glued.0, a.glued.1, a.odd_form
            )?;
            for f in &a.failures {
                writeln!(out, "FAIL {f}")?;
            }
            let g = meridian_presentation(9)?.abelianization();
            writeln!(out, "meridian presentation: {g}")?;
            writeln!(out, "gram report (informational):")?;
            for line in gram_report(&d).to_string().lines() {
                writeln!(out, "    {line}")?;
            }
            Ok(Status::from_ok(a.passed() && g == AbelianGroup::cyclic(17)))
        }
    }
}

fn run_palf(op: PalfCommand, out: &mut dyn Write) -> Result<Status, CliError> {
    match op {
        PalfCommand::Check {
            c_side,
            b_side,
            json,
        } => {
            let c: Factorization = read_json(&c_side)?;
            let b: Factorization = read_json(&b_side)?;
            let r = key_pair_check(&c, &b)?;
            if json.json {
                emit(out, serde_json::to_value(&r).expect("serializable"))?;
            } else {
                writeln!(out, "c-side: euler={} boundary={}", r.c_euler, r.c_boundary)?;
                writeln!(
                    out,
                    "b-side: euler={} boundary={} total={}",
                    r.b_euler, r.b_boundary, r.b_total
                )?;
                writeln!(
                    out,
                    "boundaries {}",
                    if r.boundaries_agree {
                        "agree"
                    } else {
                        "differ"
                    }
                )?;
            }
            Ok(Status::from_ok(r.boundaries_agree))
        }
        PalfCommand::Invariants { file, json } => {
            let f: Factorization = read_json(&file)?;
            let (euler, boundary, total) =
                (euler_char_palf(&f), boundary_h1_palf(&f), h1_total(&f));
            if json.json {
                emit(
                    out,
                    json!({ "euler": euler, "boundary_h1": boundary, "h1": total }),
                )?;
            } else {
                writeln!(out, "euler={euler} boundary={boundary} H1={total}")?;
            }
            Ok(Status::Ok)
        }
    }
}
