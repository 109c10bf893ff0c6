//! The `gtmono` command line: basis generation, verification, Taylor
//! expansion and decompositions.
//!
//! Exit codes: 0 success, 1 a verification failed (including inputs that
//! fail a required harmonicity or monogenicity test), 2 usage or parse error.

mod checks;
pub mod parser;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::analysis::{reconstruct, taylor_expand, TaylorContext, TaylorKind};
use crate::bases::{branch_decompose_harmonic, fischer_decompose, harmonic_element, harmonic_labels, monogenic_element, monogenic_labels};
use crate::clifford::{spinor_algebra_dim, Multivector, SpinorSpace};
use crate::error::{Error, Result};
use crate::poly::CliffPoly;
use crate::scalars::rational_to_f64;
use crate::wire::{poly_from_json_str, taylor_to_json, PolyJson};
use crate::Sign;

pub use checks::{run_check, CheckOutcome, Property};
pub use parser::{parse_poly, parse_poly_in};

#[derive(Parser, Debug)]
#[command(name = "gtmono", version, about = "Exact Gelfand-Tsetlin Appell bases for harmonics and monogenics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit the labeled basis of one degree.
    Basis {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'k')]
        k: u32,
    },
    /// Run a named verification for every degree up to k.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'k')]
        k: u32,
        #[arg(long, value_enum)]
        property: Property,
    },
    /// Generalized Taylor table of an input polynomial.
    Expand {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: InputArg,
        /// Rebuild the polynomial from the table and compare exactly.
        #[arg(long)]
        roundtrip: bool,
        /// Add decimal renderings next to the exact fields.
        #[arg(long)]
        approx: bool,
    },
    /// Harmonic branching or Fischer decomposition of an input polynomial.
    Decompose {
        #[arg(value_enum)]
        mode: DecomposeMode,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: InputArg,
        /// Degree; defaults to the degree of the input.
        #[arg(short = 'k')]
        k: Option<u32>,
    },
}

#[derive(Args, Debug)]
pub struct Common {
    #[arg(long, value_enum, default_value = "clifford")]
    pub space: SpaceArg,
    #[arg(short = 'm')]
    pub m: usize,
    /// Spinor chirality, `+` or `-` (even m only).
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    pub chirality: Sign,
    #[arg(long, conflicts_with = "text")]
    pub json: bool,
    #[arg(long)]
    pub text: bool,
}

#[derive(Args, Debug)]
pub struct InputArg {
    /// Polynomial expression or JSON polynomial; `-` reads standard input.
    #[arg(long, default_value = "-", allow_hyphen_values = true)]
    pub input: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum SpaceArg {
    Harmonic,
    Clifford,
    Spinor,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum DecomposeMode {
    Branch,
    Fischer,
}

impl Common {
    fn taylor_context(&self) -> TaylorContext {
        match self.space {
            SpaceArg::Harmonic => TaylorContext::new(TaylorKind::Harmonic, self.m),
            SpaceArg::Clifford => TaylorContext::new(TaylorKind::Clifford, self.m),
            SpaceArg::Spinor => TaylorContext::spinor(self.m, self.chirality),
        }
    }

    fn alg_dim(&self) -> usize {
        match self.space {
            SpaceArg::Spinor => spinor_algebra_dim(self.m),
            _ => self.m,
        }
    }

    fn check_m(&self) -> Result<()> {
        if self.m < 3 {
            return Err(Error::InvalidDimension(self.m, "m >= 3 required"));
        }
        Ok(())
    }
}

/// Failure classes map to exit code 1, everything else to 2.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotHarmonic
        | Error::NotMonogenic
        | Error::NotScalar
        | Error::NotInSpinorSpace
        | Error::NotHomogeneous(_)
        | Error::Decomposition(_) => 1,
        _ => 2,
    }
}

fn read_input(path: &PathBuf, stdin: &mut dyn Read) -> Result<String> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        stdin.read_to_string(&mut s).map_err(|e| Error::Parse(format!("reading standard input: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("reading {}: {e}", path.display())))?;
    }
    Ok(s)
}

/// Reads either a JSON polynomial or an expression in `nvars` variables over ℂ_alg.
fn read_poly(path: &PathBuf, stdin: &mut dyn Read, nvars: usize, alg: usize) -> Result<CliffPoly> {
    let text = read_input(path, stdin)?;
    if text.trim_start().starts_with('{') {
        let p = poly_from_json_str(&text)?;
        if p.nvars() != nvars {
            return Err(Error::DimensionMismatch(p.nvars(), nvars));
        }
        if p.alg_dim() == alg || p.is_zero() {
            return p.embed(nvars, alg);
        }
        return Err(Error::DimensionMismatch(p.alg_dim(), alg));
    }
    parse_poly_in(&text, nvars, alg)
}

fn approx_blades(a: &Multivector) -> Value {
    Value::Array(
        a.sorted_terms()
            .into_iter()
            .map(|(b, c)| json!({ "idx": b.indices(), "re": rational_to_f64(&c.re), "im": rational_to_f64(&c.im) }))
            .collect(),
    )
}

fn render(json_mode: bool, value: &Value, text: String) -> String {
    if json_mode {
        let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
        s.push('\n');
        s
    } else {
        text
    }
}

fn cmd_basis(common: &Common, k: u32) -> Result<String> {
    common.check_m()?;
    let m = common.m;
    let mut rows: Vec<(String, Option<String>, CliffPoly)> = Vec::new();
    match common.space {
        SpaceArg::Harmonic => {
            for mu in harmonic_labels(m, k) {
                rows.push((mu.to_string(), None, harmonic_element(m, k, &mu)?));
            }
        }
        SpaceArg::Clifford => {
            for mu in monogenic_labels(m, k) {
                rows.push((mu.to_string(), None, monogenic_element(m, k, &mu)?));
            }
        }
        SpaceArg::Spinor => {
            let space = SpinorSpace::new(m, common.chirality)?;
            for mu in monogenic_labels(m, k) {
                for nu in space.generators.keys() {
                    rows.push((mu.to_string(), Some(nu.to_string()), crate::bases::spinor_element(&space, k, &mu, nu)?));
                }
            }
        }
    }
    let value = Value::Array(
        rows.iter()
            .map(|(mu, nu, p)| {
                let mut o = json!({ "k": k, "mu": mu });
                if let Some(nu) = nu {
                    o["nu"] = json!(nu);
                }
                o["poly"] = serde_json::to_value(PolyJson::from(p)).expect("serializable");
                o
            })
            .collect(),
    );
    let text = rows
        .iter()
        .map(|(mu, nu, p)| match nu {
            Some(nu) => format!("k={k} mu={mu} nu={nu}: {p}\n"),
            None => format!("k={k} mu={mu}: {p}\n"),
        })
        .collect();
    Ok(render(common.json || !common.text, &value, text))
}

fn cmd_expand(common: &Common, input: &InputArg, roundtrip: bool, approx: bool, stdin: &mut dyn Read) -> Result<(String, bool)> {
    common.check_m()?;
    let g = read_poly(&input.input, stdin, common.m, common.alg_dim())?;
    let table = taylor_expand(&g, &common.taylor_context())?;
    let exact = if roundtrip { Some(reconstruct(&table)? == g) } else { None };
    let mut entries = serde_json::to_value(taylor_to_json(&table)).expect("serializable");
    if approx {
        for (entry, t) in entries.as_array_mut().expect("array").iter_mut().zip(table.entries.values()) {
            entry["approx"] = approx_blades(t);
        }
    }
    let value = match exact {
        Some(ok) => json!({ "entries": entries, "roundtrip": ok }),
        None => entries,
    };
    let mut text = String::new();
    for (key, t) in &table.entries {
        let nu = key.nu.as_ref().map(|nu| format!(" nu={nu}")).unwrap_or_default();
        text.push_str(&format!("k={} mu={}{nu}: {t}", key.k, key.mu));
        if approx {
            let parts: Vec<String> = t
                .sorted_terms()
                .into_iter()
                .map(|(b, c)| format!("{b}:({:.6}, {:.6})", rational_to_f64(&c.re), rational_to_f64(&c.im)))
                .collect();
            text.push_str(&format!("  ~ {}", parts.join(" ")));
        }
        text.push('\n');
    }
    if let Some(ok) = exact {
        text.push_str(if ok { "roundtrip: exact\n" } else { "roundtrip: MISMATCH\n" });
    }
    Ok((render(common.json || !common.text, &value, text), exact.unwrap_or(true)))
}

fn cmd_decompose(mode: DecomposeMode, common: &Common, input: &InputArg, k: Option<u32>, stdin: &mut dyn Read) -> Result<String> {
    common.check_m()?;
    let m = common.m;
    let parts: Vec<(u32, CliffPoly)> = match mode {
        DecomposeMode::Branch => {
            let p = read_poly(&input.input, stdin, m, m)?;
            let k = k.or(p.degree()).unwrap_or(0);
            branch_decompose_harmonic(&p, k)?.into_iter().enumerate().map(|(j, q)| (j as u32, q)).collect()
        }
        DecomposeMode::Fischer => {
            let p = read_poly(&input.input, stdin, m - 1, m)?;
            let k = k.or(p.degree()).unwrap_or(0);
            fischer_decompose(&p, k)?
        }
    };
    let value = Value::Array(
        parts.iter().map(|(j, q)| json!({ "j": j, "poly": serde_json::to_value(PolyJson::from(q)).expect("serializable") })).collect(),
    );
    let text = parts.iter().map(|(j, q)| format!("j={j}: {q}\n")).collect();
    Ok(render(common.json || !common.text, &value, text))
}

fn cmd_check(common: &Common, k: u32, property: Property) -> Result<(String, bool)> {
    common.check_m()?;
    let outcome = run_check(property, common.space, common.m, k, common.chirality)?;
    let value = serde_json::to_value(&outcome).expect("serializable");
    let mut text = format!(
        "{} {} {} m={} k<={}: {} checked, {} failed\n",
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.property,
        outcome.space,
        outcome.m,
        outcome.k,
        outcome.checked,
        outcome.failures.len()
    );
    for f in &outcome.failures {
        text.push_str(&format!("  failure: {f}\n"));
    }
    for d in &outcome.diagnostics {
        text.push_str(&format!("  note: {d}\n"));
    }
    Ok((render(common.json || !common.text, &value, text), outcome.passed))
}

/// Runs the command line with explicit streams and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Basis { common, k } => cmd_basis(common, *k).map(|s| (s, true)),
        Command::Check { common, k, property } => cmd_check(common, *k, *property),
        Command::Expand { common, input, roundtrip, approx } => cmd_expand(common, input, *roundtrip, *approx, stdin),
        Command::Decompose { mode, common, input, k } => cmd_decompose(*mode, common, input, *k, stdin).map(|s| (s, true)),
    };
    match result {
        Ok((s, ok)) => {
            let _ = out.write_all(s.as_bytes());
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

impl std::fmt::Display for SpaceArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SpaceArg::Harmonic => "harmonic",
            SpaceArg::Clifford => "clifford",
            SpaceArg::Spinor => "spinor",
        })
    }
}
