//! The `rhsq` command line: argument types, command execution and exit codes.
//!
//! Exit codes: 0 success, 2 unreadable or malformed input, 3 domain error,
//! 4 a verification reported FAIL.

pub mod file;
pub mod report;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use thiserror::Error as ThisError;

use crate::error::Error;
use crate::homology::HomologyGroup;
use crate::quad::{
    gauss_with_tolerance, linking_table, match_presentations, phi_from_chern, verify_theorem_split,
    verify_theorem_via_companion, DEFAULT_TOLERANCE,
};
use crate::spinc::{SpincClass, SpincSet};
use crate::torsion::{c_invariant_with_tolerance, TorsionTable};

pub use file::{parse_fixture, parse_presentation, Encoding, PresentationFile, SpincEntry, TorsionBlock};
pub use report::Report;
use report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_FAIL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "rhsq", version, about = "Linking pairings, Spin^c structures and quadratic functions of surgery presentations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Tolerance for the Gauss-sum modulus check and phase reconstruction.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EncodingArg {
    Chern,
    Charge,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, invariant factors and the full linking table.
    Analyze { file: PathBuf },
    /// All Spin^c structures in both encodings.
    Spinc {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "chern")]
        encoding: EncodingArg,
    },
    /// The quadratic function of one Spin^c structure and its Gauss phase.
    Quad {
        file: PathBuf,
        /// A label from the file, `s=<ints>`, `k=<ints>`, or a Chern vector `a,b,...`.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Checks q = phi for every Spin^c structure.
    Verify {
        file: PathBuf,
        /// Diagonal presentation of the same manifold, for non-diagonal input.
        #[arg(long)]
        split_companion: Option<PathBuf>,
    },
    /// Torsion tables: axiom, extracted q, c_sigma and c(M).
    Torsion {
        file: PathBuf,
        /// Extra file with `torsion` blocks.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Lib(#[from] Error),
    #[error("{error}; {hint}")]
    Hint { error: Error, hint: &'static str },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Lib(Error::Parse { .. }) => EXIT_INPUT,
            _ => EXIT_DOMAIN,
        }
    }
}

/// Result of one invocation, ready to print.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok(report) => {
            let stdout = if cli.json {
                serde_json::to_string_pretty(&report).expect("reports serialize")
            } else {
                report.to_string()
            };
            let code = if report.passed() { EXIT_OK } else { EXIT_FAIL };
            Outcome { stdout, stderr: String::new(), code }
        }
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}"), code: e.exit_code() },
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load(path: &Path) -> Result<(PresentationFile, SpincSet), CliError> {
    let file = parse_presentation(&read(path)?)?;
    let group = HomologyGroup::new(file.presentation()?)?;
    let set = SpincSet::new(Arc::new(group))?;
    Ok((file, set))
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Analyze { file } => analyze(file),
        Command::Spinc { file, encoding } => spinc(file, *encoding),
        Command::Quad { file, sigma } => quad(file, sigma.as_deref(), cli.tolerance),
        Command::Verify { file, split_companion } => verify(file, split_companion.as_deref()),
        Command::Torsion { file, fixture } => torsion(file, fixture.as_deref(), cli.tolerance),
    }
}

fn analyze(path: &Path) -> Result<Report, CliError> {
    let (file, set) = load(path)?;
    let g = set.group();
    let els = g.elements()?;
    let linking = linking_table(g)?;
    let b = g.presentation().matrix();
    Ok(Report::Analyze(AnalyzeReport {
        name: file.name,
        matrix: (0..b.rows()).map(|i| b.row(i).iter().map(ToString::to_string).collect()).collect(),
        det: g.presentation().det().to_string(),
        order: g.order().to_string(),
        invariant_factors: g.invariant_factors().iter().map(ToString::to_string).collect(),
        elements: els.iter().map(ToString::to_string).collect(),
        linking,
    }))
}

fn entry_class(set: &SpincSet, e: &SpincEntry) -> Result<SpincClass, Error> {
    match e.encoding {
        Encoding::Chern => set.class_of_vector(e.vector.clone()),
        Encoding::Charge => Ok(set.class_of_charge(&set.charge(e.vector.clone())?)),
    }
}

fn spinc(path: &Path, encoding: EncodingArg) -> Result<Report, CliError> {
    let (file, set) = load(path)?;
    let classes = match encoding {
        EncodingArg::Chern => set
            .chern_enumerate()
            .iter()
            .map(|c| SpincRow {
                chern: c.label(),
                charge: set.charge_class(&set.chern_to_charge(c.chern())).to_string(),
            })
            .collect(),
        EncodingArg::Charge => set
            .charge_enumerate()
            .iter()
            .map(|k| SpincRow { chern: set.class_of_charge(k).label(), charge: k.to_string() })
            .collect(),
    };
    let named = file
        .spinc
        .iter()
        .map(|e| {
            let class = entry_class(&set, e)?;
            let prefix = if e.encoding == Encoding::Chern { "s" } else { "k" };
            let given = e.vector.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            Ok(NamedClass { label: e.label.clone(), given: format!("{prefix}={given}"), class: class.label() })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Report::Spinc(SpincReport {
        name: file.name,
        encoding: match encoding {
            EncodingArg::Chern => "chern".into(),
            EncodingArg::Charge => "charge".into(),
        },
        classes,
        named,
    }))
}

fn resolve_sigma(file: &PresentationFile, set: &SpincSet, arg: Option<&str>) -> Result<SpincClass, Error> {
    let Some(a) = arg else {
        return match file.spinc.first() {
            Some(e) => entry_class(set, e),
            None => Ok(set.chern_enumerate().swap_remove(0)),
        };
    };
    if let Some(e) = file.labelled(a) {
        return entry_class(set, e);
    }
    if a.contains('=') {
        return set.resolve(a);
    }
    let v = a
        .split(',')
        .map(|t| t.trim().parse::<BigInt>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Error::UnknownLabel(a.to_string()))?;
    set.class_of_vector(v)
}

fn quad(path: &Path, sigma: Option<&str>, tolerance: f64) -> Result<Report, CliError> {
    let (file, set) = load(path)?;
    let sigma = resolve_sigma(&file, &set, sigma)?;
    let g = set.group();
    let phi = phi_from_chern(g, sigma.chern())?;
    let gd = gauss_with_tolerance(&phi, tolerance)?;
    let els = g.elements()?;
    Ok(Report::Quad(QuadReport {
        name: file.name,
        sigma: sigma.label(),
        phi: els
            .iter()
            .zip(phi.values())
            .map(|(x, v)| TableEntry { class: x.to_string(), value: v })
            .collect(),
        gauss: GaussSummary {
            order: gd.order.to_string(),
            d: gd.d,
            denominator_bound: gd.denominator_bound.to_string(),
            modulus_residual: (gd.modulus_squared - gd.order as f64).abs() / gd.order as f64,
        },
    }))
}

fn verify(path: &Path, companion: Option<&Path>) -> Result<Report, CliError> {
    let (file, set) = load(path)?;
    if set.presentation().is_split() {
        let r = verify_theorem_split(&set)?;
        let verdicts = r
            .verdicts
            .iter()
            .map(|v| Verdict {
                sigma: v.charge.clone(),
                detail: match &v.first_mismatch {
                    None => format!("q = phi({})", v.chern),
                    Some(m) => format!("q({}) = {} but phi({}) = {}", m.class, m.q, m.class, m.phi),
                },
                pass: v.pass,
            })
            .collect();
        return Ok(Report::Verify(VerifyReport {
            name: file.name,
            mode: "split".into(),
            isometry: None,
            verdicts,
            pass: r.all_pass(),
        }));
    }
    let Some(cpath) = companion else {
        return Err(CliError::Hint {
            error: Error::NotAlgebraicallySplit,
            hint: "the check is stated for diagonal linking matrices; pass --split-companion with a diagonal presentation of the same manifold",
        });
    };
    let (_, cset) = load(cpath)?;
    if !cset.presentation().is_split() {
        return Err(CliError::Hint {
            error: Error::NotAlgebraicallySplit,
            hint: "the companion presentation must be diagonal",
        });
    }
    // fail early with NoMatch before the split-side work
    match_presentations(set.group(), cset.group())?;
    let r = verify_theorem_via_companion(&set, &cset)?;
    let mut verdicts: Vec<Verdict> = r
        .companion
        .verdicts
        .iter()
        .map(|v| Verdict {
            sigma: format!("companion {}", v.charge),
            detail: if v.pass { format!("q = phi({})", v.chern) } else { "q != phi".into() },
            pass: v.pass,
        })
        .collect();
    verdicts.extend(r.verdicts.iter().map(|v| Verdict {
        sigma: v.sigma.clone(),
        detail: match &v.matched_charge {
            Some(k) => format!("phi = q({k}) o psi"),
            None => "no companion charge matches".into(),
        },
        pass: v.matched_charge.is_some(),
    }));
    Ok(Report::Verify(VerifyReport {
        name: file.name,
        mode: "companion".into(),
        isometry: Some(r.isometry.clone()),
        verdicts,
        pass: r.all_pass(),
    }))
}

fn torsion(path: &Path, fixture: Option<&Path>, tolerance: f64) -> Result<Report, CliError> {
    let (file, set) = load(path)?;
    let mut blocks = file.torsion.clone();
    if let Some(f) = fixture {
        blocks.extend(parse_fixture(&read(f)?)?);
    }
    let g = set.group();
    if blocks.is_empty() {
        return Err(Error::IncompleteTable { expected: g.size()?, got: 0 }.into());
    }
    let tables = blocks
        .into_iter()
        .map(|b| TorsionTable::new(g, b.sigma, b.values))
        .collect::<Result<Vec<_>, Error>>()?;
    let fam = c_invariant_with_tolerance(&set, &tables, tolerance)?;
    let pass = fam.all_q_equal_phi();
    Ok(Report::Torsion(TorsionCliReport {
        name: file.name,
        tables: fam
            .reports
            .iter()
            .map(|r| TorsionRow {
                sigma: r.sigma.clone(),
                axiom: r.axiom_ok,
                q_equals_phi: r.q_equals_phi,
                c_sigma: r.c_sigma.clone(),
                d_sigma: r.d_sigma.clone(),
                c_m: r.c_m.clone(),
            })
            .collect(),
        cross_checks: fam.cross_checks,
        c_m: fam.c_m,
        pass,
    }))
}
