//! Machine-readable reports and their text rendering.
//!
//! Rationals are `QmodZ` values (serialized as reduced `"p/q"` strings) and
//! integers are strings; the only float is the Gauss residual diagnostic.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::homology::QmodZ;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Report {
    Analyze(AnalyzeReport),
    Spinc(SpincReport),
    Quad(QuadReport),
    Verify(VerifyReport),
    Torsion(TorsionCliReport),
}

impl Report {
    /// False when a verification reported FAIL.
    pub fn passed(&self) -> bool {
        match self {
            Report::Verify(r) => r.pass,
            Report::Torsion(r) => r.pass,
            _ => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub name: Option<String>,
    pub matrix: Vec<Vec<String>>,
    pub det: String,
    pub order: String,
    pub invariant_factors: Vec<String>,
    /// Elements in Smith coordinates, in table order.
    pub elements: Vec<String>,
    /// `linking[i][j] = λ(elements[i], elements[j])`.
    pub linking: Vec<Vec<QmodZ>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpincRow {
    pub chern: String,
    pub charge: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedClass {
    pub label: Option<String>,
    pub given: String,
    pub class: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpincReport {
    pub name: Option<String>,
    pub encoding: String,
    pub classes: Vec<SpincRow>,
    pub named: Vec<NamedClass>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub class: String,
    pub value: QmodZ,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussSummary {
    pub order: String,
    pub d: QmodZ,
    pub denominator_bound: String,
    /// `| |S|² - |H| | / |H|`.
    pub modulus_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadReport {
    pub name: Option<String>,
    pub sigma: String,
    pub phi: Vec<TableEntry>,
    pub gauss: GaussSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub sigma: String,
    pub detail: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub name: Option<String>,
    /// `split` or `companion`.
    pub mode: String,
    pub isometry: Option<Vec<String>>,
    pub verdicts: Vec<Verdict>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorsionRow {
    pub sigma: String,
    pub axiom: bool,
    pub q_equals_phi: bool,
    pub c_sigma: QmodZ,
    pub d_sigma: QmodZ,
    pub c_m: QmodZ,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorsionCliReport {
    pub name: Option<String>,
    pub tables: Vec<TorsionRow>,
    pub cross_checks: Vec<String>,
    pub c_m: QmodZ,
    pub pass: bool,
}

fn heading(f: &mut String, name: &Option<String>) {
    if let Some(n) = name {
        let _ = writeln!(f, "{n}");
    }
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

impl fmt::Display for Report {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut f = String::new();
        match self {
            Report::Analyze(r) => {
                heading(&mut f, &r.name);
                let _ = writeln!(f, "|H| = {}, factors [{}]", r.order, r.invariant_factors.join(", "));
                let _ = writeln!(f, "det B = {}", r.det);
                let _ = writeln!(f, "linking pairing:");
                for (x, row) in r.elements.iter().zip(&r.linking) {
                    let vals: Vec<String> = row.iter().map(ToString::to_string).collect();
                    let _ = writeln!(f, "  {x}: {}", vals.join(" "));
                }
            }
            Report::Spinc(r) => {
                heading(&mut f, &r.name);
                let _ = writeln!(f, "{} Spin^c structures ({} order)", r.classes.len(), r.encoding);
                for row in &r.classes {
                    if r.encoding == "charge" {
                        let _ = writeln!(f, "  {} <-> {}", row.charge, row.chern);
                    } else {
                        let _ = writeln!(f, "  {} <-> {}", row.chern, row.charge);
                    }
                }
                for c in &r.named {
                    let label = c.label.as_deref().unwrap_or("-");
                    let _ = writeln!(f, "  [{label}] {} = {}", c.given, c.class);
                }
            }
            Report::Quad(r) => {
                heading(&mut f, &r.name);
                let _ = writeln!(f, "sigma: {}", r.sigma);
                let vals: Vec<String> = r.phi.iter().map(|e| format!("{}:{}", e.class, e.value)).collect();
                let _ = writeln!(f, "phi: {}", vals.join(" "));
                let _ = writeln!(
                    f,
                    "d = {} (denominator bound {}), |H| = {}, modulus residual {:.3e}",
                    r.gauss.d, r.gauss.denominator_bound, r.gauss.order, r.gauss.modulus_residual
                );
            }
            Report::Verify(r) => {
                heading(&mut f, &r.name);
                if let Some(iso) = &r.isometry {
                    let _ = writeln!(f, "isometry onto companion: generators -> {}", iso.join(" "));
                }
                for v in &r.verdicts {
                    let _ = writeln!(f, "{} {} {}", pass_word(v.pass), v.sigma, v.detail);
                }
                let passed = r.verdicts.iter().filter(|v| v.pass).count();
                let _ = writeln!(f, "{}: {passed}/{} ({})", pass_word(r.pass), r.verdicts.len(), r.mode);
            }
            Report::Torsion(r) => {
                heading(&mut f, &r.name);
                for t in &r.tables {
                    let _ = writeln!(
                        f,
                        "{}: axiom {}, q = phi {}, c_sigma = {}, d_sigma = {}, c(M) = {}",
                        t.sigma,
                        pass_word(t.axiom),
                        pass_word(t.q_equals_phi),
                        t.c_sigma,
                        t.d_sigma,
                        t.c_m
                    );
                }
                for c in &r.cross_checks {
                    let _ = writeln!(f, "checked: {c}");
                }
                let _ = writeln!(f, "c(M) = {}", r.c_m);
                let _ = writeln!(f, "{}", pass_word(r.pass));
            }
        }
        out.write_str(f.trim_end())
    }
}
