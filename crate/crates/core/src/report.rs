//! Problem specification, orchestration, and report serialization.
//!
//! The JSON layout is pinned by `docs/report-schema.json`; all rationals are
//! serialized as "p/q" strings and the same specification always produces a
//! byte-identical report.

use serde::{Deserialize, Serialize};

use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::numfield::AlgNum;
use crate::parse::{parse_diffpoly, parse_qpoly};
use crate::polygon::{build_polygon, Inclination};
use crate::rat::{parse_frac, pretty, to_frac_string, Rat};
use crate::render::{render_ascii, render_svg};
use crate::solver::{
    expand, theorem_bounds_check, Budget, ParamAssignments, ParamValue, PuiseuxSolution,
    ResidualCertificate, SolutionKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolygonFormat {
    Ascii,
    Svg,
}

/// A fully resolved problem: source text, parsed polynomial and options.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    pub source: String,
    pub poly: DiffPoly,
    pub budget: Budget,
    pub strict_b: bool,
    pub params: ParamAssignments,
    pub format: OutputFormat,
    pub polygon: Option<PolygonFormat>,
    pub verify_to: Option<Rat>,
}

impl ProblemSpec {
    pub fn from_source(source: &str) -> Result<ProblemSpec> {
        let poly = parse_diffpoly(source)?;
        Ok(ProblemSpec {
            source: source.trim().to_string(),
            poly,
            budget: Budget::default(),
            strict_b: true,
            params: ParamAssignments::new(),
            format: OutputFormat::Text,
            polygon: None,
            verify_to: None,
        })
    }

    /// Parse a `name=value` parameter assignment; values are rationals or
    /// `root(<monic polynomial in Z>)`.
    pub fn parse_param(&mut self, arg: &str) -> Result<()> {
        let (name, value) = arg.split_once('=').ok_or_else(|| {
            Error::Unsupported(format!("malformed parameter '{}', expected name=value", arg))
        })?;
        let value = value.trim();
        let pv = if let Some(rest) = value.strip_prefix("root(") {
            let inner = rest.strip_suffix(')').ok_or_else(|| {
                Error::Unsupported("malformed root(...) parameter value".into())
            })?;
            ParamValue::Root(parse_qpoly(inner)?)
        } else {
            ParamValue::Rational(parse_frac(value).ok_or_else(|| {
                Error::Unsupported(format!("malformed rational value '{}'", value))
            })?)
        };
        self.params.insert(name.trim().to_string(), pv);
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Serialized report
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CoeffJson {
    /// Polynomial in the field generator, for reading.
    pub display: String,
    /// Power-basis coordinates, "p/q" strings, lossless.
    pub coords: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub coeff: CoeffJson,
    pub exp: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FieldJson {
    pub generator: String,
    pub min_poly: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FreeParamsJson {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu_range: Option<[String; 2]>,
    pub note: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ResidualJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SolutionJson {
    pub kind: String,
    pub nu: u64,
    pub field: FieldJson,
    pub terms: Vec<TermJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation_order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_parameters: Option<FreeParamsJson>,
    pub residual: ResidualJson,
    pub node: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TreeJson {
    pub nodes: usize,
    pub max_level: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DegreeBoundJson {
    pub checked: usize,
    pub ok: bool,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SolutionReport {
    pub input: String,
    pub strict_inclinations: bool,
    pub max_exponent: String,
    pub solutions: Vec<SolutionJson>,
    pub tree: TreeJson,
    pub degree_bound: DegreeBoundJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified_to: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polygon: Option<String>,
}

fn incl_string(i: &Inclination) -> String {
    match i {
        Inclination::NegInf => "-inf".into(),
        Inclination::Finite(r) => to_frac_string(r),
        Inclination::PosInf => "+inf".into(),
    }
}

fn coeff_json(c: &AlgNum) -> CoeffJson {
    CoeffJson {
        display: c.to_string(),
        coords: c.coords().iter().map(to_frac_string).collect(),
    }
}

fn solution_json(s: &PuiseuxSolution, generator: &str) -> SolutionJson {
    SolutionJson {
        kind: s.kind.to_string(),
        nu: s.nu,
        field: FieldJson {
            generator: generator.into(),
            min_poly: s.field_min_poly.to_string(),
        },
        terms: s
            .series
            .terms()
            .iter()
            .map(|t| TermJson {
                coeff: coeff_json(&t.coeff),
                exp: to_frac_string(&t.exp),
            })
            .collect(),
        truncation_order: s.series.truncation().map(to_frac_string),
        free_parameters: s.free_parameters.as_ref().map(|fp| FreeParamsJson {
            name: fp.name.clone(),
            mu: fp.mu.as_ref().map(to_frac_string),
            mu_range: fp
                .mu_range
                .as_ref()
                .map(|(lo, hi)| [incl_string(lo), incl_string(hi)]),
            note: fp.note.clone(),
        }),
        residual: match &s.residual {
            ResidualCertificate::ExactZero => ResidualJson {
                kind: "exact-zero".into(),
                order: None,
            },
            ResidualCertificate::OrderAtLeast(r) => ResidualJson {
                kind: "order-at-least".into(),
                order: Some(to_frac_string(r)),
            },
            ResidualCertificate::Family => ResidualJson {
                kind: "family".into(),
                order: None,
            },
        },
        node: s.node_id,
    }
}

/// Solve a problem and assemble the report.
pub fn run(spec: &ProblemSpec) -> Result<SolutionReport> {
    let (tree, solutions) = expand(&spec.poly, &spec.budget, &spec.params, spec.strict_b)?;
    if let Some(bound) = &spec.verify_to {
        verify_solutions(&spec.poly, &solutions, bound)?;
    }
    let bounds = theorem_bounds_check(&tree);
    let polygon = match spec.polygon {
        Some(PolygonFormat::Ascii) => {
            Some(render_ascii(&build_polygon(&spec.poly, spec.strict_b)?))
        }
        Some(PolygonFormat::Svg) => Some(render_svg(&build_polygon(&spec.poly, spec.strict_b)?)),
        None => None,
    };
    let generator = spec.poly.field().label().to_string();
    Ok(SolutionReport {
        input: spec.source.clone(),
        strict_inclinations: spec.strict_b,
        max_exponent: to_frac_string(&spec.budget.max_exponent),
        solutions: solutions.iter().map(|s| solution_json(s, &generator)).collect(),
        tree: TreeJson {
            nodes: tree.nodes.len(),
            max_level: tree.max_level(),
        },
        degree_bound: DegreeBoundJson {
            checked: tree.nodes.len(),
            ok: bounds.ok(),
            violations: bounds.violations,
        },
        verified_to: spec.verify_to.as_ref().map(to_frac_string),
        polygon,
    })
}

/// Re-check emitted exact and truncated solutions with the series oracle up
/// to the requested bound.
fn verify_solutions(f: &DiffPoly, solutions: &[PuiseuxSolution], bound: &Rat) -> Result<()> {
    for s in solutions {
        match s.kind {
            SolutionKind::ExactLeaf => {
                let res = f.evaluate(&s.series, bound)?;
                if !res.is_zero() {
                    return Err(Error::Internal(
                        "verification failed: nonzero residual for an exact solution".into(),
                    ));
                }
            }
            SolutionKind::Truncated => {
                // certify as far as the truncation allows, capped at bound
                let cap = match s.series.truncation() {
                    Some(t) if t < bound => t.clone(),
                    _ => bound.clone(),
                };
                let res = f.evaluate(&s.series, &cap)?;
                let last = s
                    .series
                    .terms()
                    .last()
                    .map(|t| t.exp.clone());
                if let (Some(ord), Some(last)) = (res.order(), last) {
                    if ord < last {
                        return Err(Error::Internal(
                            "verification failed: residual below the last certified term".into(),
                        ));
                    }
                }
            }
            _ => {}
        }
    }
    Ok(())
}

impl SolutionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("input: {}\n", self.input));
        out.push_str(&format!(
            "strict inclinations: {}, max exponent: {}\n",
            self.strict_inclinations,
            frac_pretty(&self.max_exponent)
        ));
        if let Some(p) = &self.polygon {
            out.push_str("\nnewton polygon:\n");
            out.push_str(p);
        }
        out.push_str(&format!("\nsolutions ({}):\n", self.solutions.len()));
        for (i, s) in self.solutions.iter().enumerate() {
            out.push_str(&format!("  [{}] {}: y = {}\n", i + 1, s.kind, series_text(s)));
            if s.field.min_poly != "Z - 1" {
                out.push_str(&format!(
                    "      field: Q[{}]/({}), nu = {}\n",
                    s.field.generator, s.field.min_poly, s.nu
                ));
            } else {
                out.push_str(&format!("      field: Q, nu = {}\n", s.nu));
            }
            match (s.residual.kind.as_str(), &s.residual.order) {
                ("exact-zero", _) => out.push_str("      residual: exactly 0\n"),
                ("order-at-least", Some(o)) => {
                    out.push_str(&format!("      residual order: {}\n", frac_pretty(o)))
                }
                _ => {}
            }
            if let Some(fp) = &s.free_parameters {
                out.push_str(&format!("      {}\n", fp.note));
            }
        }
        out.push_str(&format!(
            "\ntree: {} nodes, max level {}\n",
            self.tree.nodes, self.tree.max_level
        ));
        if self.degree_bound.ok {
            out.push_str(&format!(
                "degree bound: ok ({} nodes checked)\n",
                self.degree_bound.checked
            ));
        } else {
            out.push_str("degree bound violations:\n");
            for v in &self.degree_bound.violations {
                out.push_str(&format!("  {}\n", v));
            }
        }
        if let Some(v) = &self.verified_to {
            out.push_str(&format!("residuals re-verified up to x^({})\n", frac_pretty(v)));
        }
        out
    }
}

fn frac_pretty(s: &str) -> String {
    match parse_frac(s) {
        Some(r) => pretty(&r),
        None => s.to_string(),
    }
}

fn series_text(s: &SolutionJson) -> String {
    if s.terms.is_empty() && s.free_parameters.is_none() {
        let mut out = "0".to_string();
        if let Some(t) = &s.truncation_order {
            out.push_str(&format!(" + O(x^({}))", frac_pretty(t)));
        }
        return out;
    }
    let mut parts: Vec<String> = Vec::new();
    for t in &s.terms {
        let coeff = &t.coeff.display;
        let exp = frac_pretty(&t.exp);
        let coeff_part = if coeff.contains(' ') || coeff.contains('+') {
            format!("({})", coeff)
        } else {
            coeff.clone()
        };
        if exp == "0" {
            parts.push(coeff_part);
        } else if coeff == "1" {
            parts.push(format!("x^({})", exp));
        } else if coeff == "-1" {
            parts.push(format!("-x^({})", exp));
        } else {
            parts.push(format!("{}*x^({})", coeff_part, exp));
        }
    }
    if let Some(fp) = &s.free_parameters {
        match (&fp.mu, &fp.mu_range) {
            (Some(mu), _) => parts.push(format!("{}*x^({})", fp.name, frac_pretty(mu))),
            (None, Some([lo, hi])) => parts.push(format!(
                "{}*x^mu for mu in ({}, {})",
                fp.name,
                frac_pretty(lo),
                frac_pretty(hi)
            )),
            (None, None) => parts.push(format!("{}*x^mu", fp.name)),
        }
    }
    let mut out = parts.join(" + ");
    if let Some(t) = &s.truncation_order {
        out.push_str(&format!(" + O(x^({}))", frac_pretty(t)));
    }
    out
}
