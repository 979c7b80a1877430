//! Full analysis of one ring document, assembled for humans or JSON.
//!
//! Every analysis module contributes one section with a status, optional
//! warnings, and its findings. Floating-point output is rounded at 1e-9
//! (negative zero normalized away) so a report is byte-stable for a fixed
//! input, seed, and tolerance.

use std::sync::Arc;

use nalgebra::Complex;
use serde::Serialize;

use crate::format::{FormatError, RingDocument};
use crate::iso;
use crate::recovery;
use crate::ring::FusionRing;
use crate::solver::{self, SolverConfig};
use crate::subrings::{self, DEFAULT_MAX_RANK};

/// Knobs shared by the analysis sections.
#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    pub seed: u64,
    pub tol: f64,
    pub max_rank: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            seed: solver::DEFAULT_SEED,
            tol: solver::DEFAULT_TOL,
            max_rank: DEFAULT_MAX_RANK,
        }
    }
}

/// One analysis section: a status plus findings when it succeeded.
#[derive(Debug, Clone, Serialize)]
pub struct Section<T: Serialize> {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(flatten)]
    pub detail: Option<T>,
}

impl<T: Serialize> Section<T> {
    fn ok(detail: T, warnings: Vec<String>) -> Section<T> {
        Section { status: "ok".into(), error: None, warnings, detail: Some(detail) }
    }

    fn failed(error: impl ToString) -> Section<T> {
        Section {
            status: "failed".into(),
            error: Some(error.to_string()),
            warnings: Vec::new(),
            detail: None,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == "ok"
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationDetail {
    pub valid: bool,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupDetail {
    pub order: usize,
    pub invariant_factors: Vec<u64>,
    pub group: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainDetail {
    pub order: usize,
    pub invariant_factors: Vec<u64>,
    pub group: String,
    pub classes: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubringLine {
    pub rank: usize,
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeDetail {
    pub count: usize,
    pub subrings: Vec<SubringLine>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdjointDetail {
    pub rank: usize,
    pub labels: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characteristic: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AutomorphismDetail {
    pub count: usize,
    pub permutations: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolutionsDetail {
    pub count: usize,
    pub max_residual: f64,
    /// Each solution lists [re, im] per basis element.
    pub solutions: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FpDetail {
    pub dimensions: Vec<f64>,
}

/// The combined findings for one ring.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub name: String,
    pub rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complete_below: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connected: Option<bool>,
    pub seed: u64,
    pub tol: f64,
    pub validation: Section<ValidationDetail>,
    pub invertibles: Section<GroupDetail>,
    pub chain_group: Section<ChainDetail>,
    pub subrings: Section<LatticeDetail>,
    pub adjoint_subring: Section<AdjointDetail>,
    pub automorphisms: Section<AutomorphismDetail>,
    pub character_solutions: Section<SolutionsDetail>,
    pub fp_dimensions: Section<FpDetail>,
}

fn round9(x: f64) -> f64 {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 { 0.0 } else { r }
}

fn truncation_note(ring: &FusionRing, text: &str) -> Vec<String> {
    if ring.is_truncated() {
        vec![format!("truncated input: {text}")]
    } else {
        Vec::new()
    }
}

/// Runs every analysis section on the document's ring.
pub fn analyze(doc: &RingDocument, options: &AnalyzeOptions) -> Result<AnalysisReport, FormatError> {
    let ring = Arc::new(doc.to_ring()?);
    let labels_of = |indices: &[usize]| -> Vec<String> {
        indices.iter().map(|&p| ring.label(p).to_string()).collect()
    };

    let validation = {
        let outcome = ring.validate();
        let detail = ValidationDetail {
            valid: outcome.is_valid(),
            violations: outcome.violations().iter().map(|v| v.to_string()).collect(),
        };
        Section::ok(detail, truncation_note(&ring, "only trusted products were checked"))
    };

    let invertibles = match recovery::invertible_characters(&ring) {
        Ok(group) => Section::ok(
            GroupDetail {
                order: group.order(),
                invariant_factors: group.invariant_factors().to_vec(),
                group: group.describe(),
                members: group.names().to_vec(),
            },
            truncation_note(&ring, "invertibility was decided from trusted products"),
        ),
        Err(e) => Section::failed(e),
    };

    let chain_group = match recovery::chain_group(&ring) {
        Ok(result) => Section::ok(
            ChainDetail {
                order: result.group().order(),
                invariant_factors: result.group().invariant_factors().to_vec(),
                group: result.group().describe(),
                classes: result.classes().iter().map(|c| labels_of(c)).collect(),
            },
            truncation_note(&ring, "classes merge only across trusted products"),
        ),
        Err(e) => Section::failed(e),
    };

    let subrings_section = match subrings::enumerate_subrings(&ring, options.max_rank) {
        Ok(lattice) => Section::ok(
            LatticeDetail {
                count: lattice.len(),
                subrings: lattice
                    .iter()
                    .map(|s| SubringLine { rank: s.rank(), labels: labels_of(s.basis()) })
                    .collect(),
            },
            truncation_note(&ring, "closures constrain only trusted products"),
        ),
        Err(e) => Section::failed(e),
    };

    let adjoint = {
        let sub = subrings::adjoint_subring(&ring);
        let characteristic = if doc.metadata.connected == Some(true) {
            iso::characteristic_check(&sub, options.max_rank).ok()
        } else {
            None
        };
        Section::ok(
            AdjointDetail {
                rank: sub.rank(),
                labels: labels_of(sub.basis()),
                characteristic,
            },
            truncation_note(&ring, "the adjoint closure saw only trusted products"),
        )
    };

    let automorphisms = match iso::order_automorphisms(&ring, options.max_rank) {
        Ok(isos) => Section::ok(
            AutomorphismDetail {
                count: isos.len(),
                permutations: isos.iter().map(|i| i.perm().to_vec()).collect(),
            },
            Vec::new(),
        ),
        Err(e) => Section::failed(e),
    };

    let config = SolverConfig { seed: options.seed, tol: options.tol, ..SolverConfig::default() };
    let character_solutions = match solver::solve_character_system(&ring, &config) {
        Ok(solutions) => Section::ok(
            SolutionsDetail {
                count: solutions.len(),
                max_residual: round9(
                    solutions.iter().map(|s| s.residual).fold(0.0, f64::max),
                ),
                solutions: solutions
                    .iter()
                    .map(|s| s.values.iter().map(|z| [round9(z.re), round9(z.im)]).collect())
                    .collect(),
            },
            truncation_note(&ring, "equations beyond the bound were excluded"),
        ),
        Err(e) => Section::failed(e),
    };

    let fp_dimensions = Section::ok(
        FpDetail { dimensions: solver::fp_dimensions(&ring).into_iter().map(round9).collect() },
        truncation_note(&ring, "high-index dimensions are clipped artifacts"),
    );

    Ok(AnalysisReport {
        name: ring.name().to_string(),
        rank: ring.rank(),
        complete_below: ring.complete_below(),
        connected: doc.metadata.connected,
        seed: options.seed,
        tol: options.tol,
        validation,
        invertibles,
        chain_group,
        subrings: subrings_section,
        adjoint_subring: adjoint,
        automorphisms,
        character_solutions,
        fp_dimensions,
    })
}

impl AnalysisReport {
    /// True when no section failed and validation found no violation.
    pub fn is_clean(&self) -> bool {
        self.validation.detail.as_ref().is_some_and(|d| d.valid)
            && self.validation.is_ok()
            && self.invertibles.is_ok()
            && self.chain_group.is_ok()
            && self.subrings.is_ok()
            && self.adjoint_subring.is_ok()
            && self.automorphisms.is_ok()
            && self.character_solutions.is_ok()
            && self.fp_dimensions.is_ok()
    }

    /// Canonical JSON form with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// Plain-text rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("ring {} (rank {})", self.name, self.rank));
        if let Some(bound) = self.complete_below {
            line(format!("truncated: products trusted only for index sums up to {bound}"));
        }

        match &self.validation.detail {
            Some(d) if d.valid => line("validation: ok".into()),
            Some(d) => {
                line(format!("validation: {} violation(s)", d.violations.len()));
                for v in &d.violations {
                    line(format!("  {v}"));
                }
            }
            None => line(format!("validation: {}", self.validation.status)),
        }

        match &self.invertibles.detail {
            Some(d) => line(format!(
                "invertible characters: {} (order {}), members: {}",
                d.group,
                d.order,
                d.members.join(" ")
            )),
            None => line(section_failure("invertible characters", &self.invertibles.error)),
        }

        match &self.chain_group.detail {
            Some(d) => {
                line(format!("chain group: {} (order {})", d.group, d.order));
                for class in &d.classes {
                    line(format!("  class: {}", class.join(" ")));
                }
                line(
                    "  for the fusion rules of a compact group this is the character group of \
                     the center"
                        .into(),
                );
            }
            None => line(section_failure("chain group", &self.chain_group.error)),
        }

        match &self.subrings.detail {
            Some(d) => {
                line(format!("representation subrings: {}", d.count));
                for s in &d.subrings {
                    line(format!("  rank {}: {}", s.rank, s.labels.join(" ")));
                }
            }
            None => line(section_failure("representation subrings", &self.subrings.error)),
        }

        match &self.adjoint_subring.detail {
            Some(d) => {
                line(format!("adjoint subring: rank {}, members: {}", d.rank, d.labels.join(" ")));
                match d.characteristic {
                    Some(true) => line(
                        "  fixed by every order automorphism; with the ring asserted to come \
                         from a connected compact group, it corresponds to a quotient by the \
                         center"
                            .into(),
                    ),
                    Some(false) => {
                        line("  moved by some order automorphism".into());
                    }
                    None => line(
                        "  characteristic status not assessed (connectedness not asserted)"
                            .into(),
                    ),
                }
            }
            None => line(section_failure("adjoint subring", &self.adjoint_subring.error)),
        }

        match &self.automorphisms.detail {
            Some(d) => line(format!("order automorphisms: {}", d.count)),
            None => line(section_failure("order automorphisms", &self.automorphisms.error)),
        }

        match &self.character_solutions.detail {
            Some(d) => {
                line(format!(
                    "character solutions: {} (max residual {:e})",
                    d.count, d.max_residual
                ));
                for solution in &d.solutions {
                    let rendered: Vec<String> =
                        solution.iter().map(|&[re, im]| format_complex(re, im)).collect();
                    line(format!("  ({})", rendered.join(", ")));
                }
            }
            None => {
                line(section_failure("character solutions", &self.character_solutions.error));
            }
        }

        match &self.fp_dimensions.detail {
            Some(d) => {
                let rendered: Vec<String> = d.dimensions.iter().map(|x| x.to_string()).collect();
                line(format!("fp dimensions: {}", rendered.join(", ")));
            }
            None => line(section_failure("fp dimensions", &self.fp_dimensions.error)),
        }

        let warnings: Vec<&String> = [
            &self.validation.warnings,
            &self.invertibles.warnings,
            &self.chain_group.warnings,
            &self.subrings.warnings,
            &self.adjoint_subring.warnings,
            &self.automorphisms.warnings,
            &self.character_solutions.warnings,
            &self.fp_dimensions.warnings,
        ]
        .into_iter()
        .flatten()
        .collect();
        if !warnings.is_empty() {
            line("warnings:".into());
            for w in warnings {
                line(format!("  {w}"));
            }
        }
        out
    }
}

fn section_failure(name: &str, error: &Option<String>) -> String {
    match error {
        Some(e) => format!("{name}: failed ({e})"),
        None => format!("{name}: failed"),
    }
}

/// Rounded complex rendering, shared with the CLI.
pub(crate) fn format_complex_rounded(z: Complex<f64>) -> String {
    format_complex(round9(z.re), round9(z.im))
}

fn format_complex(re: f64, im: f64) -> String {
    if im == 0.0 {
        format!("{re}")
    } else if im > 0.0 {
        format!("{re}+{im}i")
    } else {
        format!("{re}-{}i", -im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn s3_report_is_clean_and_renders() {
        let doc = catalog::document("s3").unwrap();
        let report = analyze(&doc, &AnalyzeOptions::default()).unwrap();
        assert!(report.is_clean());
        let text = report.render_text();
        assert!(text.contains("ring s3 (rank 3)"));
        assert!(text.contains("validation: ok"));
        assert!(text.contains("fp dimensions: 1, 1, 2"));
        assert!(!text.contains("warnings:"));
    }

    #[test]
    fn json_is_stable_across_runs() {
        let doc = catalog::document("d4").unwrap();
        let options = AnalyzeOptions::default();
        let first = analyze(&doc, &options).unwrap().to_json();
        let second = analyze(&doc, &options).unwrap().to_json();
        assert_eq!(first, second);
        assert!(first.ends_with('\n'));
    }

    #[test]
    fn truncated_entry_reports_warnings() {
        let doc = catalog::document("su2-trunc-jmax2").unwrap();
        let report = analyze(&doc, &AnalyzeOptions::default()).unwrap();
        assert!(report.validation.detail.as_ref().unwrap().valid);
        assert!(!report.fp_dimensions.warnings.is_empty());
        let text = report.render_text();
        assert!(text.contains("truncated"));
        assert!(text.contains("warnings:"));
    }

    #[test]
    fn connectedness_gates_the_characteristic_claim() {
        let connected = catalog::document("su2-trunc-jmax2").unwrap();
        let report = analyze(&connected, &AnalyzeOptions::default()).unwrap();
        let detail = report.adjoint_subring.detail.as_ref().unwrap();
        assert_eq!(detail.characteristic, Some(true));

        let finite = catalog::document("d4").unwrap();
        let report = analyze(&finite, &AnalyzeOptions::default()).unwrap();
        let detail = report.adjoint_subring.detail.as_ref().unwrap();
        assert_eq!(detail.characteristic, None);
        assert!(report.render_text().contains("connectedness not asserted"));
    }

    #[test]
    fn seed_and_tol_appear_in_the_report() {
        let doc = catalog::document("z4").unwrap();
        let options = AnalyzeOptions { seed: 99, tol: 1e-8, ..AnalyzeOptions::default() };
        let report = analyze(&doc, &options).unwrap();
        assert_eq!(report.seed, 99);
        assert_eq!(report.tol, 1e-8);
        assert!(report.to_json().contains("\"seed\": 99"));
    }
}
