//! Corpus harness: run one coloring algorithm over a batch of generated or
//! named instances, validate every output, compare against the exact oracles
//! where they fit, and aggregate target-met rates. Per-instance failures are
//! recorded in the report without aborting the batch.

use serde::{Deserialize, Serialize};

use crate::embedding::{PlanarEmbedding, VertexId};
use crate::error::{Error, Result};
use crate::gen::GenSpec;
use crate::spiral::{decompose, Direction};
use crate::vertex_color::{RepairBudget, RunStats};

/// One corpus member: a generator spec or a named reference instance.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceSpec {
    Gen(GenSpec),
    Named(String),
}

impl InstanceSpec {
    pub fn build(&self) -> Result<PlanarEmbedding> {
        match self {
            InstanceSpec::Gen(spec) => spec.generate(),
            InstanceSpec::Named(name) => crate::gen::named_instance(name),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            InstanceSpec::Gen(s) => format!("{:?} n={} seed={} flips={}", s.kind, s.n, s.seed, s.flips),
            InstanceSpec::Named(n) => n.clone(),
        }
    }
}

/// Algorithm selector for the harness.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgorithmKind {
    Vertex,
    Edge,
    Total,
    Entire,
    Three,
    ThreeForest,
    ThreeSteinberg,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub instances: Vec<InstanceSpec>,
    pub algorithm: AlgorithmKind,
    pub budget: RepairBudget,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceReport {
    pub id: usize,
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub violations: usize,
    pub palette_used: usize,
    pub target: usize,
    pub target_met: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<RunStats>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Aggregate {
    pub total: usize,
    pub valid: usize,
    pub target_met: usize,
    pub budget_exhausted: usize,
    pub other_failures: usize,
    pub valid_rate: f64,
    pub target_rate: f64,
    /// Instances where the oracle ran and the algorithm matched it exactly.
    pub oracle_compared: usize,
    pub oracle_exact: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusReport {
    pub algorithm: AlgorithmKind,
    pub instances: Vec<InstanceReport>,
    pub aggregate: Aggregate,
}

impl CorpusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Plain-text summary table, one row per instance plus the aggregate.
    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<5} {:<34} {:>4} {:>4} {:>3} {:>6} {:>7} {:>6}  status",
            "id", "instance", "n", "m", "max", "colors", "target", "oracle"
        );
        for r in &self.instances {
            let status = if let Some(e) = &r.error {
                e.clone()
            } else if r.violations > 0 {
                format!("{} violations", r.violations)
            } else if r.target_met {
                "ok".into()
            } else {
                "over target".into()
            };
            let _ = writeln!(
                out,
                "{:<5} {:<34} {:>4} {:>4} {:>3} {:>6} {:>7} {:>6}  {}",
                r.id,
                r.instance,
                r.n,
                r.m,
                r.max_degree,
                r.palette_used,
                r.target,
                r.oracle.map(|o| o.to_string()).unwrap_or_else(|| "-".into()),
                status
            );
        }
        let a = &self.aggregate;
        let _ = writeln!(
            out,
            "-- {} instances: {} valid ({:.1}%), {} at target ({:.1}%), {} budget-exhausted, {} other failures, oracle exact {}/{}",
            a.total,
            a.valid,
            100.0 * a.valid_rate,
            a.target_met,
            100.0 * a.target_rate,
            a.budget_exhausted,
            a.other_failures,
            a.oracle_exact,
            a.oracle_compared,
        );
        out
    }

    /// Exit-code class: 0 clean, 1 validation failure, 2 budget exhausted.
    pub fn worst_failure(&self) -> u8 {
        let mut worst = 0;
        for r in &self.instances {
            if r.error.as_deref().map(|e| e.contains("budget exhausted")).unwrap_or(false) {
                worst = worst.max(2);
            } else if !r.ok {
                worst = worst.max(1);
            }
        }
        worst
    }
}

/// Run the configured algorithm over the corpus. Deterministic given the
/// instance specs and budget; instances are reported in id order.
pub fn run_corpus(spec: &CorpusSpec) -> CorpusReport {
    let mut instances = Vec::with_capacity(spec.instances.len());
    for (id, inst) in spec.instances.iter().enumerate() {
        instances.push(run_instance(id, inst, spec.algorithm, &spec.budget));
    }
    let mut agg = Aggregate { total: instances.len(), ..Aggregate::default() };
    for r in &instances {
        if r.ok {
            agg.valid += 1;
        } else if r.error.as_deref().map(|e| e.contains("budget exhausted")).unwrap_or(false) {
            agg.budget_exhausted += 1;
        } else {
            agg.other_failures += 1;
        }
        if r.ok && r.target_met {
            agg.target_met += 1;
        }
        if let Some(o) = r.oracle {
            agg.oracle_compared += 1;
            if r.ok && r.palette_used == o {
                agg.oracle_exact += 1;
            }
        }
    }
    if agg.total > 0 {
        agg.valid_rate = agg.valid as f64 / agg.total as f64;
        agg.target_rate = agg.target_met as f64 / agg.total as f64;
    }
    CorpusReport { algorithm: spec.algorithm, instances, aggregate: agg }
}

fn run_instance(
    id: usize,
    inst: &InstanceSpec,
    algorithm: AlgorithmKind,
    budget: &RepairBudget,
) -> InstanceReport {
    let mut report = InstanceReport {
        id,
        instance: inst.describe(),
        n: 0,
        m: 0,
        max_degree: 0,
        ok: false,
        error: None,
        violations: 0,
        palette_used: 0,
        target: 0,
        target_met: false,
        oracle: None,
        stats: None,
    };
    let emb = match inst.build() {
        Ok(emb) => emb,
        Err(e) => {
            report.error = Some(e.to_string());
            return report;
        }
    };
    report.n = emb.n();
    report.m = emb.m();
    report.max_degree = emb.max_degree();
    let dec = decompose(&emb, default_start(&emb), Direction::Clockwise);
    let delta = emb.max_degree();

    let outcome: Result<(usize, usize, Vec<crate::verify::Violation>, RunStats, Option<usize>)> =
        match algorithm {
            AlgorithmKind::Vertex => crate::vertex_color::four_color(&emb, &dec, budget).and_then(
                |(col, stats)| {
                    let violations = crate::verify::verify_vertex(&emb, &col.colors)?;
                    let oracle = (emb.n() <= 12)
                        .then(|| crate::oracle::chromatic_number_exact(&emb, 6).ok())
                        .flatten();
                    Ok((col.max_color(), 4, violations, stats, oracle))
                },
            ),
            AlgorithmKind::Edge => crate::edge_color::spiral_edge_color(&emb, &dec, budget)
                .and_then(|(col, stats)| {
                    let violations = crate::verify::verify_edge(&emb, &col.colors)?;
                    let oracle = (emb.m() <= 24)
                        .then(|| crate::oracle::chromatic_index_exact(&emb, delta + 2).ok())
                        .flatten();
                    Ok((col.max_color(), delta, violations, stats, oracle))
                }),
            AlgorithmKind::Total => crate::total_color::total_color(&emb, &dec, budget).and_then(
                |(col, stats)| {
                    let violations = crate::verify::verify_total(&emb, &col.vertices, &col.edges)?;
                    let oracle = (emb.m() <= 24)
                        .then(|| crate::oracle::total_chromatic_exact(&emb, delta + 3).ok())
                        .flatten();
                    Ok((col.max_color(), delta + 2, violations, stats, oracle))
                },
            ),
            AlgorithmKind::Entire => crate::total_color::entire_color(&emb, &dec, budget).and_then(
                |(col, stats)| {
                    let violations =
                        crate::verify::verify_entire(&emb, &col.vertices, &col.edges, &col.faces)?;
                    let oracle = (emb.m() <= 24)
                        .then(|| crate::oracle::entire_chromatic_exact(&emb, delta + 5).ok())
                        .flatten();
                    Ok((col.max_color(), delta + 4, violations, stats, oracle))
                },
            ),
            AlgorithmKind::Three => {
                crate::vertex_color::three_color_triangle_free(&emb, &dec, budget).and_then(
                    |(col, stats)| {
                        let violations = crate::verify::verify_vertex(&emb, &col.colors)?;
                        Ok((col.max_color(), 3, violations, stats, None))
                    },
                )
            }
            AlgorithmKind::ThreeForest => {
                crate::vertex_color::three_color_forest(&emb, &dec).and_then(|(col, stats)| {
                    let violations = crate::verify::verify_vertex(&emb, &col.colors)?;
                    Ok((col.max_color(), 3, violations, stats, None))
                })
            }
            AlgorithmKind::ThreeSteinberg => {
                crate::vertex_color::three_color_steinberg(&emb, &dec, budget).and_then(
                    |(col, stats)| {
                        let violations = crate::verify::verify_vertex(&emb, &col.colors)?;
                        Ok((col.max_color(), 3, violations, stats, None))
                    },
                )
            }
        };

    match outcome {
        Ok((palette, target, violations, stats, oracle)) => {
            report.palette_used = palette;
            report.target = target;
            report.violations = violations.len();
            report.ok = violations.is_empty();
            report.target_met = palette <= target;
            report.oracle = oracle;
            report.stats = Some(stats);
        }
        Err(Error::BudgetExhausted(msg)) => {
            report.error = Some(format!("budget exhausted: {msg}"));
        }
        Err(e) => {
            report.error = Some(e.to_string());
        }
    }
    report
}

/// Default decomposition start: the smallest vertex on the outer face.
pub fn default_start(emb: &PlanarEmbedding) -> VertexId {
    emb.face(emb.outer_face())
        .vertices
        .iter()
        .copied()
        .min()
        .unwrap_or(VertexId(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::GenKind;

    #[test]
    fn empty_corpus_gives_empty_report() {
        let spec = CorpusSpec {
            instances: vec![],
            algorithm: AlgorithmKind::Vertex,
            budget: RepairBudget::default(),
        };
        let report = run_corpus(&spec);
        assert_eq!(report.aggregate.total, 0);
        assert_eq!(report.worst_failure(), 0);
        assert!(report.to_text().contains("0 instances"));
    }

    #[test]
    fn small_vertex_corpus_is_fully_valid() {
        let instances = (1..=10)
            .map(|seed| {
                InstanceSpec::Gen(GenSpec { kind: GenKind::Maximal, n: 12, seed, flips: 10 })
            })
            .collect();
        let spec = CorpusSpec {
            instances,
            algorithm: AlgorithmKind::Vertex,
            budget: RepairBudget::default(),
        };
        let report = run_corpus(&spec);
        assert_eq!(report.aggregate.valid, 10);
        assert_eq!(report.aggregate.target_met, 10);
        assert_eq!(report.worst_failure(), 0);
    }

    #[test]
    fn report_json_is_deterministic() {
        let spec = CorpusSpec {
            instances: vec![InstanceSpec::Named("k4".into()), InstanceSpec::Named("cube".into())],
            algorithm: AlgorithmKind::Edge,
            budget: RepairBudget::default(),
        };
        let a = run_corpus(&spec).to_json();
        let b = run_corpus(&spec).to_json();
        assert_eq!(a, b);
    }
}
