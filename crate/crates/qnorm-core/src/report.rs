//! Machine-readable analysis reports with a stable field order, plus a
//! human-readable text rendering. The JSON body is deterministic: no
//! timestamps, field order fixed by the struct definitions.

use serde::{Deserialize, Serialize};

use crate::analysis::{ClassReport, ClassValue, SideClass};
use crate::garside::{GarsideVerdict, TriangularPresentation};
use crate::qmap::QuadMap;
use crate::rewriting::{ClassifySummary, RewriteGraph, TerminationReport};
use crate::words::Word;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub system: SystemInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalize: Option<NormalizeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rewrite: Option<RewriteSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub termination: Option<TerminationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub garside: Option<GarsideSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifySection>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SystemInfo {
    pub source: String,
    pub generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub neutral: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CheckSection {
    pub idempotent: bool,
    pub axioms_43: bool,
    pub domino: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detected_neutral: Option<String>,
    pub neutral_warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left_weighted: Option<LeftWeightedInfo>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LeftWeightedInfo {
    pub holds: bool,
    pub search_complete: bool,
    pub failures: Vec<[String; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ClassSection {
    pub cap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_class: Option<ClassValueInfo>,
    pub p_class: Vec<PClassInfo>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PClassInfo {
    pub p: usize,
    pub value: ClassValueInfo,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ClassValueInfo {
    pub left: SideInfo,
    pub right: SideInfo,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SideInfo {
    /// "finite", "capped", or "non-normalising".
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub cap: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct NormalizeSection {
    pub input: String,
    pub strategy: String,
    pub output: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RewriteSection {
    pub start: String,
    pub nodes: usize,
    pub edges: usize,
    pub has_cycle: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalising: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub confluent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub longest_from_start: Option<usize>,
    pub budget_exhausted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TerminationSection {
    pub max_length: usize,
    pub verdicts: Vec<TerminationVerdict>,
    pub classification: ClassificationInfo,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TerminationVerdict {
    pub p: usize,
    pub terminating: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_sequence: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub within_bound: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ClassificationInfo {
    pub max_length: usize,
    pub terminating: bool,
    pub normalising: bool,
    pub confluent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_normalising_witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub non_confluent_witness: Option<[String; 3]>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GarsideSection {
    pub axioms_43: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub left_weighted: Option<LeftWeightedInfo>,
    pub garside_shaped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub greedy_agreement: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub greedy_discrepancy: Option<[String; 2]>,
    pub cancellation_bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cancellation_counterexample: Option<[String; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangular: Option<TriangularInfo>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TriangularInfo {
    pub relation_count: usize,
    pub relations: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VerifySection {
    pub checked: Vec<String>,
    pub violations: Vec<String>,
}

impl Report {
    pub fn new(source: &str, map: &QuadMap) -> Self {
        let alphabet = map.alphabet();
        Report {
            system: SystemInfo {
                source: source.to_string(),
                generators: alphabet.letters().map(|l| alphabet.name(l).into()).collect(),
                neutral: alphabet.neutral().map(|e| alphabet.name(e).into()),
            },
            check: None,
            class: None,
            normalize: None,
            rewrite: None,
            termination: None,
            garside: None,
            verify: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        push(&mut out, format!("system: {}", self.system.source));
        push(
            &mut out,
            format!(
                "generators: {}{}",
                self.system.generators.join(" "),
                match &self.system.neutral {
                    Some(e) => format!(" (neutral {e})"),
                    None => String::new(),
                }
            ),
        );
        if let Some(c) = &self.check {
            push(&mut out, format!("idempotent: {}", c.idempotent));
            push(&mut out, format!("axioms (4,3): {}", c.axioms_43));
            push(&mut out, format!("domino rule: {}", c.domino));
            if let Some(e) = &c.detected_neutral {
                push(&mut out, format!("detected neutral: {e}"));
            }
            for w in &c.neutral_warnings {
                push(&mut out, format!("warning: {w}"));
            }
            if let Some(lw) = &c.left_weighted {
                push(
                    &mut out,
                    format!(
                        "left-weighted: {} (search complete: {})",
                        lw.holds, lw.search_complete
                    ),
                );
            }
        }
        if let Some(c) = &self.class {
            if let Some(mc) = &c.minimal_class {
                push(
                    &mut out,
                    format!(
                        "minimal class: ({}, {}) [cap {}]",
                        mc.left.describe(),
                        mc.right.describe(),
                        c.cap
                    ),
                );
                for (label, side) in [("left", &mc.left), ("right", &mc.right)] {
                    if let Some(w) = &side.witness {
                        push(&mut out, format!("  {label} witness: {w}"));
                    }
                }
            }
            for p in &c.p_class {
                push(
                    &mut out,
                    format!(
                        "minimal {}-class: ({}, {})",
                        p.p,
                        p.value.left.describe(),
                        p.value.right.describe()
                    ),
                );
            }
        }
        if let Some(n) = &self.normalize {
            push(
                &mut out,
                format!("normalize[{}]: {} -> {}", n.strategy, n.input, n.output),
            );
        }
        if let Some(r) = &self.rewrite {
            push(
                &mut out,
                format!(
                    "rewrite graph from {}: {} nodes, {} edges",
                    r.start, r.nodes, r.edges
                ),
            );
            if let Some(l) = r.longest_from_start {
                push(&mut out, format!("  longest sequence: {l}"));
            }
            if let Some(cycle) = &r.cycle {
                push(&mut out, format!("  cycle: {}", cycle.join(" -> ")));
            }
            if r.budget_exhausted {
                push(&mut out, "  budget exhausted before closure".into());
            }
            if let Some(trace) = &r.trace {
                push(&mut out, format!("  trace: {}", trace.join(" -> ")));
            }
        }
        if let Some(t) = &self.termination {
            for v in &t.verdicts {
                let mut line = format!("p={}: ", v.p);
                if v.terminating {
                    line.push_str(&format!(
                        "terminating, max sequence {}",
                        v.max_sequence.unwrap_or(0)
                    ));
                    if let (Some(kind), Some(bound)) = (&v.bound_kind, v.bound) {
                        line.push_str(&format!(
                            ", bound {bound} ({kind}) {}",
                            if v.within_bound == Some(true) {
                                "respected"
                            } else {
                                "VIOLATED"
                            }
                        ));
                    }
                } else {
                    line.push_str("non-terminating");
                    if let Some(c) = &v.cycle {
                        line.push_str(&format!(" ({})", c.join(" -> ")));
                    }
                }
                push(&mut out, line);
            }
            let c = &t.classification;
            push(
                &mut out,
                format!(
                    "words of length <= {}: terminating={} normalising={} confluent={}",
                    c.max_length, c.terminating, c.normalising, c.confluent
                ),
            );
            if let Some(w) = &c.non_normalising_witness {
                push(&mut out, format!("  non-normalising witness: {w}"));
            }
            if let Some(cycle) = &c.cycle {
                push(&mut out, format!("  cycle: {}", cycle.join(" -> ")));
            }
        }
        if let Some(g) = &self.garside {
            push(&mut out, format!("axioms (4,3): {}", g.axioms_43));
            if let Some(lw) = &g.left_weighted {
                push(
                    &mut out,
                    format!(
                        "left-weighted: {} (search complete: {})",
                        lw.holds, lw.search_complete
                    ),
                );
            }
            push(&mut out, format!("garside-shaped: {}", g.garside_shaped));
            if let Some(agree) = g.greedy_agreement {
                push(&mut out, format!("greedy cross-check agrees: {agree}"));
            }
            if let Some([x, y]) = &g.greedy_discrepancy {
                push(&mut out, format!("  discrepancy at pair ({x}, {y})"));
            }
            match &g.cancellation_counterexample {
                Some([x, y, z]) => push(
                    &mut out,
                    format!("left-cancellativity fails: {x}*{y} = {x}*{z}"),
                ),
                None => push(
                    &mut out,
                    format!(
                        "no left-cancellativity failure up to degree {}",
                        g.cancellation_bound
                    ),
                ),
            }
            if let Some(t) = &g.triangular {
                push(
                    &mut out,
                    format!("triangular presentation: {} relations", t.relation_count),
                );
                for r in &t.relations {
                    push(&mut out, format!("  {r}"));
                }
            }
        }
        if let Some(v) = &self.verify {
            for line in &v.checked {
                push(&mut out, format!("checked: {line}"));
            }
            for line in &v.violations {
                push(&mut out, format!("VIOLATION: {line}"));
            }
            if v.violations.is_empty() {
                push(&mut out, "all expected facts reproduced".into());
            }
        }
        out
    }
}

impl SideInfo {
    pub fn describe(&self) -> String {
        match self.kind.as_str() {
            "finite" => self.value.unwrap_or(0).to_string(),
            "capped" => format!(">= {}", self.cap),
            _ => "non-normalising".to_string(),
        }
    }
}

pub fn side_info(map: &QuadMap, side: &crate::analysis::SideResult) -> SideInfo {
    let witness = side.witness.as_ref().map(|w| map.alphabet().render(w));
    match &side.class {
        SideClass::Finite(v) => SideInfo {
            kind: "finite".into(),
            value: Some(*v),
            witness,
            cap: side.cap,
        },
        SideClass::Capped => SideInfo {
            kind: "capped".into(),
            value: None,
            witness,
            cap: side.cap,
        },
        SideClass::NonNormalising => SideInfo {
            kind: "non-normalising".into(),
            value: None,
            witness,
            cap: side.cap,
        },
    }
}

pub fn class_value_info(map: &QuadMap, value: &ClassValue) -> ClassValueInfo {
    ClassValueInfo {
        left: side_info(map, &value.left),
        right: side_info(map, &value.right),
    }
}

pub fn check_section(map: &QuadMap, report: &ClassReport) -> CheckSection {
    CheckSection {
        idempotent: report.idempotent_phi,
        axioms_43: report.axioms_43,
        domino: report.domino,
        detected_neutral: report.neutral.map(|e| map.alphabet().name(e).into()),
        neutral_warnings: report.neutral_warnings.clone(),
        left_weighted: report.left_weighted.as_ref().map(|lw| LeftWeightedInfo {
            holds: lw.holds,
            search_complete: lw.complete,
            failures: lw
                .failures
                .iter()
                .map(|(s, t)| {
                    [
                        map.alphabet().name(*s).to_string(),
                        map.alphabet().name(*t).to_string(),
                    ]
                })
                .collect(),
        }),
    }
}

pub fn class_section(map: &QuadMap, report: &ClassReport) -> ClassSection {
    ClassSection {
        cap: report.cap,
        minimal_class: report
            .minimal_class
            .as_ref()
            .map(|v| class_value_info(map, v)),
        p_class: report
            .p_class
            .iter()
            .map(|(p, v)| PClassInfo {
                p: *p,
                value: class_value_info(map, v),
            })
            .collect(),
    }
}

pub fn rewrite_section(
    map: &QuadMap,
    graph: &RewriteGraph,
    trace: Option<Vec<Word>>,
) -> RewriteSection {
    let render = |w: &Word| map.alphabet().render(w);
    RewriteSection {
        start: render(&graph.nodes[0]),
        nodes: graph.nodes.len(),
        edges: graph.edges.len(),
        has_cycle: graph.has_cycle,
        cycle: graph
            .cycle_witness
            .as_ref()
            .map(|c| c.iter().map(render).collect()),
        normalising: graph.normalising,
        confluent: graph.confluent,
        longest_from_start: graph.longest_from_start,
        budget_exhausted: graph.budget_exhausted,
        trace: trace.map(|t| t.iter().map(render).collect()),
    }
}

pub fn termination_verdict(report: &TerminationReport) -> TerminationVerdict {
    TerminationVerdict {
        p: report.p,
        terminating: report.terminating,
        max_sequence: report.max_sequence,
        max_witness: report.max_witness.clone(),
        bound_kind: report.bound.map(|(k, _)| k.label().to_string()),
        bound: report.bound.map(|(_, b)| b),
        within_bound: report.within_bound,
        cycle: report.cycle_witness.clone(),
    }
}

pub fn classification_info(summary: &ClassifySummary) -> ClassificationInfo {
    ClassificationInfo {
        max_length: summary.max_len,
        terminating: summary.terminating,
        normalising: summary.normalising,
        confluent: summary.confluent,
        cycle: summary.cycle_witness.clone(),
        non_normalising_witness: summary.non_normalising_witness.clone(),
        non_confluent_witness: summary
            .non_confluent_witness
            .clone()
            .map(|(a, b, c)| [a, b, c]),
    }
}

pub fn garside_section(
    map: &QuadMap,
    verdict: &GarsideVerdict,
    triangular: Option<&TriangularPresentation>,
) -> GarsideSection {
    let name = |l: crate::words::Letter| map.alphabet().name(l).to_string();
    GarsideSection {
        axioms_43: verdict.axioms_43,
        left_weighted: verdict.left_weighted.as_ref().map(|lw| LeftWeightedInfo {
            holds: lw.holds,
            search_complete: lw.complete,
            failures: lw
                .failures
                .iter()
                .map(|(s, t)| [name(*s), name(*t)])
                .collect(),
        }),
        garside_shaped: verdict.garside_shaped,
        greedy_agreement: verdict.greedy_agreement.as_ref().map(|r| r.is_ok()),
        greedy_discrepancy: verdict
            .greedy_agreement
            .as_ref()
            .and_then(|r| r.as_ref().err())
            .map(|(x, y)| [x.clone(), y.clone()]),
        cancellation_bound: verdict.cancellation_bound,
        cancellation_counterexample: verdict
            .cancellation_counterexample
            .clone()
            .map(|(x, y, z)| [x, y, z]),
        triangular: triangular.map(|t| TriangularInfo {
            relation_count: t.relations.len(),
            relations: t
                .relations
                .iter()
                .map(|r| {
                    format!(
                        "{}.{} = {}",
                        name(r.left),
                        name(r.right),
                        r.product.map(name).unwrap_or_else(|| "1".into())
                    )
                })
                .collect(),
        }),
    }
}
