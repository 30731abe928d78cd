//! Report structures shared by the text and JSON renderers. Every text
//! rendering is produced from these structs alone, so a report decoded from
//! JSON renders to the same text.

use std::fmt::Write as _;

use crn_core::analysis::NetworkNumbers;
use crn_core::decomposition::CoordinateGraph;
use crn_core::linalg::{format_rational, int};
use crn_core::{
    connected_components, deficiency_one_check, deficiency_zero_check, network_numbers, Conclusion,
    DeficiencyVerdict, IndependenceReport, Network, Theorem,
};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

pub const TABLE_ROWS: [&str; 7] = [
    "# species",
    "# complexes",
    "# reactions",
    "# irreversible reactions",
    "# linkage classes",
    "rank of network",
    "deficiency",
];

fn labels(net: &Network, reactions: &[usize]) -> Vec<String> {
    reactions.iter().map(|&j| net.reaction_name(j)).collect()
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubnetworkReport {
    pub name: String,
    pub reactions: Vec<String>,
    pub numbers: NetworkNumbers,
    pub verdicts: Vec<DeficiencyVerdict>,
}

impl SubnetworkReport {
    pub fn build(name: &str, net: &Network, sub: &Network, reactions: &[usize]) -> Self {
        Self {
            name: name.to_string(),
            reactions: labels(net, reactions),
            numbers: network_numbers(sub),
            verdicts: vec![deficiency_zero_check(sub), deficiency_one_check(sub)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub basis: String,
    pub coefficient: String,
}

/// A non-basis reaction vector written in basis coordinates (nonzero terms
/// only, basis order).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub reaction: String,
    pub terms: Vec<Term>,
}

impl RelationReport {
    /// e.g. `R11 = -R1 - R2 - R4 - R8`.
    pub fn equation(&self) -> String {
        let mut out = format!("{} =", self.reaction);
        for (i, t) in self.terms.iter().enumerate() {
            let (negative, magnitude) = match t.coefficient.strip_prefix('-') {
                Some(m) => (true, m),
                None => (false, t.coefficient.as_str()),
            };
            let body = if magnitude == "1" {
                t.basis.clone()
            } else {
                format!("{magnitude} {}", t.basis)
            };
            match (i, negative) {
                (0, false) => write!(out, " {body}"),
                (0, true) => write!(out, " -{body}"),
                (_, false) => write!(out, " + {body}"),
                (_, true) => write!(out, " - {body}"),
            }
            .unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphReport {
    pub basis: Vec<String>,
    pub relations: Vec<RelationReport>,
    pub edges: Vec<(String, String)>,
    pub components: Vec<Vec<String>>,
    pub connected: bool,
}

impl GraphReport {
    pub fn build(net: &Network, g: &CoordinateGraph) -> Self {
        let names = g.vertex_labels();
        let relations = g
            .relations()
            .iter()
            .map(|rel| RelationReport {
                reaction: net.reaction_name(rel.reaction),
                terms: rel
                    .coefficients
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != int(0))
                    .map(|(v, c)| Term {
                        basis: names[v].clone(),
                        coefficient: format_rational(c),
                    })
                    .collect(),
            })
            .collect();
        Self {
            basis: names.to_vec(),
            relations,
            edges: g
                .edges()
                .iter()
                .map(|&(a, b)| (names[a].clone(), names[b].clone()))
                .collect(),
            components: connected_components(g)
                .iter()
                .map(|c| c.iter().map(|&v| names[v].clone()).collect())
                .collect(),
            connected: g.is_connected(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartsSource {
    CoordinateGraph,
    Given,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub source: PartsSource,
    /// Only the trivial decomposition: `parts` holds the whole reaction set.
    pub trivial: bool,
    pub parts: Vec<SubnetworkReport>,
    pub independence: IndependenceReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: String,
    pub network: SubnetworkReport,
    pub coordinate_graph: GraphReport,
    pub decomposition: DecompositionReport,
}

pub fn part_name(i: usize) -> String {
    format!("N{}", i + 1)
}

pub fn part_reports(
    net: &Network,
    parts: &[Vec<usize>],
) -> crn_core::Result<Vec<SubnetworkReport>> {
    parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            Ok(SubnetworkReport::build(
                &part_name(i),
                net,
                &net.subnetwork(p)?,
                p,
            ))
        })
        .collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn theorem_name(t: Theorem) -> &'static str {
    match t {
        Theorem::DeficiencyZero => "deficiency zero theorem",
        Theorem::DeficiencyOne => "deficiency one theorem",
    }
}

pub fn render_table(columns: &[(&str, &NetworkNumbers)]) -> String {
    let label_width = TABLE_ROWS.iter().map(|r| r.len()).max().unwrap();
    let cells: Vec<[String; 7]> = columns
        .iter()
        .map(|(_, n)| n.table_column().map(|v| v.to_string()))
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .zip(&cells)
        .map(|((name, _), c)| c.iter().map(String::len).max().unwrap().max(name.len()))
        .collect();
    let mut out = format!("{:label_width$}", "");
    for ((name, _), w) in columns.iter().zip(&widths) {
        write!(out, "  {name:>w$}").unwrap();
    }
    out.push('\n');
    for (row, label) in TABLE_ROWS.iter().enumerate() {
        write!(out, "{label:label_width$}").unwrap();
        for (c, w) in cells.iter().zip(&widths) {
            write!(out, "  {:>w$}", c[row]).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn render_verdict(out: &mut String, v: &DeficiencyVerdict, indent: &str) {
    let status = if v.applicable {
        "applies"
    } else {
        "does not apply"
    };
    writeln!(out, "{indent}{}: {status}", theorem_name(v.theorem)).unwrap();
    for c in &v.conditions {
        writeln!(out, "{indent}  {}: {}", c.name, yes_no(c.holds)).unwrap();
    }
    if v.conclusion != Conclusion::NotApplicable {
        writeln!(out, "{indent}  conclusion: {}", v.conclusion.describe()).unwrap();
    }
}

pub fn render_independence(out: &mut String, rep: &IndependenceReport, indent: &str) {
    let ind = if rep.independent {
        "independent"
    } else {
        "not independent"
    };
    let inc = if rep.incidence_independent {
        "incidence independent"
    } else {
        "not incidence independent"
    };
    writeln!(
        out,
        "{indent}stoichiometric ranks: {} ({ind})",
        rep.rank_equation()
    )
    .unwrap();
    writeln!(
        out,
        "{indent}incidence ranks: {} ({inc})",
        rep.incidence_rank_equation()
    )
    .unwrap();
}

impl AnalysisReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let d = &self.decomposition;
        let mut columns = vec![(self.network.name.as_str(), &self.network.numbers)];
        if !d.trivial {
            columns.extend(d.parts.iter().map(|p| (p.name.as_str(), &p.numbers)));
        }
        out.push_str("Network numbers\n");
        out.push_str(&render_table(&columns));
        writeln!(
            out,
            "weakly reversible: {}",
            yes_no(self.network.numbers.weakly_reversible)
        )
        .unwrap();

        let g = &self.coordinate_graph;
        out.push_str("\nCoordinate graph\n");
        writeln!(out, "  basis: {}", braces(&g.basis)).unwrap();
        out.push_str("  relations:\n");
        for rel in &g.relations {
            writeln!(out, "    {}", rel.equation()).unwrap();
        }
        let edges: Vec<String> = g.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        if edges.is_empty() {
            out.push_str("  edges: none\n");
        } else {
            writeln!(out, "  edges: {}", edges.join(" ")).unwrap();
        }
        let comps: Vec<String> = g.components.iter().map(|c| braces(c)).collect();
        writeln!(
            out,
            "  components ({}): {}",
            g.components.len(),
            comps.join(" | ")
        )
        .unwrap();

        out.push_str("\nDecomposition\n");
        let source = match d.source {
            PartsSource::CoordinateGraph => "coordinate graph components",
            PartsSource::Given => "given partition",
        };
        if d.trivial {
            match d.source {
                PartsSource::CoordinateGraph => out.push_str(
                    "  trivial only: the coordinate graph is connected, no nontrivial independent decomposition exists\n",
                ),
                PartsSource::Given => out.push_str("  trivial: a single part (given partition)\n"),
            }
        } else {
            writeln!(out, "  source: {source}").unwrap();
            for p in &d.parts {
                writeln!(out, "  {} = {}", p.name, braces(&p.reactions)).unwrap();
            }
        }
        render_independence(&mut out, &d.independence, "  ");

        out.push_str("\nDeficiency theorems\n");
        let mut subjects = vec![&self.network];
        if !d.trivial {
            subjects.extend(&d.parts);
        }
        for s in subjects {
            writeln!(out, "  {}", s.name).unwrap();
            for v in &s.verdicts {
                render_verdict(&mut out, v, "    ");
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContainsReport {
    pub reactions: Vec<String>,
    pub independence: IndependenceReport,
    /// The listed reactions form a part of some independent decomposition.
    pub found: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub schema_version: String,
    pub basis: Vec<String>,
    pub trivial: bool,
    pub parts: Vec<Vec<String>>,
    pub contains: Option<ContainsReport>,
}

impl DecomposeReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        if self.trivial {
            out.push_str("trivial only\n");
        } else {
            for (i, p) in self.parts.iter().enumerate() {
                writeln!(out, "P{} = {}", i + 1, braces(p)).unwrap();
            }
        }
        if let Some(c) = &self.contains {
            let verdict = if c.found {
                "is a part of an independent decomposition"
            } else {
                "is not a part of any independent decomposition"
            };
            writeln!(out, "{} {verdict}", braces(&c.reactions)).unwrap();
            render_independence(&mut out, &c.independence, "  ");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartLabels {
    pub name: String,
    pub reactions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema_version: String,
    pub parts: Vec<PartLabels>,
    pub independence: IndependenceReport,
}

impl CheckReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for p in &self.parts {
            writeln!(out, "{} = {}", p.name, braces(&p.reactions)).unwrap();
        }
        render_independence(&mut out, &self.independence, "");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumbersColumn {
    pub name: String,
    pub reactions: Vec<String>,
    pub numbers: NetworkNumbers,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumbersReport {
    pub schema_version: String,
    pub columns: Vec<NumbersColumn>,
}

impl NumbersReport {
    pub fn render_text(&self) -> String {
        let cols: Vec<(&str, &NetworkNumbers)> = self
            .columns
            .iter()
            .map(|c| (c.name.as_str(), &c.numbers))
            .collect();
        render_table(&cols)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub name: String,
    pub species: Vec<String>,
    pub f: Vec<f64>,
    pub max_abs_f: f64,
    pub flux_scale: f64,
    pub steady: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteadyStateReport {
    pub schema_version: String,
    /// Written as a string so that `inf` survives JSON.
    pub tolerance: String,
    pub evaluations: Vec<Evaluation>,
}

impl SteadyStateReport {
    pub fn all_steady(&self) -> bool {
        self.evaluations.iter().all(|e| e.steady)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "tolerance: {}", self.tolerance).unwrap();
        for e in &self.evaluations {
            let f: Vec<String> = e
                .species
                .iter()
                .zip(&e.f)
                .map(|(s, v)| format!("{s}: {v}"))
                .collect();
            writeln!(out, "{}", e.name).unwrap();
            writeln!(out, "  f(x) = ({})", f.join(", ")).unwrap();
            writeln!(
                out,
                "  max |f| = {}, flux scale = {}",
                e.max_abs_f, e.flux_scale
            )
            .unwrap();
            let verdict = if e.steady {
                "steady state"
            } else {
                "not a steady state"
            };
            writeln!(out, "  {verdict}").unwrap();
        }
        out
    }
}
