//! File formats: the instance text format, trace JSON-lines, frontier and
//! profile CSVs, and the competitiveness report JSON.
//!
//! Every number on the wire is an exact rational. Serialization is
//! canonical (root line, vertices by id, edges by id, reduced fractions),
//! so generate -> parse -> serialize is byte-stable.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Instance, VertexId};
use crate::rational::{format_rational, format_rational_short, parse_rational, Rational};
use crate::scaling::{ParetoFrontier, ScalingTrace};
use crate::tree_greedy::GreedyTrace;
use crate::verify::{CompetitiveReport, StepProfile, Verdict};

/// Parses the instance text format: one record per line,
/// `v <id> <prize>`, `e <id> <u> <v> <cost>`, `root <id>`, with rationals
/// written as `p/q` or plain integers. Blank lines and `#` comments are
/// skipped.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut vertices: Vec<(VertexId, Rational)> = Vec::new();
    let mut edges: Vec<(EdgeId, VertexId, VertexId, Rational)> = Vec::new();
    let mut root: Option<VertexId> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let parse_id = |s: &str| -> Result<u32> {
            s.parse().map_err(|_| Error::Parse {
                line,
                message: format!("invalid id `{s}`"),
            })
        };
        let parse_rat = |s: &str| -> Result<Rational> {
            parse_rational(s).map_err(|message| Error::Parse { line, message })
        };
        match fields[0] {
            "v" => {
                if fields.len() != 3 {
                    return Err(Error::Parse {
                        line,
                        message: "vertex records are `v <id> <prize>`".into(),
                    });
                }
                vertices.push((VertexId(parse_id(fields[1])?), parse_rat(fields[2])?));
            }
            "e" => {
                if fields.len() != 5 {
                    return Err(Error::Parse {
                        line,
                        message: "edge records are `e <id> <u> <v> <cost>`".into(),
                    });
                }
                edges.push((
                    EdgeId(parse_id(fields[1])?),
                    VertexId(parse_id(fields[2])?),
                    VertexId(parse_id(fields[3])?),
                    parse_rat(fields[4])?,
                ));
            }
            "root" => {
                if fields.len() != 2 {
                    return Err(Error::Parse {
                        line,
                        message: "root records are `root <id>`".into(),
                    });
                }
                if root.replace(VertexId(parse_id(fields[1])?)).is_some() {
                    return Err(Error::Parse {
                        line,
                        message: "multiple root records".into(),
                    });
                }
            }
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown record `{other}`"),
                })
            }
        }
    }
    let root = root.ok_or(Error::Parse {
        line: 0,
        message: "missing root record".into(),
    })?;
    Instance::new(root, vertices, edges)
}

/// Canonical serialization of an instance; inverse of [`parse_instance`].
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    out.push_str(&format!("root {}\n", inst.root()));
    for v in inst.vertex_ids() {
        out.push_str(&format!("v {} {}\n", v, format_rational_short(inst.prize(v))));
    }
    for edge in inst.edges() {
        out.push_str(&format!(
            "e {} {} {} {}\n",
            edge.id,
            edge.u,
            edge.v,
            format_rational_short(&edge.cost)
        ));
    }
    out
}

fn edge_ids(ids: impl IntoIterator<Item = EdgeId>) -> Value {
    Value::from(ids.into_iter().map(|e| e.0).collect::<Vec<u32>>())
}

/// Greedy trace as JSON-lines: one record per iteration, plus a final
/// `blocks` record when `include_blocks` is set (the graph variant).
pub fn write_greedy_trace(trace: &GreedyTrace, include_blocks: bool) -> String {
    let mut out = String::new();
    for step in &trace.steps {
        let record = json!({
            "iter": step.index,
            "edge": step.edge.0,
            "density": format_rational(&step.density),
            "extension": edge_ids(step.extension.iter().copied()),
        });
        out.push_str(&record.to_string());
        out.push('\n');
    }
    if include_blocks {
        let blocks: Vec<Value> = trace
            .blocks
            .iter()
            .map(|b| {
                json!({
                    "edges": edge_ids(b.extension.iter().copied()),
                    "density": format_rational(&b.density),
                    "anchor": b.anchor.0,
                })
            })
            .collect();
        out.push_str(&json!({ "blocks": blocks }).to_string());
        out.push('\n');
    }
    out
}

/// Scaling trace as JSON-lines, one record per doubling iteration.
pub fn write_scaling_trace(trace: &ScalingTrace) -> String {
    let mut out = String::new();
    for step in &trace.steps {
        let record = json!({
            "iter": step.iteration,
            "budget": format_rational(&step.budget),
            "tree": edge_ids(step.tree.iter().copied()),
            "prize": format_rational(&step.prize),
            "appended": edge_ids(step.appended.iter().copied()),
        });
        out.push_str(&record.to_string());
        out.push('\n');
    }
    out
}

/// Frontier CSV: `cost_num,cost_den,prize_num,prize_den`, one row per
/// nondominated point.
pub fn write_frontier_csv(frontier: &ParetoFrontier) -> String {
    let mut out = String::from("cost_num,cost_den,prize_num,prize_den\n");
    for (cost, prize) in frontier.points() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            cost.numer(),
            cost.denom(),
            prize.numer(),
            prize.denom()
        ));
    }
    out
}

/// Prize profile CSV: `budget_num,budget_den,prize_num,prize_den`, one row
/// per breakpoint.
pub fn write_profile_csv(profile: &StepProfile) -> String {
    let mut out = String::from("budget_num,budget_den,prize_num,prize_den\n");
    for (budget, prize) in profile.points() {
        out.push_str(&format!(
            "{},{},{},{}\n",
            budget.numer(),
            budget.denom(),
            prize.numer(),
            prize.denom()
        ));
    }
    out
}

/// Combined optimum/solution CSV sampled at the sufficient budget set (the
/// frontier costs): `B_num,B_den,opt_prize,alg_prize`, where `alg_prize`
/// is the solution's prize at budget `B + alpha`.
pub fn write_comparison_csv(
    frontier: &ParetoFrontier,
    profile: &StepProfile,
    alpha: &Rational,
) -> String {
    let mut out = String::from("B_num,B_den,opt_prize,alg_prize\n");
    for (budget, opt) in frontier.points() {
        let alg = profile.value_at(&(budget + alpha));
        out.push_str(&format!(
            "{},{},{},{}\n",
            budget.numer(),
            budget.denom(),
            format_rational(opt),
            format_rational(&alg)
        ));
    }
    out
}

/// Competitiveness report as JSON.
pub fn write_report_json(report: &CompetitiveReport) -> String {
    let witness = match &report.witness {
        None => Value::Null,
        Some(w) => json!({
            "budget": format_rational(&w.budget),
            "opt_prize": format_rational(&w.opt_prize),
            "alg_prize": format_rational(&w.alg_prize),
        }),
    };
    let value = json!({
        "alpha": format_rational(&report.alpha),
        "mu": format_rational(&report.mu),
        "verdict": match report.verdict {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
        },
        "witness": witness,
    });
    serde_json::to_string_pretty(&value).unwrap()
}

/// The ordering as a text artifact: one edge id per line.
pub fn write_ordering(order: &[EdgeId]) -> String {
    let mut out = String::new();
    for e in order {
        out.push_str(&format!("{e}\n"));
    }
    out
}
