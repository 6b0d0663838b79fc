//! Rendering of ranking reports as text tables or JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::evidence::MassFunction;
use crate::interval::Interval;
use crate::pipeline::{IntervalBpa, RankingReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportMode {
    #[default]
    Summary,
    FullTrace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Table,
    Json,
}

/// Four fractional digits, ties to even, never `-0.0000`.
pub fn fmt4(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".to_owned()
    } else {
        s
    }
}

fn triple(m: &MassFunction) -> String {
    let [a, b, c] = m.triple();
    format!("({}, {}, {})", fmt4(a), fmt4(b), fmt4(c))
}

fn bpa(ib: &IntervalBpa) -> String {
    format!("{} | {}", triple(ib.left()), triple(ib.right()))
}

fn interval(w: &Interval) -> String {
    format!("[{}, {}]", fmt4(w.lo()), fmt4(w.hi()))
}

pub fn emit_report(report: &RankingReport, mode: ReportMode, format: ReportFormat) -> String {
    match format {
        ReportFormat::Table => render_table(report, mode),
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&ReportDocument::new(report, mode)).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

fn pad(labels: &[String]) -> usize {
    labels.iter().map(|l| l.chars().count()).max().unwrap_or(0)
}

fn render_table(r: &RankingReport, mode: ReportMode) -> String {
    let mut out = String::new();
    let aw = pad(&r.alternatives);
    let dw = pad(&r.decision_makers);
    let cw = pad(&r.criteria);
    let mut rank_of = vec![0; r.alternatives.len()];
    for (pos, &a) in r.ranking.iter().enumerate() {
        rank_of[a] = pos + 1;
    }

    if mode == ReportMode::FullTrace {
        out.push_str("Normalized criterion weights\n");
        for (d, ws) in r.normalized_criterion_weights.iter().enumerate() {
            let cells: Vec<String> = r
                .criteria
                .iter()
                .zip(ws)
                .map(|(c, w)| format!("{c} {}", interval(w)))
                .collect();
            let _ = writeln!(out, "  {:dw$}  {}", r.decision_makers[d], cells.join("  "));
        }
        out.push_str("\nNormalized decision-maker weights\n");
        for (d, w) in r.normalized_dm_weights.iter().enumerate() {
            let _ = writeln!(out, "  {:dw$}  {}", r.decision_makers[d], interval(w));
        }
        out.push_str("\nDiscounted interval BPAs, left | right over ({IS}, {NS}, {IS,NS})\n");
        for (d, rows) in r.discounted.iter().enumerate() {
            for (a, row) in rows.iter().enumerate() {
                for (c, ib) in row.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "  {:dw$}  {:aw$}  {:cw$}  {}",
                        r.decision_makers[d],
                        r.alternatives[a],
                        r.criteria[c],
                        bpa(ib)
                    );
                }
            }
        }
        out.push_str("\nFused across criteria\n");
        for (d, row) in r.per_dm_fused.iter().enumerate() {
            for (a, ib) in row.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  {:dw$}  {:aw$}  {}",
                    r.decision_makers[d],
                    r.alternatives[a],
                    bpa(ib)
                );
            }
        }
        out.push_str("\nDiscounted by decision-maker weight\n");
        for (d, row) in r.dm_discounted.iter().enumerate() {
            for (a, ib) in row.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  {:dw$}  {:aw$}  {}",
                    r.decision_makers[d],
                    r.alternatives[a],
                    bpa(ib)
                );
            }
        }
        out.push_str("\nFused across decision makers\n");
        for (a, ib) in r.final_bpas.iter().enumerate() {
            let _ = writeln!(out, "  {:aw$}  {}", r.alternatives[a], bpa(ib));
        }
        out.push('\n');
    }

    out.push_str("Collapsed BPAs over ({IS}, {NS}, {IS,NS}) and pignistic belief in {IS}\n");
    for (a, m) in r.collapsed.iter().enumerate() {
        let _ = writeln!(
            out,
            "  {:aw$}  {} bet={}  rank {}",
            r.alternatives[a],
            triple(m),
            fmt4(r.bet_is[a]),
            rank_of[a]
        );
    }
    let _ = writeln!(out, "\nRanking: {}", r.ranking_labels().join(" ≻ "));
    let positions: Vec<String> = r.ranking.iter().map(|i| (i + 1).to_string()).collect();
    let _ = writeln!(out, "Ranking by input position: {}", positions.join(" ≻ "));
    out
}

/// JSON form of a report. Numbers keep full `f64` precision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub alternatives: Vec<String>,
    pub ranking: Vec<String>,
    pub results: Vec<AlternativeResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlternativeResult {
    pub alternative: String,
    pub rank: usize,
    /// `[m({IS}), m({NS}), m({IS,NS})]`
    pub collapsed: [f64; 3],
    pub bet_is: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BpaPair {
    pub left: [f64; 3],
    pub right: [f64; 3],
}

impl From<&IntervalBpa> for BpaPair {
    fn from(ib: &IntervalBpa) -> Self {
        Self {
            left: ib.left().triple(),
            right: ib.right().triple(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub criteria: Vec<String>,
    pub decision_makers: Vec<String>,
    /// `[dm][criterion]`
    pub normalized_criterion_weights: Vec<Vec<Interval>>,
    pub normalized_dm_weights: Vec<Interval>,
    /// `[dm][alternative][criterion]`
    pub discounted: Vec<Vec<Vec<BpaPair>>>,
    /// `[dm][alternative]`
    pub per_dm_fused: Vec<Vec<BpaPair>>,
    /// `[dm][alternative]`
    pub dm_discounted: Vec<Vec<BpaPair>>,
    /// `[alternative]`
    pub final_bpas: Vec<BpaPair>,
}

impl ReportDocument {
    pub fn new(r: &RankingReport, mode: ReportMode) -> Self {
        let mut rank_of = vec![0; r.alternatives.len()];
        for (pos, &a) in r.ranking.iter().enumerate() {
            rank_of[a] = pos + 1;
        }
        let results = r
            .alternatives
            .iter()
            .enumerate()
            .map(|(a, label)| AlternativeResult {
                alternative: label.clone(),
                rank: rank_of[a],
                collapsed: r.collapsed[a].triple(),
                bet_is: r.bet_is[a],
            })
            .collect();
        let pairs = |rows: &Vec<Vec<IntervalBpa>>| -> Vec<Vec<BpaPair>> {
            rows.iter().map(|row| row.iter().map(BpaPair::from).collect()).collect()
        };
        let trace = (mode == ReportMode::FullTrace).then(|| TraceDocument {
            criteria: r.criteria.clone(),
            decision_makers: r.decision_makers.clone(),
            normalized_criterion_weights: r.normalized_criterion_weights.clone(),
            normalized_dm_weights: r.normalized_dm_weights.clone(),
            discounted: r.discounted.iter().map(pairs).collect(),
            per_dm_fused: pairs(&r.per_dm_fused),
            dm_discounted: pairs(&r.dm_discounted),
            final_bpas: r.final_bpas.iter().map(BpaPair::from).collect(),
        });
        Self {
            schema_version: super::problem::SCHEMA_VERSION.to_owned(),
            alternatives: r.alternatives.clone(),
            ranking: r.ranking_labels().into_iter().map(str::to_owned).collect(),
            results,
            trace,
        }
    }
}
