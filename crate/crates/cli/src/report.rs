//! Report rendering: aligned text, CSV rows and structured TOML.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use suction_core::GraspReport;

/// Output flavour shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    /// Aligned text audit trail.
    #[default]
    Human,
    /// One row per scenario.
    Csv,
    /// TOML mirroring the report fields.
    Structured,
}

/// Column order of the CSV report.
pub const CSV_HEADER: [&str; 7] = [
    "id",
    "force_N",
    "req_pressure_Pa",
    "loss_Pa",
    "net_Pa",
    "gripper_count",
    "verdict",
];

#[derive(Serialize, Deserialize)]
struct Batch {
    #[serde(default)]
    report: Vec<GraspReport>,
}

pub fn emit_report(report: &GraspReport, format: Format) -> String {
    match format {
        Format::Human => human(report),
        Format::Csv => csv_rows(std::slice::from_ref(report)),
        Format::Structured => toml::to_string(report).expect("report always serializes"),
    }
}

/// Several reports in one document. Structured output is a `[[report]]` array.
pub fn emit_batch(reports: &[GraspReport], format: Format) -> String {
    match format {
        Format::Human => reports.iter().map(human).collect::<Vec<_>>().join("\n"),
        Format::Csv => csv_rows(reports),
        Format::Structured => toml::to_string(&Batch {
            report: reports.to_vec(),
        })
        .expect("report always serializes"),
    }
}

/// Reads back the output of `emit_report(_, Format::Structured)`.
pub fn parse_structured_report(text: &str) -> Result<GraspReport, toml::de::Error> {
    toml::from_str(text)
}

/// Reads back the output of `emit_batch(_, Format::Structured)`.
pub fn parse_structured_batch(text: &str) -> Result<Vec<GraspReport>, toml::de::Error> {
    toml::from_str::<Batch>(text).map(|b| b.report)
}

fn csv_rows(reports: &[GraspReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("write to memory");
    for r in reports {
        w.write_record([
            r.fabric_id.clone(),
            format!("{:.4}", r.holding_force),
            format!("{:.0}", r.required_pressure_single_cup),
            format!("{:.0}", r.line_loss),
            format!("{:.0}", r.net_supply),
            r.gripper_count.to_string(),
            r.verdict.to_string(),
        ])
        .expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is UTF-8")
}

fn human(r: &GraspReport) -> String {
    let mut out = String::new();
    let mut line = |label: &str, value: String| {
        let _ = writeln!(out, "  {label:<26}{value}");
    };
    line("fabric", r.fabric_id.clone());
    line("load case", r.load_case.to_string());
    line("holding force", format!("{:.4} N", r.holding_force));
    line(
        "required vacuum, one cup",
        format!(
            "{:.0} Pa over {:.3e} m^2",
            r.required_pressure_single_cup, r.cup_area
        ),
    );
    line(
        "required vacuum, shared",
        format!(
            "{:.0} Pa across {} cups",
            r.required_pressure_shared, r.cup_count
        ),
    );
    line(
        "generator vacuum",
        format!("{:.0} Pa", r.generator_max_vacuum),
    );
    line("line loss", format!("{:.0} Pa", r.line_loss));
    line("net vacuum at cup", format!("{:.0} Pa", r.net_supply));
    line(
        "governing vacuum",
        format!("{:.0} Pa", r.governing_pressure),
    );
    if let Some(p) = r.p_max {
        line("single-layer limit", format!("{p:.0} Pa"));
    }
    line("grippers", r.gripper_count.to_string());
    line("verdict", r.verdict.to_string().to_uppercase());

    if let Some(layout) = &r.layout {
        let _ = writeln!(
            out,
            "  layout {} x {} at {:.1} mm pitch, {:.1} mm margin",
            layout.cols(),
            layout.rows(),
            layout.spacing() * 1e3,
            layout.margin() * 1e3
        );
        let _ = writeln!(
            out,
            "    {:>3} {:>9} {:>9} {:>7} {:>11}",
            "#", "x mm", "y mm", "ratio", "p_min Pa"
        );
        for (i, p) in layout.positions().iter().enumerate() {
            let ratio = r.effective_ratios.get(i).copied().unwrap_or(f64::NAN);
            let p_min = r.inflated_min_pressures.get(i).copied().unwrap_or(f64::NAN);
            let _ = writeln!(
                out,
                "    {:>3} {:>9.1} {:>9.1} {:>7.3} {:>11.0}",
                i + 1,
                p.x * 1e3,
                p.y * 1e3,
                ratio,
                p_min
            );
        }
    }
    for a in &r.advisories {
        let _ = writeln!(out, "  note: {a}");
    }
    out
}
