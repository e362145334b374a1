//! Subcommand bodies. Each returns the text for stdout plus any advisories;
//! the binary decides what to print and which exit code to use.

use std::fs;
use std::path::{Path, PathBuf};

use suction_core::feasibility::{parse_corpus, run_corpus, Rig, BUNDLED_CORPUS};
use suction_core::model::units::{parse_quantity, Dimension, Unit};
use suction_core::pneumatics::{line_loss, net_supply_vacuum};
use suction_core::statics::{holding_force, per_gripper_force, required_pressure};
use suction_core::vgtc::{
    adjusted_min_pressure, calibrate_spacing, effective_ratio, generate_layout,
};
use suction_core::{evaluate, Scenario};
use thiserror::Error;

use crate::config::{Config, ConfigError};
use crate::report::{emit_batch, emit_report, Format};
use crate::svg::emit_layout_svg;
use crate::table::{Field, Table};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error(transparent)]
    Compute(#[from] suction_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    /// Some rows failed; the rest were still reported.
    #[error("{0} corpus row(s) could not be evaluated")]
    PartialBatch(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// What a command produced.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub advisories: Vec<String>,
    /// Per-row failures in a batch, already formatted for stderr.
    pub row_errors: Vec<String>,
}

impl Output {
    fn text(stdout: String) -> Self {
        Output {
            stdout,
            ..Default::default()
        }
    }
}

/// Overrides given on the command line, as raw quantity strings.
#[derive(Debug, Default, Clone)]
pub struct LayoutArgs {
    pub spacing: Option<String>,
    pub margin: Option<String>,
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A length given on the command line; bare numbers are metres.
pub fn length_arg(flag: &str, text: &str) -> CliResult<f64> {
    parse_quantity(text, Dimension::Length, Unit::Meter)
        .map_err(|e| CliError::Usage(format!("--{flag} `{text}`: {e}")))
}

fn margin(config: &Config, args: &LayoutArgs) -> CliResult<f64> {
    match &args.margin {
        Some(m) => length_arg("margin", m),
        None => Ok(config.margin()?),
    }
}

fn spacing(config: &Config, args: &LayoutArgs) -> CliResult<Option<f64>> {
    match &args.spacing {
        Some(s) => length_arg("spacing", s).map(Some),
        None => Ok(config.spacing()?),
    }
}

pub fn force(config: &Config, format: Format) -> CliResult<Output> {
    let fabric = config.fabric()?;
    let motion = config.motion()?;
    let consts = config.constants()?;
    let f = holding_force(&fabric, &motion, &consts)?;
    let table = Table::new(vec![
        Field::text("id", "fabric", fabric.id()),
        Field::text("load_case", "load case", f.load_case.to_string()),
        Field::num("mass_kg", "mass", f.inputs.mass, "kg", 4),
        Field::num(
            "friction_coefficient",
            "friction coefficient",
            f.inputs.friction_coefficient,
            "",
            3,
        ),
        Field::num("gravity_m_s2", "gravity", f.inputs.gravity, "m/s^2", 3),
        Field::num(
            "acceleration_m_s2",
            "lift acceleration",
            f.inputs.acceleration,
            "m/s^2",
            3,
        ),
        Field::num(
            "safety_factor",
            "safety factor",
            f.inputs.safety_factor,
            "",
            2,
        ),
        Field::num("force_N", "holding force", f.force, "N", 4),
    ]);
    Ok(Output::text(table.render(format)))
}

pub fn pressure(config: &Config, format: Format) -> CliResult<Output> {
    let fabric = config.fabric()?;
    let cup = config.cup()?;
    let f = holding_force(&fabric, &config.motion()?, &config.constants()?)?;
    let single = required_pressure(f.force, &cup)?;
    let shared = required_pressure(per_gripper_force(f.force, &cup), &cup)?;
    let table = Table::new(vec![
        Field::text("id", "fabric", fabric.id()),
        Field::num("force_N", "holding force", f.force, "N", 4),
        Field::num(
            "orifice_diameter_m",
            "orifice diameter",
            cup.orifice_diameter(),
            "m",
            5,
        ),
        Field::num("cup_area_m2", "orifice area", cup.area(), "m^2", 9),
        Field::int("cup_count", "cups", cup.count().into()),
        Field::num(
            "req_pressure_Pa",
            "required vacuum, one cup",
            single,
            "Pa",
            0,
        ),
        Field::num(
            "shared_pressure_Pa",
            "required vacuum, shared",
            shared,
            "Pa",
            0,
        ),
    ]);
    Ok(Output::text(table.render(format)))
}

pub fn line_loss_cmd(config: &Config, format: Format) -> CliResult<Output> {
    let (segments, v1) = config.line()?;
    let consts = config.constants()?;
    let loss = line_loss(&segments, v1, &consts)?;
    let mut advisories = Vec::new();
    if loss.high_velocity() {
        advisories
            .push("line velocity exceeds 100 m/s; incompressible model is questionable".into());
    }
    if loss.pressure_recovery() {
        advisories
            .push("line contains an expansion; pressure recovery counted as negative loss".into());
    }
    if loss.elevation_ignored {
        advisories.push(
            "segment elevations differ; constriction loss ignores the head difference".into(),
        );
    }

    let mut summary = vec![
        Field::num("upstream_velocity_m_s", "upstream velocity", v1, "m/s", 2),
        Field::num(
            "outlet_velocity_m_s",
            "outlet velocity",
            loss.outlet_velocity,
            "m/s",
            2,
        ),
        Field::num("loss_Pa", "line loss", loss.total, "Pa", 0),
    ];
    if config.has_generator() {
        let generator = config.generator()?;
        let net = net_supply_vacuum(&generator, loss.total.max(0.0))?;
        if net.saturated {
            advisories.push("line losses consume the whole generator vacuum".into());
        }
        summary.push(Field::num(
            "generator_Pa",
            "generator vacuum",
            generator.max_vacuum(),
            "Pa",
            0,
        ));
        summary.push(Field::num(
            "net_Pa",
            "net vacuum at cup",
            net.pressure,
            "Pa",
            0,
        ));
    }
    let rows = loss
        .stages
        .iter()
        .enumerate()
        .map(|(i, s)| {
            vec![
                Field::int("stage", "stage", i as i64 + 1),
                Field::num("v_in_m_s", "v in m/s", s.upstream_velocity, "", 2),
                Field::num("v_out_m_s", "v out m/s", s.downstream_velocity, "", 2),
                Field::num("area_ratio", "A1/A2", s.area_ratio, "", 3),
                Field::num("delta_p_Pa", "dP Pa", s.delta_p, "", 0),
            ]
        })
        .collect();
    let table = Table::new(summary).with_rows("stage", rows);
    Ok(Output {
        stdout: table.render(format),
        advisories,
        row_errors: Vec::new(),
    })
}

pub fn plan(
    config: &Config,
    format: Format,
    args: &LayoutArgs,
    svg: Option<&Path>,
) -> CliResult<Output> {
    let margin = margin(config, args)?;
    let spacing = spacing(config, args)?;
    let fabric = config.fabric()?;
    let vgtc = config.vgtc()?.ok_or(ConfigError::MissingSection("vgtc"))?;
    let spacing = spacing.unwrap_or(vgtc.radius());
    let layout = generate_layout(fabric.outline(), margin, spacing)?;
    let window = vgtc.pressure_window();

    let mut rows = Vec::new();
    let mut worst = 1.0_f64;
    let mut governing = 0.0_f64;
    for (i, &p) in layout.positions().iter().enumerate() {
        let ratio = effective_ratio(&vgtc.at(p), fabric.outline());
        let p_min = adjusted_min_pressure(&window, ratio)?;
        worst = worst.min(ratio);
        governing = governing.max(p_min);
        rows.push(vec![
            Field::int("position", "#", i as i64 + 1),
            Field::num("x_m", "x m", p.x, "", 4),
            Field::num("y_m", "y m", p.y, "", 4),
            Field::num("ratio", "ratio", ratio, "", 4),
            Field::num("p_min_Pa", "p_min Pa", p_min, "", 0),
        ]);
    }

    let mut advisories = Vec::new();
    if config.document().cup.is_some() {
        let cups = config.cup()?.count() as usize;
        if cups != layout.len() {
            advisories.push(format!(
                "layout places {} grippers but the cup count is {cups}",
                layout.len()
            ));
        }
    }
    if let Some(path) = svg {
        write_text(
            path,
            &emit_layout_svg(Some(&layout), fabric.outline(), &vgtc),
        )?;
    }

    let table = Table::new(vec![
        Field::text("id", "fabric", fabric.id()),
        Field::int("cols", "columns", layout.cols() as i64),
        Field::int("rows", "rows", layout.rows() as i64),
        Field::int("gripper_count", "grippers", layout.len() as i64),
        Field::num("spacing_m", "spacing", spacing, "m", 4),
        Field::num("margin_m", "margin", margin, "m", 4),
        Field::num("radius_m", "circle radius", vgtc.radius(), "m", 4),
        Field::num("worst_ratio", "smallest effective ratio", worst, "", 4),
        Field::num(
            "governing_p_min_Pa",
            "largest inflated p_min",
            governing,
            "Pa",
            0,
        ),
    ])
    .with_rows("position", rows);
    Ok(Output {
        stdout: table.render(format),
        advisories,
        row_errors: Vec::new(),
    })
}

#[derive(Debug, Clone)]
pub struct CalibrateArgs {
    pub target: Option<usize>,
    pub range: String,
    pub step: String,
    pub margin: Option<String>,
}

pub fn calibrate(config: &Config, format: Format, args: &CalibrateArgs) -> CliResult<Output> {
    let fabric = config.fabric()?;
    let target = match args.target {
        Some(t) => t,
        None if config.document().cup.is_some() => config.cup()?.count() as usize,
        None => {
            return Err(CliError::Usage(
                "--target-count is required when the config has no [cup] section".into(),
            ))
        }
    };
    let (lo, hi) = args
        .range
        .split_once(',')
        .ok_or_else(|| CliError::Usage(format!("--range `{}` is not `LO,HI`", args.range)))?;
    let range = (length_arg("range", lo)?, length_arg("range", hi)?);
    let step = length_arg("step", &args.step)?;
    let layout_args = LayoutArgs {
        spacing: None,
        margin: args.margin.clone(),
    };
    let margin = margin(config, &layout_args)?;
    let intervals = calibrate_spacing(fabric.outline(), margin, target, range, step)?;

    let mut advisories = Vec::new();
    if intervals.is_empty() {
        advisories.push(format!(
            "no spacing in [{}, {}] m reproduces {target} grippers",
            range.0, range.1
        ));
    }
    let rows = intervals
        .iter()
        .map(|iv| {
            vec![
                Field::num("lo_m", "from m", iv.lo, "", 4),
                Field::num("hi_m", "to m", iv.hi, "", 4),
                Field::num("midpoint_m", "midpoint m", iv.midpoint(), "", 4),
            ]
        })
        .collect();
    let table = Table::new(vec![
        Field::text("id", "fabric", fabric.id()),
        Field::int("target_count", "target grippers", target as i64),
        Field::num("margin_m", "margin", margin, "m", 4),
        Field::num("step_m", "scan step", step, "m", 4),
        Field::int("intervals", "intervals found", intervals.len() as i64),
    ])
    .with_rows("interval", rows);
    Ok(Output {
        stdout: table.render(format),
        advisories,
        row_errors: Vec::new(),
    })
}

fn scenario_with_overrides(config: &Config, args: &LayoutArgs) -> CliResult<Scenario> {
    let margin = margin(config, args)?;
    let spacing = spacing(config, args)?;
    Ok(config
        .scenario()?
        .with_margin(margin)?
        .with_spacing(spacing)?)
}

pub fn check(
    config: &Config,
    format: Format,
    args: &LayoutArgs,
    svg: Option<&Path>,
) -> CliResult<Output> {
    let scenario = scenario_with_overrides(config, args)?;
    let report = evaluate(&scenario)?;
    if let Some(path) = svg {
        let vgtc = scenario.vgtc().ok_or(ConfigError::MissingSection("vgtc"))?;
        let drawing = emit_layout_svg(report.layout.as_ref(), scenario.fabric().outline(), vgtc);
        write_text(path, &drawing)?;
    }
    Ok(Output {
        stdout: emit_report(&report, format),
        advisories: report.advisories.clone(),
        row_errors: Vec::new(),
    })
}

pub fn batch(corpus: Option<&Path>, format: Format) -> CliResult<Output> {
    let text = match corpus {
        Some(path) => read_text(path)?,
        None => BUNDLED_CORPUS.to_string(),
    };
    let rows = parse_corpus(&text)?;
    let entries = run_corpus(&rows, &Rig::default());

    let mut out = Output::default();
    let mut reports = Vec::new();
    for entry in entries {
        match entry.outcome {
            Ok(outcome) => {
                let id = &outcome.report.fabric_id;
                if !outcome.matches_expected {
                    out.advisories.push(format!(
                        "row {} ({id}): tabled {}, computed {}",
                        entry.row_number, outcome.row.expected, outcome.report.verdict
                    ));
                }
                for a in &outcome.report.advisories {
                    out.advisories
                        .push(format!("row {} ({id}): {a}", entry.row_number));
                }
                reports.push(outcome.report);
            }
            Err(e) => out
                .row_errors
                .push(format!("row {}: {e}", entry.row_number)),
        }
    }
    out.stdout = emit_batch(&reports, format);
    Ok(out)
}
