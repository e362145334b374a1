//! End-to-end grasp check for one pick-and-place scenario.
//!
//! Pipeline: holding force, required cup vacuum, pneumatic line loss, net
//! vacuum at the cup and, when a calibrated grabbing circle is configured, the
//! gripper grid with its edge and corner inflation. Every intermediate number
//! is kept in the [`GraspReport`].

mod corpus;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{non_negative, positive, Error, Result};
use crate::model::{
    FabricPiece, LoadCase, MotionProfile, Permeability, PhysicalConstants, PipeSegment, SuctionCup,
    VacuumGenerator,
};
use crate::pneumatics::{line_loss, net_supply_vacuum, HIGH_VELOCITY_THRESHOLD};
use crate::statics::{holding_force, per_gripper_force, required_pressure};
use crate::vgtc::{adjusted_min_pressure, effective_ratio, generate_layout, Layout, Vgtc};
pub use corpus::{
    parse_corpus, run_corpus, CorpusEntry, CorpusOutcome, CorpusRow, Rig, BUNDLED_CORPUS,
    CORPUS_HEADER,
};

/// Default distance from fabric edge to the outermost gripper.
pub const DEFAULT_MARGIN: f64 = 0.02;

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    fabric: FabricPiece,
    motion: MotionProfile,
    cup: SuctionCup,
    generator: VacuumGenerator,
    line: Vec<PipeSegment>,
    upstream_velocity: f64,
    vgtc: Option<Vgtc>,
    margin: f64,
    spacing: Option<f64>,
    constants: PhysicalConstants,
}

impl Scenario {
    pub fn new(
        fabric: FabricPiece,
        motion: MotionProfile,
        cup: SuctionCup,
        generator: VacuumGenerator,
        line: Vec<PipeSegment>,
        upstream_velocity: f64,
    ) -> Result<Self> {
        if line.is_empty() {
            return Err(Error::EmptyLine);
        }
        non_negative("upstream_velocity", upstream_velocity)?;
        Ok(Scenario {
            fabric,
            motion,
            cup,
            generator,
            line,
            upstream_velocity,
            vgtc: None,
            margin: DEFAULT_MARGIN,
            spacing: None,
            constants: PhysicalConstants::default(),
        })
    }

    pub fn with_vgtc(mut self, vgtc: Option<Vgtc>) -> Self {
        self.vgtc = vgtc;
        self
    }

    pub fn with_margin(mut self, margin: f64) -> Result<Self> {
        self.margin = non_negative("margin", margin)?;
        Ok(self)
    }

    /// Grid pitch; defaults to the grabbing-circle radius.
    pub fn with_spacing(mut self, spacing: Option<f64>) -> Result<Self> {
        if let Some(s) = spacing {
            positive("spacing", s)?;
        }
        self.spacing = spacing;
        Ok(self)
    }

    pub fn with_constants(mut self, constants: PhysicalConstants) -> Self {
        self.constants = constants;
        self
    }

    pub fn with_generator(mut self, generator: VacuumGenerator) -> Self {
        self.generator = generator;
        self
    }

    pub fn with_fabric(mut self, fabric: FabricPiece) -> Self {
        self.fabric = fabric;
        self
    }

    pub fn fabric(&self) -> &FabricPiece {
        &self.fabric
    }

    pub fn motion(&self) -> &MotionProfile {
        &self.motion
    }

    pub fn cup(&self) -> &SuctionCup {
        &self.cup
    }

    pub fn generator(&self) -> &VacuumGenerator {
        &self.generator
    }

    pub fn line(&self) -> &[PipeSegment] {
        &self.line
    }

    pub fn upstream_velocity(&self) -> f64 {
        self.upstream_velocity
    }

    pub fn vgtc(&self) -> Option<&Vgtc> {
        self.vgtc.as_ref()
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn spacing(&self) -> Option<f64> {
        self.spacing
    }

    /// The pitch `evaluate` uses for the gripper grid.
    pub fn effective_spacing(&self) -> Option<f64> {
        self.spacing.or(self.vgtc.map(|v| v.radius()))
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    PassWithMultiLayerRisk,
    Uncalibrated,
}

impl Verdict {
    pub fn is_fail(self) -> bool {
        self == Verdict::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::PassWithMultiLayerRisk => "pass-with-multi-layer-risk",
            Verdict::Uncalibrated => "uncalibrated",
        })
    }
}

impl std::str::FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pass" => Ok(Verdict::Pass),
            "fail" => Ok(Verdict::Fail),
            "pass-with-multi-layer-risk" => Ok(Verdict::PassWithMultiLayerRisk),
            "uncalibrated" => Ok(Verdict::Uncalibrated),
            other => Err(Error::Corpus(format!("unknown verdict `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraspReport {
    pub fabric_id: String,
    pub load_case: LoadCase,
    /// Theoretical holding force of the whole piece, N.
    pub holding_force: f64,
    /// Whole-piece force on one cup orifice, Pa.
    pub required_pressure_single_cup: f64,
    /// Force shared evenly across `cup_count` cups, Pa.
    pub required_pressure_shared: f64,
    pub cup_count: u32,
    pub cup_area: f64,
    /// Σ constriction losses along the line, Pa.
    pub line_loss: f64,
    pub generator_max_vacuum: f64,
    /// Vacuum magnitude reaching the cup, Pa.
    pub net_supply: f64,
    pub gripper_count: usize,
    pub layout: Option<Layout>,
    pub effective_ratios: Vec<f64>,
    /// `p_min / ratio` for each layout position, Pa.
    pub inflated_min_pressures: Vec<f64>,
    /// The largest vacuum that must be met for a pass, Pa.
    pub governing_pressure: f64,
    pub p_max: Option<f64>,
    pub verdict: Verdict,
    pub advisories: Vec<String>,
}

pub fn evaluate(scenario: &Scenario) -> Result<GraspReport> {
    let consts = scenario.constants();
    let fabric = scenario.fabric();
    let cup = scenario.cup();
    let mut advisories = Vec::new();

    let force = holding_force(fabric, scenario.motion(), consts).map_err(|e| e.at("statics"))?;
    let single = required_pressure(force.force, cup).map_err(|e| e.at("statics"))?;
    let shared =
        required_pressure(per_gripper_force(force.force, cup), cup).map_err(|e| e.at("statics"))?;

    let loss = line_loss(scenario.line(), scenario.upstream_velocity(), consts)
        .map_err(|e| e.at("pneumatics"))?;
    if loss.high_velocity() {
        let peak = loss
            .stages
            .iter()
            .map(|s| s.downstream_velocity.max(s.upstream_velocity))
            .fold(0.0, f64::max);
        advisories.push(format!(
            "line velocity {peak:.1} m/s exceeds {HIGH_VELOCITY_THRESHOLD} m/s; incompressible model is questionable"
        ));
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
    if loss.total < 0.0 {
        advisories.push("line recovers more than it loses; net loss taken as zero".into());
    }
    let net = net_supply_vacuum(scenario.generator(), loss.total.max(0.0))
        .map_err(|e| e.at("pneumatics"))?;
    if net.saturated {
        advisories.push("line losses consume the whole generator vacuum".into());
    }

    let mut layout = None;
    let mut ratios = Vec::new();
    let mut inflated = Vec::new();
    if let Some(vgtc) = scenario.vgtc() {
        let spacing = scenario.effective_spacing().unwrap_or(vgtc.radius());
        let grid = generate_layout(fabric.outline(), scenario.margin(), spacing)
            .map_err(|e| e.at("vgtc"))?;
        for &p in grid.positions() {
            let ratio = effective_ratio(&vgtc.at(p), fabric.outline());
            let p_min =
                adjusted_min_pressure(&vgtc.pressure_window(), ratio).map_err(|e| e.at("vgtc"))?;
            ratios.push(ratio);
            inflated.push(p_min);
        }
        if grid.len() != cup.count() as usize {
            advisories.push(format!(
                "layout places {} grippers but the cup count is {}",
                grid.len(),
                cup.count()
            ));
        }
        layout = Some(grid);
    }

    let governing = inflated.iter().copied().fold(single, f64::max);
    let p_max = scenario.vgtc().and_then(|v| v.pressure_window().p_max());
    let verdict = if net.pressure < governing {
        Verdict::Fail
    } else {
        match (fabric.permeability(), p_max) {
            (_, Some(limit)) if net.pressure > limit => {
                advisories.push(format!(
                    "net vacuum {:.0} Pa exceeds the single-layer limit {limit:.0} Pa",
                    net.pressure
                ));
                Verdict::PassWithMultiLayerRisk
            }
            (Permeability::AirPermeable, None) => Verdict::Uncalibrated,
            _ => Verdict::Pass,
        }
    };

    Ok(GraspReport {
        fabric_id: fabric.id().to_string(),
        load_case: force.load_case,
        holding_force: force.force,
        required_pressure_single_cup: single,
        required_pressure_shared: shared,
        cup_count: cup.count(),
        cup_area: cup.area(),
        line_loss: loss.total,
        generator_max_vacuum: scenario.generator().max_vacuum(),
        net_supply: net.pressure,
        gripper_count: layout.as_ref().map_or(cup.count() as usize, Layout::len),
        layout,
        effective_ratios: ratios,
        inflated_min_pressures: inflated,
        governing_pressure: governing,
        p_max,
        verdict,
        advisories,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Point, Polygon, PressureWindow};

    fn scenario(mass: f64, max_vacuum: f64) -> Scenario {
        let fabric = FabricPiece::new(
            "pocket-bag",
            Polygon::rectangle(0.26, 0.19).unwrap(),
            mass,
            0.5,
            Permeability::AirImpermeable,
            "100% Polyester; Plain Weave",
        )
        .unwrap();
        Scenario::new(
            fabric,
            MotionProfile::default(),
            SuctionCup::new(2e-3, 1).unwrap(),
            VacuumGenerator::default()
                .with_max_vacuum(max_vacuum)
                .unwrap(),
            vec![
                PipeSegment::with_diameter(5.2e-3).unwrap(),
                PipeSegment::with_diameter(2.0e-3).unwrap(),
            ],
            37.14,
        )
        .unwrap()
    }

    #[test]
    fn pocket_bag_passes() {
        let r = evaluate(&scenario(2.5e-3, 92_000.0)).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!((r.required_pressure_single_cup - 47_111.0).abs() / 47_111.0 < 0.01);
        assert!((r.net_supply - 55_000.0).abs() < 500.0);
        assert!(r.advisories.iter().any(|a| a.contains("m/s")));
        assert!(r.layout.is_none());
    }

    #[test]
    fn pocket_facing_passes() {
        let r = evaluate(&scenario(2.0e-3, 92_000.0)).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert!((r.required_pressure_single_cup - 37_561.0).abs() / 37_561.0 < 0.01);
    }

    #[test]
    fn weak_generator_fails() {
        let r = evaluate(&scenario(2.0e-3, 40_000.0)).unwrap();
        assert_eq!(r.net_supply, 40_000.0 - r.line_loss);
        assert!(r.net_supply < 4_000.0);
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn audit_numbers_recompose() {
        let r = evaluate(&scenario(2.5e-3, 92_000.0)).unwrap();
        let f = r.required_pressure_single_cup * r.cup_area;
        assert!((f - r.holding_force).abs() / r.holding_force < 1e-9);
        assert_eq!(
            r.net_supply,
            (r.generator_max_vacuum - r.line_loss).max(0.0)
        );
    }

    #[test]
    fn grid_with_circles_inflates_edges() {
        let window = PressureWindow::new(5_000.0, None).unwrap();
        let circle = Vgtc::new(Point::default(), 0.11, window).unwrap();
        let s = scenario(2.5e-3, 92_000.0).with_vgtc(Some(circle));
        let r = evaluate(&s).unwrap();
        let layout = r.layout.as_ref().unwrap();
        assert_eq!(layout.len(), 6);
        assert_eq!(r.effective_ratios.len(), 6);
        assert!(r.effective_ratios.iter().all(|&x| x > 0.0 && x < 1.0));
        for (p, ratio) in r.inflated_min_pressures.iter().zip(&r.effective_ratios) {
            assert!((p * ratio - 5_000.0).abs() < 1e-9);
        }
        assert!(r.advisories.iter().any(|a| a.contains("layout places 6")));
    }

    #[test]
    fn permeable_without_limit_is_uncalibrated() {
        let s = scenario(2.0e-3, 92_000.0);
        let fabric = FabricPiece::new(
            "open",
            s.fabric().outline().clone(),
            2.0e-3,
            0.5,
            Permeability::AirPermeable,
            "",
        )
        .unwrap();
        let window = PressureWindow::new(1_000.0, None).unwrap();
        let circle = Vgtc::new(Point::default(), 0.01, window).unwrap();
        let s = s.with_fabric(fabric).with_vgtc(Some(circle));
        assert_eq!(evaluate(&s).unwrap().verdict, Verdict::Uncalibrated);

        let low = PressureWindow::new(1_000.0, Some(40_000.0)).unwrap();
        let s = s.with_vgtc(Some(circle_with(low)));
        assert_eq!(
            evaluate(&s).unwrap().verdict,
            Verdict::PassWithMultiLayerRisk
        );

        let high = PressureWindow::new(1_000.0, Some(80_000.0)).unwrap();
        let s = s.with_vgtc(Some(circle_with(high)));
        assert_eq!(evaluate(&s).unwrap().verdict, Verdict::Pass);
    }

    fn circle_with(window: PressureWindow) -> Vgtc {
        Vgtc::new(Point::default(), 0.01, window).unwrap()
    }

    #[test]
    fn stage_labels_on_errors() {
        let tri = Polygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(0.3, 0.0),
            Point::new(0.0, 0.3),
        ])
        .unwrap();
        let s = scenario(2.0e-3, 92_000.0);
        let fabric =
            FabricPiece::new("tri", tri, 2e-3, 0.5, Permeability::AirImpermeable, "").unwrap();
        let window = PressureWindow::new(1_000.0, None).unwrap();
        let s = s.with_fabric(fabric).with_vgtc(Some(circle_with(window)));
        let err = evaluate(&s).unwrap_err();
        assert!(err.to_string().starts_with("vgtc:"), "{err}");
    }

    #[test]
    fn empty_line_rejected() {
        let s = scenario(2.0e-3, 92_000.0);
        let err = Scenario::new(
            s.fabric().clone(),
            *s.motion(),
            *s.cup(),
            *s.generator(),
            vec![],
            37.14,
        );
        assert_eq!(err, Err(Error::EmptyLine));
    }
}
