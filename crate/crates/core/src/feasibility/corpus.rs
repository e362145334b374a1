//! Batch evaluation of the woven-fabric grabbing trials.
//!
//! The corpus is CSV with one trial per row: application, fabric code,
//! material, gripper count, outline and the vacuum delivered at the cup during
//! the trial. Each row is evaluated on a shared [`Rig`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{evaluate, GraspReport, Scenario, Verdict};
use crate::error::{Error, Result};
use crate::model::units::{parse_quantity, Dimension, Unit};
use crate::model::{
    FabricPiece, MotionProfile, Permeability, PhysicalConstants, PipeSegment, Polygon, SuctionCup,
    VacuumGenerator,
};

pub const BUNDLED_CORPUS: &str = include_str!("../../data/pick_trials.csv");

pub const CORPUS_HEADER: [&str; 8] = [
    "Test Lot / 项目",
    "Fabric Piece Application / 裁片使用",
    "Fabric Code / 物料号",
    "Fabric / 布料",
    "No. of Gripper / 需求数量",
    "Outline rectangular Length & Width (cm)",
    "Supply Negative Air Pressure / 供抽吸气压",
    "Result (pass / fail) / 结果 (通过/失败)",
];

/// Tabled and computed cup vacuum may differ by this much before it is flagged.
const SUPPLY_MISMATCH: f64 = 1_000.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusRow {
    pub lot: u32,
    pub application: String,
    pub fabric_code: String,
    pub material: String,
    pub gripper_count: u32,
    /// Outline along x, m.
    pub length: f64,
    /// Outline along y, m.
    pub width: f64,
    /// Vacuum magnitude at the cup during the trial, Pa.
    pub supply_pressure: f64,
    pub expected: Verdict,
}

/// Hardware and handling shared by every corpus trial.
#[derive(Debug, Clone, PartialEq)]
pub struct Rig {
    pub motion: MotionProfile,
    pub orifice_diameter: f64,
    pub generator: VacuumGenerator,
    pub line: Vec<PipeSegment>,
    pub upstream_velocity: f64,
    pub friction_coefficient: f64,
    pub permeability: Permeability,
    pub pocket_bag_mass: f64,
    pub pocket_facing_mass: f64,
    pub constants: PhysicalConstants,
}

impl Default for Rig {
    /// 2 mm cups on a 5.2 mm → 2.0 mm line fed by the -92 kPa ejector.
    fn default() -> Self {
        Rig {
            motion: MotionProfile::default(),
            orifice_diameter: 2.0e-3,
            generator: VacuumGenerator::default(),
            line: vec![
                PipeSegment::with_diameter(5.2e-3).expect("valid diameter"),
                PipeSegment::with_diameter(2.0e-3).expect("valid diameter"),
            ],
            upstream_velocity: 37.14,
            friction_coefficient: 0.5,
            permeability: Permeability::AirImpermeable,
            pocket_bag_mass: 2.5e-3,
            pocket_facing_mass: 2.0e-3,
            constants: PhysicalConstants::default(),
        }
    }
}

impl Rig {
    fn mass_for(&self, application: &str) -> Result<f64> {
        match application.trim().to_ascii_lowercase().as_str() {
            "pocket bag" => Ok(self.pocket_bag_mass),
            "pocket facing" => Ok(self.pocket_facing_mass),
            other => Err(Error::Corpus(format!(
                "no piece mass known for application `{other}`"
            ))),
        }
    }

    pub fn scenario(&self, row: &CorpusRow) -> Result<Scenario> {
        let outline = Polygon::rectangle(row.length, row.width)?;
        let fabric = FabricPiece::new(
            format!("{}-{}", row.lot, row.fabric_code),
            outline,
            self.mass_for(&row.application)?,
            self.friction_coefficient,
            self.permeability,
            row.material.clone(),
        )?;
        let scenario = Scenario::new(
            fabric,
            self.motion,
            SuctionCup::new(self.orifice_diameter, row.gripper_count)?,
            self.generator,
            self.line.clone(),
            self.upstream_velocity,
        )?;
        Ok(scenario.with_constants(self.constants))
    }
}

fn parse_outline(text: &str) -> Result<(f64, f64)> {
    let mut parts = text.split(['x', 'X', '×']);
    let (Some(l), Some(w), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(Error::Corpus(format!("outline `{text}` is not `L x W`")));
    };
    Ok((
        parse_quantity(l, Dimension::Length, Unit::Centimeter)?,
        parse_quantity(w, Dimension::Length, Unit::Centimeter)?,
    ))
}

fn parse_result(text: &str) -> Result<Verdict> {
    let t = text.to_ascii_lowercase();
    if t.contains("pass") || text.contains("通过") {
        Ok(Verdict::Pass)
    } else if t.contains("fail") || text.contains("失败") {
        Ok(Verdict::Fail)
    } else {
        Err(Error::Corpus(format!(
            "result `{text}` is neither pass nor fail"
        )))
    }
}

fn parse_row(record: &csv::StringRecord) -> Result<CorpusRow> {
    if record.len() != CORPUS_HEADER.len() {
        return Err(Error::Corpus(format!(
            "expected {} fields, found {}",
            CORPUS_HEADER.len(),
            record.len()
        )));
    }
    let field = |i: usize| record[i].trim();
    let int = |i: usize| -> Result<u32> {
        field(i)
            .parse()
            .map_err(|_| Error::Corpus(format!("`{}` is not a whole number", field(i))))
    };
    let (length, width) = parse_outline(field(5))?;
    let supply = parse_quantity(field(6), Dimension::Pressure, Unit::Kilopascal)?.abs();
    Ok(CorpusRow {
        lot: int(0)?,
        application: field(1).to_string(),
        fabric_code: field(2).to_string(),
        material: field(3).to_string(),
        gripper_count: int(4)?,
        length,
        width,
        supply_pressure: supply,
        expected: parse_result(field(7))?,
    })
}

/// Parses corpus CSV. A missing or wrong header fails the whole file; a bad
/// data row only fails that row.
pub fn parse_corpus(text: &str) -> Result<Vec<Result<CorpusRow>>> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| Error::Corpus(format!("unreadable header: {e}")))?;
    let found: Vec<&str> = header.iter().map(str::trim).collect();
    if found != CORPUS_HEADER {
        return Err(Error::Corpus(format!(
            "header must be `{}`",
            CORPUS_HEADER.join(",")
        )));
    }
    Ok(reader
        .records()
        .enumerate()
        .map(|(i, record)| {
            let record = record.map_err(|e| Error::Corpus(format!("row {}: {e}", i + 1)))?;
            parse_row(&record).map_err(|e| Error::Corpus(format!("row {}: {e}", i + 1)))
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusOutcome {
    pub row: CorpusRow,
    pub report: GraspReport,
    pub matches_expected: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    /// 1-based data row.
    pub row_number: usize,
    pub outcome: Result<CorpusOutcome>,
}

fn evaluate_row(row: &CorpusRow, rig: &Rig) -> Result<CorpusOutcome> {
    let mut report = evaluate(&rig.scenario(row)?)?;
    if (report.net_supply - row.supply_pressure).abs() > SUPPLY_MISMATCH {
        report.advisories.push(format!(
            "computed cup vacuum {:.0} Pa differs from the tabled {:.0} Pa",
            report.net_supply, row.supply_pressure
        ));
    }
    let passed = !report.verdict.is_fail();
    let matches_expected = passed == (row.expected != Verdict::Fail);
    Ok(CorpusOutcome {
        row: row.clone(),
        report,
        matches_expected,
    })
}

/// Evaluates every row on `rig`. Rows run in parallel; output order follows input order.
pub fn run_corpus(rows: &[Result<CorpusRow>], rig: &Rig) -> Vec<CorpusEntry> {
    rows.par_iter()
        .enumerate()
        .map(|(i, row)| CorpusEntry {
            row_number: i + 1,
            outcome: row.clone().and_then(|r| evaluate_row(&r, rig)),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_corpus_parses() {
        let rows = parse_corpus(BUNDLED_CORPUS).unwrap();
        assert_eq!(rows.len(), 12);
        let second = rows[1].as_ref().unwrap();
        assert_eq!(second.gripper_count, 12);
        assert_eq!(
            second.material,
            "68% Polyester, 32% Nylon; Taffeta; Plain Weave; TEXTILE-WOVEN; TEXTILE-WOVEN"
        );
        assert!((second.length - 0.30).abs() < 1e-12 && (second.width - 0.36).abs() < 1e-12);
        assert_eq!(second.supply_pressure, 55_000.0);
        assert_eq!(second.expected, Verdict::Pass);
    }

    #[test]
    fn empty_corpus() {
        let rows = parse_corpus(&format!("{}\n", CORPUS_HEADER.join(","))).unwrap();
        assert!(rows.is_empty());
        assert!(run_corpus(&rows, &Rig::default()).is_empty());
    }

    #[test]
    fn wrong_header_rejected() {
        assert!(parse_corpus("a,b,c\n1,2,3\n").is_err());
    }

    #[test]
    fn malformed_row_is_isolated() {
        let mut text = BUNDLED_CORPUS.to_string();
        text = text.replacen("26cm x 5cm", "26cm by 5cm", 1);
        let rows = parse_corpus(&text).unwrap();
        let entries = run_corpus(&rows, &Rig::default());
        assert_eq!(entries.len(), 12);
        let bad: Vec<_> = entries.iter().filter(|e| e.outcome.is_err()).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].row_number, 7);
        assert!(bad[0]
            .outcome
            .as_ref()
            .unwrap_err()
            .to_string()
            .contains("row 7"));
    }

    #[test]
    fn unknown_application_fails_that_row() {
        let text = BUNDLED_CORPUS.replacen("Pocket Bag", "Collar", 1);
        let entries = run_corpus(&parse_corpus(&text).unwrap(), &Rig::default());
        assert!(entries[0].outcome.is_err());
        assert!(entries[1].outcome.is_ok());
    }

    #[test]
    fn outline_and_result_parsing() {
        assert_eq!(parse_outline("26cm x 19cm").unwrap(), (0.26, 0.19));
        assert_eq!(parse_outline("300 mm × 50 mm").unwrap(), (0.3, 0.05));
        assert!(parse_outline("26cm").is_err());
        assert_eq!(parse_result("通过 Pass").unwrap(), Verdict::Pass);
        assert_eq!(parse_result("失败 Fail").unwrap(), Verdict::Fail);
        assert!(parse_result("maybe").is_err());
    }
}
