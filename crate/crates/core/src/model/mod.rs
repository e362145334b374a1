//! Domain types shared by every calculation. All quantities are SI.
//!
//! Each type validates its invariants in `new`; once a value exists it is
//! known to be physically meaningful, so downstream code does not re-check.
//! Vacuum levels are positive magnitudes (Pa below ambient). Signed gauge
//! values only exist at I/O boundaries.

pub mod geometry;
pub mod units;

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, non_negative, positive, Error, Result};
pub use geometry::{Point, Polygon, Rect, GEOMETRY_TOLERANCE};
pub use units::{convert_units, Dimension, Unit};

/// Standard atmosphere, p = 101.325 kPa absolute.
pub const ATMOSPHERIC_PRESSURE: f64 = 101_325.0;

pub(crate) fn circle_area(diameter: f64) -> f64 {
    let r = diameter / 2.0;
    PI * r * r
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    gravity: f64,
    air_density: f64,
    kinematic_viscosity: f64,
}

impl PhysicalConstants {
    pub fn new(gravity: f64, air_density: f64, kinematic_viscosity: f64) -> Result<Self> {
        Ok(PhysicalConstants {
            gravity: positive("gravity", gravity)?,
            air_density: positive("air_density", air_density)?,
            kinematic_viscosity: positive("kinematic_viscosity", kinematic_viscosity)?,
        })
    }

    pub fn gravity(&self) -> f64 {
        self.gravity
    }

    /// Air at 20 °C and 101.325 kPa.
    pub fn air_density(&self) -> f64 {
        self.air_density
    }

    /// Carried for completeness; no current model consumes it.
    pub fn kinematic_viscosity(&self) -> f64 {
        self.kinematic_viscosity
    }

    /// ρg, the factor converting a head of air column (m) to pressure (Pa).
    pub fn specific_weight(&self) -> f64 {
        self.air_density * self.gravity
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants {
            gravity: 9.81,
            air_density: 1.204,
            kinematic_viscosity: 1.6e-5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Permeability {
    AirImpermeable,
    AirPermeable,
}

impl fmt::Display for Permeability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Permeability::AirImpermeable => "air-impermeable",
            Permeability::AirPermeable => "air-permeable",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FabricPiece {
    id: String,
    outline: Polygon,
    mass: f64,
    friction_coefficient: f64,
    permeability: Permeability,
    material: String,
}

impl FabricPiece {
    pub fn new(
        id: impl Into<String>,
        outline: Polygon,
        mass: f64,
        friction_coefficient: f64,
        permeability: Permeability,
        material: impl Into<String>,
    ) -> Result<Self> {
        positive("mass", mass)?;
        ensure(
            friction_coefficient > 0.0 && friction_coefficient <= 2.0,
            "friction_coefficient",
            "in (0, 2]",
            friction_coefficient,
        )?;
        Ok(FabricPiece {
            id: id.into(),
            outline,
            mass,
            friction_coefficient,
            permeability,
            material: material.into(),
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn outline(&self) -> &Polygon {
        &self.outline
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn friction_coefficient(&self) -> f64 {
        self.friction_coefficient
    }

    pub fn permeability(&self) -> Permeability {
        self.permeability
    }

    pub fn material(&self) -> &str {
        &self.material
    }

    pub fn with_mass(&self, mass: f64) -> Result<Self> {
        FabricPiece::new(
            self.id.clone(),
            self.outline.clone(),
            mass,
            self.friction_coefficient,
            self.permeability,
            self.material.clone(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoadCase {
    /// Lifted straight off a plate, suction normal to load.
    PlateLift,
    /// Load carried through friction at the cup face.
    FrictionLift,
}

impl fmt::Display for LoadCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LoadCase::PlateLift => "plate-lift",
            LoadCase::FrictionLift => "friction-lift",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionProfile {
    acceleration: f64,
    safety_factor: f64,
    load_case: LoadCase,
    lift_height: f64,
    translate_distance: f64,
}

impl MotionProfile {
    pub fn new(
        acceleration: f64,
        safety_factor: f64,
        load_case: LoadCase,
        lift_height: f64,
        translate_distance: f64,
    ) -> Result<Self> {
        non_negative("acceleration", acceleration)?;
        ensure(safety_factor >= 1.0, "safety_factor", ">= 1", safety_factor)?;
        non_negative("lift_height", lift_height)?;
        non_negative("translate_distance", translate_distance)?;
        Ok(MotionProfile {
            acceleration,
            safety_factor,
            load_case,
            lift_height,
            translate_distance,
        })
    }

    pub fn acceleration(&self) -> f64 {
        self.acceleration
    }

    pub fn safety_factor(&self) -> f64 {
        self.safety_factor
    }

    pub fn load_case(&self) -> LoadCase {
        self.load_case
    }

    pub fn lift_height(&self) -> f64 {
        self.lift_height
    }

    pub fn translate_distance(&self) -> f64 {
        self.translate_distance
    }

    pub fn with_load_case(mut self, load_case: LoadCase) -> Self {
        self.load_case = load_case;
        self
    }
}

impl Default for MotionProfile {
    /// 5 m/s² pick with safety factor 2, lifted 20 cm and carried 50 cm.
    fn default() -> Self {
        MotionProfile {
            acceleration: 5.0,
            safety_factor: 2.0,
            load_case: LoadCase::FrictionLift,
            lift_height: 0.20,
            translate_distance: 0.50,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuctionCup {
    orifice_diameter: f64,
    count: u32,
}

impl SuctionCup {
    pub fn new(orifice_diameter: f64, count: u32) -> Result<Self> {
        positive("orifice_diameter", orifice_diameter)?;
        ensure(count >= 1, "cup count", ">= 1", count as f64)?;
        Ok(SuctionCup {
            orifice_diameter,
            count,
        })
    }

    pub fn orifice_diameter(&self) -> f64 {
        self.orifice_diameter
    }

    pub fn count(&self) -> u32 {
        self.count
    }

    /// Orifice area of one cup, π(D/2)².
    pub fn area(&self) -> f64 {
        circle_area(self.orifice_diameter)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacuumGenerator {
    max_vacuum: f64,
    supply_flow_rate: f64,
    setup_pressure: f64,
    nozzle_diameter: f64,
}

impl VacuumGenerator {
    pub fn new(
        max_vacuum: f64,
        supply_flow_rate: f64,
        setup_pressure: f64,
        nozzle_diameter: f64,
    ) -> Result<Self> {
        ensure(
            max_vacuum > 0.0 && max_vacuum <= ATMOSPHERIC_PRESSURE,
            "max_vacuum",
            "in (0, 101325] Pa",
            max_vacuum,
        )?;
        positive("supply_flow_rate", supply_flow_rate)?;
        positive("setup_pressure", setup_pressure)?;
        positive("nozzle_diameter", nozzle_diameter)?;
        Ok(VacuumGenerator {
            max_vacuum,
            supply_flow_rate,
            setup_pressure,
            nozzle_diameter,
        })
    }

    /// Magnitude of the lowest gauge pressure the generator reaches.
    pub fn max_vacuum(&self) -> f64 {
        self.max_vacuum
    }

    pub fn supply_flow_rate(&self) -> f64 {
        self.supply_flow_rate
    }

    pub fn setup_pressure(&self) -> f64 {
        self.setup_pressure
    }

    pub fn nozzle_diameter(&self) -> f64 {
        self.nozzle_diameter
    }

    pub fn with_max_vacuum(&self, max_vacuum: f64) -> Result<Self> {
        VacuumGenerator::new(
            max_vacuum,
            self.supply_flow_rate,
            self.setup_pressure,
            self.nozzle_diameter,
        )
    }
}

impl Default for VacuumGenerator {
    /// Compressed-air ejector: -92 kPa, 63 L/min at 5 bar through a 1.5 mm nozzle.
    fn default() -> Self {
        VacuumGenerator {
            max_vacuum: 92_000.0,
            supply_flow_rate: 63.0 / 60_000.0,
            setup_pressure: 500_000.0,
            nozzle_diameter: 1.5e-3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipeSegment {
    inner_diameter: f64,
    length: f64,
    elevation: f64,
}

impl PipeSegment {
    pub fn new(inner_diameter: f64, length: f64, elevation: f64) -> Result<Self> {
        positive("inner_diameter", inner_diameter)?;
        non_negative("segment length", length)?;
        ensure(elevation.is_finite(), "elevation", "finite", elevation)?;
        Ok(PipeSegment {
            inner_diameter,
            length,
            elevation,
        })
    }

    /// Horizontal segment of negligible length.
    pub fn with_diameter(inner_diameter: f64) -> Result<Self> {
        PipeSegment::new(inner_diameter, 0.0, 0.0)
    }

    pub fn inner_diameter(&self) -> f64 {
        self.inner_diameter
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn elevation(&self) -> f64 {
        self.elevation
    }

    pub fn area(&self) -> f64 {
        circle_area(self.inner_diameter)
    }
}

/// Energy added or removed between two stations, in metres of air column.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EnergyHeads {
    pump_head: f64,
    loss_head: f64,
    turbine_head: f64,
}

impl EnergyHeads {
    pub fn new(pump_head: f64, loss_head: f64, turbine_head: f64) -> Result<Self> {
        Ok(EnergyHeads {
            pump_head: non_negative("pump_head", pump_head)?,
            loss_head: non_negative("loss_head", loss_head)?,
            turbine_head: non_negative("turbine_head", turbine_head)?,
        })
    }

    pub fn pump_head(&self) -> f64 {
        self.pump_head
    }

    pub fn loss_head(&self) -> f64 {
        self.loss_head
    }

    pub fn turbine_head(&self) -> f64 {
        self.turbine_head
    }
}

/// Conditions at one station along a streamline. `pressure` is signed gauge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowState {
    pressure: f64,
    velocity: f64,
    elevation: f64,
    volumetric_flow: f64,
}

impl FlowState {
    pub fn new(pressure: f64, velocity: f64, elevation: f64, volumetric_flow: f64) -> Result<Self> {
        ensure(pressure.is_finite(), "pressure", "finite", pressure)?;
        non_negative("velocity", velocity)?;
        ensure(elevation.is_finite(), "elevation", "finite", elevation)?;
        non_negative("volumetric_flow", volumetric_flow)?;
        Ok(FlowState {
            pressure,
            velocity,
            elevation,
            volumetric_flow,
        })
    }

    /// State inside `segment` carrying `velocity`, with Q = A·v.
    pub fn in_segment(pressure: f64, velocity: f64, segment: &PipeSegment) -> Result<Self> {
        FlowState::new(
            pressure,
            velocity,
            segment.elevation(),
            segment.area() * velocity,
        )
    }

    pub fn pressure(&self) -> f64 {
        self.pressure
    }

    pub fn velocity(&self) -> f64 {
        self.velocity
    }

    pub fn elevation(&self) -> f64 {
        self.elevation
    }

    pub fn volumetric_flow(&self) -> f64 {
        self.volumetric_flow
    }
}

/// Vacuum range `[p_min, p_max]` in which exactly one layer is picked.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PressureWindow {
    p_min: f64,
    p_max: Option<f64>,
}

impl PressureWindow {
    pub fn new(p_min: f64, p_max: Option<f64>) -> Result<Self> {
        positive("p_min", p_min)?;
        if let Some(p_max) = p_max {
            ensure(p_max >= p_min, "p_max", ">= p_min", p_max)?;
        }
        Ok(PressureWindow { p_min, p_max })
    }

    /// Minimum vacuum that lifts a single layer.
    pub fn p_min(&self) -> f64 {
        self.p_min
    }

    /// Maximum vacuum before a second layer follows; `None` until measured.
    pub fn p_max(&self) -> Option<f64> {
        self.p_max
    }
}

impl TryFrom<(f64, Option<f64>)> for PressureWindow {
    type Error = Error;

    fn try_from((p_min, p_max): (f64, Option<f64>)) -> Result<Self> {
        PressureWindow::new(p_min, p_max)
    }
}
