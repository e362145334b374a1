//! Scenario config files.
//!
//! The file is TOML. Physical values are either bare numbers, read in the
//! section's default unit, or strings with a unit suffix such as `"2.5 g"` or
//! `"-92 kPa"`, converted to SI here. Unknown keys are rejected so a typo in a
//! key or unit is reported instead of silently ignored.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use suction_core::feasibility::DEFAULT_MARGIN;
use suction_core::model::units::{convert, parse_quantity, si_unit, Dimension, Unit};
use suction_core::{
    FabricPiece, LoadCase, MotionProfile, Permeability, PhysicalConstants, PipeSegment, Point,
    Polygon, PressureWindow, Scenario, SuctionCup, VacuumGenerator, Vgtc,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    /// Not valid TOML, or a key or value of the wrong shape. The message
    /// carries the line and column.
    #[error("config syntax: {0}")]
    Syntax(String),

    #[error("missing section: {0}")]
    MissingSection(&'static str),

    #[error("{section}: {message}")]
    Semantic {
        section: &'static str,
        message: String,
    },
}

fn semantic(section: &'static str) -> impl Fn(suction_core::Error) -> ConfigError {
    move |e| ConfigError::Semantic {
        section,
        message: e.to_string(),
    }
}

/// A physical value as written: a bare number or a string with a unit suffix.
#[derive(Debug, Clone, PartialEq)]
pub enum Quantity {
    Number(f64),
    Text(String),
}

impl Quantity {
    /// `value` in SI, written with its unit label so it reads back exactly.
    pub fn si(value: f64, dimension: Dimension) -> Quantity {
        let label = si_unit(dimension).label();
        Quantity::Text(format!("{value} {label}"))
    }

    fn resolve(&self, dimension: Dimension, default: Unit) -> suction_core::Result<f64> {
        match self {
            Quantity::Number(v) => convert(*v, default, si_unit(dimension)),
            Quantity::Text(t) => parse_quantity(t, dimension, default),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Quantity::Number(v) => s.serialize_f64(*v),
            Quantity::Text(t) => s.serialize_str(t),
        }
    }
}

impl<'de> Deserialize<'de> for Quantity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct QuantityVisitor;

        impl Visitor<'_> for QuantityVisitor {
            type Value = Quantity;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number or a quantity string such as \"2.5 g\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Quantity, E> {
                Ok(Quantity::Number(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Quantity, E> {
                Ok(Quantity::Number(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Quantity, E> {
                Ok(Quantity::Number(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Quantity, E> {
                Ok(Quantity::Text(v.to_string()))
            }
        }

        d.deserialize_any(QuantityVisitor)
    }
}

/// Default units for bare numbers, one per dimension. Absent entries mean SI.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitsSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mass: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pressure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flow: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub velocity: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub acceleration: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FabricSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub material: Option<String>,
    pub mass: Quantity,
    pub friction_coefficient: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permeability: Option<Permeability>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<Quantity>,
    /// Vertex list `[[x, y], ...]`, as an alternative to `length` and `width`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outline: Option<Vec<[Quantity; 2]>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotionSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub acceleration: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub safety_factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub load_case: Option<LoadCase>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift_height: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translate_distance: Option<Quantity>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CupSection {
    pub orifice_diameter: Quantity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSection {
    /// Either the gauge reading (`"-92 kPa"`) or its magnitude.
    pub max_vacuum: Quantity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub supply_flow: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub setup_pressure: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nozzle_diameter: Option<Quantity>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentSection {
    pub inner_diameter: Quantity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elevation: Option<Quantity>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineSection {
    pub upstream_velocity: Quantity,
    #[serde(default, rename = "segment")]
    pub segments: Vec<SegmentSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VgtcSection {
    pub radius: Quantity,
    pub p_min: Quantity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_max: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<[Quantity; 2]>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayoutSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub margin: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spacing: Option<Quantity>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gravity: Option<Quantity>,
    /// kg/m³
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub air_density: Option<f64>,
    /// m²/s
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kinematic_viscosity: Option<f64>,
}

/// The file as written, before unit conversion and validation.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<UnitsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fabric: Option<FabricSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub motion: Option<MotionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cup: Option<CupSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<LineSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vgtc: Option<VgtcSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layout: Option<LayoutSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<ConstantsSection>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct DefaultUnits {
    mass: Unit,
    length: Unit,
    pressure: Unit,
    flow: Unit,
    velocity: Unit,
    acceleration: Unit,
}

impl DefaultUnits {
    fn from_section(section: Option<&UnitsSection>) -> Result<Self, ConfigError> {
        let pick = |label: Option<&String>, dimension: Dimension| -> Result<Unit, ConfigError> {
            let Some(label) = label else {
                return Ok(si_unit(dimension));
            };
            let unit = Unit::parse(label).map_err(semantic("units"))?;
            if unit.dimension() != dimension {
                return Err(ConfigError::Semantic {
                    section: "units",
                    message: format!("`{label}` is not a {dimension} unit"),
                });
            }
            Ok(unit)
        };
        let s = section.cloned().unwrap_or_default();
        Ok(DefaultUnits {
            mass: pick(s.mass.as_ref(), Dimension::Mass)?,
            length: pick(s.length.as_ref(), Dimension::Length)?,
            pressure: pick(s.pressure.as_ref(), Dimension::Pressure)?,
            flow: pick(s.flow.as_ref(), Dimension::Flow)?,
            velocity: pick(s.velocity.as_ref(), Dimension::Velocity)?,
            acceleration: pick(s.acceleration.as_ref(), Dimension::Acceleration)?,
        })
    }

    fn unit(&self, dimension: Dimension) -> Unit {
        match dimension {
            Dimension::Mass => self.mass,
            Dimension::Length => self.length,
            Dimension::Pressure => self.pressure,
            Dimension::Flow => self.flow,
            Dimension::Velocity => self.velocity,
            Dimension::Acceleration => self.acceleration,
            other => si_unit(other),
        }
    }
}

/// A parsed config. Each section is converted on request, so a subcommand
/// only fails on the sections it actually uses.
#[derive(Debug, Clone)]
pub struct Config {
    doc: ConfigDocument,
    units: DefaultUnits,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let doc: ConfigDocument = toml::from_str(text)
            .map_err(|e| ConfigError::Syntax(e.to_string().trim().to_string()))?;
        let units = DefaultUnits::from_section(doc.units.as_ref())?;
        Ok(Config { doc, units })
    }

    pub fn document(&self) -> &ConfigDocument {
        &self.doc
    }

    fn quantity(
        &self,
        section: &'static str,
        q: &Quantity,
        dimension: Dimension,
    ) -> Result<f64, ConfigError> {
        q.resolve(dimension, self.units.unit(dimension))
            .map_err(semantic(section))
    }

    fn quantity_or(
        &self,
        section: &'static str,
        q: Option<&Quantity>,
        dimension: Dimension,
        default: f64,
    ) -> Result<f64, ConfigError> {
        q.map_or(Ok(default), |q| self.quantity(section, q, dimension))
    }

    pub fn has_fabric(&self) -> bool {
        self.doc.fabric.is_some()
    }

    pub fn fabric(&self) -> Result<FabricPiece, ConfigError> {
        let f = self
            .doc
            .fabric
            .as_ref()
            .ok_or(ConfigError::MissingSection("fabric"))?;
        let len = |q: &Quantity| self.quantity("fabric", q, Dimension::Length);
        let outline = match (&f.length, &f.width, &f.outline) {
            (Some(l), Some(w), None) => Polygon::rectangle(len(l)?, len(w)?),
            (None, None, Some(vertices)) => {
                let points = vertices
                    .iter()
                    .map(|[x, y]| Ok(Point::new(len(x)?, len(y)?)))
                    .collect::<Result<Vec<_>, ConfigError>>()?;
                Polygon::new(points)
            }
            _ => {
                return Err(ConfigError::Semantic {
                    section: "fabric",
                    message: "give either `length` and `width` or an `outline` vertex list".into(),
                })
            }
        }
        .map_err(semantic("fabric"))?;
        FabricPiece::new(
            f.id.clone().unwrap_or_else(|| "fabric".to_string()),
            outline,
            self.quantity("fabric", &f.mass, Dimension::Mass)?,
            f.friction_coefficient,
            f.permeability.unwrap_or(Permeability::AirImpermeable),
            f.material.clone().unwrap_or_default(),
        )
        .map_err(semantic("fabric"))
    }

    /// The motion section is optional; absent keys take the standard profile.
    pub fn motion(&self) -> Result<MotionProfile, ConfigError> {
        let d = MotionProfile::default();
        let Some(m) = self.doc.motion.as_ref() else {
            return Ok(d);
        };
        MotionProfile::new(
            self.quantity_or(
                "motion",
                m.acceleration.as_ref(),
                Dimension::Acceleration,
                d.acceleration(),
            )?,
            m.safety_factor.unwrap_or(d.safety_factor()),
            m.load_case.unwrap_or(d.load_case()),
            self.quantity_or(
                "motion",
                m.lift_height.as_ref(),
                Dimension::Length,
                d.lift_height(),
            )?,
            self.quantity_or(
                "motion",
                m.translate_distance.as_ref(),
                Dimension::Length,
                d.translate_distance(),
            )?,
        )
        .map_err(semantic("motion"))
    }

    pub fn cup(&self) -> Result<SuctionCup, ConfigError> {
        let c = self
            .doc
            .cup
            .as_ref()
            .ok_or(ConfigError::MissingSection("cup"))?;
        SuctionCup::new(
            self.quantity("cup", &c.orifice_diameter, Dimension::Length)?,
            c.count.unwrap_or(1),
        )
        .map_err(semantic("cup"))
    }

    pub fn has_generator(&self) -> bool {
        self.doc.generator.is_some()
    }

    pub fn generator(&self) -> Result<VacuumGenerator, ConfigError> {
        let g = self
            .doc
            .generator
            .as_ref()
            .ok_or(ConfigError::MissingSection("generator"))?;
        let d = VacuumGenerator::default();
        VacuumGenerator::new(
            self.quantity("generator", &g.max_vacuum, Dimension::Pressure)?
                .abs(),
            self.quantity_or(
                "generator",
                g.supply_flow.as_ref(),
                Dimension::Flow,
                d.supply_flow_rate(),
            )?,
            self.quantity_or(
                "generator",
                g.setup_pressure.as_ref(),
                Dimension::Pressure,
                d.setup_pressure(),
            )?,
            self.quantity_or(
                "generator",
                g.nozzle_diameter.as_ref(),
                Dimension::Length,
                d.nozzle_diameter(),
            )?,
        )
        .map_err(semantic("generator"))
    }

    /// Segments from generator to cup, and the velocity entering the first.
    pub fn line(&self) -> Result<(Vec<PipeSegment>, f64), ConfigError> {
        let l = self
            .doc
            .line
            .as_ref()
            .ok_or(ConfigError::MissingSection("line"))?;
        if l.segments.is_empty() {
            return Err(semantic("line")(suction_core::Error::EmptyLine));
        }
        let segments = l
            .segments
            .iter()
            .map(|s| {
                PipeSegment::new(
                    self.quantity("line", &s.inner_diameter, Dimension::Length)?,
                    self.quantity_or("line", s.length.as_ref(), Dimension::Length, 0.0)?,
                    self.quantity_or("line", s.elevation.as_ref(), Dimension::Length, 0.0)?,
                )
                .map_err(semantic("line"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let v1 = self.quantity("line", &l.upstream_velocity, Dimension::Velocity)?;
        Ok((segments, v1))
    }

    pub fn vgtc(&self) -> Result<Option<Vgtc>, ConfigError> {
        let Some(v) = self.doc.vgtc.as_ref() else {
            return Ok(None);
        };
        let pressure = |q: &Quantity| {
            Ok::<_, ConfigError>(self.quantity("vgtc", q, Dimension::Pressure)?.abs())
        };
        let p_max = v.p_max.as_ref().map(pressure).transpose()?;
        let window = PressureWindow::new(pressure(&v.p_min)?, p_max).map_err(semantic("vgtc"))?;
        let center = match &v.center {
            Some([x, y]) => Point::new(
                self.quantity("vgtc", x, Dimension::Length)?,
                self.quantity("vgtc", y, Dimension::Length)?,
            ),
            None => Point::default(),
        };
        let radius = self.quantity("vgtc", &v.radius, Dimension::Length)?;
        Vgtc::new(center, radius, window)
            .map(Some)
            .map_err(semantic("vgtc"))
    }

    pub fn margin(&self) -> Result<f64, ConfigError> {
        let m = self.doc.layout.as_ref().and_then(|l| l.margin.as_ref());
        self.quantity_or("layout", m, Dimension::Length, DEFAULT_MARGIN)
    }

    pub fn spacing(&self) -> Result<Option<f64>, ConfigError> {
        self.doc
            .layout
            .as_ref()
            .and_then(|l| l.spacing.as_ref())
            .map(|q| self.quantity("layout", q, Dimension::Length))
            .transpose()
    }

    pub fn constants(&self) -> Result<PhysicalConstants, ConfigError> {
        let d = PhysicalConstants::default();
        let Some(c) = self.doc.constants.as_ref() else {
            return Ok(d);
        };
        PhysicalConstants::new(
            self.quantity_or(
                "constants",
                c.gravity.as_ref(),
                Dimension::Acceleration,
                d.gravity(),
            )?,
            c.air_density.unwrap_or(d.air_density()),
            c.kinematic_viscosity.unwrap_or(d.kinematic_viscosity()),
        )
        .map_err(semantic("constants"))
    }

    /// The full scenario. Sections are checked in the order fabric, cup,
    /// generator, line; motion, vgtc, layout and constants are optional.
    pub fn scenario(&self) -> Result<Scenario, ConfigError> {
        let fabric = self.fabric()?;
        let cup = self.cup()?;
        let generator = self.generator()?;
        let (line, v1) = self.line()?;
        let scenario = Scenario::new(fabric, self.motion()?, cup, generator, line, v1)
            .map_err(semantic("line"))?
            .with_vgtc(self.vgtc()?)
            .with_constants(self.constants()?)
            .with_margin(self.margin()?)
            .map_err(semantic("layout"))?
            .with_spacing(self.spacing()?)
            .map_err(semantic("layout"))?;
        Ok(scenario)
    }
}

/// Parses config text into a validated scenario in SI units.
pub fn parse_config(text: &str) -> Result<Scenario, ConfigError> {
    Config::parse(text)?.scenario()
}

/// Writes `scenario` as config text that [`parse_config`] reads back to an
/// equal scenario. Every value carries its SI unit.
pub fn emit_scenario(scenario: &Scenario) -> String {
    use Dimension::*;

    let fabric = scenario.fabric();
    let outline = fabric.outline();
    let bbox = outline.bounding_box();
    let rect = Polygon::rectangle(bbox.length(), bbox.width()).ok();
    let (length, width, vertices) = if rect.as_ref() == Some(outline) {
        (
            Some(Quantity::si(bbox.length(), Length)),
            Some(Quantity::si(bbox.width(), Length)),
            None,
        )
    } else {
        let v = outline
            .vertices()
            .iter()
            .map(|p| [Quantity::si(p.x, Length), Quantity::si(p.y, Length)])
            .collect();
        (None, None, Some(v))
    };

    let motion = scenario.motion();
    let generator = scenario.generator();
    let consts = scenario.constants();
    let doc = ConfigDocument {
        units: None,
        fabric: Some(FabricSection {
            id: Some(fabric.id().to_string()),
            material: Some(fabric.material().to_string()),
            mass: Quantity::si(fabric.mass(), Mass),
            friction_coefficient: fabric.friction_coefficient(),
            permeability: Some(fabric.permeability()),
            length,
            width,
            outline: vertices,
        }),
        motion: Some(MotionSection {
            acceleration: Some(Quantity::si(motion.acceleration(), Acceleration)),
            safety_factor: Some(motion.safety_factor()),
            load_case: Some(motion.load_case()),
            lift_height: Some(Quantity::si(motion.lift_height(), Length)),
            translate_distance: Some(Quantity::si(motion.translate_distance(), Length)),
        }),
        cup: Some(CupSection {
            orifice_diameter: Quantity::si(scenario.cup().orifice_diameter(), Length),
            count: Some(scenario.cup().count()),
        }),
        generator: Some(GeneratorSection {
            max_vacuum: Quantity::si(-generator.max_vacuum(), Pressure),
            supply_flow: Some(Quantity::si(generator.supply_flow_rate(), Flow)),
            setup_pressure: Some(Quantity::si(generator.setup_pressure(), Pressure)),
            nozzle_diameter: Some(Quantity::si(generator.nozzle_diameter(), Length)),
        }),
        line: Some(LineSection {
            upstream_velocity: Quantity::si(scenario.upstream_velocity(), Velocity),
            segments: scenario
                .line()
                .iter()
                .map(|s| SegmentSection {
                    inner_diameter: Quantity::si(s.inner_diameter(), Length),
                    length: Some(Quantity::si(s.length(), Length)),
                    elevation: Some(Quantity::si(s.elevation(), Length)),
                })
                .collect(),
        }),
        vgtc: scenario.vgtc().map(|v| {
            let window = v.pressure_window();
            let c = v.center();
            VgtcSection {
                radius: Quantity::si(v.radius(), Length),
                p_min: Quantity::si(window.p_min(), Pressure),
                p_max: window.p_max().map(|p| Quantity::si(p, Pressure)),
                center: (c != Point::default())
                    .then(|| [Quantity::si(c.x, Length), Quantity::si(c.y, Length)]),
            }
        }),
        layout: Some(LayoutSection {
            margin: Some(Quantity::si(scenario.margin(), Length)),
            spacing: scenario.spacing().map(|s| Quantity::si(s, Length)),
        }),
        constants: Some(ConstantsSection {
            gravity: Some(Quantity::si(consts.gravity(), Acceleration)),
            air_density: Some(consts.air_density()),
            kinematic_viscosity: Some(consts.kinematic_viscosity()),
        }),
    };
    toml::to_string(&doc).expect("config document always serializes")
}
