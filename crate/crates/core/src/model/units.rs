//! Unit labels accepted at the I/O boundary and their exact SI scale factors.
//!
//! Every factor is stored as a ratio of two integers so that a conversion is a
//! single multiply followed by a single divide, each correctly rounded.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    Mass,
    Length,
    Pressure,
    Flow,
    Velocity,
    Acceleration,
    Time,
    Volume,
    Dimensionless,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Dimension::Mass => "mass",
            Dimension::Length => "length",
            Dimension::Pressure => "pressure",
            Dimension::Flow => "flow",
            Dimension::Velocity => "velocity",
            Dimension::Acceleration => "acceleration",
            Dimension::Time => "time",
            Dimension::Volume => "volume",
            Dimension::Dimensionless => "dimensionless",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    Gram,
    Kilogram,
    Millimeter,
    Centimeter,
    Meter,
    Pascal,
    Kilopascal,
    Bar,
    LitersPerMinute,
    CubicMetersPerSecond,
    MetersPerSecond,
    MetersPerSecondSquared,
    Second,
    Liter,
    CubicMeter,
    One,
}

impl Unit {
    pub const ALL: [Unit; 16] = [
        Unit::Gram,
        Unit::Kilogram,
        Unit::Millimeter,
        Unit::Centimeter,
        Unit::Meter,
        Unit::Pascal,
        Unit::Kilopascal,
        Unit::Bar,
        Unit::LitersPerMinute,
        Unit::CubicMetersPerSecond,
        Unit::MetersPerSecond,
        Unit::MetersPerSecondSquared,
        Unit::Second,
        Unit::Liter,
        Unit::CubicMeter,
        Unit::One,
    ];

    pub fn parse(label: &str) -> Result<Unit> {
        let unit = match label.trim() {
            "g" => Unit::Gram,
            "kg" => Unit::Kilogram,
            "mm" => Unit::Millimeter,
            "cm" => Unit::Centimeter,
            "m" => Unit::Meter,
            "Pa" => Unit::Pascal,
            "kPa" => Unit::Kilopascal,
            "bar" => Unit::Bar,
            "L/min" | "l/min" => Unit::LitersPerMinute,
            "m^3/s" | "m³/s" | "m3/s" => Unit::CubicMetersPerSecond,
            "m/s" => Unit::MetersPerSecond,
            "m/s^2" | "m/s²" | "m/s2" => Unit::MetersPerSecondSquared,
            "s" => Unit::Second,
            "L" | "l" => Unit::Liter,
            "m^3" | "m³" | "m3" => Unit::CubicMeter,
            "" | "1" => Unit::One,
            other => return Err(Error::UnsupportedUnit(other.to_string())),
        };
        Ok(unit)
    }

    pub fn label(self) -> &'static str {
        match self {
            Unit::Gram => "g",
            Unit::Kilogram => "kg",
            Unit::Millimeter => "mm",
            Unit::Centimeter => "cm",
            Unit::Meter => "m",
            Unit::Pascal => "Pa",
            Unit::Kilopascal => "kPa",
            Unit::Bar => "bar",
            Unit::LitersPerMinute => "L/min",
            Unit::CubicMetersPerSecond => "m^3/s",
            Unit::MetersPerSecond => "m/s",
            Unit::MetersPerSecondSquared => "m/s^2",
            Unit::Second => "s",
            Unit::Liter => "L",
            Unit::CubicMeter => "m^3",
            Unit::One => "",
        }
    }

    pub fn dimension(self) -> Dimension {
        match self {
            Unit::Gram | Unit::Kilogram => Dimension::Mass,
            Unit::Millimeter | Unit::Centimeter | Unit::Meter => Dimension::Length,
            Unit::Pascal | Unit::Kilopascal | Unit::Bar => Dimension::Pressure,
            Unit::LitersPerMinute | Unit::CubicMetersPerSecond => Dimension::Flow,
            Unit::MetersPerSecond => Dimension::Velocity,
            Unit::MetersPerSecondSquared => Dimension::Acceleration,
            Unit::Second => Dimension::Time,
            Unit::Liter | Unit::CubicMeter => Dimension::Volume,
            Unit::One => Dimension::Dimensionless,
        }
    }

    /// SI value = value * num / den.
    fn ratio(self) -> (f64, f64) {
        match self {
            Unit::Gram | Unit::Millimeter => (1.0, 1000.0),
            Unit::Centimeter => (1.0, 100.0),
            Unit::Kilopascal => (1000.0, 1.0),
            Unit::Bar => (100_000.0, 1.0),
            Unit::LitersPerMinute => (1.0, 60_000.0),
            Unit::Liter => (1.0, 1000.0),
            _ => (1.0, 1.0),
        }
    }

    /// The SI unit of this unit's dimension.
    pub fn si(self) -> Unit {
        si_unit(self.dimension())
    }
}

pub fn si_unit(dimension: Dimension) -> Unit {
    match dimension {
        Dimension::Mass => Unit::Kilogram,
        Dimension::Length => Unit::Meter,
        Dimension::Pressure => Unit::Pascal,
        Dimension::Flow => Unit::CubicMetersPerSecond,
        Dimension::Velocity => Unit::MetersPerSecond,
        Dimension::Acceleration => Unit::MetersPerSecondSquared,
        Dimension::Time => Unit::Second,
        Dimension::Volume => Unit::CubicMeter,
        Dimension::Dimensionless => Unit::One,
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn convert(value: f64, from: Unit, to: Unit) -> Result<f64> {
    if from.dimension() != to.dimension() {
        return Err(Error::IncompatibleUnits {
            from: from.label().to_string(),
            to: to.label().to_string(),
        });
    }
    let (fn_, fd) = from.ratio();
    let (tn, td) = to.ratio();
    Ok(value * (fn_ * td) / (fd * tn))
}

/// Converts `value` between two unit labels, e.g. `convert_units(63.0, "L/min", "m^3/s")`.
pub fn convert_units(value: f64, from_unit: &str, to_unit: &str) -> Result<f64> {
    convert(value, Unit::parse(from_unit)?, Unit::parse(to_unit)?)
}

/// Splits `"2.5 g"`, `"-92kPa"` or `"5e-3 m"` into number and unit label.
pub fn split_quantity(text: &str) -> Option<(f64, &str)> {
    let text = text.trim();
    let bytes = text.as_bytes();
    let mut end = 0;
    while end < bytes.len() {
        let c = bytes[end];
        let numeric = c.is_ascii_digit()
            || c == b'.'
            || ((c == b'+' || c == b'-') && (end == 0 || matches!(bytes[end - 1], b'e' | b'E')))
            || ((c == b'e' || c == b'E')
                && end > 0
                && bytes
                    .get(end + 1)
                    .is_some_and(|n| n.is_ascii_digit() || *n == b'-' || *n == b'+'));
        if !numeric {
            break;
        }
        end += 1;
    }
    let value: f64 = text[..end].parse().ok()?;
    Some((value, text[end..].trim()))
}

/// Parses a quantity with an optional unit suffix and returns its SI value.
///
/// A bare number is read in `default_unit`.
pub fn parse_quantity(text: &str, dimension: Dimension, default_unit: Unit) -> Result<f64> {
    let (value, label) =
        split_quantity(text).ok_or_else(|| Error::UnsupportedUnit(text.trim().to_string()))?;
    let unit = if label.is_empty() {
        default_unit
    } else {
        Unit::parse(label)?
    };
    if unit.dimension() != dimension {
        return Err(Error::IncompatibleUnits {
            from: unit.label().to_string(),
            to: si_unit(dimension).label().to_string(),
        });
    }
    convert(value, unit, si_unit(dimension))
}
