//! Theoretical holding force and the cup vacuum needed to produce it.

use serde::{Deserialize, Serialize};

use crate::error::{non_negative, Error, Result};
use crate::model::{FabricPiece, LoadCase, MotionProfile, PhysicalConstants, SuctionCup};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HoldingForceInputs {
    pub mass: f64,
    pub friction_coefficient: f64,
    pub gravity: f64,
    pub acceleration: f64,
    pub safety_factor: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HoldingForceResult {
    /// Theoretical holding force, N.
    pub force: f64,
    pub load_case: LoadCase,
    pub inputs: HoldingForceInputs,
}

fn inputs(
    fabric: &FabricPiece,
    motion: &MotionProfile,
    consts: &PhysicalConstants,
) -> HoldingForceInputs {
    HoldingForceInputs {
        mass: fabric.mass(),
        friction_coefficient: fabric.friction_coefficient(),
        gravity: consts.gravity(),
        acceleration: motion.acceleration(),
        safety_factor: motion.safety_factor(),
    }
}

fn expect_case(motion: &MotionProfile, expected: LoadCase) -> Result<()> {
    if motion.load_case() == expected {
        Ok(())
    } else {
        Err(Error::LoadCaseMismatch {
            expected,
            found: motion.load_case(),
        })
    }
}

/// FTH = m (g + a) S
pub fn holding_force_plate_lift(
    fabric: &FabricPiece,
    motion: &MotionProfile,
    consts: &PhysicalConstants,
) -> Result<HoldingForceResult> {
    expect_case(motion, LoadCase::PlateLift)?;
    let i = inputs(fabric, motion, consts);
    Ok(HoldingForceResult {
        force: i.mass * (i.gravity + i.acceleration) * i.safety_factor,
        load_case: LoadCase::PlateLift,
        inputs: i,
    })
}

/// FTH = (m / μ) (g + a) S
pub fn holding_force_friction_lift(
    fabric: &FabricPiece,
    motion: &MotionProfile,
    consts: &PhysicalConstants,
) -> Result<HoldingForceResult> {
    expect_case(motion, LoadCase::FrictionLift)?;
    let i = inputs(fabric, motion, consts);
    Ok(HoldingForceResult {
        force: (i.mass / i.friction_coefficient) * (i.gravity + i.acceleration) * i.safety_factor,
        load_case: LoadCase::FrictionLift,
        inputs: i,
    })
}

/// Dispatches on `motion.load_case()`.
pub fn holding_force(
    fabric: &FabricPiece,
    motion: &MotionProfile,
    consts: &PhysicalConstants,
) -> Result<HoldingForceResult> {
    match motion.load_case() {
        LoadCase::PlateLift => holding_force_plate_lift(fabric, motion, consts),
        LoadCase::FrictionLift => holding_force_friction_lift(fabric, motion, consts),
    }
}

/// Vacuum magnitude that makes one cup orifice carry `force`: P = F / A.
pub fn required_pressure(force: f64, cup: &SuctionCup) -> Result<f64> {
    non_negative("force", force)?;
    Ok(force / cup.area())
}

/// Share of `total_force` carried by each of the `cup.count()` grippers.
pub fn per_gripper_force(total_force: f64, cup: &SuctionCup) -> f64 {
    total_force / f64::from(cup.count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Permeability, Polygon};

    fn fabric(mass: f64, mu: f64) -> FabricPiece {
        FabricPiece::new(
            "piece",
            Polygon::rectangle(0.26, 0.19).unwrap(),
            mass,
            mu,
            Permeability::AirImpermeable,
            "polyester",
        )
        .unwrap()
    }

    fn motion(a: f64, s: f64, case: LoadCase) -> MotionProfile {
        MotionProfile::new(a, s, case, 0.2, 0.5).unwrap()
    }

    #[test]
    fn plate_lift_pocket_bag() {
        let r = holding_force_plate_lift(
            &fabric(2.5e-3, 0.5),
            &motion(5.0, 2.0, LoadCase::PlateLift),
            &PhysicalConstants::default(),
        )
        .unwrap();
        // 2.5e-3 * 14.81 * 2
        assert!((r.force - 0.07405).abs() < 1e-12);
        assert_eq!(r.inputs.mass, 2.5e-3);
    }

    #[test]
    fn plate_lift_static_weight_and_tiny_mass() {
        let c = PhysicalConstants::default();
        let r = holding_force_plate_lift(
            &fabric(1.0, 0.5),
            &motion(0.0, 1.0, LoadCase::PlateLift),
            &c,
        )
        .unwrap();
        assert_eq!(r.force, 9.81);
        let r = holding_force_plate_lift(
            &fabric(1e-9, 0.5),
            &motion(5.0, 2.0, LoadCase::PlateLift),
            &c,
        )
        .unwrap();
        assert!((r.force - 1e-9 * 29.62).abs() < 1e-20);
    }

    #[test]
    fn friction_lift_pocket_pieces() {
        let c = PhysicalConstants::default();
        let m = motion(5.0, 2.0, LoadCase::FrictionLift);
        let bag = holding_force_friction_lift(&fabric(2.5e-3, 0.5), &m, &c).unwrap();
        let facing = holding_force_friction_lift(&fabric(2.0e-3, 0.5), &m, &c).unwrap();
        assert!((bag.force - 0.148).abs() <= 0.001, "{}", bag.force);
        assert!((facing.force - 0.118).abs() <= 0.001, "{}", facing.force);
    }

    #[test]
    fn friction_lift_unit_mu_is_weight() {
        let r = holding_force_friction_lift(
            &fabric(0.3, 1.0),
            &motion(0.0, 1.0, LoadCase::FrictionLift),
            &PhysicalConstants::default(),
        )
        .unwrap();
        assert_eq!(r.force, 0.3 * 9.81);
    }

    #[test]
    fn load_case_must_match() {
        let err = holding_force_plate_lift(
            &fabric(1.0, 0.5),
            &motion(0.0, 1.0, LoadCase::FrictionLift),
            &PhysicalConstants::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::LoadCaseMismatch { .. }));
    }

    #[test]
    fn pressure_inverts_force() {
        let cup = SuctionCup::new(2e-3, 1).unwrap();
        let bag = required_pressure(0.148, &cup).unwrap();
        let facing = required_pressure(0.118, &cup).unwrap();
        assert!((bag - 47_111.0).abs() / 47_111.0 < 0.01, "{bag}");
        assert!((facing - 37_561.0).abs() / 37_561.0 < 0.01, "{facing}");
        assert_eq!(required_pressure(0.0, &cup).unwrap(), 0.0);
        assert!(required_pressure(-1.0, &cup).is_err());
    }

    #[test]
    fn force_sharing() {
        let one = SuctionCup::new(2e-3, 1).unwrap();
        let six = SuctionCup::new(2e-3, 6).unwrap();
        assert_eq!(per_gripper_force(0.148, &one), 0.148);
        assert!((per_gripper_force(0.148, &six) - 0.024667).abs() < 1e-6);
        assert_eq!(per_gripper_force(0.0, &six), 0.0);
    }
}
