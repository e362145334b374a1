//! Design calculations for vacuum-suction grippers handling cut fabric pieces.
//!
//! * [`statics`]: holding force for a lift and the cup vacuum it needs.
//! * [`pneumatics`]: continuity and Bernoulli losses from generator to cup.
//! * [`vgtc`]: grabbing circles, edge inflation and gripper grid layout.
//! * [`feasibility`]: the full pass/fail check and the corpus batch runner.
//!
//! Everything is SI internally; vacuum is a positive magnitude in pascals.

pub mod error;
pub mod feasibility;
pub mod model;
pub mod pneumatics;
pub mod statics;
pub mod vgtc;

pub use error::{Error, Result};
pub use feasibility::{evaluate, GraspReport, Scenario, Verdict};
pub use model::{
    EnergyHeads, FabricPiece, FlowState, LoadCase, MotionProfile, Permeability, PhysicalConstants,
    PipeSegment, Point, Polygon, PressureWindow, SuctionCup, VacuumGenerator,
};
pub use vgtc::{Layout, Vgtc};
