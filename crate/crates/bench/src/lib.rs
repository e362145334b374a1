//! Benchmark fixtures. The benches themselves live in `benches/`.

use suction_core::{
    FabricPiece, MotionProfile, Permeability, PipeSegment, Point, Polygon, PressureWindow,
    Scenario, SuctionCup, VacuumGenerator, Vgtc,
};

/// Pocket bag on a 6-cup frame with a 4 cm grabbing circle.
pub fn pocket_bag_scenario() -> Scenario {
    let fabric = FabricPiece::new(
        "pocket-bag",
        Polygon::rectangle(0.26, 0.19).expect("valid outline"),
        2.5e-3,
        0.5,
        Permeability::AirImpermeable,
        "100% Polyester; Plain Weave",
    )
    .expect("valid fabric");
    let window = PressureWindow::new(20_000.0, Some(60_000.0)).expect("valid window");
    Scenario::new(
        fabric,
        MotionProfile::default(),
        SuctionCup::new(2e-3, 6).expect("valid cup"),
        VacuumGenerator::default(),
        vec![
            PipeSegment::with_diameter(5.2e-3).expect("valid diameter"),
            PipeSegment::with_diameter(2.0e-3).expect("valid diameter"),
        ],
        37.14,
    )
    .expect("valid scenario")
    .with_vgtc(Some(
        Vgtc::new(Point::default(), 0.04, window).expect("valid circle"),
    ))
}
