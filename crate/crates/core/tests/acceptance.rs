//! Exit criteria for the calculation engine. Prints one line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use suction_core::feasibility::{parse_corpus, run_corpus, Rig, BUNDLED_CORPUS, DEFAULT_MARGIN};
use suction_core::pneumatics::{
    constriction_pressure_drop, continuity_velocity, net_supply_vacuum, parallel_flow_split,
    solve_pressure_from_balance,
};
use suction_core::statics::{holding_force_friction_lift, required_pressure};
use suction_core::vgtc::{
    calibrate_spacing, disk_polygon_area, effective_ratio, generate_layout, layout_count,
};
use suction_core::*;

const FORCE_TOL: f64 = 0.001;
const PRESSURE_REL_TOL: f64 = 0.01;
const LOSS_TOL: f64 = 500.0;
const MC_PAIRS: usize = 200;
const MC_SAMPLES: usize = 1_000_000;
const MC_SIGMAS: f64 = 3.0;
const SYMMETRY_REL_TOL: f64 = 1e-6;
const EQUIVALENCE_REL_TOL: f64 = 1e-9;
const PROPERTY_CASES: usize = 2_000;

type Outcome = Result<String, String>;

fn fabric(mass: f64) -> FabricPiece {
    FabricPiece::new(
        "piece",
        Polygon::rectangle(0.26, 0.19).unwrap(),
        mass,
        0.5,
        Permeability::AirImpermeable,
        "100% Polyester",
    )
    .unwrap()
}

fn pocket_forces() -> (f64, f64) {
    let motion = MotionProfile::new(5.0, 2.0, LoadCase::FrictionLift, 0.2, 0.5).unwrap();
    let c = PhysicalConstants::default();
    let bag = holding_force_friction_lift(&fabric(2.5e-3), &motion, &c).unwrap();
    let facing = holding_force_friction_lift(&fabric(2.0e-3), &motion, &c).unwrap();
    (bag.force, facing.force)
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn holding_forces() -> Outcome {
    let (bag, facing) = pocket_forces();
    check(
        (bag - 0.148).abs() <= FORCE_TOL && (facing - 0.118).abs() <= FORCE_TOL,
        format!("bag {bag:.5} N (0.148), facing {facing:.5} N (0.118), tol ±{FORCE_TOL} N"),
    )
}

fn required_pressures() -> Outcome {
    let (bag, facing) = pocket_forces();
    let cup = SuctionCup::new(2e-3, 1).unwrap();
    let pb = required_pressure(bag, &cup).unwrap();
    let pf = required_pressure(facing, &cup).unwrap();
    let eb = (pb - 47_111.0).abs() / 47_111.0;
    let ef = (pf - 37_561.0).abs() / 37_561.0;
    check(
        eb <= PRESSURE_REL_TOL && ef <= PRESSURE_REL_TOL,
        format!(
            "bag {pb:.0} Pa ({:.2}% off 47111), facing {pf:.0} Pa ({:.2}% off 37561)",
            100.0 * eb,
            100.0 * ef
        ),
    )
}

fn line_loss() -> Outcome {
    let up = PipeSegment::with_diameter(5.2e-3).unwrap();
    let down = PipeSegment::with_diameter(2.0e-3).unwrap();
    let c = PhysicalConstants::new(9.81, 1.204, 1.6e-5).unwrap();
    let r = constriction_pressure_drop(&up, &down, 37.14, &c).unwrap();
    check(
        (r.delta_p - 37_018.0).abs() <= LOSS_TOL,
        format!("ΔP {:.0} Pa vs 37018 ± {LOSS_TOL} Pa", r.delta_p),
    )
}

fn net_supply() -> Outcome {
    let net = net_supply_vacuum(&VacuumGenerator::default(), 37_000.0).unwrap();
    check(
        net.pressure == 55_000.0,
        format!("92000 - 37000 = {} Pa", net.pressure),
    )
}

fn corpus() -> Outcome {
    let rows = parse_corpus(BUNDLED_CORPUS).map_err(|e| e.to_string())?;
    let entries = run_corpus(&rows, &Rig::default());
    let mut passes = 0;
    let mut problems = Vec::new();
    for e in &entries {
        match &e.outcome {
            Ok(o) if o.report.verdict == Verdict::Pass && o.row.supply_pressure == 55_000.0 => {
                passes += 1
            }
            Ok(o) => problems.push(format!("row {}: {}", e.row_number, o.report.verdict)),
            Err(err) => problems.push(format!("row {}: {err}", e.row_number)),
        }
    }
    check(
        entries.len() == 12 && passes == 12,
        format!(
            "{passes}/{} rows pass at -55 kPa {problems:?}",
            entries.len()
        ),
    )
}

fn geometry_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut worst_z = 0.0f64;
    let mut outside = Vec::new();
    for case in 0..MC_PAIRS {
        let pair = common::random_pair(&mut rng);
        let analytic = disk_polygon_area(pair.center, pair.radius, &pair.polygon());
        let (estimate, se) = common::monte_carlo_area(
            &mut rng,
            (pair.center.x, pair.center.y),
            pair.radius,
            &pair.corners,
            MC_SAMPLES,
        );
        let diff = (analytic - estimate).abs();
        if se == 0.0 {
            // Every sample fell on one side, so the disk is (numerically) wholly
            // inside or outside; the analytic area must be 0 or πr² up to roundoff.
            let disk = std::f64::consts::PI * pair.radius * pair.radius;
            if diff > 1e-12 * disk {
                outside.push(case);
            }
            continue;
        }
        let z = diff / se;
        worst_z = worst_z.max(z);
        if z > MC_SIGMAS {
            outside.push(case);
        }
    }

    let outline = Polygon::rectangle(0.26, 0.19).unwrap();
    let window = PressureWindow::new(1.0, None).unwrap();
    let circle = Vgtc::new(Point::default(), 0.03, window).unwrap();
    let symmetric = [
        (Point::new(0.13, 0.095), 1.0),
        (Point::new(0.13, 0.0), 0.5),
        (Point::new(0.0, 0.0), 0.25),
    ];
    let sym_err = symmetric
        .iter()
        .map(|&(p, expect)| (effective_ratio(&circle.at(p), &outline) - expect).abs() / expect)
        .fold(0.0, f64::max);

    check(
        outside.is_empty() && sym_err < SYMMETRY_REL_TOL,
        format!(
            "{MC_PAIRS} pairs x {MC_SAMPLES} samples, worst |z| = {worst_z:.2}, beyond {MC_SIGMAS}σ: {outside:?}; symmetry rel err {sym_err:.1e}"
        ),
    )
}

fn calibration() -> Outcome {
    let rows = parse_corpus(BUNDLED_CORPUS).map_err(|e| e.to_string())?;
    let mut failed = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_ref().map_err(|e| e.to_string())?;
        let outline = Polygon::rectangle(row.length, row.width).unwrap();
        let target = row.gripper_count as usize;
        let intervals =
            calibrate_spacing(&outline, DEFAULT_MARGIN, target, (0.01, 0.15), 0.001).unwrap();
        let verified = !intervals.is_empty()
            && intervals.iter().all(|iv| {
                generate_layout(&outline, DEFAULT_MARGIN, iv.midpoint())
                    .is_ok_and(|l| l.len() == target)
            });
        if !verified {
            failed.push(format!(
                "row {} ({:.0}x{:.0} cm, {} grippers)",
                i + 1,
                row.length * 100.0,
                row.width * 100.0,
                target
            ));
        }
    }
    check(
        failed.is_empty(),
        format!(
            "{}/{} rows calibrated; no spacing found for {failed:?}",
            rows.len() - failed.len(),
            rows.len()
        ),
    )
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let c = PhysicalConstants::default();
    let mut broken = Vec::new();

    for _ in 0..PROPERTY_CASES {
        let a1 = rng.random_range(1e-7..1e-3);
        let a2 = rng.random_range(1e-7..1e-3);
        let v1 = rng.random_range(0.0..200.0);
        let v2 = continuity_velocity(a1, v1, a2).unwrap();
        if (a1 * v1 - a2 * v2).abs() > 1e-12 * a1 * v1 {
            broken.push("mass conservation");
            break;
        }
    }

    for _ in 0..PROPERTY_CASES {
        let up = PipeSegment::with_diameter(rng.random_range(1e-3..2e-2)).unwrap();
        let down = PipeSegment::with_diameter(rng.random_range(1e-3..2e-2)).unwrap();
        let v1 = rng.random_range(0.1..100.0);
        let p1 = rng.random_range(-100_000.0..0.0);
        let drop = constriction_pressure_drop(&up, &down, v1, &c).unwrap();
        let known = FlowState::in_segment(p1, v1, &up).unwrap();
        let p2 = solve_pressure_from_balance(
            &known,
            drop.downstream_velocity,
            0.0,
            &EnergyHeads::default(),
            &c,
        )
        .unwrap();
        let scale = drop
            .delta_p
            .abs()
            .max(0.5 * c.air_density() * drop.downstream_velocity.powi(2));
        if ((p1 - p2) - drop.delta_p).abs() > EQUIVALENCE_REL_TOL * scale {
            broken.push("constriction/energy-balance equivalence");
            break;
        }
    }

    for _ in 0..PROPERTY_CASES {
        let n = rng.random_range(1..32);
        let total = rng.random_range(0.0..1e-2);
        let weights: Vec<f64> = (0..n).map(|_| rng.random_range(0.01..10.0)).collect();
        let flows = parallel_flow_split(total, n, Some(&weights)).unwrap();
        let sum: f64 = flows.iter().sum();
        if (sum - total).abs() > 2.0 * f64::EPSILON * total * n as f64 {
            broken.push("flow split sum");
            break;
        }
    }

    let scenario = |mass: f64, vacuum: f64, pmax: Option<f64>, perm: Permeability| {
        let window = PressureWindow::new(3_000.0, pmax).unwrap();
        let f = FabricPiece::new(
            "p",
            Polygon::rectangle(0.26, 0.19).unwrap(),
            mass,
            0.5,
            perm,
            "",
        )
        .unwrap();
        Scenario::new(
            f,
            MotionProfile::default(),
            SuctionCup::new(2e-3, 6).unwrap(),
            VacuumGenerator::default().with_max_vacuum(vacuum).unwrap(),
            vec![
                PipeSegment::with_diameter(5.2e-3).unwrap(),
                PipeSegment::with_diameter(2e-3).unwrap(),
            ],
            37.14,
        )
        .unwrap()
        .with_vgtc(Some(Vgtc::new(Point::default(), 0.11, window).unwrap()))
    };
    for _ in 0..PROPERTY_CASES / 10 {
        let mass = rng.random_range(1e-4..1e-2);
        let vacuum = rng.random_range(1_000.0..90_000.0);
        let pmax = rng
            .random_bool(0.5)
            .then(|| rng.random_range(3_000.0..100_000.0));
        let perm = if rng.random_bool(0.5) {
            Permeability::AirPermeable
        } else {
            Permeability::AirImpermeable
        };
        let base = evaluate(&scenario(mass, vacuum, pmax, perm))
            .unwrap()
            .verdict;
        let stronger = evaluate(&scenario(
            mass,
            vacuum + rng.random_range(0.0..11_000.0),
            pmax,
            perm,
        ))
        .unwrap()
        .verdict;
        let heavier = evaluate(&scenario(
            mass + rng.random_range(0.0..1e-2),
            vacuum,
            pmax,
            perm,
        ))
        .unwrap()
        .verdict;
        if !base.is_fail() && stronger.is_fail() {
            broken.push("verdict monotone in generator vacuum");
            break;
        }
        if base.is_fail() && !heavier.is_fail() {
            broken.push("verdict monotone in mass");
            break;
        }
    }

    for _ in 0..PROPERTY_CASES {
        let outline =
            Polygon::rectangle(rng.random_range(0.05..0.6), rng.random_range(0.05..0.6)).unwrap();
        let margin = rng.random_range(0.0..0.02);
        let spacing = rng.random_range(0.005..0.2);
        let n = layout_count(&outline, margin, spacing).unwrap();
        let wider = layout_count(&outline, margin, spacing + rng.random_range(0.0..0.05)).unwrap();
        let deeper =
            layout_count(&outline, margin + rng.random_range(0.0..0.005), spacing).unwrap();
        if wider > n || deeper > n {
            broken.push("layout count monotone in spacing and margin");
            break;
        }
    }

    check(
        broken.is_empty(),
        if broken.is_empty() {
            format!(
                "6 randomized suites, {PROPERTY_CASES} cases each (verdict suite {})",
                PROPERTY_CASES / 10
            )
        } else {
            format!("violated: {broken:?}")
        },
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("holding forces", holding_forces),
        ("required pressures", required_pressures),
        ("line loss", line_loss),
        ("net supply", net_supply),
        ("corpus verdicts", corpus),
        ("geometry oracle", geometry_oracle),
        ("spacing calibration", calibration),
        ("property suites", property_suites),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} {name}: PASS - {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {} {name}: FAIL - {detail}", i + 1);
            }
        }
    }
    println!(
        "criterion 9 physical pickup: NOT RUN - bench experiment, traced by criteria 1-5 and 6-8"
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
