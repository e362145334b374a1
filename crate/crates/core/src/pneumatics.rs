//! Steady incompressible air flow between generator and cup.
//!
//! The line is modelled as a chain of pipe segments. Each diameter change is a
//! contraction (or expansion) where continuity fixes the downstream velocity
//! and the Bernoulli balance converts the velocity change into a pressure
//! change. Head terms are metres of air column and become pascals through ρg.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, non_negative, positive, Error, Result};
use crate::model::{EnergyHeads, FlowState, PhysicalConstants, PipeSegment, VacuumGenerator};

/// Velocities above this are far outside the incompressible regime.
pub const HIGH_VELOCITY_THRESHOLD: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineLossResult {
    /// P1 - P2 in Pa. Negative when the flow expands and recovers pressure.
    pub delta_p: f64,
    pub upstream_velocity: f64,
    pub downstream_velocity: f64,
    /// A1 / A2.
    pub area_ratio: f64,
    pub pressure_recovery: bool,
    pub high_velocity: bool,
}

/// v2 = v1 · A1 / A2
pub fn continuity_velocity(a1: f64, v1: f64, a2: f64) -> Result<f64> {
    positive("upstream area", a1)?;
    positive("downstream area", a2)?;
    non_negative("upstream velocity", v1)?;
    Ok(v1 * (a1 / a2))
}

/// Pressure drop across a diameter change at constant elevation:
/// ΔP = ½ ρ v1² ((A1/A2)² − 1).
pub fn constriction_pressure_drop(
    upstream: &PipeSegment,
    downstream: &PipeSegment,
    v1: f64,
    consts: &PhysicalConstants,
) -> Result<LineLossResult> {
    let (a1, a2) = (upstream.area(), downstream.area());
    let v2 = continuity_velocity(a1, v1, a2)?;
    let ratio = a1 / a2;
    let delta_p = 0.5 * consts.air_density() * v1 * v1 * (ratio * ratio - 1.0);
    Ok(LineLossResult {
        delta_p,
        upstream_velocity: v1,
        downstream_velocity: v2,
        area_ratio: ratio,
        pressure_recovery: delta_p < 0.0,
        high_velocity: v1.max(v2) > HIGH_VELOCITY_THRESHOLD,
    })
}

/// Total mechanical energy per unit volume at station 1 minus station 2, Pa.
///
/// Zero when the two states satisfy
/// `P1/ρg + v1²/2g + h1 + H_pump = P2/ρg + v2²/2g + h2 + H_loss + H_turbine`.
pub fn bernoulli_balance(
    state1: &FlowState,
    state2: &FlowState,
    heads: &EnergyHeads,
    consts: &PhysicalConstants,
) -> f64 {
    let rho = consts.air_density();
    let rho_g = consts.specific_weight();
    let left = state1.pressure()
        + 0.5 * rho * state1.velocity() * state1.velocity()
        + rho_g * (state1.elevation() + heads.pump_head());
    let right = state2.pressure()
        + 0.5 * rho * state2.velocity() * state2.velocity()
        + rho_g * (state2.elevation() + heads.loss_head() + heads.turbine_head());
    left - right
}

/// Pressure at the downstream station that closes the energy balance.
pub fn solve_pressure_from_balance(
    known: &FlowState,
    unknown_velocity: f64,
    unknown_elevation: f64,
    heads: &EnergyHeads,
    consts: &PhysicalConstants,
) -> Result<f64> {
    non_negative("downstream velocity", unknown_velocity)?;
    ensure(
        unknown_elevation.is_finite(),
        "downstream elevation",
        "finite",
        unknown_elevation,
    )?;
    let rho = consts.air_density();
    let (v1, v2) = (known.velocity(), unknown_velocity);
    // The pump head belongs on the supply side of the balance, so it raises P2.
    let head_terms = (known.elevation() - unknown_elevation) + heads.pump_head()
        - heads.loss_head()
        - heads.turbine_head();
    Ok(known.pressure() + 0.5 * rho * (v1 * v1 - v2 * v2) + consts.specific_weight() * head_terms)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetSupply {
    /// Vacuum magnitude reaching the cup, Pa.
    pub pressure: f64,
    /// Set when the losses consumed the whole generator vacuum.
    pub saturated: bool,
}

pub fn net_supply_vacuum(generator: &VacuumGenerator, loss: f64) -> Result<NetSupply> {
    non_negative("line loss", loss)?;
    let remaining = generator.max_vacuum() - loss;
    Ok(NetSupply {
        pressure: remaining.max(0.0),
        saturated: remaining <= 0.0,
    })
}

/// Splits a generator flow over parallel branches, `Q = Σ Q_i`.
///
/// Without weights the split is even. The last branch takes the remainder so
/// the outputs re-add to `total_flow`.
pub fn parallel_flow_split(
    total_flow: f64,
    branch_count: usize,
    weights: Option<&[f64]>,
) -> Result<Vec<f64>> {
    non_negative("total flow", total_flow)?;
    ensure(
        branch_count >= 1,
        "branch_count",
        ">= 1",
        branch_count as f64,
    )?;
    let shares: Vec<f64> = match weights {
        None => vec![1.0; branch_count],
        Some(w) => {
            if w.len() != branch_count {
                return Err(Error::WeightCountMismatch {
                    expected: branch_count,
                    got: w.len(),
                });
            }
            for &x in w {
                positive("branch weight", x)?;
            }
            w.to_vec()
        }
    };
    let weight_sum: f64 = shares.iter().sum();
    let mut flows: Vec<f64> = shares
        .iter()
        .map(|w| total_flow * (w / weight_sum))
        .collect();
    let head: f64 = flows[..branch_count - 1].iter().sum();
    flows[branch_count - 1] = (total_flow - head).max(0.0);
    Ok(flows)
}

/// Q = V / t
pub fn flow_rate(volume: f64, time: f64) -> Result<f64> {
    non_negative("volume", volume)?;
    positive("time", time)?;
    Ok(volume / time)
}

/// v = Q / A
pub fn velocity_from_flow(flow: f64, area: f64) -> Result<f64> {
    non_negative("flow", flow)?;
    positive("area", area)?;
    Ok(flow / area)
}

/// Pressure losses summed over every consecutive segment pair of a line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineLoss {
    pub stages: Vec<LineLossResult>,
    /// Σ ΔP, Pa. May be negative when expansions dominate.
    pub total: f64,
    /// Velocity in the last segment.
    pub outlet_velocity: f64,
    /// Consecutive segments sit at different elevations; the constriction
    /// model ignores the head difference.
    pub elevation_ignored: bool,
}

impl LineLoss {
    pub fn high_velocity(&self) -> bool {
        self.stages.iter().any(|s| s.high_velocity)
    }

    pub fn pressure_recovery(&self) -> bool {
        self.stages.iter().any(|s| s.pressure_recovery)
    }
}

pub fn line_loss(
    segments: &[PipeSegment],
    inlet_velocity: f64,
    consts: &PhysicalConstants,
) -> Result<LineLoss> {
    if segments.is_empty() {
        return Err(Error::EmptyLine);
    }
    non_negative("upstream velocity", inlet_velocity)?;
    let mut v = inlet_velocity;
    let mut stages = Vec::with_capacity(segments.len() - 1);
    let mut elevation_ignored = false;
    for pair in segments.windows(2) {
        let stage = constriction_pressure_drop(&pair[0], &pair[1], v, consts)?;
        elevation_ignored |= pair[0].elevation() != pair[1].elevation();
        v = stage.downstream_velocity;
        stages.push(stage);
    }
    Ok(LineLoss {
        total: stages.iter().map(|s| s.delta_p).sum(),
        stages,
        outlet_velocity: v,
        elevation_ignored,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(d: f64) -> PipeSegment {
        PipeSegment::with_diameter(d).unwrap()
    }

    #[test]
    fn continuity_examples() {
        let v2 = continuity_velocity(2.123e-5, 37.14, 3.141e-6).unwrap();
        assert!((v2 - 251.0).abs() <= 0.5, "{v2}");
        assert_eq!(continuity_velocity(1e-5, 12.0, 1e-5).unwrap(), 12.0);
        assert_eq!(continuity_velocity(1e-5, 0.0, 2e-6).unwrap(), 0.0);
        assert!(continuity_velocity(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn five_point_two_to_two_millimetre_drop() {
        let c = PhysicalConstants::default();
        let r = constriction_pressure_drop(&seg(5.2e-3), &seg(2.0e-3), 37.14, &c).unwrap();
        assert!((r.delta_p - 37_018.0).abs() <= 500.0, "{}", r.delta_p);
        assert!((r.area_ratio - 6.76).abs() < 1e-12);
        assert!(r.high_velocity);
        assert!(!r.pressure_recovery);
    }

    #[test]
    fn no_constriction_or_no_flow() {
        let c = PhysicalConstants::default();
        let r = constriction_pressure_drop(&seg(4e-3), &seg(4e-3), 30.0, &c).unwrap();
        assert_eq!(r.delta_p, 0.0);
        let r = constriction_pressure_drop(&seg(5.2e-3), &seg(2e-3), 0.0, &c).unwrap();
        assert_eq!(r.delta_p, 0.0);
    }

    #[test]
    fn expansion_recovers_pressure() {
        let c = PhysicalConstants::default();
        let r = constriction_pressure_drop(&seg(2e-3), &seg(5.2e-3), 10.0, &c).unwrap();
        assert!(r.delta_p < 0.0);
        assert!(r.pressure_recovery);
    }

    #[test]
    fn balance_examples() {
        let c = PhysicalConstants::default();
        let zero = EnergyHeads::default();
        let s = FlowState::new(-92_000.0, 37.14, 0.0, 7.9e-4).unwrap();
        assert_eq!(bernoulli_balance(&s, &s, &zero, &c), 0.0);

        let high = FlowState::new(0.0, 0.0, 1.0, 0.0).unwrap();
        let low = FlowState::new(0.0, 0.0, 0.0, 0.0).unwrap();
        let r = bernoulli_balance(&high, &low, &zero, &c);
        assert!((r - 1.204 * 9.81).abs() < 1e-12);
        assert!((r - 11.81).abs() < 0.01);
    }

    #[test]
    fn balance_closes_on_constriction_result() {
        let c = PhysicalConstants::default();
        let (up, down) = (seg(5.2e-3), seg(2e-3));
        let r = constriction_pressure_drop(&up, &down, 37.14, &c).unwrap();
        let s1 = FlowState::in_segment(-92_000.0, 37.14, &up).unwrap();
        let s2 =
            FlowState::in_segment(-92_000.0 - r.delta_p, r.downstream_velocity, &down).unwrap();
        let residual = bernoulli_balance(&s1, &s2, &EnergyHeads::default(), &c);
        assert!(residual.abs() <= 1e-6 * r.delta_p, "{residual}");
    }

    #[test]
    fn solve_examples() {
        let c = PhysicalConstants::default();
        let zero = EnergyHeads::default();
        let known = FlowState::new(-10_000.0, 20.0, 0.3, 0.0).unwrap();
        assert_eq!(
            solve_pressure_from_balance(&known, 20.0, 0.3, &zero, &c).unwrap(),
            -10_000.0
        );

        let up = FlowState::new(-92_000.0, 37.14, 0.0, 0.0).unwrap();
        let v2 = continuity_velocity(seg(5.2e-3).area(), 37.14, seg(2e-3).area()).unwrap();
        let p2 = solve_pressure_from_balance(&up, v2, 0.0, &zero, &c).unwrap();
        assert!(((-92_000.0 - p2) - 37_018.0).abs() <= 500.0);

        let loss = EnergyHeads::new(0.0, 3.0, 0.0).unwrap();
        let p2 = solve_pressure_from_balance(&known, 20.0, 0.3, &loss, &c).unwrap();
        assert!((p2 - (-10_000.0 - 1.204 * 9.81 * 3.0)).abs() < 1e-9);
    }

    #[test]
    fn net_supply_examples() {
        let g = VacuumGenerator::default();
        assert_eq!(net_supply_vacuum(&g, 37_000.0).unwrap().pressure, 55_000.0);
        assert_eq!(net_supply_vacuum(&g, 0.0).unwrap().pressure, 92_000.0);
        let over = net_supply_vacuum(&g, 100_000.0).unwrap();
        assert_eq!(over.pressure, 0.0);
        assert!(over.saturated);
        assert!(net_supply_vacuum(&g, -1.0).is_err());
    }

    #[test]
    fn flow_split_examples() {
        let q = parallel_flow_split(1.05e-3, 6, None).unwrap();
        assert_eq!(q.len(), 6);
        for x in &q {
            assert!((x - 1.75e-4).abs() < 1e-15);
        }
        assert_eq!(parallel_flow_split(3e-4, 1, None).unwrap(), vec![3e-4]);
        let w = parallel_flow_split(4e-4, 3, Some(&[1.0, 1.0, 2.0])).unwrap();
        for (x, e) in w.iter().zip([1e-4, 1e-4, 2e-4]) {
            assert!((x - e).abs() < 1e-18);
        }
        assert_eq!(
            parallel_flow_split(4e-4, 3, Some(&[1.0, 2.0])),
            Err(Error::WeightCountMismatch {
                expected: 3,
                got: 2
            })
        );
        assert!(parallel_flow_split(4e-4, 2, Some(&[1.0, 0.0])).is_err());
        assert!(parallel_flow_split(4e-4, 0, None).is_err());
    }

    #[test]
    fn flow_rate_examples() {
        assert_eq!(flow_rate(1.05e-3, 1.0).unwrap(), 1.05e-3);
        assert_eq!(flow_rate(0.0, 3.0).unwrap(), 0.0);
        assert!(flow_rate(1.0, 0.0).is_err());
        let v = velocity_from_flow(1.05e-3, 2.123e-5).unwrap();
        assert!((v - 49.46).abs() < 0.01, "{v}");
    }

    #[test]
    fn line_of_three_segments_chains_velocity() {
        let c = PhysicalConstants::default();
        let line = [seg(8e-3), seg(5.2e-3), seg(2e-3)];
        let loss = line_loss(&line, 10.0, &c).unwrap();
        assert_eq!(loss.stages.len(), 2);
        assert_eq!(
            loss.stages[1].upstream_velocity,
            loss.stages[0].downstream_velocity
        );
        let sum = loss.stages[0].delta_p + loss.stages[1].delta_p;
        assert_eq!(loss.total, sum);
        // Constrictions in series telescope into one big constriction.
        let direct = constriction_pressure_drop(&line[0], &line[2], 10.0, &c).unwrap();
        assert!((loss.total - direct.delta_p).abs() < 1e-9 * direct.delta_p);
        assert_eq!(line_loss(&line[..1], 10.0, &c).unwrap().total, 0.0);
        assert_eq!(line_loss(&[], 10.0, &c), Err(Error::EmptyLine));
    }
}
