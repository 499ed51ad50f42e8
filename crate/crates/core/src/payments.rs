//! Report-independent payment scaffolding for the greedy mechanisms: the
//! fuel-cost upper bound, its split into base payments, and an independent
//! sweep oracle for the jump payments.

use crate::mechanisms::{greedy_alloc, GreedyOutcome};
use crate::model::{cost_report, Instance, ModelError, RiderId, TypeProfile};
use crate::network::Step;
use crate::rat::{format_rat, rat, Rat};
use crate::solver::{solve_optimal, Objective, Restriction, SolveError, SolverConfig};
use num_traits::Zero;
use std::collections::HashMap;

/// Parameters the greedy payment rule needs before looking at any single
/// rider's report.
///
/// Whether the fuel bound is truly report-independent is debatable (the
/// sweep consumes the reported profile), so the profile it used is recorded
/// alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaymentParams {
    /// Riders the parameters were computed over, ascending id.
    pub scope: Vec<RiderId>,
    /// Upper bound on the greedy allocation's fuel cost.
    pub c_fub: Rat,
    /// Shortest trip time per scope rider.
    pub shortest_times: Vec<Step>,
    /// Normalized travel time per scope rider in the joint delay-minimal
    /// no-taxi allocation.
    pub min_delays: Vec<Step>,
    pub safety_coefficient: Rat,
    /// Reported profile the fuel sweep consumed.
    pub profile_used: Vec<Rat>,
    /// Permuted greedy runs skipped because some rider had no feasible
    /// no-taxi route there.
    pub skipped_runs: u32,
}

impl PaymentParams {
    /// Runs the pairwise order-deviation sweep and the delay-minimal solve.
    ///
    /// For every ordered rider pair and every pair of insertion positions,
    /// the two riders are moved to those positions (adopting the reports of
    /// the riders previously there) and the greedy allocation re-run; the
    /// bound is the safety coefficient times the maximum fuel cost observed.
    pub fn compute(
        instance: &Instance,
        profile: &TypeProfile,
        scope: &[RiderId],
        restriction: Restriction,
        safety_coefficient: Rat,
        cfg: &SolverConfig,
    ) -> Result<PaymentParams, SolveError> {
        profile.validate(instance)?;
        let mut scope: Vec<RiderId> = scope.to_vec();
        scope.sort();
        scope.dedup();

        if scope.is_empty() {
            return Ok(PaymentParams {
                scope,
                c_fub: Rat::zero(),
                shortest_times: Vec::new(),
                min_delays: Vec::new(),
                safety_coefficient,
                profile_used: Vec::new(),
                skipped_runs: 0,
            });
        }

        let base_order = descending_order(profile, &scope);
        let n = base_order.len();

        // fuel of a greedy run, memoized by order; None when the run had a
        // rider fall back to a taxi
        let mut cache: HashMap<Vec<RiderId>, Option<Rat>> = HashMap::new();
        let mut skipped = 0u32;
        let mut max_fuel = Rat::zero();
        let mut any = false;
        let mut probe = |order: &[RiderId],
                         cache: &mut HashMap<Vec<RiderId>, Option<Rat>>|
         -> Result<Option<Rat>, SolveError> {
            if let Some(f) = cache.get(order) {
                return Ok(*f);
            }
            let out: GreedyOutcome = greedy_alloc(instance, profile, order, restriction, cfg)?;
            let fuel = if out.fallback_taxi.is_empty() {
                let report = cost_report(instance, &out.allocation, profile)
                    .map_err(SolveError::Model)?;
                Some(report.fuel)
            } else {
                None
            };
            cache.insert(order.to_vec(), fuel);
            Ok(fuel)
        };

        let mut record = |fuel: Option<Rat>| match fuel {
            Some(f) => {
                if !any || f > max_fuel {
                    max_fuel = f;
                }
                any = true;
            }
            None => skipped += 1,
        };

        record(probe(&base_order, &mut cache)?);
        for &i in &base_order {
            for pos_i in 0..n {
                for &j in &base_order {
                    if j == i {
                        continue;
                    }
                    for pos_j in 0..n {
                        let mut order = base_order.clone();
                        move_to(&mut order, i, pos_i);
                        move_to(&mut order, j, pos_j);
                        record(probe(&order, &mut cache)?);
                    }
                }
            }
        }

        let min_alloc = solve_optimal(
            instance,
            profile,
            Objective::TotalNormalizedDelay,
            restriction,
            &scope,
            cfg,
        )?;
        let min_report =
            cost_report(instance, &min_alloc, profile).map_err(SolveError::Model)?;
        let mut shortest_times = Vec::with_capacity(scope.len());
        let mut min_delays = Vec::with_capacity(scope.len());
        for &r in &scope {
            let rc = min_report
                .rider(r)
                .expect("delay-minimal solve covers the scope");
            shortest_times.push(rc.shortest);
            min_delays.push(rc.delay);
        }

        Ok(PaymentParams {
            scope,
            c_fub: safety_coefficient * max_fuel,
            shortest_times,
            min_delays,
            safety_coefficient,
            profile_used: profile.0.clone(),
            skipped_runs: skipped,
        })
    }

    /// Base payment per scope rider, in scope order.
    pub fn base_payments(&self) -> Result<Vec<Rat>, ModelError> {
        base_payment(&self.shortest_times, &self.min_delays, self.c_fub)
    }
}

/// Riders sorted by reported value descending, ties by id ascending.
pub fn descending_order(profile: &TypeProfile, riders: &[RiderId]) -> Vec<RiderId> {
    let mut order = riders.to_vec();
    order.sort_by(|&a, &b| profile.get(b).cmp(&profile.get(a)).then(a.cmp(&b)));
    order
}

fn move_to(order: &mut Vec<RiderId>, rider: RiderId, pos: usize) {
    let cur = order.iter().position(|&r| r == rider).expect("rider in order");
    order.remove(cur);
    order.insert(pos.min(order.len()), rider);
}

/// The fuel-bound operation alone.
pub fn payment_param(
    instance: &Instance,
    profile: &TypeProfile,
    restriction: Restriction,
    safety_coefficient: Rat,
    cfg: &SolverConfig,
) -> Result<Rat, SolveError> {
    PaymentParams::compute(
        instance,
        profile,
        &instance.rider_ids(),
        restriction,
        safety_coefficient,
        cfg,
    )
    .map(|p| p.c_fub)
}

/// Splits the fuel bound among riders proportionally to their relative
/// shortest travel time: riders with longer trips and less unavoidable
/// waiting pay more. The split sums to the bound exactly.
pub fn base_payment(
    shortest_times: &[Step],
    min_delays: &[Step],
    c_fub: Rat,
) -> Result<Vec<Rat>, ModelError> {
    if shortest_times.len() != min_delays.len() {
        return Err(ModelError::Shape(format!(
            "{} shortest times for {} delays",
            shortest_times.len(),
            min_delays.len()
        )));
    }
    if c_fub < Rat::zero() {
        return Err(ModelError::Contract(format!(
            "fuel bound must be non-negative, got {}",
            format_rat(&c_fub)
        )));
    }
    let n = shortest_times.len();
    if n == 0 {
        if !c_fub.is_zero() {
            return Err(ModelError::Contract(
                "cannot split a positive fuel bound among zero riders".into(),
            ));
        }
        return Ok(Vec::new());
    }
    let raw: Vec<i64> = shortest_times
        .iter()
        .zip(min_delays)
        .map(|(&t0, &dmin)| t0 as i64 - dmin as i64)
        .collect();
    let lo = *raw.iter().min().expect("non-empty");
    let norm: Vec<i64> = raw.iter().map(|&d| d - lo).collect();
    let total: i64 = norm.iter().sum();
    if total == 0 {
        return Ok(vec![c_fub / rat(n as i64); n]);
    }
    Ok(norm
        .iter()
        .map(|&d| c_fub * rat(d) / rat(total))
        .collect())
}

/// One jump of a rider's normalized travel time as its report crosses
/// another rider's reported value from above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpPoint {
    /// The reported value at which the allocation changes.
    pub z: Rat,
    /// How much the normalized travel time rises when the rider drops just
    /// below `z` in the order. Non-negative for a monotone rule.
    pub delay_increase: i64,
}

/// Jump points and the payment increment they accumulate for one rider.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpPaymentTrace {
    pub rider: RiderId,
    /// Jumps in descending `z`.
    pub jumps: Vec<JumpPoint>,
    /// `sum of z * delay_increase` over the jumps.
    pub delta: Rat,
}

impl JumpPaymentTrace {
    pub fn empty(rider: RiderId) -> JumpPaymentTrace {
        JumpPaymentTrace {
            rider,
            jumps: Vec::new(),
            delta: Rat::zero(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("allocation rule is not monotone for rider {rider}: reports {low} < {high} give normalized times {delay_low} < {delay_high}")]
    NonMonotone {
        rider: RiderId,
        low: String,
        high: String,
        delay_low: i64,
        delay_high: i64,
    },
    #[error("normalized time changed between {0} and {1} with no report boundary inside")]
    UnexpectedJump(String, String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Result of the sweep: the increment `sum z_j * drop_j` that an incentive
/// compatible payment must add on top of the base payment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepResult {
    pub increment: Rat,
    /// `(z, drop)` in ascending z; drops are non-negative for monotone rules.
    pub jumps: Vec<(Rat, i64)>,
}

/// Evaluates the discrete incentive-compatibility integral for one rider by
/// sweeping its report over a coarse grid and isolating every discontinuity
/// of the normalized travel time with binary search. Exact, because an
/// order-driven rule can only change where the report crosses another
/// rider's reported value.
pub fn myerson_sweep_oracle<F>(
    alloc_rule: &F,
    instance: &Instance,
    profile: &TypeProfile,
    rider: RiderId,
    grid_resolution: u32,
) -> Result<SweepResult, OracleError>
where
    F: Fn(&TypeProfile) -> Result<crate::model::Allocation, SolveError>,
{
    assert!(grid_resolution >= 1, "grid must have at least one cell");
    let gamma_i = profile.get(rider);
    let mut result = SweepResult {
        increment: Rat::zero(),
        jumps: Vec::new(),
    };
    if gamma_i.is_zero() {
        return Ok(result);
    }

    let delay_at = |gamma: Rat| -> Result<i64, OracleError> {
        let alloc = alloc_rule(&profile.with_report(rider, gamma))?;
        let report = cost_report(instance, &alloc, &profile.with_report(rider, gamma))?;
        let rc = report.rider(rider).ok_or_else(|| {
            OracleError::Model(ModelError::Contract(format!(
                "allocation rule dropped rider {rider}"
            )))
        })?;
        Ok(rc.delay as i64)
    };

    // report values of the other riders: the only places a jump can sit
    let mut boundaries: Vec<Rat> = instance
        .rider_ids()
        .iter()
        .filter(|&&r| r != rider)
        .map(|&r| profile.get(r))
        .filter(|z| *z > Rat::zero() && *z <= gamma_i)
        .collect();
    boundaries.sort();
    boundaries.dedup();

    let mut stack: Vec<(Rat, i64, Rat, i64)> = Vec::new();
    let mut grid_points: Vec<(Rat, i64)> = Vec::new();
    for j in 0..=grid_resolution {
        let g = gamma_i * rat(j as i64) / rat(grid_resolution as i64);
        grid_points.push((g, delay_at(g)?));
    }
    for w in grid_points.windows(2) {
        let (lo, d_lo) = w[0];
        let (hi, d_hi) = w[1];
        if d_lo != d_hi {
            stack.push((lo, d_lo, hi, d_hi));
        }
    }

    let mut jumps: Vec<(Rat, i64)> = Vec::new();
    while let Some((lo, d_lo, hi, d_hi)) = stack.pop() {
        if d_lo == d_hi {
            continue;
        }
        let inside: Vec<&Rat> = boundaries
            .iter()
            .filter(|z| **z > lo && **z <= hi)
            .collect();
        match inside.len() {
            0 => {
                return Err(OracleError::UnexpectedJump(
                    format_rat(&lo),
                    format_rat(&hi),
                ))
            }
            1 => {
                let z = *inside[0];
                let drop = d_lo - d_hi;
                if drop < 0 {
                    return Err(OracleError::NonMonotone {
                        rider,
                        low: format_rat(&lo),
                        high: format_rat(&hi),
                        delay_low: d_lo,
                        delay_high: d_hi,
                    });
                }
                jumps.push((z, drop));
            }
            _ => {
                let mid = (lo + hi) / rat(2);
                let d_mid = delay_at(mid)?;
                stack.push((lo, d_lo, mid, d_mid));
                stack.push((mid, d_mid, hi, d_hi));
            }
        }
    }

    jumps.sort_by(|a, b| a.0.cmp(&b.0));
    // merge jumps isolated to the same boundary from different grid cells
    let mut merged: Vec<(Rat, i64)> = Vec::new();
    for (z, d) in jumps {
        match merged.last_mut() {
            Some((mz, md)) if *mz == z => *md += d,
            _ => merged.push((z, d)),
        }
    }
    for &(z, d) in &merged {
        result.increment += z * rat(d);
    }
    result.jumps = merged;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    #[test]
    fn base_payment_equal_split() {
        let x = base_payment(&[2, 2], &[1, 1], rat(6)).unwrap();
        assert_eq!(x, vec![rat(3), rat(3)]);
    }

    #[test]
    fn base_payment_zero_bound() {
        let x = base_payment(&[1, 2, 3], &[0, 1, 0], Rat::zero()).unwrap();
        assert_eq!(x, vec![Rat::zero(); 3]);
    }

    #[test]
    fn base_payment_proportional_split() {
        // raw deltas (1, 3) normalize to (0, 2); 6 * (0, 2) / 2 = (0, 6)
        let x = base_payment(&[1, 3], &[0, 0], rat(6)).unwrap();
        assert_eq!(x, vec![rat(0), rat(6)]);
    }

    #[test]
    fn base_payment_sums_to_bound_exactly() {
        let bound = ratio(7, 3);
        let x = base_payment(&[1, 2, 4], &[0, 0, 1], bound).unwrap();
        assert_eq!(x.iter().copied().sum::<Rat>(), bound);
    }

    #[test]
    fn base_payment_rejects_negative_bound() {
        assert!(base_payment(&[1], &[0], rat(-1)).is_err());
    }
}
