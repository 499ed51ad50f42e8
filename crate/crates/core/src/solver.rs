//! Exact allocation search over the time-expanded state graph.
//!
//! States are (vehicle positions, rider positions) per time step, expanded
//! with per-rider vehicle-usage masks and per-vehicle distances when the
//! objective needs them. The search is a forward layered DP with exact
//! rational costs and a deterministic tie-break: among equal-cost optima the
//! allocation with the smallest canonical encoding (vehicle routes, then
//! rider routes, then assignment) wins. A hard state budget guards against
//! instances beyond desk scale — the problem is NP-hard, so exactness is
//! bought with size limits.

use crate::model::{
    Allocation, Assignment, Instance, ModelError, RiderId, TypeProfile, VehicleId,
};
use crate::network::{Route, Step, Vertex};
use crate::rat::{rat, Rat};
use num_traits::Zero;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Minimize rider costs plus fuel.
    SocialCostF,
    /// Minimize rider costs plus fuel plus the redundant per-rider fuel count.
    SocialCostI,
    /// Minimize total normalized travel time, no taxis allowed.
    TotalNormalizedDelay,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Restriction {
    AllowSwitching,
    SingleVehicle,
}

#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    /// Maximum number of expanded states per search before giving up.
    pub state_budget: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            state_budget: 4_000_000,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SolveError {
    #[error("state budget exceeded after {0} states")]
    Budget(usize),
    #[error("no feasible allocation within the horizon")]
    Infeasible,
    #[error(transparent)]
    Model(#[from] ModelError),
}

// -- DP internals -----------------------------------------------------------

#[derive(Clone)]
struct Node {
    cost: Rat,
    /// Per-step choice blocks: [veh dest; K][rider pos; n][rider ride; n].
    enc: Vec<u8>,
}

struct Dp<'a> {
    inst: &'a Instance,
    in_sys: Vec<RiderId>,
    /// Cost accrued per step and per rider while not yet arrived.
    step_weight: Vec<Rat>,
    fuel_weight: Rat,
    imaginary: bool,
    single_vehicle: bool,
    /// Forced vehicle edge per (t, vehicle), from a greedy prefix.
    forced: Vec<Vec<Option<(Vertex, Vertex)>>>,
    /// Seats taken by prefix riders per (t, vehicle).
    occupied: Vec<Vec<u32>>,
    budget: usize,
}

struct DpSolution {
    cost: Rat,
    vehicle_positions: Vec<Vec<Vertex>>,
    rider_positions: Vec<Vec<Vertex>>,
    rides: Vec<(Step, RiderId, VehicleId)>,
}

impl<'a> Dp<'a> {
    fn track_usage(&self) -> bool {
        self.imaginary || self.single_vehicle
    }

    fn key_len(&self) -> usize {
        let k = self.inst.n_vehicles();
        let n = self.in_sys.len();
        k + n + if self.track_usage() { n } else { 0 } + if self.imaginary { k } else { 0 }
    }

    fn block_len(&self) -> usize {
        self.inst.n_vehicles() + 2 * self.in_sys.len()
    }

    /// Entity-major comparison of two encodings: vehicle routes by id, then
    /// rider routes by id, then ride choices.
    fn enc_cmp(&self, a: &[u8], b: &[u8]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        let block = self.block_len();
        let steps = a.len() / block.max(1);
        let k = self.inst.n_vehicles();
        let n = self.in_sys.len();
        let strided = |off: usize, count: usize, a: &[u8], b: &[u8]| -> Ordering {
            for e in 0..count {
                for s in 0..steps {
                    let idx = s * block + off + e;
                    match a[idx].cmp(&b[idx]) {
                        Ordering::Equal => {}
                        other => return other,
                    }
                }
            }
            Ordering::Equal
        };
        strided(0, k, a, b)
            .then_with(|| strided(k, n, a, b))
            .then_with(|| strided(k + n, n, a, b))
    }

    fn run(&self) -> Result<Option<DpSolution>, SolveError> {
        let k = self.inst.n_vehicles();
        let n = self.in_sys.len();
        let horizon = self.inst.horizon as usize;
        let dests: Vec<Vertex> = self
            .in_sys
            .iter()
            .map(|&r| self.inst.rider(r).destination)
            .collect();

        let mut init_key = Vec::with_capacity(self.key_len());
        for v in &self.inst.vehicles {
            init_key.push(v.location.0 as u8);
        }
        for &r in &self.in_sys {
            init_key.push(self.inst.rider(r).origin.0 as u8);
        }
        if self.track_usage() {
            init_key.extend(std::iter::repeat(0u8).take(n));
        }
        if self.imaginary {
            init_key.extend(std::iter::repeat(0u8).take(k));
        }

        let mut layer: HashMap<Vec<u8>, Node> = HashMap::new();
        layer.insert(
            init_key,
            Node {
                cost: Rat::zero(),
                enc: Vec::new(),
            },
        );
        let mut states_seen = 1usize;

        for t in 0..horizon {
            let mut next: HashMap<Vec<u8>, Node> = HashMap::new();
            for (key, node) in &layer {
                self.expand(t as Step, key, node, &dests, &mut next)?;
            }
            states_seen += next.len();
            if states_seen > self.budget {
                return Err(SolveError::Budget(states_seen));
            }
            layer = next;
            if layer.is_empty() {
                return Ok(None);
            }
        }

        let mut best: Option<(Rat, Vec<u8>)> = None;
        for (key, node) in &layer {
            let arrived = (0..n).all(|i| key[k + i] == dests[i].0 as u8);
            if !arrived {
                continue;
            }
            let candidate = (node.cost, node.enc.clone());
            best = Some(match best {
                None => candidate,
                Some(cur) => {
                    match candidate.0.cmp(&cur.0).then_with(|| self.enc_cmp(&candidate.1, &cur.1))
                    {
                        Ordering::Less => candidate,
                        _ => cur,
                    }
                }
            });
        }
        Ok(best.map(|(cost, enc)| self.decode(cost, &enc)))
    }

    fn expand(
        &self,
        t: Step,
        key: &[u8],
        node: &Node,
        dests: &[Vertex],
        next: &mut HashMap<Vec<u8>, Node>,
    ) -> Result<(), SolveError> {
        let k = self.inst.n_vehicles();
        let n = self.in_sys.len();
        let veh_pos: Vec<Vertex> = (0..k).map(|j| Vertex(key[j] as u32)).collect();
        let rider_pos: Vec<Vertex> = (0..n).map(|i| Vertex(key[k + i] as u32)).collect();
        let usage: Vec<u8> = if self.track_usage() {
            key[k + n..k + 2 * n].to_vec()
        } else {
            vec![0; n]
        };
        let dist_off = k + n + if self.track_usage() { n } else { 0 };
        let veh_dist: Vec<u8> = if self.imaginary {
            key[dist_off..dist_off + k].to_vec()
        } else {
            vec![0; k]
        };

        // vehicle move options
        let mut veh_opts: Vec<Vec<Vertex>> = Vec::with_capacity(k);
        for j in 0..k {
            match self.forced[t as usize][j] {
                Some((from, to)) => {
                    if veh_pos[j] != from {
                        return Ok(()); // cannot satisfy the prefix from here
                    }
                    veh_opts.push(vec![to]);
                }
                None => {
                    let pos = veh_pos[j];
                    let mut opts: Vec<Vertex> = self.inst.network.out_neighbors(pos).to_vec();
                    let at = opts.binary_search(&pos).unwrap_err();
                    opts.insert(at, pos);
                    veh_opts.push(opts);
                }
            }
        }

        let mut veh_choice = vec![0usize; k];
        loop {
            let veh_dest: Vec<Vertex> = (0..k).map(|j| veh_opts[j][veh_choice[j]]).collect();
            let moving: Vec<bool> = (0..k).map(|j| veh_dest[j] != veh_pos[j]).collect();

            // rider ride options: 0 = stay, j+1 = ride vehicle j
            let mut rider_opts: Vec<Vec<u8>> = Vec::with_capacity(n);
            for i in 0..n {
                if rider_pos[i] == dests[i] {
                    rider_opts.push(vec![0]);
                    continue;
                }
                let mut opts = vec![0u8];
                for j in 0..k {
                    if veh_pos[j] == rider_pos[i] && moving[j] {
                        if self.single_vehicle && usage[i] != 0 && usage[i] != (1 << j) {
                            continue;
                        }
                        opts.push(j as u8 + 1);
                    }
                }
                rider_opts.push(opts);
            }

            let mut ride_choice = vec![0usize; n];
            'riders: loop {
                let rides: Vec<u8> = (0..n).map(|i| rider_opts[i][ride_choice[i]]).collect();
                let mut load = vec![0u32; k];
                for &r in &rides {
                    if r > 0 {
                        load[(r - 1) as usize] += 1;
                    }
                }
                let mut ok = true;
                for j in 0..k {
                    let total = load[j] + self.occupied[t as usize][j];
                    if total > self.inst.capacity {
                        ok = false;
                        break;
                    }
                    if !self.inst.autonomous && moving[j] && total == 0 {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    self.emit(t, node, &veh_pos, &veh_dest, &moving, &rider_pos, &rides, &usage, &veh_dist, dests, next);
                }

                // advance rider combination
                let mut i = 0;
                loop {
                    if i == n {
                        break 'riders;
                    }
                    ride_choice[i] += 1;
                    if ride_choice[i] < rider_opts[i].len() {
                        break;
                    }
                    ride_choice[i] = 0;
                    i += 1;
                }
            }

            // advance vehicle combination
            let mut j = 0;
            loop {
                if j == k {
                    return Ok(());
                }
                veh_choice[j] += 1;
                if veh_choice[j] < veh_opts[j].len() {
                    break;
                }
                veh_choice[j] = 0;
                j += 1;
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn emit(
        &self,
        t: Step,
        node: &Node,
        veh_pos: &[Vertex],
        veh_dest: &[Vertex],
        moving: &[bool],
        rider_pos: &[Vertex],
        rides: &[u8],
        usage: &[u8],
        veh_dist: &[u8],
        dests: &[Vertex],
        next: &mut HashMap<Vec<u8>, Node>,
    ) {
        let k = veh_pos.len();
        let n = rider_pos.len();
        let _ = t;

        let mut cost = node.cost;
        for i in 0..n {
            if rider_pos[i] != dests[i] {
                cost += self.step_weight[i];
            }
        }

        let mut new_usage = usage.to_vec();
        if self.imaginary {
            // retroactive share of fuel already burned, charged at first boarding
            for i in 0..n {
                let r = rides[i];
                if r > 0 {
                    let j = (r - 1) as usize;
                    if new_usage[i] & (1 << j) == 0 {
                        cost += self.fuel_weight * rat(veh_dist[j] as i64);
                    }
                }
            }
        }
        if self.track_usage() {
            for i in 0..n {
                if rides[i] > 0 {
                    new_usage[i] |= 1 << (rides[i] - 1);
                }
            }
        }
        for j in 0..k {
            if moving[j] {
                cost += self.fuel_weight;
                if self.imaginary {
                    let members = (0..n).filter(|&i| new_usage[i] & (1 << j) != 0).count();
                    cost += self.fuel_weight * rat(members as i64);
                }
            }
        }

        let mut new_key = Vec::with_capacity(self.key_len());
        for d in veh_dest {
            new_key.push(d.0 as u8);
        }
        let mut new_rider_pos = Vec::with_capacity(n);
        for i in 0..n {
            let pos = if rides[i] > 0 {
                veh_dest[(rides[i] - 1) as usize]
            } else {
                rider_pos[i]
            };
            new_rider_pos.push(pos);
            new_key.push(pos.0 as u8);
        }
        if self.track_usage() {
            new_key.extend_from_slice(&new_usage);
        }
        if self.imaginary {
            for j in 0..k {
                new_key.push(veh_dist[j] + u8::from(moving[j]));
            }
        }

        let mut enc = Vec::with_capacity(node.enc.len() + self.block_len());
        enc.extend_from_slice(&node.enc);
        for d in veh_dest {
            enc.push(d.0 as u8);
        }
        for p in &new_rider_pos {
            enc.push(p.0 as u8);
        }
        enc.extend_from_slice(rides);

        match next.entry(new_key) {
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(Node { cost, enc });
            }
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let cur = e.get();
                let better = match cost.cmp(&cur.cost) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => self.enc_cmp(&enc, &cur.enc) == Ordering::Less,
                };
                if better {
                    e.insert(Node { cost, enc });
                }
            }
        }
    }

    fn decode(&self, cost: Rat, enc: &[u8]) -> DpSolution {
        let k = self.inst.n_vehicles();
        let n = self.in_sys.len();
        let block = self.block_len();
        let steps = if block == 0 { 0 } else { enc.len() / block };

        let mut vehicle_positions: Vec<Vec<Vertex>> = self
            .inst
            .vehicles
            .iter()
            .map(|v| vec![v.location])
            .collect();
        let mut rider_positions: Vec<Vec<Vertex>> = self
            .in_sys
            .iter()
            .map(|&r| vec![self.inst.rider(r).origin])
            .collect();
        let mut rides = Vec::new();

        for s in 0..steps {
            let base = s * block;
            for j in 0..k {
                vehicle_positions[j].push(Vertex(enc[base + j] as u32));
            }
            for i in 0..n {
                rider_positions[i].push(Vertex(enc[base + k + i] as u32));
                let ride = enc[base + k + n + i];
                if ride > 0 {
                    rides.push((s as Step, self.in_sys[i], VehicleId(ride as u32)));
                }
            }
        }
        DpSolution {
            cost,
            vehicle_positions,
            rider_positions,
            rides,
        }
    }
}

fn dp_to_allocation(inst: &Instance, in_sys: &[RiderId], sol: &DpSolution) -> Allocation {
    let mut assignment = Assignment::new();
    for &(t, r, k) in &sol.rides {
        assignment.insert(t, r, k);
    }
    Allocation {
        rider_routes: in_sys
            .iter()
            .enumerate()
            .map(|(i, &r)| (r, Route::from_positions(&sol.rider_positions[i])))
            .collect(),
        vehicle_routes: inst
            .vehicles
            .iter()
            .enumerate()
            .map(|(j, v)| (v.id, Route::from_positions(&sol.vehicle_positions[j])))
            .collect(),
        assignment,
    }
}

/// Lexicographic scale factor: one unit of the primary criterion always
/// outweighs any achievable total fuel cost.
fn fuel_dominating_weight(inst: &Instance) -> Rat {
    inst.beta * rat((inst.n_vehicles() as i64) * (inst.horizon as i64)) + rat(1)
}

fn run_dp(
    inst: &Instance,
    in_sys: &[RiderId],
    objective: Objective,
    restriction: Restriction,
    profile: &TypeProfile,
    forced: Vec<Vec<Option<(Vertex, Vertex)>>>,
    occupied: Vec<Vec<u32>>,
    cfg: &SolverConfig,
) -> Result<Option<DpSolution>, SolveError> {
    let step_weight: Vec<Rat> = match objective {
        Objective::SocialCostF | Objective::SocialCostI => {
            in_sys.iter().map(|&r| profile.get(r)).collect()
        }
        Objective::TotalNormalizedDelay => {
            let m = fuel_dominating_weight(inst);
            in_sys.iter().map(|_| m).collect()
        }
    };
    let dp = Dp {
        inst,
        in_sys: in_sys.to_vec(),
        step_weight,
        fuel_weight: inst.beta,
        imaginary: objective == Objective::SocialCostI,
        single_vehicle: restriction == Restriction::SingleVehicle,
        forced,
        occupied,
        budget: cfg.state_budget,
    };
    dp.run()
}

fn empty_constraints(inst: &Instance) -> (Vec<Vec<Option<(Vertex, Vertex)>>>, Vec<Vec<u32>>) {
    let t = inst.horizon as usize;
    let k = inst.n_vehicles();
    (vec![vec![None; k]; t], vec![vec![0; k]; t])
}

/// Exact optimum of the chosen objective over the feasible allocations of a
/// rider subset. Riders outside the subset are absent. Taxi assignments are
/// searched by enumerating outside-option subsets, except under the no-taxi
/// delay objective.
pub fn solve_optimal(
    inst: &Instance,
    profile: &TypeProfile,
    objective: Objective,
    restriction: Restriction,
    riders: &[RiderId],
    cfg: &SolverConfig,
) -> Result<Allocation, SolveError> {
    profile.validate(inst)?;
    let mut subset: Vec<RiderId> = riders.to_vec();
    subset.sort();
    subset.dedup();
    for &r in &subset {
        if r.0 == 0 || r.0 as usize > inst.n_riders() {
            return Err(ModelError::Shape(format!("unknown rider {r}")).into());
        }
    }

    let m = subset.len();
    let masks: Vec<u32> = match objective {
        Objective::TotalNormalizedDelay => vec![0],
        _ => (0..(1u32 << m)).collect(),
    };

    let mut best: Option<(Rat, Vec<u8>, Allocation)> = None;
    for mask in masks {
        let in_sys: Vec<RiderId> = subset
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) == 0)
            .map(|(_, &r)| r)
            .collect();
        let taxi: Vec<RiderId> = subset
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &r)| r)
            .collect();

        let (forced, occupied) = empty_constraints(inst);
        let sol = match run_dp(inst, &in_sys, objective, restriction, profile, forced, occupied, cfg)
        {
            Ok(Some(sol)) => sol,
            Ok(None) => continue,
            Err(e) => return Err(e),
        };

        let mut alloc = dp_to_allocation(inst, &in_sys, &sol);
        let mut total = sol.cost;
        for &r in &taxi {
            alloc
                .rider_routes
                .insert(r, inst.taxi_route(r));
            total += inst.outside_option_cost(r, &profile.get(r));
        }
        let key = alloc.canonical_key(inst.horizon);
        let better = match &best {
            None => true,
            Some((cost, k, _)) => match total.cmp(cost) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => key < *k,
            },
        };
        if better {
            best = Some((total, key, alloc));
        }
    }
    best.map(|(_, _, alloc)| alloc).ok_or(SolveError::Infeasible)
}

/// Partial allocation built one rider at a time: earlier riders' routes and
/// assignment rows are frozen, vehicle routes may still be re-planned where
/// no earlier rider is aboard.
#[derive(Debug, Clone)]
pub struct GreedyPrefix {
    pub allocated: Vec<RiderId>,
    pub rider_routes: BTreeMap<RiderId, Route>,
    pub vehicle_routes: BTreeMap<VehicleId, Route>,
    pub assignment: Assignment,
}

impl GreedyPrefix {
    pub fn empty(inst: &Instance) -> GreedyPrefix {
        GreedyPrefix {
            allocated: Vec::new(),
            rider_routes: BTreeMap::new(),
            vehicle_routes: inst
                .vehicles
                .iter()
                .map(|v| (v.id, Route::parked(v.location)))
                .collect(),
            assignment: Assignment::new(),
        }
    }

    /// Constraints the prefix imposes on a later search: forced vehicle edges
    /// and seats already taken.
    fn constraints(
        &self,
        inst: &Instance,
    ) -> Result<(Vec<Vec<Option<(Vertex, Vertex)>>>, Vec<Vec<u32>>), ModelError> {
        let (mut forced, mut occupied) = empty_constraints(inst);
        for (t, r, k) in self.assignment.iter() {
            if t >= inst.horizon {
                continue;
            }
            let edge = self.rider_routes[&r].edge_at(t, inst.horizon)?;
            let slot = &mut forced[t as usize][(k.0 - 1) as usize];
            match slot {
                None => *slot = Some(edge),
                Some(e) => {
                    debug_assert_eq!(*e, edge, "prefix riders sharing a vehicle share its edge");
                }
            }
            occupied[t as usize][(k.0 - 1) as usize] += 1;
        }
        Ok((forced, occupied))
    }

    pub fn into_allocation(self) -> Allocation {
        Allocation {
            rider_routes: self.rider_routes,
            vehicle_routes: self.vehicle_routes,
            assignment: self.assignment,
        }
    }
}

/// One greedy step: extend the prefix with `rider`, minimizing that rider's
/// arrival time (with minimal fuel among ties), under the no-taxi constraint
/// that every moving step of the rider is vehicle-assigned. Earlier riders
/// keep their routes and assignments untouched.
pub fn solve_greedy_step(
    inst: &Instance,
    profile: &TypeProfile,
    prefix: &GreedyPrefix,
    rider: RiderId,
    restriction: Restriction,
    cfg: &SolverConfig,
) -> Result<GreedyPrefix, SolveError> {
    profile.validate(inst)?;
    if prefix.allocated.contains(&rider) {
        return Err(ModelError::Contract(format!("rider {rider} already allocated")).into());
    }
    let (forced, occupied) = prefix.constraints(inst)?;
    let in_sys = [rider];
    let m = fuel_dominating_weight(inst);
    let dp = Dp {
        inst,
        in_sys: in_sys.to_vec(),
        step_weight: vec![m],
        fuel_weight: inst.beta,
        imaginary: false,
        single_vehicle: restriction == Restriction::SingleVehicle,
        forced,
        occupied,
        budget: cfg.state_budget,
    };
    let sol = dp.run()?.ok_or(SolveError::Infeasible)?;

    let mut next = prefix.clone();
    next.allocated.push(rider);
    next.rider_routes
        .insert(rider, Route::from_positions(&sol.rider_positions[0]));
    for (j, v) in inst.vehicles.iter().enumerate() {
        next.vehicle_routes
            .insert(v.id, Route::from_positions(&sol.vehicle_positions[j]));
    }
    for &(t, r, k) in &sol.rides {
        next.assignment.insert(t, r, k);
    }
    Ok(next)
}

/// Builds the special instance whose optimal fuel cost equals the shortest
/// depot-returning tour visiting every vertex: one rider per vertex headed
/// to the depot, a single autonomous vehicle of capacity N at the depot,
/// taxis priced beyond any tour.
pub fn reduce_tsp(tsp_network: &crate::network::RoadNetwork, depot: Vertex) -> Result<Instance, ModelError> {
    use crate::model::{RiderSpec, VehicleSpec};
    if !tsp_network.is_strongly_connected() {
        return Err(ModelError::InvalidInstance(
            "tour reduction needs a strongly connected network".into(),
        ));
    }
    let n = tsp_network.vertex_count();
    let edge_count = tsp_network.edge_count() as i64;
    let riders = tsp_network
        .vertices()
        .enumerate()
        .map(|(i, v)| RiderSpec {
            id: RiderId(i as u32 + 1),
            origin: v,
            destination: depot,
            gamma: Rat::zero(),
        })
        .collect();
    Instance::new(
        tsp_network.clone(),
        riders,
        vec![VehicleSpec {
            id: VehicleId(1),
            location: depot,
        }],
        edge_count as Step,
        n as u32,
        rat(edge_count + 1),
        rat(1),
        Rat::zero(),
        true,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{two_rider_example_default, two_rider_fast_allocation};
    use crate::model::{cost_report, RiderSpec, VehicleSpec};
    use crate::network::RoadNetwork;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn optimal_on_the_two_rider_example_costs_fifteen() {
        let inst = two_rider_example_default();
        let profile = TypeProfile::truthful(&inst);
        let alloc = solve_optimal(
            &inst,
            &profile,
            Objective::SocialCostF,
            Restriction::AllowSwitching,
            &inst.rider_ids(),
            &cfg(),
        )
        .unwrap();
        let report = cost_report(&inst, &alloc, &profile).unwrap();
        assert_eq!(report.social_cost, rat(15));
        assert_eq!(alloc, two_rider_fast_allocation(&inst));
    }

    #[test]
    fn single_rider_with_vehicle_at_origin_rides() {
        // straight line O -> P, expensive taxi
        let net = RoadNetwork::new(vec!["O", "P"], vec![(0, 1)]).unwrap();
        let o = net.vertex("O").unwrap();
        let p = net.vertex("P").unwrap();
        let inst = Instance::new(
            net,
            vec![RiderSpec { id: RiderId(1), origin: o, destination: p, gamma: rat(3) }],
            vec![VehicleSpec { id: VehicleId(1), location: o }],
            2,
            1,
            rat(10),
            rat(1),
            rat(5),
            true,
        )
        .unwrap();
        let profile = TypeProfile::truthful(&inst);
        let alloc = solve_optimal(
            &inst,
            &profile,
            Objective::SocialCostF,
            Restriction::AllowSwitching,
            &inst.rider_ids(),
            &cfg(),
        )
        .unwrap();
        let report = cost_report(&inst, &alloc, &profile).unwrap();
        // rider rides: (gamma + beta) * shortest time
        assert_eq!(report.social_cost, rat(4));
    }

    #[test]
    fn greedy_step_order_facts() {
        let inst = two_rider_example_default();
        let profile = TypeProfile::truthful(&inst);

        let p0 = GreedyPrefix::empty(&inst);
        let p1 = solve_greedy_step(&inst, &profile, &p0, RiderId(1), Restriction::AllowSwitching, &cfg()).unwrap();
        let arrival1 = p1.rider_routes[&RiderId(1)]
            .arrival_time(inst.rider(RiderId(1)).destination)
            .unwrap();
        assert_eq!(arrival1, 3);
        let p2 = solve_greedy_step(&inst, &profile, &p1, RiderId(2), Restriction::AllowSwitching, &cfg()).unwrap();
        let arrival2 = p2.rider_routes[&RiderId(2)]
            .arrival_time(inst.rider(RiderId(2)).destination)
            .unwrap();
        assert_eq!(arrival2, 3);

        let q1 = solve_greedy_step(&inst, &profile, &p0, RiderId(2), Restriction::AllowSwitching, &cfg()).unwrap();
        let arr2_first = q1.rider_routes[&RiderId(2)]
            .arrival_time(inst.rider(RiderId(2)).destination)
            .unwrap();
        assert_eq!(arr2_first, 2);
        let q2 = solve_greedy_step(&inst, &profile, &q1, RiderId(1), Restriction::AllowSwitching, &cfg()).unwrap();
        let arr1_second = q2.rider_routes[&RiderId(1)]
            .arrival_time(inst.rider(RiderId(1)).destination)
            .unwrap();
        assert_eq!(arr1_second, 4);
    }

    #[test]
    fn greedy_step_never_touches_prior_riders() {
        let inst = two_rider_example_default();
        let profile = TypeProfile::truthful(&inst);
        let p0 = GreedyPrefix::empty(&inst);
        let p1 = solve_greedy_step(&inst, &profile, &p0, RiderId(2), Restriction::AllowSwitching, &cfg()).unwrap();
        let route_before = p1.rider_routes[&RiderId(2)].clone();
        let rows_before = p1.assignment.rider_steps(RiderId(2));
        let p2 = solve_greedy_step(&inst, &profile, &p1, RiderId(1), Restriction::AllowSwitching, &cfg()).unwrap();
        assert_eq!(p2.rider_routes[&RiderId(2)], route_before);
        assert_eq!(p2.assignment.rider_steps(RiderId(2)), rows_before);
    }

    #[test]
    fn tsp_reduction_two_vertices() {
        let net = RoadNetwork::new(vec!["X", "Y"], vec![(0, 1), (1, 0)]).unwrap();
        let depot = net.vertex("X").unwrap();
        let inst = reduce_tsp(&net, depot).unwrap();
        let profile = TypeProfile::truthful(&inst);
        let alloc = solve_optimal(
            &inst,
            &profile,
            Objective::SocialCostF,
            Restriction::AllowSwitching,
            &inst.rider_ids(),
            &SolverConfig::default(),
        )
        .unwrap();
        let report = cost_report(&inst, &alloc, &profile).unwrap();
        // out and back
        assert_eq!(report.social_cost, rat(2));
    }
}
