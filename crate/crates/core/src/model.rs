//! Instances, riders, vehicles, allocations, the feasibility predicate and
//! the cost functions.
//!
//! An allocation bundles one timed route per rider, one per vehicle, and a
//! sparse 0/1 assignment tensor linking riders to vehicles per time step.
//! A rider who traverses any moving edge without an assignment is using the
//! outside option (a taxi) for the whole trip and pays the mechanism nothing.

use crate::network::{
    validate_route, NetworkError, RoadNetwork, Route, Step, Vertex,
};
use crate::rat::{format_rat, rat, serde_rat, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RiderId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VehicleId(pub u32);

impl std::fmt::Display for RiderId {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::fmt::Display for VehicleId {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiderSpec {
    pub id: RiderId,
    pub origin: Vertex,
    pub destination: Vertex,
    /// True value of time, in cost per time step.
    pub gamma: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VehicleSpec {
    pub id: VehicleId,
    pub location: Vertex,
}

/// A complete ridesharing problem: network, riders, vehicles, horizon and
/// cost parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub network: RoadNetwork,
    pub riders: Vec<RiderSpec>,
    pub vehicles: Vec<VehicleSpec>,
    pub horizon: Step,
    pub capacity: u32,
    /// Taxi driver labour cost per time step.
    pub alpha: Rat,
    /// Fuel cost per unit distance.
    pub beta: Rat,
    pub gamma_max: Rat,
    /// When false, a moving vehicle needs at least one assigned rider.
    pub autonomous: bool,
}

impl Instance {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        network: RoadNetwork,
        riders: Vec<RiderSpec>,
        vehicles: Vec<VehicleSpec>,
        horizon: Step,
        capacity: u32,
        alpha: Rat,
        beta: Rat,
        gamma_max: Rat,
        autonomous: bool,
    ) -> Result<Instance, ModelError> {
        let inst = Instance {
            network,
            riders,
            vehicles,
            horizon,
            capacity,
            alpha,
            beta,
            gamma_max,
            autonomous,
        };
        inst.validate()?;
        Ok(inst)
    }

    fn validate(&self) -> Result<(), ModelError> {
        let err = |m: String| Err(ModelError::InvalidInstance(m));
        if self.horizon < 1 {
            return err("horizon must be >= 1".into());
        }
        if self.capacity < 1 {
            return err("capacity must be >= 1".into());
        }
        if self.alpha < Rat::zero() || self.beta < Rat::zero() {
            return err("alpha and beta must be non-negative".into());
        }
        if self.gamma_max < Rat::zero() {
            return err("gamma_max must be non-negative".into());
        }
        for (i, r) in self.riders.iter().enumerate() {
            if r.id.0 as usize != i + 1 {
                return err(format!("rider ids must be 1..=N in order, got {}", r.id));
            }
            if !self.network.contains(r.origin) || !self.network.contains(r.destination) {
                return err(format!("rider {} references an unknown vertex", r.id));
            }
            if r.gamma < Rat::zero() || r.gamma > self.gamma_max {
                return err(format!(
                    "rider {} gamma {} outside [0, {}]",
                    r.id,
                    format_rat(&r.gamma),
                    format_rat(&self.gamma_max)
                ));
            }
            let t0 = self.network.shortest_travel_time(r.origin, r.destination)?;
            if t0 > self.horizon {
                return err(format!(
                    "rider {} cannot reach its destination within the horizon",
                    r.id
                ));
            }
        }
        for (k, v) in self.vehicles.iter().enumerate() {
            if v.id.0 as usize != k + 1 {
                return err(format!("vehicle ids must be 1..=K in order, got {}", v.id));
            }
            if !self.network.contains(v.location) {
                return err(format!("vehicle {} references an unknown vertex", v.id));
            }
        }
        Ok(())
    }

    pub fn n_riders(&self) -> usize {
        self.riders.len()
    }

    pub fn n_vehicles(&self) -> usize {
        self.vehicles.len()
    }

    pub fn rider(&self, id: RiderId) -> &RiderSpec {
        &self.riders[(id.0 - 1) as usize]
    }

    pub fn vehicle(&self, id: VehicleId) -> &VehicleSpec {
        &self.vehicles[(id.0 - 1) as usize]
    }

    pub fn rider_ids(&self) -> Vec<RiderId> {
        self.riders.iter().map(|r| r.id).collect()
    }

    /// Shortest travel time for a rider's trip.
    pub fn shortest_time(&self, id: RiderId) -> Step {
        let r = self.rider(id);
        self.network
            .shortest_travel_time(r.origin, r.destination)
            .expect("validated at construction")
    }

    /// Outside-option cost for a rider under a given value of time.
    pub fn outside_option_cost(&self, id: RiderId, gamma: &Rat) -> Rat {
        (self.alpha + self.beta + gamma) * rat(self.shortest_time(id) as i64)
    }

    /// Canonical taxi route: depart at 0 along the lexicographically first
    /// shortest path, then hold at the destination.
    pub fn taxi_route(&self, id: RiderId) -> Route {
        let r = self.rider(id);
        let path = self
            .network
            .shortest_path_lex(r.origin, r.destination)
            .expect("validated at construction");
        Route::from_positions(&path)
    }
}

/// Reported values of time, one per rider, indexed by rider order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeProfile(pub Vec<Rat>);

impl TypeProfile {
    pub fn truthful(instance: &Instance) -> TypeProfile {
        TypeProfile(instance.riders.iter().map(|r| r.gamma).collect())
    }

    pub fn get(&self, id: RiderId) -> Rat {
        self.0[(id.0 - 1) as usize]
    }

    pub fn with_report(&self, id: RiderId, gamma: Rat) -> TypeProfile {
        let mut v = self.0.clone();
        v[(id.0 - 1) as usize] = gamma;
        TypeProfile(v)
    }

    pub fn validate(&self, instance: &Instance) -> Result<(), ModelError> {
        if self.0.len() != instance.n_riders() {
            return Err(ModelError::Shape(format!(
                "profile has {} entries for {} riders",
                self.0.len(),
                instance.n_riders()
            )));
        }
        for (i, g) in self.0.iter().enumerate() {
            if *g < Rat::zero() || *g > instance.gamma_max {
                return Err(ModelError::Contract(format!(
                    "reported gamma {} of rider {} outside [0, {}]",
                    format_rat(g),
                    i + 1,
                    format_rat(&instance.gamma_max)
                )));
            }
        }
        Ok(())
    }
}

/// Sparse assignment tensor: `(t, rider, vehicle)` triples where B = 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Assignment {
    triples: BTreeSet<(Step, RiderId, VehicleId)>,
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn insert(&mut self, t: Step, rider: RiderId, vehicle: VehicleId) {
        self.triples.insert((t, rider, vehicle));
    }

    pub fn contains(&self, t: Step, rider: RiderId, vehicle: VehicleId) -> bool {
        self.triples.contains(&(t, rider, vehicle))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Step, RiderId, VehicleId)> + '_ {
        self.triples.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Assignment steps of one rider: `(t, vehicle)`.
    pub fn rider_steps(&self, rider: RiderId) -> Vec<(Step, VehicleId)> {
        self.triples
            .iter()
            .filter(|&&(_, r, _)| r == rider)
            .map(|&(t, _, k)| (t, k))
            .collect()
    }

    /// Vehicles a rider ever uses.
    pub fn vehicles_of(&self, rider: RiderId) -> BTreeSet<VehicleId> {
        self.triples
            .iter()
            .filter(|&&(_, r, _)| r == rider)
            .map(|&(_, _, k)| k)
            .collect()
    }

    /// Number of riders assigned to a vehicle at a step.
    pub fn load(&self, t: Step, vehicle: VehicleId) -> u32 {
        self.triples
            .iter()
            .filter(|&&(tt, _, k)| tt == t && k == vehicle)
            .count() as u32
    }

    pub fn remove_rider(&mut self, rider: RiderId) {
        self.triples.retain(|&(_, r, _)| r != rider);
    }
}

/// Routes plus assignment tensor. Riders outside a solved subset are simply
/// absent; vehicles are always present (parked vehicles hold a one-entry
/// route).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Allocation {
    pub rider_routes: BTreeMap<RiderId, Route>,
    pub vehicle_routes: BTreeMap<VehicleId, Route>,
    pub assignment: Assignment,
}

impl Allocation {
    /// Every rider of the instance routed along its canonical taxi path.
    pub fn all_taxi(instance: &Instance) -> Allocation {
        Allocation {
            rider_routes: instance
                .riders
                .iter()
                .map(|r| (r.id, instance.taxi_route(r.id)))
                .collect(),
            vehicle_routes: instance
                .vehicles
                .iter()
                .map(|v| (v.id, Route::parked(v.location)))
                .collect(),
            assignment: Assignment::new(),
        }
    }

    pub fn present_riders(&self) -> Vec<RiderId> {
        self.rider_routes.keys().copied().collect()
    }

    /// Deterministic ordering key: vehicle routes (by id), then rider routes
    /// (by id), then the assignment triples.
    pub fn canonical_key(&self, horizon: Step) -> Vec<u8> {
        let mut key = Vec::new();
        for route in self.vehicle_routes.values() {
            for v in route.positions(horizon) {
                key.extend_from_slice(&v.0.to_be_bytes());
            }
        }
        for route in self.rider_routes.values() {
            for v in route.positions(horizon) {
                key.extend_from_slice(&v.0.to_be_bytes());
            }
        }
        for (t, r, k) in self.assignment.iter() {
            key.extend_from_slice(&t.to_be_bytes());
            key.extend_from_slice(&r.0.to_be_bytes());
            key.extend_from_slice(&k.0.to_be_bytes());
        }
        key
    }
}

/// One violated feasibility clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FeasibilityViolation {
    InvalidRiderRoute { rider: RiderId },
    InvalidVehicleRoute { vehicle: VehicleId },
    OriginMismatch { rider: RiderId },
    DestinationUnreached { rider: RiderId },
    DestinationNotHeld { rider: RiderId },
    VehicleStartMismatch { vehicle: VehicleId },
    AssignmentEdgeMismatch { t: Step, rider: RiderId, vehicle: VehicleId },
    TaxiExclusivity { rider: RiderId },
    CapacityExceeded { t: Step, vehicle: VehicleId },
    UnattendedVehicleMove { t: Step, vehicle: VehicleId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub violations: Vec<FeasibilityViolation>,
}

impl FeasibilityReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every clause of the feasible-set definition, returning the violated
/// clauses as data. Dimension problems (unknown ids, out-of-range steps) are
/// errors instead.
pub fn check_feasible(
    instance: &Instance,
    alloc: &Allocation,
) -> Result<FeasibilityReport, ModelError> {
    let horizon = instance.horizon;
    let net = &instance.network;
    let mut violations = Vec::new();

    if alloc.vehicle_routes.len() != instance.n_vehicles()
        || alloc
            .vehicle_routes
            .keys()
            .any(|k| k.0 == 0 || k.0 as usize > instance.n_vehicles())
    {
        return Err(ModelError::Shape(
            "allocation must contain exactly the instance vehicles".into(),
        ));
    }
    for id in alloc.rider_routes.keys() {
        if id.0 == 0 || id.0 as usize > instance.n_riders() {
            return Err(ModelError::Shape(format!("unknown rider {id}")));
        }
    }
    for (t, r, k) in alloc.assignment.iter() {
        if t > horizon {
            return Err(ModelError::Shape(format!(
                "assignment step {t} beyond horizon {horizon}"
            )));
        }
        if !alloc.rider_routes.contains_key(&r) {
            return Err(ModelError::Shape(format!("assignment references absent rider {r}")));
        }
        if !alloc.vehicle_routes.contains_key(&k) {
            return Err(ModelError::Shape(format!("assignment references vehicle {k}")));
        }
    }

    for (&id, route) in &alloc.rider_routes {
        if !validate_route(net, route, horizon).is_ok() {
            violations.push(FeasibilityViolation::InvalidRiderRoute { rider: id });
            continue;
        }
        let spec = instance.rider(id);
        if route.start() != spec.origin {
            violations.push(FeasibilityViolation::OriginMismatch { rider: id });
        }
        match route.arrival_time(spec.destination) {
            None => violations.push(FeasibilityViolation::DestinationUnreached { rider: id }),
            Some(arrival) => {
                // after arrival, the route must hold at the destination
                let held = (arrival..=horizon)
                    .all(|t| route.loc_at(t, horizon).unwrap() == spec.destination);
                if !held {
                    violations.push(FeasibilityViolation::DestinationNotHeld { rider: id });
                }
            }
        }
    }

    for (&id, route) in &alloc.vehicle_routes {
        if !validate_route(net, route, horizon).is_ok() {
            violations.push(FeasibilityViolation::InvalidVehicleRoute { vehicle: id });
            continue;
        }
        if route.start() != instance.vehicle(id).location {
            violations.push(FeasibilityViolation::VehicleStartMismatch { vehicle: id });
        }
    }

    for (t, r, k) in alloc.assignment.iter() {
        let rider_edge = alloc.rider_routes[&r].edge_at(t, horizon)?;
        let vehicle_edge = alloc.vehicle_routes[&k].edge_at(t, horizon)?;
        if rider_edge != vehicle_edge {
            violations.push(FeasibilityViolation::AssignmentEdgeMismatch {
                t,
                rider: r,
                vehicle: k,
            });
        }
    }

    for (&id, route) in &alloc.rider_routes {
        let steps = alloc.assignment.rider_steps(id);
        let assigned: BTreeSet<Step> = steps.iter().map(|&(t, _)| t).collect();
        let unassigned_moving = route
            .moving_steps()
            .any(|(t, _, _)| !assigned.contains(&t));
        if unassigned_moving && !steps.is_empty() {
            violations.push(FeasibilityViolation::TaxiExclusivity { rider: id });
        }
    }

    let mut load: BTreeMap<(Step, VehicleId), u32> = BTreeMap::new();
    for (t, _, k) in alloc.assignment.iter() {
        *load.entry((t, k)).or_insert(0) += 1;
    }
    for (&(t, k), &n) in &load {
        if n > instance.capacity {
            violations.push(FeasibilityViolation::CapacityExceeded { t, vehicle: k });
        }
    }

    if !instance.autonomous {
        for (&id, route) in &alloc.vehicle_routes {
            for (t, _, _) in route.moving_steps() {
                if load.get(&(t, id)).copied().unwrap_or(0) == 0 {
                    violations.push(FeasibilityViolation::UnattendedVehicleMove { t, vehicle: id });
                }
            }
        }
    }

    Ok(FeasibilityReport { violations })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TravelMode {
    Rideshare,
    Taxi,
}

/// Per-rider cost diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RiderCost {
    pub rider: RiderId,
    /// Earliest arrival at the destination, waiting included.
    pub arrival: Step,
    /// Shortest possible travel time for the trip.
    pub shortest: Step,
    /// `arrival - shortest`.
    pub delay: Step,
    pub mode: TravelMode,
    #[serde(with = "serde_rat")]
    pub cost: Rat,
    #[serde(with = "serde_rat")]
    pub outside_option: Rat,
    /// Fuel of every vehicle this rider touches.
    #[serde(with = "serde_rat")]
    pub touched_fuel: Rat,
}

/// Aggregate cost diagnostics for an allocation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CostReport {
    pub riders: Vec<RiderCost>,
    /// Total fuel cost of all vehicles.
    #[serde(with = "serde_rat")]
    pub fuel: Rat,
    /// Rider costs plus fuel.
    #[serde(with = "serde_rat")]
    pub social_cost: Rat,
    /// Redundant fuel count: sum over riders of touched fuel.
    #[serde(with = "serde_rat")]
    pub imaginary: Rat,
    /// Social cost plus the imaginary term.
    #[serde(with = "serde_rat")]
    pub imaginary_social_cost: Rat,
}

impl CostReport {
    pub fn rider(&self, id: RiderId) -> Option<&RiderCost> {
        self.riders.iter().find(|r| r.rider == id)
    }

    pub fn rider_cost_sum(&self) -> Rat {
        self.riders.iter().map(|r| r.cost).sum()
    }
}

/// Computes every cost quantity for a feasible allocation. Gammas are taken
/// from `profile`, so the same allocation can be priced under reported or
/// true values.
pub fn cost_report(
    instance: &Instance,
    alloc: &Allocation,
    profile: &TypeProfile,
) -> Result<CostReport, ModelError> {
    let report = check_feasible(instance, alloc)?;
    if !report.is_ok() {
        return Err(ModelError::Contract(format!(
            "cost_report requires a feasible allocation: {:?}",
            report.violations
        )));
    }
    profile.validate(instance)?;

    let vehicle_fuel: BTreeMap<VehicleId, Rat> = alloc
        .vehicle_routes
        .iter()
        .map(|(&k, route)| (k, instance.beta * rat(route.distance() as i64)))
        .collect();
    let fuel: Rat = vehicle_fuel.values().copied().sum();

    let mut riders = Vec::new();
    for (&id, route) in &alloc.rider_routes {
        let spec = instance.rider(id);
        let gamma = profile.get(id);
        let arrival = route
            .arrival_time(spec.destination)
            .expect("feasible allocation reaches the destination");
        let shortest = instance.shortest_time(id);
        let assigned: BTreeSet<Step> = alloc
            .assignment
            .rider_steps(id)
            .iter()
            .map(|&(t, _)| t)
            .collect();
        let taxi = route
            .moving_steps()
            .any(|(t, _, _)| !assigned.contains(&t));
        let outside_option = instance.outside_option_cost(id, &gamma);
        let cost = if taxi {
            outside_option
        } else {
            gamma * rat(arrival as i64)
        };
        let touched_fuel = alloc
            .assignment
            .vehicles_of(id)
            .iter()
            .map(|k| vehicle_fuel[k])
            .sum();
        riders.push(RiderCost {
            rider: id,
            arrival,
            shortest,
            delay: arrival - shortest,
            mode: if taxi { TravelMode::Taxi } else { TravelMode::Rideshare },
            cost,
            outside_option,
            touched_fuel,
        });
    }

    let rider_sum: Rat = riders.iter().map(|r| r.cost).sum();
    let imaginary: Rat = riders.iter().map(|r| r.touched_fuel).sum();
    Ok(CostReport {
        social_cost: rider_sum + fuel,
        imaginary_social_cost: rider_sum + fuel + imaginary,
        riders,
        fuel,
        imaginary,
    })
}

/// `u_i = -c_i - x_i` per rider, using the given gammas as true values.
/// Payments must be zero for taxi riders.
pub fn utility(
    instance: &Instance,
    alloc: &Allocation,
    profile: &TypeProfile,
    payments: &[Rat],
) -> Result<Vec<Rat>, ModelError> {
    if payments.len() != instance.n_riders() {
        return Err(ModelError::Shape(format!(
            "{} payments for {} riders",
            payments.len(),
            instance.n_riders()
        )));
    }
    let report = cost_report(instance, alloc, profile)?;
    let mut out = Vec::with_capacity(instance.n_riders());
    for r in &instance.riders {
        let rc = report.rider(r.id).ok_or_else(|| {
            ModelError::Contract(format!("utility needs rider {} in the allocation", r.id))
        })?;
        let x = payments[(r.id.0 - 1) as usize];
        if rc.mode == TravelMode::Taxi && !x.is_zero() {
            return Err(ModelError::Contract(format!(
                "taxi rider {} must have zero payment, got {}",
                r.id,
                format_rat(&x)
            )));
        }
        out.push(-rc.cost - x);
    }
    Ok(out)
}

/// Allocated work: the negative travel time.
pub fn work_value(
    instance: &Instance,
    alloc: &Allocation,
    rider: RiderId,
) -> Result<Rat, ModelError> {
    let route = alloc.rider_routes.get(&rider).ok_or_else(|| {
        ModelError::Contract(format!("rider {rider} absent from the allocation"))
    })?;
    let arrival = route
        .arrival_time(instance.rider(rider).destination)
        .ok_or_else(|| ModelError::Contract(format!("rider {rider} never arrives")))?;
    Ok(-rat(arrival as i64))
}

// -- JSON shape ------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct RiderJson {
    id: u32,
    origin: String,
    destination: String,
    #[serde(with = "serde_rat")]
    gamma: Rat,
}

#[derive(Serialize, Deserialize)]
struct VehicleJson {
    id: u32,
    location: String,
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    network: RoadNetwork,
    horizon: Step,
    capacity: u32,
    #[serde(with = "serde_rat")]
    alpha: Rat,
    #[serde(with = "serde_rat")]
    beta: Rat,
    #[serde(with = "serde_rat")]
    gamma_max: Rat,
    autonomous: bool,
    riders: Vec<RiderJson>,
    vehicles: Vec<VehicleJson>,
}

impl Serialize for Instance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let json = InstanceJson {
            network: self.network.clone(),
            horizon: self.horizon,
            capacity: self.capacity,
            alpha: self.alpha,
            beta: self.beta,
            gamma_max: self.gamma_max,
            autonomous: self.autonomous,
            riders: self
                .riders
                .iter()
                .map(|r| RiderJson {
                    id: r.id.0,
                    origin: self.network.name(r.origin).to_string(),
                    destination: self.network.name(r.destination).to_string(),
                    gamma: r.gamma,
                })
                .collect(),
            vehicles: self
                .vehicles
                .iter()
                .map(|v| VehicleJson {
                    id: v.id.0,
                    location: self.network.name(v.location).to_string(),
                })
                .collect(),
        };
        json.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Instance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let json = InstanceJson::deserialize(d)?;
        let mut riders = Vec::new();
        for r in json.riders {
            riders.push(RiderSpec {
                id: RiderId(r.id),
                origin: json.network.vertex(&r.origin).map_err(D::Error::custom)?,
                destination: json
                    .network
                    .vertex(&r.destination)
                    .map_err(D::Error::custom)?,
                gamma: r.gamma,
            });
        }
        let mut vehicles = Vec::new();
        for v in json.vehicles {
            vehicles.push(VehicleSpec {
                id: VehicleId(v.id),
                location: json.network.vertex(&v.location).map_err(D::Error::custom)?,
            });
        }
        Instance::new(
            json.network,
            riders,
            vehicles,
            json.horizon,
            json.capacity,
            json.alpha,
            json.beta,
            json.gamma_max,
            json.autonomous,
        )
        .map_err(D::Error::custom)
    }
}

/// Stable hex digest of the canonical instance JSON, used to key property
/// reports to the instance they ran on.
pub fn instance_digest(instance: &Instance) -> String {
    use sha2::{Digest, Sha256};
    let json = serde_json::to_vec(instance).expect("instance serializes");
    let hash = Sha256::digest(&json);
    hash.iter().map(|b| format!("{b:02x}")).collect()
}
