//! Hand-built example instances used across tests and exported by the CLI.

use crate::model::{Instance, RiderId, RiderSpec, VehicleId, VehicleSpec, Allocation, Assignment};
use crate::network::{RoadNetwork, Route, Vertex};
use crate::rat::{rat, Rat};
use std::collections::BTreeMap;

/// Two riders, two vehicles, six vertices.
///
/// Rider 1 travels A -> B, rider 2 travels E -> C; vehicle 1 starts at C,
/// vehicle 2 at D. Edges: A->B, C->E, E->C, C->F, F->A, D->C. The geometry
/// pins the facts every test of the greedy order effects relies on:
///
/// * serving rider 1 first gives arrival 3 (vehicle 1 drives C,F,A);
/// * serving rider 2 first gives rider 2 arrival 2 (vehicle 1 drives C,E)
///   and pushes rider 1's arrival to 4 (vehicle 2 drives D,C,F,A);
/// * B is a dead end, so a vehicle that delivers rider 1 cannot go on to
///   serve rider 2 — the two-vehicle allocation with both arrivals at 3 and
///   total cost 15 (for gammas 2 and 1, fuel 1 per step) is globally optimal.
pub fn two_rider_example(alpha: Rat, gammas: (Rat, Rat), gamma_max: Rat) -> Instance {
    let network = RoadNetwork::new(
        vec!["A", "B", "C", "D", "E", "F"],
        vec![
            (0, 1), // A -> B
            (2, 4), // C -> E
            (4, 2), // E -> C
            (2, 5), // C -> F
            (5, 0), // F -> A
            (3, 2), // D -> C
        ],
    )
    .expect("static fixture");
    let a = network.vertex("A").unwrap();
    let b = network.vertex("B").unwrap();
    let c = network.vertex("C").unwrap();
    let d = network.vertex("D").unwrap();
    let e = network.vertex("E").unwrap();
    Instance::new(
        network,
        vec![
            RiderSpec { id: RiderId(1), origin: a, destination: b, gamma: gammas.0 },
            RiderSpec { id: RiderId(2), origin: e, destination: c, gamma: gammas.1 },
        ],
        vec![
            VehicleSpec { id: VehicleId(1), location: c },
            VehicleSpec { id: VehicleId(2), location: d },
        ],
        5,
        2,
        alpha,
        rat(1),
        gamma_max,
        true,
    )
    .expect("static fixture")
}

/// The two-rider example at the default parameters (expensive taxi).
pub fn two_rider_example_default() -> Instance {
    two_rider_example(rat(10), (rat(2), rat(1)), rat(8))
}

/// The same instance with gamma_2 = 4, used to reproduce the greedy order
/// inversion: at gamma_1 = 3 the marginal-cost greedy serves rider 2 first,
/// at gamma_1 = 1 it serves rider 1 first.
pub fn greedy_inversion_example(gamma_1: Rat) -> Instance {
    two_rider_example(rat(10), (gamma_1, rat(4)), rat(8))
}

fn v(inst: &Instance, name: &str) -> Vertex {
    inst.network.vertex(name).unwrap()
}

fn route(inst: &Instance, stops: &[(&str, u32)]) -> Route {
    Route::new(stops.iter().map(|&(n, t)| (v(inst, n), t)).collect()).unwrap()
}

/// Rider 2 served first by vehicle 1, rider 1 later by vehicle 2
/// (arrivals 2 and 4; social cost 16 at gammas (2,1)).
pub fn two_rider_slow_allocation(inst: &Instance) -> Allocation {
    let mut assignment = Assignment::new();
    assignment.insert(1, RiderId(2), VehicleId(1));
    assignment.insert(3, RiderId(1), VehicleId(2));
    Allocation {
        rider_routes: BTreeMap::from([
            (RiderId(1), route(inst, &[("A", 0), ("A", 3), ("B", 4)])),
            (RiderId(2), route(inst, &[("E", 0), ("E", 1), ("C", 2)])),
        ]),
        vehicle_routes: BTreeMap::from([
            (VehicleId(1), route(inst, &[("C", 0), ("E", 1), ("C", 2)])),
            (
                VehicleId(2),
                route(inst, &[("D", 0), ("C", 1), ("F", 2), ("A", 3), ("B", 4)]),
            ),
        ]),
        assignment,
    }
}

/// Each rider served by its own vehicle, both arriving at 3
/// (social cost 15 at gammas (2,1); the optimum).
pub fn two_rider_fast_allocation(inst: &Instance) -> Allocation {
    let mut assignment = Assignment::new();
    assignment.insert(2, RiderId(1), VehicleId(1));
    assignment.insert(2, RiderId(2), VehicleId(2));
    Allocation {
        rider_routes: BTreeMap::from([
            (RiderId(1), route(inst, &[("A", 0), ("A", 2), ("B", 3)])),
            (RiderId(2), route(inst, &[("E", 0), ("E", 2), ("C", 3)])),
        ]),
        vehicle_routes: BTreeMap::from([
            (
                VehicleId(1),
                route(inst, &[("C", 0), ("F", 1), ("A", 2), ("B", 3)]),
            ),
            (
                VehicleId(2),
                route(inst, &[("D", 0), ("C", 1), ("E", 2), ("C", 3)]),
            ),
        ]),
        assignment,
    }
}

/// Two riders with the same one-edge trip sharing a single vehicle.
///
/// The textbook case where externality payments collect nothing: removing
/// either rider changes nothing for the other, so both pay zero while the
/// vehicle still burns fuel.
pub fn shared_trip_example() -> Instance {
    let network = RoadNetwork::new(vec!["O", "P"], vec![(0, 1)]).expect("static fixture");
    let o = network.vertex("O").unwrap();
    let p = network.vertex("P").unwrap();
    Instance::new(
        network,
        vec![
            RiderSpec { id: RiderId(1), origin: o, destination: p, gamma: rat(2) },
            RiderSpec { id: RiderId(2), origin: o, destination: p, gamma: rat(1) },
        ],
        vec![VehicleSpec { id: VehicleId(1), location: o }],
        2,
        2,
        rat(10),
        rat(1),
        rat(8),
        true,
    )
    .expect("static fixture")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{check_feasible, cost_report, work_value, TypeProfile};
    use crate::rat::rat;

    #[test]
    fn slow_allocation_is_feasible() {
        let inst = two_rider_example_default();
        let alloc = two_rider_slow_allocation(&inst);
        let report = check_feasible(&inst, &alloc).unwrap();
        assert!(report.is_ok(), "{:?}", report.violations);
    }

    #[test]
    fn fast_allocation_costs_fifteen() {
        let inst = two_rider_example_default();
        let alloc = two_rider_fast_allocation(&inst);
        let profile = TypeProfile::truthful(&inst);
        let report = cost_report(&inst, &alloc, &profile).unwrap();
        let r1 = report.rider(RiderId(1)).unwrap();
        let r2 = report.rider(RiderId(2)).unwrap();
        assert_eq!((r1.arrival, r2.arrival), (3, 3));
        assert_eq!(report.fuel, rat(6));
        assert_eq!(report.social_cost, rat(15));
    }

    #[test]
    fn slow_allocation_work_value() {
        let inst = two_rider_example_default();
        let alloc = two_rider_slow_allocation(&inst);
        assert_eq!(work_value(&inst, &alloc, RiderId(1)).unwrap(), rat(-4));
        let profile = TypeProfile::truthful(&inst);
        let report = cost_report(&inst, &alloc, &profile).unwrap();
        assert_eq!(report.social_cost, rat(16));
    }

    #[test]
    fn shared_trip_shape() {
        let inst = shared_trip_example();
        assert_eq!(inst.n_riders(), 2);
        assert_eq!(inst.n_vehicles(), 1);
        assert_eq!(inst.shortest_time(RiderId(1)), 1);
    }
}
