//! Directed road graph, timed routes, and the shortest-path primitive.
//!
//! Non-loop edges all have length 1 so that a traveller is at a vertex at
//! every integer time step; loops `(v,v)` have length 0 and are implicitly
//! available at every vertex to model standing still. Longer roads are
//! modelled by chaining unit edges.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

/// Index of a vertex inside its `RoadNetwork`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub u32);

impl Vertex {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// Discrete time step.
pub type Step = u32;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum NetworkError {
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("explicit loop edge on `{0}`; loops are implicit")]
    LoopEdge(String),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(String, String),
    #[error("no directed path from `{0}` to `{1}`")]
    NoPath(String, String),
    #[error("time step {t} outside the horizon [0, {horizon}]")]
    TimeOutOfRange { t: Step, horizon: Step },
    #[error("cannot build network: {0}")]
    Construction(String),
}

/// Directed graph with unit non-loop edges and implicit zero-length loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoadNetwork {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
    out: Vec<Vec<Vertex>>,
    edges: BTreeSet<(u32, u32)>,
}

impl RoadNetwork {
    pub fn new<S: Into<String>>(
        vertices: Vec<S>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, NetworkError> {
        let names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), Vertex(i as u32)).is_some() {
                return Err(NetworkError::DuplicateVertex(name.clone()));
            }
        }
        let mut net = RoadNetwork {
            out: vec![Vec::new(); names.len()],
            edges: BTreeSet::new(),
            names,
            index,
        };
        for (u, v) in edges {
            if u >= net.names.len() || v >= net.names.len() {
                return Err(NetworkError::UnknownVertex(format!("#{}", u.max(v))));
            }
            net.add_edge(Vertex(u as u32), Vertex(v as u32))?;
        }
        Ok(net)
    }

    /// Builds from vertex names and name pairs, the shape used in JSON files.
    pub fn from_names(
        vertices: Vec<String>,
        edges: Vec<(String, String)>,
    ) -> Result<Self, NetworkError> {
        let names = vertices.clone();
        let mut net = RoadNetwork::new::<String>(names, Vec::new())?;
        for (a, b) in edges {
            let u = net.vertex(&a)?;
            let v = net.vertex(&b)?;
            net.add_edge(u, v)?;
        }
        Ok(net)
    }

    fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), NetworkError> {
        if u == v {
            return Err(NetworkError::LoopEdge(self.names[u.idx()].clone()));
        }
        if !self.edges.insert((u.0, v.0)) {
            return Err(NetworkError::DuplicateEdge(
                self.names[u.idx()].clone(),
                self.names[v.idx()].clone(),
            ));
        }
        let pos = self.out[u.idx()].binary_search(&v).unwrap_err();
        self.out[u.idx()].insert(pos, v);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.names.len() as u32).map(Vertex)
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex, NetworkError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| NetworkError::UnknownVertex(name.to_string()))
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.idx()]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.idx() < self.names.len()
    }

    /// Non-loop out-neighbours, sorted by vertex index.
    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out[v.idx()]
    }

    /// True for every loop and for declared non-loop edges.
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u == v || self.edges.contains(&(u.0, v.0))
    }

    /// Edge length: 0 for loops, 1 for declared edges.
    pub fn edge_len(&self, u: Vertex, v: Vertex) -> Option<Step> {
        if u == v {
            Some(0)
        } else if self.edges.contains(&(u.0, v.0)) {
            Some(1)
        } else {
            None
        }
    }

    pub fn non_loop_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().map(|&(u, v)| (Vertex(u), Vertex(v)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// BFS distances from `o` to every vertex; `None` where unreachable.
    pub fn distances_from(&self, o: Vertex) -> Vec<Option<Step>> {
        let mut dist = vec![None; self.names.len()];
        dist[o.idx()] = Some(0);
        let mut queue = VecDeque::from([o]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u.idx()].unwrap();
            for &v in &self.out[u.idx()] {
                if dist[v.idx()].is_none() {
                    dist[v.idx()] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Minimal number of unit edges on a directed path `o -> d`; 0 if `o == d`.
    pub fn shortest_travel_time(&self, o: Vertex, d: Vertex) -> Result<Step, NetworkError> {
        self.distances_from(o)[d.idx()].ok_or_else(|| {
            NetworkError::NoPath(self.names[o.idx()].clone(), self.names[d.idx()].clone())
        })
    }

    /// A shortest path `o -> d` that is lexicographically smallest in vertex
    /// indices, used wherever a canonical taxi route is needed.
    pub fn shortest_path_lex(&self, o: Vertex, d: Vertex) -> Result<Vec<Vertex>, NetworkError> {
        let dist_to_d: Vec<Option<Step>> = {
            // reverse BFS from d
            let mut rin = vec![Vec::new(); self.names.len()];
            for &(u, v) in &self.edges {
                rin[v as usize].push(Vertex(u));
            }
            let mut dist = vec![None; self.names.len()];
            dist[d.idx()] = Some(0u32);
            let mut q = VecDeque::from([d]);
            while let Some(u) = q.pop_front() {
                let du = dist[u.idx()].unwrap();
                for &w in &rin[u.idx()] {
                    if dist[w.idx()].is_none() {
                        dist[w.idx()] = Some(du + 1);
                        q.push_back(w);
                    }
                }
            }
            dist
        };
        let total = dist_to_d[o.idx()].ok_or_else(|| {
            NetworkError::NoPath(self.names[o.idx()].clone(), self.names[d.idx()].clone())
        })?;
        let mut path = vec![o];
        let mut cur = o;
        for step in 0..total {
            let remaining = total - step;
            let next = self
                .out[cur.idx()]
                .iter()
                .copied()
                .find(|&v| dist_to_d[v.idx()] == Some(remaining - 1))
                .expect("BFS distance structure");
            path.push(next);
            cur = next;
        }
        Ok(path)
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.names.is_empty() {
            return true;
        }
        self.vertices().all(|o| {
            self.distances_from(o)
                .iter()
                .all(|d| d.is_some())
        })
    }
}

/// Deterministic random network generator.
///
/// A random spanning cycle guarantees strong connectivity, then extra edges
/// are drawn uniformly until the out-degree cap (loops excluded) stops them.
/// With `symmetric` every edge is added in both directions.
pub fn random_network(
    n_vertices: usize,
    max_degree: usize,
    seed: u64,
    symmetric: bool,
) -> Result<RoadNetwork, NetworkError> {
    if n_vertices < 2 {
        return Err(NetworkError::Construction(
            "need at least 2 vertices".into(),
        ));
    }
    if max_degree < 1 {
        return Err(NetworkError::Construction("max_degree must be >= 1".into()));
    }
    if symmetric && n_vertices > 2 && max_degree < 2 {
        return Err(NetworkError::Construction(
            "a symmetric cycle needs out-degree 2".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..n_vertices).map(|i| format!("V{i}")).collect();
    let mut net = RoadNetwork::new(names, Vec::new())?;
    let mut perm: Vec<u32> = (0..n_vertices as u32).collect();
    perm.shuffle(&mut rng);

    let mut deg = vec![0usize; n_vertices];
    let mut add = |net: &mut RoadNetwork, deg: &mut Vec<usize>, u: u32, v: u32| {
        if net.edges.contains(&(u, v)) {
            return;
        }
        net.add_edge(Vertex(u), Vertex(v)).expect("checked above");
        deg[u as usize] += 1;
    };
    for i in 0..n_vertices {
        let u = perm[i];
        let v = perm[(i + 1) % n_vertices];
        if u == v {
            continue;
        }
        add(&mut net, &mut deg, u, v);
        if symmetric {
            add(&mut net, &mut deg, v, u);
        }
    }
    let attempts = 2 * n_vertices * max_degree;
    for _ in 0..attempts {
        let u = rng.gen_range(0..n_vertices as u32);
        let v = rng.gen_range(0..n_vertices as u32);
        if u == v || net.edges.contains(&(u, v)) {
            continue;
        }
        if deg[u as usize] >= max_degree {
            continue;
        }
        if symmetric && (deg[v as usize] >= max_degree || net.edges.contains(&(v, u))) {
            continue;
        }
        add(&mut net, &mut deg, u, v);
        if symmetric {
            add(&mut net, &mut deg, v, u);
        }
    }
    debug_assert!(net.is_strongly_connected());
    Ok(net)
}

/// Timed route: vertices with departure times, in the collapsed canonical
/// form where a contiguous stay occupies at most two entries (first and last
/// moment at the vertex).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Route {
    entries: Vec<(Vertex, Step)>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RouteError {
    #[error("route must have at least one entry")]
    Empty,
    #[error("route times must increase (entry {0})")]
    NonIncreasingTimes(usize),
}

/// One violated `Route` invariant, reported as data by [`validate_route`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum RouteViolation {
    Empty,
    FirstTimeNotZero { t: Step },
    TimesNotIncreasing { entry: usize },
    MissingEdge { from: String, to: String, entry: usize },
    WrongIncrement { entry: usize, dt: i64 },
    ExceedsHorizon { t: Step, horizon: Step },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RouteValidation {
    pub violations: Vec<RouteViolation>,
}

impl RouteValidation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Route {
    /// Builds a route from raw `(vertex, time)` pairs, collapsing stays.
    pub fn new(entries: Vec<(Vertex, Step)>) -> Result<Route, RouteError> {
        if entries.is_empty() {
            return Err(RouteError::Empty);
        }
        for (i, w) in entries.windows(2).enumerate() {
            if w[1].1 <= w[0].1 {
                return Err(RouteError::NonIncreasingTimes(i + 1));
            }
        }
        Ok(Route {
            entries: collapse(entries),
        })
    }

    /// Route that stays at `v` for the whole horizon.
    pub fn parked(v: Vertex) -> Route {
        Route {
            entries: vec![(v, 0)],
        }
    }

    /// Builds from dense per-step positions `positions[t]`, `t = 0..=T`.
    pub fn from_positions(positions: &[Vertex]) -> Route {
        let entries = positions
            .iter()
            .enumerate()
            .map(|(t, &v)| (v, t as Step))
            .collect();
        Route {
            entries: collapse(entries),
        }
    }

    pub fn entries(&self) -> &[(Vertex, Step)] {
        &self.entries
    }

    pub fn start(&self) -> Vertex {
        self.entries[0].0
    }

    pub fn end(&self) -> Vertex {
        self.entries[self.entries.len() - 1].0
    }

    pub fn last_departure(&self) -> Step {
        self.entries[self.entries.len() - 1].1
    }

    /// Vertex occupied at step `t`.
    pub fn loc_at(&self, t: Step, horizon: Step) -> Result<Vertex, NetworkError> {
        if t > horizon {
            return Err(NetworkError::TimeOutOfRange { t, horizon });
        }
        Ok(self.loc_unchecked(t))
    }

    fn loc_unchecked(&self, t: Step) -> Vertex {
        let mut cur = self.entries[0].0;
        for &(v, tv) in &self.entries {
            if tv <= t {
                cur = v;
            } else {
                break;
            }
        }
        cur
    }

    /// Edge being traversed at step `t`; the loop at the final vertex once
    /// the route has arrived.
    pub fn edge_at(&self, t: Step, horizon: Step) -> Result<(Vertex, Vertex), NetworkError> {
        if t > horizon {
            return Err(NetworkError::TimeOutOfRange { t, horizon });
        }
        for w in self.entries.windows(2) {
            let (v0, t0) = w[0];
            let (v1, t1) = w[1];
            if t < t0 {
                break;
            }
            if t < t1 {
                return Ok(if v0 == v1 || t < t1 - 1 {
                    // inside a stay (moves always take exactly one step)
                    (v0, v0)
                } else {
                    (v0, v1)
                });
            }
        }
        let last = self.end();
        Ok((last, last))
    }

    /// Earliest step at which the route occupies `dest`.
    pub fn arrival_time(&self, dest: Vertex) -> Option<Step> {
        self.entries
            .iter()
            .find(|&&(v, _)| v == dest)
            .map(|&(_, t)| t)
    }

    /// Dense positions for `t = 0..=horizon`.
    pub fn positions(&self, horizon: Step) -> Vec<Vertex> {
        (0..=horizon).map(|t| self.loc_unchecked(t)).collect()
    }

    /// Number of unit edges traversed (the route's travel distance).
    pub fn distance(&self) -> Step {
        self.entries
            .windows(2)
            .filter(|w| w[0].0 != w[1].0)
            .count() as Step
    }

    /// `(t, from, to)` for every moving step.
    pub fn moving_steps(&self) -> impl Iterator<Item = (Step, Vertex, Vertex)> + '_ {
        self.entries.windows(2).filter_map(|w| {
            let (v0, _) = w[0];
            let (v1, t1) = w[1];
            (v0 != v1).then_some((t1 - 1, v0, v1))
        })
    }
}

fn collapse(entries: Vec<(Vertex, Step)>) -> Vec<(Vertex, Step)> {
    let mut out: Vec<(Vertex, Step)> = Vec::with_capacity(entries.len());
    for (v, t) in entries {
        let n = out.len();
        if n >= 2 && out[n - 1].0 == v && out[n - 2].0 == v {
            out[n - 1].1 = t;
        } else {
            out.push((v, t));
        }
    }
    // a trailing stay carries no information: the route holds its last vertex
    while out.len() >= 2 && out[out.len() - 1].0 == out[out.len() - 2].0 {
        out.pop();
    }
    out
}

/// Checks every `Route` invariant against a network and horizon, reporting
/// violations as data.
pub fn validate_route(net: &RoadNetwork, route: &Route, horizon: Step) -> RouteValidation {
    let mut violations = Vec::new();
    let entries = route.entries();
    if entries.is_empty() {
        return RouteValidation {
            violations: vec![RouteViolation::Empty],
        };
    }
    if entries[0].1 != 0 {
        violations.push(RouteViolation::FirstTimeNotZero { t: entries[0].1 });
    }
    for (i, w) in entries.windows(2).enumerate() {
        let (v0, t0) = w[0];
        let (v1, t1) = w[1];
        if t1 <= t0 {
            violations.push(RouteViolation::TimesNotIncreasing { entry: i + 1 });
            continue;
        }
        if v0 != v1 {
            if !net.has_edge(v0, v1) {
                violations.push(RouteViolation::MissingEdge {
                    from: net.name(v0).to_string(),
                    to: net.name(v1).to_string(),
                    entry: i + 1,
                });
            } else if t1 - t0 != 1 {
                violations.push(RouteViolation::WrongIncrement {
                    entry: i + 1,
                    dt: t1 as i64 - t0 as i64,
                });
            }
        }
    }
    let last = entries[entries.len() - 1].1;
    if last > horizon {
        violations.push(RouteViolation::ExceedsHorizon { t: last, horizon });
    }
    RouteValidation { violations }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let vs: Vec<String> = self.entries.iter().map(|(v, _)| format!("{}", v.0)).collect();
        let ts: Vec<String> = self.entries.iter().map(|(_, t)| t.to_string()).collect();
        write!(f, "<<{}>,<{}>>", vs.join(","), ts.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct NetworkJson {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

impl Serialize for RoadNetwork {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let json = NetworkJson {
            vertices: self.names.clone(),
            edges: self
                .non_loop_edges()
                .map(|(u, v)| (self.name(u).to_string(), self.name(v).to_string()))
                .collect(),
        };
        json.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RoadNetwork {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let json = NetworkJson::deserialize(d)?;
        RoadNetwork::from_names(json.vertices, json.edges).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> RoadNetwork {
        RoadNetwork::new(vec!["A", "B", "C"], vec![(0, 1), (1, 2)]).unwrap()
    }

    fn route(entries: &[(u32, Step)]) -> Route {
        Route::new(entries.iter().map(|&(v, t)| (Vertex(v), t)).collect()).unwrap()
    }

    #[test]
    fn edge_at_matches_worked_example() {
        let r = route(&[(0, 0), (1, 1), (2, 2)]);
        assert_eq!(r.edge_at(1, 5).unwrap(), (Vertex(1), Vertex(2)));
        assert_eq!(r.loc_at(1, 5).unwrap(), Vertex(1));
    }

    #[test]
    fn edge_at_stationary_loop() {
        let r = route(&[(0, 0), (0, 1)]);
        assert_eq!(r.edge_at(0, 5).unwrap(), (Vertex(0), Vertex(0)));
    }

    #[test]
    fn edge_at_holds_at_destination_after_arrival() {
        let r = route(&[(0, 0), (1, 1)]);
        assert_eq!(r.edge_at(3, 5).unwrap(), (Vertex(1), Vertex(1)));
        assert!(r.edge_at(6, 5).is_err());
    }

    #[test]
    fn loc_at_during_wait() {
        // wait at A until t=3, then move
        let r = route(&[(0, 0), (0, 3), (1, 4)]);
        assert_eq!(r.loc_at(0, 5).unwrap(), Vertex(0));
        assert_eq!(r.loc_at(2, 5).unwrap(), Vertex(0));
        assert_eq!(r.loc_at(4, 5).unwrap(), Vertex(1));
        assert_eq!(r.edge_at(2, 5).unwrap(), (Vertex(0), Vertex(0)));
        assert_eq!(r.edge_at(3, 5).unwrap(), (Vertex(0), Vertex(1)));
    }

    #[test]
    fn shortest_travel_time_basics() {
        let net = abc();
        let a = net.vertex("A").unwrap();
        let c = net.vertex("C").unwrap();
        assert_eq!(net.shortest_travel_time(a, a).unwrap(), 0);
        assert_eq!(net.shortest_travel_time(a, c).unwrap(), 2);
        assert!(net.shortest_travel_time(c, a).is_err());
    }

    #[test]
    fn validate_route_catches_violations() {
        let net = abc();
        let ok = route(&[(0, 0), (1, 1)]);
        assert!(validate_route(&net, &ok, 2).is_ok());

        let missing = route(&[(0, 0), (2, 1)]);
        assert!(matches!(
            validate_route(&net, &missing, 2).violations[0],
            RouteViolation::MissingEdge { .. }
        ));

        let slow = route(&[(0, 0), (1, 2)]);
        assert!(matches!(
            validate_route(&net, &slow, 2).violations[0],
            RouteViolation::WrongIncrement { .. }
        ));

        let late = route(&[(0, 0), (0, 5), (1, 6)]);
        assert!(matches!(
            validate_route(&net, &late, 3).violations[0],
            RouteViolation::ExceedsHorizon { .. }
        ));
    }

    #[test]
    fn canonical_collapse() {
        let r = Route::new(vec![
            (Vertex(0), 0),
            (Vertex(0), 1),
            (Vertex(0), 3),
            (Vertex(1), 4),
        ])
        .unwrap();
        assert_eq!(r.entries(), &[(Vertex(0), 0), (Vertex(0), 3), (Vertex(1), 4)]);

        let dense = [Vertex(0), Vertex(0), Vertex(0), Vertex(1), Vertex(1)];
        let r2 = Route::from_positions(&dense);
        assert_eq!(
            r2.entries(),
            &[(Vertex(0), 0), (Vertex(0), 2), (Vertex(1), 3)]
        );
        assert_eq!(r2.positions(4), dense);

        // a pure stay collapses to a single entry
        let parked = Route::new(vec![(Vertex(2), 0), (Vertex(2), 4)]).unwrap();
        assert_eq!(parked.entries(), &[(Vertex(2), 0)]);
    }

    #[test]
    fn random_network_is_deterministic_and_capped() {
        let a = random_network(10, 4, 7, true).unwrap();
        let b = random_network(10, 4, 7, true).unwrap();
        assert_eq!(a, b);
        for v in a.vertices() {
            assert!(a.out_neighbors(v).len() <= 4);
        }
        assert!(a.is_strongly_connected());
    }

    #[test]
    fn random_network_rejects_bad_parameters() {
        assert!(random_network(1, 4, 0, true).is_err());
        assert!(random_network(5, 1, 0, true).is_err());
        assert!(random_network(5, 1, 0, false).is_ok());
    }
}
