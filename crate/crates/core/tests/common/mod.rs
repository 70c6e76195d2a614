//! Shared oracles and fixtures for the integration suites.

#![allow(dead_code)]

use fogplace::{EdgeNode, EvaluationContext, FogNode, Point2D, Scenario, TopologyGraph};

pub fn fog(id: usize, x: f64, y: f64, range: f64) -> FogNode<f64> {
    FogNode::new(id, Point2D::new(x, y), range)
}

pub fn edge(id: usize, x: f64, y: f64) -> EdgeNode<f64> {
    EdgeNode::new(id, Point2D::new(x, y))
}

/// The standard experiment preset as an evaluation context.
pub fn default_context(omega: f64) -> EvaluationContext<f64> {
    let spec = fogplace::lab::GeneratorSpec::<f64>::default();
    let scenario = fogplace::lab::generate_scenario(&spec).unwrap();
    EvaluationContext::new(scenario, omega).unwrap()
}

/// Independent reachability oracle: explicit square-root distances for the
/// link test, then depth-first search. Returns (component id per fog,
/// largest component size).
pub fn dfs_components(s: &Scenario<f64>) -> (Vec<usize>, usize) {
    let fogs = s.fog_nodes();
    let n = fogs.len();
    let mut adj = vec![vec![]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let dx = fogs[i].location.x - fogs[j].location.x;
            let dy = fogs[i].location.y - fogs[j].location.y;
            let dist = (dx * dx + dy * dy).sqrt();
            if dist * dist <= fogs[i].range.min(fogs[j].range).powi(2) {
                adj[i].push(j);
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut largest = 0;
    let mut next = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        let mut size = 0;
        comp[start] = next;
        while let Some(v) = stack.pop() {
            size += 1;
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    stack.push(w);
                }
            }
        }
        largest = largest.max(size);
        next += 1;
    }
    (comp, largest)
}

/// Exhaustive m x n pairwise coverage scan.
pub fn oracle_coverage(s: &Scenario<f64>) -> usize {
    s.edge_nodes()
        .iter()
        .filter(|e| {
            s.fog_nodes().iter().any(|f| {
                let dx = f.location.x - e.location.x;
                let dy = f.location.y - e.location.y;
                (dx * dx + dy * dy).sqrt() <= f.range
            })
        })
        .count()
}

/// True when the topology's component partition equals the oracle's.
pub fn same_partition(g: &TopologyGraph, oracle: &[usize]) -> bool {
    let n = oracle.len();
    let mut component_of = vec![usize::MAX; n];
    for (ci, members) in g.components().iter().enumerate() {
        for &m in members {
            component_of[m] = ci;
        }
    }
    if component_of.iter().any(|&c| c == usize::MAX) {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            if (component_of[i] == component_of[j]) != (oracle[i] == oracle[j]) {
                return false;
            }
        }
    }
    true
}

/// Fixture with three fog chains of sizes 5, 3, and 2 (spacing 80 m,
/// range 100 m) and 80 edge nodes of which exactly 68 sit within range of
/// the chains; the other 12 are parked far away in a corner.
pub fn fig2_style_fixture() -> Scenario<f64> {
    let mut fogs = Vec::new();
    let mut id = 0;
    for (count, y) in [(5, 100.0), (3, 400.0), (2, 700.0)] {
        for k in 0..count {
            fogs.push(fog(id, 100.0 + 80.0 * k as f64, y, 100.0));
            id += 1;
        }
    }
    let mut edges = Vec::new();
    for i in 0..68 {
        // strung along the five-node chain, clearly inside range
        edges.push(edge(i, 100.0 + 4.5 * i as f64, 110.0));
    }
    for i in 68..80 {
        edges.push(edge(i, 900.0 + 2.0 * (i - 68) as f64, 960.0));
    }
    Scenario::new(1000.0, 1000.0, None, fogs, edges).unwrap()
}
