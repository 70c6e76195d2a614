//! Geometric deployment model.
//!
//! Fog nodes are disks with individual transmission ranges inside a
//! `W x H` region; edge nodes are points. Two fog nodes link when their
//! distance is at most the smaller of the two ranges, an edge node is
//! covered when it sits inside at least one fog disk, and the topology
//! graph collects links, coverage flags, connected components, and an
//! optional edge-to-fog assignment.
//!
//! Distances are compared squared against squared thresholds throughout,
//! so a node exactly on a range boundary counts as linked/covered.

use crate::error::Error;
use crate::scalar::Real;

/// A location in the region, in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2D<F> {
    pub x: F,
    pub y: F,
}

impl<F: Real> Point2D<F> {
    pub fn new(x: F, y: F) -> Self {
        Self { x, y }
    }

    /// Squared Euclidean distance to another point.
    pub fn distance_sq(&self, other: &Self) -> F {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

/// A relay node with a transmission range.
#[derive(Debug, Clone, PartialEq)]
pub struct FogNode<F> {
    pub id: usize,
    pub location: Point2D<F>,
    pub range: F,
}

impl<F: Real> FogNode<F> {
    pub fn new(id: usize, location: Point2D<F>, range: F) -> Self {
        Self {
            id,
            location,
            range,
        }
    }

    /// True when the edge node lies within this node's transmission range
    /// (boundary inclusive).
    pub fn covers(&self, edge: &EdgeNode<F>) -> bool {
        self.location.distance_sq(&edge.location) <= self.range * self.range
    }

    /// True when both nodes lie within the smaller of the two ranges
    /// (boundary inclusive). Symmetric in its arguments.
    ///
    /// Panics if `other` is the same node: a self-link is undefined.
    pub fn links_with(&self, other: &FogNode<F>) -> bool {
        assert_ne!(self.id, other.id, "fog self-link is undefined");
        let r = self.range.min(other.range);
        self.location.distance_sq(&other.location) <= r * r
    }
}

/// A fixed client device; covered when inside some fog disk.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeNode<F> {
    pub id: usize,
    pub location: Point2D<F>,
}

impl<F: Real> EdgeNode<F> {
    pub fn new(id: usize, location: Point2D<F>) -> Self {
        Self { id, location }
    }
}

/// A deployment instance: the region, the fog nodes, and the edge nodes.
///
/// Construction validates the invariants (positive region, dense unique
/// ids, positive ranges, all locations inside the region); the struct is
/// immutable afterwards and cheap to share between evaluators.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario<F> {
    width: F,
    height: F,
    capacity: Option<usize>,
    fog_nodes: Vec<FogNode<F>>,
    edge_nodes: Vec<EdgeNode<F>>,
}

impl<F: Real> Scenario<F> {
    pub fn new(
        width: F,
        height: F,
        capacity: Option<usize>,
        fog_nodes: Vec<FogNode<F>>,
        edge_nodes: Vec<EdgeNode<F>>,
    ) -> Result<Self, Error> {
        if !(width.is_finite() && height.is_finite()) || width <= F::zero() || height <= F::zero()
        {
            return Err(Error::InvalidScenario(format!(
                "region must be positive and finite, got {width} x {height}"
            )));
        }
        if capacity == Some(0) {
            return Err(Error::InvalidScenario(
                "capacity must be positive when set".into(),
            ));
        }
        for (i, fog) in fog_nodes.iter().enumerate() {
            if fog.id != i {
                return Err(Error::InvalidScenario(format!(
                    "fog ids must be dense and unique: index {i} has id {}",
                    fog.id
                )));
            }
            if !(fog.range.is_finite() && fog.range > F::zero()) {
                return Err(Error::InvalidScenario(format!(
                    "fog {i} has non-positive range {}",
                    fog.range
                )));
            }
            if !in_region(&fog.location, width, height) {
                return Err(Error::InvalidScenario(format!(
                    "fog {i} lies outside the region"
                )));
            }
        }
        for (i, edge) in edge_nodes.iter().enumerate() {
            if edge.id != i {
                return Err(Error::InvalidScenario(format!(
                    "edge ids must be dense and unique: index {i} has id {}",
                    edge.id
                )));
            }
            if !in_region(&edge.location, width, height) {
                return Err(Error::InvalidScenario(format!(
                    "edge {i} lies outside the region"
                )));
            }
        }
        Ok(Self {
            width,
            height,
            capacity,
            fog_nodes,
            edge_nodes,
        })
    }

    pub fn width(&self) -> F {
        self.width
    }

    pub fn height(&self) -> F {
        self.height
    }

    pub fn capacity(&self) -> Option<usize> {
        self.capacity
    }

    pub fn fog_nodes(&self) -> &[FogNode<F>] {
        &self.fog_nodes
    }

    pub fn edge_nodes(&self) -> &[EdgeNode<F>] {
        &self.edge_nodes
    }

    pub fn fog_count(&self) -> usize {
        self.fog_nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_nodes.len()
    }

    /// Builds the full topology graph for the current fog locations.
    pub fn topology(&self) -> TopologyGraph {
        let n = self.fog_count();
        let mut links = Vec::new();
        let mut uf = UnionFind::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if self.fog_nodes[i].links_with(&self.fog_nodes[j]) {
                    links.push((i, j));
                    uf.union(i, j);
                }
            }
        }

        let covered: Vec<bool> = self
            .edge_nodes
            .iter()
            .map(|e| self.fog_nodes.iter().any(|f| f.covers(e)))
            .collect();

        let components = uf.components();
        let assignment = self.assign_edges(&covered);

        TopologyGraph {
            fog_count: n,
            links,
            covered,
            components,
            assignment,
        }
    }

    /// Greedy nearest-fog assignment for covered edge nodes.
    ///
    /// Covering (edge, fog) pairs are processed by ascending squared
    /// distance; ties break on the lower fog id, then lower edge id. With a
    /// capacity set, a fog node stops accepting once full and later pairs
    /// fall through to the next-nearest covering fog; edge nodes whose
    /// covering fogs are all full stay covered but unassigned.
    fn assign_edges(&self, covered: &[bool]) -> Vec<Option<usize>> {
        let mut pairs: Vec<(F, usize, usize)> = Vec::new();
        for edge in &self.edge_nodes {
            if !covered[edge.id] {
                continue;
            }
            for fog in &self.fog_nodes {
                if fog.covers(edge) {
                    pairs.push((fog.location.distance_sq(&edge.location), fog.id, edge.id));
                }
            }
        }
        pairs.sort_by(|a, b| {
            a.0.partial_cmp(&b.0)
                .expect("finite distances")
                .then(a.1.cmp(&b.1))
                .then(a.2.cmp(&b.2))
        });

        let cap = self.capacity.unwrap_or(usize::MAX);
        let mut load = vec![0usize; self.fog_count()];
        let mut assignment = vec![None; self.edge_count()];
        for (_, fog_id, edge_id) in pairs {
            if assignment[edge_id].is_none() && load[fog_id] < cap {
                assignment[edge_id] = Some(fog_id);
                load[fog_id] += 1;
            }
        }
        assignment
    }

    /// Copy of this scenario with fog node `i` moved to
    /// `(coords[2i], coords[2i+1])`. Region, ranges, capacity, and edge
    /// nodes are unchanged; the coordinates are trusted to lie in-region.
    pub(crate) fn relocated(&self, coords: &[F]) -> Scenario<F> {
        debug_assert_eq!(coords.len(), 2 * self.fog_count());
        let mut out = self.clone();
        for (i, fog) in out.fog_nodes.iter_mut().enumerate() {
            fog.location = Point2D::new(coords[2 * i], coords[2 * i + 1]);
        }
        out
    }

    /// Connectivity and coverage for candidate fog coordinates without
    /// materializing the graph. Semantics match [`Scenario::topology`]
    /// exactly; this is the optimizer's hot path.
    pub(crate) fn zeta_phi(&self, coords: &[F]) -> (usize, usize) {
        debug_assert_eq!(coords.len(), 2 * self.fog_count());
        let n = self.fog_count();
        let mut uf = UnionFind::new(n);
        for i in 0..n {
            let (xi, yi) = (coords[2 * i], coords[2 * i + 1]);
            let ri = self.fog_nodes[i].range;
            for j in (i + 1)..n {
                let dx = xi - coords[2 * j];
                let dy = yi - coords[2 * j + 1];
                let r = ri.min(self.fog_nodes[j].range);
                if dx * dx + dy * dy <= r * r {
                    uf.union(i, j);
                }
            }
        }
        let zeta = uf.largest();

        let phi = self
            .edge_nodes
            .iter()
            .filter(|e| {
                (0..n).any(|i| {
                    let dx = coords[2 * i] - e.location.x;
                    let dy = coords[2 * i + 1] - e.location.y;
                    let r = self.fog_nodes[i].range;
                    dx * dx + dy * dy <= r * r
                })
            })
            .count();

        (zeta, phi)
    }
}

fn in_region<F: Real>(p: &Point2D<F>, width: F, height: F) -> bool {
    p.x.is_finite()
        && p.y.is_finite()
        && p.x >= F::zero()
        && p.x <= width
        && p.y >= F::zero()
        && p.y <= height
}

/// Derived link structure of a scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct TopologyGraph {
    fog_count: usize,
    links: Vec<(usize, usize)>,
    covered: Vec<bool>,
    components: Vec<Vec<usize>>,
    assignment: Vec<Option<usize>>,
}

impl TopologyGraph {
    /// All fog-fog links as `(i, j)` pairs with `i < j`.
    pub fn links(&self) -> &[(usize, usize)] {
        &self.links
    }

    /// Symmetric link predicate over fog ids.
    pub fn linked(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        a != b && self.links.contains(&key)
    }

    /// Per-edge coverage flags.
    pub fn covered(&self) -> &[bool] {
        &self.covered
    }

    /// Connected components of the fog-fog graph. Each component lists its
    /// member ids ascending; components are ordered by smallest member.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Per-edge assigned fog id, when one was available under the capacity.
    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assignment
    }

    /// Size of the largest connected fog component; 0 without fog nodes.
    pub fn connectivity_zeta(&self) -> usize {
        self.components.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Number of covered edge nodes.
    pub fn coverage_phi(&self) -> usize {
        self.covered.iter().filter(|&&c| c).count()
    }
}

/// Union-find with path halving and union by size.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }

    fn largest(&mut self) -> usize {
        let n = self.parent.len();
        let mut max = 0;
        for i in 0..n {
            if self.find(i) == i && self.size[i] > max {
                max = self.size[i];
            }
        }
        max
    }

    fn components(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            let r = self.find(i);
            by_root[r].push(i);
        }
        // members are pushed ascending; retaining non-empty groups in index
        // order sorts components by smallest member
        by_root.retain(|c| !c.is_empty());
        by_root
    }
}
