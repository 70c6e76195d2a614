//! Search-space encoding and the aggregate fitness.
//!
//! A candidate solution is a flat vector of interleaved fog coordinates
//! `(x_0, y_0, x_1, y_1, ...)`; decoding writes those coordinates back into
//! a template scenario. Fitness blends normalized connectivity and coverage,
//!
//! ```text
//! f = omega * zeta / n + (1 - omega) * phi / m
//! ```
//!
//! and is maximized: 1.0 means every fog node sits in one component and
//! every edge node is covered.

use crate::error::Error;
use crate::model::Scenario;
use crate::scalar::{count, Real};
use rand::Rng;

/// Flat placement of all fog nodes, dimension `2n`, interleaved `(x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacementVector<F>(Vec<F>);

impl<F: Real> PlacementVector<F> {
    pub fn new(values: Vec<F>) -> Self {
        Self(values)
    }

    /// Encodes the fog locations of a scenario.
    pub fn encode(scenario: &Scenario<F>) -> Self {
        Self(
            scenario
                .fog_nodes()
                .iter()
                .flat_map(|f| [f.location.x, f.location.y])
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[F] {
        &self.0
    }

    pub fn values_mut(&mut self) -> &mut [F] {
        &mut self.0
    }
}

/// Box bounds of the search space: zero to the region extent, alternating
/// `(W, H)` per coordinate pair.
#[derive(Debug, Clone)]
pub struct SearchBounds<F> {
    lower: PlacementVector<F>,
    upper: PlacementVector<F>,
}

impl<F: Real> SearchBounds<F> {
    pub fn dim(&self) -> usize {
        self.lower.dim()
    }

    pub fn lower(&self) -> &PlacementVector<F> {
        &self.lower
    }

    pub fn upper(&self) -> &PlacementVector<F> {
        &self.upper
    }

    /// Clamps every coordinate into `[lower, upper]`.
    pub fn clamp(&self, values: &mut [F]) {
        debug_assert_eq!(values.len(), self.dim());
        for (v, (lo, hi)) in values
            .iter_mut()
            .zip(self.lower.values().iter().zip(self.upper.values()))
        {
            *v = v.max(*lo).min(*hi);
        }
    }

    pub fn contains(&self, values: &[F]) -> bool {
        values.len() == self.dim()
            && values
                .iter()
                .zip(self.lower.values().iter().zip(self.upper.values()))
                .all(|(v, (lo, hi))| *v >= *lo && *v <= *hi)
    }

    /// One uniform point `lower + u * (upper - lower)`, one `u ~ U[0, 1)`
    /// per coordinate in index order.
    pub fn sample_row<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<F> {
        self.lower
            .values()
            .iter()
            .zip(self.upper.values())
            .map(|(lo, hi)| *lo + F::unit(rng) * (*hi - *lo))
            .collect()
    }
}

/// Exact fitness value together with its integer parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitnessBreakdown<F> {
    pub f: F,
    pub zeta: usize,
    pub phi: usize,
}

/// Immutable evaluation context: the template scenario (ranges and edge
/// nodes fixed, fog locations overwritten on decode) and the tradeoff
/// weight `omega`.
#[derive(Debug, Clone)]
pub struct EvaluationContext<F> {
    template: Scenario<F>,
    omega: F,
}

impl<F: Real> EvaluationContext<F> {
    /// Rejects omega outside `[0, 1]` and degenerate templates without fog
    /// or edge nodes (either would make the fitness 0/0).
    pub fn new(template: Scenario<F>, omega: F) -> Result<Self, Error> {
        if !(omega >= F::zero() && omega <= F::one()) {
            return Err(Error::InvalidOmega(omega.to_f64().unwrap_or(f64::NAN)));
        }
        if template.fog_count() == 0 {
            return Err(Error::EmptyFogSet);
        }
        if template.edge_count() == 0 {
            return Err(Error::EmptyEdgeSet);
        }
        Ok(Self { template, omega })
    }

    pub fn template(&self) -> &Scenario<F> {
        &self.template
    }

    pub fn omega(&self) -> F {
        self.omega
    }

    pub fn fog_count(&self) -> usize {
        self.template.fog_count()
    }

    pub fn edge_count(&self) -> usize {
        self.template.edge_count()
    }

    /// Search-space dimension, `2n`.
    pub fn dim(&self) -> usize {
        2 * self.template.fog_count()
    }

    /// Lower bound all zeros, upper bound alternating `(W, H)`.
    pub fn bounds(&self) -> SearchBounds<F> {
        let d = self.dim();
        let lower = PlacementVector::new(vec![F::zero(); d]);
        let upper = PlacementVector::new(
            (0..d)
                .map(|k| {
                    if k % 2 == 0 {
                        self.template.width()
                    } else {
                        self.template.height()
                    }
                })
                .collect(),
        );
        SearchBounds { lower, upper }
    }

    /// Template with fog `i` relocated to `(v[2i], v[2i+1])`.
    pub fn decode(&self, v: &PlacementVector<F>) -> Result<Scenario<F>, Error> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.dim(),
            });
        }
        Ok(self.template.relocated(v.values()))
    }

    /// Aggregate fitness of a placement. Panics on dimension mismatch.
    pub fn fitness(&self, v: &PlacementVector<F>) -> FitnessBreakdown<F> {
        assert_eq!(v.dim(), self.dim(), "placement dimension mismatch");
        self.fitness_of(v.values())
    }

    pub(crate) fn fitness_of(&self, coords: &[F]) -> FitnessBreakdown<F> {
        let (zeta, phi) = self.template.zeta_phi(coords);
        let n: F = count(self.template.fog_count());
        let m: F = count(self.template.edge_count());
        let f = self.omega * (count::<F>(zeta) / n)
            + (F::one() - self.omega) * (count::<F>(phi) / m);
        FitnessBreakdown { f, zeta, phi }
    }
}
