//! Random scenario generation.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::model::{EdgeNode, FogNode, Point2D, Scenario};
use crate::rng::rng_from_seed;
use crate::scalar::Real;

/// Transmission range assignment for generated fog nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RangeSpec<F> {
    /// Every fog node gets the same range.
    Fixed(F),
    /// Ranges drawn i.i.d. uniform from `[lo, hi)`.
    Uniform { lo: F, hi: F },
}

/// Parameters for one random deployment.
///
/// Defaults are the standard experiment preset: a 1000 m square with 45
/// fog nodes of 100 m range and 120 edge nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, bound(serialize = "F: Serialize", deserialize = "F: Deserialize<'de> + Real"))]
pub struct GeneratorSpec<F> {
    pub width: F,
    pub height: F,
    pub fog_count: usize,
    pub edge_count: usize,
    pub range: RangeSpec<F>,
    pub capacity: Option<usize>,
    pub seed: u64,
}

impl<F: Real> Default for GeneratorSpec<F> {
    fn default() -> Self {
        Self {
            width: F::from_f64(1000.0).unwrap(),
            height: F::from_f64(1000.0).unwrap(),
            fog_count: 45,
            edge_count: 120,
            range: RangeSpec::Fixed(F::from_f64(100.0).unwrap()),
            capacity: None,
            seed: 0,
        }
    }
}

impl<F: Real> GeneratorSpec<F> {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.width.is_finite() && self.height.is_finite())
            || self.width <= F::zero()
            || self.height <= F::zero()
        {
            return Err(Error::InvalidConfig(format!(
                "region must be positive, got {} x {}",
                self.width, self.height
            )));
        }
        if self.fog_count == 0 || self.edge_count == 0 {
            return Err(Error::InvalidConfig(
                "fog and edge counts must be positive".into(),
            ));
        }
        let max_extent = self.width.max(self.height);
        let (lo, hi) = match self.range {
            RangeSpec::Fixed(r) => (r, r),
            RangeSpec::Uniform { lo, hi } => (lo, hi),
        };
        if !(lo.is_finite() && hi.is_finite()) || lo <= F::zero() || lo > hi || hi > max_extent {
            return Err(Error::InvalidConfig(format!(
                "ranges must satisfy 0 < lo <= hi <= {max_extent}, got [{lo}, {hi}]"
            )));
        }
        if self.capacity == Some(0) {
            return Err(Error::InvalidConfig("capacity must be positive".into()));
        }
        Ok(())
    }
}

/// Draws a scenario: fog and edge locations i.i.d. uniform over the region,
/// ranges fixed or uniform per the spec, all from one seeded generator.
///
/// Draw order: per fog node its `(x, y)`; then, for a uniform range spec,
/// one range per fog node; then per edge node its `(x, y)`.
pub fn generate_scenario<F: Real>(spec: &GeneratorSpec<F>) -> Result<Scenario<F>, Error> {
    spec.validate()?;
    let mut rng = rng_from_seed(spec.seed);

    let locations: Vec<Point2D<F>> = (0..spec.fog_count)
        .map(|_| {
            let x = F::unit(&mut rng) * spec.width;
            let y = F::unit(&mut rng) * spec.height;
            Point2D::new(x, y)
        })
        .collect();

    let fog_nodes: Vec<FogNode<F>> = match spec.range {
        RangeSpec::Fixed(r) => locations
            .into_iter()
            .enumerate()
            .map(|(id, loc)| FogNode::new(id, loc, r))
            .collect(),
        RangeSpec::Uniform { lo, hi } => {
            let ranges: Vec<F> = (0..spec.fog_count)
                .map(|_| lo + F::unit(&mut rng) * (hi - lo))
                .collect();
            locations
                .into_iter()
                .zip(ranges)
                .enumerate()
                .map(|(id, (loc, r))| FogNode::new(id, loc, r))
                .collect()
        }
    };

    let edge_nodes: Vec<EdgeNode<F>> = (0..spec.edge_count)
        .map(|id| {
            let x = F::unit(&mut rng) * spec.width;
            let y = F::unit(&mut rng) * spec.height;
            EdgeNode::new(id, Point2D::new(x, y))
        })
        .collect();

    Scenario::new(
        spec.width,
        spec.height,
        spec.capacity,
        fog_nodes,
        edge_nodes,
    )
}
