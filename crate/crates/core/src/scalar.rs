//! Scalar abstraction so the whole pipeline runs on `f32` or `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rand::Rng;
use rand_distr::StandardNormal;

/// Floating-point scalar the library is generic over.
///
/// Implemented for `f32` and `f64`. Besides the usual float operations it
/// bundles the two random draws every optimizer needs, so downstream code
/// never has to carry `Distribution` bounds around.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Display + Debug + Send + Sync + 'static
{
    /// One uniform draw in `[0, 1)`.
    fn unit<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// One standard-normal draw (mean 0, variance 1).
    fn normal<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl Real for f32 {
    fn unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.random::<f32>()
    }

    fn normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
}

impl Real for f64 {
    fn unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.random::<f64>()
    }

    fn normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
}

/// Lossless-enough conversion of a count into a scalar (node counts and
/// iteration budgets stay far below the 2^24 / 2^53 integer limits).
pub(crate) fn count<F: Real>(n: usize) -> F {
    F::from_usize(n).expect("count representable as scalar")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unit_draws_stay_in_half_open_interval() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let u = f64::unit(&mut rng);
            assert!((0.0..1.0).contains(&u));
            let u = f32::unit(&mut rng);
            assert!((0.0..1.0).contains(&u));
        }
    }
}
