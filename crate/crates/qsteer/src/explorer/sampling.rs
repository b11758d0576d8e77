//! Seeded, order-independent sampling from the λ simplex.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::cloning::LambdaTable;
use crate::error::{Error, Result};
use crate::qudit::Dimension;

/// Draw one λ table from a symmetric Dirichlet distribution over the
/// d²-simplex, as normalized independent Gamma(concentration) variates.
///
/// The random source is part of the output contract: draw `index` under
/// `seed` uses a ChaCha8 stream cipher generator seeded with `seed` on
/// stream `index` (`rand_chacha`'s `ChaCha8Rng`, a platform-independent
/// stream), so every draw is a pure function of `(seed, index,
/// concentration)` and identical across thread counts and run repetitions.
/// Concentration 1 samples the simplex uniformly.
pub fn sample_lambda(
    d: Dimension,
    seed: u64,
    index: u64,
    concentration: f64,
) -> Result<LambdaTable> {
    if !(concentration > 0.0 && concentration.is_finite()) {
        return Err(Error::InvalidParameter {
            reason: format!("concentration {concentration} must be positive and finite"),
        });
    }
    let n = d.get() * d.get();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let gamma = Gamma::new(concentration, 1.0).expect("positive finite shape");
    let mut draws: Vec<f64> = (0..n).map(|_| gamma.sample(&mut rng)).collect();
    let sum: f64 = draws.iter().sum();
    if sum < 1e-300 {
        // at tiny concentrations every variate can underflow to zero; fall
        // back to the limiting distribution, a uniformly placed corner
        draws = vec![0.0; n];
        draws[rng.random_range(0..n)] = 1.0;
    } else {
        for v in draws.iter_mut() {
            *v /= sum;
        }
    }
    LambdaTable::new(d, draws)
}
