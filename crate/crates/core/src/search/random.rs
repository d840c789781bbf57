use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::family::{sd, DistanceSpec, SetFamily};
use crate::search::SearchMode;
use crate::subset::Subset;

pub const RANDOM_MAX_N: usize = 16;

/// Shuffles all of `2^[n]` with a seeded ChaCha8 stream and keeps every set
/// compatible with those already kept. The result is maximal under
/// inclusion and depends only on the arguments.
pub fn random_family(
    n: usize,
    spec: &DistanceSpec,
    mode: SearchMode,
    seed: u64,
) -> Result<SetFamily> {
    if n == 0 || n > RANDOM_MAX_N {
        return Err(Error::InvalidInput(format!(
            "random families need 1 ≤ n ≤ {RANDOM_MAX_N}, got {n}"
        )));
    }
    mode.check_spec(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<u64> = (0..1u64 << n).collect();
    order.shuffle(&mut rng);
    let mut kept: Vec<Subset> = Vec::new();
    for mask in order {
        let s = Subset::from_mask(mask);
        if kept.iter().all(|k| spec.contains(sd(k, &s))) {
            kept.push(s);
        }
    }
    SetFamily::new(n, kept)
}
