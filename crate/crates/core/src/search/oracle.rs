use crate::error::{Error, Result};
use crate::family::{sd, DistanceSpec};
use crate::search::SearchMode;
use crate::subset::Subset;

pub const ORACLE_MAX_N: usize = 4;

/// Largest L-sd (or L-close Sperner) family in `2^[n]` by exhaustive
/// include/exclude enumeration over all subfamilies, pruning only branches
/// that cannot beat the best size found. Shares no code with the clique
/// solver.
pub fn brute_force_oracle(n: usize, spec: &DistanceSpec, mode: SearchMode) -> Result<usize> {
    if n > ORACLE_MAX_N {
        return Err(Error::SizeLimit {
            n,
            cap: ORACLE_MAX_N,
        });
    }
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    mode.check_spec(spec)?;
    let all: Vec<Subset> = (0..1u64 << n).map(Subset::from_mask).collect();
    let mut chosen = Vec::new();
    let mut best = 0;
    extend(&all, 0, spec, &mut chosen, &mut best);
    Ok(best)
}

fn extend(
    all: &[Subset],
    next: usize,
    spec: &DistanceSpec,
    chosen: &mut Vec<usize>,
    best: &mut usize,
) {
    if chosen.len() > *best {
        *best = chosen.len();
    }
    if next == all.len() || chosen.len() + (all.len() - next) <= *best {
        return;
    }
    if chosen
        .iter()
        .all(|&c| spec.contains(sd(&all[c], &all[next])))
    {
        chosen.push(next);
        extend(all, next + 1, spec, chosen, best);
        chosen.pop();
    }
    extend(all, next + 1, spec, chosen, best);
}
