//! Independent oracles and seeded corpora shared by the integration tests.
//! Nothing here calls into the library's rank, polynomial or sd code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewsd::search::{random_family, SearchMode};
use skewsd::{DistanceSpec, Rational, SetFamily, Subset};

pub type Set = BTreeSet<usize>;

pub fn as_set(s: &Subset) -> Set {
    s.elements().collect()
}

pub fn sets_of(fam: &SetFamily) -> Vec<Set> {
    fam.iter().map(as_set).collect()
}

pub fn naive_sd(a: &Set, b: &Set) -> usize {
    a.difference(b).count().min(b.difference(a).count())
}

/// Every pair of distinct members has its skew distance in `allowed`.
pub fn naive_all_distances_in(sets: &[Set], allowed: &Set) -> bool {
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if !allowed.contains(&naive_sd(a, b)) {
                return false;
            }
        }
    }
    true
}

pub fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// `Π_{h∈L} (|F∖G| - h)`, straight from the definition.
pub fn closed_form(f: &Set, g: &Set, spec: &[usize]) -> Rational {
    let diff = f.difference(g).count() as i64;
    spec.iter()
        .fold(Rational::one(), |acc, &h| acc * q(diff - h as i64))
}

/// Textbook Gauss–Jordan elimination over the rationals with division.
pub fn naive_rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for x in a[rank].iter_mut() {
            *x = &*x / &pivot;
        }
        let pivot_row = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &factor * y;
                }
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Random L-close Sperner families: `n ≤ max_n`, `1 ≤ |L| ≤ max_l`,
/// `L ⊆ [n]`, each a greedy maximal family for its own seed.
pub fn close_sperner_corpus(
    count: usize,
    max_n: usize,
    max_l: usize,
    seed: u64,
) -> Vec<(SetFamily, DistanceSpec)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let l = rng.gen_range(1..=max_l.min(n));
            let values: Vec<usize> = (1..=n)
                .collect::<Vec<_>>()
                .choose_multiple(&mut rng, l)
                .copied()
                .collect();
            let spec = DistanceSpec::new(values).unwrap();
            let fam = random_family(n, &spec, SearchMode::CloseSperner, rng.gen()).unwrap();
            (fam, spec)
        })
        .collect()
}

/// Random `{s}`-close Sperner families other than `{∅}`, `n ≤ max_n`,
/// `s ≤ min(3, n)`.
pub fn single_distance_corpus(
    count: usize,
    max_n: usize,
    seed: u64,
) -> Vec<(SetFamily, DistanceSpec)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(1..=max_n);
        let s = rng.gen_range(1..=3.min(n));
        let spec = DistanceSpec::new([s]).unwrap();
        let fam = random_family(n, &spec, SearchMode::CloseSperner, rng.gen()).unwrap();
        if fam.len() == 1 && fam.sets()[0].is_empty() {
            continue;
        }
        out.push((fam, spec));
    }
    out
}

/// `p_{F_i}(v_{F_j})` from the closed form, rows and columns in the given order.
pub fn evaluation_matrix(sets: &[Set], spec: &[usize]) -> Vec<Vec<Rational>> {
    sets.iter()
        .map(|f| sets.iter().map(|g| closed_form(f, g, spec)).collect())
        .collect()
}
