//! Executes the inductive argument for `ex_sd(n, {0,1}) ≤ binom(n,2) + 2n - 1`
//! on a concrete `{0,1}`-sd family: split into levels, pick a representative
//! for each level, find an element that never leaves the representatives as
//! the level grows, rename it to `n`, and split the family into
//! `G = {F ∖ {n}}` and `H = {H : H, H ∪ {n} ∈ F}`. Every claim the argument
//! relies on is checked rather than assumed.

use std::collections::BTreeMap;

use num_integer::binomial;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{is_sd_family, DistanceSpec, SetFamily};
use crate::subset::Subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepresentativeKind {
    /// Common `(i-1)`-subset of every set on the level.
    Vee,
    /// Common `(i+1)`-superset of every set on the level.
    Wedge,
    Singleton,
    /// Two sets on the level; the lexicographically smaller one is used.
    PairChoice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representative {
    pub set: Subset,
    pub kind: RepresentativeKind,
}

/// Representative `C_i` of an `i`-uniform, 1-close Sperner level.
///
/// With three or more sets, `∩` of size `i-1` wins over `∪` of size `i+1`.
pub fn representative_set(level: &[Subset], i: usize) -> Result<Representative> {
    match level {
        [] => Err(Error::InvalidInput(format!("level {i} is empty"))),
        [only] => Ok(Representative {
            set: only.clone(),
            kind: RepresentativeKind::Singleton,
        }),
        [a, b] => {
            let set = if a.lex_cmp(b).is_le() { a } else { b };
            Ok(Representative {
                set: set.clone(),
                kind: RepresentativeKind::PairChoice,
            })
        }
        [first, rest @ ..] => {
            let (meet, join) = rest
                .iter()
                .fold((first.clone(), first.clone()), |(m, j), s| {
                    (m.intersection(s), j.union(s))
                });
            if i >= 1 && meet.len() == i - 1 {
                Ok(Representative {
                    set: meet,
                    kind: RepresentativeKind::Vee,
                })
            } else if join.len() == i + 1 {
                Ok(Representative {
                    set: join,
                    kind: RepresentativeKind::Wedge,
                })
            } else {
                Err(Error::LemmaViolation { level: i })
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct LevelDecomposition {
    n: usize,
    levels: BTreeMap<usize, Vec<Subset>>,
    representatives: BTreeMap<usize, Representative>,
}

impl LevelDecomposition {
    pub fn new(fam: &SetFamily) -> Result<Self> {
        let mut levels: BTreeMap<usize, Vec<Subset>> = BTreeMap::new();
        for s in fam {
            levels.entry(s.len()).or_default().push(s.clone());
        }
        let representatives = levels
            .iter()
            .map(|(&i, sets)| Ok((i, representative_set(sets, i)?)))
            .collect::<Result<_>>()?;
        Ok(Self {
            n: fam.n(),
            levels,
            representatives,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Nonempty levels only.
    pub fn levels(&self) -> &BTreeMap<usize, Vec<Subset>> {
        &self.levels
    }

    pub fn representative(&self, level: usize) -> Option<&Representative> {
        self.representatives.get(&level)
    }

    pub fn representatives(&self) -> &BTreeMap<usize, Representative> {
        &self.representatives
    }
}

/// A nonempty level pair `i < j` with `|C_i ∖ C_j| ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NestingViolation {
    pub lower: usize,
    pub upper: usize,
    pub difference: Vec<usize>,
}

/// `|C_i ∖ C_j| ≤ 1` for all nonempty levels `i < j`.
pub fn check_nesting(decomp: &LevelDecomposition) -> Vec<NestingViolation> {
    let reps: Vec<(usize, &Representative)> = decomp
        .representatives
        .iter()
        .map(|(&i, r)| (i, r))
        .collect();
    let mut out = Vec::new();
    for (a, (i, ci)) in reps.iter().enumerate() {
        for (j, cj) in &reps[a + 1..] {
            let diff = ci.set.difference(&cj.set);
            if diff.len() > 1 {
                out.push(NestingViolation {
                    lower: *i,
                    upper: *j,
                    difference: diff.elements().collect(),
                });
            }
        }
    }
    out
}

/// Smallest `x ∈ [n]` that never lies in `C_{p_k} ∖ C_{p_{k+1}}` for
/// consecutive nonempty levels among `1..n-1`; re-verified over all pairs.
pub fn find_special_element(decomp: &LevelDecomposition) -> Result<usize> {
    let n = decomp.n;
    let inner: Vec<&Subset> = decomp
        .representatives
        .range(1..n.max(1))
        .map(|(_, r)| &r.set)
        .collect();
    let mut leaving = Subset::empty();
    for w in inner.windows(2) {
        leaving = leaving.union(&w[0].difference(w[1]));
    }
    let x = (1..=n).find(|&x| !leaving.contains(x)).ok_or_else(|| {
        Error::ProofHypothesis(format!("every element of [{n}] leaves some representative"))
    })?;
    for (a, ci) in inner.iter().enumerate() {
        for cj in &inner[a + 1..] {
            if ci.contains(x) && !cj.contains(x) {
                return Err(Error::Internal(format!(
                    "element {x} leaves a later representative"
                )));
            }
        }
    }
    Ok(x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitChecks {
    /// `|F| = |G| + |H|`.
    pub size_identity: bool,
    /// `G` is `{0,1}`-sd on `[n-1]`.
    pub g_is_sd: bool,
    /// Sets of `H` with different sizes are nested.
    pub h_nested: bool,
    /// At most one level of `H` holds two or more sets.
    pub h_single_wide_level: bool,
    /// `|H| ≤ n + 1`.
    pub h_size_bound: bool,
}

impl SplitChecks {
    pub fn all(&self) -> bool {
        self.size_identity
            && self.g_is_sd
            && self.h_nested
            && self.h_single_wide_level
            && self.h_size_bound
    }
}

#[derive(Debug, Clone)]
pub struct SplitReport {
    pub x: usize,
    /// 1-based images: element `e` is renamed to `permutation[e-1]`.
    pub permutation: Vec<usize>,
    pub g: SetFamily,
    pub h: SetFamily,
    pub h_wide_levels: Vec<usize>,
    pub checks: SplitChecks,
}

/// Renames `x` to `n` (a transposition) and forms `G` and `H` over `[n-1]`.
pub fn split(fam: &SetFamily, x: usize) -> Result<SplitReport> {
    let n = fam.n();
    if n < 2 {
        return Err(Error::InvalidInput("splitting needs n ≥ 2".into()));
    }
    if x == 0 || x > n {
        return Err(Error::InvalidInput(format!("element {x} is not in [{n}]")));
    }
    let mut permutation: Vec<usize> = (1..=n).collect();
    permutation.swap(x - 1, n - 1);
    let renamed = fam.permuted(&permutation)?;

    let mut g_sets: Vec<Subset> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for s in &renamed {
        let mut t = s.clone();
        t.remove(n);
        if seen.insert(t.clone()) {
            g_sets.push(t);
        }
    }
    let present: std::collections::HashSet<&Subset> = renamed.iter().collect();
    let h_sets: Vec<Subset> = renamed
        .iter()
        .filter(|s| !s.contains(n))
        .filter(|s| {
            let mut up = (*s).clone();
            up.insert(n);
            present.contains(&up)
        })
        .cloned()
        .collect();

    let g = SetFamily::new_wide(n - 1, g_sets)?;
    let h = SetFamily::new_wide(n - 1, h_sets)?;

    let h_nested = h
        .iter()
        .all(|a| h.iter().all(|b| a.len() >= b.len() || a.is_subset(b)));
    let mut per_level: BTreeMap<usize, usize> = BTreeMap::new();
    for s in &h {
        *per_level.entry(s.len()).or_default() += 1;
    }
    let h_wide_levels: Vec<usize> = per_level
        .iter()
        .filter(|(_, &c)| c >= 2)
        .map(|(&l, _)| l)
        .collect();
    let checks = SplitChecks {
        size_identity: fam.len() == g.len() + h.len(),
        g_is_sd: is_sd_family(&g, &zero_one()),
        h_nested,
        h_single_wide_level: h_wide_levels.len() <= 1,
        h_size_bound: h.len() <= n + 1,
    };
    Ok(SplitReport {
        x,
        permutation,
        g,
        h,
        h_wide_levels,
        checks,
    })
}

fn zero_one() -> DistanceSpec {
    DistanceSpec::range(0, 1).expect("nonempty")
}

/// `binom(n,2) + 2n - 1` for `n ≥ 3`; `2^n` below that.
pub fn zero_one_bound(n: usize) -> u128 {
    if n < 3 {
        1u128 << n
    } else {
        binomial(n as u128, 2) + 2 * n as u128 - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelSummary {
    pub level: usize,
    pub count: usize,
    pub representative: Vec<usize>,
    pub kind: RepresentativeKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditStep {
    pub n: usize,
    pub size: usize,
    pub levels: Vec<LevelSummary>,
    pub nesting_violations: Vec<NestingViolation>,
    pub special_element: usize,
    pub permutation: Vec<usize>,
    pub g_size: usize,
    pub h_size: usize,
    pub h_wide_levels: Vec<usize>,
    pub checks: SplitChecks,
    /// Inductive bound on `|G|` (the bound for `n - 1`) plus `n + 1` for `H`.
    pub bound: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub n: usize,
    pub size: usize,
    pub steps: Vec<AuditStep>,
    pub base_n: usize,
    pub base_size: usize,
    pub base_bound: u128,
    /// `binom(n,2) + 2n - 1`.
    pub final_bound: u128,
    pub within_bound: bool,
    pub passed: bool,
}

/// Runs the induction from `n` down to the base case `n = 3`.
pub fn audit_zero_one(fam: &SetFamily) -> Result<AuditReport> {
    let spec = zero_one();
    if let Some(v) = fam.first_violation(&spec) {
        return Err(Error::PreconditionViolation {
            i: v.i,
            j: v.j,
            distance: v.distance,
        });
    }
    let mut steps = Vec::new();
    let mut current = fam.clone();
    while current.n() > 3 {
        let decomp = LevelDecomposition::new(&current)?;
        let nesting_violations = check_nesting(&decomp);
        let x = find_special_element(&decomp)?;
        let report = split(&current, x)?;
        let levels = decomp
            .levels()
            .iter()
            .map(|(&level, sets)| {
                let rep = decomp
                    .representative(level)
                    .expect("every nonempty level has one");
                LevelSummary {
                    level,
                    count: sets.len(),
                    representative: rep.set.elements().collect(),
                    kind: rep.kind,
                }
            })
            .collect();
        steps.push(AuditStep {
            n: current.n(),
            size: current.len(),
            levels,
            nesting_violations,
            special_element: x,
            permutation: report.permutation,
            g_size: report.g.len(),
            h_size: report.h.len(),
            h_wide_levels: report.h_wide_levels,
            checks: report.checks,
            bound: zero_one_bound(current.n() - 1) + current.n() as u128 + 1,
        });
        current = report.g;
    }
    let base_bound = zero_one_bound(current.n());
    let final_bound = zero_one_bound(fam.n());
    let within_bound = fam.len() as u128 <= final_bound;
    let steps_ok = steps
        .iter()
        .all(|s| s.nesting_violations.is_empty() && s.checks.all() && s.size as u128 <= s.bound);
    Ok(AuditReport {
        n: fam.n(),
        size: fam.len(),
        base_n: current.n(),
        base_size: current.len(),
        base_bound,
        final_bound,
        within_bound,
        passed: steps_ok && current.len() as u128 <= base_bound && within_bound,
        steps,
    })
}
