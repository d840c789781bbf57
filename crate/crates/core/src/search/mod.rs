//! Exact extremal numbers by maximum clique on the compatibility graph over
//! `2^[n]`: subsets `F, G` are adjacent iff `sd(F, G) ∈ L`, so L-sd families
//! are exactly its cliques.

mod clique;
mod oracle;
mod random;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{is_close_sperner, is_sd_family, DistanceSpec, SetFamily};
use crate::subset::Subset;

pub use clique::{solve_max_clique, BitGraph, CliqueOutcome, SolverOptions, VertexSet};
pub use oracle::{brute_force_oracle, ORACLE_MAX_N};
pub use random::{random_family, RANDOM_MAX_N};

/// Default ceiling on `n` for graph construction (`2^n` vertices).
pub const DEFAULT_CAP: usize = 8;
/// Hard ceiling even when the cap is raised.
pub const ABSOLUTE_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SearchMode {
    #[serde(rename = "sd")]
    Sd,
    #[serde(rename = "close-sperner")]
    CloseSperner,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Sd => "sd",
            SearchMode::CloseSperner => "close-sperner",
        })
    }
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sd" => Ok(SearchMode::Sd),
            "close-sperner" => Ok(SearchMode::CloseSperner),
            other => Err(Error::InvalidInput(format!("unknown mode '{other}'"))),
        }
    }
}

impl SearchMode {
    pub(crate) fn check_spec(self, spec: &DistanceSpec) -> Result<()> {
        if self == SearchMode::CloseSperner && spec.contains_zero() {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    /// Property check matching the mode.
    pub fn holds(self, fam: &SetFamily, spec: &DistanceSpec) -> Result<bool> {
        match self {
            SearchMode::Sd => Ok(is_sd_family(fam, spec)),
            SearchMode::CloseSperner => is_close_sperner(fam, spec),
        }
    }
}

#[inline]
pub(crate) fn mask_sd(a: u64, b: u64) -> usize {
    (a & !b).count_ones().min((b & !a).count_ones()) as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub cap: usize,
    pub threads: Option<usize>,
    pub time_limit: Option<Duration>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            threads: None,
            time_limit: None,
        }
    }
}

/// Vertex `v` is the subset with bit pattern `v`.
#[derive(Clone)]
pub struct CompatGraph {
    n: usize,
    spec: DistanceSpec,
    mode: SearchMode,
    graph: BitGraph,
}

impl CompatGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &DistanceSpec {
        &self.spec
    }

    pub fn mode(&self) -> SearchMode {
        self.mode
    }

    pub fn graph(&self) -> &BitGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.size()
    }

    pub fn vertex_set(&self, v: usize) -> Subset {
        Subset::from_mask(v as u64)
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.graph.adjacent(a, b)
    }
}

pub fn compatibility_graph(
    n: usize,
    spec: &DistanceSpec,
    mode: SearchMode,
    cap: usize,
) -> Result<CompatGraph> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let cap = cap.min(ABSOLUTE_CAP);
    if n > cap {
        return Err(Error::SizeLimit { n, cap });
    }
    mode.check_spec(spec)?;
    spec.check_within(n)?;
    let size = 1usize << n;
    let mut graph = BitGraph::new(size);
    for a in 0..size {
        for b in a + 1..size {
            if spec.contains(mask_sd(a as u64, b as u64)) {
                graph.add_edge(a, b);
            }
        }
    }
    Ok(CompatGraph {
        n,
        spec: spec.clone(),
        mode,
        graph,
    })
}

#[derive(Debug, Clone)]
pub struct CliqueResult {
    pub optimum: usize,
    pub witness: SetFamily,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    /// False when a time limit stopped the search: `optimum` is then a lower
    /// bound only.
    pub exact: bool,
}

/// Maximum clique of the compatibility graph; the witness is re-verified
/// against the property the graph encodes.
pub fn max_clique(g: &CompatGraph, config: &SearchConfig) -> Result<CliqueResult> {
    let out = solve_max_clique(
        &g.graph,
        &SolverOptions {
            threads: config.threads,
            time_limit: config.time_limit,
        },
    );
    let mut sets: Vec<Subset> = out.vertices.iter().map(|&v| g.vertex_set(v)).collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.lex_cmp(b)));
    let witness = SetFamily::new(g.n, sets)?;
    if !g.mode.holds(&witness, &g.spec)? {
        return Err(Error::Internal(
            "clique witness fails the property check".into(),
        ));
    }
    Ok(CliqueResult {
        optimum: witness.len(),
        witness,
        nodes_explored: out.nodes,
        elapsed: out.elapsed,
        exact: out.exact,
    })
}

/// `ex_sd(n, L)`: the largest L-sd family in `2^[n]`.
pub fn ex_sd(n: usize, spec: &DistanceSpec, config: &SearchConfig) -> Result<CliqueResult> {
    let g = compatibility_graph(n, spec, SearchMode::Sd, config.cap)?;
    max_clique(&g, config)
}

/// Largest L-close Sperner family in `2^[n]`; `0 ∉ L` required.
pub fn ex_close_sperner(
    n: usize,
    spec: &DistanceSpec,
    config: &SearchConfig,
) -> Result<CliqueResult> {
    let g = compatibility_graph(n, spec, SearchMode::CloseSperner, config.cap)?;
    max_clique(&g, config)
}

/// Dispatches on the mode.
pub fn search(
    n: usize,
    spec: &DistanceSpec,
    mode: SearchMode,
    config: &SearchConfig,
) -> Result<CliqueResult> {
    match mode {
        SearchMode::Sd => ex_sd(n, spec, config),
        SearchMode::CloseSperner => ex_close_sperner(n, spec, config),
    }
}
