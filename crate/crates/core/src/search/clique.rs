//! Exact maximum clique on bitset graphs: degeneracy ordering, greedy
//! colouring bounds, and top-level branches split across rayon workers that
//! share only a monotone best-so-far size.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(size: usize) -> Self {
        Self {
            words: vec![0; size.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        self.words[v / 64] & (1 << (v % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn intersect_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    fn subtract(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn intersection(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + tz)
            })
        })
    }
}

/// Simple undirected graph with bitset adjacency rows.
#[derive(Clone)]
pub struct BitGraph {
    adjacency: Vec<VertexSet>,
}

impl BitGraph {
    pub fn new(size: usize) -> Self {
        Self {
            adjacency: vec![VertexSet::new(size); size],
        }
    }

    pub fn from_edges(size: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(size);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn size(&self) -> usize {
        self.adjacency.len()
    }

    /// Loops are ignored.
    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adjacency[a].insert(b);
            self.adjacency[b].insert(a);
        }
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(b)
    }

    pub fn neighbours(&self, v: usize) -> &VertexSet {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &a)| vertices[i + 1..].iter().all(|&b| self.adjacent(a, b)))
    }

    /// Repeatedly removes a minimum-degree vertex; returns the removal order
    /// reversed, so high-core vertices come first.
    fn degeneracy_order(&self) -> Vec<usize> {
        let size = self.size();
        let mut degree: Vec<usize> = (0..size).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; size];
        let mut order = Vec::with_capacity(size);
        for _ in 0..size {
            let v = (0..size)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (degree[v], v))
                .expect("vertex remains");
            removed[v] = true;
            order.push(v);
            for u in self.adjacency[v].iter() {
                if !removed[u] {
                    degree[u] -= 1;
                }
            }
        }
        order.reverse();
        order
    }

    /// Relabels vertices so that `order[i]` becomes `i`.
    fn relabel(&self, order: &[usize]) -> Self {
        let mut position = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut g = Self::new(order.len());
        for (i, &v) in order.iter().enumerate() {
            for u in self.adjacency[v].iter() {
                g.adjacency[i].insert(position[u]);
            }
        }
        g
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolverOptions {
    /// Worker threads; `None` uses the rayon default.
    pub threads: Option<usize>,
    pub time_limit: Option<Duration>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueOutcome {
    /// Vertices of the best clique found, sorted.
    pub vertices: Vec<usize>,
    pub nodes: u64,
    pub elapsed: Duration,
    /// False when the time limit cut the search short; `vertices` is then
    /// only a lower bound.
    pub exact: bool,
}

struct Shared {
    best: AtomicUsize,
    witness: Mutex<Vec<usize>>,
    nodes: AtomicU64,
    stop: AtomicBool,
    deadline: Option<Instant>,
}

impl Shared {
    fn offer(&self, clique: &[usize]) {
        let mut w = self.witness.lock().expect("witness lock");
        if clique.len() > w.len() {
            *w = clique.to_vec();
            self.best.fetch_max(clique.len(), Ordering::SeqCst);
        }
    }

    fn should_stop(&self, local_nodes: u64) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        if local_nodes.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.stop.store(true, Ordering::Relaxed);
                    return true;
                }
            }
        }
        false
    }
}

struct Worker<'a> {
    graph: &'a BitGraph,
    shared: &'a Shared,
    nodes: u64,
}

impl Worker<'_> {
    /// Greedy sequential colouring of `candidates`; returns vertices in
    /// colour order with their colour numbers (non-decreasing).
    fn colour(&self, candidates: &VertexSet) -> Vec<(usize, usize)> {
        let mut uncoloured = candidates.clone();
        let mut out = Vec::with_capacity(candidates.len());
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut available = uncoloured.clone();
            while let Some(v) = available.first() {
                available.remove(v);
                available.subtract(self.graph.neighbours(v));
                uncoloured.remove(v);
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut candidates: VertexSet) {
        self.nodes += 1;
        if self.shared.should_stop(self.nodes) {
            return;
        }
        let coloured = self.colour(&candidates);
        for &(v, colour) in coloured.iter().rev() {
            if clique.len() + colour <= self.shared.best.load(Ordering::Relaxed) {
                return;
            }
            clique.push(v);
            let next = candidates.intersection(self.graph.neighbours(v));
            if next.is_empty() {
                if clique.len() > self.shared.best.load(Ordering::Relaxed) {
                    self.shared.offer(clique);
                }
            } else {
                self.expand(clique, next);
            }
            clique.pop();
            candidates.remove(v);
        }
    }
}

/// Exact maximum clique (subject to `options.time_limit`).
pub fn solve_max_clique(graph: &BitGraph, options: &SolverOptions) -> CliqueOutcome {
    let start = Instant::now();
    let size = graph.size();
    if size == 0 {
        return CliqueOutcome {
            vertices: Vec::new(),
            nodes: 0,
            elapsed: start.elapsed(),
            exact: true,
        };
    }
    let order = graph.degeneracy_order();
    let relabelled = graph.relabel(&order);
    let shared = Shared {
        best: AtomicUsize::new(1),
        witness: Mutex::new(vec![0]),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        deadline: options.time_limit.map(|t| start + t),
    };

    // Every clique is found from its lowest-numbered vertex.
    let run = |v: usize| {
        let mut later = relabelled.neighbours(v).clone();
        for u in 0..=v {
            later.remove(u);
        }
        let mut worker = Worker {
            graph: &relabelled,
            shared: &shared,
            nodes: 0,
        };
        if 1 + later.len() > shared.best.load(Ordering::Relaxed) {
            let mut clique = vec![v];
            if later.is_empty() {
                shared.offer(&clique);
            } else {
                worker.expand(&mut clique, later);
            }
        }
        shared.nodes.fetch_add(worker.nodes, Ordering::Relaxed);
    };

    match options.threads {
        Some(1) => (0..size).for_each(run),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| (0..size).into_par_iter().for_each(run)),
            Err(_) => (0..size).for_each(run),
        },
        None => (0..size).into_par_iter().for_each(run),
    }

    let mut vertices: Vec<usize> = shared
        .witness
        .into_inner()
        .expect("witness lock")
        .into_iter()
        .map(|v| order[v])
        .collect();
    vertices.sort_unstable();
    CliqueOutcome {
        vertices,
        nodes: shared.nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
        exact: !shared.stop.load(Ordering::Relaxed),
    }
}
