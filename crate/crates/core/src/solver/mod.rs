//! Exact maximum independent sets of diameter graphs.
//!
//! The search splits its top levels into a fixed list of subtrees, solves
//! them on a rayon pool and merges results in subtree order, so answers and
//! node counts do not depend on the number of threads.

mod matching;
mod search;
mod slices;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use matching::{matching_bound, max_matching, propagate_matching, Matching, Propagation};

use crate::diamgraph::DiameterGraph;
use crate::error::SolverError;
use crate::lattice::{generate, Signature, TritVector};
use search::{Goal, Problem, Search, Subproblem};
use slices::SliceBound;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Worker threads; 0 uses every available core.
    pub threads: usize,
    /// `None` disables the limit.
    pub time_limit: Option<Duration>,
    pub vertex_limit: usize,
    pub enumeration_limit: usize,
    /// Number of branchings performed before handing subtrees to workers.
    pub split_depth: usize,
    /// Use the zero-slice bound on graphs whose vertices share a signature.
    pub slice_bounds: bool,
    /// Graphs smaller than this are solved without the slice bound.
    pub slice_min_vertices: usize,
    /// Branch on coordinate-permutation orbits when the graph is a whole
    /// lattice (maximum search only).
    pub symmetry: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            threads: 0,
            time_limit: Some(Duration::from_secs(300)),
            vertex_limit: 1000,
            enumeration_limit: 1_000_000,
            split_depth: 10,
            slice_bounds: true,
            slice_min_vertices: 40,
            symmetry: true,
        }
    }
}

/// Result of a solve. Vertex indices refer to the graph that was solved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MisResult {
    pub alpha: usize,
    /// A maximum independent set, ascending.
    pub witness: Vec<usize>,
    /// All sets found by an enumeration, each ascending, in ascending order.
    pub enumerated: Option<Vec<Vec<usize>>>,
    pub node_count: u64,
}

impl MisResult {
    pub fn witness_points(&self, g: &DiameterGraph) -> Vec<TritVector> {
        self.witness.iter().map(|&v| *g.vertex(v)).collect()
    }

    pub fn enumerated_points(&self, g: &DiameterGraph) -> Option<Vec<Vec<TritVector>>> {
        self.enumerated
            .as_ref()
            .map(|sets| sets.iter().map(|s| s.iter().map(|&v| *g.vertex(v)).collect()).collect())
    }
}

/// Checks that `set` has no internal edge.
pub fn check_independent(g: &DiameterGraph, set: &[usize]) -> Result<(), SolverError> {
    for (i, &u) in set.iter().enumerate() {
        if u >= g.len() {
            return Err(crate::error::GraphError::IndexOutOfRange { index: u, len: g.len() }.into());
        }
        for &v in &set[i + 1..] {
            if g.has_edge(u, v) {
                return Err(SolverError::NotIndependent(u.min(v), u.max(v)));
            }
        }
    }
    Ok(())
}

pub fn independence_number(g: &DiameterGraph) -> Result<MisResult, SolverError> {
    independence_number_with(g, &SolverConfig::default())
}

pub fn independence_number_with(g: &DiameterGraph, config: &SolverConfig) -> Result<MisResult, SolverError> {
    let deadline = config.time_limit.map(|t| Instant::now() + t);
    with_pool(config, || maximum(g, config, deadline))
}

/// All maximum independent sets.
pub fn enumerate_maximum(g: &DiameterGraph) -> Result<MisResult, SolverError> {
    enumerate_maximum_with(g, &SolverConfig::default())
}

pub fn enumerate_maximum_with(g: &DiameterGraph, config: &SolverConfig) -> Result<MisResult, SolverError> {
    let deadline = config.time_limit.map(|t| Instant::now() + t);
    with_pool(config, || {
        let mut best = maximum(g, config, deadline)?;
        let problem = Problem::new(g, slice_bound_for(g, config, deadline)?);
        let goal = Goal::Enumerate { target: best.alpha, maximum: true, limit: config.enumeration_limit };
        let (sets, nodes) = enumerate(&problem, goal, config, deadline, best.alpha)?;
        best.node_count += nodes;
        best.enumerated = Some(sets);
        Ok(best)
    })
}

/// All independent sets with exactly `size` vertices, ascending.
pub fn enumerate_size(g: &DiameterGraph, size: usize) -> Result<Vec<Vec<usize>>, SolverError> {
    enumerate_size_with(g, size, &SolverConfig::default())
}

pub fn enumerate_size_with(
    g: &DiameterGraph,
    size: usize,
    config: &SolverConfig,
) -> Result<Vec<Vec<usize>>, SolverError> {
    check_size(g, config)?;
    let deadline = config.time_limit.map(|t| Instant::now() + t);
    with_pool(config, || {
        let problem = Problem::new(g, slice_bound_for(g, config, deadline)?);
        let goal = Goal::Enumerate { target: size, maximum: false, limit: config.enumeration_limit };
        enumerate(&problem, goal, config, deadline, 0).map(|(sets, _)| sets)
    })
}

fn check_size(g: &DiameterGraph, config: &SolverConfig) -> Result<(), SolverError> {
    if g.len() > config.vertex_limit {
        return Err(SolverError::TooManyVertices { len: g.len(), limit: config.vertex_limit });
    }
    Ok(())
}

fn with_pool<T: Send>(config: &SolverConfig, f: impl FnOnce() -> T + Send) -> T {
    if config.threads == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(config.threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

fn maximum(g: &DiameterGraph, config: &SolverConfig, deadline: Option<Instant>) -> Result<MisResult, SolverError> {
    check_size(g, config)?;
    if g.is_empty() {
        return Ok(MisResult { alpha: 0, witness: Vec::new(), enumerated: None, node_count: 0 });
    }
    let mut problem = Problem::new(g, slice_bound_for(g, config, deadline)?);
    if config.symmetry && is_whole_lattice(g) {
        problem = problem.with_symmetry(g);
    }
    let greedy = problem.greedy();

    let mut split = Search::new(&problem, Goal::Maximum, deadline)
        .with_lower_bound(greedy.len())
        .splitting_at(config.split_depth);
    split.run(&[], problem.full());
    let mut lower = split.best;
    let mut witness = split.best_set.take().unwrap_or(greedy);
    let mut nodes = split.nodes;
    if split.timed_out {
        return Err(SolverError::Timeout { lower, upper: problem.root_bound().max(lower) });
    }

    let start = lower;
    let outcomes: Vec<(usize, Option<Vec<usize>>, u64, bool)> = split
        .subproblems
        .par_iter()
        .map(|sub: &Subproblem| {
            let mut s = Search::new(&problem, Goal::Maximum, deadline).with_lower_bound(start);
            s.run(&sub.chosen, sub.cand.clone());
            (s.best, s.best_set, s.nodes, s.timed_out)
        })
        .collect();
    let mut timed_out = false;
    for (best, set, n, t) in outcomes {
        nodes += n;
        timed_out |= t;
        if let Some(set) = set {
            if best > lower {
                lower = best;
                witness = set;
            }
        }
    }
    if timed_out {
        return Err(SolverError::Timeout { lower, upper: problem.root_bound().max(lower) });
    }
    debug_assert_eq!(witness.len(), lower);
    Ok(MisResult { alpha: lower, witness, enumerated: None, node_count: nodes })
}

fn enumerate(
    problem: &Problem,
    goal: Goal,
    config: &SolverConfig,
    deadline: Option<Instant>,
    lower: usize,
) -> Result<(Vec<Vec<usize>>, u64), SolverError> {
    let Goal::Enumerate { limit, target, .. } = goal else {
        unreachable!("enumerate called with a maximum goal");
    };
    let mut split = Search::new(problem, goal, deadline).splitting_at(config.split_depth);
    split.run(&[], problem.full());
    let timeout = |found: usize| SolverError::Timeout { lower: lower.max(found), upper: problem.root_bound() };
    if split.timed_out {
        return Err(timeout(0));
    }
    if split.overflow {
        return Err(SolverError::EnumerationLimit { limit });
    }
    let mut found = std::mem::take(&mut split.found);
    let mut nodes = split.nodes;
    let outcomes: Vec<(Vec<Vec<usize>>, u64, bool, bool)> = split
        .subproblems
        .par_iter()
        .map(|sub| {
            let mut s = Search::new(problem, goal, deadline);
            s.run(&sub.chosen, sub.cand.clone());
            (s.found, s.nodes, s.timed_out, s.overflow)
        })
        .collect();
    for (sets, n, t, o) in outcomes {
        if t {
            return Err(timeout(if found.is_empty() { 0 } else { target }));
        }
        if o {
            return Err(SolverError::EnumerationLimit { limit });
        }
        nodes += n;
        found.extend(sets);
        if found.len() > limit {
            return Err(SolverError::EnumerationLimit { limit });
        }
    }
    found.sort_unstable();
    Ok((found, nodes))
}

fn is_whole_lattice(g: &DiameterGraph) -> bool {
    g.signature().is_some_and(|sig| sig.cardinality() == g.len() as u128)
}

type CapKey = (Signature, u32);

fn cap_memo() -> &'static Mutex<HashMap<CapKey, usize>> {
    static MEMO: OnceLock<Mutex<HashMap<CapKey, usize>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Independence number of the whole lattice `sig` at `threshold_sq`, cached
/// for the life of the process.
fn lattice_alpha(
    sig: Signature,
    threshold_sq: u32,
    config: &SolverConfig,
    deadline: Option<Instant>,
) -> Result<usize, SolverError> {
    if let Some(&a) = cap_memo().lock().expect("memo lock").get(&(sig, threshold_sq)) {
        return Ok(a);
    }
    let points = generate(sig).map_err(crate::error::GraphError::from)?;
    let alpha = if points.len() < 2 {
        points.len()
    } else {
        let g = DiameterGraph::build(&points, threshold_sq)?;
        let sub = SolverConfig { vertex_limit: usize::MAX, ..config.clone() };
        maximum(&g, &sub, deadline)?.alpha
    };
    cap_memo().lock().expect("memo lock").insert((sig, threshold_sq), alpha);
    Ok(alpha)
}

const MAX_SLICE_NODES: u128 = 1 << 12;

fn slice_bound_for(
    g: &DiameterGraph,
    config: &SolverConfig,
    deadline: Option<Instant>,
) -> Result<Option<SliceBound>, SolverError> {
    if !config.slice_bounds || g.len() < config.slice_min_vertices {
        return Ok(None);
    }
    let Some(sig) = g.signature() else {
        return Ok(None);
    };
    let zeros = sig.k();
    if zeros == 0 || sig.m() + sig.l() == 0 {
        return Ok(None);
    }
    let n = sig.n() as u64;
    let mut depth = 0;
    let mut total = 1u128;
    while depth < zeros {
        let next = total + crate::lattice::binomial(n, depth as u64 + 1);
        if next > MAX_SLICE_NODES {
            break;
        }
        total = next;
        depth += 1;
    }
    if depth == 0 {
        return Ok(None);
    }
    let mut caps = vec![usize::MAX; zeros + 1];
    for (s, cap) in caps.iter_mut().enumerate().take(depth + 1).skip(1) {
        let sub = Signature::new(sig.m(), zeros - s, sig.l()).map_err(crate::error::GraphError::from)?;
        *cap = lattice_alpha(sub, g.threshold_sq(), config, deadline)?;
    }
    Ok(Some(SliceBound::new(g.vertices(), zeros, caps, depth)))
}
