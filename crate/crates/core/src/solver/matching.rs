//! Maximum bipartite matching and the consequences of a tight matching bound.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::diamgraph::{BipartiteView, DiameterGraph};
use crate::error::SolverError;

/// Disjoint `(left, right)` edges of a [`BipartiteView`], sorted by left vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    /// Wraps explicit pairs after checking they are crossing edges of `view`
    /// and that no vertex is used twice.
    pub fn from_pairs(view: &BipartiteView, pairs: Vec<(usize, usize)>) -> Result<Self, SolverError> {
        let mut used = std::collections::HashSet::new();
        for &(u, v) in &pairs {
            if !view.has_edge(u, v) {
                return Err(SolverError::Graph(crate::error::GraphError::Format(format!(
                    "({u}, {v}) is not a crossing edge of the view"
                ))));
            }
            if !used.insert(u) || !used.insert(v) {
                return Err(SolverError::Graph(crate::error::GraphError::Format(format!(
                    "vertex of ({u}, {v}) is matched twice"
                ))));
            }
        }
        let mut pairs = pairs;
        pairs.sort_unstable();
        Ok(Matching { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn partner(&self, v: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn is_matched(&self, v: usize) -> bool {
        self.partner(v).is_some()
    }

    /// Vertices of `view` not covered by the matching, left side first.
    pub fn unmatched<'a>(&'a self, view: &'a BipartiteView) -> impl Iterator<Item = usize> + 'a {
        view.left().iter().chain(view.right()).copied().filter(|&v| !self.is_matched(v))
    }
}

/// Maximum-cardinality matching by augmenting paths. Left vertices are
/// processed in ascending order and neighbours are tried in ascending order,
/// so the result is a function of the view alone.
pub fn max_matching(view: &BipartiteView) -> Matching {
    let left = view.left();
    let right = view.right();
    let rpos = |v: usize| right.binary_search(&v).expect("edge endpoint on the right side");
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); left.len()];
    for &(u, v) in view.edges() {
        let li = left.binary_search(&u).expect("edge endpoint on the left side");
        adjacency[li].push(rpos(v));
    }
    for list in adjacency.iter_mut() {
        list.sort_unstable();
    }
    let owner = kuhn(&adjacency, right.len());
    let mut pairs: Vec<(usize, usize)> = owner
        .iter()
        .enumerate()
        .filter_map(|(ri, l)| l.map(|li| (left[li], right[ri])))
        .collect();
    pairs.sort_unstable();
    Matching { pairs }
}

/// Kuhn's augmenting-path algorithm on a left-indexed adjacency list.
/// Returns, for each right vertex, its matched left vertex.
pub(crate) fn kuhn(adjacency: &[Vec<usize>], right_len: usize) -> Vec<Option<usize>> {
    let mut owner: Vec<Option<usize>> = vec![None; right_len];
    let mut visited = vec![0usize; right_len];
    for start in 0..adjacency.len() {
        augment(start, adjacency, &mut owner, &mut visited, start + 1);
    }
    owner
}

fn augment(
    u: usize,
    adjacency: &[Vec<usize>],
    owner: &mut [Option<usize>],
    visited: &mut [usize],
    stamp: usize,
) -> bool {
    for &r in &adjacency[u] {
        if visited[r] == stamp {
            continue;
        }
        visited[r] = stamp;
        let free = match owner[r] {
            None => true,
            Some(w) => augment(w, adjacency, owner, visited, stamp),
        };
        if free {
            owner[r] = Some(u);
            return true;
        }
    }
    false
}

/// A maximum independent set of a bipartite graph from a maximum matching
/// (complement of the König vertex cover). Indices are local to `adjacency`
/// (left) and `0..right_len` (right); returns `(left_members, right_members)`.
pub(crate) fn konig_independent_set(
    adjacency: &[Vec<usize>],
    right_len: usize,
    owner: &[Option<usize>],
) -> (Vec<usize>, Vec<usize>) {
    let mut left_match = vec![None; adjacency.len()];
    for (r, l) in owner.iter().enumerate() {
        if let Some(l) = l {
            left_match[*l] = Some(r);
        }
    }
    let mut left_seen = vec![false; adjacency.len()];
    let mut right_seen = vec![false; right_len];
    let mut queue: VecDeque<usize> = (0..adjacency.len()).filter(|&l| left_match[l].is_none()).collect();
    for &l in &queue {
        left_seen[l] = true;
    }
    while let Some(l) = queue.pop_front() {
        for &r in &adjacency[l] {
            if right_seen[r] {
                continue;
            }
            right_seen[r] = true;
            if let Some(w) = owner[r] {
                if !left_seen[w] {
                    left_seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let left_in = (0..adjacency.len()).filter(|&l| left_seen[l]).collect();
    let right_in = (0..right_len).filter(|&r| !right_seen[r]).collect();
    (left_in, right_in)
}

/// `|V| - |maximum matching|`: the independence number of the bipartite
/// graph behind `view`, which must cover every vertex of `g`.
pub fn matching_bound(g: &DiameterGraph, view: &BipartiteView) -> Result<usize, SolverError> {
    if view.vertex_count() != g.len() {
        return Err(SolverError::ViewDoesNotCover { covered: view.vertex_count(), len: g.len() });
    }
    Ok(view.vertex_count() - max_matching(view).len())
}

/// Outcome of [`propagate_matching`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Propagation {
    /// Vertices every independent set of size `|V| - |matching|` containing
    /// the seed must include, and those it must avoid.
    Closed { included: Vec<usize>, excluded: Vec<usize> },
    /// No such independent set exists; `forced` was forced in but is adjacent
    /// to, or already excluded by, `conflict`.
    Contradiction { forced: usize, conflict: usize },
}

impl Propagation {
    pub fn is_contradiction(&self) -> bool {
        matches!(self, Propagation::Contradiction { .. })
    }
}

/// Forcing for an independent set `I` of size `|V(g)| - |matching|`.
///
/// Such an `I` holds exactly one endpoint of every matched pair and every
/// unmatched vertex. So for `z` in `I` and `y` adjacent to `z`, the partner of
/// `y` is in `I`. The closure starts from `seed` plus all unmatched vertices.
pub fn propagate_matching(
    g: &DiameterGraph,
    matching: &Matching,
    seed: &[usize],
) -> Result<Propagation, SolverError> {
    let n = g.len();
    if let Some(&bad) = seed.iter().find(|&&v| v >= n) {
        return Err(SolverError::Graph(crate::error::GraphError::IndexOutOfRange { index: bad, len: n }));
    }
    let mut partner = vec![None; n];
    for &(a, b) in matching.pairs() {
        partner[a] = Some(b);
        partner[b] = Some(a);
    }
    #[derive(Clone, Copy, PartialEq)]
    enum State {
        Open,
        In,
        Out,
    }
    let mut state = vec![State::Open; n];
    let mut queue = VecDeque::new();
    let initial = seed.iter().copied().chain((0..n).filter(|&v| partner[v].is_none()));
    for v in initial {
        if state[v] == State::Open {
            state[v] = State::In;
            queue.push_back(v);
        }
    }
    while let Some(z) = queue.pop_front() {
        for y in g.neighbors(z).iter() {
            match state[y] {
                State::In => return Ok(Propagation::Contradiction { forced: z, conflict: y }),
                State::Out => continue,
                State::Open => state[y] = State::Out,
            }
            let Some(x) = partner[y] else {
                // unmatched vertices are all in I, so y cannot be Open here
                unreachable!("unmatched vertex {y} was not seeded");
            };
            match state[x] {
                State::In => {}
                State::Out => return Ok(Propagation::Contradiction { forced: x, conflict: y }),
                State::Open => {
                    state[x] = State::In;
                    queue.push_back(x);
                }
            }
        }
    }
    let included = (0..n).filter(|&v| state[v] == State::In).collect();
    let excluded = (0..n).filter(|&v| state[v] == State::Out).collect();
    Ok(Propagation::Closed { included, excluded })
}
