//! Branch-and-bound over candidate bitsets.
//!
//! A node holds the chosen vertices `P` (independent) and the candidates `C`
//! (vertices non-adjacent to all of `P`). Bounds, cheapest first: greedy
//! clique cover of `C`, the zero-slice bound on `P ∪ C`, and an exact König
//! solve when `C` induces a bipartite graph. Branching takes a vertex of
//! maximum degree in `C` (smallest index on ties), excluding it first.
//!
//! When the graph is a whole lattice, every coordinate permutation that fixes
//! each chosen vector is an automorphism preserving `C`. These permutations
//! are those that stay inside the cells of the coarsest coordinate partition
//! on which every chosen vector is constant. While looking for a larger set,
//! the exclude branch then drops the whole orbit of the branching vertex:
//! any solution meeting the orbit has an image through the vertex itself.

use std::time::Instant;

use super::matching::{konig_independent_set, kuhn};
use super::slices::SliceBound;
use crate::bitset::{count, count_and, first_in, iter_words};
use crate::diamgraph::DiameterGraph;

pub(crate) struct Problem {
    pub(crate) n: usize,
    pub(crate) words: usize,
    adj: Vec<u64>,
    pub(crate) slices: Option<SliceBound>,
    /// `(neg, pos, len)` masks of the vertices when the graph is closed under
    /// all coordinate permutations.
    symmetric: Option<(Vec<(u64, u64)>, usize)>,
}

impl Problem {
    pub(crate) fn new(g: &DiameterGraph, slices: Option<SliceBound>) -> Self {
        let n = g.len();
        let words = n.div_ceil(64).max(1);
        let mut adj = vec![0u64; n * words];
        for (v, nb) in g.adjacency().iter().enumerate() {
            adj[v * words..v * words + nb.words().len()].copy_from_slice(nb.words());
        }
        Problem { n, words, adj, slices, symmetric: None }
    }

    /// Enables orbit branching. The caller guarantees that the vertex set of
    /// the graph is invariant under every coordinate permutation.
    pub(crate) fn with_symmetry(mut self, g: &DiameterGraph) -> Self {
        let masks = g.vertices().iter().map(|x| (x.neg_mask(), x.pos_mask())).collect();
        let len = g.vertices().first().map_or(0, |x| x.len());
        self.symmetric = Some((masks, len));
        self
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    pub(crate) fn full(&self) -> Vec<u64> {
        let mut c = vec![u64::MAX; self.words];
        let rem = self.n % 64;
        if rem != 0 {
            c[self.words - 1] = (1u64 << rem) - 1;
        }
        if self.n == 0 {
            c.iter_mut().for_each(|w| *w = 0);
        }
        c
    }

    /// Min-degree greedy independent set.
    pub(crate) fn greedy(&self) -> Vec<usize> {
        let mut cand = self.full();
        let mut out = Vec::new();
        while count(&cand) > 0 {
            let v = iter_words(&cand)
                .min_by_key(|&v| (count_and(self.row(v), &cand), v))
                .expect("nonempty");
            out.push(v);
            clear(&mut cand, v);
            and_not(&mut cand, self.row(v));
        }
        out.sort_unstable();
        out
    }

    /// Upper bound for the whole graph (used for timeout reports).
    pub(crate) fn root_bound(&self) -> usize {
        let full = self.full();
        let mut s = Search::new(self, Goal::Maximum, None);
        let mut ub = s.cover_bound(&full);
        if let Some(sb) = &self.slices {
            ub = ub.min(sb.bound(&full, &mut s.slice_scratch));
        }
        ub
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Goal {
    /// Find a largest independent set.
    Maximum,
    /// Collect every independent set of exactly `target` vertices. When
    /// `maximum` is set, `target` is the independence number and isolated
    /// candidates are forced.
    Enumerate { target: usize, maximum: bool, limit: usize },
}

#[derive(Clone, Debug)]
pub(crate) struct Subproblem {
    pub(crate) chosen: Vec<usize>,
    pub(crate) cand: Vec<u64>,
}

pub(crate) struct Search<'p> {
    p: &'p Problem,
    goal: Goal,
    deadline: Option<Instant>,
    split_at: Option<usize>,
    pub(crate) nodes: u64,
    pub(crate) timed_out: bool,
    pub(crate) overflow: bool,
    chosen: Vec<usize>,
    chosen_mask: Vec<u64>,
    pub(crate) best: usize,
    pub(crate) best_set: Option<Vec<usize>>,
    pub(crate) found: Vec<Vec<usize>>,
    pub(crate) subproblems: Vec<Subproblem>,
    slice_scratch: Vec<Vec<usize>>,
    classes: Vec<Vec<u64>>,
    /// Coordinate cells, and the cells before each push.
    cells: Vec<u64>,
    saved_cells: Vec<Vec<u64>>,
}

impl<'p> Search<'p> {
    pub(crate) fn new(p: &'p Problem, goal: Goal, deadline: Option<Instant>) -> Self {
        Search {
            p,
            goal,
            deadline,
            split_at: None,
            nodes: 0,
            timed_out: false,
            overflow: false,
            chosen: Vec::new(),
            chosen_mask: vec![0; p.words],
            best: 0,
            best_set: None,
            found: Vec::new(),
            subproblems: Vec::new(),
            slice_scratch: Vec::new(),
            classes: Vec::new(),
            cells: match &p.symmetric {
                Some((_, len)) if *len > 0 => vec![crate::lattice::low_mask(*len)],
                _ => Vec::new(),
            },
            saved_cells: Vec::new(),
        }
    }

    fn orbits_apply(&self) -> bool {
        self.p.symmetric.is_some() && self.goal == Goal::Maximum
    }

    /// Candidates in the orbit of `v` under the permutations preserving the
    /// current cells.
    fn orbit(&self, v: usize, cand: &[u64]) -> Vec<u64> {
        let (masks, _) = self.p.symmetric.as_ref().expect("symmetric problem");
        let key = |w: usize| {
            let (neg, pos) = masks[w];
            self.cells.iter().map(move |&c| ((neg & c).count_ones(), (pos & c).count_ones()))
        };
        let mut out = vec![0u64; self.p.words];
        for w in iter_words(cand) {
            if key(w).eq(key(v)) {
                set(&mut out, w);
            }
        }
        out
    }

    /// Prunes everything that cannot beat `lower`.
    pub(crate) fn with_lower_bound(mut self, lower: usize) -> Self {
        self.best = lower;
        self
    }

    /// Stops at `depth` branchings and records the open nodes instead.
    pub(crate) fn splitting_at(mut self, depth: usize) -> Self {
        self.split_at = Some(depth);
        self
    }

    pub(crate) fn run(&mut self, chosen: &[usize], cand: Vec<u64>) {
        for &v in chosen {
            self.push(v);
        }
        self.expand(cand, 0);
        for _ in chosen {
            self.pop();
        }
    }

    fn push(&mut self, v: usize) {
        self.chosen.push(v);
        self.chosen_mask[v / 64] |= 1 << (v % 64);
        if let Some((masks, len)) = &self.p.symmetric {
            let (neg, pos) = masks[v];
            let zero = crate::lattice::low_mask(*len) & !(neg | pos);
            let refined = self
                .cells
                .iter()
                .flat_map(|&c| [c & neg, c & zero, c & pos])
                .filter(|&c| c != 0)
                .collect();
            self.saved_cells.push(std::mem::replace(&mut self.cells, refined));
        }
    }

    fn pop(&mut self) {
        let v = self.chosen.pop().expect("nonempty stack");
        self.chosen_mask[v / 64] &= !(1 << (v % 64));
        if let Some(cells) = self.saved_cells.pop() {
            self.cells = cells;
        }
    }

    fn stopped(&self) -> bool {
        self.timed_out || self.overflow
    }

    fn expand(&mut self, mut cand: Vec<u64>, depth: usize) {
        self.nodes += 1;
        if self.nodes & 1023 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.timed_out = true;
                }
            }
        }
        if self.stopped() {
            return;
        }
        let pushed = self.reduce(&mut cand);
        self.visit(cand, depth);
        for _ in 0..pushed {
            self.pop();
        }
    }

    /// Forced inclusions: isolated candidates always (except when enumerating
    /// non-maximum sets), pendant candidates when only the size matters.
    fn reduce(&mut self, cand: &mut [u64]) -> usize {
        let (isolated, pendant) = match self.goal {
            Goal::Maximum => (true, true),
            Goal::Enumerate { maximum, .. } => (maximum, false),
        };
        if !isolated {
            return 0;
        }
        let mut pushed = 0;
        loop {
            let mut changed = false;
            let mut iter_cand = cand.to_vec();
            while let Some(v) = first_in(&iter_cand) {
                clear(&mut iter_cand, v);
                if !test(cand, v) {
                    continue;
                }
                let row = self.p.row(v);
                let deg = count_and(row, cand);
                if deg == 0 || (pendant && deg == 1) {
                    if let Goal::Enumerate { target, .. } = self.goal {
                        if self.chosen.len() >= target {
                            return pushed;
                        }
                    }
                    self.push(v);
                    pushed += 1;
                    clear(cand, v);
                    and_not(cand, row);
                    changed = true;
                }
            }
            if !changed {
                return pushed;
            }
        }
    }

    fn visit(&mut self, cand: Vec<u64>, depth: usize) {
        let size = self.chosen.len();
        let need = match self.goal {
            Goal::Maximum => self.best + 1,
            Goal::Enumerate { target, .. } => {
                if size == target {
                    self.record_found();
                    return;
                }
                target
            }
        };
        let remaining = count(&cand);
        if remaining == 0 {
            self.record_best(None);
            return;
        }
        if size + remaining < need {
            return;
        }
        if size + self.cover_bound(&cand) < need {
            return;
        }
        if let Some(sb) = &self.p.slices {
            let allowed: Vec<u64> = cand.iter().zip(&self.chosen_mask).map(|(a, b)| a | b).collect();
            if sb.bound(&allowed, &mut self.slice_scratch) < need {
                return;
            }
        }
        if let Some(extra) = self.bipartite_solve(&cand) {
            match self.goal {
                Goal::Maximum => {
                    self.record_best(Some(extra));
                    return;
                }
                Goal::Enumerate { .. } => {
                    if size + extra.len() < need {
                        return;
                    }
                }
            }
        }
        if let Some(split_at) = self.split_at {
            if depth >= split_at {
                self.subproblems.push(Subproblem { chosen: self.chosen.clone(), cand });
                return;
            }
        }
        let v = iter_words(&cand)
            .max_by_key(|&v| (count_and(self.p.row(v), &cand), std::cmp::Reverse(v)))
            .expect("nonempty candidates");

        let mut without = cand.clone();
        if self.orbits_apply() {
            and_not(&mut without, &self.orbit(v, &cand));
        } else {
            clear(&mut without, v);
        }
        self.expand(without, depth + 1);
        if self.stopped() {
            return;
        }
        let mut with = cand;
        clear(&mut with, v);
        and_not(&mut with, self.p.row(v));
        self.push(v);
        self.expand(with, depth + 1);
        self.pop();
    }

    fn record_best(&mut self, extra: Option<Vec<usize>>) {
        let total = self.chosen.len() + extra.as_ref().map_or(0, Vec::len);
        let improves = match self.goal {
            Goal::Maximum => total > self.best || self.best_set.is_none() && total >= self.best,
            Goal::Enumerate { .. } => false,
        };
        if improves {
            let mut set = self.chosen.clone();
            set.extend(extra.unwrap_or_default());
            set.sort_unstable();
            self.best = total;
            self.best_set = Some(set);
        }
    }

    fn record_found(&mut self) {
        if let Goal::Enumerate { limit, .. } = self.goal {
            let mut set = self.chosen.clone();
            set.sort_unstable();
            self.found.push(set);
            if self.found.len() > limit {
                self.overflow = true;
            }
        }
    }

    /// Number of cliques in a greedy clique partition of `cand`.
    pub(crate) fn cover_bound(&mut self, cand: &[u64]) -> usize {
        let words = self.p.words;
        let mut used = 0;
        for v in iter_words(cand) {
            let row = self.p.row(v);
            let mut placed = false;
            for class in self.classes[..used].iter_mut() {
                if test(class, v) {
                    for (c, r) in class.iter_mut().zip(row) {
                        *c &= r;
                    }
                    placed = true;
                    break;
                }
            }
            if !placed {
                if used == self.classes.len() {
                    self.classes.push(vec![0; words]);
                }
                let class = &mut self.classes[used];
                for ((c, r), a) in class.iter_mut().zip(row).zip(cand) {
                    *c = r & a;
                }
                used += 1;
            }
        }
        used
    }

    /// If `cand` induces a bipartite graph, a maximum independent set of it.
    fn bipartite_solve(&self, cand: &[u64]) -> Option<Vec<usize>> {
        let words = self.p.words;
        let mut remaining = cand.to_vec();
        let mut side = [vec![0u64; words], vec![0u64; words]];
        let mut frontier = vec![0u64; words];
        let mut next = vec![0u64; words];
        while let Some(s) = first_in(&remaining) {
            clear(&mut remaining, s);
            frontier.iter_mut().for_each(|w| *w = 0);
            set(&mut frontier, s);
            set(&mut side[0], s);
            let mut colour = 0;
            loop {
                next.iter_mut().for_each(|w| *w = 0);
                for u in iter_words(&frontier) {
                    for (a, b) in next.iter_mut().zip(self.p.row(u)) {
                        *a |= b;
                    }
                }
                for (a, c) in next.iter_mut().zip(cand) {
                    *a &= c;
                }
                if next.iter().zip(&side[colour]).any(|(a, b)| a & b != 0) {
                    return None;
                }
                let mut any = false;
                for ((f, a), r) in frontier.iter_mut().zip(&next).zip(remaining.iter_mut()) {
                    *f = a & *r;
                    *r &= !*f;
                    any |= *f != 0;
                }
                if !any {
                    break;
                }
                colour ^= 1;
                for (s, f) in side[colour].iter_mut().zip(&frontier) {
                    *s |= f;
                }
            }
        }
        let left: Vec<usize> = iter_words(&side[0]).collect();
        let right: Vec<usize> = iter_words(&side[1]).collect();
        let adjacency: Vec<Vec<usize>> = left
            .iter()
            .map(|&u| {
                let row = self.p.row(u);
                right.iter().enumerate().filter(|(_, &w)| test(row, w)).map(|(i, _)| i).collect()
            })
            .collect();
        let owner = kuhn(&adjacency, right.len());
        let (l_in, r_in) = konig_independent_set(&adjacency, right.len(), &owner);
        let mut set: Vec<usize> = l_in.into_iter().map(|i| left[i]).chain(r_in.into_iter().map(|i| right[i])).collect();
        set.sort_unstable();
        Some(set)
    }
}

#[inline]
fn test(words: &[u64], v: usize) -> bool {
    words[v / 64] >> (v % 64) & 1 == 1
}

#[inline]
fn set(words: &mut [u64], v: usize) {
    words[v / 64] |= 1 << (v % 64);
}

#[inline]
fn clear(words: &mut [u64], v: usize) {
    words[v / 64] &= !(1 << (v % 64));
}

#[inline]
fn and_not(words: &mut [u64], other: &[u64]) {
    for (a, b) in words.iter_mut().zip(other) {
        *a &= !b;
    }
}
