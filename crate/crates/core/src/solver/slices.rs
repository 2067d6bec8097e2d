//! Zero-slice averaging bound for subgraphs of a lattice graph.
//!
//! For a zero set `S` of coordinates, let `Z_S` be the vertices that are zero
//! on all of `S`. Deleting the coordinates in `S` maps `Z_S` isometrically
//! into `L(m, k - |S|, l)`, so an independent set meets `Z_S` in at most
//! `cap[|S|]` vertices (the independence number of that smaller lattice at the
//! same threshold). Each vertex of `Z_S` is zero on exactly `k - |S|` further
//! coordinates, so
//!
//! ```text
//! (k - |S|) * |X ∩ Z_S| = sum over j not in S of |X ∩ Z_{S ∪ {j}}|
//! ```
//!
//! and bounds on the children give a bound on the parent.

use crate::bitset::count_and;
use crate::lattice::TritVector;

#[derive(Clone, Debug)]
pub(crate) struct SliceBound {
    zeros: usize,
    /// `levels[s]` holds the zero sets of size `s`.
    levels: Vec<Vec<SliceNode>>,
    caps: Vec<usize>,
}

#[derive(Clone, Debug)]
struct SliceNode {
    members: Vec<u64>,
    children: Vec<usize>,
}

impl SliceBound {
    /// `caps[s]` must bound the independence number of every `Z_S` with
    /// `|S| = s`; `caps[0]` may be `usize::MAX`. `depth` limits how many
    /// levels below the root are tracked.
    pub(crate) fn new(vertices: &[TritVector], zeros: usize, caps: Vec<usize>, depth: usize) -> Self {
        assert!(!vertices.is_empty());
        assert_eq!(caps.len(), zeros + 1);
        let n = vertices[0].len();
        let words = vertices.len().div_ceil(64);
        let depth = depth.min(zeros);
        let mut levels: Vec<Vec<SliceNode>> = Vec::with_capacity(depth + 1);
        let mut keys: Vec<Vec<u64>> = Vec::with_capacity(depth + 1);
        for s in 0..=depth {
            let mut level_keys: Vec<u64> = subsets_of_size(n, s);
            level_keys.sort_unstable();
            let nodes = level_keys
                .iter()
                .map(|&set| {
                    let mut members = vec![0u64; words];
                    for (v, x) in vertices.iter().enumerate() {
                        if x.zero_mask() & set == set {
                            members[v / 64] |= 1 << (v % 64);
                        }
                    }
                    SliceNode { members, children: Vec::new() }
                })
                .collect();
            levels.push(nodes);
            keys.push(level_keys);
        }
        for s in 0..depth {
            for (idx, &set) in keys[s].iter().enumerate() {
                let children = (0..n)
                    .filter(|j| set >> j & 1 == 0)
                    .map(|j| keys[s + 1].binary_search(&(set | 1 << j)).expect("child key"))
                    .collect();
                levels[s][idx].children = children;
            }
        }
        SliceBound { zeros, levels, caps }
    }

    /// Upper bound on any independent set contained in `allowed`.
    pub(crate) fn bound(&self, allowed: &[u64], scratch: &mut Vec<Vec<usize>>) -> usize {
        let depth = self.levels.len() - 1;
        scratch.resize(self.levels.len(), Vec::new());
        for s in (0..=depth).rev() {
            let (below, here) = scratch.split_at_mut(s + 1);
            let values = &mut below[s];
            values.clear();
            for node in &self.levels[s] {
                let mut v = count_and(&node.members, allowed).min(self.caps[s]);
                if s < depth {
                    let child_values = &here[0];
                    let sum: usize = node.children.iter().map(|&c| child_values[c]).sum();
                    v = v.min(sum / (self.zeros - s));
                }
                values.push(v);
            }
        }
        scratch[0][0]
    }
}

fn subsets_of_size(n: usize, s: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, left: usize, acc: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < left {
                break;
            }
            rec(i + 1, n, left - 1, acc | 1 << i, out);
        }
    }
    rec(0, n, s, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{generate, Signature};

    #[test]
    fn subset_counts() {
        assert_eq!(subsets_of_size(5, 2).len(), 10);
        assert_eq!(subsets_of_size(9, 0), vec![0]);
    }

    #[test]
    fn root_bound_is_averaging_value() {
        // L(1,5,2) with caps of the true values below it: floor(8 * 37 / 5) = 59
        let pts = generate(Signature::new(1, 5, 2).unwrap()).unwrap();
        let caps = vec![usize::MAX, 37, 22, 12, 6, 3];
        let sb = SliceBound::new(&pts, 5, caps, 5);
        let all = crate::bitset::VertexSet::full(pts.len());
        let mut scratch = Vec::new();
        assert_eq!(sb.bound(all.words(), &mut scratch), 59);
        let empty = crate::bitset::VertexSet::new(pts.len());
        assert_eq!(sb.bound(empty.words(), &mut scratch), 0);
    }
}
