//! Small independent oracles shared by the integration tests.
#![allow(dead_code)]

use diamfree::{DiameterGraph, TritVector};

pub fn sq_dist(a: &[i8], b: &[i8]) -> u32 {
    a.iter().zip(b).map(|(&x, &y)| ((x - y) as i32).pow(2) as u32).sum()
}

pub fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

pub fn multinomial(m: usize, k: usize, l: usize) -> u128 {
    factorial((m + k + l) as u64) / (factorial(m as u64) * factorial(k as u64) * factorial(l as u64))
}

pub fn choose(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    factorial(n) / (factorial(r) * factorial(n - r))
}

/// Every vector of `L(m, k, l)` by scanning all `3^n` words.
pub fn scan_lattice(m: usize, k: usize, l: usize) -> Vec<Vec<i8>> {
    let n = m + k + l;
    let mut out = Vec::new();
    for code in 0..3u64.pow(n as u32) {
        let mut c = code;
        let v: Vec<i8> = (0..n)
            .map(|_| {
                let d = (c % 3) as i8 - 1;
                c /= 3;
                d
            })
            .collect();
        let count = |t: i8| v.iter().filter(|&&x| x == t).count();
        if count(-1) == m && count(0) == k && count(1) == l {
            out.push(v);
        }
    }
    out
}

pub fn adjacency(points: &[Vec<i8>], threshold: u32) -> Vec<Vec<bool>> {
    points.iter().map(|a| points.iter().map(|b| a != b && sq_dist(a, b) >= threshold).collect()).collect()
}

pub fn adjacency_of(g: &DiameterGraph) -> Vec<Vec<bool>> {
    (0..g.len()).map(|u| (0..g.len()).map(|v| g.has_edge(u, v)).collect()).collect()
}

/// Largest independent set size and every independent set of that size,
/// by plain include/exclude recursion over vertices in index order.
pub fn brute_force_mis(adj: &[Vec<bool>]) -> (usize, Vec<Vec<usize>>) {
    fn go(adj: &[Vec<bool>], v: usize, chosen: &mut Vec<usize>, best: &mut usize, all: &mut Vec<Vec<usize>>) {
        let n = adj.len();
        if chosen.len() + (n - v) < *best {
            return;
        }
        if v == n {
            if chosen.len() > *best {
                *best = chosen.len();
                all.clear();
            }
            if chosen.len() == *best {
                all.push(chosen.clone());
            }
            return;
        }
        if chosen.iter().all(|&u| !adj[u][v]) {
            chosen.push(v);
            go(adj, v + 1, chosen, best, all);
            chosen.pop();
        }
        go(adj, v + 1, chosen, best, all);
    }
    let mut best = 0;
    let mut all = Vec::new();
    go(adj, 0, &mut Vec::new(), &mut best, &mut all);
    all.sort();
    (best, all)
}

/// Every independent set of exactly `size` vertices, ascending.
pub fn brute_force_of_size(adj: &[Vec<bool>], size: usize) -> Vec<Vec<usize>> {
    fn go(adj: &[Vec<bool>], v: usize, size: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if chosen.len() == size {
            out.push(chosen.clone());
            return;
        }
        if adj.len() - v < size - chosen.len() {
            return;
        }
        if chosen.iter().all(|&u| !adj[u][v]) {
            chosen.push(v);
            go(adj, v + 1, size, chosen, out);
            chosen.pop();
        }
        go(adj, v + 1, size, chosen, out);
    }
    let mut out = Vec::new();
    go(adj, 0, size, &mut Vec::new(), &mut out);
    out
}

pub fn entries(x: &TritVector) -> Vec<i8> {
    x.entries()
}

/// No two points at squared distance `>= threshold`.
pub fn avoids(points: &[TritVector], threshold: u32) -> bool {
    let e: Vec<Vec<i8>> = points.iter().map(entries).collect();
    e.iter().enumerate().all(|(i, a)| e[i + 1..].iter().all(|b| sq_dist(a, b) < threshold))
}

/// Least sorted row matrix over every column permutation, by trying them all.
pub fn brute_force_form(rows: &[TritVector]) -> Vec<u8> {
    let n = rows.first().map_or(0, TritVector::len);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u8>> = None;
    loop {
        let mut images: Vec<String> = rows
            .iter()
            .map(|x| {
                perm.iter()
                    .map(|&i| match x.get(i) {
                        1 => '+',
                        -1 => '-',
                        _ => '0',
                    })
                    .collect()
            })
            .collect();
        images.sort();
        let bytes = images.concat().into_bytes();
        if best.as_ref().is_none_or(|b| bytes < *b) {
            best = Some(bytes);
        }
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    best.unwrap_or_default()
}
