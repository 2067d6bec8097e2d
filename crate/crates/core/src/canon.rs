//! Canonical forms of families under coordinate permutations.
//!
//! The form of `F` is the least row-sorted matrix `sort(σF)` over all
//! permutations `σ`, comparing rows as trit strings byte by byte
//! (`'+' < '-' < '0'`). It is built one row at a time: with the columns
//! already committed to an ordered partition, the least image of a row is
//! obtained by sorting its entries inside each cell, and every row reaching
//! the least image is tried. Branches that reach the same partition are
//! merged.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CanonError;
use crate::families::Family;
use crate::lattice::TritVector;

pub const MAX_CANON_LEN: usize = 16;
pub const MAX_STABILIZER_LEN: usize = 12;
/// Up to this length `classify` lists whole orbits instead of searching
/// every family.
pub const ORBIT_LISTING_LEN: usize = 8;

/// Least sorted row matrix, stored as the concatenated trit strings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    width: usize,
    bytes: Vec<u8>,
}

impl CanonicalForm {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> impl Iterator<Item = &str> {
        self.bytes.chunks(self.width.max(1)).map(|r| std::str::from_utf8(r).expect("trit strings are ASCII"))
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            f.write_str(row)?;
        }
        Ok(())
    }
}

/// A canonical form with a permutation reaching it: `sort(F.permute(p))`
/// equals the form, where `x.permute(p)[i] = x[p[i]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub rows: Vec<String>,
    pub permutation: Vec<usize>,
    /// `permutation` in cycle notation on 0-based coordinates.
    pub cycles: String,
}

struct Search {
    form: Vec<u8>,
    /// Surviving ordered partitions with the rows already placed.
    leaves: BTreeMap<Vec<u64>, Vec<bool>>,
}

fn image(x: &TritVector, cells: &[u64], out: &mut Vec<u8>) {
    for &c in cells {
        let p = (x.pos_mask() & c).count_ones();
        let q = (x.neg_mask() & c).count_ones();
        let z = c.count_ones() - p - q;
        out.extend(std::iter::repeat_n(b'+', p as usize));
        out.extend(std::iter::repeat_n(b'-', q as usize));
        out.extend(std::iter::repeat_n(b'0', z as usize));
    }
}

fn refine(x: &TritVector, cells: &[u64]) -> Vec<u64> {
    cells
        .iter()
        .flat_map(|&c| [c & x.pos_mask(), c & x.neg_mask(), c & x.zero_mask()])
        .filter(|&c| c != 0)
        .collect()
}

/// Once a partition is discrete the permutation is fixed and the rest of
/// the matrix is just the sorted images of the unused rows.
fn finish(rows: &[TritVector], cells: &[u64], used: &[bool], prefix: &[u8], n: usize) -> Vec<u8> {
    let mut rest: Vec<Vec<u8>> = rows
        .iter()
        .zip(used)
        .filter(|(_, &u)| !u)
        .map(|(x, _)| {
            let mut buf = Vec::with_capacity(n);
            image(x, cells, &mut buf);
            buf
        })
        .collect();
    rest.sort_unstable();
    let mut out = prefix.to_vec();
    out.extend(rest.concat());
    out
}

fn search(rows: &[TritVector], n: usize) -> Search {
    let mut form = Vec::with_capacity(rows.len() * n);
    let mut level: BTreeMap<Vec<u64>, Vec<bool>> = BTreeMap::new();
    let all = if n == 0 { Vec::new() } else { vec![crate::lattice::low_mask(n)] };
    level.insert(all, vec![false; rows.len()]);
    // best full matrix among discrete leaves, with every leaf reaching it
    let mut complete: Option<(Vec<u8>, BTreeMap<Vec<u64>, Vec<bool>>)> = None;
    let mut buf = Vec::with_capacity(n);
    for step in 0..rows.len() {
        let discrete: Vec<Vec<u64>> = level.keys().filter(|c| c.len() == n && n > 0).cloned().collect();
        for cells in discrete {
            let used = level.remove(&cells).expect("key listed above");
            let full = finish(rows, &cells, &used, &form, n);
            match &mut complete {
                Some((best, leaves)) if *best == full => {
                    leaves.insert(cells, used);
                }
                Some((best, _)) if *best < full => {}
                _ => complete = Some((full, BTreeMap::from([(cells, used)]))),
            }
        }
        if level.is_empty() {
            break;
        }
        let mut best: Option<Vec<u8>> = None;
        let mut next: BTreeMap<Vec<u64>, Vec<bool>> = BTreeMap::new();
        for (cells, used) in &level {
            for (r, x) in rows.iter().enumerate() {
                if used[r] {
                    continue;
                }
                buf.clear();
                image(x, cells, &mut buf);
                let better = match &best {
                    None => true,
                    Some(b) => buf < *b,
                };
                if better {
                    best = Some(buf.clone());
                    next.clear();
                }
                if best.as_deref() == Some(&buf[..]) {
                    let mut u = used.clone();
                    u[r] = true;
                    next.entry(refine(x, cells)).or_insert(u);
                }
            }
        }
        let best = best.expect("an unused row remains");
        if let Some((full, _)) = &complete {
            let row = &full[step * n..(step + 1) * n];
            if row < &best[..] {
                level.clear();
                break;
            }
            if &best[..] < row {
                complete = None;
            }
        }
        form.extend(best);
        level = next;
    }
    match complete {
        Some((full, leaves)) => {
            level.extend(leaves);
            Search { form: full, leaves: level }
        }
        None => Search { form, leaves: level },
    }
}

fn check(f: &Family, max: usize) -> Result<usize, CanonError> {
    let n = f.signature().n();
    if n > max {
        return Err(CanonError::TooLong { n, max });
    }
    Ok(n)
}

fn leaf_permutation(cells: &[u64]) -> Vec<usize> {
    let mut perm = Vec::new();
    for &c in cells {
        let mut c = c;
        while c != 0 {
            perm.push(c.trailing_zeros() as usize);
            c &= c - 1;
        }
    }
    perm
}

pub fn canonical_form(f: &Family) -> Result<CanonicalForm, CanonError> {
    let n = check(f, MAX_CANON_LEN)?;
    Ok(CanonicalForm { width: n, bytes: search(f.members(), n).form })
}

/// Canonical form plus one permutation attaining it.
pub fn certificate(f: &Family) -> Result<(CanonicalForm, Certificate), CanonError> {
    let n = check(f, MAX_CANON_LEN)?;
    let s = search(f.members(), n);
    let cells = s.leaves.keys().next().cloned().unwrap_or_default();
    let mut permutation = leaf_permutation(&cells);
    if permutation.is_empty() {
        permutation = (0..n).collect();
    }
    let form = CanonicalForm { width: n, bytes: s.form };
    let rows = form.rows().map(str::to_owned).collect();
    let cycles = cycle_notation(&permutation);
    Ok((form, Certificate { rows, permutation, cycles }))
}

/// Number of coordinate permutations mapping `f` onto itself.
pub fn stabilizer_order(f: &Family) -> Result<u128, CanonError> {
    let n = check(f, MAX_STABILIZER_LEN)?;
    let s = search(f.members(), n);
    let factorial = |k: u32| (1..=k as u128).product::<u128>();
    Ok(s.leaves.keys().map(|cells| cells.iter().map(|c| factorial(c.count_ones())).product::<u128>()).sum())
}

/// `n! / stabilizer_order(f)`.
pub fn orbit_length(f: &Family) -> Result<u128, CanonError> {
    let n = f.signature().n() as u128;
    Ok((1..=n).product::<u128>() / stabilizer_order(f)?)
}

/// Applies `perm` to every member (`x.permute(perm)[i] = x[perm[i]]`).
pub fn permute(f: &Family, perm: &[usize]) -> Family {
    Family::new(f.signature(), f.name(), f.members().iter().map(|x| x.permute(perm)))
        .expect("permutations preserve the lattice")
}

/// `Some(p)` with `permute(f, p) == g` as sets when the families are
/// isomorphic, `None` otherwise.
pub fn are_isomorphic(f: &Family, g: &Family) -> Result<Option<Vec<usize>>, CanonError> {
    if f.signature() != g.signature() {
        return Err(CanonError::SignatureMismatch { left: f.signature().to_string(), right: g.signature().to_string() });
    }
    if f.len() != g.len() {
        return Ok(None);
    }
    let (cf, pf) = certificate(f)?;
    let (cg, pg) = certificate(g)?;
    if cf != cg {
        return Ok(None);
    }
    let mut inverse_g = vec![0; pg.permutation.len()];
    for (i, &p) in pg.permutation.iter().enumerate() {
        inverse_g[p] = i;
    }
    Ok(Some(inverse_g.iter().map(|&i| pf.permutation[i]).collect()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoClass {
    pub form: CanonicalForm,
    /// Member with the least sorted member list.
    pub representative: Family,
    /// Positions in the input list, ascending.
    pub members: Vec<usize>,
}

impl IsoClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Groups families by canonical form; classes are ordered by form.
pub fn classify(families: &[Family]) -> Result<Vec<IsoClass>, CanonError> {
    if let Some(first) = families.first() {
        if let Some(bad) = families.iter().find(|f| f.signature() != first.signature()) {
            return Err(CanonError::SignatureMismatch {
                left: first.signature().to_string(),
                right: bad.signature().to_string(),
            });
        }
    }
    let mut classes: BTreeMap<CanonicalForm, Vec<usize>> = BTreeMap::new();
    let n = families.first().map_or(0, |f| f.signature().n());
    let mut known: HashMap<Vec<TritVector>, CanonicalForm> = HashMap::new();
    for (i, f) in families.iter().enumerate() {
        let form = match known.get(f.members()) {
            Some(form) => form.clone(),
            None => {
                let form = canonical_form(f)?;
                if n <= ORBIT_LISTING_LEN {
                    let mut perm: Vec<usize> = (0..n).collect();
                    loop {
                        known.insert(permute(f, &perm).members().to_vec(), form.clone());
                        if !next_permutation(&mut perm) {
                            break;
                        }
                    }
                }
                form
            }
        };
        classes.entry(form).or_default().push(i);
    }
    Ok(classes
        .into_iter()
        .map(|(form, members)| {
            let rep = members
                .iter()
                .map(|&i| &families[i])
                .min_by(|a, b| a.members().cmp(b.members()))
                .expect("nonempty class")
                .clone();
            IsoClass { form, representative: rep, members }
        })
        .collect())
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("p[i] qualifies");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Cycle notation on 0-based points, fixed points omitted; `()` for the identity.
pub fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i.to_string());
            i = perm[i];
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}
