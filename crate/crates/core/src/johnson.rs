//! Four-distance sets in R^9 containing the Johnson set of 4-subsets of a
//! 9-set.
//!
//! Every vector is stored with its coordinates multiplied by 3, so all
//! entries are integers and squared distances are 9 times the true ones.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diamgraph::DiameterGraph;
use crate::error::{Error, JohnsonError};
use crate::families::{frak_m, Extremal};
use crate::lattice::{binomial, generate, Signature, TritVector};
use crate::solver::{independence_number_with, SolverConfig};

pub const DIM: usize = 9;
/// The squared distances of the Johnson set, scaled by 9.
pub const ALLOWED_SCALED: [u32; 4] = [18, 36, 54, 72];

/// A vector of `R^n` with all coordinates multiplied by 3.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ScaledVector(Vec<i32>);

impl ScaledVector {
    pub fn new(scaled: Vec<i32>) -> Self {
        ScaledVector(scaled)
    }

    pub fn scaled(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the true coordinates, times 3.
    pub fn scaled_sum(&self) -> i32 {
        self.0.iter().sum()
    }

    /// Nine times the true squared distance.
    pub fn scaled_distance(&self, other: &ScaledVector) -> u32 {
        self.0.iter().zip(&other.0).map(|(a, b)| ((a - b) * (a - b)) as u32).sum()
    }
}

impl fmt::Display for ScaledVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, &v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            if v % 3 == 0 {
                write!(f, "{}", v / 3)?;
            } else {
                write!(f, "{v}/3")?;
            }
        }
        f.write_str(")")
    }
}

/// Exact rendering of a scaled squared distance.
pub fn format_scaled_distance(d: u32) -> String {
    if d % 9 == 0 {
        (d / 9).to_string()
    } else {
        let g = gcd(d, 9);
        format!("{}/{}", d / g, 9 / g)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The `m`-subsets of `{1..n}` as 0/1 vectors.
pub fn johnson_embedding(n: usize, m: usize) -> Result<Vec<ScaledVector>, JohnsonError> {
    if m == 0 || m >= n || n > 64 {
        return Err(JohnsonError::OutOfRange(format!("need 1 <= m < n <= 64, got n = {n}, m = {m}")));
    }
    let sig = Signature::new(0, n - m, m).map_err(|e| JohnsonError::OutOfRange(e.to_string()))?;
    let points = generate(sig).map_err(|e| JohnsonError::OutOfRange(e.to_string()))?;
    Ok(points.iter().map(|x| ScaledVector(x.entries().iter().map(|&e| 3 * e as i32).collect())).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pool {
    I,
    Ii,
    Iii,
    Iv,
}

impl Pool {
    pub const ALL: [Pool; 4] = [Pool::I, Pool::Ii, Pool::Iii, Pool::Iv];

    /// `(scaled value, multiplicity)` pattern of the pool.
    pub fn pattern(self) -> &'static [(i32, usize)] {
        match self {
            Pool::I => &[(2, 7), (-1, 2)],
            Pool::Ii => &[(2, 8), (-4, 1)],
            Pool::Iii => &[(4, 1), (1, 8)],
            Pool::Iv => &[(4, 2), (1, 6), (-2, 1)],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Pool::I => "i",
            Pool::Ii => "ii",
            Pool::Iii => "iii",
            Pool::Iv => "iv",
        }
    }

    /// Every arrangement of the pattern, ascending.
    pub fn members(self) -> Vec<ScaledVector> {
        let mut values: Vec<i32> = self.pattern().iter().flat_map(|&(v, c)| std::iter::repeat_n(v, c)).collect();
        values.sort_unstable();
        let mut out = vec![ScaledVector(values.clone())];
        while next_permutation(&mut values) {
            out.push(ScaledVector(values.clone()));
        }
        out
    }

    pub fn contains(self, x: &ScaledVector) -> bool {
        let mut a = x.0.clone();
        a.sort_unstable();
        let mut b: Vec<i32> = self.pattern().iter().flat_map(|&(v, c)| std::iter::repeat_n(v, c)).collect();
        b.sort_unstable();
        a == b
    }
}

fn next_permutation(v: &mut [i32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The four pools of vectors that can join the Johnson set.
pub fn candidate_pools() -> Vec<(Pool, Vec<ScaledVector>)> {
    Pool::ALL.iter().map(|&p| (p, p.members())).collect()
}

/// Pool (iv) to `L(1, 6, 2)`: scaled `-2, 1, 4` become `-1, 0, 1`.
pub fn pool_iv_to_lattice(x: &ScaledVector) -> Result<TritVector, JohnsonError> {
    if !Pool::Iv.contains(x) {
        return Err(JohnsonError::NotInPool(x.to_string(), "iv"));
    }
    let entries: Vec<i8> = x.0.iter().map(|&v| ((v - 1) / 3) as i8).collect();
    Ok(TritVector::from_entries(&entries).expect("pool (iv) maps into trits"))
}

pub fn lattice_to_pool_iv(x: &TritVector) -> Result<ScaledVector, JohnsonError> {
    if x.signature() != Signature::new(1, 6, 2).expect("valid signature") {
        return Err(JohnsonError::OutOfRange(format!("{x} is not in L(1,6,2)")));
    }
    Ok(ScaledVector(x.entries().iter().map(|&e| 3 * e as i32 + 1).collect()))
}

/// Pool (iv) paired with its lattice images, in pool order.
pub fn pool_iv_isometry() -> Vec<(ScaledVector, TritVector)> {
    Pool::Iv
        .members()
        .into_iter()
        .map(|x| {
            let t = pool_iv_to_lattice(&x).expect("member of pool (iv)");
            (x, t)
        })
        .collect()
}

/// The pool (iv) vectors at an allowed distance from every chosen pool (ii)
/// vector: those without `4/3` where a chosen vector has `-4/3`.
pub fn compat_allowed(chosen_ii: &[ScaledVector]) -> Result<Vec<ScaledVector>, JohnsonError> {
    let mut blocked = BTreeSet::new();
    for x in chosen_ii {
        if !Pool::Ii.contains(x) {
            return Err(JohnsonError::NotInPool(x.to_string(), "ii"));
        }
        blocked.insert(x.0.iter().position(|&v| v == -4).expect("pool (ii) has one -4/3"));
    }
    Ok(Pool::Iv.members().into_iter().filter(|y| blocked.iter().all(|&i| y.0[i] != 4)).collect())
}

/// The `t` pool (ii) vectors whose `-4/3` is among the first `t` coordinates.
pub fn pool_ii_prefix(t: usize) -> Result<Vec<ScaledVector>, JohnsonError> {
    if t > DIM {
        return Err(JohnsonError::OutOfRange(format!("t = {t} exceeds {DIM}")));
    }
    Ok((0..t)
        .map(|i| {
            let mut v = vec![2; DIM];
            v[i] = -4;
            ScaledVector(v)
        })
        .collect())
}

/// `|J ∪ pool(i) ∪ pool(iii)|`.
pub fn base_size() -> usize {
    binomial(9, 4) as usize + Pool::I.members().len() + Pool::Iii.members().len()
}

fn frak_m_from_zero(k: usize) -> u128 {
    // frak_m(0) = C(3,3) + 2 = 3: the whole of L(1,0,2)
    if k == 0 {
        3
    } else {
        frak_m(k).expect("k >= 1")
    }
}

/// Bound on a four-distance superset of the Johnson set that contains the
/// first `t` pool (ii) vectors, for `1 <= t <= 6`, as a sum of parts.
pub fn t_bound(t: usize) -> Result<u128, JohnsonError> {
    if !(1..=6).contains(&t) {
        return Err(JohnsonError::OutOfRange(format!("t = {t} must be in 1..=6")));
    }
    let t128 = t as u128;
    Ok(base_size() as u128 + t128 + frak_m_from_zero(6 - t) + t128 * binomial(9 - t as u64, 2))
}

/// The same bound from the closed cubic `t^3/3 - 9t^2/2 + 31t/6 + 257`.
pub fn t_bound_cubic(t: usize) -> Result<u128, JohnsonError> {
    if !(1..=6).contains(&t) {
        return Err(JohnsonError::OutOfRange(format!("t = {t} must be in 1..=6")));
    }
    let t = t as i128;
    let six_times = 2 * t * t * t - 27 * t * t + 31 * t + 1542;
    assert_eq!(six_times % 6, 0, "cubic is integral");
    Ok((six_times / 6) as u128)
}

/// What survives in pool (iv) once `t >= 7` pool (ii) vectors are chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LargeTReport {
    pub t: usize,
    pub survivors: Vec<ScaledVector>,
    /// Largest subset of the survivors at allowed distances from each other.
    pub usable: usize,
    /// `base_size() + t + usable`.
    pub bound: usize,
}

pub fn large_t_analysis(t: usize) -> Result<LargeTReport, Error> {
    if !(7..=9).contains(&t) {
        return Err(JohnsonError::OutOfRange(format!("t = {t} must be in 7..=9")).into());
    }
    let chosen = pool_ii_prefix(t)?;
    let survivors: Vec<ScaledVector> = Pool::Iv
        .members()
        .into_iter()
        .filter(|y| chosen.iter().all(|x| ALLOWED_SCALED.contains(&x.scaled_distance(y))))
        .collect();
    let usable = if survivors.len() < 2 {
        survivors.len()
    } else {
        let points = survivors.iter().map(pool_iv_to_lattice).collect::<Result<Vec<_>, _>>()?;
        // inside pool (iv) the only forbidden distance is the diameter of L(1,6,2)
        let g = DiameterGraph::build(&points, 10)?;
        independence_number_with(&g, &SolverConfig::default())?.alpha
    };
    Ok(LargeTReport { t, survivors, usable, bound: base_size() + t + usable })
}

/// The pool (iv) part of an extremal set: the image of `X_6`, `Y_6` or `Z_6`.
pub fn pool_iv_part(which: Extremal) -> Result<Vec<ScaledVector>, Error> {
    let f = which.family(6)?;
    Ok(f.members().iter().map(lattice_to_pool_iv).collect::<Result<Vec<_>, _>>()?)
}

/// Johnson set, pools (i) and (iii), the pool (ii) vector with `-4/3` first,
/// and the image of `X_6`, `Y_6` or `Z_6` in pool (iv).
pub fn extremal_258(which: Extremal) -> Result<Vec<ScaledVector>, Error> {
    let mut out = johnson_embedding(DIM, 4)?;
    out.extend(Pool::I.members());
    out.extend(Pool::Iii.members());
    out.extend(pool_ii_prefix(1)?);
    out.extend(pool_iv_part(which)?);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub a: String,
    pub b: String,
    pub squared_distance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JohnsonReport {
    pub size: usize,
    /// Distinct squared distances, exact.
    pub distance_set: Vec<String>,
    pub contains_johnson: bool,
    /// No vector of any pool can be added without a fifth distance.
    pub maximal: bool,
    /// Pairs inside the set at a squared distance outside `{2, 4, 6, 8}`.
    pub violations: Vec<Violation>,
    /// Pool vectors outside the set that could be added.
    pub addable: Vec<String>,
}

impl JohnsonReport {
    pub fn passed(&self, expected_size: usize) -> bool {
        self.size == expected_size
            && self.violations.is_empty()
            && self.maximal
            && self.contains_johnson
            && self.distance_set.len() == 4
    }
}

/// Size, distance set, and maximality against the pools.
pub fn verify_four_distance(set: &[ScaledVector]) -> Result<JohnsonReport, JohnsonError> {
    if let Some(x) = set.iter().find(|x| x.len() != DIM) {
        return Err(JohnsonError::OutOfRange(format!("{x} does not have {DIM} coordinates")));
    }
    let members: BTreeSet<&ScaledVector> = set.iter().collect();
    let mut distances = BTreeSet::new();
    let mut violations = Vec::new();
    for (i, a) in set.iter().enumerate() {
        for b in &set[i + 1..] {
            let d = a.scaled_distance(b);
            distances.insert(d);
            if !ALLOWED_SCALED.contains(&d) {
                violations.push(Violation {
                    a: a.to_string(),
                    b: b.to_string(),
                    squared_distance: format_scaled_distance(d),
                });
            }
        }
    }
    let johnson = johnson_embedding(DIM, 4)?;
    let contains_johnson = johnson.iter().all(|x| members.contains(x));
    let addable: Vec<String> = Pool::ALL
        .iter()
        .flat_map(|p| p.members())
        .filter(|y| !members.contains(y))
        .filter(|y| set.iter().all(|x| ALLOWED_SCALED.contains(&x.scaled_distance(y))))
        .map(|y| y.to_string())
        .collect();
    Ok(JohnsonReport {
        size: set.len(),
        distance_set: distances.into_iter().map(format_scaled_distance).collect(),
        contains_johnson,
        maximal: addable.is_empty(),
        violations,
        addable,
    })
}

pub fn verify_258(which: Extremal) -> Result<JohnsonReport, Error> {
    Ok(verify_four_distance(&extremal_258(which)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_are_complete() {
        let mut v = vec![1, 1, 2];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen, vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]);
    }

    #[test]
    fn formatting() {
        assert_eq!(ScaledVector::new(vec![-4, 3, 2]).to_string(), "(-4/3, 1, 2/3)");
        assert_eq!(format_scaled_distance(90), "10");
        assert_eq!(format_scaled_distance(21), "7/3");
    }

    #[test]
    fn small_embedding() {
        let j = johnson_embedding(2, 1).unwrap();
        assert_eq!(j.len(), 2);
        assert_eq!(j[0].scaled_distance(&j[1]), 18);
        assert!(johnson_embedding(3, 3).is_err());
    }
}
