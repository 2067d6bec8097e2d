//! Signed ternary point sets `L(m, k, l)`.
//!
//! A point of `L(m, k, l)` is a vector of length `n = m + k + l` with exactly
//! `m` entries equal to `-1`, `k` entries equal to `0` and `l` entries equal to
//! `+1`. Points are stored as two coordinate bitmasks so that squared
//! distances reduce to popcounts.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::LatticeError;

/// Largest supported vector length (one machine word per mask).
pub const MAX_LEN: usize = 64;

/// Default cap on the number of points [`generate`] will materialize.
pub const DEFAULT_ENUMERATION_LIMIT: u128 = 10_000_000;

/// The triple `(m, k, l)`: counts of `-1`, `0` and `+1` entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[usize; 3]", into = "[usize; 3]")]
pub struct Signature {
    m: usize,
    k: usize,
    l: usize,
}

impl Signature {
    pub fn new(m: usize, k: usize, l: usize) -> Result<Self, LatticeError> {
        let n = m + k + l;
        if n == 0 {
            return Err(LatticeError::EmptySignature);
        }
        if n > MAX_LEN {
            return Err(LatticeError::TooLong { n, max: MAX_LEN });
        }
        Ok(Signature { m, k, l })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n(&self) -> usize {
        self.m + self.k + self.l
    }

    /// `n! / (m! k! l!)`.
    pub fn cardinality(&self) -> u128 {
        binomial(self.n() as u64, self.m as u64) * binomial((self.k + self.l) as u64, self.k as u64)
    }

    /// Signature of `-L(m, k, l)`, which is `L(l, k, m)`.
    pub fn negated(&self) -> Signature {
        Signature { m: self.l, k: self.k, l: self.m }
    }

    /// Signature of a zero slice: the points with a `0` at a fixed coordinate,
    /// with that coordinate deleted.
    pub fn zero_slice(&self) -> Option<Signature> {
        if self.k == 0 || self.n() == 1 {
            None
        } else {
            Some(Signature { m: self.m, k: self.k - 1, l: self.l })
        }
    }

    pub fn contains(&self, x: &TritVector) -> bool {
        x.len() == self.n()
            && x.neg.count_ones() as usize == self.m
            && x.pos.count_ones() as usize == self.l
    }
}

impl TryFrom<[usize; 3]> for Signature {
    type Error = LatticeError;

    fn try_from(v: [usize; 3]) -> Result<Self, Self::Error> {
        Signature::new(v[0], v[1], v[2])
    }
}

impl From<Signature> for [usize; 3] {
    fn from(s: Signature) -> Self {
        [s.m, s.k, s.l]
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{},{})", self.m, self.k, self.l)
    }
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// A vector over `{-1, 0, +1}`.
///
/// Bit `i` of `neg` (resp. `pos`) is set when coordinate `i` holds `-1`
/// (resp. `+1`). Coordinate 0 is the first entry of the printed vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct TritVector {
    len: u8,
    neg: u64,
    pos: u64,
}

impl TritVector {
    pub fn zeros(len: usize) -> Result<Self, LatticeError> {
        if len > MAX_LEN {
            return Err(LatticeError::TooLong { n: len, max: MAX_LEN });
        }
        Ok(TritVector { len: len as u8, neg: 0, pos: 0 })
    }

    pub fn from_entries(entries: &[i8]) -> Result<Self, LatticeError> {
        let mut v = TritVector::zeros(entries.len())?;
        for (i, &e) in entries.iter().enumerate() {
            match e {
                -1 => v.neg |= 1 << i,
                0 => {}
                1 => v.pos |= 1 << i,
                other => return Err(LatticeError::InvalidEntry(other as i64)),
            }
        }
        Ok(v)
    }

    /// Builds a vector from raw masks. The masks must be disjoint and fit in `len` bits.
    pub fn from_masks(len: usize, neg: u64, pos: u64) -> Result<Self, LatticeError> {
        if len > MAX_LEN {
            return Err(LatticeError::TooLong { n: len, max: MAX_LEN });
        }
        let span = low_mask(len);
        if neg & pos != 0 || (neg | pos) & !span != 0 {
            return Err(LatticeError::InvalidMasks);
        }
        Ok(TritVector { len: len as u8, neg, pos })
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn neg_mask(&self) -> u64 {
        self.neg
    }

    pub fn pos_mask(&self) -> u64 {
        self.pos
    }

    pub fn zero_mask(&self) -> u64 {
        low_mask(self.len()) & !(self.neg | self.pos)
    }

    pub fn get(&self, i: usize) -> i8 {
        assert!(i < self.len(), "coordinate {i} out of range for length {}", self.len);
        if self.neg >> i & 1 == 1 {
            -1
        } else if self.pos >> i & 1 == 1 {
            1
        } else {
            0
        }
    }

    pub fn entries(&self) -> Vec<i8> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    pub fn signature(&self) -> Signature {
        let m = self.neg.count_ones() as usize;
        let l = self.pos.count_ones() as usize;
        Signature { m, k: self.len() - m - l, l }
    }

    pub fn negate(&self) -> TritVector {
        TritVector { len: self.len, neg: self.pos, pos: self.neg }
    }

    /// `(0, self)`: prepends a zero coordinate.
    pub fn prepend_zero(&self) -> Result<TritVector, LatticeError> {
        self.prepend(0)
    }

    pub fn prepend(&self, entry: i8) -> Result<TritVector, LatticeError> {
        if self.len() + 1 > MAX_LEN {
            return Err(LatticeError::TooLong { n: self.len() + 1, max: MAX_LEN });
        }
        let mut v = TritVector { len: self.len + 1, neg: self.neg << 1, pos: self.pos << 1 };
        match entry {
            -1 => v.neg |= 1,
            0 => {}
            1 => v.pos |= 1,
            other => return Err(LatticeError::InvalidEntry(other as i64)),
        }
        Ok(v)
    }

    /// Deletes coordinate `i`.
    pub fn remove_coordinate(&self, i: usize) -> TritVector {
        assert!(i < self.len());
        let squeeze = |mask: u64| (mask & low_mask(i)) | ((mask >> (i + 1)) << i);
        TritVector { len: self.len - 1, neg: squeeze(self.neg), pos: squeeze(self.pos) }
    }

    /// Coordinate permutation: entry `i` of the result is entry `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> TritVector {
        assert_eq!(perm.len(), self.len(), "permutation length mismatch");
        let mut out = TritVector { len: self.len, neg: 0, pos: 0 };
        for (i, &src) in perm.iter().enumerate() {
            out.neg |= (self.neg >> src & 1) << i;
            out.pos |= (self.pos >> src & 1) << i;
        }
        out
    }

    /// Squared distance without the length check; callers guarantee equal lengths.
    #[inline]
    pub(crate) fn squared_distance_unchecked(&self, other: &TritVector) -> u32 {
        let opposite = (self.neg & other.pos) | (self.pos & other.neg);
        let half = (self.neg | self.pos) ^ (other.neg | other.pos);
        4 * opposite.count_ones() + half.count_ones()
    }
}

#[inline]
pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl Ord for TritVector {
    /// Lexicographic over entries with `-1 < 0 < +1`; shorter vectors first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            let diff = (self.neg ^ other.neg) | (self.pos ^ other.pos);
            if diff == 0 {
                return Ordering::Equal;
            }
            let i = diff.trailing_zeros() as usize;
            self.get(i).cmp(&other.get(i))
        })
    }
}

impl PartialOrd for TritVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TritVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len())
            .map(|i| match self.get(i) {
                -1 => '-',
                0 => '0',
                _ => '+',
            })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for TritVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TritVector({self})")
    }
}

impl FromStr for TritVector {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let entries = s
            .chars()
            .map(|c| match c {
                '-' => Ok(-1),
                '0' => Ok(0),
                '+' => Ok(1),
                other => Err(LatticeError::InvalidTrit(other)),
            })
            .collect::<Result<Vec<i8>, _>>()?;
        TritVector::from_entries(&entries)
    }
}

impl Serialize for TritVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TritVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All points of `L(sig)` in lexicographic order, refusing more than
/// [`DEFAULT_ENUMERATION_LIMIT`] points.
pub fn generate(sig: Signature) -> Result<Vec<TritVector>, LatticeError> {
    generate_with_limit(sig, DEFAULT_ENUMERATION_LIMIT)
}

pub fn generate_with_limit(sig: Signature, limit: u128) -> Result<Vec<TritVector>, LatticeError> {
    let count = sig.cardinality();
    if count > limit {
        return Err(LatticeError::Capacity { count, limit });
    }
    let mut out = Vec::with_capacity(count as usize);
    fill(sig.n(), 0, sig.m, sig.k, sig.l, 0, 0, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn fill(n: usize, i: usize, m: usize, k: usize, l: usize, neg: u64, pos: u64, out: &mut Vec<TritVector>) {
    if i == n {
        out.push(TritVector { len: n as u8, neg, pos });
        return;
    }
    if m > 0 {
        fill(n, i + 1, m - 1, k, l, neg | 1 << i, pos, out);
    }
    if k > 0 {
        fill(n, i + 1, m, k - 1, l, neg, pos, out);
    }
    if l > 0 {
        fill(n, i + 1, m, k, l - 1, neg, pos | 1 << i, out);
    }
}

/// `sum_i (x_i - y_i)^2`.
pub fn squared_distance(x: &TritVector, y: &TritVector) -> Result<u32, LatticeError> {
    if x.len() != y.len() {
        return Err(LatticeError::LengthMismatch { left: x.len(), right: y.len() });
    }
    Ok(x.squared_distance_unchecked(y))
}

/// Largest pairwise squared distance.
pub fn diameter_sq(points: &[TritVector]) -> Result<u32, LatticeError> {
    if points.len() < 2 {
        return Err(LatticeError::TooFewPoints(points.len()));
    }
    let mut best = 0;
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            best = best.max(squared_distance(x, y)?);
        }
    }
    Ok(best)
}

/// Sorted multiset of pairwise squared distances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceProfile {
    pub squared_distances: Vec<u32>,
    pub diameter_sq: u32,
}

impl DistanceProfile {
    pub fn of(points: &[TritVector]) -> Result<Self, LatticeError> {
        if points.len() < 2 {
            return Err(LatticeError::TooFewPoints(points.len()));
        }
        let mut squared_distances = Vec::with_capacity(points.len() * (points.len() - 1) / 2);
        for (i, x) in points.iter().enumerate() {
            for y in &points[i + 1..] {
                squared_distances.push(squared_distance(x, y)?);
            }
        }
        squared_distances.sort_unstable();
        let diameter_sq = *squared_distances.last().expect("at least one pair");
        Ok(DistanceProfile { squared_distances, diameter_sq })
    }

    pub fn distinct(&self) -> BTreeSet<u32> {
        self.squared_distances.iter().copied().collect()
    }
}

/// Per-coordinate counts of `-1`, `0` and `+1` entries over a set of points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnCounts {
    pub neg: Vec<usize>,
    pub zero: Vec<usize>,
    pub pos: Vec<usize>,
}

impl ColumnCounts {
    pub fn of(n: usize, points: &[TritVector]) -> Self {
        let mut counts = ColumnCounts { neg: vec![0; n], zero: vec![0; n], pos: vec![0; n] };
        for x in points {
            debug_assert_eq!(x.len(), n);
            for i in 0..n {
                match x.get(i) {
                    -1 => counts.neg[i] += 1,
                    0 => counts.zero[i] += 1,
                    _ => counts.pos[i] += 1,
                }
            }
        }
        counts
    }

    /// Count of points holding `value` at coordinate `i`.
    pub fn count(&self, i: usize, value: i8) -> usize {
        match value {
            -1 => self.neg[i],
            0 => self.zero[i],
            1 => self.pos[i],
            _ => 0,
        }
    }

    pub fn max_zero(&self) -> usize {
        self.zero.iter().copied().max().unwrap_or(0)
    }
}

/// Per-coordinate value counts of `points`, which must be nonempty.
pub fn zero_column_counts(points: &[TritVector]) -> ColumnCounts {
    let n = points.first().map_or(0, TritVector::len);
    ColumnCounts::of(n, points)
}

/// Parses one trit-string per non-empty line.
pub fn parse_trit_lines(text: &str) -> Result<Vec<TritVector>, LatticeError> {
    text.lines()
        .map(str::trim)
        .filter(|line| !line.is_empty())
        .map(str::parse)
        .collect()
}

pub fn format_trit_lines(points: &[TritVector]) -> String {
    let mut out = String::with_capacity(points.len() * (points.first().map_or(0, TritVector::len) + 1));
    for p in points {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}
