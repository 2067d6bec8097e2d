//! Named subsets of `L(m, k, l)` and closed-form values of the largest
//! diameter-avoiding subsets.
//!
//! Coordinates are 0-based here; `S(k, i)` and friends keep the usual
//! 1-based `i` so that `S(k, 1)` is the set with `-1` in the first coordinate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::FamilyError;
use crate::lattice::{binomial, diameter_sq, generate, Signature, TritVector};

/// A named subset of one lattice. Members are kept sorted and distinct.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "FamilyFile", into = "FamilyFile")]
pub struct Family {
    signature: Signature,
    name: String,
    members: Vec<TritVector>,
    provenance: String,
}

#[derive(Serialize, Deserialize)]
struct FamilyFile {
    signature: Signature,
    name: String,
    members: Vec<TritVector>,
}

impl TryFrom<FamilyFile> for Family {
    type Error = FamilyError;

    fn try_from(f: FamilyFile) -> Result<Self, FamilyError> {
        Family::new(f.signature, f.name, f.members)
    }
}

impl From<Family> for FamilyFile {
    fn from(f: Family) -> Self {
        FamilyFile { signature: f.signature, name: f.name, members: f.members }
    }
}

impl PartialEq for Family {
    fn eq(&self, other: &Self) -> bool {
        self.signature == other.signature && self.name == other.name && self.members == other.members
    }
}

impl Eq for Family {}

impl Family {
    pub fn new(
        signature: Signature,
        name: impl Into<String>,
        members: impl IntoIterator<Item = TritVector>,
    ) -> Result<Self, FamilyError> {
        let mut members: Vec<TritVector> = members.into_iter().collect();
        for x in &members {
            if !signature.contains(x) {
                return Err(FamilyError::NotInLattice { vector: x.to_string(), signature: signature.to_string() });
            }
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(FamilyError::Duplicate(w[0].to_string()));
        }
        Ok(Family { signature, name: name.into(), members, provenance: String::new() })
    }

    /// Like [`Family::new`], silently dropping repeated members.
    pub fn from_set(
        signature: Signature,
        name: impl Into<String>,
        members: impl IntoIterator<Item = TritVector>,
    ) -> Result<Self, FamilyError> {
        let set: BTreeSet<TritVector> = members.into_iter().collect();
        Family::new(signature, name, set)
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rename(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// How the family was built; not serialized.
    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn members(&self) -> &[TritVector] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &TritVector) -> bool {
        self.members.binary_search(x).is_ok()
    }

    /// Largest squared distance inside the family (0 for fewer than two members).
    pub fn diameter_sq(&self) -> u32 {
        diameter_sq(&self.members).unwrap_or(0)
    }

    /// True when no two members are at the diameter of the whole lattice.
    pub fn avoids_diameter(&self) -> bool {
        match lattice_diameter_sq(self.signature) {
            Some(d) => self.diameter_sq() < d,
            None => self.members.len() <= 1,
        }
    }

    pub fn union(&self, other: &Family, name: impl Into<String>) -> Result<Family, FamilyError> {
        if self.signature != other.signature {
            return Err(FamilyError::OutOfRange(format!("union of {} and {}", self.signature, other.signature)));
        }
        Family::from_set(self.signature, name, self.members.iter().chain(&other.members).copied())
    }

    pub fn difference(&self, other: &Family, name: impl Into<String>) -> Result<Family, FamilyError> {
        Family::new(self.signature, name, self.members.iter().filter(|x| !other.contains(x)).copied())
    }

    /// Prepends a zero coordinate to every member.
    pub fn lift(&self, name: impl Into<String>) -> Result<Family, FamilyError> {
        let sig = Signature::new(self.signature.m(), self.signature.k() + 1, self.signature.l())?;
        let members = self.members.iter().map(|x| x.prepend_zero()).collect::<Result<Vec<_>, _>>()?;
        Family::new(sig, name, members)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family serializes")
    }

    pub fn from_json(text: &str) -> Result<Family, FamilyError> {
        serde_json::from_str(text).map_err(|e| FamilyError::OutOfRange(format!("family file: {e}")))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {} ({} points)", self.name, self.signature, self.members.len())
    }
}

pub fn lattice_diameter_sq(sig: Signature) -> Option<u32> {
    if sig.cardinality() < 2 {
        return None;
    }
    // opposite signs face each other as often as possible, then the surplus
    // of the majority sign faces zeros in both directions
    let (lo, hi, k) = (sig.m().min(sig.l()) as u32, sig.m().max(sig.l()) as u32, sig.k() as u32);
    Some(8 * lo + 2 * k.min(hi - lo))
}

fn sig(m: usize, k: usize, l: usize) -> Result<Signature, FamilyError> {
    Ok(Signature::new(m, k, l)?)
}

fn filtered(s: Signature, name: String, pred: impl Fn(&TritVector) -> bool) -> Result<Family, FamilyError> {
    Family::new(s, name, generate(s)?.into_iter().filter(|x| pred(x)))
}

/// `C(k+3, 3) + 2`, the largest size of a diameter-avoiding subset of `L(1, k, 2)`.
pub fn frak_m(k: usize) -> Result<u128, FamilyError> {
    if k < 1 {
        return Err(FamilyError::OutOfRange(format!("frak_m needs k >= 1, got {k}")));
    }
    Ok(binomial(k as u64 + 3, 3) + 2)
}

/// `C(m+l-1, m-1) * C(k+m+l, m+l) + C(m+l-1, m)`, the size of the recursive
/// construction started from the whole of `L(m, 0, l)`.
pub fn frak_m_general(m: usize, k: usize, l: usize) -> Result<u128, FamilyError> {
    if m == 0 || m >= l {
        return Err(FamilyError::OutOfRange(format!("need 1 <= m < l, got m = {m}, l = {l}")));
    }
    let (m, k, l) = (m as u64, k as u64, l as u64);
    Ok(binomial(m + l - 1, m - 1) * binomial(k + m + l, m + l) + binomial(m + l - 1, m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    /// `m = l`: the diameter graph is a perfect matching of antipodes.
    Antipodal,
    /// `min(m,l) + k <= max(m,l)`: intersecting families of nonpositive positions.
    Intersecting,
    /// `{m, l} = {1, 2}`: the value `frak_m(k)`.
    OneTwo,
    /// Size of the recursive construction; a lower bound only.
    Recursive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Exact,
    LowerBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub value: u128,
    pub kind: BoundKind,
    pub source: BoundSource,
}

/// The proven value of the largest diameter-avoiding subset of `L(m, k, l)`,
/// when one of the solved cases applies. Lattices with fewer than two points
/// have no diameter and are skipped.
pub fn m_exact(s: Signature) -> Option<Bound> {
    if s.cardinality() < 2 {
        return None;
    }
    let (m, k, l) = (s.m().min(s.l()) as u64, s.k() as u64, s.m().max(s.l()) as u64);
    let n = m + k + l;
    let exact = |value, source| Some(Bound { value, kind: BoundKind::Exact, source });
    if m == l {
        return exact(binomial(n, m) * binomial(k + m, m) / 2, BoundSource::Antipodal);
    }
    if m + k <= l {
        return exact(binomial(n - 1, m + k - 1) * binomial(m + k, m), BoundSource::Intersecting);
    }
    if m == 1 && l == 2 {
        return exact(binomial(k + 3, 3) + 2, BoundSource::OneTwo);
    }
    None
}

/// Values and bounds for every lattice with `n <= max_n` and at least two
/// points. Keys are `(m, k, l)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundTable {
    pub entries: BTreeMap<(usize, usize, usize), Bound>,
    /// Lattices `L(m, k, l)` with `m < l` whose value the closed forms leave
    /// open, listed under both readings of the lower end of that range:
    /// `k >= l - m + 1` and `k >= m - l + 1`.
    pub open_range_low: BTreeSet<(usize, usize, usize)>,
    pub open_range_low_alternative: BTreeSet<(usize, usize, usize)>,
}

impl BoundTable {
    pub fn up_to(max_n: usize) -> Result<BoundTable, FamilyError> {
        let mut entries = BTreeMap::new();
        let mut open = BTreeSet::new();
        let mut open_alt = BTreeSet::new();
        for n in 1..=max_n {
            for m in 0..=n {
                for k in 0..=n - m {
                    let l = n - m - k;
                    let s = sig(m, k, l)?;
                    if s.cardinality() < 2 {
                        continue;
                    }
                    if let Some(b) = m_exact(s) {
                        entries.insert((m, k, l), b);
                        continue;
                    }
                    let (lo, hi) = (m.min(l), m.max(l));
                    if lo >= 1 && lo < hi {
                        let value = frak_m_general(lo, k, hi)?;
                        entries.insert((m, k, l), Bound { value, kind: BoundKind::LowerBound, source: BoundSource::Recursive });
                        let top = lo as u128 * binomial((lo + hi) as u64, lo as u64);
                        let top = top.saturating_sub((lo + hi) as u128);
                        if (k as u128) <= top {
                            if k > hi - lo {
                                open.insert((m, k, l));
                            }
                            // lo - hi + 1 is at most 0, so this reading covers every k
                            open_alt.insert((m, k, l));
                        }
                    }
                }
            }
        }
        Ok(BoundTable { entries, open_range_low: open, open_range_low_alternative: open_alt })
    }

    pub fn get(&self, m: usize, k: usize, l: usize) -> Option<&Bound> {
        self.entries.get(&(m, k, l))
    }
}

fn check_k(k: usize, min: usize) -> Result<(), FamilyError> {
    if k < min || k > 61 {
        return Err(FamilyError::OutOfRange(format!("k = {k} must be in {min}..=61")));
    }
    Ok(())
}

fn check_index(k: usize, i: usize, min: usize) -> Result<(), FamilyError> {
    check_k(k, 1)?;
    if i < min || i > k + 2 {
        return Err(FamilyError::OutOfRange(format!("index {i} must be in {min}..={}", k + 2)));
    }
    Ok(())
}

fn leading_zeros_then(x: &TritVector, i: usize, value: i8) -> bool {
    (0..i - 1).all(|c| x.get(c) == 0) && x.get(i - 1) == value
}

/// Vectors of `L(1, k, 2)` that vanish on the first `i - 1` coordinates and
/// have `-1` at coordinate `i`.
pub fn s_set(k: usize, i: usize) -> Result<Family, FamilyError> {
    check_index(k, i, 1)?;
    filtered(sig(1, k, 2)?, format!("S_{k}({i})"), |x| leading_zeros_then(x, i, -1))
}

/// As [`s_set`] with `+1` at coordinate `i`.
pub fn t_set(k: usize, i: usize) -> Result<Family, FamilyError> {
    check_index(k, i, 1)?;
    filtered(sig(1, k, 2)?, format!("T_{k}({i})"), |x| leading_zeros_then(x, i, 1))
}

/// Vectors with `+1` first, their `-1` at a coordinate in `2..=i`, and a
/// `+1` after the `-1`. Empty for `i = 1`.
pub fn u_set(k: usize, i: usize) -> Result<Family, FamilyError> {
    check_index(k, i, 1)?;
    filtered(sig(1, k, 2)?, format!("U_{k}({i})"), |x| {
        if x.get(0) != 1 {
            return false;
        }
        let neg = x.neg_mask().trailing_zeros() as usize;
        let last_pos = 63 - x.pos_mask().leading_zeros() as usize;
        (1..i).contains(&neg) && last_pos > neg
    })
}

fn union_of(name: String, parts: impl IntoIterator<Item = Result<Family, FamilyError>>) -> Result<Family, FamilyError> {
    let mut members = Vec::new();
    let mut s = None;
    for p in parts {
        let p = p?;
        s = Some(p.signature());
        members.extend_from_slice(p.members());
    }
    Family::from_set(s.expect("at least one part"), name, members)
}

/// Which of the three extremal families of `L(1, k, 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Extremal {
    X,
    Y,
    Z,
}

impl Extremal {
    pub const ALL: [Extremal; 3] = [Extremal::X, Extremal::Y, Extremal::Z];

    pub fn min_k(self) -> usize {
        match self {
            Extremal::X | Extremal::Y => 1,
            Extremal::Z => 2,
        }
    }

    fn letter(self) -> char {
        match self {
            Extremal::X => 'X',
            Extremal::Y => 'Y',
            Extremal::Z => 'Z',
        }
    }

    /// Union of a `T` set and an initial run of `S` sets.
    pub fn direct(self, k: usize) -> Result<Family, FamilyError> {
        check_k(k, self.min_k())?;
        let name = format!("{}_{k}", self.letter());
        match (self, k) {
            (Extremal::Y, 1) | (Extremal::Z, 2) => return Ok(t_set(k, 1)?.rename(name)),
            _ => {}
        }
        let (t_index, s_top) = match self {
            Extremal::X => (k + 1, k + 1),
            Extremal::Y => (k, k - 1),
            Extremal::Z => (k - 1, k - 2),
        };
        union_of(name, std::iter::once(t_set(k, t_index)).chain((1..=s_top).map(|i| s_set(k, i))))
    }

    /// `{(0, x) : x in F(k-1)} ∪ S(k, 1)` from the smallest case up.
    pub fn recursive(self, k: usize) -> Result<Family, FamilyError> {
        check_k(k, self.min_k())?;
        let mut f = self.direct(self.min_k())?;
        for j in self.min_k() + 1..=k {
            let lifted = f.lift("lift")?;
            f = lifted.union(&s_set(j, 1)?, format!("{}_{j}", self.letter()))?;
        }
        Ok(f)
    }

    /// The family, built both ways and checked to agree.
    pub fn family(self, k: usize) -> Result<Family, FamilyError> {
        let direct = self.direct(k)?;
        let recursive = self.recursive(k)?;
        if direct.members() != recursive.members() {
            return Err(FamilyError::Construction(format!("{} differs from its recursive construction", direct.name())));
        }
        Ok(direct.with_provenance("union of T and S sets; agrees with the lifting recursion"))
    }

    /// The family with `S(k, 1)` removed (`k >= 2`, `k >= 3` for `Z`).
    pub fn primed(self, k: usize) -> Result<Family, FamilyError> {
        check_k(k, self.min_k() + 1)?;
        let f = self.family(k)?;
        f.difference(&s_set(k, 1)?, format!("{}_{k}'", self.letter()))
    }
}

pub fn x_family(k: usize) -> Result<Family, FamilyError> {
    Extremal::X.family(k)
}

pub fn y_family(k: usize) -> Result<Family, FamilyError> {
    Extremal::Y.family(k)
}

pub fn z_family(k: usize) -> Result<Family, FamilyError> {
    Extremal::Z.family(k)
}

fn parse_all(items: &[&str]) -> Vec<TritVector> {
    items.iter().map(|s| s.parse().expect("valid literal")).collect()
}

/// The first exceptional 11-point set of `L(1, 2, 2)`.
pub fn v2() -> Family {
    let extra = parse_all(&["-00++", "-0+0+", "-0++0", "-++00", "+-+00"]);
    let base = Extremal::X.primed(2).expect("X_2'");
    Family::new(base.signature(), "V_2", base.members().iter().copied().chain(extra))
        .expect("V_2 is a set")
        .with_provenance("X_2' plus five listed vectors")
}

/// The second exceptional 11-point set of `L(1, 2, 2)`.
pub fn w2() -> Family {
    let extra = parse_all(&["-++00", "-+0+0", "-+00+", "-00++", "++-00"]);
    let base = Extremal::Y.primed(2).expect("Y_2'");
    Family::new(base.signature(), "W_2", base.members().iter().copied().chain(extra))
        .expect("W_2 is a set")
        .with_provenance("Y_2' plus five listed vectors")
}

fn vector(n: usize, entries: &[(usize, i8)]) -> TritVector {
    let mut e = vec![0i8; n];
    for &(i, v) in entries {
        e[i] = v;
    }
    TritVector::from_entries(&e).expect("valid entries")
}

/// `+1` first, `+1` at coordinate `c` (1-based), `-1` at one coordinate
/// `j >= from`.
fn script_set(k: usize, c: usize, from: usize, name: String) -> Result<Family, FamilyError> {
    let n = k + 3;
    Family::new(sig(1, k, 2)?, name, (from..=n).map(|j| vector(n, &[(0, 1), (c - 1, 1), (j - 1, -1)])))
}

/// Vectors with `+1` at the first coordinate and at coordinate `k`, and `-1`
/// after coordinate `k`.
pub fn script_s1(k: usize) -> Result<Family, FamilyError> {
    check_k(k, 2)?;
    script_set(k, k, k + 1, format!("S1_{k}"))
}

/// Vectors with `+1` at the first coordinate and at coordinate `k - 1`, and
/// `-1` at coordinate `k` or later.
pub fn script_s2(k: usize) -> Result<Family, FamilyError> {
    check_k(k, 3)?;
    script_set(k, k - 1, k, format!("S2_{k}"))
}

/// The three configurations in which the zero slice at the first
/// coordinate is a lifted `X`, `Y` or `Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatchingCase {
    /// `X_k'` present; `k >= 2`.
    First,
    /// `Y_k'` present; `k >= 2`.
    Second,
    /// `Z_k'` present; `k >= 3`.
    Third,
}

impl MatchingCase {
    pub const ALL: [MatchingCase; 3] = [MatchingCase::First, MatchingCase::Second, MatchingCase::Third];

    pub fn min_k(self) -> usize {
        match self {
            MatchingCase::First | MatchingCase::Second => 2,
            MatchingCase::Third => 3,
        }
    }

    pub fn extremal(self) -> Extremal {
        match self {
            MatchingCase::First => Extremal::X,
            MatchingCase::Second => Extremal::Y,
            MatchingCase::Third => Extremal::Z,
        }
    }

    /// Number of leading free coordinates in the `U` part: `k`, `k-1`, `k-2`.
    fn u_index(self, k: usize) -> usize {
        match self {
            MatchingCase::First => k,
            MatchingCase::Second => k - 1,
            MatchingCase::Third => k - 2,
        }
    }

    /// Remaining candidates once the primed family is fixed:
    /// `S(k, 1)` on the left, the `U` set and any script set on the right.
    pub fn candidates(self, k: usize) -> Result<(Family, Family), FamilyError> {
        check_k(k, self.min_k())?;
        let left = s_set(k, 1)?;
        let u = u_set(k, self.u_index(k))?;
        let right = match self {
            MatchingCase::First => u,
            MatchingCase::Second => u.union(&script_s1(k)?, "right")?,
            MatchingCase::Third => u.union(&script_s2(k)?, "right")?,
        };
        Ok((left, right))
    }

    /// The explicit matching between `S(k, 1)` and the right-hand candidates.
    pub fn table(self, k: usize) -> Result<Vec<(TritVector, TritVector)>, FamilyError> {
        check_k(k, self.min_k())?;
        let n = k + 3;
        let top = self.u_index(k);
        let mut pairs = Vec::new();
        for i in 2..=top {
            for j in i + 1..n {
                pairs.push((vector(n, &[(0, -1), (i - 1, 1), (j - 1, 1)]), vector(n, &[(0, 1), (i - 1, -1), (j, 1)])));
            }
            pairs.push((vector(n, &[(0, -1), (i - 1, 1), (n - 1, 1)]), vector(n, &[(0, 1), (i - 1, -1), (i, 1)])));
        }
        // 1-based: left +1 positions, right +1 and -1 positions
        let script: Vec<((usize, usize), (usize, usize))> = match self {
            MatchingCase::First => Vec::new(),
            MatchingCase::Second => {
                vec![((k + 1, k + 2), (k, k + 1)), ((k + 2, k + 3), (k, k + 2)), ((k + 1, k + 3), (k, k + 3))]
            }
            MatchingCase::Third => vec![
                ((k, k + 1), (k - 1, k)),
                ((k + 1, k + 2), (k - 1, k + 1)),
                ((k + 2, k + 3), (k - 1, k + 2)),
                ((k, k + 3), (k - 1, k + 3)),
            ],
        };
        for ((a, b), (p, q)) in script {
            pairs.push((vector(n, &[(0, -1), (a - 1, 1), (b - 1, 1)]), vector(n, &[(0, 1), (p - 1, 1), (q - 1, -1)])));
        }
        Ok(pairs)
    }

    /// Vectors of `S(k, 1)` with no neighbour among the right-hand candidates.
    pub fn isolated(self, k: usize) -> Result<Vec<TritVector>, FamilyError> {
        check_k(k, self.min_k())?;
        let n = k + 3;
        let first = match self {
            MatchingCase::First => return Ok(pairs_within(n, k + 1, n)),
            MatchingCase::Second => k,
            MatchingCase::Third => k - 1,
        };
        Ok((first + 1..=n).map(|j| vector(n, &[(0, -1), (first - 1, 1), (j - 1, 1)])).collect())
    }

    /// Vectors of `S(k, 1)` left uncovered by [`MatchingCase::table`] that
    /// are not isolated.
    pub fn unmatched(self, k: usize) -> Result<Vec<TritVector>, FamilyError> {
        check_k(k, self.min_k())?;
        let n = k + 3;
        Ok(match self {
            MatchingCase::Third => vec![vector(n, &[(0, -1), (k - 1, 1), (k + 1, 1)]), vector(n, &[(0, -1), (k, 1), (k + 2, 1)])],
            _ => Vec::new(),
        })
    }
}

/// Vectors with `-1` first and two `+1` in the 1-based range `lo..=hi`.
fn pairs_within(n: usize, lo: usize, hi: usize) -> Vec<TritVector> {
    let mut out = Vec::new();
    for a in lo..=hi {
        for b in a + 1..=hi {
            out.push(vector(n, &[(0, -1), (a - 1, 1), (b - 1, 1)]));
        }
    }
    out
}

/// How the recursive construction for `m < l` is started.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecursionSeed {
    /// At `k = l - m` with the vectors whose first coordinate is `-1` or `0`,
    /// a largest set there.
    #[default]
    Intersecting,
    /// At `k = 0` with the whole lattice `L(m, 0, l)`; its sizes follow
    /// [`frak_m_general`].
    WholeLattice,
}

/// Diameter-avoiding subset of `L(m, k, l)` for `m < l` obtained by repeatedly
/// lifting and adding every vector with `-1` in the first coordinate.
pub fn recursive_family(m: usize, k: usize, l: usize, seed: RecursionSeed) -> Result<Family, FamilyError> {
    if m == 0 || m >= l {
        return Err(FamilyError::OutOfRange(format!("need 1 <= m < l, got m = {m}, l = {l}")));
    }
    let base_k = match seed {
        RecursionSeed::Intersecting => l - m,
        RecursionSeed::WholeLattice => 0,
    };
    if k < base_k {
        return Err(FamilyError::OutOfRange(format!("k = {k} is below the seed level {base_k}")));
    }
    let base_sig = sig(m, base_k, l)?;
    let mut f = match seed {
        RecursionSeed::Intersecting => filtered(base_sig, "seed".into(), |x| x.get(0) <= 0)?,
        RecursionSeed::WholeLattice => Family::new(base_sig, "seed", generate(base_sig)?)?,
    };
    for j in base_k + 1..=k {
        let lifted = f.lift("lift")?;
        let s = sig(m, j, l)?;
        f = lifted.union(&filtered(s, "first".into(), |x| x.get(0) == -1)?, "step")?;
    }
    let f = f.rename(format!("R_{m}{k}{l}")).with_provenance(match seed {
        RecursionSeed::Intersecting => "lifting recursion from the intersecting seed",
        RecursionSeed::WholeLattice => "lifting recursion from the whole lattice with no zeros",
    });
    if !f.avoids_diameter() {
        return Err(FamilyError::Construction(format!("{} meets the diameter", f.name())));
    }
    Ok(f)
}
