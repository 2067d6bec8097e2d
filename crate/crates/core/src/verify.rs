//! Named check suites with expected and observed values.
//!
//! Every check is deterministic and free of timing data, so a report is a
//! pure function of the suite and its options.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, classify, CanonicalForm};
use crate::diamgraph::DiameterGraph;
use crate::error::{Error, FamilyError};
use crate::families::{
    frak_m, frak_m_general, m_exact, recursive_family, v2, w2, BoundKind, Extremal, Family, MatchingCase,
    RecursionSeed,
};
use crate::johnson::{
    base_size, candidate_pools, compat_allowed, johnson_embedding, large_t_analysis, pool_ii_prefix, pool_iv_isometry,
    pool_iv_part, pool_iv_to_lattice, t_bound, t_bound_cubic, verify_258, Pool, ScaledVector, ALLOWED_SCALED, DIM,
};
use crate::lattice::{binomial, squared_distance, ColumnCounts, Signature, TritVector};
use crate::solver::{
    enumerate_maximum_with, enumerate_size_with, independence_number_with, max_matching, Matching, SolverConfig,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    MainTheorem,
    Props,
    Johnson,
    Section4,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::MainTheorem, Suite::Props, Suite::Johnson, Suite::Section4];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MainTheorem => "main-theorem",
            Suite::Props => "props",
            Suite::Johnson => "johnson",
            Suite::Section4 => "section4",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}; expected one of main-theorem, props, johnson, section4"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

impl Check {
    /// Passes when both sides render the same.
    pub fn equal(name: impl Into<String>, expected: impl fmt::Display, observed: impl fmt::Display) -> Check {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        let passed = expected == observed;
        Check { name: name.into(), expected, observed, passed }
    }

    pub fn with(
        name: impl Into<String>,
        expected: impl fmt::Display,
        observed: impl fmt::Display,
        passed: bool,
    ) -> Check {
        Check { name: name.into(), expected: expected.to_string(), observed: observed.to_string(), passed }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Inclusive range of `k` for the `L(1, k, 2)` checks.
    pub k_min: usize,
    pub k_max: usize,
    /// Allows `k = 6`.
    pub slow: bool,
    pub solver: SolverConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { k_min: 1, k_max: 5, slow: false, solver: SolverConfig::default() }
    }
}

/// Largest `k` handled without `slow`.
pub const FAST_K_MAX: usize = 5;
/// Largest `k` handled at all.
pub const SLOW_K_MAX: usize = 6;
/// Closed forms are compared with the solver on every lattice of this length or less.
pub const PROPS_N_MAX: usize = 7;
/// Classification by full enumeration is done up to this `k`.
pub const CLASSIFY_K_MAX: usize = 5;

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport, Error> {
    let checks = match suite {
        Suite::MainTheorem => main_theorem(opts)?,
        Suite::Props => props(opts)?,
        Suite::Johnson => johnson(opts)?,
        Suite::Section4 => section4(opts)?,
    };
    Ok(SuiteReport { suite, checks })
}

fn k_range(opts: &VerifyOptions) -> Result<std::ops::RangeInclusive<usize>, Error> {
    let top = if opts.slow { SLOW_K_MAX } else { FAST_K_MAX };
    if opts.k_min < 1 || opts.k_min > opts.k_max || opts.k_max > top {
        let hint = if !opts.slow && opts.k_max <= SLOW_K_MAX { " (k = 6 needs the slow flag)" } else { "" };
        return Err(FamilyError::OutOfRange(format!(
            "k range {}..={} must lie in 1..={top}{hint}",
            opts.k_min, opts.k_max
        ))
        .into());
    }
    Ok(opts.k_min..=opts.k_max)
}

fn lattice_graph(m: usize, k: usize, l: usize) -> Result<(Signature, DiameterGraph), Error> {
    let s = Signature::new(m, k, l)?;
    Ok((s, DiameterGraph::of_lattice(s)?))
}

fn family_of(g: &DiameterGraph, name: String, set: &[usize]) -> Result<Family, Error> {
    let s = g.signature().expect("lattice graph");
    Ok(Family::new(s, name, set.iter().map(|&v| *g.vertex(v)))?)
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let items: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

/// No vertex outside `f` can be added to it.
fn non_extendable(g: &DiameterGraph, f: &Family) -> bool {
    let inside: Vec<usize> = f.members().iter().map(|x| g.index_of(x).expect("member of the lattice")).collect();
    (0..g.len()).all(|v| inside.contains(&v) || inside.iter().any(|&u| g.has_edge(u, v)))
}

fn main_theorem(opts: &VerifyOptions) -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    for k in k_range(opts)? {
        let (_, g) = lattice_graph(1, k, 2)?;
        let target = frak_m(k)?;
        let solved = independence_number_with(&g, &opts.solver)?;
        out.push(Check::equal(format!("alpha L(1,{k},2)"), target, solved.alpha));

        let mut forms: BTreeMap<CanonicalForm, String> = BTreeMap::new();
        for e in Extremal::ALL.into_iter().filter(|e| e.min_k() <= k) {
            let f = e.family(k)?;
            let name = f.name().to_owned();
            out.push(Check::equal(format!("{name} size"), target, f.len()));
            out.push(Check::equal(format!("{name} avoids the diameter"), true, f.avoids_diameter()));
            out.push(Check::equal(format!("{name} is maximal"), true, non_extendable(&g, &f)));
            forms.insert(canonical_form(&f)?, name);
        }
        out.push(Check::equal(
            format!("X_{k}, Y_{k}, Z_{k} pairwise non-isomorphic"),
            Extremal::ALL.iter().filter(|e| e.min_k() <= k).count(),
            forms.len(),
        ));

        if k <= CLASSIFY_K_MAX {
            let all = enumerate_maximum_with(&g, &opts.solver)?;
            let sets = all.enumerated.expect("enumeration requested");
            let families = sets
                .iter()
                .enumerate()
                .map(|(i, s)| family_of(&g, format!("max_{i}"), s))
                .collect::<Result<Vec<_>, _>>()?;
            if k == 1 {
                out.push(Check::equal("maximum sets of L(1,1,2)", 8, families.len()));
            }
            let classes = classify(&families)?;
            let observed: Vec<String> =
                classes.iter().map(|c| forms.get(&c.form).cloned().unwrap_or_else(|| "unknown".into())).collect();
            out.push(Check::equal(
                format!("classes of maximum sets in L(1,{k},2)"),
                join(forms.values().collect::<BTreeSet<_>>()),
                join(observed.iter().collect::<BTreeSet<_>>()),
            ));
            for c in &classes {
                let orbit = crate::canon::orbit_length(&c.representative)?;
                let name = forms.get(&c.form).cloned().unwrap_or_else(|| "unknown".into());
                out.push(Check::equal(format!("class {name}: members = orbit length"), orbit, c.size()));
            }
            if k >= 4 {
                let floor = frak_m(k - 1)?;
                let worst = families
                    .iter()
                    .map(|f| ColumnCounts::of(k + 3, f.members()).max_zero())
                    .min()
                    .expect("at least one maximum set");
                out.push(Check::with(
                    format!("largest zero column over {} maximum sets of L(1,{k},2)", families.len()),
                    format!(">= {floor}"),
                    worst,
                    worst as u128 >= floor,
                ));
            }
        }

        if k == 2 {
            out.extend(eleven_point(&g, &opts.solver)?);
        }
        for case in MatchingCase::ALL.into_iter().filter(|c| c.min_k() <= k) {
            out.extend(matching_checks(case, k, &opts.solver)?);
        }
    }
    Ok(out)
}

fn eleven_point(g: &DiameterGraph, config: &SolverConfig) -> Result<Vec<Check>, Error> {
    let mut known: BTreeMap<CanonicalForm, String> = BTreeMap::new();
    let mut out = Vec::new();
    for f in [v2(), w2()] {
        out.push(Check::equal(format!("{} size", f.name()), 11, f.len()));
        out.push(Check::equal(format!("{} avoids the diameter", f.name()), true, f.avoids_diameter()));
        out.push(Check::equal(format!("{} is maximal", f.name()), true, non_extendable(g, &f)));
        known.insert(canonical_form(&f)?, f.name().to_owned());
    }
    for e in Extremal::ALL {
        let f = e.family(2)?;
        for x in f.members() {
            let smaller = Family::new(f.signature(), "deletion", f.members().iter().filter(|y| *y != x).copied())?;
            known.entry(canonical_form(&smaller)?).or_insert_with(|| format!("{} minus a point", f.name()));
        }
    }
    let sets = enumerate_size_with(g, 11, config)?;
    let families =
        sets.iter().enumerate().map(|(i, s)| family_of(g, format!("s_{i}"), s)).collect::<Result<Vec<_>, _>>()?;
    let classes = classify(&families)?;
    let unknown = classes.iter().filter(|c| !known.contains_key(&c.form)).count();
    out.push(Check::with(
        format!("classes of the {} independent 11-sets of L(1,2,2)", families.len()),
        "V_2, W_2 or a deletion from X_2, Y_2, Z_2",
        format!("{} classes, {unknown} outside the list", classes.len()),
        unknown == 0,
    ));
    let seen: BTreeSet<&str> = classes.iter().filter_map(|c| known.get(&c.form)).map(String::as_str).collect();
    out.push(Check::equal("V_2 and W_2 occur", true, seen.contains("V_2") && seen.contains("W_2")));
    Ok(out)
}

fn matching_checks(case: MatchingCase, k: usize, config: &SolverConfig) -> Result<Vec<Check>, Error> {
    let label = format!("matching ({}) k={k}", match case {
        MatchingCase::First => "i",
        MatchingCase::Second => "ii",
        MatchingCase::Third => "iii",
    });
    let (left, right) = case.candidates(k)?;
    let points: Vec<TritVector> = left.members().iter().chain(right.members()).copied().collect();
    let threshold = crate::families::lattice_diameter_sq(left.signature()).expect("lattice with a diameter");
    let g = DiameterGraph::build(&points, threshold)?;
    let left_idx: Vec<usize> = (0..left.len()).collect();
    let right_idx: Vec<usize> = (left.len()..points.len()).collect();
    let mut out = Vec::new();
    let view = match g.bipartite_view(&left_idx, &right_idx) {
        Ok(v) => v,
        Err(e) => {
            out.push(Check::equal(format!("{label}: bipartite"), "no internal edge", e));
            return Ok(out);
        }
    };
    let index = |x: &TritVector| g.index_of(x).expect("table vectors are candidates");
    let table = case.table(k)?;
    let pairs: Vec<(usize, usize)> = table.iter().map(|(a, b)| (index(a), index(b))).collect();
    let matching = match Matching::from_pairs(&view, pairs) {
        Ok(m) => m,
        Err(e) => {
            out.push(Check::equal(format!("{label}: valid matching"), "disjoint crossing edges", e));
            return Ok(out);
        }
    };
    out.push(Check::equal(format!("{label}: valid matching"), "disjoint crossing edges", "disjoint crossing edges"));

    let isolated: BTreeSet<usize> = g.isolated_vertices().into_iter().collect();
    let expected_isolated: BTreeSet<usize> = case.isolated(k)?.iter().map(index).collect();
    out.push(Check::equal(format!("{label}: isolated vertices"), join(&expected_isolated), join(&isolated)));

    let uncovered: BTreeSet<usize> =
        (0..g.len()).filter(|v| !isolated.contains(v) && !matching.is_matched(*v)).collect();
    let expected_uncovered: BTreeSet<usize> = case.unmatched(k)?.iter().map(index).collect();
    out.push(Check::equal(
        format!("{label}: unmatched vertices of the non-isolated part"),
        expected_uncovered.len(),
        uncovered.len(),
    ));
    out.push(Check::equal(format!("{label}: unmatched set"), join(&expected_uncovered), join(&uncovered)));

    let nu = max_matching(&view).len();
    out.push(Check::equal(format!("{label}: maximum matching size"), matching.len(), nu));
    let alpha = independence_number_with(&g, config)?.alpha;
    out.push(Check::equal(format!("{label}: alpha = |V| - maximum matching"), g.len() - nu, alpha));
    Ok(out)
}

fn props(opts: &VerifyOptions) -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    for n in 1..=PROPS_N_MAX {
        for m in 0..=n {
            for k in 0..=n - m {
                let l = n - m - k;
                let s = Signature::new(m, k, l)?;
                let Some(bound) = m_exact(s) else { continue };
                if bound.kind != BoundKind::Exact {
                    continue;
                }
                let g = DiameterGraph::of_lattice(s)?;
                let alpha = independence_number_with(&g, &opts.solver)?.alpha;
                out.push(Check::equal(
                    format!("alpha L({m},{k},{l}) [{}]", serde_json::to_string(&bound.source).expect("plain enum")),
                    bound.value,
                    alpha,
                ));
            }
        }
    }
    for (m, k, l) in [(1, 0, 1), (1, 1, 1), (1, 2, 1), (2, 0, 2), (2, 1, 2)] {
        let (s, g) = lattice_graph(m, k, l)?;
        let sets = enumerate_maximum_with(&g, &opts.solver)?.enumerated.expect("enumeration requested");
        let pairs = s.cardinality() / 2;
        out.push(Check::equal(format!("maximum sets of L({m},{k},{l})"), 1u128 << pairs, sets.len()));
        let one_each = sets.iter().all(|set| {
            let pts: BTreeSet<TritVector> = set.iter().map(|&v| *g.vertex(v)).collect();
            g.vertices().iter().all(|x| pts.contains(x) != pts.contains(&x.negate()))
        });
        out.push(Check::equal(format!("L({m},{k},{l}): one of each antipodal pair"), true, one_each));
    }
    Ok(out)
}

fn johnson(_opts: &VerifyOptions) -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    let j = johnson_embedding(DIM, 4)?;
    out.push(Check::equal("Johnson set size", binomial(9, 4), j.len()));
    let mut jd = BTreeSet::new();
    for (i, a) in j.iter().enumerate() {
        for b in &j[i + 1..] {
            jd.insert(a.scaled_distance(b) / 9);
        }
    }
    out.push(Check::equal("Johnson squared distances", "{2, 4, 6, 8}", join(&jd)));

    let pools = candidate_pools();
    let sizes = [36, 9, 9, 252];
    for ((pool, members), size) in pools.iter().zip(sizes) {
        out.push(Check::equal(format!("pool ({}) size", pool.label()), size, members.len()));
        let ok = members.iter().all(|x| j.iter().all(|y| ALLOWED_SCALED.contains(&x.scaled_distance(y))));
        out.push(Check::equal(format!("pool ({}) at allowed distances from the Johnson set", pool.label()), true, ok));
    }

    let iso = pool_iv_isometry();
    let mut preserved = 0usize;
    let mut pairs = 0usize;
    for (i, (a, x)) in iso.iter().enumerate() {
        for (b, y) in &iso[i + 1..] {
            pairs += 1;
            if a.scaled_distance(b) == 9 * squared_distance(x, y)? {
                preserved += 1;
            }
        }
    }
    out.push(Check::equal("pool (iv) pairs with preserved distance", 252 * 251 / 2, preserved));
    out.push(Check::equal("pool (iv) pairs checked", 31_626, pairs));

    let mut forms = BTreeSet::new();
    for e in Extremal::ALL {
        let part = pool_iv_part(e)?;
        let image: BTreeSet<TritVector> = part.iter().map(pool_iv_to_lattice).collect::<Result<_, _>>()?;
        let f = e.family(6)?;
        let target: BTreeSet<TritVector> = f.members().iter().copied().collect();
        out.push(Check::equal(format!("image of the pool (iv) part equals {}", f.name()), true, image == target));
        forms.insert(canonical_form(&f)?);

        let report = verify_258(e)?;
        let tag = format!("258-set with {}", f.name());
        out.push(Check::equal(format!("{tag}: size"), 258, report.size));
        out.push(Check::equal(format!("{tag}: squared distances"), "{2, 4, 6, 8}", join(&report.distance_set)));
        out.push(Check::equal(format!("{tag}: contains the Johnson set"), true, report.contains_johnson));
        out.push(Check::equal(format!("{tag}: addable pool vectors"), 0, report.addable.len()));
    }
    out.push(Check::equal("pool (iv) parts pairwise non-isomorphic", 3, forms.len()));

    let mut values = Vec::new();
    for t in 1..=6 {
        let sum = t_bound(t)?;
        values.push(sum);
        out.push(Check::equal(format!("t = {t}: component sum equals the cubic"), t_bound_cubic(t)?, sum));
    }
    let best = *values.iter().max().expect("six values");
    let argmax: Vec<usize> = (1..=6).filter(|&t| values[t - 1] == best).collect();
    out.push(Check::equal("largest t bound", 258, best));
    out.push(Check::equal("t attaining the largest bound", "{1}", join(&argmax)));

    for t in 7..=9 {
        let report = large_t_analysis(t)?;
        out.push(Check::with(
            format!("t = {t}: bound {} + {t} + {} usable pool (iv) vectors", base_size(), report.usable),
            "<= 181",
            report.bound,
            report.bound <= 181,
        ));
    }

    let first = pool_ii_prefix(1)?;
    let allowed = compat_allowed(&first)?;
    let direct = Pool::Iv.members().iter().filter(|y| y.scaled()[0] != 4).count();
    out.push(Check::equal("pool (iv) compatible with the pool (ii) vector -4/3 first", direct, allowed.len()));

    // a second pool (ii) vector cannot join the first 258-set
    let base = crate::johnson::extremal_258(Extremal::X)?;
    let extra = ScaledVector::new((0..DIM).map(|i| if i == 1 { -4 } else { 2 }).collect());
    let clash = base.iter().any(|x| !ALLOWED_SCALED.contains(&x.scaled_distance(&extra)));
    out.push(Check::equal("adding a second pool (ii) vector creates a fifth distance", true, clash));
    Ok(out)
}

fn section4(opts: &VerifyOptions) -> Result<Vec<Check>, Error> {
    let mut out = Vec::new();
    for k in 1..=6 {
        out.push(Check::equal(format!("general formula at (1,{k},2)"), frak_m(k)?, frak_m_general(1, k, 2)?));
    }
    for n in 3..=9 {
        for m in 1..n {
            for l in m + 1..n - m {
                let k = n - m - l;
                let f = recursive_family(m, k, l, RecursionSeed::WholeLattice)?;
                let tag = format!("recursive family in L({m},{k},{l})");
                out.push(Check::equal(format!("{tag}: size"), frak_m_general(m, k, l)?, f.len()));
                out.push(Check::equal(format!("{tag}: avoids the diameter"), true, f.avoids_diameter()));
                if let Some(b) = m_exact(f.signature()) {
                    let ok = f.len() as u128 <= b.value;
                    out.push(Check::with(format!("{tag}: within the exact value"), format!("<= {}", b.value), f.len(), ok));
                }
            }
        }
    }
    for l in 2..=4 {
        for k in 2..=(8 - l) {
            let f = recursive_family(1, k, l, RecursionSeed::WholeLattice)?;
            let floor = frak_m_general(1, k - 1, l)?;
            let observed = ColumnCounts::of(k + l + 1, f.members()).max_zero();
            out.push(Check::with(
                format!("largest zero column of the recursive family in L(1,{k},{l})"),
                format!(">= {floor}"),
                observed,
                observed as u128 >= floor,
            ));
        }
    }
    for (m, k, l) in [(1, 3, 3), (1, 4, 3)] {
        let (_, g) = lattice_graph(m, k, l)?;
        let alpha = independence_number_with(&g, &opts.solver)?.alpha;
        let a = recursive_family(m, k, l, RecursionSeed::WholeLattice)?.len();
        let b = recursive_family(m, k, l, RecursionSeed::Intersecting)?.len();
        out.push(Check::with(
            format!("alpha L({m},{k},{l}) against the constructions ({a}, {b})"),
            format!(">= {}", a.max(b)),
            alpha,
            alpha >= a.max(b),
        ));
    }
    Ok(out)
}
