//! Chains of ideals: coordinate-bounded ideals of direct powers, symmetric
//! tuple sets, and ideal series of extensions assembled from a series of
//! the base.
//!
//! Every link of every series built here is checked to be an ideal, and the
//! chain to ascend to the whole carrier. Tightness (the differences of
//! consecutive links being ω-unstable) concerns infinite sets only; the
//! predicates for it exist but are false on every finite set.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::{box_star_closed, f_image, ExtensionSemigroup, Materialized};
use crate::perm::all_permutations;
use crate::semigroup::{DirectPower, FiniteSemigroup};
use crate::SizeGuard;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesLink {
    pub label: String,
    pub members: BTreeSet<usize>,
}

/// A chain `I_0 ⊆ I_1 ⊆ … ⊆ I_m` of element sets of some carrier.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdealSeries {
    pub links: Vec<SeriesLink>,
}

impl IdealSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, label: impl Into<String>, members: BTreeSet<usize>) {
        self.links.push(SeriesLink { label: label.into(), members });
    }

    pub fn from_sets(sets: impl IntoIterator<Item = BTreeSet<usize>>) -> Self {
        let mut s = Self::new();
        for (i, m) in sets.into_iter().enumerate() {
            s.push(format!("I{i}"), m);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.links.iter().map(|l| l.members.len()).collect()
    }

    /// Drops links equal to their predecessor.
    pub fn dedup(&self) -> IdealSeries {
        let mut out = IdealSeries::new();
        for l in &self.links {
            if out.links.last().map(|p: &SeriesLink| &p.members) != Some(&l.members) {
                out.links.push(l.clone());
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkReport {
    pub label: String,
    pub size: usize,
    pub is_ideal: bool,
    /// `(left, right, product)` with the product outside the link.
    pub escape: Option<(usize, usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub links: Vec<LinkReport>,
    pub ascending: bool,
    pub top_is_carrier: bool,
    pub bottom_finite: bool,
    pub valid: bool,
}

/// Per-link ideal check, ascent, and top equal to the carrier.
pub fn verify_series(s: &FiniteSemigroup, series: &IdealSeries) -> SeriesReport {
    let links: Vec<LinkReport> = series
        .links
        .iter()
        .map(|l| {
            let escape = s.ideal_violation(&l.members);
            LinkReport {
                label: l.label.clone(),
                size: l.members.len(),
                is_ideal: matches!(escape, Ok(None)),
                escape: escape.ok().flatten(),
            }
        })
        .collect();
    let ascending = series.links.windows(2).all(|w| w[0].members.is_subset(&w[1].members));
    let top_is_carrier = series.links.last().is_some_and(|l| l.members.len() == s.size());
    let valid = !links.is_empty() && links.iter().all(|l| l.is_ideal) && ascending && top_is_carrier;
    SeriesReport { links, ascending, top_is_carrier, bottom_finite: true, valid }
}

/// ω-unstability needs an infinite set, so this is false on every finite
/// set; `strong` selects the two-element variant, equally vacuous.
pub fn omega_unstable(_d: &BTreeSet<usize>, _strong: bool) -> bool {
    false
}

/// Finite bottom link and ω-unstable differences of consecutive links.
pub fn is_tight(series: &IdealSeries, strong: bool) -> bool {
    series.links.windows(2).all(|w| {
        let diff: BTreeSet<usize> = w[1].members.difference(&w[0].members).copied().collect();
        omega_unstable(&diff, strong)
    })
}

fn coord_bounded_unchecked(b: &BTreeSet<usize>, a: &BTreeSet<usize>, m: usize, p: usize) -> BTreeSet<Vec<usize>> {
    std::iter::repeat_n(a.iter().copied(), m)
        .multi_cartesian_product()
        .filter(|t| t.iter().filter(|x| !b.contains(x)).count() <= p)
        .collect()
}

/// Tuples of `A^m` with at most `p` coordinates in `A \ B`, for ideals
/// `B ⊊ A` of `s`.
pub fn coord_bounded(
    s: &FiniteSemigroup,
    b: &BTreeSet<usize>,
    a: &BTreeSet<usize>,
    m: usize,
    p: usize,
) -> Result<BTreeSet<Vec<usize>>> {
    if m == 0 || p > m {
        return Err(Error::InvalidParameters(format!("need 1 <= m and p <= m, got m={m}, p={p}")));
    }
    if !s.is_ideal(a)? || !s.is_ideal(b)? {
        return Err(Error::NotAnIdeal);
    }
    if !b.is_subset(a) || b == a {
        return Err(Error::NotProperSubset);
    }
    Ok(coord_bounded_unchecked(b, a, m, p))
}

/// Closed under every permutation of the `k` coordinates.
pub fn is_k_symmetric(tuples: &BTreeSet<Vec<usize>>, k: usize) -> bool {
    if tuples.iter().any(|t| t.len() != k) {
        return false;
    }
    let perms: Vec<Vec<usize>> = all_permutations(k).collect();
    tuples
        .iter()
        .all(|t| perms.iter().all(|s| tuples.contains(&s.iter().map(|&i| t[i]).collect::<Vec<_>>())))
}

/// For a `k`-symmetric tuple set, the image under the point map is the same
/// for every simultaneous permutation of the domain and range points.
pub fn f_image_is_slot_invariant(
    e: &ExtensionSemigroup,
    tuples: &BTreeSet<Vec<usize>>,
    points_a: &[usize],
    points_b: &[usize],
) -> Result<bool> {
    let k = points_a.len();
    if !is_k_symmetric(tuples, k) {
        return Err(Error::NotKSymmetric(k));
    }
    let reference = f_image(e, tuples, points_a, points_b)?;
    for sigma in all_permutations(k) {
        let pa: Vec<usize> = sigma.iter().map(|&i| points_a[i]).collect();
        let pb: Vec<usize> = sigma.iter().map(|&i| points_b[i]).collect();
        if f_image(e, tuples, &pa, &pb)? != reference {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `{0} ⊆ I^1(S) ⊆ … ⊆ I^n(S)` by rank, in materialized indices.
pub fn rank_series(e: &ExtensionSemigroup, m: &Materialized) -> Result<IdealSeries> {
    let mut s = IdealSeries::new();
    for k in 0..=e.n() {
        let label = if k == 0 { "{0}".to_string() } else { format!("rank<={k}") };
        s.push(label, m.indices_of(&e.rank_at_most(k))?);
    }
    Ok(s)
}

fn check_base_series(s: &FiniteSemigroup, series: &IdealSeries) -> Result<()> {
    let report = verify_series(s, series);
    if !report.valid {
        let bad = report.links.iter().find(|l| !l.is_ideal).map(|l| l.label.clone());
        return Err(Error::BaseSeriesInvalid(match bad {
            Some(label) => format!("link {label} is not an ideal"),
            None if !report.ascending => "links are not ascending".into(),
            None => "top link is not the whole semigroup".into(),
        }));
    }
    Ok(())
}

/// `T_{k,p}` for `p = 0..k·m`: `I_0^k` at `p = 0`, then for
/// `p = (j-1)k + q` the tuples of `I_j^k` with at most `q` coordinates
/// outside `I_{j-1}`.
fn bounded_tuple_set(base: &IdealSeries, k: usize, p: usize) -> BTreeSet<Vec<usize>> {
    if p == 0 {
        let i0 = &base.links[0].members;
        return coord_bounded_unchecked(i0, i0, k, 0);
    }
    let j = (p - 1) / k + 1;
    let q = (p - 1) % k + 1;
    coord_bounded_unchecked(&base.links[j - 1].members, &base.links[j].members, k, q)
}

/// Interleaved series of `S^n`: `I_0^n`, then for each `j` the sets with at
/// most `q = 1..n` coordinates in `I_j \ I_{j-1}`, ending at `S^n`.
pub fn power_series_build(
    s: &FiniteSemigroup,
    base_series: &IdealSeries,
    n: usize,
    guard: SizeGuard,
) -> Result<(DirectPower, IdealSeries)> {
    check_base_series(s, base_series)?;
    let power = s.direct_power(n, guard)?;
    let mut out = IdealSeries::new();
    let m = base_series.len() - 1;
    for p in 0..=n * m {
        let label = if p == 0 {
            format!("{}^{n}", base_series.links[0].label)
        } else {
            let (j, q) = ((p - 1) / n + 1, (p - 1) % n + 1);
            format!("[{}<{}]^{n}_{q}", base_series.links[j - 1].label, base_series.links[j].label)
        };
        out.push(label, power.indices_of(&bounded_tuple_set(base_series, n, p)));
    }
    Ok((power, out))
}

/// Shapes of extension series assembled from a base series
/// `I_0 ⊆ … ⊆ I_m = S`. `J(k,p)` is the closed star box of `T_{k,p}` (see
/// [`power_series_build`]), i.e. every element of rank below `k` together
/// with every rank-`k` element whose label tuple lies in `T_{k,p}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeriesShape {
    /// `{0}`, then `J(k,p)` for `k = 1..n`, `p = 0..km`.
    Refined,
    /// As `Refined` without the lone `{0}` and without `J(k,0)` for `k >= 2`.
    /// A one-link base keeps `J(k,0)`, which is then the rank-`k` top.
    Compact,
    /// Rank one only: `{0}`, `J(1,0), …, J(1,m-1)`, then everything.
    RankOne,
    /// As `RankOne` without the lone `{0}`.
    RankOneCompact,
}

impl std::str::FromStr for SeriesShape {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "refined" => Ok(Self::Refined),
            "compact" => Ok(Self::Compact),
            "rank-one" => Ok(Self::RankOne),
            "rank-one-compact" => Ok(Self::RankOneCompact),
            _ => Err(format!("unknown series shape {s:?}")),
        }
    }
}

/// Builds the chosen series of the extension in materialized indices.
pub fn big_series_build(
    e: &ExtensionSemigroup,
    m: &Materialized,
    base_series: &IdealSeries,
    shape: SeriesShape,
) -> Result<IdealSeries> {
    check_base_series(e.base(), base_series)?;
    let top = base_series.len() - 1;
    let zero = m.indices_of(&e.rank_at_most(0))?;
    let j = |k: usize, p: usize| -> Result<BTreeSet<usize>> {
        m.indices_of(&box_star_closed(e, &bounded_tuple_set(base_series, k, p), k)?)
    };
    let mut out = IdealSeries::new();
    match shape {
        SeriesShape::Refined | SeriesShape::Compact => {
            if shape == SeriesShape::Refined {
                out.push("{0}", zero);
            }
            for k in 1..=e.n() {
                for p in 0..=k * top {
                    if shape == SeriesShape::Compact && k >= 2 && p == 0 && top > 0 {
                        continue;
                    }
                    out.push(format!("J({k},{p})"), j(k, p)?);
                }
            }
        }
        SeriesShape::RankOne | SeriesShape::RankOneCompact => {
            if e.n() != 1 {
                return Err(Error::VariantNeedsRankOne(format!("{shape:?} needs n = 1, got n = {}", e.n())));
            }
            if shape == SeriesShape::RankOne {
                out.push("{0}", zero);
            }
            for p in 0..top {
                out.push(format!("J(1,{p})"), j(1, p)?);
            }
            out.push("all", (0..m.len()).collect());
        }
    }
    Ok(out)
}
