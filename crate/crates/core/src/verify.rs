//! Verification batteries shared by the `verify` subcommand and the
//! acceptance tests. Each battery checks one family of structural facts
//! exhaustively at desk scale and reports a single verdict.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bicyclic::{bc_green, bc_green_bounded, bc_mul, elements_up_to, verify_h_counterexample};
use crate::error::{Error, Result};
use crate::extension::{
    box_set, brandt_iso, congruence_violation, embedding_map, equiv0, equiv0_literal, is_idempotent_brute,
    is_idempotent_fast, is_regular_brute, is_regular_fast, j0_ideal, literal_counterexample, quotient,
    restriction_map, ExtElement, ExtensionSemigroup,
};
use crate::green::{green, GreenRelation};
use crate::green_ext::{cross_check_green, mismatches};
use crate::pinj::{enumerate_in, in_count, matrix_units_iso};
use crate::semigroup::{FiniteSemigroup, Regularity};
use crate::series::{
    big_series_build, coord_bounded, is_k_symmetric, power_series_build, rank_series, verify_series, IdealSeries,
    SeriesShape,
};
use crate::{zoo, SizeGuard};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// The library error that aborted the battery, if any.
    #[serde(skip)]
    pub error: Option<Error>,
}

impl CriterionResult {
    fn from_outcome(id: u32, name: &str, outcome: Result<std::result::Result<String, String>>) -> Self {
        let (passed, detail, error) = match outcome {
            Ok(Ok(d)) => (true, d, None),
            Ok(Err(d)) => (false, d, None),
            Err(e) => (false, format!("error: {e}"), Some(e)),
        };
        CriterionResult { id, name: name.to_string(), passed, detail, error }
    }

    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

/// One extension instance: a named base with `λ` and `n`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub base_name: String,
    pub base: FiniteSemigroup,
    pub lambda: usize,
    pub n: usize,
}

impl Instance {
    pub fn new(base_name: &str, base: FiniteSemigroup, lambda: usize, n: usize) -> Self {
        Instance { base_name: base_name.to_string(), base, lambda, n }
    }

    fn extension(&self) -> Result<ExtensionSemigroup> {
        ExtensionSemigroup::new(self.base.clone(), self.lambda, self.n)
    }

    fn tag(&self) -> String {
        format!("{} l={} n={}", self.base_name, self.lambda, self.n)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub guard: SizeGuard,
    /// Exponent bound for the bicyclic witness search.
    pub bound: u64,
    /// Restricts instance-based batteries to this instance.
    pub instance: Option<Instance>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { guard: SizeGuard::default(), bound: 5, instance: None }
    }
}

type Outcome = Result<std::result::Result<String, String>>;

fn fail(msg: String) -> Outcome {
    Ok(Err(msg))
}

fn grid() -> Vec<(usize, usize)> {
    [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)].to_vec()
}

fn zoo_instances(grid: &[(usize, usize)], max_base: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for (name, base) in zoo::all().into_iter().filter(|(_, b)| b.size() <= max_base) {
        for &(lambda, n) in grid {
            out.push(Instance::new(name, base.clone(), lambda, n));
        }
    }
    out
}

fn instances_or(opts: &VerifyOptions, default: Vec<Instance>) -> Vec<Instance> {
    opts.instance.clone().map(|i| vec![i]).unwrap_or(default)
}

/// Independent count: injective partial maps of rank at most `n`, found by
/// running through every assignment `x ↦ y or undefined`, weighted by
/// `labels^rank`.
fn brute_count(lambda: usize, n: usize, labels: usize) -> u128 {
    let choices = lambda + 1;
    let mut total = 0u128;
    for code in 0..choices.pow(lambda as u32) {
        let mut c = code;
        let mut used = vec![false; lambda];
        let mut rank = 0;
        let mut ok = true;
        for _ in 0..lambda {
            let y = c % choices;
            c /= choices;
            if y < lambda {
                if used[y] {
                    ok = false;
                    break;
                }
                used[y] = true;
                rank += 1;
            }
        }
        if ok && rank <= n {
            total += (labels as u128).pow(rank as u32);
        }
    }
    total
}

pub fn enumeration_counts(opts: &VerifyOptions) -> Outcome {
    let mut seen = BTreeSet::new();
    let mut checked = 0;
    for (lambda, n) in grid() {
        for base in [zoo::trivial(), zoo::min2(), zoo::chain3()] {
            let e = ExtensionSemigroup::new(base.clone(), lambda, n)?;
            let expect = brute_count(lambda, n, base.size());
            let listed = e.enumerate(opts.guard)?;
            let distinct: BTreeSet<&ExtElement> = listed.iter().collect();
            if e.count() != expect || listed.len() as u128 != expect || distinct.len() != listed.len() {
                return fail(format!(
                    "l={lambda} n={n} |S|={}: formula {} enumerated {} oracle {expect}",
                    base.size(),
                    e.count(),
                    listed.len()
                ));
            }
            seen.insert(expect);
            checked += 1;
        }
        let unlabeled = enumerate_in(lambda, n, opts.guard)?.len() as u128;
        if unlabeled != in_count(lambda, n) || unlabeled != brute_count(lambda, n, 1) {
            return fail(format!("unlabeled l={lambda} n={n}: {unlabeled}"));
        }
        seen.insert(unlabeled);
    }
    for v in [9, 17, 28, 91, 190] {
        if !seen.contains(&v) {
            return fail(format!("expected count {v} not produced"));
        }
    }
    Ok(Ok(format!("{checked} labeled instances and 5 unlabeled match the oracle (9, 17, 28, 91, 190 seen)")))
}

pub fn predicate_equivalence(opts: &VerifyOptions) -> Outcome {
    let mut elements = 0;
    let instances = instances_or(opts, zoo_instances(&grid(), usize::MAX));
    for inst in &instances {
        let e = inst.extension()?;
        let all = e.enumerate(opts.guard)?;
        for a in &all {
            if is_idempotent_fast(&e, a) != is_idempotent_brute(&e, a) {
                return fail(format!("{}: idempotent predicate differs at {a}", inst.tag()));
            }
            if is_regular_fast(&e, a) != is_regular_brute(&e, a, &all) {
                return fail(format!("{}: regular predicate differs at {a}", inst.tag()));
            }
        }
        elements += all.len();
    }
    Ok(Ok(format!("{} instances, {elements} elements, no disagreement", instances.len())))
}

fn flags(r: &Regularity) -> [bool; 3] {
    [r.is_regular, r.is_orthodox, r.is_inverse]
}

pub fn flag_inheritance(opts: &VerifyOptions) -> Outcome {
    let defaults = zoo_instances(&[(2, 1), (2, 2)], usize::MAX);
    let instances = instances_or(opts, defaults);
    let mut failing = [false; 3];
    let mut failing_q = [false; 3];
    let mut quotients = 0;
    for inst in &instances {
        let base_flags = flags(&inst.base.regularity());
        let e = inst.extension()?;
        let m = e.materialize(opts.guard)?;
        let ext_flags = flags(&m.semigroup.regularity());
        if ext_flags != base_flags {
            return fail(format!("{}: base {base_flags:?} extension {ext_flags:?}", inst.tag()));
        }
        for i in 0..3 {
            failing[i] |= !base_flags[i];
        }
        if inst.base.zero().is_some() {
            let q = quotient(&e, opts.guard)?;
            let q_flags = flags(&q.semigroup.regularity());
            if q_flags != base_flags {
                return fail(format!("{}: base {base_flags:?} quotient {q_flags:?}", inst.tag()));
            }
            for i in 0..3 {
                failing_q[i] |= !base_flags[i];
            }
            quotients += 1;
        }
    }
    if opts.instance.is_none() && (failing != [true; 3] || failing_q != [true; 3]) {
        return fail(format!(
            "zoo does not exercise every flag both ways (extension {failing:?}, quotient {failing_q:?})"
        ));
    }
    Ok(Ok(format!("{} extensions and {quotients} quotients inherit regular/orthodox/inverse", instances.len())))
}

pub fn congruence(opts: &VerifyOptions) -> Outcome {
    let defaults = vec![
        Instance::new("min2", zoo::min2(), 2, 1),
        Instance::new("min2", zoo::min2(), 2, 2),
        Instance::new("chain3", zoo::chain3(), 2, 1),
        Instance::new("chain3", zoo::chain3(), 2, 2),
    ];
    let instances = instances_or(opts, defaults);
    for inst in &instances {
        let e = inst.extension()?;
        let m = e.materialize(opts.guard)?;
        if let Some(v) = congruence_violation(&e, &m, equiv0)? {
            return fail(format!("{}: {v:?}", inst.tag()));
        }
        let j0 = m.indices_of(&j0_ideal(&e)?)?;
        if !m.semigroup.is_ideal(&j0)? {
            return fail(format!("{}: J0 is not an ideal", inst.tag()));
        }
        quotient(&e, opts.guard)?;
    }
    let literal = literal_reading_counterexample(opts)?;
    match literal {
        Ok(d) => Ok(Ok(format!("{} instances are congruences; per-pair reading fails as expected: {d}", instances.len()))),
        Err(d) => Ok(Err(d)),
    }
}

/// The per-pair reading of the zero-label relation must fail to be a
/// congruence, with the recorded pair as a witness.
pub fn literal_reading_counterexample(opts: &VerifyOptions) -> Outcome {
    let e = ExtensionSemigroup::new(zoo::min2(), 2, 1)?;
    let a = ExtElement::from_triples(vec![(0, 1, 0)])?;
    let b = ExtElement::from_triples(vec![(0, 1, 1)])?;
    let c = a.clone();
    let (pa, pb) = (e.product(&a, &c)?, e.product(&b, &c)?);
    if !equiv0_literal(&e, &a, &b)? || equiv0_literal(&e, &pa, &pb)? {
        return fail("recorded counterexample no longer fails".into());
    }
    let found = literal_counterexample(&e, opts.guard)?
        .ok_or_else(|| Error::NotACongruence("search found no counterexample".into()))?;
    Ok(Ok(format!(
        "counterexample recorded: {a} ~ {b} but {a}*{c} = {pa} and {b}*{c} = {pb} are unrelated (first found: {} ~ {})",
        found.a, found.b
    )))
}

pub fn green_cross_check(opts: &VerifyOptions) -> Outcome {
    let mut defaults = Vec::new();
    for (name, base) in [("trivial", zoo::trivial()), ("Z2", zoo::z2()), ("min2", zoo::min2()), ("T2", zoo::t2())] {
        for n in 1..=2 {
            defaults.push(Instance::new(name, base.clone(), 2, n));
        }
    }
    let instances = instances_or(opts, defaults);
    let mut total = 0;
    for inst in &instances {
        let reports = cross_check_green(&inst.extension()?, opts.guard)?;
        let bad = mismatches(&reports);
        if let Some(r) = bad.first() {
            return fail(format!(
                "{}: {} mismatches, first {} on ({}, {}) char={} brute={}",
                inst.tag(),
                bad.len(),
                r.relation,
                r.pair.0,
                r.pair.1,
                r.char_result,
                r.brute_result
            ));
        }
        total += reports.len();
    }
    Ok(Ok(format!("{} instances, {total} verdicts, 0 mismatches", instances.len())))
}

pub fn bicyclic(opts: &VerifyOptions) -> Outcome {
    let report = verify_h_counterexample(2, 2)?;
    if !report.passed {
        return fail(format!("two-point example failed: {report:?}"));
    }
    let small = elements_up_to(6);
    for &u in &small {
        for &v in &small {
            let uv = bc_mul(u, v);
            for &w in &small {
                if bc_mul(uv, w) != bc_mul(u, bc_mul(v, w)) {
                    return fail(format!("not associative at {u}, {v}, {w}"));
                }
            }
        }
    }
    let pairs = elements_up_to(4);
    for &u in &pairs {
        for &v in &pairs {
            for rel in GreenRelation::ALL {
                if bc_green(u, v, rel).related != bc_green_bounded(u, v, rel, opts.bound) {
                    return fail(format!("{rel} on ({u}, {v}) disagrees with bounded search"));
                }
            }
        }
    }
    Ok(Ok(format!(
        "4 factorizations hold, no labelwise H alignment, associativity on 7^3 triples, closed form = search (bound {}) on 25^2 pairs",
        opts.bound
    )))
}

pub fn coordinate_ideals(opts: &VerifyOptions) -> Outcome {
    let mut checked = 0;
    let mut null2_example = false;
    for (name, s) in zoo::all() {
        let ideals = s.ideals()?;
        for a in &ideals {
            for b in ideals.iter().filter(|b| b.is_subset(a) && *b != a) {
                for m in 1..=3 {
                    let power = s.direct_power(m, opts.guard)?;
                    for p in 0..=m {
                        let tuples = coord_bounded(&s, b, a, m, p)?;
                        let members = power.indices_of(&tuples);
                        if !power.semigroup.is_ideal(&members)? || !is_k_symmetric(&tuples, m) {
                            return fail(format!("{name} B={b:?} A={a:?} m={m} p={p}"));
                        }
                        if p == m && tuples.len() != a.len().pow(m as u32) {
                            return fail(format!("{name}: top set is not A^m"));
                        }
                        if name == "null2" && m == 2 && p == 1 {
                            null2_example = tuples.len() == 3;
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    if !null2_example {
        return fail("null2 example does not have size 3".into());
    }
    Ok(Ok(format!("{checked} coordinate-bounded sets are symmetric ideals")))
}

fn kernel_series(s: &FiniteSemigroup) -> Result<IdealSeries> {
    let ideals = s.ideals()?;
    let kernel = ideals[0].clone();
    let all: BTreeSet<usize> = s.elements().collect();
    Ok(if kernel == all { IdealSeries::from_sets([all]) } else { IdealSeries::from_sets([kernel, all]) })
}

pub fn series(opts: &VerifyOptions) -> Outcome {
    let g = opts.guard;
    let mut checked = 0;
    let check = |s: &FiniteSemigroup, series: &IdealSeries, what: &str| -> std::result::Result<(), String> {
        let r = verify_series(s, series);
        if r.valid {
            Ok(())
        } else {
            Err(format!("{what}: {r:?}"))
        }
    };
    let expected = [
        (zoo::trivial(), 2, 2, vec![1, 5, 7]),
        (zoo::min2(), 2, 1, vec![1, 9]),
        (zoo::min2(), 3, 2, vec![1, 19, 91]),
    ];
    for (base, lambda, n, sizes) in expected {
        let e = ExtensionSemigroup::new(base, lambda, n)?;
        let m = e.materialize(g)?;
        let s = rank_series(&e, &m)?;
        if s.sizes() != sizes {
            return fail(format!("rank series sizes {:?}, expected {sizes:?}", s.sizes()));
        }
        if let Err(d) = check(&m.semigroup, &s, "rank series") {
            return Ok(Err(d));
        }
        checked += 1;
    }
    for (name, s) in zoo::all() {
        let base = kernel_series(&s)?;
        for n in 1..=3 {
            let (power, ps) = power_series_build(&s, &base, n, g)?;
            if ps.len() != (base.len() - 1) * n + 1 {
                return fail(format!("{name}: power series has {} links", ps.len()));
            }
            if let Err(d) = check(&power.semigroup, &ps, &format!("{name} power series n={n}")) {
                return Ok(Err(d));
            }
            checked += 1;
        }
        for n in 1..=2 {
            let e = ExtensionSemigroup::new(s.clone(), 2, n)?;
            let m = e.materialize(g)?;
            if let Err(d) = check(&m.semigroup, &rank_series(&e, &m)?, &format!("{name} rank series")) {
                return Ok(Err(d));
            }
            let mut shapes = vec![SeriesShape::Refined, SeriesShape::Compact];
            if n == 1 {
                shapes.extend([SeriesShape::RankOne, SeriesShape::RankOneCompact]);
            }
            for shape in shapes {
                let bs = big_series_build(&e, &m, &base, shape)?;
                if let Err(d) = check(&m.semigroup, &bs, &format!("{name} n={n} {shape:?}")) {
                    return Ok(Err(d));
                }
                checked += 1;
            }
        }
    }
    let null2 = IdealSeries::from_sets([BTreeSet::from([0]), BTreeSet::from([0, 1])]);
    let (_, ps) = power_series_build(&zoo::null2(), &null2, 2, g)?;
    if ps.sizes() != vec![1, 3, 4] {
        return fail(format!("null2 power series sizes {:?}", ps.sizes()));
    }
    let e = ExtensionSemigroup::new(zoo::min2(), 2, 1)?;
    let m = e.materialize(g)?;
    let rank_one = big_series_build(&e, &m, &null2, SeriesShape::RankOne)?;
    if rank_one.sizes() != vec![1, 5, 9] {
        return fail(format!("rank-one series sizes {:?}", rank_one.sizes()));
    }
    let e = ExtensionSemigroup::new(zoo::chain3(), 2, 2)?;
    let m = e.materialize(g)?;
    if m.len() != 31 {
        return fail(format!("chain3 extension has {} elements", m.len()));
    }
    let chain = IdealSeries::from_sets([BTreeSet::from([0]), BTreeSet::from([0, 1]), BTreeSet::from([0, 1, 2])]);
    for shape in [SeriesShape::Refined, SeriesShape::Compact] {
        if let Err(d) = check(&m.semigroup, &big_series_build(&e, &m, &chain, shape)?, "chain3") {
            return Ok(Err(d));
        }
        checked += 1;
    }
    Ok(Ok(format!("{checked} series verified (ideal links, ascending, top = carrier); tightness not claimed")))
}

pub fn isomorphisms(opts: &VerifyOptions) -> Outcome {
    let g = opts.guard;
    for lambda in 1..=3 {
        if !matrix_units_iso(lambda, g)?.1 {
            return fail(format!("matrix units not isomorphic at l={lambda}"));
        }
    }
    let mut embeddings = 0;
    for (name, s) in zoo::all() {
        if !brandt_iso(&s, 2, g)?.1 {
            return fail(format!("Brandt extension of {name} not isomorphic"));
        }
        let e = ExtensionSemigroup::new(s.clone(), 2, 2)?;
        let m = e.materialize(g)?;
        for points in [vec![0], vec![1], vec![0, 1], vec![1, 0]] {
            let (power, map) = embedding_map(&e, &m, &points, g)?;
            let image: BTreeSet<usize> = map.iter().copied().collect();
            let full: BTreeSet<usize> = s.elements().collect();
            let diagonal = m.indices_of(&box_set(&e, &vec![full; points.len()], &points, &points)?)?;
            if !FiniteSemigroup::is_morphism(&map, &power.semigroup, &m.semigroup, false)
                || image.len() != map.len()
                || image != diagonal
            {
                return fail(format!("{name}: embedding at {points:?} fails"));
            }
            embeddings += 1;
        }
    }
    Ok(Ok(format!("matrix units l<=3, {} Brandt extensions, {embeddings} power embeddings", zoo::all().len())))
}

pub fn sanity(opts: &VerifyOptions) -> Outcome {
    let g = opts.guard;
    let mut semigroups: Vec<(String, FiniteSemigroup)> =
        zoo::all().into_iter().map(|(n, s)| (n.to_string(), s)).collect();
    let mut restrictions = 0;
    for inst in zoo_instances(&grid(), 3) {
        let e = inst.extension()?;
        let m = e.materialize(g)?;
        let (target, map) = restriction_map(&e, &m, g)?;
        let onto: BTreeSet<usize> = map.iter().copied().collect();
        if !FiniteSemigroup::is_morphism(&map, &m.semigroup, &target, false) || onto.len() != target.size() {
            return fail(format!("{}: label erasure is not a surjective morphism", inst.tag()));
        }
        restrictions += 1;
        if inst.base.zero().is_some() && inst.lambda == 2 {
            semigroups.push((format!("{} quotient", inst.tag()), quotient(&e, g)?.semigroup));
        }
        semigroups.push((inst.tag(), m.semigroup));
    }
    for (name, s) in &semigroups {
        let gs = green(s);
        if !gs.d_equals_j() || !gs.refinement_chain_holds() {
            return fail(format!("{name}: Green structure inconsistent"));
        }
        let st = s.stability();
        if !st.stable {
            return fail(format!("{name}: unstable at {:?}", st.witness));
        }
    }
    Ok(Ok(format!(
        "D = J and stability on {} semigroups; label erasure onto the unlabeled semigroup for {restrictions} instances",
        semigroups.len()
    )))
}

/// A battery and the criterion it decides.
pub struct Battery {
    pub id: u32,
    pub name: &'static str,
    pub suite: &'static str,
    pub run: fn(&VerifyOptions) -> Outcome,
}

pub const BATTERIES: [Battery; 10] = [
    Battery { id: 1, name: "enumeration counts", suite: "counts", run: enumeration_counts },
    Battery { id: 2, name: "fast predicates", suite: "predicates", run: predicate_equivalence },
    Battery { id: 3, name: "flag inheritance", suite: "flags", run: flag_inheritance },
    Battery { id: 4, name: "zero-label congruence", suite: "congruence", run: congruence },
    Battery { id: 5, name: "Green characterization", suite: "green", run: green_cross_check },
    Battery { id: 6, name: "bicyclic example", suite: "bicyclic", run: bicyclic },
    Battery { id: 7, name: "coordinate-bounded ideals", suite: "series", run: coordinate_ideals },
    Battery { id: 8, name: "ideal series", suite: "series", run: series },
    Battery { id: 9, name: "isomorphisms", suite: "iso", run: isomorphisms },
    Battery { id: 10, name: "engine sanity", suite: "sanity", run: sanity },
];

pub const SUITES: [&str; 10] =
    ["all", "counts", "predicates", "flags", "congruence", "green", "bicyclic", "series", "iso", "sanity"];

pub fn run_battery(b: &Battery, opts: &VerifyOptions) -> CriterionResult {
    CriterionResult::from_outcome(b.id, b.name, (b.run)(opts))
}

/// Runs every battery of the named suite (`all` for every battery).
pub fn run_suite(suite: &str, opts: &VerifyOptions) -> Result<Vec<CriterionResult>> {
    if !SUITES.contains(&suite) {
        return Err(Error::InvalidParameters(format!("unknown suite {suite:?}")));
    }
    Ok(BATTERIES
        .iter()
        .filter(|b| suite == "all" || b.suite == suite)
        .map(|b| run_battery(b, opts))
        .collect())
}
