//! Theorem-level property suites over shipped presentations.
//!
//! Each check produces one [`CheckRecord`] tagged with the statement it
//! exercises. Undecided checks are reported as [`Outcome::Unknown`] and
//! never folded into pass or fail. Claims that cannot be tested at desk
//! scale, and definite outcomes a statement does not predict because its
//! hypothesis is unmet, are reported as [`Outcome::Noted`].

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::constructions::{
    make_discrete_from_bornology, make_example5, make_filter_modified, make_metric, make_reindexed, BoundedChain,
    PhiChain,
};
use crate::functions::{
    macro_uniform_check, normality_separator, shipped_candidates, sob_check, submetrizable_witness, SeparatorError,
};
use crate::presentation::{ground_points, Ballean, SharedBallean};
use crate::relations::{closeness, compare_relations, is_discrete_at, is_large_at, is_linked};
use crate::subset::{Point, SubsetSpec};
use crate::verdict::{Scale, ScaleWindow, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    Unknown,
    Noted,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Unknown => "unknown",
            Outcome::Noted => "noted",
        }
    }

    /// Fail dominates Unknown, which dominates Pass.
    fn worst(self, other: Outcome) -> Outcome {
        use Outcome::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Unknown, _) | (_, Unknown) => Unknown,
            (Noted, x) | (x, Noted) => x,
            _ => Pass,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub outcome: Outcome,
    pub detail: String,
    pub witness: Option<String>,
    pub runtime: Duration,
}

impl CheckRecord {
    fn new(id: impl Into<String>, anchor: &str, outcome: Outcome, detail: impl Into<String>) -> Self {
        CheckRecord {
            id: id.into(),
            anchor: anchor.into(),
            outcome,
            detail: detail.into(),
            witness: None,
            runtime: Duration::ZERO,
        }
    }

    fn witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
    pub noted: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite_name: String,
    pub scale: ScaleWindow,
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    fn new(name: impl Into<String>, sw: &ScaleWindow) -> Self {
        SuiteReport { suite_name: name.into(), scale: *sw, checks: Vec::new() }
    }

    fn push(&mut self, started: Instant, mut record: CheckRecord) {
        debug_assert!(record.outcome != Outcome::Fail || record.witness.is_some());
        record.runtime = started.elapsed();
        self.checks.push(record);
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for c in &self.checks {
            match c.outcome {
                Outcome::Pass => s.pass += 1,
                Outcome::Fail => s.fail += 1,
                Outcome::Unknown => s.unknown += 1,
                Outcome::Noted => s.noted += 1,
            }
        }
        s
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// Fixed, versioned family of sample subsets.
pub fn sample_family() -> Vec<(&'static str, SubsetSpec)> {
    let arith = |a, b| SubsetSpec::Arithmetic { start: a, step: b };
    let geom = |a, q, d| SubsetSpec::Geometric { start: a, ratio: q, drift: d };
    vec![
        ("all", arith(0, 1)),
        ("tail7", arith(7, 1)),
        ("evens", arith(0, 2)),
        ("odds", arith(1, 2)),
        ("thirds0", arith(0, 3)),
        ("thirds1", arith(1, 3)),
        ("thirds2", arith(2, 3)),
        ("fifths0", arith(0, 5)),
        ("fifths4", arith(4, 5)),
        ("pow2", geom(1, 2, 0)),
        ("three_pow2", geom(3, 2, 0)),
        ("pow4", geom(1, 4, 0)),
        ("twice_pow4", geom(2, 4, 0)),
        ("pow4_plus_n", geom(1, 4, 1)),
        ("head", SubsetSpec::list([0, 1, 2])),
        ("block", SubsetSpec::list([5, 6, 7, 8])),
        ("scattered", SubsetSpec::list([2, 40, 100])),
        ("empty", SubsetSpec::list([])),
        ("pairs_low", SubsetSpec::union(vec![arith(1, 4), arith(2, 4)])),
        ("pairs_high", SubsetSpec::union(vec![arith(0, 4), arith(1, 4)])),
    ]
}

/// Fixed family of subset pairs.
pub fn pair_family() -> Vec<(SubsetSpec, SubsetSpec)> {
    let arith = |a, b| SubsetSpec::Arithmetic { start: a, step: b };
    let geom = |a, q, d| SubsetSpec::Geometric { start: a, ratio: q, drift: d };
    vec![
        (arith(0, 2), arith(1, 2)),
        (geom(1, 4, 0), geom(2, 4, 0)),
        (geom(1, 4, 0), SubsetSpec::difference(geom(1, 4, 1), SubsetSpec::list([1]))),
        (arith(0, 3), arith(1, 3)),
        (arith(0, 2), arith(0, 3)),
        (SubsetSpec::list([0, 1, 2]), SubsetSpec::list([5, 6])),
        (SubsetSpec::list([1, 2, 3]), SubsetSpec::All),
        (arith(0, 5), SubsetSpec::All),
        (geom(1, 2, 0), arith(0, 2)),
        (arith(1, 2), arith(1, 4)),
    ]
}

fn show_points(points: &[Point]) -> String {
    points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

fn show_verdict(v: &Verdict) -> String {
    v.to_string()
}

fn pair_label(a: &SubsetSpec, b: &SubsetSpec) -> String {
    format!("{a} / {b}")
}

/// Greedy witness pair for a non-discrete scale `r`: points `y` with
/// non-trivial, pairwise disjoint `r`-balls, and for each one the least
/// other point `z_y` of its ball.
pub fn theorem1_witness<B: Ballean + ?Sized>(b: &B, r: Scale, sw: &ScaleWindow) -> (SubsetSpec, SubsetSpec) {
    let mut covered = std::collections::HashSet::new();
    let (mut ys, mut zs) = (Vec::new(), Vec::new());
    for y in ground_points(b, sw.window) {
        let ball = b.ball(y, r);
        if ball.len() < 2 || ball.iter().any(|p| covered.contains(p)) {
            continue;
        }
        let z = *ball.iter().find(|&&p| p != y).expect("ball has a second point");
        covered.extend(ball);
        ys.push(y);
        zs.push(z);
    }
    (SubsetSpec::trace(ys), SubsetSpec::trace(zs))
}

/// Discrete presentations: close pairs differ by bounded sets and linked
/// pairs are bounded or meet in an unbounded set. Non-discrete ones: the
/// greedy witness pair is linked and disjoint.
pub fn run_theorem1(b: &dyn Ballean, name: &str, sw: &ScaleWindow) -> SuiteReport {
    let mut report = SuiteReport::new(format!("theorem1:{name}"), sw);
    let started = Instant::now();
    let discreteness = is_discrete_at(b, sw);
    report.push(
        started,
        CheckRecord::new("theorem1.discreteness", "Theorem 1", Outcome::Noted, format!("discrete={}", show_verdict(&discreteness))),
    );
    if discreteness.is_yes() {
        let started = Instant::now();
        let samples = sample_family();
        let pairs: Vec<(usize, usize)> =
            (0..samples.len()).flat_map(|i| (i..samples.len()).map(move |j| (i, j))).collect();
        let results: Vec<(Option<Outcome>, Option<Outcome>)> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (y, z) = (&samples[i].1, &samples[j].1);
                let close = closeness(b, y, z, sw).is_yes().then(|| {
                    let left = b.is_bounded(&SubsetSpec::difference(y.clone(), z.clone()), sw);
                    let right = b.is_bounded(&SubsetSpec::difference(z.clone(), y.clone()), sw);
                    if left.is_no() || right.is_no() {
                        Outcome::Fail
                    } else if left.is_yes() && right.is_yes() {
                        Outcome::Pass
                    } else {
                        Outcome::Unknown
                    }
                });
                let linked = is_linked(b, y, z, sw).is_yes().then(|| {
                    let both_bounded = b.is_bounded(y, sw).is_yes() && b.is_bounded(z, sw).is_yes();
                    let meet = b.is_bounded(&SubsetSpec::intersection(vec![y.clone(), z.clone()]), sw);
                    if both_bounded || meet.is_no() {
                        Outcome::Pass
                    } else if meet.is_yes() {
                        Outcome::Fail
                    } else {
                        Outcome::Unknown
                    }
                });
                (close, linked)
            })
            .collect();
        for (id, anchor, pick) in [
            ("theorem1.2", "Theorem 1(2)", 0usize),
            ("theorem1.3", "Theorem 1(3)", 1usize),
        ] {
            let mut outcome = Outcome::Pass;
            let mut checked = 0;
            let mut first_bad = None;
            for (k, res) in results.iter().enumerate() {
                let o = if pick == 0 { res.0 } else { res.1 };
                if let Some(o) = o {
                    checked += 1;
                    if o == Outcome::Fail && first_bad.is_none() {
                        first_bad = Some(pairs[k]);
                    }
                    outcome = outcome.worst(o);
                }
            }
            let what = if pick == 0 { "close_pairs" } else { "linked_pairs" };
            let mut record = CheckRecord::new(id, anchor, outcome, format!("{what}={checked} samples={}", samples.len()));
            if let Some((i, j)) = first_bad {
                record = record.witness(pair_label(&samples[i].1, &samples[j].1));
            }
            report.push(started, record);
        }
    } else if let (true, Some(r)) = (discreteness.is_no(), discreteness.witness_scale()) {
        let started = Instant::now();
        let (y, z) = theorem1_witness(b, r, sw);
        let linked = is_linked(b, &y, &z, sw);
        let disjoint = y.enumerate(sw.window).iter().all(|&p| !z.contains(p));
        let outcome = if !disjoint || linked.is_no() {
            Outcome::Fail
        } else if linked.is_yes() {
            Outcome::Pass
        } else {
            Outcome::Unknown
        };
        let (yp, zp) = (y.enumerate(sw.window), z.enumerate(sw.window));
        let record = CheckRecord::new(
            "theorem1.witness",
            "Theorem 1",
            outcome,
            format!("r={r} linked={} disjoint={disjoint} |Y|={} |Z|={}", show_verdict(&linked), yp.len(), zp.len()),
        )
        .witness(format!("Y={} Z={}", show_points(&yp[..yp.len().min(4)]), show_points(&zp[..zp.len().min(4)])));
        report.push(started, record);
    } else {
        report.push(
            started,
            CheckRecord::new("theorem1.witness", "Theorem 1", Outcome::Unknown, "discreteness undecided"),
        );
    }
    report
}

/// Filter-modified chain against its base: ball inclusion, strictness,
/// equal bornologies and transfer of linkness.
pub fn run_filter_construction(base: &SharedBallean, phi: &PhiChain, name: &str, sw: &ScaleWindow) -> SuiteReport {
    let mut report = SuiteReport::new(format!("filter:{name}"), sw);
    let filtered = match make_filter_modified(base.clone(), phi.clone()) {
        Ok(f) => f,
        Err(e) => {
            report.push(
                Instant::now(),
                CheckRecord::new("filter.construct", "Theorem 3", Outcome::Fail, e.to_string()).witness(format!("{phi:?}")),
            );
            return report;
        }
    };

    let started = Instant::now();
    let unbounded = base.is_bounded(&SubsetSpec::All, sw);
    report.push(
        started,
        CheckRecord::new(
            "filter.base_unbounded",
            "Theorem 3",
            if unbounded.is_no() { Outcome::Pass } else { Outcome::Unknown },
            format!("bounded(X)={}", show_verdict(&unbounded)),
        ),
    );

    let started = Instant::now();
    let xs = ground_points(base.as_ref(), sw.window);
    let cells: Vec<(Point, Scale)> = xs.iter().flat_map(|&x| sw.scales().map(move |r| (x, r))).collect();
    let escaped = cells.par_iter().find_first(|&&(x, r)| {
        let big = base.ball(x, r);
        filtered.ball(x, r).iter().any(|p| big.binary_search(p).is_err())
    });
    let mut record = CheckRecord::new(
        "filter.inclusion",
        "Theorem 3",
        if escaped.is_some() { Outcome::Fail } else { Outcome::Pass },
        format!("cells={}", cells.len()),
    );
    if let Some((x, r)) = escaped {
        record = record.witness(format!("x={x} r={r}"));
    }
    report.push(started, record);

    let started = Instant::now();
    let strict = cells.iter().find(|&&(x, r)| filtered.ball(x, r).len() < base.ball(x, r).len());
    let record = match strict {
        Some(&(x, r)) => CheckRecord::new("filter.strict", "Theorem 3", Outcome::Pass, "strict inclusion witnessed")
            .witness(format!("x={x} r={r}")),
        None => CheckRecord::new("filter.strict", "Theorem 3", Outcome::Unknown, "no strict cell in window"),
    };
    report.push(started, record);

    let started = Instant::now();
    let samples = sample_family();
    let mismatch = samples.iter().find(|(_, s)| base.is_bounded(s, sw).label() != filtered.is_bounded(s, sw).label());
    let mut record = CheckRecord::new(
        "filter.bornology",
        "Theorem 3",
        if mismatch.is_some() { Outcome::Fail } else { Outcome::Pass },
        format!("samples={}", samples.len()),
    );
    if let Some((n, _)) = mismatch {
        record = record.witness(n.to_string());
    }
    report.push(started, record);

    let pairs = pair_family();
    let started = Instant::now();
    let verdicts: Vec<(Verdict, Verdict)> = pairs
        .par_iter()
        .map(|(a, c)| (is_linked(base.as_ref(), a, c, sw), is_linked(filtered.as_ref(), a, c, sw)))
        .collect();
    let mut outcome = Outcome::Pass;
    let mut bad = None;
    for (k, (in_base, in_filtered)) in verdicts.iter().enumerate() {
        if in_filtered.is_yes() {
            let o = if in_base.is_yes() {
                Outcome::Pass
            } else if in_base.is_no() {
                Outcome::Fail
            } else {
                Outcome::Unknown
            };
            if o == Outcome::Fail && bad.is_none() {
                bad = Some(k);
            }
            outcome = outcome.worst(o);
        }
    }
    let mut record = CheckRecord::new("filter.linked_down", "Theorem 3", outcome, format!("pairs={}", pairs.len()));
    if let Some(k) = bad {
        record = record.witness(pair_label(&pairs[k].0, &pairs[k].1));
    }
    report.push(started, record);

    for (k, ((a, c), (in_base, in_filtered))) in pairs.iter().zip(&verdicts).enumerate() {
        let started = Instant::now();
        let detail = format!("base={} filtered={}", show_verdict(in_base), show_verdict(in_filtered));
        let outcome = if !in_base.is_yes() || in_filtered.is_yes() {
            if in_base.is_yes() {
                Outcome::Pass
            } else {
                Outcome::Noted
            }
        } else if in_filtered.is_no() {
            Outcome::Noted
        } else {
            Outcome::Unknown
        };
        let detail = match (in_base.is_yes(), in_filtered.is_no()) {
            (false, _) => format!("{detail} premise not met"),
            (true, true) => format!("{detail} expected: ultrafilter hypothesis unmet"),
            _ => detail,
        };
        report.push(
            started,
            CheckRecord::new(format!("filter.linked_up.{k}"), "Theorem 3", outcome, detail).witness(pair_label(a, c)),
        );
    }
    report
}

/// Largeness test sets for the paired ballean.
pub fn example5_samples() -> Vec<(&'static str, SubsetSpec)> {
    let arith = |a, b| SubsetSpec::Arithmetic { start: a, step: b };
    vec![
        ("evens", arith(0, 2)),
        ("odds", arith(1, 2)),
        ("all", SubsetSpec::All),
        ("odds_from3", SubsetSpec::difference(arith(1, 2), SubsetSpec::list([1]))),
        ("from11", SubsetSpec::difference(SubsetSpec::All, SubsetSpec::list(1..=10))),
        ("evens_from8", SubsetSpec::difference(arith(0, 2), SubsetSpec::list([2, 4, 6]))),
        ("head", SubsetSpec::list([1, 2, 3])),
        ("quarter1", arith(1, 4)),
        ("pow2", SubsetSpec::Geometric { start: 1, ratio: 2, drift: 0 }),
        ("quarter2", arith(2, 4)),
    ]
}

/// Largeness of `2ℕ`, largeness against closeness to the whole space,
/// and non-discreteness of the paired ballean.
pub fn run_example5(sw: &ScaleWindow) -> SuiteReport {
    let b = make_example5();
    let mut report = SuiteReport::new("example5", sw);

    let started = Instant::now();
    let large = is_large_at(b.as_ref(), &SubsetSpec::evens(), sw);
    let outcome = if large.is_yes() {
        Outcome::Pass
    } else if large.is_no() {
        Outcome::Fail
    } else {
        Outcome::Unknown
    };
    let mut record = CheckRecord::new("example5.large_2N", "Example 5", outcome, format!("large={}", show_verdict(&large)));
    if outcome == Outcome::Fail {
        record = record.witness(show_points(large.witness_points()));
    }
    report.push(started, record);

    for (name, y) in example5_samples() {
        let started = Instant::now();
        let close = closeness(b.as_ref(), &y, &SubsetSpec::All, sw);
        let large = is_large_at(b.as_ref(), &y, sw);
        let agree = close.label() == large.label();
        let mut record = CheckRecord::new(
            format!("example5.large_iff_close.{name}"),
            "Example 5",
            if agree { Outcome::Pass } else { Outcome::Fail },
            format!("close={} large={}", show_verdict(&close), show_verdict(&large)),
        );
        if !agree {
            record = record.witness(y.to_string());
        }
        report.push(started, record);
    }

    let started = Instant::now();
    let discrete = is_discrete_at(b.as_ref(), sw);
    let outcome = match (discrete.is_no(), discrete.witness_scale()) {
        (true, Some(_)) => Outcome::Pass,
        _ if discrete.is_yes() => Outcome::Fail,
        _ => Outcome::Unknown,
    };
    let mut record =
        CheckRecord::new("example5.nondiscrete", "Example 5", outcome, format!("discrete={}", show_verdict(&discrete)));
    if outcome != Outcome::Unknown {
        record = record.witness(show_points(discrete.witness_points()));
    }
    report.push(started, record);

    report.push(
        Instant::now(),
        CheckRecord::new(
            "example5.rigidity",
            "Example 5",
            Outcome::Noted,
            "delta-rigid and not lambda-rigid: quantifies over all coarse structures, not asserted",
        ),
    );
    report
}

/// Named presentations for the function-class suite.
#[derive(Debug, Clone)]
pub struct MuSoInputs {
    pub metric: (String, SharedBallean),
    pub reindexed: (String, SharedBallean),
    pub discrete: (String, SharedBallean),
}

impl Default for MuSoInputs {
    fn default() -> Self {
        MuSoInputs {
            metric: ("metric".into(), make_metric()),
            reindexed: ("metric2x".into(), make_reindexed(make_metric(), 2).expect("factor 2")),
            discrete: ("discrete".into(), default_discrete()),
        }
    }
}

pub fn default_discrete() -> SharedBallean {
    make_discrete_from_bornology(BoundedChain::Prefix { step: 1, offset: 0 }).expect("prefix chain")
}

/// Reindexed presentations agree on macro-uniform and bounded slowly
/// oscillating functions; the line and the discrete chain differ on both
/// functions and linkness.
pub fn run_mu_so_suites(inputs: &MuSoInputs, sw: &ScaleWindow) -> SuiteReport {
    let (mname, metric) = &inputs.metric;
    let (rname, reindexed) = &inputs.reindexed;
    let (dname, discrete) = &inputs.discrete;
    let mut report = SuiteReport::new(format!("mu_so:{mname}/{rname}/{dname}"), sw);
    let candidates = shipped_candidates(sw.window);

    for f in &candidates {
        let started = Instant::now();
        let (left, right) = rayon::join(
            || macro_uniform_check(metric.as_ref(), f, sw).verdict,
            || macro_uniform_check(reindexed.as_ref(), f, sw).verdict,
        );
        let agree = left.label() == right.label();
        let mut record = CheckRecord::new(
            format!("mu.reindexed.{}", f.name()),
            "Theorem 7",
            if agree { Outcome::Pass } else { Outcome::Fail },
            format!("{mname}={} {rname}={}", show_verdict(&left), show_verdict(&right)),
        );
        if !agree {
            record = record.witness(f.name());
        }
        report.push(started, record);
    }

    for f in &candidates {
        let started = Instant::now();
        let (left, right) = rayon::join(|| sob_check(metric.as_ref(), f, sw), || sob_check(reindexed.as_ref(), f, sw));
        let agree = left.label() == right.label();
        let mut record = CheckRecord::new(
            format!("sob.reindexed.{}", f.name()),
            "Theorem 9",
            if agree { Outcome::Pass } else { Outcome::Fail },
            format!("{mname}={} {rname}={}", show_verdict(&left), show_verdict(&right)),
        );
        if !agree {
            record = record.witness(f.name());
        }
        report.push(started, record);
    }

    let started = Instant::now();
    let square = crate::functions::RealFunctionSpec::Square;
    let on_line = macro_uniform_check(metric.as_ref(), &square, sw).verdict;
    let on_discrete = macro_uniform_check(discrete.as_ref(), &square, sw).verdict;
    let differs = on_line.is_no() && on_discrete.is_yes();
    let outcome = if differs {
        Outcome::Pass
    } else if on_line.answer == on_discrete.answer && !on_line.is_unknown() {
        Outcome::Fail
    } else {
        Outcome::Unknown
    };
    let mut record = CheckRecord::new(
        "mu.difference.square",
        "Theorem 7",
        outcome,
        format!("{mname}={} {dname}={}", show_verdict(&on_line), show_verdict(&on_discrete)),
    );
    if outcome != Outcome::Unknown {
        record = record.witness("square");
    }
    report.push(started, record);

    let started = Instant::now();
    let family = vec![(SubsetSpec::evens(), SubsetSpec::odds())];
    let record = match compare_relations(metric.as_ref(), discrete.as_ref(), &family, sw) {
        Ok(c) => {
            let row = &c.rows[0];
            let detail = format!(
                "{mname}={} {dname}={}",
                show_verdict(&row.left.linked),
                show_verdict(&row.right.linked)
            );
            let outcome = if c.lambda_disagreement {
                Outcome::Pass
            } else if row.left.linked.is_unknown() || row.right.linked.is_unknown() {
                Outcome::Unknown
            } else {
                Outcome::Fail
            };
            CheckRecord::new("lambda.difference.evens_odds", "Theorem 7", outcome, detail)
                .witness(pair_label(&family[0].0, &family[0].1))
        }
        Err(e) => CheckRecord::new("lambda.difference.evens_odds", "Theorem 7", Outcome::Fail, e.to_string())
            .witness(format!("{mname} vs {dname}")),
    };
    report.push(started, record);

    let started = Instant::now();
    let sub = submetrizable_witness(metric.as_ref(), &candidates, sw);
    let record = match &sub.witness {
        Some(f) => CheckRecord::new(
            "submetrizable.witness",
            "submetrizability",
            Outcome::Pass,
            format!("{mname}: f={} mu={}", f.name(), show_verdict(&sub.verdict)),
        ),
        None => CheckRecord::new("submetrizable.witness", "submetrizability", Outcome::Unknown, "no candidate qualifies"),
    };
    report.push(started, record);
    report
}

/// Pairs handed to the normality suite.
pub fn normality_pairs() -> Vec<(SubsetSpec, SubsetSpec)> {
    let pow4 = SubsetSpec::Geometric { start: 1, ratio: 4, drift: 0 };
    vec![
        (pow4.clone(), SubsetSpec::Geometric { start: 2, ratio: 4, drift: 0 }),
        (pow4, SubsetSpec::difference(SubsetSpec::Geometric { start: 1, ratio: 4, drift: 1 }, SubsetSpec::list([1]))),
        (SubsetSpec::evens(), SubsetSpec::odds()),
    ]
}

/// Distance-ratio separators and their neighbourhoods.
pub fn run_normality(b: &dyn Ballean, name: &str, pairs: &[(SubsetSpec, SubsetSpec)], sw: &ScaleWindow) -> SuiteReport {
    let mut report = SuiteReport::new(format!("normality:{name}"), sw);
    for (k, (a, c)) in pairs.iter().enumerate() {
        let started = Instant::now();
        let id = format!("normality.{k}");
        let record = match normality_separator(b, a, c, sw) {
            Ok(s) => {
                let detail = format!(
                    "f|A=0:{} f|B=1:{} so={} disjoint={} nbhd_A={} nbhd_B={}",
                    s.zero_on_a,
                    s.one_on_b,
                    show_verdict(&s.so.verdict),
                    s.disjoint,
                    show_verdict(&s.nbhd_a),
                    show_verdict(&s.nbhd_b)
                );
                let outcome = if !s.exact_checks_pass() || s.so.verdict.is_no() || s.nbhd_a.is_no() || s.nbhd_b.is_no() {
                    Outcome::Fail
                } else if s.separates() {
                    Outcome::Pass
                } else {
                    Outcome::Unknown
                };
                CheckRecord::new(id, "normality", outcome, detail).witness(pair_label(a, c))
            }
            Err(e @ SeparatorError::NotAsymptoticallyDisjoint(_)) | Err(e @ SeparatorError::NotDisjoint(_)) => {
                CheckRecord::new(id, "normality", Outcome::Noted, format!("precondition failure: {e}"))
                    .witness(pair_label(a, c))
            }
            Err(e) => CheckRecord::new(id, "normality", Outcome::Fail, e.to_string()).witness(name.to_string()),
        };
        report.push(started, record);
    }
    report
}

/// Budgets for each suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuitePlan {
    pub theorem1: ScaleWindow,
    pub filter: ScaleWindow,
    pub example5: ScaleWindow,
    pub mu_so: ScaleWindow,
    pub normality: ScaleWindow,
}

impl Default for SuitePlan {
    fn default() -> Self {
        let wide = ScaleWindow::new(16, 4096).expect("valid window");
        SuitePlan {
            theorem1: wide,
            filter: wide,
            example5: wide,
            mu_so: wide,
            // the 4ⁿ / 4ⁿ+n gap closes within 2r of the window top for larger r
            normality: ScaleWindow::with_cutoff(2, 4096, 2048).expect("valid window"),
        }
    }
}

/// Everything [`run_all`] needs.
#[derive(Debug, Clone)]
pub struct SuiteInputs {
    pub theorem1: Vec<(String, SharedBallean)>,
    pub filter: (String, SharedBallean, PhiChain),
    pub mu_so: MuSoInputs,
    pub normality: (String, SharedBallean, Vec<(SubsetSpec, SubsetSpec)>),
    pub plan: SuitePlan,
}

impl Default for SuiteInputs {
    fn default() -> Self {
        SuiteInputs {
            theorem1: vec![
                ("discrete".into(), default_discrete()),
                ("metric".into(), make_metric()),
                ("example5".into(), make_example5()),
            ],
            filter: ("filtered".into(), make_metric(), PhiChain::Tail { step: 10, offset: 1 }),
            mu_so: MuSoInputs::default(),
            normality: ("metric".into(), make_metric(), normality_pairs()),
            plan: SuitePlan::default(),
        }
    }
}

pub const SUITE_NAMES: [&str; 6] = ["theorem1", "filter", "example5", "mu_so", "normality", "all"];

/// Runs one named suite, or every suite for `"all"`.
pub fn run_named(name: &str, inputs: &SuiteInputs) -> Option<Vec<SuiteReport>> {
    let plan = &inputs.plan;
    let reports = match name {
        "theorem1" => inputs.theorem1.iter().map(|(n, b)| run_theorem1(b.as_ref(), n, &plan.theorem1)).collect(),
        "filter" => {
            let (n, base, phi) = &inputs.filter;
            vec![run_filter_construction(base, phi, n, &plan.filter)]
        }
        "example5" => vec![run_example5(&plan.example5)],
        "mu_so" => vec![run_mu_so_suites(&inputs.mu_so, &plan.mu_so)],
        "normality" => {
            let (n, b, pairs) = &inputs.normality;
            vec![run_normality(b.as_ref(), n, pairs, &plan.normality)]
        }
        "all" => {
            let mut all = Vec::new();
            for part in &SUITE_NAMES[..5] {
                all.extend(run_named(part, inputs)?);
            }
            all
        }
        _ => return None,
    };
    Some(reports)
}

pub fn run_all(inputs: &SuiteInputs) -> Vec<SuiteReport> {
    run_named("all", inputs).expect("known suite")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_are_fixed_size() {
        assert_eq!(sample_family().len(), 20);
        assert_eq!(example5_samples().len(), 10);
        assert!(pair_family().iter().all(|(a, b)| a.validate().is_ok() && b.validate().is_ok()));
    }

    #[test]
    fn witness_pairs_for_line_and_pairs() {
        let sw = ScaleWindow::new(16, 64).unwrap();
        let (y, z) = theorem1_witness(make_metric().as_ref(), 1, &sw);
        assert_eq!(&y.enumerate(12), &[0, 3, 6, 9]);
        assert_eq!(&z.enumerate(12), &[1, 2, 5, 8, 11]);
        let (y, z) = theorem1_witness(make_example5().as_ref(), 0, &sw);
        assert_eq!(y.enumerate(64), SubsetSpec::odds().enumerate(64));
        assert_eq!(z.enumerate(64), SubsetSpec::arithmetic(2, 2).unwrap().enumerate(64));
    }

    #[test]
    fn outcome_order() {
        assert_eq!(Outcome::Pass.worst(Outcome::Unknown), Outcome::Unknown);
        assert_eq!(Outcome::Unknown.worst(Outcome::Fail), Outcome::Fail);
        assert_eq!(Outcome::Noted.worst(Outcome::Pass), Outcome::Pass);
    }

    #[test]
    fn unknown_suite_name() {
        assert!(run_named("theorem99", &SuiteInputs::default()).is_none());
    }
}
