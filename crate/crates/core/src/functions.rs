//! Real functions on the ground set: macro-uniformity, slow oscillation,
//! boundedness, asymptotic neighbourhoods and normality separators.
//!
//! Growth questions ("is this sup bounded?") are judged on the prefixes
//! `[0, N/8)`, `[0, N/4)`, `[0, N/2)` and `[0, N)` of the window: a sup
//! that at least doubles at each step is reported as divergent, a sup that
//! no longer grows on the last step as stable, and anything in between as
//! undecided.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::presentation::{ball_meets, ground_points, members, Ballean};
use crate::relations::{asymptotically_disjoint, interior_points};
use crate::subset::{Point, SubsetSpec};
use crate::verdict::{Scale, ScaleWindow, Verdict};

/// Relative slack when comparing sups across prefixes.
const STABLE_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub enum RealFunctionSpec {
    Identity,
    Sqrt,
    Log1p,
    Square,
    /// `x mod 2`.
    Mod2,
    /// Tabulated values; points past the table take the last value.
    PiecewiseTable { label: String, values: Vec<f64> },
    /// `d(x, A) / (d(x, A) + d(x, B))` for the chain distance, saturated
    /// at the window size.
    DistanceRatio(SubsetSpec, SubsetSpec),
}

impl RealFunctionSpec {
    pub fn name(&self) -> String {
        match self {
            RealFunctionSpec::Identity => "identity".into(),
            RealFunctionSpec::Sqrt => "sqrt".into(),
            RealFunctionSpec::Log1p => "log1p".into(),
            RealFunctionSpec::Square => "square".into(),
            RealFunctionSpec::Mod2 => "mod2".into(),
            RealFunctionSpec::PiecewiseTable { label, .. } => label.clone(),
            RealFunctionSpec::DistanceRatio(a, b) => format!("dist_ratio({a};{b})"),
        }
    }

    /// Values on `[0, window)`.
    pub fn materialize<B: Ballean + ?Sized>(&self, b: &B, window: usize) -> Vec<f64> {
        let closed = |g: fn(f64) -> f64| (0..window).map(|x| g(x as f64)).collect();
        match self {
            RealFunctionSpec::Identity => closed(|x| x),
            RealFunctionSpec::Sqrt => closed(f64::sqrt),
            RealFunctionSpec::Log1p => closed(f64::ln_1p),
            RealFunctionSpec::Square => closed(|x| x * x),
            RealFunctionSpec::Mod2 => (0..window).map(|x| (x % 2) as f64).collect(),
            RealFunctionSpec::PiecewiseTable { values, .. } => (0..window)
                .map(|x| values.get(x).or(values.last()).copied().unwrap_or(0.0))
                .collect(),
            RealFunctionSpec::DistanceRatio(a, c) => {
                let cap = window;
                // anything further than the cap is saturated anyway
                let am = members(b, a, 2 * window);
                let cm = members(b, c, 2 * window);
                let dist = |x: Point, to: &[Point]| {
                    to.iter().filter_map(|&y| b.distance(x, y, cap)).min().unwrap_or(cap) as f64
                };
                (0..window)
                    .into_par_iter()
                    .map(|x| {
                        let (da, dc) = (dist(x, &am), dist(x, &cm));
                        if da + dc == 0.0 {
                            0.0
                        } else {
                            da / (da + dc)
                        }
                    })
                    .collect()
            }
        }
    }
}

impl fmt::Display for RealFunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// The six functions every presentation is probed with.
pub fn shipped_candidates(window: usize) -> Vec<RealFunctionSpec> {
    vec![
        RealFunctionSpec::Identity,
        RealFunctionSpec::Sqrt,
        RealFunctionSpec::Log1p,
        RealFunctionSpec::Square,
        RealFunctionSpec::Mod2,
        RealFunctionSpec::PiecewiseTable {
            label: "sin_sqrt".into(),
            values: (0..window).map(|x| (x as f64).sqrt().sin()).collect(),
        },
    ]
}

fn diam(values: &[f64], ball: &[Point]) -> f64 {
    let (lo, hi) = ball.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &p| {
        (lo.min(values[p]), hi.max(values[p]))
    });
    if ball.is_empty() {
        0.0
    } else {
        hi - lo
    }
}

/// `(x, diam f(E_r[x]))` for interior points.
fn diameters<B: Ballean + ?Sized>(b: &B, values: &[f64], r: Scale, sw: &ScaleWindow) -> Vec<(Point, f64)> {
    interior_points(b, r, sw)
        .into_par_iter()
        .map(|x| (x, diam(values, &b.ball(x, r))))
        .collect()
}

fn prefix_sups(samples: &[(Point, f64)], window: usize) -> [f64; 4] {
    let limits = [window / 8, window / 4, window / 2, window];
    limits.map(|m| samples.iter().filter(|(x, _)| *x < m).map(|(_, v)| *v).fold(0.0, f64::max))
}

/// Per-step growth accepted as doubling; linear growth sampled on interior
/// points falls just short of 2.
const DOUBLING_FACTOR: f64 = 1.9;

fn doubling(s: &[f64; 4]) -> bool {
    s[0] > 0.0 && s.windows(2).all(|w| w[1] >= DOUBLING_FACTOR * w[0])
}

fn stable(s: &[f64; 4]) -> bool {
    s[3] <= s[2] * (1.0 + STABLE_TOLERANCE) + f64::EPSILON
}

#[derive(Debug, Clone, PartialEq)]
pub struct MacroUniformReport {
    pub verdict: Verdict,
    /// `bounds[r]`: sup of `diam f(E_r[x])` over interior points.
    pub bounds: Vec<f64>,
}

/// `diam f(E_r[x])` bounded in `x`, for each `r`.
pub fn macro_uniform_check<B: Ballean + ?Sized>(b: &B, f: &RealFunctionSpec, sw: &ScaleWindow) -> MacroUniformReport {
    let values = f.materialize(b, sw.window);
    let mut bounds = Vec::new();
    let mut outcome = None;
    let mut undecided = None;
    for r in sw.scales() {
        let samples = diameters(b, &values, r, sw);
        let sups = prefix_sups(&samples, sw.window);
        bounds.push(sups[3]);
        if sw.is_finite_model() || outcome.is_some() {
            continue;
        }
        if doubling(&sups) {
            let worst = samples.iter().copied().fold((0, f64::NEG_INFINITY), |m, s| if s.1 > m.1 { s } else { m });
            outcome = Some(Verdict::no(sw).at(r).with_points([worst.0]));
        } else if !stable(&sups) && undecided.is_none() {
            undecided = Some(r);
        }
    }
    let verdict = match (outcome, undecided) {
        (Some(v), _) => v,
        (None, Some(r)) => Verdict::unknown(sw).at(r),
        (None, None) => Verdict::yes_at_scale(sw),
    };
    MacroUniformReport { verdict, bounds }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlowOscillationReport {
    pub verdict: Verdict,
    /// `cutoffs[r]`: least `c` with `diam f(E_r[x]) < ε` for every
    /// interior `x >= c`.
    pub cutoffs: Vec<usize>,
}

/// For each `r`, `diam f(E_r[x]) < ε` outside a bounded set.
pub fn slowly_oscillating_check<B: Ballean + ?Sized>(
    b: &B,
    f: &RealFunctionSpec,
    epsilon: f64,
    sw: &ScaleWindow,
) -> SlowOscillationReport {
    let values = f.materialize(b, sw.window);
    let mut cutoffs = Vec::new();
    let mut outcome = None;
    let mut undecided = None;
    for r in sw.scales() {
        let samples = diameters(b, &values, r, sw);
        let violators: Vec<Point> = samples.iter().filter(|(_, d)| *d >= epsilon).map(|(x, _)| *x).collect();
        cutoffs.push(violators.last().map_or(0, |x| x + 1));
        if outcome.is_some() {
            continue;
        }
        let bounded = b.is_bounded(&SubsetSpec::Trace(violators.clone()), sw);
        if bounded.is_yes() {
            continue;
        }
        let band_sup = |lo: usize, hi: usize| {
            samples.iter().filter(|(x, _)| (lo..hi).contains(x)).map(|(_, d)| *d).fold(0.0, f64::max)
        };
        let n = sw.window;
        let persistent = band_sup(n / 2, n) >= band_sup(n / 4, n / 2) * (1.0 - STABLE_TOLERANCE);
        if bounded.is_no() && (sw.is_finite_model() || persistent) {
            outcome = Some(Verdict::no(sw).at(r).with_points(violators.into_iter().rev().take(4).rev()));
        } else if undecided.is_none() {
            undecided = Some(r);
        }
    }
    let verdict = match (outcome, undecided) {
        (Some(v), _) => v,
        (None, Some(r)) => Verdict::unknown(sw).at(r),
        (None, None) => Verdict::yes_at_scale(sw),
    };
    SlowOscillationReport { verdict, cutoffs }
}

/// `sup |f|` over the ground set, judged by prefix growth.
pub fn bounded_function_check<B: Ballean + ?Sized>(b: &B, f: &RealFunctionSpec, sw: &ScaleWindow) -> Verdict {
    if sw.is_finite_model() {
        return Verdict::yes(sw);
    }
    let values = f.materialize(b, sw.window);
    let samples: Vec<(Point, f64)> = ground_points(b, sw.window).into_iter().map(|x| (x, values[x].abs())).collect();
    let sups = prefix_sups(&samples, sw.window);
    if doubling(&sups) {
        Verdict::no(sw)
    } else if stable(&sups) {
        Verdict::yes_at_scale(sw)
    } else {
        Verdict::unknown(sw)
    }
}

/// Grid of ε values used for bounded slowly oscillating functions.
pub const EPSILON_GRID: [f64; 2] = [0.25, 0.1];

/// Bounded and slowly oscillating for every ε of [`EPSILON_GRID`].
pub fn sob_check<B: Ballean + ?Sized>(b: &B, f: &RealFunctionSpec, sw: &ScaleWindow) -> Verdict {
    let mut parts = vec![bounded_function_check(b, f, sw)];
    parts.extend(EPSILON_GRID.iter().map(|&e| slowly_oscillating_check(b, f, e, sw).verdict));
    if let Some(no) = parts.iter().find(|v| v.is_no()) {
        return no.clone();
    }
    if parts.iter().all(|v| v.is_yes()) {
        return Verdict::yes_at_scale(sw);
    }
    Verdict::unknown(sw)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Submetrizability {
    pub witness: Option<RealFunctionSpec>,
    pub verdict: Verdict,
}

/// First candidate that is macro-uniform and grows across every window
/// prefix.
pub fn submetrizable_witness<B: Ballean + ?Sized>(
    b: &B,
    candidates: &[RealFunctionSpec],
    sw: &ScaleWindow,
) -> Submetrizability {
    for f in candidates {
        let mu = macro_uniform_check(b, f, sw).verdict;
        if !mu.is_yes() {
            continue;
        }
        let values = f.materialize(b, sw.window);
        let samples: Vec<(Point, f64)> = ground_points(b, sw.window).into_iter().map(|x| (x, values[x].abs())).collect();
        let s = prefix_sups(&samples, sw.window);
        if s.windows(2).all(|w| w[1] > w[0]) {
            return Submetrizability { witness: Some(f.clone()), verdict: mu };
        }
    }
    Submetrizability { witness: None, verdict: Verdict::unknown(sw) }
}

/// `E_r[A] ∖ U` bounded for every `r`.
pub fn is_asymptotic_neighbourhood<B: Ballean + ?Sized>(
    b: &B,
    u: &SubsetSpec,
    a: &SubsetSpec,
    sw: &ScaleWindow,
) -> Verdict {
    if !sw.is_finite_model() {
        let outside = SubsetSpec::difference(SubsetSpec::All, u.clone());
        for certain in [a, &outside] {
            let v = b.is_bounded(certain, sw);
            if v.is_yes() && v.is_definite() {
                return Verdict::yes(sw);
            }
        }
    }
    let mut undecided = None;
    for r in sw.scales() {
        let escape: Vec<Point> = ground_points(b, sw.window)
            .into_par_iter()
            .filter(|&x| !u.contains(x) && ball_meets(b, x, r, a))
            .collect();
        let v = b.is_bounded(&SubsetSpec::Trace(escape.clone()), sw);
        if v.is_no() {
            return Verdict::no(sw).at(r).with_points(escape.into_iter().rev().take(4).rev());
        }
        if v.is_unknown() && undecided.is_none() {
            undecided = Some(r);
        }
    }
    match undecided {
        Some(r) => Verdict::unknown(sw).at(r),
        None => Verdict::yes_at_scale(sw),
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeparatorError {
    #[error("presentation has no cheap chain distance")]
    NotMetricLike,
    #[error("sets share the point {0}")]
    NotDisjoint(Point),
    #[error("sets are not asymptotically disjoint at scale ({0})")]
    NotAsymptoticallyDisjoint(Verdict),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Separator {
    pub f: RealFunctionSpec,
    pub zero_on_a: bool,
    pub one_on_b: bool,
    pub so: SlowOscillationReport,
    pub u_a: SubsetSpec,
    pub u_b: SubsetSpec,
    pub disjoint: bool,
    pub nbhd_a: Verdict,
    pub nbhd_b: Verdict,
}

impl Separator {
    pub fn exact_checks_pass(&self) -> bool {
        self.zero_on_a && self.one_on_b && self.disjoint
    }

    /// Every check passed, at least at scale.
    pub fn separates(&self) -> bool {
        self.exact_checks_pass() && self.so.verdict.is_yes() && self.nbhd_a.is_yes() && self.nbhd_b.is_yes()
    }
}

/// The ε used for the separator's oscillation check.
pub const SEPARATOR_EPSILON: f64 = 0.25;

/// Builds `f = d(·,A) / (d(·,A) + d(·,B))` and the neighbourhoods
/// `{f < 1/3}`, `{f > 2/3}`, and checks each property.
pub fn normality_separator<B: Ballean + ?Sized>(
    b: &B,
    a: &SubsetSpec,
    c: &SubsetSpec,
    sw: &ScaleWindow,
) -> Result<Separator, SeparatorError> {
    if !b.metric_like() {
        return Err(SeparatorError::NotMetricLike);
    }
    if let Some(x) = members(b, a, sw.window).into_iter().find(|&x| c.contains(x)) {
        return Err(SeparatorError::NotDisjoint(x));
    }
    let ad = asymptotically_disjoint(b, a, c, sw);
    if !ad.is_yes() {
        return Err(SeparatorError::NotAsymptoticallyDisjoint(ad));
    }
    let f = RealFunctionSpec::DistanceRatio(a.clone(), c.clone());
    let values = f.materialize(b, sw.window);
    let zero_on_a = members(b, a, sw.window).iter().all(|&x| values[x] == 0.0);
    let one_on_b = members(b, c, sw.window).iter().all(|&x| values[x] == 1.0);
    let so = slowly_oscillating_check(b, &f, SEPARATOR_EPSILON, sw);
    let ground = ground_points(b, sw.window);
    let u_a = SubsetSpec::trace(ground.iter().copied().filter(|&x| values[x] < 1.0 / 3.0));
    let u_b = SubsetSpec::trace(ground.iter().copied().filter(|&x| values[x] > 2.0 / 3.0));
    let disjoint = u_a.enumerate(sw.window).iter().all(|&x| !u_b.contains(x));
    let nbhd_a = is_asymptotic_neighbourhood(b, &u_a, a, sw);
    let nbhd_b = is_asymptotic_neighbourhood(b, &u_b, c, sw);
    Ok(Separator { f, zero_on_a, one_on_b, so, u_a, u_b, disjoint, nbhd_a, nbhd_b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;

    fn sw() -> ScaleWindow {
        ScaleWindow::new(16, 4096).unwrap()
    }

    fn discrete() -> crate::presentation::SharedBallean {
        make_discrete_from_bornology(BoundedChain::Prefix { step: 1, offset: 0 }).unwrap()
    }

    #[test]
    fn identity_is_macro_uniform_on_the_line() {
        let report = macro_uniform_check(&MetricLine, &RealFunctionSpec::Identity, &sw());
        assert_eq!(report.verdict.label(), "yes-at-scale");
        for (r, bound) in report.bounds.iter().enumerate() {
            assert_eq!(*bound, 2.0 * r as f64);
        }
    }

    #[test]
    fn square_diverges_on_the_line_only() {
        let v = macro_uniform_check(&MetricLine, &RealFunctionSpec::Square, &sw()).verdict;
        assert!(v.is_no());
        assert_eq!(v.witness_scale(), Some(1));
        let report = macro_uniform_check(discrete().as_ref(), &RealFunctionSpec::Square, &sw());
        assert_eq!(report.verdict.label(), "yes-at-scale");
        // inside B_r = [0, r) the diameter is (r-1)²
        for (r, bound) in report.bounds.iter().enumerate().skip(1) {
            assert_eq!(*bound, ((r - 1) * (r - 1)) as f64);
        }
    }

    #[test]
    fn oscillation_cutoffs() {
        let sw1 = ScaleWindow::new(1, 4096).unwrap();
        let report = slowly_oscillating_check(&MetricLine, &RealFunctionSpec::Sqrt, 0.1, &sw1);
        assert_eq!(report.verdict.label(), "yes-at-scale");
        // independent scan of sqrt(x+1) - sqrt(x-1)
        let c = (1..4095usize).rev().find(|&x| ((x + 1) as f64).sqrt() - ((x - 1) as f64).sqrt() >= 0.1).unwrap() + 1;
        assert_eq!(report.cutoffs[1], c);
        assert_eq!(c, 101);
        let report = slowly_oscillating_check(&MetricLine, &RealFunctionSpec::Log1p, 0.1, &sw1);
        assert_eq!(report.cutoffs[1], 20);
        let v = slowly_oscillating_check(&MetricLine, &RealFunctionSpec::Mod2, 0.5, &sw1).verdict;
        assert!(v.is_no() && v.witness_scale() == Some(1));
    }

    #[test]
    fn submetrizability() {
        let s = submetrizable_witness(&MetricLine, &[RealFunctionSpec::Identity], &sw());
        assert_eq!(s.witness, Some(RealFunctionSpec::Identity));
        let s = submetrizable_witness(discrete().as_ref(), &[RealFunctionSpec::Identity], &sw());
        assert_eq!(s.witness, Some(RealFunctionSpec::Identity));
        let s = submetrizable_witness(&MetricLine, &[RealFunctionSpec::Mod2], &sw());
        assert!(s.witness.is_none() && s.verdict.is_unknown());
    }

    #[test]
    fn neighbourhoods() {
        let pow4 = SubsetSpec::geometric(1, 4).unwrap();
        let sw4 = ScaleWindow::new(4, 4096).unwrap();
        let mut around = Vec::new();
        for (n, p) in pow4.enumerate(1 << 14).into_iter().enumerate() {
            around.extend(p.saturating_sub(n)..=p + n);
        }
        let u = SubsetSpec::trace(around);
        assert_eq!(is_asymptotic_neighbourhood(&MetricLine, &u, &pow4, &sw4).label(), "yes-at-scale");
        assert!(is_asymptotic_neighbourhood(&MetricLine, &SubsetSpec::evens(), &SubsetSpec::evens(), &sw()).is_no());
        let v = is_asymptotic_neighbourhood(&MetricLine, &SubsetSpec::All, &SubsetSpec::odds(), &sw());
        assert!(v.is_yes() && v.is_definite());
    }

    #[test]
    fn separator_preconditions() {
        assert!(matches!(
            normality_separator(&MetricLine, &SubsetSpec::evens(), &SubsetSpec::odds(), &sw()),
            Err(SeparatorError::NotAsymptoticallyDisjoint(_))
        ));
        assert!(matches!(
            normality_separator(&MetricLine, &SubsetSpec::evens(), &SubsetSpec::list([4]), &sw()),
            Err(SeparatorError::NotDisjoint(4))
        ));
        let f = Finitary::new(vec![Generator::Cycles(vec![vec![0, 1]])]).unwrap();
        assert_eq!(
            normality_separator(&f, &SubsetSpec::list([0]), &SubsetSpec::list([1]), &sw()),
            Err(SeparatorError::NotMetricLike)
        );
    }

    #[test]
    fn separator_for_a_bounded_pair() {
        let s = normality_separator(&MetricLine, &SubsetSpec::list([0]), &SubsetSpec::list([4094]), &sw()).unwrap();
        assert!(s.separates());
        assert!(s.so.cutoffs.iter().all(|&c| c == 0));
    }
}
