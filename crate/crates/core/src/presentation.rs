//! The presentation contract every ballean implements.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::subset::{Point, SubsetSpec};
use crate::verdict::{Scale, ScaleWindow, Verdict};

/// Coarse shape of a presentation, used to certify answers that hold at
/// every scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Locality {
    General,
    /// For every scale the balls are singletons outside a bounded set.
    Discrete,
}

/// A ballean given by an ascending chain `E_0 ⊆ E_1 ⊆ …` of symmetric
/// entourages.
///
/// Implementations must keep balls reflexive, symmetric and monotone in
/// the scale, and must return a `compose_index` whose ball swallows the
/// composite of the two given ones. [`validate_presentation`] checks all
/// four on a window. Balls are computed exactly and never depend on any
/// window.
pub trait Ballean: Send + Sync + fmt::Debug {
    fn label(&self) -> &str;

    /// Sorted, duplicate-free `E_r[x]`. Only called for ground points.
    fn ball(&self, x: Point, r: Scale) -> Vec<Point>;

    /// Chain index `t` with `E_r ∘ E_s ⊆ E_t`.
    fn compose_index(&self, r: Scale, s: Scale) -> Scale;

    fn in_ground(&self, _x: Point) -> bool {
        true
    }

    /// The ground set as a spec, when it can be written as one.
    fn ground_spec(&self) -> Option<SubsetSpec> {
        Some(SubsetSpec::All)
    }

    fn in_ball(&self, x: Point, y: Point, r: Scale) -> bool {
        self.ball(x, r).binary_search(&y).is_ok()
    }

    fn locality(&self) -> Locality {
        Locality::General
    }

    /// True when `E_r[x] = {x}` for every scale `r`.
    fn fixed_forever(&self, _x: Point) -> bool {
        false
    }

    /// Whether [`Ballean::distance`] is cheap enough to drive distance
    /// based constructions.
    fn metric_like(&self) -> bool {
        false
    }

    /// Chain distance: least `r <= cap` with `y ∈ E_r[x]`.
    fn distance(&self, x: Point, y: Point, cap: Scale) -> Option<Scale> {
        if !self.in_ball(x, y, cap) {
            return None;
        }
        let (mut lo, mut hi) = (0, cap);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.in_ball(x, y, mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Some(lo)
    }

    /// The bornology oracle.
    fn is_bounded(&self, spec: &SubsetSpec, sw: &ScaleWindow) -> Verdict {
        bounded_iff_finite(self, spec, sw)
    }
}

pub type SharedBallean = Arc<dyn Ballean>;

/// Ground points of the window, in order.
pub fn ground_points<B: Ballean + ?Sized>(b: &B, window: usize) -> Vec<Point> {
    match b.ground_spec() {
        Some(SubsetSpec::All) => (0..window).collect(),
        Some(spec) => spec.enumerate(window),
        None => (0..window).filter(|&x| b.in_ground(x)).collect(),
    }
}

/// Members of `spec` that are ground points of the window.
pub fn members<B: Ballean + ?Sized>(b: &B, spec: &SubsetSpec, window: usize) -> Vec<Point> {
    spec.enumerate(window).into_iter().filter(|&x| b.in_ground(x)).collect()
}

/// `E_r[x] ∩ S ≠ ∅`, equivalently `x ∈ E_r[S]`.
pub fn ball_meets<B: Ballean + ?Sized>(b: &B, x: Point, r: Scale, spec: &SubsetSpec) -> bool {
    b.ball(x, r).into_iter().any(|y| spec.contains(y))
}

/// Judges a window sample against the cutoff region and the tail bands:
/// inside the cutoff region is bounded, meeting every tail band is
/// unbounded, anything else is undecided.
pub fn window_boundedness(points: &[Point], sw: &ScaleWindow) -> Verdict {
    let outside: Vec<Point> = points.iter().copied().filter(|&x| !sw.in_cutoff(x)).collect();
    if outside.is_empty() {
        return Verdict::yes(sw);
    }
    if sw.is_finite_model() {
        return Verdict::no(sw).with_points(outside);
    }
    let meets_all = sw
        .tail_bands()
        .iter()
        .all(|band| points.iter().any(|x| band.contains(x)));
    if meets_all {
        let tail = sw.tail_bands()[0].clone();
        Verdict::no(sw).with_points(points.iter().copied().filter(|x| tail.contains(x)))
    } else {
        Verdict::unknown(sw).with_points(outside)
    }
}

/// Bornology of every shipped presentation: a subset of the ground set is
/// bounded exactly when it is finite. Structural finiteness decides the
/// answer when available; otherwise the window sample is judged by
/// [`window_boundedness`].
pub fn bounded_iff_finite<B: Ballean + ?Sized>(b: &B, spec: &SubsetSpec, sw: &ScaleWindow) -> Verdict {
    let points = members(b, spec, sw.window);
    if sw.is_finite_model() {
        return window_boundedness(&points, sw);
    }
    let structural = match spec.finiteness() {
        Some(true) => Some(true),
        infinite_or_unknown => match b.ground_spec() {
            Some(SubsetSpec::All) => infinite_or_unknown,
            Some(ground) => SubsetSpec::intersection(vec![spec.clone(), ground]).finiteness(),
            None => None,
        },
    };
    match structural {
        Some(true) => Verdict::yes(sw),
        Some(false) => Verdict::no(sw).with_points(points.iter().rev().take(3).rev().copied()),
        None => window_boundedness(&points, sw),
    }
}

/// Checks reflexivity, symmetry, monotonicity and the composition bound
/// for every ground point of the window and all scales up to `rmax`.
/// A failure carries the offending scale and points.
pub fn validate_presentation<B: Ballean + ?Sized>(b: &B, sw: &ScaleWindow) -> Verdict {
    let xs = ground_points(b, sw.window);
    let local = xs.par_iter().find_map_first(|&x| local_axioms(b, x, sw));
    if let Some(v) = local {
        return v;
    }
    let mut cache = BallCache::default();
    let mut marks = Marks::default();
    for &x in &xs {
        for r in sw.scales() {
            let inner = cache.get(b, x, r).clone();
            for s in sw.scales() {
                let t = b.compose_index(r, s);
                let outer = b.ball(x, t);
                marks.begin(&outer);
                for &z in inner.iter() {
                    for &y in cache.get(b, z, s).iter() {
                        if !marks.contains(y) {
                            return Verdict::no(sw).at(r).with_points([x, z, y, s, t]);
                        }
                    }
                }
            }
        }
    }
    Verdict::yes(sw)
}

fn local_axioms<B: Ballean + ?Sized>(b: &B, x: Point, sw: &ScaleWindow) -> Option<Verdict> {
    let mut previous: Vec<Point> = Vec::new();
    for r in sw.scales() {
        let ball = b.ball(x, r);
        if ball.windows(2).any(|w| w[0] >= w[1]) {
            return Some(Verdict::no(sw).at(r).with_points([x]));
        }
        if ball.binary_search(&x).is_err() {
            return Some(Verdict::no(sw).at(r).with_points([x, x]));
        }
        for &y in &ball {
            if !b.in_ground(y) || b.ball(y, r).binary_search(&x).is_err() {
                return Some(Verdict::no(sw).at(r).with_points([x, y]));
            }
        }
        if let Some(&y) = previous.iter().find(|y| ball.binary_search(y).is_err()) {
            return Some(Verdict::no(sw).at(r).with_points([x, y]));
        }
        previous = ball;
    }
    None
}

#[derive(Default)]
struct BallCache {
    balls: HashMap<(Point, Scale), Arc<Vec<Point>>>,
}

impl BallCache {
    fn get<B: Ballean + ?Sized>(&mut self, b: &B, x: Point, r: Scale) -> &Arc<Vec<Point>> {
        self.balls.entry((x, r)).or_insert_with(|| Arc::new(b.ball(x, r)))
    }
}

/// Reusable membership marks for dense point ranges.
#[derive(Default)]
struct Marks {
    stamp: u32,
    dense: Vec<u32>,
    sparse: std::collections::HashSet<Point>,
}

const DENSE_LIMIT: usize = 1 << 22;

impl Marks {
    fn begin(&mut self, set: &[Point]) {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.dense.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
        self.sparse.clear();
        for &p in set {
            if p < DENSE_LIMIT {
                if p >= self.dense.len() {
                    self.dense.resize((p + 1).next_power_of_two(), 0);
                }
                self.dense[p] = self.stamp;
            } else {
                self.sparse.insert(p);
            }
        }
    }

    fn contains(&self, p: Point) -> bool {
        if p < DENSE_LIMIT {
            self.dense.get(p) == Some(&self.stamp)
        } else {
            self.sparse.contains(&p)
        }
    }
}

/// Bornology sanity: singletons and balls around window points are
/// bounded, and the whole ground set is not.
pub fn validate_bornology<B: Ballean + ?Sized>(b: &B, sw: &ScaleWindow) -> Verdict {
    for x in ground_points(b, sw.window) {
        if !b.is_bounded(&SubsetSpec::list([x]), sw).is_yes() {
            return Verdict::no(sw).with_points([x]);
        }
        let ball = b.ball(x, sw.rmax);
        if !b.is_bounded(&SubsetSpec::list(ball), sw).is_yes() {
            return Verdict::no(sw).at(sw.rmax).with_points([x]);
        }
    }
    let whole = b.is_bounded(&SubsetSpec::All, sw);
    if whole.is_yes() {
        return Verdict::no(sw);
    }
    Verdict::yes(sw)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Debug)]
    struct Forward;

    impl Ballean for Forward {
        fn label(&self) -> &str {
            "forward"
        }
        fn ball(&self, x: Point, r: Scale) -> Vec<Point> {
            if r == 0 {
                vec![x]
            } else {
                vec![x, x + 1]
            }
        }
        fn compose_index(&self, r: Scale, s: Scale) -> Scale {
            r + s
        }
    }

    #[derive(Debug)]
    struct MaxComposed;

    impl Ballean for MaxComposed {
        fn label(&self) -> &str {
            "metric-max"
        }
        fn ball(&self, x: Point, r: Scale) -> Vec<Point> {
            (x.saturating_sub(r)..=x + r).collect()
        }
        fn compose_index(&self, r: Scale, s: Scale) -> Scale {
            r.max(s)
        }
    }

    #[test]
    fn asymmetric_ball_is_rejected() {
        let sw = ScaleWindow::with_cutoff(1, 16, 4).unwrap();
        let v = validate_presentation(&Forward, &sw);
        assert!(v.is_no());
        assert_eq!(v.witness_scale(), Some(1));
        assert_eq!(v.witness_points(), &[0, 1]);
    }

    #[test]
    fn max_composition_is_rejected() {
        let sw = ScaleWindow::with_cutoff(2, 16, 4).unwrap();
        let v = validate_presentation(&MaxComposed, &sw);
        assert!(v.is_no());
        // ball(ball(0,1),1) reaches 2, outside ball(0,1)
        assert_eq!(v.witness_scale(), Some(1));
        assert_eq!(v.witness_points(), &[0, 1, 2, 1, 1]);
    }

    #[test]
    fn window_proxy_three_ways() {
        let sw = ScaleWindow::new(4, 4096).unwrap();
        assert!(window_boundedness(&[1, 5, 1000], &sw).is_yes());
        let evens: Vec<Point> = (0..4096).step_by(2).collect();
        assert!(window_boundedness(&evens, &sw).is_no());
        let pow4 = [1, 4, 16, 64, 256, 1024];
        assert!(window_boundedness(&pow4, &sw).is_unknown());
    }

    #[test]
    fn distance_default_binary_search() {
        assert_eq!(MaxComposed.distance(3, 10, 20), Some(7));
        assert_eq!(MaxComposed.distance(3, 10, 5), None);
    }
}
