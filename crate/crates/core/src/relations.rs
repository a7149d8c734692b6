//! Closeness, linkness and the predicates built from them, decided under
//! a [`ScaleWindow`].
//!
//! Linkness uses a single scan instead of the double existential over
//! subsets. With `L_r(A, B) = {a ∈ A : E_r[a] ∩ B ≠ ∅}`:
//!
//! > `A λ B` iff both are bounded, or for some `r` both `L_r(A, B)` and
//! > `L_r(B, A)` are unbounded.
//!
//! If both are unbounded they are close at scale `r` (each point of one
//! has an `r`-neighbour in the other), and any close unbounded pair
//! `A′ ⊆ A`, `B′ ⊆ B` at scale `r` sits inside `L_r(A, B)` and
//! `L_r(B, A)`. The argument only needs supersets of unbounded sets to be
//! unbounded, so it is exact for the cutoff bornology of the finite model
//! as well.

use rayon::prelude::*;
use thiserror::Error;

use crate::presentation::{ball_meets, ground_points, members, Ballean, Locality};
use crate::subset::{Point, SubsetSpec};
use crate::verdict::{Scale, ScaleWindow, Verdict};

/// First point of `from` whose `r`-ball misses `to`.
fn first_unreached<B: Ballean + ?Sized>(b: &B, from: &[Point], r: Scale, to: &SubsetSpec) -> Option<Point> {
    from.par_iter().find_first(|&&x| !ball_meets(b, x, r, to)).copied()
}

/// `A ⊆ E_r[B]` and `B ⊆ E_r[A]`, checked on the members inside the window.
pub fn is_close_at<B: Ballean + ?Sized>(b: &B, a: &SubsetSpec, c: &SubsetSpec, r: Scale, sw: &ScaleWindow) -> bool {
    first_unreached(b, &members(b, a, sw.window), r, c).is_none()
        && first_unreached(b, &members(b, c, sw.window), r, a).is_none()
}

fn definitely_bounded<B: Ballean + ?Sized>(b: &B, s: &SubsetSpec, sw: &ScaleWindow) -> bool {
    let v = b.is_bounded(s, sw);
    v.is_yes() && v.is_definite()
}

fn definitely_unbounded<B: Ballean + ?Sized>(b: &B, s: &SubsetSpec, sw: &ScaleWindow) -> bool {
    let v = b.is_bounded(s, sw);
    v.is_no() && v.is_definite()
}

/// A point of `from` that stays alone at every scale and is not in `to`.
fn stranded_point<B: Ballean + ?Sized>(b: &B, from: &SubsetSpec, to: &SubsetSpec, sw: &ScaleWindow) -> Option<Point> {
    members(b, from, sw.window).into_iter().find(|&x| !to.contains(x) && b.fixed_forever(x))
}

/// Obstructions to `A ⊆ E[B]` that hold for every entourage.
fn cover_obstruction<B: Ballean + ?Sized>(b: &B, a: &SubsetSpec, c: &SubsetSpec, sw: &ScaleWindow) -> Option<Verdict> {
    if sw.is_finite_model() {
        return None;
    }
    if c.is_certainly_empty() && !members(b, a, sw.window).is_empty() {
        return Some(Verdict::no(sw).with_points(members(b, a, sw.window)));
    }
    if definitely_unbounded(b, a, sw) && definitely_bounded(b, c, sw) {
        return Some(Verdict::no(sw));
    }
    if let Some(x) = stranded_point(b, a, c, sw) {
        return Some(Verdict::no(sw).with_points([x]));
    }
    // outside a bounded set every ball is a singleton, so A ∖ B must be bounded
    let rest = SubsetSpec::difference(a.clone(), c.clone());
    if b.locality() == Locality::Discrete && definitely_unbounded(b, &rest, sw) {
        return Some(Verdict::no(sw).with_points(members(b, &rest, sw.window).into_iter().rev().take(3)));
    }
    None
}

/// Yes found by scanning window members: definite when every set involved
/// is regular, otherwise only evidence at the window.
fn window_yes(sw: &ScaleWindow, sets: &[&SubsetSpec]) -> Verdict {
    if sets.iter().all(|s| s.is_regular()) {
        Verdict::yes(sw)
    } else {
        Verdict::yes_at_scale(sw)
    }
}

/// `A δ B`: Yes with the least scale that works, No only with a
/// certificate valid for the whole chain, Unknown otherwise.
pub fn closeness<B: Ballean + ?Sized>(b: &B, a: &SubsetSpec, c: &SubsetSpec, sw: &ScaleWindow) -> Verdict {
    if let Some(v) = cover_obstruction(b, a, c, sw).or_else(|| cover_obstruction(b, c, a, sw)) {
        return v;
    }
    let am = members(b, a, sw.window);
    let cm = members(b, c, sw.window);
    let mut failure = None;
    for r in sw.scales() {
        match first_unreached(b, &am, r, c).or_else(|| first_unreached(b, &cm, r, a)) {
            None => return window_yes(sw, &[a, c]).at(r),
            Some(x) => failure = Some(x),
        }
    }
    let v = if sw.is_finite_model() { Verdict::no(sw) } else { Verdict::unknown(sw) };
    v.at(sw.rmax).with_points(failure)
}

/// `L_r(A, B)` as a sample of window points.
pub fn link_set<B: Ballean + ?Sized>(b: &B, a: &SubsetSpec, c: &SubsetSpec, r: Scale, sw: &ScaleWindow) -> Vec<Point> {
    members(b, a, sw.window).into_par_iter().filter(|&x| ball_meets(b, x, r, c)).collect()
}

/// Boundedness of a sample `part` of `whole`: when the sample is the
/// whole of `whole` inside the window, the verdict for `whole` is used.
fn judge_part<B: Ballean + ?Sized>(b: &B, part: Vec<Point>, whole: &SubsetSpec, sw: &ScaleWindow) -> Verdict {
    if !sw.is_finite_model() && part == members(b, whole, sw.window) {
        let v = b.is_bounded(whole, sw);
        if !v.is_unknown() {
            return v;
        }
    }
    b.is_bounded(&SubsetSpec::Trace(part), sw)
}

/// Least `r` at which both link sets are judged unbounded.
fn linking_scale<B: Ballean + ?Sized>(b: &B, a: &SubsetSpec, c: &SubsetSpec, sw: &ScaleWindow) -> Option<(Scale, Vec<Point>)> {
    sw.scales().find_map(|r| {
        let lab = link_set(b, a, c, r, sw);
        if lab.is_empty() || !judge_part(b, lab.clone(), a, sw).is_no() {
            return None;
        }
        let lba = link_set(b, c, a, r, sw);
        judge_part(b, lba, c, sw).is_no().then_some((r, lab))
    })
}

/// `A λ B`.
pub fn is_linked<B: Ballean + ?Sized>(b: &B, a: &SubsetSpec, c: &SubsetSpec, sw: &ScaleWindow) -> Verdict {
    let ba = b.is_bounded(a, sw);
    let bc = b.is_bounded(c, sw);
    if ba.is_yes() && bc.is_yes() {
        return Verdict::yes(sw);
    }
    // exactly one side bounded: no unbounded subset on that side
    if (ba.is_yes() && bc.is_no()) || (ba.is_no() && bc.is_yes()) {
        return Verdict::no(sw);
    }
    if !sw.is_finite_model() && b.locality() == Locality::Discrete && (ba.is_no() || bc.is_no()) {
        // L_r(A, B) ⊆ D_r ∪ (A ∩ B) with D_r bounded
        let both = SubsetSpec::intersection(vec![a.clone(), c.clone()]);
        if definitely_bounded(b, &both, sw) {
            return Verdict::no(sw);
        }
    }
    if let Some((r, lab)) = linking_scale(b, a, c, sw) {
        return window_yes(sw, &[a, c]).at(r).with_points(lab.into_iter().rev().take(4).rev());
    }
    if sw.is_finite_model() {
        Verdict::no(sw).at(sw.rmax)
    } else {
        Verdict::unknown(sw).at(sw.rmax)
    }
}

/// `I_r = {x : E_r[x] meets both A and B}`, the window sample of `E_r[A] ∩ E_r[B]`.
pub fn meeting_set<B: Ballean + ?Sized>(b: &B, a: &SubsetSpec, c: &SubsetSpec, r: Scale, sw: &ScaleWindow) -> Vec<Point> {
    ground_points(b, sw.window)
        .into_par_iter()
        .filter(|&x| {
            let ball = b.ball(x, r);
            ball.iter().any(|&y| a.contains(y)) && ball.iter().any(|&y| c.contains(y))
        })
        .collect()
}

/// Every `E_r[A] ∩ E_r[B]` bounded.
pub fn asymptotically_disjoint<B: Ballean + ?Sized>(b: &B, a: &SubsetSpec, c: &SubsetSpec, sw: &ScaleWindow) -> Verdict {
    if !sw.is_finite_model() && (definitely_bounded(b, a, sw) || definitely_bounded(b, c, sw)) {
        return Verdict::yes(sw);
    }
    let linked_at = linking_scale(b, a, c, sw).map(|(r, _)| r);
    let mut undecided = None;
    for r in sw.scales() {
        if linked_at == Some(r) {
            // I_r contains L_r(A, B)
            return Verdict::no(sw).at(r).with_points(link_set(b, a, c, r, sw).into_iter().rev().take(4).rev());
        }
        let meet = meeting_set(b, a, c, r, sw);
        let v = b.is_bounded(&SubsetSpec::Trace(meet.clone()), sw);
        if v.is_no() {
            return Verdict::no(sw).at(r).with_points(meet.into_iter().rev().take(4).rev());
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

/// `D_r = {x : |E_r[x]| > 1}` inside the window.
pub fn nontrivial_points<B: Ballean + ?Sized>(b: &B, r: Scale, sw: &ScaleWindow) -> Vec<Point> {
    ground_points(b, sw.window).into_par_iter().filter(|&x| b.ball(x, r).len() > 1).collect()
}

/// Every `D_r` bounded.
pub fn is_discrete_at<B: Ballean + ?Sized>(b: &B, sw: &ScaleWindow) -> Verdict {
    let mut undecided = None;
    for r in sw.scales() {
        let d = nontrivial_points(b, r, sw);
        let v = b.is_bounded(&SubsetSpec::Trace(d.clone()), sw);
        if v.is_no() {
            return Verdict::no(sw).at(r).with_points(d);
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

/// Ground points `x` of the window with `E_r[x] ⊆ [0, window)`.
pub fn interior_points<B: Ballean + ?Sized>(b: &B, r: Scale, sw: &ScaleWindow) -> Vec<Point> {
    ground_points(b, sw.window)
        .into_par_iter()
        .filter(|&x| b.ball(x, r).last().is_some_and(|&m| m < sw.window))
        .collect()
}

/// Some `E_r[Y]` covers the ground set.
pub fn is_large_at<B: Ballean + ?Sized>(b: &B, y: &SubsetSpec, sw: &ScaleWindow) -> Verdict {
    if !sw.is_finite_model() {
        let ground = b.ground_spec().unwrap_or(SubsetSpec::All);
        if let Some(v) = cover_obstruction(b, &ground, y, sw) {
            return v;
        }
    }
    let mut failure = None;
    for r in sw.scales() {
        match first_unreached(b, &interior_points(b, r, sw), r, y) {
            None => return window_yes(sw, &[y]).at(r),
            Some(x) => failure = Some(x),
        }
    }
    let v = if sw.is_finite_model() { Verdict::no(sw) } else { Verdict::unknown(sw) };
    v.at(sw.rmax).with_points(failure)
}

/// Greedy smallest-first maximal set of window points with pairwise
/// disjoint `r`-balls. Every window point is within
/// `compose_index(r, r)` of the result.
pub fn separated_net<B: Ballean + ?Sized>(b: &B, r: Scale, sw: &ScaleWindow) -> SubsetSpec {
    let mut covered = std::collections::HashSet::new();
    let mut net = Vec::new();
    for x in ground_points(b, sw.window) {
        let ball = b.ball(x, r);
        if ball.iter().all(|p| !covered.contains(p)) {
            covered.extend(ball);
            net.push(x);
        }
    }
    SubsetSpec::Trace(net)
}

/// δ, λ and asymptotic disjointness of one pair.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    pub pair: (SubsetSpec, SubsetSpec),
    pub close: Verdict,
    pub linked: Verdict,
    pub asym_disjoint: Verdict,
}

impl RelationReport {
    pub fn compute<B: Ballean + ?Sized>(b: &B, a: &SubsetSpec, c: &SubsetSpec, sw: &ScaleWindow) -> Self {
        RelationReport {
            pair: (a.clone(), c.clone()),
            close: closeness(b, a, c, sw),
            linked: is_linked(b, a, c, sw),
            asym_disjoint: asymptotically_disjoint(b, a, c, sw),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompareError {
    #[error("ground sets differ at point {0}")]
    GroundMismatch(Point),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub left: RelationReport,
    pub right: RelationReport,
    pub close_agree: bool,
    pub linked_agree: bool,
}

impl ComparisonRow {
    pub fn agree(&self) -> bool {
        self.close_agree && self.linked_agree
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
    pub delta_disagreement: bool,
    pub lambda_disagreement: bool,
}

/// Unknown never counts as disagreement.
fn answers_agree(x: &Verdict, y: &Verdict) -> bool {
    x.is_unknown() || y.is_unknown() || x.answer == y.answer
}

/// Relation verdicts of two presentations on the same ground set, pair by
/// pair, in input order.
pub fn compare_relations<B1, B2>(
    b1: &B1,
    b2: &B2,
    family: &[(SubsetSpec, SubsetSpec)],
    sw: &ScaleWindow,
) -> Result<Comparison, CompareError>
where
    B1: Ballean + ?Sized,
    B2: Ballean + ?Sized,
{
    if let Some(x) = (0..sw.window).find(|&x| b1.in_ground(x) != b2.in_ground(x)) {
        return Err(CompareError::GroundMismatch(x));
    }
    let rows: Vec<ComparisonRow> = family
        .par_iter()
        .map(|(a, c)| {
            let left = RelationReport::compute(b1, a, c, sw);
            let right = RelationReport::compute(b2, a, c, sw);
            ComparisonRow {
                close_agree: answers_agree(&left.close, &right.close),
                linked_agree: answers_agree(&left.linked, &right.linked),
                left,
                right,
            }
        })
        .collect();
    Ok(Comparison {
        delta_disagreement: rows.iter().any(|r| !r.close_agree),
        lambda_disagreement: rows.iter().any(|r| !r.linked_agree),
        rows,
    })
}
