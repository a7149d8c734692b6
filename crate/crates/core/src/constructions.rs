//! Concrete presentations: the integer line, permutation groups with
//! finitely many generators, the paired ballean on ℕ≥1, filter-modified
//! chains, discrete balleans from a bornology, and the usual derived
//! constructions (restriction, product, reindexing).

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use thiserror::Error;

use crate::presentation::{Ballean, Locality, SharedBallean};
use crate::subset::{Point, SubsetSpec};
use crate::verdict::{Scale, ScaleWindow, Verdict};

/// Explicit chains are checked for monotonicity on this many points.
pub const CHAIN_CHECK_WINDOW: usize = 1 << 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("generator {index} is not a bijection: {reason}")]
    NotBijective { index: usize, reason: String },
    #[error("filter chain is not decreasing: {point} lies in Φ_{next} but not in Φ_{prev}", prev = .scale, next = .scale + 1)]
    PhiNotDecreasing { scale: Scale, point: Point },
    #[error("bounded chain is not ascending: {point} lies in B_{scale} but not in B_{next}", next = .scale + 1)]
    ChainNotAscending { scale: Scale, point: Point },
    #[error("subballean support has no points below {window}")]
    EmptySubballean { window: usize },
    #[error("{0}")]
    BadParameter(String),
}

// ---------------------------------------------------------------------------
// metric line

#[derive(Debug, Clone, Copy, Default)]
pub struct MetricLine;

pub fn make_metric() -> SharedBallean {
    Arc::new(MetricLine)
}

impl Ballean for MetricLine {
    fn label(&self) -> &str {
        "metric"
    }

    fn ball(&self, x: Point, r: Scale) -> Vec<Point> {
        (x.saturating_sub(r)..=x.saturating_add(r)).collect()
    }

    fn compose_index(&self, r: Scale, s: Scale) -> Scale {
        r + s
    }

    fn in_ball(&self, x: Point, y: Point, r: Scale) -> bool {
        x.abs_diff(y) <= r
    }

    fn metric_like(&self) -> bool {
        true
    }

    fn distance(&self, x: Point, y: Point, cap: Scale) -> Option<Scale> {
        Some(x.abs_diff(y)).filter(|&d| d <= cap)
    }
}

// ---------------------------------------------------------------------------
// finitary permutation groups

/// A permutation of ℕ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// Product of disjoint cycles, identity elsewhere.
    Cycles(Vec<Vec<Point>>),
    /// `x ↦ table[x]` on `[0, table.len())`, identity above.
    Table(Vec<Point>),
    /// The same permutation of `[0, block)` applied to every block
    /// `[k·block, (k+1)·block)`.
    Blockwise { block: usize, pattern: Vec<usize> },
}

#[derive(Debug, Clone)]
enum Perm {
    Sparse { forward: HashMap<Point, Point>, inverse: HashMap<Point, Point> },
    Blocks { block: usize, forward: Vec<usize>, inverse: Vec<usize> },
}

impl Perm {
    fn apply(&self, x: Point, inverse: bool) -> Point {
        match self {
            Perm::Sparse { forward, inverse: inv } => {
                let map = if inverse { inv } else { forward };
                map.get(&x).copied().unwrap_or(x)
            }
            Perm::Blocks { block, forward, inverse: inv } => {
                let table = if inverse { inv } else { forward };
                x - x % block + table[x % block]
            }
        }
    }

    fn support(&self) -> Option<Vec<Point>> {
        match self {
            Perm::Sparse { forward, .. } => Some(forward.keys().copied().collect()),
            Perm::Blocks { .. } => None,
        }
    }
}

fn invert_dense(index: usize, table: &[usize]) -> Result<Vec<usize>, ConstructionError> {
    let mut inverse = vec![usize::MAX; table.len()];
    for (i, &t) in table.iter().enumerate() {
        if t >= table.len() {
            return Err(ConstructionError::NotBijective {
                index,
                reason: format!("image {t} of {i} leaves [0, {})", table.len()),
            });
        }
        if inverse[t] != usize::MAX {
            return Err(ConstructionError::NotBijective {
                index,
                reason: format!("{} and {i} both map to {t}", inverse[t]),
            });
        }
        inverse[t] = i;
    }
    Ok(inverse)
}

fn compile(index: usize, g: &Generator) -> Result<Perm, ConstructionError> {
    match g {
        Generator::Cycles(cycles) => {
            let mut forward = HashMap::new();
            let mut seen = HashSet::new();
            for cycle in cycles {
                for (i, &p) in cycle.iter().enumerate() {
                    if !seen.insert(p) {
                        return Err(ConstructionError::NotBijective {
                            index,
                            reason: format!("point {p} appears twice in the cycles"),
                        });
                    }
                    let next = cycle[(i + 1) % cycle.len()];
                    if next != p {
                        forward.insert(p, next);
                    }
                }
            }
            let inverse = forward.iter().map(|(&a, &b)| (b, a)).collect();
            Ok(Perm::Sparse { forward, inverse })
        }
        Generator::Table(table) => {
            invert_dense(index, table)?;
            let forward: HashMap<Point, Point> =
                table.iter().enumerate().filter(|(i, t)| i != *t).map(|(i, &t)| (i, t)).collect();
            let inverse = forward.iter().map(|(&a, &b)| (b, a)).collect();
            Ok(Perm::Sparse { forward, inverse })
        }
        Generator::Blockwise { block, pattern } => {
            if *block == 0 || pattern.len() != *block {
                return Err(ConstructionError::NotBijective {
                    index,
                    reason: format!("pattern of length {} for block size {block}", pattern.len()),
                });
            }
            let inverse = invert_dense(index, pattern)?;
            Ok(Perm::Blocks { block: *block, forward: pattern.clone(), inverse })
        }
    }
}

/// Ballean of a permutation group acting on ℕ: `E_r[x]` is the set of
/// images of `x` under words of length at most `r` in the generators and
/// their inverses.
#[derive(Debug, Clone)]
pub struct Finitary {
    perms: Vec<Perm>,
    finite_support: bool,
}

pub fn make_finitary(generators: Vec<Generator>) -> Result<SharedBallean, ConstructionError> {
    Ok(Arc::new(Finitary::new(generators)?))
}

impl Finitary {
    pub fn new(generators: Vec<Generator>) -> Result<Self, ConstructionError> {
        let perms = generators
            .iter()
            .enumerate()
            .map(|(i, g)| compile(i, g))
            .collect::<Result<Vec<_>, _>>()?;
        let finite_support = perms.iter().all(|p| p.support().is_some());
        Ok(Finitary { perms, finite_support })
    }

    /// Union of the generator supports, when every support is finite.
    pub fn support(&self) -> Option<Vec<Point>> {
        let mut all = Vec::new();
        for p in &self.perms {
            all.extend(p.support()?);
        }
        all.sort_unstable();
        all.dedup();
        Some(all)
    }
}

impl Ballean for Finitary {
    fn label(&self) -> &str {
        "finitary"
    }

    fn ball(&self, x: Point, r: Scale) -> Vec<Point> {
        let mut seen: HashSet<Point> = HashSet::from([x]);
        let mut frontier = vec![x];
        for _ in 0..r {
            let mut next = Vec::new();
            for &p in &frontier {
                for perm in &self.perms {
                    for inverse in [false, true] {
                        let q = perm.apply(p, inverse);
                        if seen.insert(q) {
                            next.push(q);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        let mut out: Vec<Point> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    fn compose_index(&self, r: Scale, s: Scale) -> Scale {
        r + s
    }

    fn locality(&self) -> Locality {
        if self.finite_support {
            Locality::Discrete
        } else {
            Locality::General
        }
    }

    fn fixed_forever(&self, x: Point) -> bool {
        self.perms.iter().all(|p| p.apply(x, false) == x)
    }
}

// ---------------------------------------------------------------------------
// paired ballean on ℕ≥1

/// Ground set ℕ≥1 with entourages `(F_r × F_r) ∪ A ∪ △`, where
/// `F_r = {1, …, r}` and `A` pairs `2n+1` with `2n+2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Example5;

pub fn make_example5() -> SharedBallean {
    Arc::new(Example5)
}

impl Example5 {
    /// `1 ↔ 2`, `3 ↔ 4`, …
    pub fn partner(x: Point) -> Point {
        if x % 2 == 1 {
            x + 1
        } else {
            x - 1
        }
    }
}

impl Ballean for Example5 {
    fn label(&self) -> &str {
        "example5"
    }

    fn in_ground(&self, x: Point) -> bool {
        x >= 1
    }

    fn ground_spec(&self) -> Option<SubsetSpec> {
        Some(SubsetSpec::Arithmetic { start: 1, step: 1 })
    }

    fn ball(&self, x: Point, r: Scale) -> Vec<Point> {
        let p = Self::partner(x);
        let mut out: Vec<Point> = if x <= r { (1..=r).collect() } else { vec![x] };
        if p > r || x > r {
            out.push(p);
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    fn in_ball(&self, x: Point, y: Point, r: Scale) -> bool {
        x == y || y == Self::partner(x) || (x <= r && y <= r)
    }

    fn compose_index(&self, r: Scale, s: Scale) -> Scale {
        r.max(s) + 1
    }

    fn metric_like(&self) -> bool {
        true
    }

    fn distance(&self, x: Point, y: Point, cap: Scale) -> Option<Scale> {
        let d = if x == y || y == Self::partner(x) { 0 } else { x.max(y) };
        Some(d).filter(|&d| d <= cap)
    }
}

// ---------------------------------------------------------------------------
// filter-modified chains

/// A decreasing chain `Φ_0 ⊇ Φ_1 ⊇ …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiChain {
    /// `Φ_r = {x ≥ step·(r + offset)}`.
    Tail { step: usize, offset: usize },
    /// `Φ_r` is the `r`-th entry; the last entry repeats.
    Explicit(Vec<SubsetSpec>),
}

impl PhiChain {
    pub fn contains(&self, r: Scale, x: Point) -> bool {
        match self {
            PhiChain::Tail { step, offset } => x >= step.saturating_mul(r + offset),
            PhiChain::Explicit(sets) => sets[r.min(sets.len() - 1)].contains(x),
        }
    }

    fn complements_finite(&self) -> bool {
        match self {
            PhiChain::Tail { .. } => true,
            PhiChain::Explicit(sets) => sets
                .iter()
                .all(|s| SubsetSpec::difference(SubsetSpec::All, s.clone()).finiteness() == Some(true)),
        }
    }

    fn validate(&self) -> Result<(), ConstructionError> {
        let PhiChain::Explicit(sets) = self else {
            return Ok(());
        };
        if sets.is_empty() {
            return Err(ConstructionError::BadParameter("filter chain has no sets".into()));
        }
        for s in sets {
            s.validate().map_err(|e| ConstructionError::BadParameter(e.to_string()))?;
        }
        for (r, pair) in sets.windows(2).enumerate() {
            if let Some(point) = pair[1].enumerate(CHAIN_CHECK_WINDOW).into_iter().find(|&x| !pair[0].contains(x)) {
                return Err(ConstructionError::PhiNotDecreasing { scale: r, point });
            }
        }
        Ok(())
    }
}

/// `H_r[x] = {x}` for `x ∈ Φ_r`, and `E_r[x] ∖ Φ_r` otherwise. The
/// bornology is the base bornology.
#[derive(Debug, Clone)]
pub struct FilterModified {
    base: SharedBallean,
    phi: PhiChain,
    label: String,
}

pub fn make_filter_modified(base: SharedBallean, phi: PhiChain) -> Result<SharedBallean, ConstructionError> {
    phi.validate()?;
    let label = format!("filter({})", base.label());
    Ok(Arc::new(FilterModified { base, phi, label }))
}

impl FilterModified {
    pub fn phi(&self) -> &PhiChain {
        &self.phi
    }
}

impl Ballean for FilterModified {
    fn label(&self) -> &str {
        &self.label
    }

    fn in_ground(&self, x: Point) -> bool {
        self.base.in_ground(x)
    }

    fn ground_spec(&self) -> Option<SubsetSpec> {
        self.base.ground_spec()
    }

    fn ball(&self, x: Point, r: Scale) -> Vec<Point> {
        if self.phi.contains(r, x) {
            return vec![x];
        }
        let mut ball = self.base.ball(x, r);
        ball.retain(|&y| !self.phi.contains(r, y));
        ball
    }

    fn in_ball(&self, x: Point, y: Point, r: Scale) -> bool {
        if x == y {
            return true;
        }
        !self.phi.contains(r, x) && !self.phi.contains(r, y) && self.base.in_ball(x, y, r)
    }

    /// `Φ` shrinks along the chain, so the composite of `H_r` and `H_s`
    /// sits in `H_t` once `t` dominates `r`, `s` and the base index.
    fn compose_index(&self, r: Scale, s: Scale) -> Scale {
        self.base.compose_index(r, s).max(r).max(s)
    }

    fn locality(&self) -> Locality {
        if self.phi.complements_finite() {
            Locality::Discrete
        } else {
            self.base.locality()
        }
    }

    fn fixed_forever(&self, x: Point) -> bool {
        self.base.fixed_forever(x)
    }

    fn is_bounded(&self, spec: &SubsetSpec, sw: &ScaleWindow) -> Verdict {
        self.base.is_bounded(spec, sw)
    }
}

// ---------------------------------------------------------------------------
// discrete ballean from a bornology

/// An ascending chain of bounded sets `B_0 ⊆ B_1 ⊆ …` covering ℕ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundedChain {
    /// `B_r = [0, step·r + offset)`.
    Prefix { step: usize, offset: usize },
    /// Listed sets; past the end `B_r = B_last ∪ [0, r)`.
    Explicit(Vec<Vec<Point>>),
}

impl BoundedChain {
    pub fn contains(&self, r: Scale, x: Point) -> bool {
        match self {
            BoundedChain::Prefix { step, offset } => x < step.saturating_mul(r).saturating_add(*offset),
            BoundedChain::Explicit(sets) => match sets.get(r) {
                Some(set) => set.binary_search(&x).is_ok(),
                None => x < r || sets.last().is_some_and(|s| s.binary_search(&x).is_ok()),
            },
        }
    }

    pub fn members(&self, r: Scale) -> Vec<Point> {
        match self {
            BoundedChain::Prefix { step, offset } => (0..step.saturating_mul(r).saturating_add(*offset)).collect(),
            BoundedChain::Explicit(sets) => match sets.get(r) {
                Some(set) => set.clone(),
                None => {
                    let mut out: Vec<Point> = (0..r).collect();
                    out.extend(sets.last().into_iter().flatten());
                    out.sort_unstable();
                    out.dedup();
                    out
                }
            },
        }
    }
}

/// `E_r[x] = B_r` for `x ∈ B_r` and `{x}` otherwise.
#[derive(Debug, Clone)]
pub struct DiscreteChain {
    chain: BoundedChain,
}

pub fn make_discrete_from_bornology(chain: BoundedChain) -> Result<SharedBallean, ConstructionError> {
    match &chain {
        BoundedChain::Prefix { step: 0, .. } => {
            return Err(ConstructionError::BadParameter("prefix chain needs step >= 1".into()))
        }
        BoundedChain::Prefix { .. } => {}
        BoundedChain::Explicit(sets) => {
            if sets.iter().any(|s| s.windows(2).any(|w| w[0] >= w[1])) {
                return Err(ConstructionError::BadParameter("bounded sets must be sorted and duplicate-free".into()));
            }
            for (r, pair) in sets.windows(2).enumerate() {
                if let Some(&point) = pair[0].iter().find(|x| pair[1].binary_search(x).is_err()) {
                    return Err(ConstructionError::ChainNotAscending { scale: r, point });
                }
            }
        }
    }
    Ok(Arc::new(DiscreteChain { chain }))
}

impl Ballean for DiscreteChain {
    fn label(&self) -> &str {
        "discrete"
    }

    fn ball(&self, x: Point, r: Scale) -> Vec<Point> {
        if self.chain.contains(r, x) {
            self.chain.members(r)
        } else {
            vec![x]
        }
    }

    fn in_ball(&self, x: Point, y: Point, r: Scale) -> bool {
        x == y || (self.chain.contains(r, x) && self.chain.contains(r, y))
    }

    fn compose_index(&self, r: Scale, s: Scale) -> Scale {
        r.max(s)
    }

    fn locality(&self) -> Locality {
        Locality::Discrete
    }

    fn metric_like(&self) -> bool {
        matches!(self.chain, BoundedChain::Prefix { .. })
    }

    fn distance(&self, x: Point, y: Point, cap: Scale) -> Option<Scale> {
        let d = match self.chain {
            _ if x == y => 0,
            BoundedChain::Prefix { step, offset } => {
                let m = x.max(y);
                if m < offset {
                    0
                } else {
                    (m - offset) / step + 1
                }
            }
            BoundedChain::Explicit(_) => {
                return (0..=cap).find(|&r| self.in_ball(x, y, r));
            }
        };
        Some(d).filter(|&d| d <= cap)
    }
}

// ---------------------------------------------------------------------------
// subballean

/// Restriction to a subset `Y`; points keep their labels in ℕ.
#[derive(Debug, Clone)]
pub struct Subballean {
    inner: SharedBallean,
    support: SubsetSpec,
    label: String,
}

pub fn make_subballean(b: SharedBallean, y: SubsetSpec, window: usize) -> Result<SharedBallean, ConstructionError> {
    y.validate().map_err(|e| ConstructionError::BadParameter(e.to_string()))?;
    if y == SubsetSpec::All {
        return Ok(b);
    }
    if !y.enumerate(window).into_iter().any(|x| b.in_ground(x)) {
        return Err(ConstructionError::EmptySubballean { window });
    }
    let label = format!("{}|{}", b.label(), y);
    Ok(Arc::new(Subballean { inner: b, support: y, label }))
}

impl Ballean for Subballean {
    fn label(&self) -> &str {
        &self.label
    }

    fn in_ground(&self, x: Point) -> bool {
        self.support.contains(x) && self.inner.in_ground(x)
    }

    fn ground_spec(&self) -> Option<SubsetSpec> {
        match self.inner.ground_spec()? {
            SubsetSpec::All => Some(self.support.clone()),
            g => Some(SubsetSpec::intersection(vec![self.support.clone(), g])),
        }
    }

    fn ball(&self, x: Point, r: Scale) -> Vec<Point> {
        let mut ball = self.inner.ball(x, r);
        ball.retain(|&y| self.support.contains(y));
        ball
    }

    fn in_ball(&self, x: Point, y: Point, r: Scale) -> bool {
        self.support.contains(y) && self.inner.in_ball(x, y, r)
    }

    fn compose_index(&self, r: Scale, s: Scale) -> Scale {
        self.inner.compose_index(r, s)
    }

    fn locality(&self) -> Locality {
        self.inner.locality()
    }

    fn fixed_forever(&self, x: Point) -> bool {
        self.inner.fixed_forever(x)
    }

    fn metric_like(&self) -> bool {
        self.inner.metric_like()
    }

    fn distance(&self, x: Point, y: Point, cap: Scale) -> Option<Scale> {
        self.inner.distance(x, y, cap)
    }

    fn is_bounded(&self, spec: &SubsetSpec, sw: &ScaleWindow) -> Verdict {
        self.inner.is_bounded(&SubsetSpec::intersection(vec![spec.clone(), self.support.clone()]), sw)
    }
}

// ---------------------------------------------------------------------------
// product

/// Cantor pairing `(a, b) ↦ (a+b)(a+b+1)/2 + b`.
pub fn pair(a: Point, b: Point) -> Point {
    let s = a + b;
    s * (s + 1) / 2 + b
}

pub fn unpair(z: Point) -> (Point, Point) {
    // largest w with w(w+1)/2 <= z
    let mut w = (((8.0 * z as f64 + 1.0).sqrt() - 1.0) / 2.0) as usize;
    while w * (w + 1) / 2 > z {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= z {
        w += 1;
    }
    let b = z - w * (w + 1) / 2;
    (w - b, b)
}

#[derive(Debug, Clone)]
pub struct Product {
    left: SharedBallean,
    right: SharedBallean,
    label: String,
}

pub fn make_product(b1: SharedBallean, b2: SharedBallean) -> SharedBallean {
    let label = format!("{}×{}", b1.label(), b2.label());
    Arc::new(Product { left: b1, right: b2, label })
}

impl Ballean for Product {
    fn label(&self) -> &str {
        &self.label
    }

    fn in_ground(&self, z: Point) -> bool {
        let (a, b) = unpair(z);
        self.left.in_ground(a) && self.right.in_ground(b)
    }

    fn ground_spec(&self) -> Option<SubsetSpec> {
        match (self.left.ground_spec()?, self.right.ground_spec()?) {
            (SubsetSpec::All, SubsetSpec::All) => Some(SubsetSpec::All),
            _ => None,
        }
    }

    fn ball(&self, z: Point, r: Scale) -> Vec<Point> {
        let (a, b) = unpair(z);
        let right = self.right.ball(b, r);
        let mut out: Vec<Point> = self
            .left
            .ball(a, r)
            .into_iter()
            .flat_map(|x| right.iter().map(move |&y| pair(x, y)))
            .collect();
        out.sort_unstable();
        out
    }

    fn in_ball(&self, z: Point, w: Point, r: Scale) -> bool {
        let ((a, b), (c, d)) = (unpair(z), unpair(w));
        self.left.in_ball(a, c, r) && self.right.in_ball(b, d, r)
    }

    fn compose_index(&self, r: Scale, s: Scale) -> Scale {
        self.left.compose_index(r, s).max(self.right.compose_index(r, s))
    }

    fn fixed_forever(&self, z: Point) -> bool {
        let (a, b) = unpair(z);
        self.left.fixed_forever(a) && self.right.fixed_forever(b)
    }

    fn metric_like(&self) -> bool {
        self.left.metric_like() && self.right.metric_like()
    }

    fn distance(&self, z: Point, w: Point, cap: Scale) -> Option<Scale> {
        let ((a, b), (c, d)) = (unpair(z), unpair(w));
        Some(self.left.distance(a, c, cap)?.max(self.right.distance(b, d, cap)?))
    }
}

// ---------------------------------------------------------------------------
// reindexing

/// The chain `E′_r = E_{k·r}`: the same coarse structure with a sparser
/// index.
#[derive(Debug, Clone)]
pub struct Reindexed {
    inner: SharedBallean,
    factor: usize,
    label: String,
}

pub fn make_reindexed(b: SharedBallean, factor: usize) -> Result<SharedBallean, ConstructionError> {
    if factor == 0 {
        return Err(ConstructionError::BadParameter("reindexing factor must be >= 1".into()));
    }
    let label = format!("{}*{factor}", b.label());
    Ok(Arc::new(Reindexed { inner: b, factor, label }))
}

impl Ballean for Reindexed {
    fn label(&self) -> &str {
        &self.label
    }

    fn in_ground(&self, x: Point) -> bool {
        self.inner.in_ground(x)
    }

    fn ground_spec(&self) -> Option<SubsetSpec> {
        self.inner.ground_spec()
    }

    fn ball(&self, x: Point, r: Scale) -> Vec<Point> {
        self.inner.ball(x, self.factor * r)
    }

    fn in_ball(&self, x: Point, y: Point, r: Scale) -> bool {
        self.inner.in_ball(x, y, self.factor * r)
    }

    fn compose_index(&self, r: Scale, s: Scale) -> Scale {
        self.inner.compose_index(self.factor * r, self.factor * s).div_ceil(self.factor)
    }

    fn locality(&self) -> Locality {
        self.inner.locality()
    }

    fn fixed_forever(&self, x: Point) -> bool {
        self.inner.fixed_forever(x)
    }

    fn metric_like(&self) -> bool {
        self.inner.metric_like()
    }

    fn distance(&self, x: Point, y: Point, cap: Scale) -> Option<Scale> {
        let d = self.inner.distance(x, y, cap.saturating_mul(self.factor))?;
        Some(d.div_ceil(self.factor))
    }

    fn is_bounded(&self, spec: &SubsetSpec, sw: &ScaleWindow) -> Verdict {
        self.inner.is_bounded(spec, sw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::validate_presentation;

    fn sw64() -> ScaleWindow {
        ScaleWindow::new(8, 64).unwrap()
    }

    #[test]
    fn metric_balls() {
        let m = MetricLine;
        assert_eq!(m.ball(5, 2), vec![3, 4, 5, 6, 7]);
        assert_eq!(m.ball(0, 3), vec![0, 1, 2, 3]);
        assert_eq!(m.ball(9, 0), vec![9]);
    }

    #[test]
    fn finitary_balls() {
        let three = Finitary::new(vec![Generator::Cycles(vec![vec![0, 1, 2]])]).unwrap();
        assert_eq!(three.ball(0, 1), vec![0, 1, 2]);
        assert!((0..6).all(|r| three.ball(5, r) == vec![5]));
        let swap = Finitary::new(vec![Generator::Cycles(vec![vec![0, 1]])]).unwrap();
        assert_eq!(swap.ball(0, 4), vec![0, 1]);
        assert_eq!(swap.locality(), Locality::Discrete);
        assert!(swap.fixed_forever(7) && !swap.fixed_forever(1));
    }

    #[test]
    fn finitary_rejects_non_bijections() {
        assert!(matches!(
            Finitary::new(vec![Generator::Table(vec![1, 1, 0])]),
            Err(ConstructionError::NotBijective { index: 0, .. })
        ));
        assert!(Finitary::new(vec![Generator::Cycles(vec![vec![0, 1], vec![1, 2]])]).is_err());
        assert!(Finitary::new(vec![Generator::Blockwise { block: 3, pattern: vec![0, 1] }]).is_err());
    }

    #[test]
    fn blockwise_generator_pairs_neighbours() {
        let pairs = Finitary::new(vec![Generator::Blockwise { block: 2, pattern: vec![1, 0] }]).unwrap();
        assert_eq!(pairs.ball(10, 3), vec![10, 11]);
        assert_eq!(pairs.locality(), Locality::General);
        assert!(validate_presentation(&pairs, &sw64()).is_yes());
    }

    #[test]
    fn example5_balls() {
        let e = Example5;
        assert_eq!(e.ball(5, 3), vec![5, 6]);
        assert_eq!(e.ball(2, 3), vec![1, 2, 3]);
        assert_eq!(e.ball(7, 0), vec![7, 8]);
        assert_eq!(e.ball(3, 3), vec![1, 2, 3, 4]);
        assert!((1..60).all(|x| (0..x).all(|r| e.ball(x, r).len() == 2)));
    }

    #[test]
    fn filter_balls() {
        let f = make_filter_modified(make_metric(), PhiChain::Tail { step: 10, offset: 1 }).unwrap();
        assert_eq!(f.ball(35, 2), vec![35]);
        assert_eq!(f.ball(5, 2), vec![3, 4, 5, 6, 7]);
        assert_eq!(f.ball(28, 2), vec![26, 27, 28, 29]);
        assert_eq!(f.locality(), Locality::Discrete);
    }

    #[test]
    fn filter_rejects_growing_chain() {
        let growing = PhiChain::Explicit(vec![SubsetSpec::evens(), SubsetSpec::All]);
        assert!(matches!(
            make_filter_modified(make_metric(), growing),
            Err(ConstructionError::PhiNotDecreasing { scale: 0, point: 1 })
        ));
    }

    #[test]
    fn discrete_balls() {
        let d = make_discrete_from_bornology(BoundedChain::Prefix { step: 1, offset: 0 }).unwrap();
        assert_eq!(d.ball(2, 5), vec![0, 1, 2, 3, 4]);
        assert_eq!(d.ball(7, 5), vec![7]);
        assert_eq!(d.ball(0, 0), vec![0]);
        assert_eq!(d.distance(3, 9, 100), Some(10));
        assert!(make_discrete_from_bornology(BoundedChain::Explicit(vec![vec![0, 1], vec![1]])).is_err());
    }

    #[test]
    fn explicit_chain_continues_past_its_end() {
        let d = make_discrete_from_bornology(BoundedChain::Explicit(vec![vec![], vec![4, 9]])).unwrap();
        assert_eq!(d.ball(4, 1), vec![4, 9]);
        assert_eq!(d.ball(4, 3), vec![0, 1, 2, 4, 9]);
        assert!(validate_presentation(d.as_ref(), &sw64()).is_yes());
    }

    #[test]
    fn subballean_balls() {
        let evens = make_subballean(make_metric(), SubsetSpec::evens(), 64).unwrap();
        assert_eq!(evens.ball(4, 2), vec![2, 4, 6]);
        let pow4 = make_subballean(make_metric(), SubsetSpec::geometric(1, 4).unwrap(), 64).unwrap();
        assert_eq!(pow4.ball(16, 3), vec![16]);
        let same = make_subballean(make_metric(), SubsetSpec::All, 64).unwrap();
        assert_eq!(same.label(), "metric");
        assert!(matches!(
            make_subballean(make_metric(), SubsetSpec::list([100]), 64),
            Err(ConstructionError::EmptySubballean { window: 64 })
        ));
    }

    #[test]
    fn cantor_pairing_round_trips() {
        for z in 0..5000 {
            let (a, b) = unpair(z);
            assert_eq!(pair(a, b), z);
        }
    }

    #[test]
    fn product_balls() {
        let mm = make_product(make_metric(), make_metric());
        let origin: Vec<(Point, Point)> = mm.ball(pair(0, 0), 1).into_iter().map(unpair).collect();
        assert_eq!(origin.len(), 4);
        assert!(origin.iter().all(|&(a, b)| a <= 1 && b <= 1));
        let d = make_discrete_from_bornology(BoundedChain::Prefix { step: 1, offset: 0 }).unwrap();
        let md = make_product(make_metric(), d);
        let mut ball: Vec<(Point, Point)> = md.ball(pair(5, 7), 5).into_iter().map(unpair).collect();
        ball.sort_unstable();
        assert_eq!(ball, (0..=10).map(|a| (a, 7)).collect::<Vec<_>>());
        assert_eq!(mm.ball(pair(3, 3), 0), vec![pair(3, 3)]);
    }

    #[test]
    fn reindexed_doubles_radii() {
        let m2 = make_reindexed(make_metric(), 2).unwrap();
        assert_eq!(m2.ball(10, 1), make_metric().ball(10, 2));
        assert_eq!(m2.compose_index(1, 2), 3);
        assert_eq!(m2.distance(0, 5, 10), Some(3));
        assert!(validate_presentation(m2.as_ref(), &sw64()).is_yes());
        assert!(make_reindexed(make_metric(), 0).is_err());
    }
}
