//! Finitely describable subsets of the ground set.
//!
//! A [`SubsetSpec`] has exact membership everywhere and can be enumerated
//! inside any window `[0, N)`. Specs also carry enough structure to decide
//! finiteness in the common cases (eventually periodic sets, geometric
//! sequences against periodic sets), which the bornology oracles use to
//! give answers that hold beyond the window.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A point of the ground set.
pub type Point = usize;

/// Periods beyond this are not analysed structurally.
const MAX_PERIOD: usize = 1 << 16;
/// Geometric-vs-periodic analysis walks at most `period²` residue states.
const MAX_GEOMETRIC_PERIOD: usize = 1 << 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("arithmetic progression needs step >= 1")]
    ZeroStep,
    #[error("geometric sequence needs ratio >= 2 (got {0})")]
    RatioTooSmall(usize),
    #[error("geometric sequence needs start >= 1")]
    ZeroStart,
    #[error("point list must be sorted and duplicate-free")]
    UnsortedList,
    #[error("cannot parse subset `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

/// A subset of ℕ given by a finite description.
///
/// `FiniteList` and `Trace` hold sorted, duplicate-free point lists; use
/// [`SubsetSpec::list`] and [`SubsetSpec::trace`] to build them. A `Trace`
/// is the in-window sample of a set produced by some construction (a
/// greedy net, a proof witness, a sublevel set of a function). Unlike a
/// `FiniteList` it is not known to be finite, so its boundedness is judged
/// from the window alone.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SubsetSpec {
    FiniteList(Vec<Point>),
    /// `{start + step·n : n ≥ 0}`.
    Arithmetic { start: Point, step: usize },
    /// `{start·ratioⁿ + drift·n : n ≥ 0}`.
    Geometric { start: Point, ratio: usize, drift: usize },
    Union(Vec<SubsetSpec>),
    Intersection(Vec<SubsetSpec>),
    DifferenceWithinWindow(Box<SubsetSpec>, Box<SubsetSpec>),
    All,
    Trace(Vec<Point>),
}

fn sorted_dedup(mut points: Vec<Point>) -> Vec<Point> {
    points.sort_unstable();
    points.dedup();
    points
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> Option<usize> {
    (a / gcd(a, b)).checked_mul(b)
}

impl SubsetSpec {
    pub fn list(points: impl IntoIterator<Item = Point>) -> Self {
        SubsetSpec::FiniteList(sorted_dedup(points.into_iter().collect()))
    }

    pub fn trace(points: impl IntoIterator<Item = Point>) -> Self {
        SubsetSpec::Trace(sorted_dedup(points.into_iter().collect()))
    }

    pub fn arithmetic(start: Point, step: usize) -> Result<Self, SpecError> {
        let spec = SubsetSpec::Arithmetic { start, step };
        spec.validate()?;
        Ok(spec)
    }

    pub fn geometric(start: Point, ratio: usize) -> Result<Self, SpecError> {
        Self::geometric_with_drift(start, ratio, 0)
    }

    pub fn geometric_with_drift(start: Point, ratio: usize, drift: usize) -> Result<Self, SpecError> {
        let spec = SubsetSpec::Geometric { start, ratio, drift };
        spec.validate()?;
        Ok(spec)
    }

    pub fn union(parts: Vec<SubsetSpec>) -> Self {
        SubsetSpec::Union(parts)
    }

    pub fn intersection(parts: Vec<SubsetSpec>) -> Self {
        SubsetSpec::Intersection(parts)
    }

    pub fn difference(keep: SubsetSpec, remove: SubsetSpec) -> Self {
        SubsetSpec::DifferenceWithinWindow(Box::new(keep), Box::new(remove))
    }

    pub fn evens() -> Self {
        SubsetSpec::Arithmetic { start: 0, step: 2 }
    }

    pub fn odds() -> Self {
        SubsetSpec::Arithmetic { start: 1, step: 2 }
    }

    /// Checks the parameter constraints of every node.
    pub fn validate(&self) -> Result<(), SpecError> {
        match self {
            SubsetSpec::FiniteList(points) | SubsetSpec::Trace(points) => {
                if points.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(SpecError::UnsortedList);
                }
                Ok(())
            }
            SubsetSpec::Arithmetic { step, .. } => {
                if *step == 0 {
                    Err(SpecError::ZeroStep)
                } else {
                    Ok(())
                }
            }
            SubsetSpec::Geometric { start, ratio, .. } => {
                if *ratio < 2 {
                    Err(SpecError::RatioTooSmall(*ratio))
                } else if *start == 0 {
                    Err(SpecError::ZeroStart)
                } else {
                    Ok(())
                }
            }
            SubsetSpec::Union(parts) | SubsetSpec::Intersection(parts) => {
                parts.iter().try_for_each(SubsetSpec::validate)
            }
            SubsetSpec::DifferenceWithinWindow(a, b) => {
                a.validate()?;
                b.validate()
            }
            SubsetSpec::All => Ok(()),
        }
    }

    /// Exact membership test.
    pub fn contains(&self, x: Point) -> bool {
        match self {
            SubsetSpec::FiniteList(points) | SubsetSpec::Trace(points) => {
                points.binary_search(&x).is_ok()
            }
            SubsetSpec::Arithmetic { start, step } => {
                x >= *start && (x - start).is_multiple_of((*step).max(1))
            }
            SubsetSpec::Geometric { .. } => {
                let mut hit = false;
                self.walk_geometric(x.saturating_add(1), |v| hit |= v == x);
                hit
            }
            SubsetSpec::Union(parts) => parts.iter().any(|p| p.contains(x)),
            SubsetSpec::Intersection(parts) => parts.iter().all(|p| p.contains(x)),
            SubsetSpec::DifferenceWithinWindow(a, b) => a.contains(x) && !b.contains(x),
            SubsetSpec::All => true,
        }
    }

    /// Calls `visit` on every geometric term below `limit`, in increasing order.
    fn walk_geometric(&self, limit: usize, mut visit: impl FnMut(Point)) {
        let SubsetSpec::Geometric { start, ratio, drift } = *self else {
            return;
        };
        let mut power = start;
        let mut n = 0usize;
        loop {
            let Some(v) = drift.checked_mul(n).and_then(|d| power.checked_add(d)) else {
                return;
            };
            if v >= limit {
                return;
            }
            visit(v);
            match power.checked_mul(ratio.max(2)) {
                Some(p) => power = p,
                None => return,
            }
            n += 1;
        }
    }

    /// Sorted, duplicate-free members in `[0, window)`.
    pub fn enumerate(&self, window: usize) -> Vec<Point> {
        match self {
            SubsetSpec::FiniteList(points) | SubsetSpec::Trace(points) => {
                points.iter().copied().take_while(|&p| p < window).collect()
            }
            SubsetSpec::Arithmetic { start, step } => {
                (*start..window).step_by((*step).max(1)).collect()
            }
            SubsetSpec::Geometric { .. } => {
                let mut out = Vec::new();
                self.walk_geometric(window, |v| out.push(v));
                out
            }
            SubsetSpec::Union(parts) => {
                let mut out: Vec<Point> = parts.iter().flat_map(|p| p.enumerate(window)).collect();
                out.sort_unstable();
                out.dedup();
                out
            }
            SubsetSpec::Intersection(parts) => match parts.split_first() {
                None => (0..window).collect(),
                Some((first, rest)) => first
                    .enumerate(window)
                    .into_iter()
                    .filter(|&x| rest.iter().all(|p| p.contains(x)))
                    .collect(),
            },
            SubsetSpec::DifferenceWithinWindow(a, b) => a
                .enumerate(window)
                .into_iter()
                .filter(|&x| !b.contains(x))
                .collect(),
            SubsetSpec::All => (0..window).collect(),
        }
    }

    /// `Some((threshold, period))` when membership is periodic with the
    /// given period from `threshold` onwards.
    fn periodicity(&self) -> Option<(Point, usize)> {
        match self {
            SubsetSpec::All => Some((0, 1)),
            SubsetSpec::Arithmetic { start, step } => Some((*start, (*step).max(1))),
            SubsetSpec::FiniteList(points) => Some((points.last().map_or(0, |p| p + 1), 1)),
            SubsetSpec::Union(parts) | SubsetSpec::Intersection(parts) => {
                parts.iter().try_fold((0, 1), |(t, p), part| {
                    let (t2, p2) = part.periodicity()?;
                    let period = lcm(p, p2).filter(|&l| l <= MAX_PERIOD)?;
                    Some((t.max(t2), period))
                })
            }
            SubsetSpec::DifferenceWithinWindow(a, b) => {
                let (ta, pa) = a.periodicity()?;
                let (tb, pb) = b.periodicity()?;
                let period = lcm(pa, pb).filter(|&l| l <= MAX_PERIOD)?;
                Some((ta.max(tb), period))
            }
            SubsetSpec::Geometric { .. } | SubsetSpec::Trace(_) => None,
        }
    }

    /// Eventually periodic, finite sets included. Membership of such a set
    /// beyond the window repeats what the window shows.
    pub fn is_regular(&self) -> bool {
        self.periodicity().is_some()
    }

    /// Structural finiteness: `Some(true)` finite, `Some(false)` infinite,
    /// `None` when the description does not settle it (always the case
    /// for a `Trace`).
    pub fn finiteness(&self) -> Option<bool> {
        match self {
            SubsetSpec::FiniteList(_) => return Some(true),
            SubsetSpec::Trace(_) => return None,
            SubsetSpec::All | SubsetSpec::Arithmetic { .. } | SubsetSpec::Geometric { .. } => {
                return Some(false)
            }
            _ => {}
        }
        if let Some((threshold, period)) = self.periodicity() {
            return Some(!(threshold..threshold + period).any(|x| self.contains(x)));
        }
        match self {
            SubsetSpec::Union(parts) => {
                let verdicts: Vec<Option<bool>> = parts.iter().map(SubsetSpec::finiteness).collect();
                if verdicts.contains(&Some(false)) {
                    Some(false)
                } else if verdicts.iter().all(|v| *v == Some(true)) {
                    Some(true)
                } else {
                    None
                }
            }
            SubsetSpec::Intersection(parts) => {
                if parts.iter().any(|p| p.finiteness() == Some(true)) {
                    return Some(true);
                }
                let (sparse, periodic): (Vec<&SubsetSpec>, Vec<&SubsetSpec>) =
                    parts.iter().partition(|p| p.periodicity().is_none());
                match sparse.as_slice() {
                    [g @ SubsetSpec::Geometric { .. }] => {
                        let rest = SubsetSpec::Intersection(periodic.into_iter().cloned().collect());
                        let (t, p) = rest.periodicity()?;
                        geometric_hits_infinitely(g, t, p, |x| rest.contains(x)).map(|inf| !inf)
                    }
                    _ => None,
                }
            }
            SubsetSpec::DifferenceWithinWindow(a, b) => {
                if a.finiteness() == Some(true) || **b == SubsetSpec::All {
                    return Some(true);
                }
                if b.finiteness() == Some(true) {
                    return a.finiteness();
                }
                if let (SubsetSpec::Geometric { .. }, Some((t, p))) = (a.as_ref(), b.periodicity()) {
                    return geometric_hits_infinitely(a, t, p, |x| !b.contains(x)).map(|inf| !inf);
                }
                None
            }
            _ => None,
        }
    }

    /// True when the spec is certainly empty everywhere, not just in a window.
    pub fn is_certainly_empty(&self) -> bool {
        match self {
            SubsetSpec::FiniteList(points) => points.is_empty(),
            SubsetSpec::Union(parts) => parts.iter().all(SubsetSpec::is_certainly_empty),
            _ => false,
        }
    }
}

/// Decides whether the geometric spec `g` has infinitely many terms `v`
/// with `pred(v)`, where `pred` is periodic with `period` from
/// `threshold` on. Returns `None` when the period is too large to scan.
fn geometric_hits_infinitely(
    g: &SubsetSpec,
    threshold: Point,
    period: usize,
    pred: impl Fn(Point) -> bool,
) -> Option<bool> {
    let SubsetSpec::Geometric { start, ratio, drift } = *g else {
        return None;
    };
    if period > MAX_GEOMETRIC_PERIOD {
        return None;
    }
    // first index whose exact value reaches the threshold
    let mut n0 = 0usize;
    let mut value = start as u128;
    let mut power = start as u128;
    while value < threshold as u128 {
        n0 += 1;
        power = power.saturating_mul(ratio as u128);
        value = power.saturating_add((drift as u128).saturating_mul(n0 as u128));
    }
    let modulus = period as u128;
    // state: (start·ratioⁿ mod p, n mod p) determines the residue of the term
    let mut pow_mod = (start as u128 % modulus) * mod_pow(ratio as u128, n0 as u128, modulus) % modulus;
    let mut n_mod = n0 as u128 % modulus;
    let mut seen: HashMap<(u128, u128), usize> = HashMap::new();
    let mut states = Vec::new();
    loop {
        let state = (pow_mod, n_mod);
        if let Some(&first) = seen.get(&state) {
            return Some(states[first..].iter().any(|&(pm, nm)| {
                let residue = (pm + (drift as u128 % modulus) * nm) % modulus;
                let base = threshold as u128;
                let offset = (residue + modulus - base % modulus) % modulus;
                pred((base + offset) as usize)
            }));
        }
        seen.insert(state, states.len());
        states.push(state);
        pow_mod = pow_mod * (ratio as u128 % modulus) % modulus;
        n_mod = (n_mod + 1) % modulus;
    }
}

fn mod_pow(mut base: u128, mut exp: u128, modulus: u128) -> u128 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for SubsetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(f: &mut fmt::Formatter<'_>, name: &str, parts: &[SubsetSpec]) -> fmt::Result {
            write!(f, "{name}(")?;
            for (i, p) in parts.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")
        }
        fn points(f: &mut fmt::Formatter<'_>, name: &str, pts: &[Point]) -> fmt::Result {
            write!(f, "{name}(")?;
            for (i, p) in pts.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")
        }
        match self {
            SubsetSpec::FiniteList(pts) => points(f, "list", pts),
            SubsetSpec::Trace(pts) => points(f, "trace", pts),
            SubsetSpec::Arithmetic { start, step } => write!(f, "arith({start},{step})"),
            SubsetSpec::Geometric { start, ratio, drift: 0 } => write!(f, "geom({start},{ratio})"),
            SubsetSpec::Geometric { start, ratio, drift } => {
                write!(f, "geom({start},{ratio},{drift})")
            }
            SubsetSpec::Union(parts) => join(f, "union", parts),
            SubsetSpec::Intersection(parts) => join(f, "inter", parts),
            SubsetSpec::DifferenceWithinWindow(a, b) => write!(f, "diff({a},{b})"),
            SubsetSpec::All => write!(f, "all"),
        }
    }
}

struct Parser<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, reason: impl Into<String>) -> SpecError {
        SpecError::Parse { input: self.input.to_string(), reason: reason.into() }
    }

    fn skip_ws(&mut self) {
        while self.input[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.input[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SpecError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}` at offset {}", self.pos)))
        }
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.input[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn number(&mut self) -> Result<usize, SpecError> {
        self.skip_ws();
        let rest = &self.input[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error(format!("expected a number at offset {}", self.pos)));
        }
        self.pos += len;
        rest[..len].parse().map_err(|_| self.error("number out of range"))
    }

    fn numbers(&mut self) -> Result<Vec<usize>, SpecError> {
        self.expect('(')?;
        let mut out = Vec::new();
        if self.eat(')') {
            return Ok(out);
        }
        loop {
            out.push(self.number()?);
            if self.eat(')') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn specs(&mut self) -> Result<Vec<SubsetSpec>, SpecError> {
        self.expect('(')?;
        let mut out = Vec::new();
        if self.eat(')') {
            return Ok(out);
        }
        loop {
            out.push(self.spec()?);
            if self.eat(')') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn spec(&mut self) -> Result<SubsetSpec, SpecError> {
        let name = self.ident();
        let spec = match name {
            "all" => SubsetSpec::All,
            "list" => SubsetSpec::list(self.numbers()?),
            "trace" => SubsetSpec::trace(self.numbers()?),
            "arith" => match self.numbers()?.as_slice() {
                [a, b] => SubsetSpec::arithmetic(*a, *b)?,
                _ => return Err(self.error("arith takes (start,step)")),
            },
            "geom" => match self.numbers()?.as_slice() {
                [a, q] => SubsetSpec::geometric(*a, *q)?,
                [a, q, d] => SubsetSpec::geometric_with_drift(*a, *q, *d)?,
                _ => return Err(self.error("geom takes (start,ratio[,drift])")),
            },
            "union" => SubsetSpec::Union(self.specs()?),
            "inter" => SubsetSpec::Intersection(self.specs()?),
            "diff" => match <[SubsetSpec; 2]>::try_from(self.specs()?) {
                Ok([a, b]) => SubsetSpec::difference(a, b),
                Err(_) => return Err(self.error("diff takes two subsets")),
            },
            "" => return Err(self.error(format!("expected a subset at offset {}", self.pos))),
            other => return Err(self.error(format!("unknown subset kind `{other}`"))),
        };
        Ok(spec)
    }
}

impl FromStr for SubsetSpec {
    type Err = SpecError;

    /// Parses the compact syntax produced by `Display`, e.g.
    /// `union(arith(0,4),geom(1,2))` or `diff(all,list(1,2,3))`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = Parser { input: s, pos: 0 };
        let spec = parser.spec()?;
        parser.skip_ws();
        if parser.pos != s.len() {
            return Err(parser.error(format!("trailing input at offset {}", parser.pos)));
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn enumerate_examples() {
        assert_eq!(SubsetSpec::arithmetic(0, 2).unwrap().enumerate(7), vec![0, 2, 4, 6]);
        assert_eq!(SubsetSpec::geometric(1, 4).unwrap().enumerate(70), vec![1, 4, 16, 64]);
        let odds = SubsetSpec::difference(SubsetSpec::All, SubsetSpec::evens());
        assert_eq!(odds.enumerate(6), vec![1, 3, 5]);
    }

    #[test]
    fn malformed_parameters_rejected() {
        assert_eq!(SubsetSpec::arithmetic(3, 0), Err(SpecError::ZeroStep));
        assert_eq!(SubsetSpec::geometric(1, 1), Err(SpecError::RatioTooSmall(1)));
        assert_eq!(SubsetSpec::geometric(0, 3), Err(SpecError::ZeroStart));
        assert!(SubsetSpec::FiniteList(vec![3, 1]).validate().is_err());
        assert!("arith(1,0)".parse::<SubsetSpec>().is_err());
    }

    #[test]
    fn drifted_geometric() {
        let spec = SubsetSpec::geometric_with_drift(1, 4, 1).unwrap();
        assert_eq!(spec.enumerate(300), vec![1, 5, 18, 67, 260]);
        assert!(spec.contains(1029));
        assert!(!spec.contains(1024));
    }

    #[test]
    fn finiteness_of_periodic_combinations() {
        let evens = SubsetSpec::evens();
        let odds = SubsetSpec::odds();
        assert_eq!(SubsetSpec::intersection(vec![evens.clone(), odds.clone()]).finiteness(), Some(true));
        assert_eq!(
            SubsetSpec::intersection(vec![evens.clone(), SubsetSpec::arithmetic(0, 3).unwrap()]).finiteness(),
            Some(false)
        );
        let all_but_evens_odds =
            SubsetSpec::difference(SubsetSpec::All, SubsetSpec::union(vec![evens.clone(), odds]));
        assert_eq!(all_but_evens_odds.finiteness(), Some(true));
        assert_eq!(SubsetSpec::difference(evens, SubsetSpec::list([0, 2])).finiteness(), Some(false));
        assert_eq!(SubsetSpec::trace([1, 2, 3]).finiteness(), None);
    }

    #[test]
    fn finiteness_of_geometric_against_periodic() {
        let pow2 = SubsetSpec::geometric(1, 2).unwrap();
        // every power of two above 1 is even
        assert_eq!(SubsetSpec::intersection(vec![pow2.clone(), SubsetSpec::odds()]).finiteness(), Some(true));
        assert_eq!(SubsetSpec::difference(pow2.clone(), SubsetSpec::evens()).finiteness(), Some(true));
        // 2ⁿ mod 3 alternates 1, 2
        let threes = SubsetSpec::arithmetic(2, 3).unwrap();
        assert_eq!(SubsetSpec::intersection(vec![pow2.clone(), threes]).finiteness(), Some(false));
        let pow4 = SubsetSpec::geometric(1, 4).unwrap();
        assert_eq!(
            SubsetSpec::intersection(vec![pow4, SubsetSpec::arithmetic(2, 3).unwrap()]).finiteness(),
            Some(true)
        );
    }

    #[test]
    fn parse_examples() {
        let spec: SubsetSpec = "union(arith(0,4), arith(1,4))".parse().unwrap();
        assert_eq!(spec.enumerate(10), vec![0, 1, 4, 5, 8, 9]);
        let spec: SubsetSpec = "diff(all,list(1,2,3))".parse().unwrap();
        assert_eq!(spec.enumerate(6), vec![0, 4, 5]);
        assert!("geom(1,4) x".parse::<SubsetSpec>().is_err());
        assert!("cone(1)".parse::<SubsetSpec>().is_err());
    }

    fn leaf() -> impl Strategy<Value = SubsetSpec> {
        prop_oneof![
            Just(SubsetSpec::All),
            (0usize..20, 1usize..7).prop_map(|(start, step)| SubsetSpec::Arithmetic { start, step }),
            (1usize..5, 2usize..5, 0usize..3)
                .prop_map(|(start, ratio, drift)| SubsetSpec::Geometric { start, ratio, drift }),
            proptest::collection::vec(0usize..80, 0..6).prop_map(SubsetSpec::list),
        ]
    }

    fn spec_strategy() -> impl Strategy<Value = SubsetSpec> {
        leaf().prop_recursive(3, 16, 3, |inner| {
            prop_oneof![
                proptest::collection::vec(inner.clone(), 1..3).prop_map(SubsetSpec::Union),
                proptest::collection::vec(inner.clone(), 1..3).prop_map(SubsetSpec::Intersection),
                (inner.clone(), inner).prop_map(|(a, b)| SubsetSpec::difference(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn enumerate_agrees_with_contains(spec in spec_strategy(), window in 0usize..120) {
            let listed = spec.enumerate(window);
            let brute: Vec<Point> = (0..window).filter(|&x| spec.contains(x)).collect();
            prop_assert_eq!(listed, brute);
        }

        #[test]
        fn display_parses_back(spec in spec_strategy()) {
            let text = spec.to_string();
            let parsed: SubsetSpec = text.parse().unwrap();
            prop_assert_eq!(parsed.enumerate(200), spec.enumerate(200));
        }

        #[test]
        fn decided_finiteness_matches_far_membership(spec in spec_strategy()) {
            // every leaf is either finite below 80 or periodic/geometric;
            // an infinite set has members in every far range of the right shape
            if let Some(finite) = spec.finiteness() {
                let far: Vec<Point> = spec.enumerate(1 << 14).into_iter().filter(|&x| x >= 4096).collect();
                if finite {
                    prop_assert!(far.is_empty(), "finite spec {} has far members {:?}", spec, &far[..far.len().min(4)]);
                }
            }
        }
    }
}
