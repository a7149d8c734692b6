//! Computation budgets and three-valued answers.

use std::fmt;
use std::ops::Range;

use thiserror::Error;

use crate::subset::Point;

/// An index into a presentation's entourage chain.
pub type Scale = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScaleError {
    #[error("cutoff must satisfy 0 < cutoff < window (cutoff {cutoff}, window {window})")]
    BadCutoff { cutoff: usize, window: usize },
}

/// How "bounded" is judged for sets the presentation cannot decide
/// structurally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BornologyModel {
    /// Use the presentation's bornology; fall back to the cutoff region
    /// and tail bands of the window for constructed sets.
    Presentation,
    /// Finite model: the window is the whole space, the chain stops at
    /// `rmax`, and a set is bounded exactly when it lies in the cutoff
    /// region. Every answer is definite.
    CutoffProxy,
}

/// The budget a question is decided under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScaleWindow {
    /// Largest chain index queried.
    pub rmax: Scale,
    /// Points `0..window` are enumerated.
    pub window: usize,
    /// Points `0..cutoff` form the region standing in for "bounded".
    pub cutoff: usize,
    pub model: BornologyModel,
}

impl ScaleWindow {
    /// Budget with the default cutoff of a quarter window.
    pub fn new(rmax: Scale, window: usize) -> Result<Self, ScaleError> {
        Self::with_cutoff(rmax, window, (window / 4).max(1))
    }

    pub fn with_cutoff(rmax: Scale, window: usize, cutoff: usize) -> Result<Self, ScaleError> {
        if cutoff == 0 || cutoff >= window {
            return Err(ScaleError::BadCutoff { cutoff, window });
        }
        Ok(ScaleWindow { rmax, window, cutoff, model: BornologyModel::Presentation })
    }

    /// The exhaustive finite model used for small-window oracle checks.
    pub fn finite_model(rmax: Scale, window: usize, cutoff: usize) -> Result<Self, ScaleError> {
        let mut sw = Self::with_cutoff(rmax, window, cutoff)?;
        sw.model = BornologyModel::CutoffProxy;
        Ok(sw)
    }

    pub fn with_rmax(self, rmax: Scale) -> Self {
        ScaleWindow { rmax, ..self }
    }

    pub fn is_finite_model(&self) -> bool {
        self.model == BornologyModel::CutoffProxy
    }

    pub fn in_cutoff(&self, x: Point) -> bool {
        x < self.cutoff
    }

    pub fn scales(&self) -> std::ops::RangeInclusive<Scale> {
        0..=self.rmax
    }

    /// Dyadic bands `[N/2^(k+1), N/2^k)` at or above the cutoff, at most
    /// three, outermost first. A constructed set meeting every band is
    /// treated as unbounded.
    pub fn tail_bands(&self) -> Vec<Range<Point>> {
        let n = self.window;
        let mut bands = Vec::new();
        let mut hi = n;
        for _ in 0..3 {
            let lo = hi / 2;
            if lo < self.cutoff || lo == hi {
                break;
            }
            bands.push(lo..hi);
            hi = lo;
        }
        if bands.is_empty() {
            bands.push(self.cutoff..n);
        }
        bands
    }
}

impl fmt::Display for ScaleWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rmax:{},window:{},cutoff:{}", self.rmax, self.window, self.cutoff)?;
        if self.is_finite_model() {
            write!(f, ",model:cutoff")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

impl Answer {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

/// Scale index and/or sample points backing a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witness {
    pub scale: Option<Scale>,
    pub points: Vec<Point>,
}

/// Maximum number of points stored in a witness.
pub const WITNESS_POINTS: usize = 8;

/// A three-valued answer together with the budget it was decided under.
///
/// `at_scale` marks answers to "for every entourage" questions that were
/// only checked through `decided_at.rmax`; a larger `rmax` may still
/// overturn them. Definite answers never change when `rmax` grows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub answer: Answer,
    pub at_scale: bool,
    pub decided_at: ScaleWindow,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn new(answer: Answer, sw: &ScaleWindow) -> Self {
        Verdict { answer, at_scale: false, decided_at: *sw, witness: None }
    }

    pub fn yes(sw: &ScaleWindow) -> Self {
        Self::new(Answer::Yes, sw)
    }

    pub fn no(sw: &ScaleWindow) -> Self {
        Self::new(Answer::No, sw)
    }

    pub fn unknown(sw: &ScaleWindow) -> Self {
        Self::new(Answer::Unknown, sw)
    }

    /// A universal claim checked for every scale up to `rmax`. In the
    /// finite model the chain ends at `rmax`, so the answer is definite.
    pub fn yes_at_scale(sw: &ScaleWindow) -> Self {
        Verdict { at_scale: !sw.is_finite_model(), ..Self::yes(sw) }
    }

    pub fn at(mut self, r: Scale) -> Self {
        self.witness.get_or_insert_with(Witness::default).scale = Some(r);
        self
    }

    pub fn with_points(mut self, points: impl IntoIterator<Item = Point>) -> Self {
        let w = self.witness.get_or_insert_with(Witness::default);
        w.points = points.into_iter().take(WITNESS_POINTS).collect();
        self
    }

    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }

    pub fn is_no(&self) -> bool {
        self.answer == Answer::No
    }

    pub fn is_unknown(&self) -> bool {
        self.answer == Answer::Unknown
    }

    /// Yes or No that holds for the whole chain.
    pub fn is_definite(&self) -> bool {
        self.answer != Answer::Unknown && !self.at_scale
    }

    pub fn witness_scale(&self) -> Option<Scale> {
        self.witness.as_ref().and_then(|w| w.scale)
    }

    pub fn witness_points(&self) -> &[Point] {
        self.witness.as_ref().map_or(&[], |w| &w.points)
    }

    pub fn label(&self) -> &'static str {
        match (self.answer, self.at_scale) {
            (Answer::Yes, false) => "yes",
            (Answer::Yes, true) => "yes-at-scale",
            (Answer::No, false) => "no",
            (Answer::No, true) => "no-at-scale",
            (Answer::Unknown, _) => "unknown",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())?;
        if let Some(r) = self.witness_scale() {
            write!(f, " (r={r})")?;
        }
        Ok(())
    }
}
