//! Coarse spaces (balleans) presented as countable ascending chains of
//! symmetric entourages, with scale-bounded decision procedures for
//! closeness, linkness and the function classes built on top of them.
//!
//! The ground set is always identified with (a subset of) the natural
//! numbers. A presentation answers three questions: what is the ball of
//! radius `r` around a point, which chain index dominates the composition
//! of two others, and whether a given subset is bounded. Everything else in
//! this crate is written against the [`Ballean`] trait.
//!
//! Infinite quantifiers ("there is an entourage such that...") are
//! finitized by a [`ScaleWindow`]: chain indices up to `rmax`, points below
//! `window`, and a cutoff region standing in for "bounded". Answers come
//! back as a three-valued [`Verdict`] that records the budget it was
//! decided under.

pub mod config;
pub mod constructions;
pub mod functions;
pub mod presentation;
pub mod records;
pub mod relations;
pub mod subset;
pub mod suite;
pub mod verdict;

pub use constructions::{
    make_discrete_from_bornology, make_example5, make_filter_modified, make_finitary, make_metric,
    make_product, make_reindexed, make_subballean, BoundedChain, Generator, PhiChain,
};
pub use functions::RealFunctionSpec;
pub use presentation::{validate_bornology, validate_presentation, Ballean, Locality, SharedBallean};
pub use subset::{Point, SubsetSpec};
pub use verdict::{Answer, BornologyModel, Scale, ScaleWindow, Verdict, Witness};
