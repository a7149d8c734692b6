//! Browser bindings over the built-in presentations.
//!
//! Every export takes plain values and returns a JSON string, with an
//! `error` field when the request cannot be served.

use ballean::config::{Config, ConfigError};
use ballean::functions::{macro_uniform_check, slowly_oscillating_check};
use ballean::relations::RelationReport;
use ballean::{ScaleWindow, Verdict};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest window the page may request.
const MAX_WINDOW: usize = 512;

#[derive(Serialize)]
struct VerdictView {
    label: &'static str,
    witness_r: Option<usize>,
    points: Vec<usize>,
}

impl From<&Verdict> for VerdictView {
    fn from(v: &Verdict) -> Self {
        VerdictView { label: v.label(), witness_r: v.witness_scale(), points: v.witness_points().to_vec() }
    }
}

#[derive(Serialize)]
struct BallMap {
    label: String,
    window: usize,
    r: usize,
    balls: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct Relations {
    scale: String,
    close: VerdictView,
    linked: VerdictView,
    asym_disjoint: VerdictView,
}

#[derive(Serialize)]
struct Profile {
    function: String,
    values: Vec<f64>,
    diameters: Vec<f64>,
    mu: VerdictView,
    so: VerdictView,
    so_cutoff: Option<usize>,
}

fn budget(rmax: usize, window: usize) -> Result<ScaleWindow, String> {
    if window == 0 || window > MAX_WINDOW {
        return Err(format!("window must be between 1 and {MAX_WINDOW}"));
    }
    ScaleWindow::new(rmax, window).map_err(|e| e.to_string())
}

fn respond<T: Serialize>(result: Result<T, String>) -> String {
    match result {
        Ok(v) => serde_json::to_string(&v).expect("plain data serializes"),
        Err(e) => serde_json::json!({ "error": e }).to_string(),
    }
}

fn text(e: ConfigError) -> String {
    e.to_string()
}

/// `E_r[x] ∩ [0, window)` for every ground point of the window.
#[wasm_bindgen]
pub fn ball_map(presentation: &str, r: usize, window: usize) -> String {
    respond((|| {
        let sw = budget(r, window)?;
        let b = Config::default_document().ballean(presentation).map_err(text)?;
        let balls = (0..sw.window)
            .map(|x| {
                if b.in_ground(x) {
                    b.ball(x, r).into_iter().filter(|&y| y < sw.window).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        Ok(BallMap { label: b.label().to_string(), window: sw.window, r, balls })
    })())
}

/// Closeness, linkness and asymptotic disjointness of two subsets, named
/// or written inline such as `arith(0,3)`.
#[wasm_bindgen]
pub fn relation_report(presentation: &str, a: &str, b: &str, rmax: usize, window: usize) -> String {
    respond((|| {
        let sw = budget(rmax, window)?;
        let config = Config::default_document();
        let x = config.ballean(presentation).map_err(text)?;
        let (sa, sb) = (config.subset(a).map_err(text)?, config.subset(b).map_err(text)?);
        let report = RelationReport::compute(x.as_ref(), &sa, &sb, &sw);
        Ok(Relations {
            scale: sw.to_string(),
            close: (&report.close).into(),
            linked: (&report.linked).into(),
            asym_disjoint: (&report.asym_disjoint).into(),
        })
    })())
}

/// Values of `f` and `diam f(E_r[x])` along the window, with the
/// macro-uniform and slow-oscillation verdicts up to scale `r`.
#[wasm_bindgen]
pub fn oscillation_profile(presentation: &str, function: &str, r: usize, epsilon: f64, window: usize) -> String {
    respond((|| {
        if epsilon.is_nan() || epsilon <= 0.0 {
            return Err("epsilon must be positive".to_string());
        }
        let sw = budget(r, window)?;
        let config = Config::default_document();
        let b = config.ballean(presentation).map_err(text)?;
        let f = config.function(function, sw.window).map_err(text)?;
        let values = f.materialize(b.as_ref(), sw.window);
        let diameters = (0..sw.window)
            .map(|x| {
                let ball: Vec<usize> = b.ball(x, r).into_iter().filter(|&y| y < sw.window).collect();
                let (lo, hi) = ball.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &y| {
                    (lo.min(values[y]), hi.max(values[y]))
                });
                if ball.is_empty() || !b.in_ground(x) {
                    0.0
                } else {
                    hi - lo
                }
            })
            .collect();
        let mu = macro_uniform_check(b.as_ref(), &f, &sw);
        let so = slowly_oscillating_check(b.as_ref(), &f, epsilon, &sw);
        Ok(Profile {
            function: f.name(),
            values,
            diameters,
            mu: (&mu.verdict).into(),
            so: (&so.verdict).into(),
            so_cutoff: so.cutoffs.get(r).copied(),
        })
    })())
}

/// Names the page offers in its menus.
#[wasm_bindgen]
pub fn catalogue() -> String {
    let config = Config::default_document();
    serde_json::json!({
        "presentations": config.presentation_names().collect::<Vec<_>>(),
        "functions": ballean::config::BUILTIN_FUNCTIONS,
    })
    .to_string()
}
