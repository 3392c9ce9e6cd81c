//! Comparison-curve and residual-surface tables for the worked examples.
//!
//! Every table defaults to the bundled example inputs; [`FigureOverrides`]
//! replaces the parameters, the CoA pair, the party weights or the main axis.

use std::fmt;
use std::str::FromStr;

use crate::bounds::{
    prior_bounds, thm1_bound, thm3_bound, tq_monogamy_residual, BoundFamily, BoundParams, Grid, PriorInputs,
    SweepTable,
};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::measures::{coa_pair_gw, q_high, q_intervals, q_low, tq_rank2_counterexample};
use crate::states::{party_weights, PartyWeights};

/// The two `p` values of the `beta`-family comparison.
pub const FIG2_P: [f64; 2] = [0.5, 0.75];
pub const FIG2_K: f64 = 4.0 / 3.0;
/// Points per axis of the residual surfaces.
pub const SURFACE_POINTS: usize = 40;
/// Points per validity interval of the counterexample curve.
pub const FIG5_POINTS_PER_INTERVAL: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// `alpha`-power CoA bounds against earlier forms
    Fig1,
    /// `beta`-power CoA bounds against earlier forms
    Fig2,
    /// Tsallis monogamy residual on the lower `q` interval
    Fig3,
    /// Tsallis monogamy residual on the upper `q` interval
    Fig4,
    /// polygamy residual bound of the rank-two counterexample
    Fig5,
}

impl Figure {
    pub const ALL: [Figure; 5] = [Figure::Fig1, Figure::Fig2, Figure::Fig3, Figure::Fig4, Figure::Fig5];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown figure '{s}', expected fig1..fig5")))
    }
}

/// Replacements for the built-in inputs. `grid` replaces the main axis:
/// `alpha` (fig1), `beta` (fig2), `q` (fig3, fig4, fig5).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FigureOverrides {
    pub params: Option<BoundParams>,
    pub grid: Option<Grid>,
    /// `(C_a(AB), C_a(AC))` for fig1 and fig2
    pub ca: Option<(f64, f64)>,
    /// party weights for fig3 and fig4; party 0 is `A`
    pub weights: Option<PartyWeights>,
}

fn example_ca(example: fn() -> (crate::GwSpec, crate::Partition)) -> Result<(f64, f64)> {
    let (spec, part) = example();
    let w = party_weights(&spec, &part)?;
    Ok((coa_pair_gw(&w, 0, 1)?.value, coa_pair_gw(&w, 0, 2)?.value))
}

/// `omega = 1`, `l = delta = 1.3`, `gamma = 2`.
pub fn fig1_params() -> BoundParams {
    BoundParams::tripartite(1.0, 1.3, 1.3).with_gamma(2.0)
}

/// `gamma = 3`, `omega = 9/8`, `l = 3/4`, `k = 4/3`.
pub fn fig2_params() -> BoundParams {
    BoundParams::tripartite(9.0 / 8.0, 0.75, 1.0).with_gamma(3.0).with_k(FIG2_K)
}

fn columns(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Columns `alpha, lhs, ours, xhlf_a, jzx_b, jzx_a, zxn`.
pub fn fig1_table(ca_ab: f64, ca_ac: f64, params: &BoundParams, alpha: &Grid) -> Result<SweepTable> {
    let inputs = PriorInputs::Tripartite { ca_ab, ca_ac };
    let priors = [BoundFamily::XhlfA, BoundFamily::JzxB, BoundFamily::JzxA, BoundFamily::Zxn];
    let mut rows = Vec::new();
    for a in alpha.values() {
        let p = params.clone().with_alpha(a);
        let ours = thm1_bound(ca_ab, ca_ac, &p)?;
        let mut row = vec![a, ours.lhs, ours.rhs];
        for family in priors {
            row.push(prior_bounds(family, &inputs, &p)?.rhs);
        }
        rows.push(row);
    }
    SweepTable::new(columns(&["alpha", "lhs", "ours", "xhlf_a", "jzx_b", "jzx_a", "zxn"]), rows)
}

/// Columns `beta, lhs, ours_p=0.5, ours_p=0.75, xhlf_b, lyy, sx`.
pub fn fig2_table(ca_ab: f64, ca_ac: f64, params: &BoundParams, beta: &Grid) -> Result<SweepTable> {
    let inputs = PriorInputs::Tripartite { ca_ab, ca_ac };
    let priors = [BoundFamily::XhlfB, BoundFamily::Lyy, BoundFamily::Sx];
    let mut rows = Vec::new();
    for b in beta.values() {
        let p = params.clone().with_beta(b);
        let mut row = vec![b, f64::NAN];
        for pv in FIG2_P {
            let report = thm3_bound(ca_ab, ca_ac, &p.clone().with_p(pv))?;
            row[1] = report.lhs;
            row.push(report.rhs);
        }
        for family in priors {
            row.push(prior_bounds(family, &inputs, &p)?.rhs);
        }
        rows.push(row);
    }
    let mut names = vec!["beta".to_string(), "lhs".to_string()];
    names.extend(FIG2_P.iter().map(|p| format!("ours_p={p}")));
    names.extend(columns(&["xhlf_b", "lyy", "sx"]));
    SweepTable::new(names, rows)
}

/// Long-form `q, alpha, residual` rows of the Tsallis monogamy residual of
/// party 0, `q` varying slowest.
pub fn tq_surface(w: &PartyWeights, q: &Grid, alpha: &Grid) -> Result<SweepTable> {
    let mut rows = Vec::new();
    for qv in q.values() {
        for a in alpha.values() {
            rows.push(vec![qv, a, tq_monogamy_residual(w, 0, qv, a)?]);
        }
    }
    SweepTable::long_form(columns(&["q", "alpha", "residual"]), rows, 2)
}

/// `q, residual_bound` of the counterexample over the given grids, which
/// must be in increasing order and disjoint.
pub fn fig5_table(grids: &[Grid]) -> Result<SweepTable> {
    let mut rows = Vec::new();
    for g in grids {
        for q in g.values() {
            rows.push(vec![q, tq_rank2_counterexample(q)?.residual_bound]);
        }
    }
    SweepTable::new(columns(&["q", "residual_bound"]), rows)
}

/// `alpha` from 2 to 5 in 61 points.
pub fn fig1_grid() -> Grid {
    Grid::new(2.0, 5.0, 61).expect("static grid")
}

/// `beta` from 0 to 3/2 in 61 points.
pub fn fig2_grid() -> Grid {
    Grid::new(0.0, 1.5, 61).expect("static grid")
}

pub fn surface_alpha_grid() -> Grid {
    Grid::new(2.0, 5.0, SURFACE_POINTS).expect("static grid")
}

pub fn fig3_q_grid() -> Grid {
    Grid::new(q_low(), 2.0, SURFACE_POINTS).expect("static grid")
}

pub fn fig4_q_grid() -> Grid {
    Grid::new(3.0, q_high(), SURFACE_POINTS).expect("static grid")
}

/// Both validity intervals, [`FIG5_POINTS_PER_INTERVAL`] points each.
pub fn fig5_grids() -> Vec<Grid> {
    q_intervals()
        .iter()
        .map(|&(lo, hi)| Grid::new(lo, hi, FIG5_POINTS_PER_INTERVAL).expect("static grid"))
        .collect()
}

/// The table behind `which`, with built-in inputs unless overridden.
pub fn figure_table(which: Figure, over: &FigureOverrides) -> Result<SweepTable> {
    match which {
        Figure::Fig1 => {
            let (ab, ac) = over.ca.map_or_else(|| example_ca(fixtures::example1), Ok)?;
            let params = over.params.clone().unwrap_or_else(fig1_params);
            fig1_table(ab, ac, &params, &over.grid.unwrap_or_else(fig1_grid))
        }
        Figure::Fig2 => {
            let (ab, ac) = over.ca.map_or_else(|| example_ca(fixtures::example2), Ok)?;
            let params = over.params.clone().unwrap_or_else(fig2_params);
            fig2_table(ab, ac, &params, &over.grid.unwrap_or_else(fig2_grid))
        }
        Figure::Fig3 | Figure::Fig4 => {
            let w = match &over.weights {
                Some(w) => w.clone(),
                None => {
                    let (spec, part) = fixtures::example2();
                    party_weights(&spec, &part)?
                }
            };
            let default = if which == Figure::Fig3 { fig3_q_grid() } else { fig4_q_grid() };
            tq_surface(&w, &over.grid.unwrap_or(default), &surface_alpha_grid())
        }
        Figure::Fig5 => match over.grid {
            Some(g) => fig5_table(&[g]),
            None => fig5_table(&fig5_grids()),
        },
    }
}
