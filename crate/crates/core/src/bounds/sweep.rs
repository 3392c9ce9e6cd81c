use std::fmt::Write as _;
use std::str::FromStr;

use super::{check_ca, require, BoundParams};
use crate::error::{Error, Result};

/// Evenly spaced grid `start..=stop` with `points >= 2` values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    start: f64,
    stop: f64,
    points: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::domain(format!("grid needs at least 2 points, got {points}")));
        }
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(Error::domain(format!("grid needs finite start < stop, got {start}:{stop}")));
        }
        Ok(Grid { start, stop, points })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn stop(&self) -> f64 {
        self.stop
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.points - 1;
        (0..=n)
            .map(|i| {
                if i == n {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / n as f64
                }
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = Error;

    /// `start:stop:points`
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("grid '{s}' must look like start:stop:points")));
        }
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("grid '{s}': '{t}' is not a number")))
        };
        let points = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("grid '{s}': '{}' is not a point count", parts[2])))?;
        Grid::new(num(parts[0])?, num(parts[1])?, points)
    }
}

/// Named columns of numbers; the first `axis_count` columns are grid axes.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
    axis_count: usize,
}

impl SweepTable {
    /// Single-axis table; the first column must be strictly increasing.
    pub fn new(columns: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let table = Self::long_form(columns, rows, 1)?;
        if table.rows.windows(2).any(|w| !(w[0][0] < w[1][0])) {
            return Err(Error::domain(format!("axis '{}' is not strictly increasing", table.columns[0])));
        }
        Ok(table)
    }

    /// Multi-axis table in long form (one row per grid point).
    pub fn long_form(columns: Vec<String>, rows: Vec<Vec<f64>>, axis_count: usize) -> Result<Self> {
        if axis_count == 0 || axis_count > columns.len() {
            return Err(Error::shape(format!(
                "{axis_count} axis columns for {} columns",
                columns.len()
            )));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != columns.len()) {
            return Err(Error::shape(format!(
                "row of {} values for {} columns",
                r.len(),
                columns.len()
            )));
        }
        Ok(SweepTable {
            columns,
            rows,
            axis_count,
        })
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn axis_names(&self) -> &[String] {
        &self.columns[..self.axis_count]
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    /// Header row, then one line per row; numbers in decimal notation with
    /// 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_sig12(v)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// Decimal rendering with 12 significant digits.
pub fn format_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".to_string()
        } else if v > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = (11 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Coefficient and bound orderings behind the comparison figures.
#[derive(Clone, Debug, PartialEq)]
pub struct RemarkOrderings {
    /// per `alpha`: `(w + l^d)^x - l^(d x) >= (w + l)^x - l^x >= (1 + l)^x - l^x >= 2^x - 1`
    pub remark1: SweepTable,
    /// per `beta`: the four right-hand sides of the `beta` family, in decreasing order
    pub remark2: SweepTable,
}

impl RemarkOrderings {
    /// Smallest margin over both tables.
    pub fn min_margin(&self) -> f64 {
        [&self.remark1, &self.remark2]
            .iter()
            .flat_map(|t| {
                t.columns
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| c.starts_with("margin"))
                    .flat_map(move |(k, _)| t.rows.iter().map(move |r| r[k]))
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Evaluates both ordering chains.
///
/// The `alpha` chain uses `omega[0]`, `ell[0] >= 1`, `delta[0]` and `gamma`;
/// the `beta` chain uses `omega[0]`, `ell[0]` (read as `l` in `[0, 1]` through
/// `beta_ell`), `p` and `gamma`, on the pairwise values `(ca_ab, ca_ac)`.
pub fn remark_orderings(
    params: &BoundParams,
    beta_ell: f64,
    ca_ab: f64,
    ca_ac: f64,
    alpha_grid: &Grid,
    beta_grid: &Grid,
) -> Result<RemarkOrderings> {
    check_ca(&[ca_ab, ca_ac])?;
    let g = params.gamma;
    let (w, l, d) = (params.omega_at(0)?, params.ell_at(0)?, params.delta_at(0)?);
    require(g >= 2.0, || format!("need gamma >= 2, got {g}"))?;
    require(w >= 1.0 && l >= 1.0 && d >= 1.0, || {
        format!("need omega, l, delta >= 1, got {w}, {l}, {d}")
    })?;
    require((0.0..=1.0).contains(&beta_ell), || format!("need 0 <= l <= 1, got {beta_ell}"))?;
    require((0.5..=1.0).contains(&params.p), || format!("need 1/2 <= p <= 1, got {}", params.p))?;

    let mut rows1 = Vec::new();
    for a in alpha_grid.values() {
        require(a >= g, || format!("need alpha >= gamma, got {a}"))?;
        let x = a / g;
        let big_l = l.powf(d);
        let new = (w + big_l).powf(x) - big_l.powf(x);
        let xhlf = (w + l).powf(x) - l.powf(x);
        let base = (1.0 + l).powf(x) - l.powf(x);
        let floor = 2f64.powf(x) - 1.0;
        rows1.push(vec![a, new, xhlf, base, floor, new - xhlf, xhlf - base, base - floor]);
    }
    let remark1 = SweepTable::new(
        ["alpha", "new", "xhlf", "base", "floor", "margin_new_xhlf", "margin_xhlf_base", "margin_base_floor"]
            .map(String::from)
            .to_vec(),
        rows1,
    )?;

    let (lb, p) = (beta_ell, params.p);
    let mut rows2 = Vec::new();
    for b in beta_grid.values() {
        require((0.0..=g / 2.0).contains(&b), || format!("need 0 <= beta <= gamma/2, got {b}"))?;
        let r = b / g;
        let (ab, ac) = (ca_ab.powf(b), ca_ac.powf(b));
        let ours = p.powf(r) * ab + ((w + lb).powf(r) - (p * lb).powf(r)) * ac;
        let p_one = ab + ((w + lb).powf(r) - lb.powf(r)) * ac;
        let w_one = ab + ((1.0 + lb).powf(r) - lb.powf(r)) * ac;
        let l_one = ab + (2f64.powf(r) - 1.0) * ac;
        rows2.push(vec![b, ours, p_one, w_one, l_one, ours - p_one, p_one - w_one, w_one - l_one]);
    }
    let remark2 = SweepTable::new(
        ["beta", "ours", "p_one", "omega_one", "ell_one", "margin_p", "margin_omega", "margin_ell"]
            .map(String::from)
            .to_vec(),
        rows2,
    )?;
    Ok(RemarkOrderings { remark1, remark2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_values_and_parse() {
        let g: Grid = "2:5:61".parse().unwrap();
        let v = g.values();
        assert_eq!(v.len(), 61);
        assert_eq!(v[0], 2.0);
        assert_eq!(v[60], 5.0);
        assert!((v[20] - 3.0).abs() < 1e-15);
        assert!("2:5".parse::<Grid>().is_err());
        assert!("2:5:1".parse::<Grid>().is_err());
        assert!("5:2:4".parse::<Grid>().is_err());
        assert!("a:2:4".parse::<Grid>().is_err());
    }

    #[test]
    fn csv_formatting() {
        assert_eq!(format_sig12(0.0), "0");
        assert_eq!(format_sig12(1.0), "1.00000000000");
        assert_eq!(format_sig12(2.0f64.sqrt() / 2.0), "0.707106781187");
        assert_eq!(format_sig12(-123.456), "-123.456000000");
        assert_eq!(format_sig12(1.5e-5), "0.0000150000000000");
        let t = SweepTable::new(
            vec!["x".into(), "y".into()],
            vec![vec![1.0, 0.5], vec![2.0, 0.25]],
        )
        .unwrap();
        assert_eq!(t.to_csv(), "x,y\n1.00000000000,0.500000000000\n2.00000000000,0.250000000000\n");
    }

    #[test]
    fn table_invariants() {
        assert!(SweepTable::new(vec!["x".into()], vec![vec![1.0], vec![1.0]]).is_err());
        assert!(SweepTable::new(vec!["x".into()], vec![vec![1.0, 2.0]]).is_err());
        assert!(SweepTable::long_form(vec!["q".into(), "a".into()], vec![vec![1.0, 1.0], vec![1.0, 2.0]], 2).is_ok());
    }

    #[test]
    fn remark_chains_hold_and_tie() {
        let params = BoundParams::tripartite(1.0, 1.3, 1.3);
        let ag = Grid::new(2.0, 5.0, 31).unwrap();
        let bg = Grid::new(0.0, 1.0, 11).unwrap();
        let r = remark_orderings(&params, 0.75, 1.0 / 3.0, 2.0 / 3.0, &ag, &bg).unwrap();
        assert!(r.min_margin() >= -1e-12);

        // delta = 1 ties the first link of the alpha chain
        let params = BoundParams::tripartite(1.0, 1.3, 1.0);
        let r = remark_orderings(&params, 0.75, 1.0 / 3.0, 2.0 / 3.0, &ag, &bg).unwrap();
        assert!(r.remark1.column("margin_new_xhlf").unwrap().iter().all(|m| m.abs() < 1e-14));

        // p = 1, omega = 1, l = 1 collapses the beta chain
        let params = BoundParams::tripartite(1.0, 1.0, 1.0).with_p(1.0);
        let r = remark_orderings(&params, 1.0, 1.0 / 3.0, 2.0 / 3.0, &ag, &bg).unwrap();
        for name in ["margin_p", "margin_omega", "margin_ell"] {
            assert!(r.remark2.column(name).unwrap().iter().all(|m| m.abs() < 1e-14));
        }
    }
}
