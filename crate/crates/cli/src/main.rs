//! `gwmono`: measures, comparison tables, certification and fuzz sweeps for
//! GW states from the command line.
//!
//! Exit status is 0 on success, 1 when a certification or fuzz sweep fails
//! and 2 on usage, parse or validation errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use gw_monogamy::bounds::{admissible_params, format_sig12, thm1_bound, thm3_bound, CoaTriple, Grid};
use gw_monogamy::figures::{figure_table, Figure, FigureOverrides};
use gw_monogamy::fixtures;
use gw_monogamy::fuzz::{fuzz, replay, FuzzTarget};
use gw_monogamy::measures::{
    coa_one_vs_rest_gw, coa_pair_gw, coa_two_qubit, concurrence_pure, tqeeoa_gw, tqeeoa_pair_gw, tsallis_pure,
};
use gw_monogamy::oracle::{random_gw_spec, random_partition, run_certification, CertifyConfig, SamplingConfig};
use gw_monogamy::states::{build_gw_vector, party_weights, reduce_density};
use gw_monogamy::{Bipartition, BoundParams, Error, GwSpec, PartyWeights, Partition, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "gwmono", version, about = "CoA and Tsallis-q bounds for generalized W-class states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print C_a and T_q^a for every pair and every party against the rest.
    Measure {
        #[command(flatten)]
        input: Input,
        /// Tsallis parameters, comma separated; each must lie in the validity union
        #[arg(long, value_delimiter = ',')]
        q: Vec<f64>,
        #[command(flatten)]
        out: Out,
    },
    /// Emit the CSV table behind one of the comparison figures.
    Figure {
        /// fig1 .. fig5
        #[arg(value_parser = parse_figure)]
        which: Figure,
        /// override the built-in inputs with a state and partition
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        params: ParamFlags,
        /// main axis as start:stop:points
        #[arg(long, value_parser = parse_grid)]
        grid: Option<Grid>,
        #[command(flatten)]
        out: Out,
    },
    /// Check the closed forms against the numerical oracles.
    Certify {
        #[command(flatten)]
        input: Input,
        /// certify this many random specs instead of a state file
        #[arg(long)]
        random: Option<usize>,
        /// local dimension of random specs
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// site count of random specs; drawn from 2..=6 when absent
        #[arg(long)]
        n: Option<usize>,
        /// random specs get random partitions with traced sites
        #[arg(long)]
        traced: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// tolerance of the exact checks
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// tolerance of the sampled brackets
        #[arg(long, default_value_t = 5e-3)]
        sampling_tol: f64,
        /// trials per sampled bracket
        #[arg(long, default_value_t = 2000)]
        trials: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Random sweeps of the lemmas, theorems and Tsallis inequalities.
    Fuzz {
        /// lemma1, lemma2, thm1 .. thm4, tq2, tq3 or all
        #[arg(default_value = "all")]
        target: String,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// re-evaluate one instance of a single target
        #[arg(long)]
        replay: Option<usize>,
        #[command(flatten)]
        out: Out,
    },
    /// Admissible parameter intervals of the tripartite bounds, with an
    /// optional grid search over l.
    Params {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        params: ParamFlags,
        /// l values to scan, as start:stop:points
        #[arg(long, value_parser = parse_grid)]
        grid: Option<Grid>,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args)]
struct Input {
    /// state TOML file
    #[arg(long)]
    state: Option<PathBuf>,
    /// partition TOML file
    #[arg(long)]
    partition: Option<PathBuf>,
    /// bundled worked example (1 or 2) instead of files
    #[arg(long, conflicts_with_all = ["state", "partition"])]
    example: Option<u8>,
}

#[derive(Args)]
struct ParamFlags {
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    /// one value, or one per chain index, comma separated
    #[arg(long, value_delimiter = ',')]
    omega: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    ell: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    delta: Vec<f64>,
    #[arg(long)]
    z: Option<usize>,
    /// LYY exponent parameter
    #[arg(long)]
    k: Option<f64>,
}

#[derive(Args)]
struct Out {
    /// write here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_figure(s: &str) -> Result<Figure, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl Input {
    fn given(&self) -> bool {
        self.state.is_some() || self.partition.is_some() || self.example.is_some()
    }

    fn load(&self) -> anyhow::Result<(GwSpec, Partition)> {
        match (self.example, &self.state, &self.partition) {
            (Some(1), ..) => Ok(fixtures::example1()),
            (Some(2), ..) => Ok(fixtures::example2()),
            (Some(k), ..) => bail!("no bundled example {k}; use 1 or 2"),
            (None, Some(s), Some(p)) => {
                let spec = GwSpec::parse_toml(&read(s)?).with_context(|| format!("in {}", s.display()))?;
                let part = Partition::parse_toml(&read(p)?, spec.n()).with_context(|| format!("in {}", p.display()))?;
                Ok((spec, part))
            }
            _ => bail!("need --state and --partition, or --example"),
        }
    }
}

impl ParamFlags {
    /// Applies the given flags on top of `base`.
    fn apply(&self, mut base: BoundParams) -> BoundParams {
        if let Some(v) = self.alpha {
            base.alpha = v;
        }
        if let Some(v) = self.beta {
            base.beta = v;
        }
        if let Some(v) = self.gamma {
            base.gamma = v;
        }
        if let Some(v) = self.p {
            base.p = v;
        }
        if let Some(v) = self.z {
            base.z = v;
        }
        if let Some(v) = self.k {
            base.k = v;
        }
        for (flag, field) in [
            (&self.omega, &mut base.omega),
            (&self.ell, &mut base.ell),
            (&self.delta, &mut base.delta),
        ] {
            if !flag.is_empty() {
                field.clone_from(flag);
            }
        }
        base
    }

    fn any(&self) -> bool {
        [self.alpha, self.beta, self.gamma, self.p, self.k].iter().any(Option::is_some)
            || self.z.is_some()
            || !(self.omega.is_empty() && self.ell.is_empty() && self.delta.is_empty())
    }
}

impl Out {
    fn emit(&self, text: &str) -> anyhow::Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// `A, B, ...` for up to 26 parties, `P0, P1, ...` beyond.
fn labels(count: usize) -> Vec<String> {
    (0..count)
        .map(|t| {
            if count <= 26 {
                char::from(b'A' + t as u8).to_string()
            } else {
                format!("P{t}")
            }
        })
        .collect()
}

fn cell(v: Option<f64>) -> String {
    v.map(format_sig12).unwrap_or_default()
}

/// The full vector, or `None` when it is too large to build.
fn vector_if_small(spec: &GwSpec) -> anyhow::Result<Option<StateVector>> {
    match build_gw_vector(spec) {
        Ok(v) => Ok(Some(v)),
        Err(Error::Size { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn cmd_measure(input: &Input, qs: &[f64]) -> anyhow::Result<String> {
    let (spec, part) = input.load()?;
    let w = party_weights(&spec, &part)?;
    let vec = vector_if_small(&spec)?;
    let names = labels(part.len());
    let pure = part.traced().is_empty();
    let qubit_pair = |t: usize, l: usize| -> Option<[usize; 2]> {
        let (a, b) = (&part.parties()[t], &part.parties()[l]);
        (spec.d() == 2 && a.len() == 1 && b.len() == 1).then(|| [a[0], b[0]])
    };
    let rest_cut = |t: usize| Bipartition::against_rest(part.parties()[t].clone(), spec.n());

    let mut out = String::from("quantity,q,closed,numerical\n");
    let mut row = |name: String, q: Option<f64>, closed: f64, numerical: Option<f64>| {
        let q = q.map(|q| q.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{name},{q},{},{}", format_sig12(closed), cell(numerical));
    };
    for t in 0..part.len() {
        for l in t + 1..part.len() {
            let num = match (&vec, qubit_pair(t, l)) {
                (Some(v), Some(sites)) => Some(coa_two_qubit(&reduce_density(v, &sites)?)?.value),
                _ => None,
            };
            row(format!("C_a({}{})", names[t], names[l]), None, coa_pair_gw(&w, t, l)?.value, num);
        }
    }
    for t in 0..part.len() {
        let rest: String = (0..part.len()).filter(|&l| l != t).map(|l| names[l].as_str()).collect();
        let num = match &vec {
            Some(v) if pure => Some(concurrence_pure(v, &rest_cut(t)?)?.value),
            _ => None,
        };
        row(format!("C_a({}|{rest})", names[t]), None, coa_one_vs_rest_gw(&w, t)?.value, num);
    }
    for &q in qs {
        for t in 0..part.len() {
            for l in t + 1..part.len() {
                let name = format!("T_q^a({}{})", names[t], names[l]);
                row(name, Some(q), tqeeoa_pair_gw(&w, t, l, q)?.value, None);
            }
        }
        for t in 0..part.len() {
            let rest: String = (0..part.len()).filter(|&l| l != t).map(|l| names[l].as_str()).collect();
            let num = match &vec {
                Some(v) if pure => Some(tsallis_pure(v, &rest_cut(t)?, q)?.value),
                _ => None,
            };
            row(format!("T_q^a({}|{rest})", names[t]), Some(q), tqeeoa_gw(&w, t, q)?.value, num);
        }
    }
    Ok(out)
}

/// `C_a(AB)`, `C_a(AC)` and `C_a(A|BC)` with `A` the first party, `B` the
/// second and `C` all remaining parties merged.
fn tripartite(w: &PartyWeights) -> anyhow::Result<CoaTriple> {
    if w.len() < 3 {
        bail!("tripartite bounds need at least 3 parties, got {}", w.len());
    }
    let rest: f64 = w.as_slice()[2..].iter().sum();
    let merged = PartyWeights::new(vec![w.get(0), w.get(1), rest])?;
    Ok(CoaTriple {
        ab: coa_pair_gw(&merged, 0, 1)?.value,
        ac: coa_pair_gw(&merged, 0, 2)?.value,
        a_bc: coa_one_vs_rest_gw(&merged, 0)?.value,
    })
}

fn cmd_figure(which: Figure, input: &Input, params: &ParamFlags, grid: Option<Grid>) -> anyhow::Result<String> {
    let mut over = FigureOverrides {
        grid,
        ..Default::default()
    };
    if params.any() {
        let base = match which {
            Figure::Fig1 => gw_monogamy::figures::fig1_params(),
            Figure::Fig2 => gw_monogamy::figures::fig2_params(),
            _ => bail!("{which} takes no bound parameters"),
        };
        over.params = Some(params.apply(base));
    }
    if input.given() {
        let (spec, part) = input.load()?;
        let w = party_weights(&spec, &part)?;
        match which {
            Figure::Fig1 | Figure::Fig2 => {
                let t = tripartite(&w)?;
                over.ca = Some((t.ab, t.ac));
            }
            Figure::Fig3 | Figure::Fig4 => over.weights = Some(w),
            Figure::Fig5 => bail!("fig5 is fixed to the 3x2x2 counterexample and takes no state"),
        }
    }
    Ok(figure_table(which, &over)?.to_csv())
}

/// Certification report text and whether everything passed.
fn cmd_certify(cmd: &Command) -> anyhow::Result<(String, bool)> {
    let Command::Certify {
        input,
        random,
        d,
        n,
        traced,
        seed,
        tol,
        sampling_tol,
        trials,
        ..
    } = cmd
    else {
        unreachable!("dispatched on Certify")
    };
    let mut cfg = CertifyConfig::default()
        .with_tol(*tol)
        .with_sampling(SamplingConfig::default().with_trials(*trials).with_seed(*seed));
    cfg.sampling_tol = *sampling_tol;

    let Some(count) = *random else {
        let (spec, part) = input.load()?;
        let report = run_certification(&spec, &part, &cfg)?;
        let mut text = report.to_text();
        let _ = writeln!(text, "{}", if report.passed() { "pass" } else { "FAIL" });
        return Ok((text, report.passed()));
    };
    if input.given() {
        bail!("--random does not combine with state or partition input");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
    let mut text = String::from("spec,n,parties,checks,failed\n");
    let mut failed_specs = 0;
    for k in 0..count {
        let sites = match n {
            Some(n) => *n,
            None => rng.random_range(2..=6),
        };
        let spec = random_gw_spec(&mut rng, *d, sites)?;
        let part = if *traced {
            random_partition(&mut rng, sites, true)?
        } else {
            Partition::singletons(sites)
        };
        let report = run_certification(&spec, &part, &cfg)?;
        let failed: Vec<&str> = report.failures().map(|l| l.name.as_str()).collect();
        if !failed.is_empty() {
            failed_specs += 1;
        }
        let _ = writeln!(text, "{k},{sites},{},{},{}", part.len(), report.lines.len(), failed.len());
        for name in failed {
            let _ = writeln!(text, "# spec {k} failed: {name}");
        }
    }
    let _ = writeln!(text, "{} of {count} specs certified", count - failed_specs);
    Ok((text, failed_specs == 0))
}

fn cmd_fuzz(target: &str, count: usize, seed: u64, replay_at: Option<usize>) -> anyhow::Result<(String, bool)> {
    let targets = if target.eq_ignore_ascii_case("all") {
        FuzzTarget::ALL.to_vec()
    } else {
        vec![target.parse::<FuzzTarget>()?]
    };
    if let Some(index) = replay_at {
        let [t] = targets[..] else {
            bail!("--replay needs a single target");
        };
        let text = match replay(t, seed, index)? {
            Some(m) => format!("{t} seed {seed} index {index}: margin {m:.6e}\n"),
            None => format!("{t} seed {seed} index {index}: rejected by the hypotheses\n"),
        };
        return Ok((text, true));
    }
    let mut text = String::new();
    let mut pass = true;
    for t in targets {
        let s = fuzz(t, count, seed)?;
        pass &= s.passed();
        let _ = writeln!(text, "{}", s.line());
        for (label, n) in &s.rejections {
            let _ = writeln!(text, "  rejected {n}: {label}");
        }
    }
    Ok((text, pass))
}

fn cmd_params(input: &Input, flags: &ParamFlags, grid: Option<Grid>) -> anyhow::Result<String> {
    let (spec, part) = input.load()?;
    let triple = tripartite(&party_weights(&spec, &part)?)?;
    let gamma = flags.gamma.unwrap_or(2.0);
    let delta = flags.delta.first().copied().unwrap_or(1.0);
    let iv = admissible_params(triple, gamma, delta)?;

    let mut text = String::new();
    let _ = writeln!(text, "C_a(AB) = {}", format_sig12(triple.ab));
    let _ = writeln!(text, "C_a(AC) = {}", format_sig12(triple.ac));
    let _ = writeln!(text, "C_a(A|BC) = {}", format_sig12(triple.a_bc));
    let _ = writeln!(text, "gamma = {gamma}, delta = {delta}");
    let _ = writeln!(text, "alpha-family l in {}", iv.alpha_ell);
    let _ = writeln!(text, "beta-family l in {}", iv.beta_ell);
    let _ = writeln!(text, "omega in {}", iv.omega);

    if let Some(grid) = grid {
        let base = flags.apply(
            BoundParams::tripartite(1.0, 1.0, delta)
                .with_gamma(gamma)
                .with_alpha(gamma)
                .with_beta(gamma / 2.0),
        );
        let _ = writeln!(text, "\nell,thm1_rhs,thm3_rhs");
        let mut best: [Option<(f64, f64)>; 2] = [None, None];
        for ell in grid.values() {
            let mut p = base.clone();
            p.ell = vec![ell];
            // outside the admissible set the hypotheses fail; those cells stay empty
            let rhs = [thm1_bound(triple.ab, triple.ac, &p).ok(), thm3_bound(triple.ab, triple.ac, &p).ok()]
                .map(|r| r.map(|r| r.rhs));
            for (b, r) in best.iter_mut().zip(rhs) {
                if let Some(r) = r {
                    if b.is_none_or(|(_, v)| r > v) {
                        *b = Some((ell, r));
                    }
                }
            }
            let _ = writeln!(text, "{},{},{}", format_sig12(ell), cell(rhs[0]), cell(rhs[1]));
        }
        for (name, b) in ["thm1", "thm3"].iter().zip(best) {
            match b {
                Some((ell, v)) => {
                    let _ = writeln!(text, "# best {name}: l = {} gives {}", format_sig12(ell), format_sig12(v));
                }
                None => {
                    let _ = writeln!(text, "# best {name}: no admissible l on the grid");
                }
            }
        }
    }
    Ok(text)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Measure { input, q, out } => out.emit(&cmd_measure(input, q)?).map(|_| true),
        Command::Figure {
            which,
            input,
            params,
            grid,
            out,
        } => out.emit(&cmd_figure(*which, input, params, *grid)?).map(|_| true),
        cmd @ Command::Certify { out, .. } => {
            let (text, pass) = cmd_certify(cmd)?;
            out.emit(&text)?;
            Ok(pass)
        }
        Command::Fuzz {
            target,
            count,
            seed,
            replay,
            out,
        } => {
            let (text, pass) = cmd_fuzz(target, *count, *seed, *replay)?;
            out.emit(&text)?;
            Ok(pass)
        }
        Command::Params {
            input,
            params,
            grid,
            out,
        } => out.emit(&cmd_params(input, params, *grid)?).map(|_| true),
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
