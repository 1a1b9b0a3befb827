mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use chromakit::cesaro::{conjecture_scan, default_omega_grid};
use chromakit::expand::{approx_report, linspace, BandlimitedSignal};
use chromakit::filterbank::{design_fir, freq_response, noise_experiment, target_response, FirDesign, FirSpec};
use chromakit::mkernel::km_all;
use chromakit::{exec, selftest, Execution, FamilySpec, OperatorTable, TableKind};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use output::{Cell, Table};

const UNITS: &str = "\
Units: time t is measured in Nyquist-rate sample units, so band-limited \
signals are determined by their samples f(n) at the integers and occupy \
|ω| ≤ π (ω in radians per unit time). Polynomial families are the scaled \
orthonormal ones: legendre and chebyshev live on (−π, π), hermite and herron \
on the whole line, power-p has γ_n = (n+1)^p.";

#[derive(Parser, Debug)]
#[command(name = "chromakit", version, about = "Chromatic derivatives, kernels, expansions and filters", long_about = UNITS)]
struct Cli {
    /// Output format. JSON carries the same rows plus run metadata.
    #[arg(long, value_enum, global = true, default_value_t = Format::Csv)]
    format: Format,
    /// Write the main output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Seed for generated test signals and noise.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Run every loop on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operator tables A[n][k] = K^n[t^k/k!](0) and B[n][k] = (−1)^k (D^n∘K^k)[m](0).
    ///
    /// Columns: table (A or B), n, k, value; only k ≤ n is listed since both
    /// are lower triangular. Orders above CHROMAKIT_MAX_ORDER (default 48) are
    /// refused.
    Tables {
        #[command(flatten)]
        family: FamilyArgs,
        /// Largest operator order N.
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Kernel functions K^n[m](t) on a grid.
    ///
    /// Columns: t, k0 .. kN with kn = K^n[m](t). m is sinc for legendre,
    /// J_0(πt) for chebyshev, exp(−t²/4) for hermite, sech t for herron; other
    /// families use the Taylor series of m, which may not converge far out.
    Kernel {
        #[command(flatten)]
        family: FamilyArgs,
        /// Largest order N.
        #[arg(long, default_value_t = 8)]
        order: usize,
        /// Time grid tmin:tmax:steps (steps points, endpoints included).
        #[arg(long, default_value = "-10:10:401", allow_hyphen_values = true)]
        grid: Grid,
    },
    /// Order-N chromatic and Taylor approximations of a random band-limited signal.
    ///
    /// The signal has samples f(n) uniform in (−1, 1) for |n| ≤ window (seeded)
    /// and is sinc-interpolated. Both jets are taken at --base. Columns: t, f,
    /// chromatic, taylor, e_n (the envelope E_N(t − base)), error (|f − chromatic|),
    /// bound (tail · e_n, which the error never exceeds).
    Expand {
        /// Only legendre: the signals are sinc-interpolated.
        #[arg(long, default_value = "legendre", value_parser = ["legendre"])]
        family: String,
        #[arg(long, default_value_t = 16)]
        order: usize,
        /// Expansion point u.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        base: f64,
        /// Time grid tmin:tmax:steps.
        #[arg(long, default_value = "-4:4:801", allow_hyphen_values = true)]
        grid: Grid,
        /// Half-width W of the sample window [−W, W].
        #[arg(long, default_value_t = 32)]
        window: usize,
    },
    /// Transversal filter Σ c_k f(t + k/2) estimating K^n[f](t) (legendre family).
    ///
    /// Samples are taken at spacing 1/2, so the Nyquist frequency is 2π. The
    /// target response is i^n P_n(ω) for |ω| ≤ passband·π, zero for
    /// (2 − passband)·π ≤ |ω| ≤ 2π, free in between. Plots using the digital
    /// frequency θ = ω/2 ∈ [0, π] see the target P_n(2θ) on θ ≤ passband·π/2;
    /// the response file carries both ω and θ. The main output is a one-row
    /// report; with --noise-trials it also has the Monte-Carlo noise columns
    /// (white noise uniform in ±amplitude on every sample, estimates of
    /// K^n[sin ωt](0), noise gains relative to the amplitude, stencil = the
    /// finite-difference stencil of the same footprint scaled by π^−n).
    Filter {
        /// Chromatic derivative index n.
        #[arg(long, default_value_t = 15)]
        order: usize,
        /// Number of taps 2T + 1 (odd).
        #[arg(long, default_value_t = 129)]
        taps: usize,
        /// Passband edge as a fraction of the band π.
        #[arg(long, default_value_t = 0.9)]
        passband: f64,
        /// Weight of passband errors relative to stopband errors.
        #[arg(long, default_value_t = 1.0)]
        passband_weight: f64,
        /// Design grid points per tap over [0, 2π].
        #[arg(long, default_value_t = 16)]
        grid_density: usize,
        /// Write the taps (k, offset = k/2, c_k) as CSV.
        #[arg(long)]
        emit_taps: Option<PathBuf>,
        /// Write the response (omega, theta, band, target, achieved, error) as CSV.
        #[arg(long)]
        emit_response: Option<PathBuf>,
        /// Points of the response file over ω ∈ [0, 2π].
        #[arg(long, default_value_t = 1025)]
        response_points: usize,
        /// Monte-Carlo noise trials (0 skips the experiment).
        #[arg(long, default_value_t = 0)]
        noise_trials: usize,
        #[arg(long, default_value_t = 1e-3)]
        noise_amplitude: f64,
        /// Frequency of the test sinusoid, in radians per unit time.
        #[arg(long, default_value_t = 0.4 * std::f64::consts::PI)]
        noise_omega: f64,
    },
    /// Cesàro means (n+1)^{p−1} Σ_{k≤n} P_k(ω)² with a heuristic boundedness verdict.
    ///
    /// The verdict compares the mean at N with the mean at N/10:
    /// bounded-positive when the ratio is in [1/2, 2]. It describes the
    /// computed range only. Columns: omega, n, cesaro_mean, verdict, with n at
    /// 1, 2, 5, 10, 20, 50, ... and N.
    Conjecture {
        /// Family; power-p uses γ_n = (n+1)^p.
        #[arg(long, default_value = "power-p")]
        family: String,
        /// Exponent for power-p, 0 ≤ p < 1.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        /// Frequencies: a:b:steps or a comma list. Defaults to interior points of the support.
        #[arg(long, allow_hyphen_values = true)]
        omega_grid: Option<OmegaGrid>,
        /// Largest n.
        #[arg(long, default_value_t = 10_000)]
        nmax: usize,
    },
    /// Runs the acceptance checks. Exits 1 if any fails.
    ///
    /// Columns: id, name, pass, detail, elapsed_secs, budget_secs. A line per
    /// check also goes to stderr.
    Selftest {
        /// Run only this check (1 to 11).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=11))]
        only: Option<u8>,
    },
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// legendre, chebyshev, hermite, herron or power-p.
    #[arg(long, default_value = "legendre")]
    family: String,
    /// Exponent for power-p.
    #[arg(long)]
    p: Option<f64>,
}

/// `tmin:tmax:steps`.
#[derive(Clone, Debug, PartialEq)]
struct Grid {
    lo: f64,
    hi: f64,
    steps: usize,
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || format!("expected tmin:tmax:steps, got {s:?}");
        if parts.len() != 3 {
            return Err(bad());
        }
        let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let steps: usize = parts[2].trim().parse().map_err(|_| bad())?;
        if !(lo.is_finite() && hi.is_finite()) || hi < lo || steps == 0 {
            return Err(format!("need finite tmin ≤ tmax and steps ≥ 1, got {s:?}"));
        }
        Ok(Grid { lo, hi, steps })
    }
}

impl Grid {
    fn points(&self) -> Vec<f64> {
        linspace(self.lo, self.hi, self.steps)
    }
}

#[derive(Clone, Debug, PartialEq)]
struct OmegaGrid(Vec<f64>);

impl FromStr for OmegaGrid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.contains(':') {
            return Ok(OmegaGrid(s.parse::<Grid>()?.points()));
        }
        s.split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|_| format!("bad frequency {x:?}")))
            .collect::<Result<Vec<_>, _>>()
            .map(OmegaGrid)
    }
}

enum CliError {
    Usage(String),
    Numeric(chromakit::Error),
    Io(io::Error),
    Failed(String),
}

impl From<chromakit::Error> for CliError {
    fn from(e: chromakit::Error) -> Self {
        CliError::Numeric(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn record(&self) -> (u8, serde_json::Value) {
        let (code, kind, message) = match self {
            CliError::Usage(m) => (2, "usage", m.clone()),
            CliError::Numeric(e) => (1, e.kind(), e.to_string()),
            CliError::Io(e) => (1, "io", e.to_string()),
            CliError::Failed(m) => (1, "selftest_failed", m.clone()),
        };
        (code, json!({ "error": { "kind": kind, "message": message } }))
    }
}

fn family(args: &FamilyArgs) -> Result<FamilySpec, CliError> {
    FamilySpec::by_name(&args.family, args.p).map_err(|e| CliError::Usage(e.to_string()))
}

fn emit(table: &Table, format: Format, path: Option<&Path>) -> Result<(), CliError> {
    let out: Box<dyn Write> = match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match format {
        Format::Csv => table.write_csv(out)?,
        Format::Json => table.write_json(out)?,
    }
    Ok(())
}

fn base_meta(t: &mut Table, command: &str, family: &str, seed: Option<u64>) {
    t.meta("command", command);
    t.meta("family", family);
    t.meta("seed", seed.map_or(serde_json::Value::Null, serde_json::Value::from));
    t.meta("version", chromakit::VERSION);
}

fn tables(fam: &FamilySpec, order: usize) -> Result<Table, CliError> {
    let table = OperatorTable::build(fam, order)?;
    let mut t = Table::new(&["table", "n", "k", "value"]);
    for (name, kind) in [("A", TableKind::Direct), ("B", TableKind::Inverse)] {
        for (n, row) in table.dense(kind).iter().enumerate() {
            for (k, &v) in row.iter().enumerate().take(n + 1) {
                t.push(vec![name.into(), n.into(), k.into(), v.into()]);
            }
        }
    }
    base_meta(&mut t, "tables", fam.name(), None);
    t.meta("order", order);
    Ok(t)
}

fn kernel(exec: Execution, fam: &FamilySpec, order: usize, grid: &Grid) -> Result<Table, CliError> {
    if order > chromakit::max_order() {
        return Err(chromakit::Error::OrderCap {
            requested: order,
            cap: chromakit::max_order(),
        }
        .into());
    }
    let ts = grid.points();
    let rows = exec::try_map(exec, &ts, |&t| km_all(fam, order, t))?;
    let mut cols = vec!["t".to_string()];
    cols.extend((0..=order).map(|k| format!("k{k}")));
    let mut t = Table::with_columns(cols);
    for (x, vals) in ts.iter().zip(rows) {
        let mut row = vec![Cell::F(*x)];
        row.extend(vals.into_iter().map(Cell::F));
        t.push(row);
    }
    base_meta(&mut t, "kernel", fam.name(), None);
    t.meta("order", order);
    Ok(t)
}

fn expand(exec: Execution, order: usize, base: f64, grid: &Grid, window: usize, seed: u64) -> Result<Table, CliError> {
    if order > chromakit::max_order() {
        return Err(chromakit::Error::OrderCap {
            requested: order,
            cap: chromakit::max_order(),
        }
        .into());
    }
    let sig = BandlimitedSignal::random(window, seed);
    let r = approx_report(exec, &sig, order, base, &grid.points())?;
    let mut t = Table::new(&["t", "f", "chromatic", "taylor", "e_n", "error", "bound"]);
    for row in &r.rows {
        t.push(vec![
            row.t.into(),
            row.f.into(),
            row.chromatic.into(),
            row.taylor.into(),
            row.e_n.into(),
            row.error.into(),
            row.bound.into(),
        ]);
    }
    base_meta(&mut t, "expand", "legendre", Some(seed));
    t.meta("order", order);
    t.meta("base", base);
    t.meta("window", window);
    t.meta("tail", r.tail);
    Ok(t)
}

fn write_taps(d: &FirDesign, path: &Path) -> Result<(), CliError> {
    let mut t = Table::new(&["k", "offset", "c"]);
    let h = d.half_length() as i64;
    for k in -h..=h {
        t.push(vec![Cell::S(k.to_string()), (k as f64 * d.spacing).into(), d.tap(k).into()]);
    }
    t.write_csv(BufWriter::new(File::create(path)?))?;
    Ok(())
}

fn write_response(fam: &FamilySpec, d: &FirDesign, spec: &FirSpec, points: usize, path: &Path) -> Result<(), CliError> {
    let mut t = Table::new(&["omega", "theta", "band", "target", "achieved", "error"]);
    let (pe, se) = (spec.passband_edge(), spec.stopband_edge());
    for w in linspace(0.0, 2.0 * std::f64::consts::PI, points.max(2)) {
        let h = freq_response(d, w);
        let (band, target, err) = if w <= pe {
            let tr = target_response(fam, d.order, w)?;
            ("pass", Cell::F(tr.norm()), Cell::F((h - tr).norm()))
        } else if w >= se {
            ("stop", Cell::F(0.0), Cell::F(h.norm()))
        } else {
            ("transition", Cell::Empty, Cell::Empty)
        };
        t.push(vec![w.into(), (w / 2.0).into(), band.into(), target, h.norm().into(), err]);
    }
    t.write_csv(BufWriter::new(File::create(path)?))?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn filter(
    exec: Execution,
    spec: FirSpec,
    emit_taps: Option<&Path>,
    emit_response: Option<&Path>,
    response_points: usize,
    noise: (usize, f64, f64),
    seed: u64,
) -> Result<Table, CliError> {
    let fam = FamilySpec::legendre();
    let d = design_fir(&fam, &spec)?;
    let r = d.report.clone().expect("design_fir always reports");
    if let Some(p) = emit_taps {
        write_taps(&d, p)?;
    }
    if let Some(p) = emit_response {
        write_response(&fam, &d, &spec, response_points, p)?;
    }
    let mut cols = vec![
        "order",
        "taps",
        "passband_fraction",
        "passband_edge",
        "stopband_edge",
        "max_passband_error",
        "max_stopband_error",
        "least_squares_passband_error",
        "max_tap",
        "iterations",
        "converged",
    ];
    let mut row: Vec<Cell> = vec![
        spec.order.into(),
        spec.taps.into(),
        spec.passband_fraction.into(),
        r.passband_edge.into(),
        r.stopband_edge.into(),
        r.max_passband_error.into(),
        r.max_stopband_error.into(),
        r.least_squares_passband_error.into(),
        r.max_tap.into(),
        r.iterations.into(),
        r.converged.into(),
    ];
    let (trials, amplitude, omega) = noise;
    if trials > 0 {
        let n = noise_experiment(exec, &fam, &d, omega, amplitude, trials, seed)?;
        cols.extend(["noise_trials", "noise_amplitude", "exact", "filter_max_error", "filter_noise_gain", "stencil_noise_gain"]);
        row.extend([
            n.trials.into(),
            n.amplitude.into(),
            n.exact.into(),
            n.filter_max_error.into(),
            n.filter_noise_gain.into(),
            n.stencil_noise_gain.into(),
        ]);
    }
    let mut t = Table::new(&cols);
    t.push(row);
    base_meta(&mut t, "filter", "legendre", (trials > 0).then_some(seed));
    t.meta("order", spec.order);
    t.meta("passband_weight", spec.passband_weight);
    t.meta("grid_density", spec.grid_density);
    Ok(t)
}

fn conjecture(exec: Execution, fam: &FamilySpec, omegas: Option<Vec<f64>>, nmax: usize) -> Result<Table, CliError> {
    let grid = omegas.unwrap_or_else(|| default_omega_grid(fam));
    let scan = conjecture_scan(exec, fam, &grid, nmax)?;
    let mut t = Table::new(&["omega", "n", "cesaro_mean", "verdict"]);
    for row in &scan.rows {
        for &(n, mean) in &row.checkpoints {
            t.push(vec![row.omega.into(), n.into(), mean.into(), row.verdict.as_str().into()]);
        }
    }
    base_meta(&mut t, "conjecture", fam.name(), None);
    t.meta("p", scan.p);
    t.meta("nmax", nmax);
    t.meta("verdict_rule", "heuristic: mean(N)/mean(N/10) in [0.5, 2]");
    Ok(t)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let out = cli.output.as_deref();
    let table = match cli.command {
        Command::Tables { family: f, order } => tables(&family(&f)?, order)?,
        Command::Kernel { family: f, order, grid } => kernel(exec, &family(&f)?, order, &grid)?,
        Command::Expand {
            order,
            base,
            grid,
            window,
            ..
        } => expand(exec, order, base, &grid, window, cli.seed)?,
        Command::Filter {
            order,
            taps,
            passband,
            passband_weight,
            grid_density,
            emit_taps,
            emit_response,
            response_points,
            noise_trials,
            noise_amplitude,
            noise_omega,
        } => {
            let mut spec = FirSpec::new(order, taps, passband).with_passband_weight(passband_weight);
            spec.grid_density = grid_density;
            filter(
                exec,
                spec,
                emit_taps.as_deref(),
                emit_response.as_deref(),
                response_points,
                (noise_trials, noise_amplitude, noise_omega),
                cli.seed,
            )?
        }
        Command::Conjecture {
            family: name,
            p,
            omega_grid,
            nmax,
        } => {
            let fam = FamilySpec::by_name(&name, Some(p)).map_err(|e| CliError::Usage(e.to_string()))?;
            conjecture(exec, &fam, omega_grid.map(|g| g.0), nmax)?
        }
        Command::Selftest { only } => {
            let outcomes = match only {
                Some(id) => vec![selftest::run_one(id, exec).expect("id range checked by clap")],
                None => selftest::run_all(exec),
            };
            let mut t = Table::new(&["id", "name", "pass", "detail", "elapsed_secs", "budget_secs"]);
            for o in &outcomes {
                eprintln!("{}", o.line());
                t.push(vec![
                    (o.id as usize).into(),
                    o.name.into(),
                    o.pass.into(),
                    o.detail.clone().into(),
                    o.elapsed_secs.into(),
                    o.budget_secs.into(),
                ]);
            }
            base_meta(&mut t, "selftest", "all", None);
            emit(&t, cli.format, out)?;
            let failed: Vec<String> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id.to_string()).collect();
            if !failed.is_empty() {
                return Err(CliError::Failed(format!("failed checks: {}", failed.join(", "))));
            }
            return Ok(());
        }
    };
    emit(&table, cli.format, out)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            let rendered = e.render().to_string();
            let first = rendered.lines().next().unwrap_or_default();
            let message = first.strip_prefix("error: ").unwrap_or(first).to_string();
            let (_, rec) = CliError::Usage(message).record();
            eprintln!("{rec}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (code, rec) = e.record();
            eprintln!("{rec}");
            ExitCode::from(code)
        }
    }
}
