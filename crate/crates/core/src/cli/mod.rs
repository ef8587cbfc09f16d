//! The `torus-verlinde` command line: argument parsing, dispatch and output sinks.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 invalid input or I/O error.

mod report;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::charvar::{components, make_knot, TorusKnot};
use crate::chebyshev::{curve_polynomials, sample_curve, singular_points, write_curve_csv};
use crate::error::Error;
use crate::exactnum::fraction_string;
use crate::torsion::TorsionTable;
use crate::verlinde::{
    check_dual_routes, check_fusion_rule_one, check_fusion_rule_two, check_genus_one,
    check_hessian, check_initial_values, check_s_matrix, fusion_tensor, integrality_report,
    integrality_report_with, observed_denominators, MultiIndex, RationalRoute, TrigRoute,
};

pub use report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Output directory used when `--out` is absent.
pub const OUT_ENV: &str = "TORUS_VERLINDE_OUT";

#[derive(Debug, Parser)]
#[command(
    name = "torus-verlinde",
    version,
    about = "Torsions, Verlinde numbers and integrality checks for torus knots"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-component torsion, excluded traces and power sums.
    Torsion(TorsionCmd),
    /// Run the invariant suite on one knot.
    Verify(VerifyCmd),
    /// d(g, n) by both routes.
    Verlinde(VerlindeCmd),
    /// Sample the resolved Chebyshev curve; singular and exceptional data.
    Curve(CurveCmd),
    /// Integrality verdicts over a range of knots.
    Scan(ScanCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "txt",
        }
    }
}

#[derive(Debug, Args)]
pub struct KnotArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub p: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub q: i64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Directory for output files; stdout when unset.
    #[arg(long, env = OUT_ENV)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TorsionCmd {
    #[command(flatten)]
    pub knot: KnotArgs,
    /// Largest genus in the power-sum table.
    #[arg(long, default_value_t = 4)]
    pub g_max: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyCmd {
    #[command(flatten)]
    pub knot: KnotArgs,
    #[arg(long, default_value_t = 6)]
    pub g_max: u32,
    /// Largest puncture weight |n| in the fusion-rule and dual-route checks.
    /// Defaults to 2, 1 or 0 by grid size (<= 12, <= 24, larger).
    #[arg(long)]
    pub max_weight: Option<u32>,
    /// Flip N at ((1,1),(1,1),(1,1)) before verifying.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerlindeCmd {
    #[command(flatten)]
    pub knot: KnotArgs,
    #[arg(long)]
    pub g: u32,
    /// Punctures as `a,b;a,b;...`; empty for n = 0.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub punctures: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CurveCmd {
    #[command(flatten)]
    pub knot: KnotArgs,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = -2.5, allow_negative_numbers = true)]
    pub t_min: f64,
    #[arg(long, default_value_t = 2.5, allow_negative_numbers = true)]
    pub t_max: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ScanCmd {
    #[arg(long)]
    pub p_max: u32,
    #[arg(long)]
    pub q_max: u32,
    #[arg(long, default_value_t = 5)]
    pub g_max: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CmdResult = Result<bool, CliError>;

struct Sink<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    dir: Option<PathBuf>,
}

impl Sink<'_> {
    fn emit(&mut self, stem: &str, ext: &str, body: &str) -> io::Result<()> {
        match &self.dir {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                let path = dir.join(format!("{stem}.{ext}"));
                fs::write(&path, body)?;
                writeln!(self.err, "wrote {}", path.display())
            }
            None => self.out.write_all(body.as_bytes()),
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn knot(args: &KnotArgs) -> Result<TorusKnot, CliError> {
    Ok(make_knot(args.p, args.q)?)
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    execute(&cfg, out, err)
}

pub fn execute(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let output = match &cfg.command {
        Command::Torsion(c) => &c.output,
        Command::Verify(c) => &c.output,
        Command::Verlinde(c) => &c.output,
        Command::Curve(c) => &c.output,
        Command::Scan(c) => &c.output,
    };
    let dir = output.out.clone();
    let mut sink = Sink { out, err, dir };
    let res = match &cfg.command {
        Command::Torsion(c) => cmd_torsion(c, &mut sink),
        Command::Verify(c) => cmd_verify(c, &mut sink),
        Command::Verlinde(c) => cmd_verlinde(c, &mut sink),
        Command::Curve(c) => cmd_curve(c, &mut sink),
        Command::Scan(c) => cmd_scan(c, &mut sink),
    };
    match res {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(CliError::Input(msg)) => {
            let _ = writeln!(sink.err, "error: {msg}");
            EXIT_INVALID
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(sink.err, "error: {e}");
            EXIT_INVALID
        }
    }
}

pub fn torsion_report(k: &TorusKnot, g_max: u32) -> TorsionReport {
    let table = TorsionTable::new(k);
    TorsionReport {
        p: k.p(),
        q: k.q(),
        components: table
            .torsions()
            .iter()
            .map(|t| ComponentRow::new(k, t))
            .collect(),
        power_sums: (0..=g_max).map(|g| (&table.power_sum(g)).into()).collect(),
    }
}

fn cmd_torsion(c: &TorsionCmd, sink: &mut Sink) -> CmdResult {
    let k = knot(&c.knot)?;
    let rep = torsion_report(&k, c.g_max);
    let fmt = c.output.format.unwrap_or(Format::Text);
    let body = match fmt {
        Format::Json => to_json(&rep),
        Format::Csv => rep.csv(),
        Format::Text => rep.text(),
    };
    sink.emit(&format!("torsion_{}_{}", k.p(), k.q()), fmt.ext(), &body)?;
    Ok(true)
}

fn default_weight(k: &TorusKnot) -> u32 {
    match k.grid_len() {
        0..=12 => 2,
        13..=24 => 1,
        _ => 0,
    }
}

pub fn verify_report(
    k: &TorusKnot,
    g_max: u32,
    max_weight: u32,
    inject_fault: bool,
) -> VerifyReport {
    let mut tensor = fusion_tensor(k);
    if inject_fault {
        let u = k.unit();
        tensor = tensor.with_flipped(u, u, u);
    }
    let route = RationalRoute::with_tensor(tensor);
    let trig = TrigRoute::new(k);
    let fusion_g = g_max.min(2);
    let groups = vec![
        check_hessian(k),
        check_s_matrix(k),
        check_initial_values(&trig, route.tensor()),
        check_genus_one(&trig, &route, g_max),
        {
            let mut o = check_fusion_rule_one(k, fusion_g, max_weight, |g, n| trig.d(g, n));
            o.name.push_str(" (trig)");
            o
        },
        {
            let mut o = check_fusion_rule_one(k, fusion_g, max_weight, |g, n| route.d(g, n));
            o.name.push_str(" (rational)");
            o
        },
        {
            let mut o = check_fusion_rule_two(k, fusion_g, max_weight, |g, n| trig.d(g, n));
            o.name.push_str(" (trig)");
            o
        },
        {
            let mut o = check_fusion_rule_two(k, fusion_g, max_weight, |g, n| route.d(g, n));
            o.name.push_str(" (rational)");
            o
        },
        check_dual_routes(&trig, &route, g_max, max_weight),
    ];
    let integ = integrality_report_with(&route, &trig, &TorsionTable::new(k), g_max);
    let mut groups: Vec<GroupRow> = groups.into_iter().map(GroupRow::from).collect();
    let mut int_group = crate::verlinde::CheckOutcome::new("integrality of 2^(g-2) d(g, 0)");
    for r in &integ.rows {
        int_group.record(r.passed(), || {
            format!(
                "g = {}: {} (integer {}, denominator bound {}, agree {})",
                r.g,
                fraction_string(&r.scaled),
                r.integer,
                r.denominator_ok,
                r.agree
            )
        });
    }
    groups.push(int_group.into());
    let passed = groups.iter().all(|g| g.passed);
    VerifyReport {
        p: k.p(),
        q: k.q(),
        g_max,
        max_weight,
        fault_injected: inject_fault,
        groups,
        integrality: integ.rows.iter().map(IntegralityJson::from).collect(),
        observed_denominators: observed_denominators(&route, g_max.min(2), max_weight)
            .iter()
            .map(DenominatorJson::from)
            .collect(),
        passed,
    }
}

fn cmd_verify(c: &VerifyCmd, sink: &mut Sink) -> CmdResult {
    let k = knot(&c.knot)?;
    let w = c.max_weight.unwrap_or_else(|| default_weight(&k));
    let rep = verify_report(&k, c.g_max, w, c.inject_fault);
    let fmt = c.output.format.unwrap_or(Format::Text);
    let body = match fmt {
        Format::Json => to_json(&rep),
        Format::Csv => rep.csv(),
        Format::Text => rep.text(),
    };
    sink.emit(&format!("verify_{}_{}", k.p(), k.q()), fmt.ext(), &body)?;
    Ok(rep.passed)
}

fn cmd_verlinde(c: &VerlindeCmd, sink: &mut Sink) -> CmdResult {
    let k = knot(&c.knot)?;
    let n = MultiIndex::parse(&k, &c.punctures)?;
    let rational = RationalRoute::new(&k).d(c.g, &n);
    let trig = TrigRoute::new(&k).d(c.g, &n);
    let rep = VerlindeReport::new(&n, c.g, &rational, &trig);
    let fmt = c.output.format.unwrap_or(Format::Text);
    let body = match fmt {
        Format::Json => to_json(&rep),
        Format::Csv => rep.csv(),
        Format::Text => rep.text(),
    };
    sink.emit(
        &format!("verlinde_{}_{}_g{}", k.p(), k.q(), c.g),
        fmt.ext(),
        &body,
    )?;
    Ok(rep.agree)
}

pub fn curve_report(
    k: &TorusKnot,
    samples: usize,
    t_min: f64,
    t_max: f64,
) -> Result<(CurveReport, String), Error> {
    let pts = sample_curve(k.p(), k.q(), samples, t_min, t_max)?;
    let poly = curve_polynomials(k.p(), k.q())?;
    let max_residual = pts
        .iter()
        .map(|s| poly.f.eval(&s.x, &s.y).abs())
        .fold(0.0, f64::max);
    let mut csv = Vec::new();
    write_curve_csv(&mut csv, &pts).expect("writing to memory");
    let rep = CurveReport {
        p: k.p(),
        q: k.q(),
        samples,
        t_min,
        t_max,
        max_residual,
        singular_points: singular_points(k.p(), k.q())?
            .iter()
            .map(Into::into)
            .collect(),
        exceptional: components(k)
            .into_iter()
            .map(|c| ExceptionalJson::new(k, c))
            .collect(),
    };
    Ok((rep, String::from_utf8(csv).expect("ascii")))
}

fn cmd_curve(c: &CurveCmd, sink: &mut Sink) -> CmdResult {
    let k = knot(&c.knot)?;
    if c.samples < 2 {
        return Err(CliError::Input(format!(
            "--samples must be at least 2, got {}",
            c.samples
        )));
    }
    if !(c.t_min.is_finite() && c.t_max.is_finite() && c.t_min < c.t_max) {
        return Err(CliError::Input(format!(
            "need finite t-min < t-max, got {} and {}",
            c.t_min, c.t_max
        )));
    }
    let (rep, csv) = curve_report(&k, c.samples, c.t_min, c.t_max)?;
    let stem = format!("curve_{}_{}", k.p(), k.q());
    if sink.dir.is_some() {
        sink.emit(&stem, "csv", &csv)?;
        sink.emit(&stem, "json", &to_json(&rep))?;
    } else {
        match c.output.format.unwrap_or(Format::Csv) {
            Format::Json => sink.emit(&stem, "json", &to_json(&rep))?,
            Format::Csv => sink.emit(&stem, "csv", &csv)?,
            Format::Text => {
                let text = format!(
                    "T({}, {}): {} samples on [{}, {}], max |F| {:e}, {} singular points\n",
                    rep.p,
                    rep.q,
                    rep.samples,
                    rep.t_min,
                    rep.t_max,
                    rep.max_residual,
                    rep.singular_points.len()
                );
                sink.emit(&stem, "txt", &text)?
            }
        }
    }
    Ok(true)
}

pub fn scan_report(p_max: u32, q_max: u32, g_max: u32) -> ScanReport {
    let mut pairs = Vec::new();
    for p in 2..=p_max {
        for q in p + 1..=q_max {
            if let Ok(k) = make_knot(p as i64, q as i64) {
                pairs.push(k);
            }
        }
    }
    let rows: Vec<ScanRow> = pairs
        .par_iter()
        .map(|k| {
            let rep = integrality_report(k, g_max);
            let integer = rep.rows.iter().all(|r| r.integer && r.denominator_ok);
            let agree = rep.rows.iter().all(|r| r.agree);
            ScanRow {
                p: k.p(),
                q: k.q(),
                values: rep
                    .rows
                    .iter()
                    .map(|r| fraction_string(&r.scaled))
                    .collect(),
                integer,
                agree,
                passed: integer && agree,
            }
        })
        .collect();
    let passed = rows.iter().all(|r| r.passed);
    ScanReport {
        p_max,
        q_max,
        g_max,
        rows,
        passed,
    }
}

fn cmd_scan(c: &ScanCmd, sink: &mut Sink) -> CmdResult {
    if c.p_max < 2 || c.q_max < 2 {
        return Err(CliError::Input("scan bounds must be at least 2".into()));
    }
    let rep = scan_report(c.p_max, c.q_max, c.g_max);
    let fmt = c.output.format.unwrap_or(Format::Text);
    let body = match fmt {
        Format::Json => to_json(&rep),
        Format::Csv => rep.csv(),
        Format::Text => rep.text(),
    };
    sink.emit(
        &format!("scan_{}_{}_g{}", c.p_max, c.q_max, c.g_max),
        fmt.ext(),
        &body,
    )?;
    Ok(rep.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["torus-verlinde"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn torsion_trefoil() {
        let (code, out, _) = run_str(&["torsion", "--p", "2", "--q", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("(1, 1)  tau = 1/2"), "{out}");
    }

    #[test]
    fn invalid_inputs_exit_2() {
        assert_eq!(run_str(&["torsion", "--p", "4", "--q", "6"]).0, 2);
        assert_eq!(
            run_str(&[
                "verlinde",
                "--p",
                "2",
                "--q",
                "5",
                "--g",
                "0",
                "--punctures",
                "9,9"
            ])
            .0,
            2
        );
        assert_eq!(
            run_str(&["curve", "--p", "2", "--q", "3", "--samples", "1"]).0,
            2
        );
        assert_eq!(run_str(&["nonsense"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn verlinde_values() {
        let (code, out, _) = run_str(&[
            "verlinde", "--p", "2", "--q", "5", "--g", "2", "--format", "csv",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().nth(1), Some("2,5,2,,5,5,5,true"));
        let (_, out, _) = run_str(&[
            "verlinde",
            "--p",
            "2",
            "--q",
            "5",
            "--g",
            "1",
            "--punctures",
            "1,3",
        ]);
        assert!(out.contains("= 1\n"), "{out}");
    }

    #[test]
    fn exceptional_points_match_moebius_map() {
        use crate::charvar::{moebius_phi, MoebiusImage, ProjectivePoint};
        let k = make_knot(3, 5).unwrap();
        for c in components(&k) {
            let e = ExceptionalJson::new(&k, c);
            for (z, t) in [
                (e.plus, e.excluded_traces[0]),
                (e.minus, e.excluded_traces[1]),
            ] {
                match moebius_phi(&k, c, ProjectivePoint::new(z[0], z[1])) {
                    MoebiusImage::Excluded(v) => assert!((v - t).abs() < 1e-9),
                    other => panic!("{other:?}"),
                }
            }
        }
    }

    #[test]
    fn negative_inputs_normalize() {
        let (code, out, _) = run_str(&["torsion", "--p", "-3", "--q", "2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("T(2, 3)"));
    }
}
