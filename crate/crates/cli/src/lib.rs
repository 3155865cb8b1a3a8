//! Command-line front end for `lcheb`.

mod format;
mod io;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lcheb::arith::{sharp_flat_decompose, ParamVec};
use lcheb::lissajous::{classify_curves, curve_family, l_dagger, polyline};
use lcheb::spectral::{e_count, f_count, gamma_star, gcd_le2_criterion, membership};
use lcheb::{Execution, Interpolator, NodeSet, Space};
use serde_json::{json, Value};

pub use format::g17;
pub use io::CoeffFile;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Lib(#[from] lcheb::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("verification failed")]
    VerifyFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(lcheb::Error::Overflow(_)) => 1,
            CliError::VerifyFailed => 3,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "lcheb", version, about = "Lissajous-Chebyshev nodes, curves, interpolation and quadrature")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Family {
    /// Frequencies, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    m: Vec<u64>,
    /// Shifts, comma separated; all zero by default.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    kappa: Option<Vec<i64>>,
}

impl Family {
    fn params(&self) -> Result<ParamVec> {
        let kappa = self.kappa.clone().unwrap_or_else(|| vec![0; self.m.len()]);
        if kappa.len() != self.m.len() {
            return Err(CliError::Usage(format!(
                "--kappa has {} entries but --m has {}",
                kappa.len(),
                self.m.len()
            )));
        }
        ParamVec::new(self.m.clone(), kappa).map_err(|e| match e {
            lcheb::Error::Overflow(_) => e.into(),
            other => CliError::Usage(other.to_string()),
        })
    }
}

#[derive(Debug, Args)]
struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SpaceArg {
    Plain,
    Averaged,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Self {
        match s {
            SpaceArg::Plain => Space::Plain,
            SpaceArg::Averaged => Space::Averaged,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the nodes with their index, parity, face, coordinates and weight.
    Nodes {
        #[command(flatten)]
        family: Family,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Describe the generating curves, or sample them as a polyline with `--format csv`.
    Curves {
        #[command(flatten)]
        family: Family,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Polyline points per period.
        #[arg(long, default_value_t = 1024)]
        samples: usize,
        #[command(flatten)]
        output: Output,
    },
    /// List the extended spectral index set with memberships and classes.
    Gamma {
        #[command(flatten)]
        family: Family,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Interpolate node data (columns i_1..i_d,value) and print coefficient JSON.
    Interp {
        #[command(flatten)]
        family: Family,
        #[arg(long)]
        data: PathBuf,
        #[arg(long, value_enum, default_value = "plain")]
        space: SpaceArg,
        /// Report the largest residual at the nodes on standard error.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate a coefficient file at points (columns x_1..x_d) or on a grid.
    Eval {
        #[arg(long)]
        coeffs: PathBuf,
        #[arg(long, conflicts_with = "grid", required_unless_present = "grid")]
        points: Option<PathBuf>,
        /// Product grid cos(k_j pi / n_j), sizes comma separated.
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<usize>>,
        #[command(flatten)]
        output: Output,
    },
    /// Weighted node sum of data (columns i_1..i_d,value).
    Quad {
        #[command(flatten)]
        family: Family,
        #[arg(long)]
        data: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Run all invariant checks for one family.
    Verify {
        #[command(flatten)]
        family: Family,
        /// Run single-threaded.
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        output: Output,
    },
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            if !matches!(e, CliError::VerifyFailed) {
                eprintln!("error: {e}");
            }
            e.exit_code()
        }
    }
}

fn emit(output: &Output, text: &str) -> Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn execute(cmd: Command) -> Result<()> {
    match cmd {
        Command::Nodes { family, format, output } => emit(&output, &nodes_text(&family.params()?, format)),
        Command::Curves { family, format, samples, output } => {
            emit(&output, &curves_text(&family.params()?, format, samples)?)
        }
        Command::Gamma { family, format, output } => emit(&output, &gamma_text(&family.params()?, format)),
        Command::Interp { family, data, space, check, output } => {
            let pv = family.params()?;
            let ip = Interpolator::new(&pv);
            let h = io::read_node_data(&data, ip.nodes())?;
            let p = ip.interpolate(&h, space.into())?;
            if check {
                let coords: Vec<Vec<f64>> = ip.nodes().nodes().iter().map(|n| n.coords(&pv)).collect();
                let vals = p.evaluate_batch(&coords)?;
                let res = vals.iter().zip(h.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                eprintln!("max residual at nodes: {}", g17(res));
            }
            emit(&output, &json_text(&io::coeffs_json(&ip, p.coeffs())))
        }
        Command::Eval { coeffs, points, grid, output } => {
            let file = io::read_coeffs(&coeffs)?;
            let pv = file.params()?;
            let ip = Interpolator::new(&pv);
            let c = ip.coeffs_from_entries(file.space()?, file.entries())?;
            let p = ip.interpolant(c);
            let (pts, values) = match (points, grid) {
                (Some(path), _) => {
                    let pts = io::read_points(&path, pv.dim())?;
                    let values = p.evaluate_batch(&pts)?;
                    (pts, values)
                }
                (None, Some(n)) => {
                    if n.len() != pv.dim() {
                        return Err(CliError::Usage(format!("--grid needs {} sizes", pv.dim())));
                    }
                    let values = p.evaluate_grid(&n)?;
                    (io::grid_points(&n), values)
                }
                (None, None) => unreachable!("clap requires --points or --grid"),
            };
            emit(&output, &io::points_csv(pv.dim(), &pts, &values))
        }
        Command::Quad { family, data, format, output } => {
            let pv = family.params()?;
            let ip = Interpolator::new(&pv);
            let h = io::read_node_data(&data, ip.nodes())?;
            let q = ip.quadrature(&h)?;
            let text = match format {
                Format::Csv => format!("{}\n", g17(q)),
                Format::Json => json_text(&json!({ "value": q })),
            };
            emit(&output, &text)
        }
        Command::Verify { family, sequential, output } => {
            let pv = family.params()?;
            let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
            let report = lcheb::verify::verify(&pv, exec);
            emit(&output, &verify_text(&pv, &report))?;
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::VerifyFailed)
            }
        }
    }
}

fn nodes_text(pv: &ParamVec, format: Format) -> String {
    let nodes = NodeSet::new(pv);
    let d = pv.dim();
    match format {
        Format::Csv => {
            let mut rows = Vec::with_capacity(nodes.len() + 1);
            let mut header: Vec<String> = (1..=d).map(|j| format!("i_{j}")).collect();
            header.extend(["r".to_string(), "M_bitmask".to_string()]);
            header.extend((1..=d).map(|j| format!("x_{j}")));
            header.push("weight".into());
            rows.push(header.join(","));
            for n in nodes.nodes() {
                let mut row: Vec<String> = n.i.iter().map(|v| v.to_string()).collect();
                row.push(n.r.to_string());
                row.push(n.face.to_string());
                row.extend(n.coords(pv).into_iter().map(g17));
                row.push(g17(n.weight(pv).value()));
                rows.push(row.join(","));
            }
            rows.join("\n") + "\n"
        }
        Format::Json => {
            let list: Vec<Value> = nodes
                .nodes()
                .iter()
                .map(|n| {
                    let (num, den) = n.weight(pv).reduced();
                    json!({
                        "i": n.i,
                        "r": n.r,
                        "M_bitmask": n.face,
                        "x": n.coords(pv),
                        "weight": n.weight(pv).value(),
                        "weight_exact": format!("{num}/{den}"),
                    })
                })
                .collect();
            json_text(&json!({ "m": pv.m(), "kappa": pv.kappa(), "count": nodes.len(), "nodes": list }))
        }
    }
}

fn curves_text(pv: &ParamVec, format: Format, samples: usize) -> Result<String> {
    let sf = sharp_flat_decompose(pv.m());
    let curves = curve_family(pv, &sf);
    match format {
        Format::Json => {
            let cc = classify_curves(pv, &sf);
            let list: Vec<Value> = curves
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    json!({
                        "rho": c.rho,
                        "xi": c.xi,
                        "degenerate": cc.partner[k] == c.rho,
                        "partner_rho": cc.partner[k],
                        "class_id": cc.class_of[k],
                    })
                })
                .collect();
            Ok(json_text(&json!({
                "m": pv.m(),
                "kappa": pv.kappa(),
                "m_sharp": sf.m_sharp,
                "m_flat": sf.m_flat,
                "l_dagger": l_dagger(pv, &sf),
                "n_deg": cc.n_deg,
                "class_count": cc.classes.len(),
                "curves": list,
            })))
        }
        Format::Csv => {
            if samples == 0 {
                return Err(CliError::Usage("--samples must be positive".into()));
            }
            let mut rows = vec![{
                let mut h = vec!["curve".to_string(), "t".to_string()];
                h.extend((1..=pv.dim()).map(|j| format!("x_{j}")));
                h.join(",")
            }];
            for (k, c) in curves.iter().enumerate() {
                for (t, x) in polyline(pv, c, samples) {
                    let mut row = vec![k.to_string(), g17(t)];
                    row.extend(x.into_iter().map(g17));
                    rows.push(row.join(","));
                }
            }
            Ok(rows.join("\n") + "\n")
        }
    }
}

fn gamma_text(pv: &ParamVec, format: Format) -> String {
    let cd = lcheb::spectral::class_decomposition(pv);
    let entries: Vec<(Value, Vec<String>)> = cd
        .gamma_bar()
        .iter()
        .map(|g| {
            let mb = membership(pv, &g.0);
            let class_id = cd.class_id(g).unwrap();
            let sign = cd.sign_to_representative(g).unwrap();
            let (e, f) = (e_count(&g.0), f_count(pv, &g.0));
            let csv: Vec<String> = g
                .0
                .iter()
                .map(|v| v.to_string())
                .chain([mb.circ, mb.kappa0, mb.kappa1, mb.bar].iter().map(|&b| u8::from(b).to_string()))
                .chain([
                    class_id.to_string(),
                    u8::from(cd.is_representative(g)).to_string(),
                    sign.to_string(),
                    e.to_string(),
                    f.to_string(),
                ])
                .collect();
            let value = json!({
                "gamma": g.0,
                "memberships": {
                    "gamma_circ": mb.circ,
                    "gamma_kappa_0": mb.kappa0,
                    "gamma_kappa_1": mb.kappa1,
                    "gamma_bar": mb.bar,
                },
                "class_id": class_id,
                "class_size": cd.class_size(g).unwrap(),
                "is_representative": cd.is_representative(g),
                "sign_to_representative": sign,
                "e": e,
                "f": f,
            });
            (value, csv)
        })
        .collect();
    match format {
        Format::Json => json_text(&json!({
            "m": pv.m(),
            "kappa": pv.kappa(),
            "gamma_bar_size": cd.gamma_bar().len(),
            "class_count": cd.classes().len(),
            "gamma_star": gamma_star(pv).0,
            "gcd_le2": gcd_le2_criterion(pv),
            "entries": entries.into_iter().map(|(v, _)| v).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut header: Vec<String> = (1..=pv.dim()).map(|j| format!("gamma_{j}")).collect();
            header.extend(
                ["gamma_circ", "gamma_kappa_0", "gamma_kappa_1", "gamma_bar", "class_id", "is_representative", "sign", "e", "f"]
                    .map(String::from),
            );
            let mut rows = vec![header.join(",")];
            rows.extend(entries.into_iter().map(|(_, r)| r.join(",")));
            rows.join("\n") + "\n"
        }
    }
}

fn verify_text(pv: &ParamVec, report: &lcheb::verify::Report) -> String {
    let mut out = format!("family m = {:?}, kappa = {:?}\n", pv.m(), pv.kappa());
    for note in &report.notes {
        out += &format!("  note: {note}\n");
    }
    for c in &report.checks {
        let status = match c.passed {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "SKIP",
        };
        out += &format!("{status}  {:<55} residual {:>24}  tolerance {}\n", c.name, g17(c.residual), g17(c.tolerance));
    }
    out += if report.passed() { "all checks passed\n" } else { "some checks FAILED\n" };
    out
}
