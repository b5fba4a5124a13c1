//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::adders::Construction;
use crate::costmodel::{self, AdderKind, BlockSearch, Place, CURVE_HEADER, HEATMAP_HEADER};
use crate::metrics::{DependencyModel, ResourceReport};
use crate::sim::{verify_adder_exhaustive, verify_adder_random};
use crate::VolumeParams;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "blockadder",
    version,
    about = "Reversible adder construction, verification and cost estimates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AdderArg {
    Ripple,
    TwoBlock,
    Block,
    InPlaceRipple,
    InPlaceBlock,
}

impl AdderArg {
    fn construction(self, b: Option<usize>) -> Result<Construction, String> {
        let need_b = || b.ok_or_else(|| "--b is required for block adders".to_string());
        Ok(match self {
            AdderArg::Ripple => Construction::Ripple,
            AdderArg::TwoBlock => Construction::TwoBlock,
            AdderArg::Block => Construction::Block(need_b()?),
            AdderArg::InPlaceRipple => Construction::InPlaceRipple,
            AdderArg::InPlaceBlock => Construction::InPlaceBlock(need_b()?),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Default,
    Improved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlaceArg {
    In,
    Out,
}

impl From<PlaceArg> for Place {
    fn from(p: PlaceArg) -> Place {
        match p {
            PlaceArg::In => Place::In,
            PlaceArg::Out => Place::Out,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchArg {
    /// b in 2..=min(n, 2*ceil(sqrt(n)))
    Bounded,
    /// b in 2..=n
    Full,
}

impl From<SearchArg> for BlockSearch {
    fn from(s: SearchArg) -> BlockSearch {
        match s {
            SearchArg::Bounded => BlockSearch::Bounded,
            SearchArg::Full => BlockSearch::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DependencyArg {
    Commutation,
    SharedQubit,
}

impl From<DependencyArg> for DependencyModel {
    fn from(d: DependencyArg) -> DependencyModel {
        match d {
            DependencyArg::Commutation => DependencyModel::Commutation,
            DependencyArg::SharedQubit => DependencyModel::SharedQubit,
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value = "default")]
    pub preset: Preset,
    /// key=value file overriding preset fields
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "bounded")]
    pub block_search: SearchArg,
    /// Write CSV here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an adder against integer addition
    Verify {
        #[arg(long, value_enum)]
        adder: AdderArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: Mode,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Measure Toffoli count, reaction depth and workspace of a built adder
    Metrics {
        #[arg(long, value_enum)]
        adder: AdderArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long, value_enum, default_value = "commutation")]
        dependency: DependencyArg,
        /// Also write the per-layer Toffoli timeline
        #[arg(long)]
        timeline_out: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Model volumes next to the published volume table
    Table1 {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Volume estimate of catalogued adders at one (n, f)
    Volume {
        /// Adder kind; all kinds when omitted
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        f: u64,
        /// Block size for block_b kinds; optimized when omitted
        #[arg(long)]
        b: Option<usize>,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Volume of every kind over register sizes, with f = n/10
    Curve {
        /// Sizes: comma list of N, A..B or A..B:STEP
        #[arg(long, default_value = "10,20,50,100,200,500,1000,2000,5000,10000")]
        n: String,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Lowest-volume adder over a grid of sizes and factory limits
    Heatmap {
        #[arg(long, default_value = "8..200")]
        n: String,
        #[arg(long, default_value = "1..50")]
        f: String,
        #[arg(long, value_enum, default_value = "in")]
        place: PlaceArg,
        #[command(flatten)]
        model: ModelArgs,
    },
}

/// Parses `N`, `A..B` (inclusive) and `A..B:STEP` items separated by commas.
pub fn parse_grid(spec: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let num = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad number `{s}` in `{spec}`"))
        };
        match item.split_once("..") {
            None => out.push(num(item)?),
            Some((lo, rest)) => {
                let (hi, step) = match rest.split_once(':') {
                    Some((hi, step)) => (num(hi)?, num(step)?),
                    None => (num(rest)?, 1),
                };
                let lo = num(lo)?;
                if step == 0 || lo > hi {
                    return Err(format!("empty or invalid range `{item}`"));
                }
                out.extend((lo..=hi).step_by(step as usize));
            }
        }
    }
    if out.is_empty() {
        return Err(format!("no values in `{spec}`"));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn load_params(model: &ModelArgs) -> Result<VolumeParams, String> {
    let base = match model.preset {
        Preset::Default => VolumeParams::default_preset(1),
        Preset::Improved => VolumeParams::improved_preset(1),
    };
    match &model.config {
        None => Ok(base),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            base.apply_config(&text).map_err(|e| format!("{}: {e}", path.display()))
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => to_stdout(stdout, text),
    }
}

/// A closed reader (e.g. `| head`) is not an error.
fn to_stdout(stdout: &mut dyn Write, text: &str) -> Result<(), String> {
    match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.to_string()),
        _ => Ok(()),
    }
}

fn positive_sizes(spec: &str) -> Result<Vec<usize>, String> {
    let v = parse_grid(spec)?;
    if v.contains(&0) {
        return Err("register sizes must be at least 1".into());
    }
    Ok(v.into_iter().map(|x| x as usize).collect())
}

fn run_command(cmd: Command, stdout: &mut dyn Write) -> Result<i32, String> {
    match cmd {
        Command::Verify {
            adder,
            n,
            b,
            mode,
            trials,
            seed,
        } => {
            let c = adder.construction(b)?;
            let result = match mode {
                Mode::Exhaustive => verify_adder_exhaustive(&c, n),
                Mode::Random => verify_adder_random(&c, n, trials, seed),
            }
            .map_err(|e| e.to_string())?;
            let b = b.map(|b| format!(" b={b}")).unwrap_or_default();
            to_stdout(stdout, &format!("{} n={n}{b}: {result}\n", c.name()))?;
            Ok(if result.passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Metrics {
            adder,
            n,
            b,
            dependency,
            timeline_out,
            out,
        } => {
            let c = adder.construction(b)?;
            let build = c.build(n).map_err(|e| e.to_string())?;
            let report = ResourceReport::measure_with(&build.circuit, dependency.into());
            let csv = format!(
                "{}\n{}\n",
                ResourceReport::CSV_HEADER,
                report.csv_row(c.name(), n, c.block_size())
            );
            emit(out.as_ref(), &csv, stdout)?;
            if let Some(path) = timeline_out {
                std::fs::write(&path, report.timeline_csv()).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(EXIT_OK)
        }
        Command::Table1 { model } => {
            let p = load_params(&model)?;
            let entries = costmodel::table1_volumes(&p, model.block_search.into()).map_err(|e| e.to_string())?;
            let mut csv = String::from("kind,place,n,f,b,volume_qs,published_qs,ratio\n");
            for e in entries {
                writeln!(
                    csv,
                    "{},{},{},{},{},{},{},{}",
                    e.kind,
                    e.kind.place(),
                    e.n,
                    e.max_factories,
                    e.block_size.map(|b| b.to_string()).unwrap_or_default(),
                    e.volume,
                    e.published,
                    e.ratio()
                )
                .unwrap();
            }
            emit(model.out.as_ref(), &csv, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Volume { kind, n, f, b, model } => {
            let p = load_params(&model)?.with_max_factories(f);
            p.validate().map_err(|e| e.to_string())?;
            let kinds = match kind {
                Some(k) => vec![k.parse::<AdderKind>().map_err(|e| e.to_string())?],
                None => AdderKind::ALL.to_vec(),
            };
            let search = match b {
                Some(b) => BlockSearch::Fixed(b),
                None => model.block_search.into(),
            };
            let mut csv = format!("{CURVE_HEADER}\n");
            for kind in kinds {
                let choice = costmodel::optimize_kind(kind, n, &p, search).map_err(|e| e.to_string())?;
                writeln!(csv, "{}", costmodel::CurveRow { n, choice }.csv()).unwrap();
            }
            emit(model.out.as_ref(), &csv, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Curve { n, model } => {
            let p = load_params(&model)?;
            let ns = positive_sizes(&n)?;
            let rows = costmodel::sweep_curve(&ns, &p, &AdderKind::ALL, model.block_search.into())
                .map_err(|e| e.to_string())?;
            let mut csv = format!("{CURVE_HEADER}\n");
            for r in rows {
                writeln!(csv, "{}", r.csv()).unwrap();
            }
            emit(model.out.as_ref(), &csv, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Heatmap { n, f, place, model } => {
            let p = load_params(&model)?;
            let ns = positive_sizes(&n)?;
            let fs = parse_grid(&f)?;
            if fs.contains(&0) {
                return Err("factory limits must be at least 1".into());
            }
            let cells = costmodel::sweep_heatmap(&ns, &fs, place.into(), &p, model.block_search.into())
                .map_err(|e| e.to_string())?;
            let mut csv = format!("{HEATMAP_HEADER}\n");
            for c in cells {
                writeln!(csv, "{}", c.csv()).unwrap();
            }
            emit(model.out.as_ref(), &csv, stdout)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match run_command(cli.command, stdout) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["blockadder"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn grid_syntax() {
        assert_eq!(parse_grid("3").unwrap(), vec![3]);
        assert_eq!(parse_grid("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_grid("10..20:5, 1").unwrap(), vec![1, 10, 15, 20]);
        assert!(parse_grid("5..1").is_err());
        assert!(parse_grid("1..5:0").is_err());
        assert!(parse_grid("x").is_err());
        assert!(parse_grid("").is_err());
    }

    #[test]
    fn verify_pass() {
        let (code, out, _) = run_str(&["verify", "--adder", "ripple", "--n", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "ripple n=1: PASS: 4 cases checked\n");
    }

    #[test]
    fn metrics_row() {
        let (code, out, _) = run_str(&["metrics", "--adder", "ripple", "--n", "8"]);
        assert_eq!(code, 0);
        assert_eq!(out, "name,n,b,toffolis,reaction_depth,workspace\nripple,8,,7,7,0\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["verify", "--adder", "block", "--n", "4"]).0, 2);
        assert_eq!(run_str(&["verify", "--adder", "ripple", "--n", "13"]).0, 2);
        assert_eq!(run_str(&["verify", "--adder", "block", "--n", "4", "--b", "0"]).0, 2);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["volume", "--kind", "nope", "--n", "10", "--f", "1"]).0, 2);
        assert_eq!(run_str(&["volume", "--n", "10", "--f", "0"]).0, 2);
        assert_eq!(run_str(&["heatmap", "--n", "0..3"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }

    #[test]
    fn volume_single_kind() {
        let (code, out, _) = run_str(&["volume", "--kind", "cuccaro", "--n", "100", "--f", "10"]);
        assert_eq!(code, 0);
        let row = out.lines().nth(1).unwrap();
        assert!(row.starts_with("100,cuccaro,in,,199,199,1,10,"), "{row}");
    }
}
