use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use aglrc::analysis::{self, EnumerationOptions, DEFAULT_CAP};
use aglrc::bounds::{self, BoundFamily};
use aglrc::descriptor::CodeDescriptor;
use aglrc::lrc::local_recovery;
use aglrc::{gs_tower, hermitian, tamo_barg, Elem, FiniteField, LinearCode, SGrid};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "aglrc", version, about = "Locally recoverable codes on algebraic curves")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a code and write its JSON descriptor.
    Construct(ConstructArgs),
    /// Encode a message (log indices, -1 for zero) into a CSV codeword.
    Encode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        message: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Repair one erased coordinate from its recovering set.
    Recover {
        #[arg(long)]
        code: PathBuf,
        /// CSV with columns index,present,symbol.
        #[arg(long)]
        word: PathBuf,
        /// Coordinate index, or a label as comma-separated log indices.
        #[arg(long, allow_hyphen_values = true)]
        pos: String,
        #[arg(long, default_value_t = 1)]
        partition: usize,
    },
    /// Exhaustive minimum distance.
    Distance {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        no_scalar_reduction: bool,
    },
    /// Check locality through dual certificates.
    VerifyLocality {
        #[arg(long)]
        code: PathBuf,
        /// Also check by enumerating every codeword.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Enumerate curve points.
    Points {
        #[arg(long, value_enum)]
        curve: Curve,
        #[arg(long)]
        q0: u32,
        #[arg(long, default_value_t = 2)]
        level: u32,
    },
    /// Designed parameters of tower codes.
    Params {
        #[arg(long, value_enum)]
        family: TowerFamily,
        #[arg(long)]
        q0: u32,
        #[arg(long)]
        level: u32,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
    },
    /// Asymptotic rate bounds.
    Bounds(BoundsArgs),
    /// Random erasure/repair round trips on every coordinate.
    Roundtrip {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructFamily {
    TamoBarg,
    HermitianY,
    HermitianX,
    HermitianLrc2,
    Gs2L2,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: ConstructFamily,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, default_value_t = 1)]
    a: u32,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Coset representatives as base-p coefficient integers.
    #[arg(long, value_delimiter = ',')]
    cosets: Vec<u32>,
    #[arg(long)]
    q0: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Curve {
    Hermitian,
    GsTower,
}

#[derive(Clone, Copy, ValueEnum)]
enum TowerFamily {
    Gs1,
    Gs2,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundArg {
    Gv,
    Ab1,
    Ab2,
    Tvz,
}

impl From<BoundArg> for BoundFamily {
    fn from(b: BoundArg) -> Self {
        match b {
            BoundArg::Gv => BoundFamily::Gv,
            BoundArg::Ab1 => BoundFamily::Ab1,
            BoundArg::Ab2 => BoundFamily::Ab2,
            BoundArg::Tvz => BoundFamily::Tvz,
        }
    }
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct BoundsArgs {
    #[command(subcommand)]
    action: Option<BoundsCmd>,
    #[arg(long, value_enum)]
    family: Option<BoundArg>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    /// start:end:step
    #[arg(long, default_value = "0:1:0.001")]
    delta_grid: String,
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Interval of delta where an AG family beats the GV-type bound.
    Crossover {
        #[arg(long)]
        q0: u32,
        #[arg(long, value_enum, default_value = "ab2")]
        family: BoundArg,
        #[arg(long, default_value_t = 1e-3)]
        resolution: f64,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Construct(args) => construct(args).map(|_| true),
        Cmd::Encode { code, message, out } => encode(&code, &message, out.as_deref()).map(|_| true),
        Cmd::Recover { code, word, pos, partition } => recover(&code, &word, &pos, partition).map(|_| true),
        Cmd::Distance { code, workers, no_scalar_reduction } => {
            let code = load(&code)?;
            let opts = EnumerationOptions { workers, scalar_reduction: !no_scalar_reduction, cap: cap()? };
            print_json(&analysis::min_distance_exhaustive(&code, opts)?)?;
            Ok(true)
        }
        Cmd::VerifyLocality { code, exhaustive } => verify_locality(&code, exhaustive),
        Cmd::Points { curve, q0, level } => points(curve, q0, level).map(|_| true),
        Cmd::Params { family, q0, level, t } => {
            let p = match family {
                TowerFamily::Gs1 => gs_tower::gs1_params(q0, level, t)?,
                TowerFamily::Gs2 => gs_tower::gs2_params(q0, level, t)?,
            };
            print_json(&p)?;
            Ok(true)
        }
        Cmd::Bounds(args) => bounds_cmd(args).map(|_| true),
        Cmd::Roundtrip { code, trials, seed } => {
            let report = analysis::erasure_roundtrip(&load(&code)?, trials, seed)?;
            print_json(&report)?;
            Ok(report.passed())
        }
    }
}

fn cap() -> Result<u128> {
    match std::env::var("LRC_CAP") {
        Ok(v) => v.trim().parse::<f64>().map(|c| c as u128).with_context(|| format!("bad LRC_CAP value {v:?}")),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn load(path: &Path) -> Result<LinearCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let desc: CodeDescriptor =
        serde_json::from_str(&text).with_context(|| format!("parsing descriptor {}", path.display()))?;
    Ok(desc.to_code()?)
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("--{flag} is required for --family {family}"))
}

fn construct(args: ConstructArgs) -> Result<()> {
    let (code, params): (LinearCode, Vec<(&'static str, i64)>) = match args.family {
        ConstructFamily::TamoBarg => {
            let p = need(args.p, "p", "tamo-barg")?;
            let r = need(args.r, "r", "tamo-barg")?;
            let k = need(args.k, "k", "tamo-barg")?;
            if args.cosets.is_empty() {
                bail!("--cosets is required for --family tamo-barg (comma-separated representatives)");
            }
            let field = Arc::new(FiniteField::new(p, args.a, None)?);
            let reps: Vec<Elem> = args
                .cosets
                .iter()
                .map(|&c| {
                    if c >= field.order() {
                        bail!("coset representative {c} is not an element of GF({})", field.order());
                    }
                    Ok(field.from_coeff_int(c))
                })
                .collect::<Result<_>>()?;
            let gp = tamo_barg::good_poly_multiplicative(field, r, &reps)?;
            let params = vec![("p", p as i64), ("a", args.a as i64), ("r", r as i64), ("k", k as i64)];
            (tamo_barg::tb_code(&gp, k)?, params)
        }
        ConstructFamily::HermitianY | ConstructFamily::HermitianX | ConstructFamily::Gs2L2 => {
            let name = match args.family {
                ConstructFamily::HermitianY => "hermitian-y",
                ConstructFamily::HermitianX => "hermitian-x",
                _ => "gs2-l2",
            };
            let q0 = need(args.q0, "q0", name)?;
            let t = need(args.t, "t", name)?;
            let code = match args.family {
                ConstructFamily::HermitianY => hermitian::code_proj_y(q0, t)?,
                ConstructFamily::HermitianX => hermitian::code_proj_x(q0, t)?,
                _ => gs_tower::gs2_code_l2(q0, t)?,
            };
            (code, vec![("q0", q0 as i64), ("t", t as i64)])
        }
        ConstructFamily::HermitianLrc2 => {
            let q0 = need(args.q0, "q0", "hermitian-lrc2")?;
            (hermitian::code_lrc2(q0)?, vec![("q0", q0 as i64)])
        }
    };
    let desc = CodeDescriptor::from_code(&code).with_params(params);
    let json = serde_json::to_string_pretty(&desc)? + "\n";
    match &args.out {
        Some(p) => fs::write(p, json).with_context(|| format!("writing {}", p.display()))?,
        None => io::stdout().write_all(json.as_bytes())?,
    }
    let r: Vec<String> = desc.r.iter().map(usize::to_string).collect();
    let summary = format!("n={} k={} r={} d_designed={}", desc.n, desc.k, r.join(","), desc.designed_distance);
    if args.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn parse_wire_list(field: &FiniteField, s: &str) -> Result<Vec<Elem>> {
    s.split(',')
        .map(|t| {
            let w: i64 = t.trim().parse().with_context(|| format!("bad log index {t:?}"))?;
            Ok(field.from_wire(w)?)
        })
        .collect()
}

fn label_header(code: &LinearCode) -> Vec<String> {
    match code.labels().first().map(Vec::len) {
        None => vec![],
        Some(1) => vec!["point".into()],
        Some(2) => vec!["x".into(), "y".into()],
        Some(m) => (1..=m).map(|i| format!("x{i}")).collect(),
    }
}

fn encode(path: &Path, message: &str, out: Option<&Path>) -> Result<()> {
    let code = load(path)?;
    let msg = parse_wire_list(code.field(), message)?;
    let word = code.encode(&msg)?;
    let sink: Box<dyn Write> = match out {
        Some(p) => Box::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(sink);
    let mut header = vec!["index".to_string()];
    header.extend(label_header(&code));
    header.push("symbol".into());
    w.write_record(&header)?;
    for (i, s) in word.iter().enumerate() {
        let mut rec = vec![i.to_string()];
        if let Some(l) = code.labels().get(i) {
            rec.extend(l.iter().map(|e| e.to_wire().to_string()));
        }
        rec.push(s.to_wire().to_string());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(serde::Deserialize)]
struct WordRow {
    index: usize,
    present: u8,
    symbol: i64,
}

#[derive(Serialize)]
struct RecoverReport {
    position: usize,
    partition: usize,
    value: i64,
    recovering_set: Vec<usize>,
    /// Interpolant coefficients, low to high, as log indices.
    interpolant: Vec<i64>,
}

fn recover(path: &Path, word_path: &Path, pos: &str, partition: usize) -> Result<()> {
    let code = load(path)?;
    let f = code.field();
    let mut word = vec![None; code.len()];
    let mut seen = vec![false; code.len()];
    let mut rdr = csv::Reader::from_path(word_path).with_context(|| format!("reading {}", word_path.display()))?;
    for row in rdr.deserialize() {
        let row: WordRow = row?;
        if row.index >= code.len() || seen[row.index] {
            bail!("word file: index {} out of range or repeated", row.index);
        }
        seen[row.index] = true;
        if row.present != 0 {
            word[row.index] = Some(f.from_wire(row.symbol)?);
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        bail!("word file is missing coordinate {i}");
    }
    let pos = if pos.contains(',') {
        let label = parse_wire_list(f, pos)?;
        code.find_label(&label).ok_or_else(|| anyhow!("no coordinate has label {pos}"))?
    } else {
        pos.trim().parse().with_context(|| format!("bad position {pos:?}"))?
    };
    if partition == 0 {
        bail!("--partition counts from 1");
    }
    let rec = local_recovery(&code, &word, pos, partition - 1)?;
    print_json(&RecoverReport {
        position: pos,
        partition,
        value: rec.value.to_wire(),
        recovering_set: rec.recovering_set,
        interpolant: rec.interpolant.coeffs().iter().map(|e| e.to_wire()).collect(),
    })
}

#[derive(Serialize)]
struct LocalityEntry {
    partition: usize,
    r: usize,
    verified: bool,
    certificates: usize,
    failing_coordinate: Option<usize>,
    exhaustive: Option<bool>,
}

fn verify_locality(path: &Path, exhaustive: bool) -> Result<bool> {
    let code = load(path)?;
    let mut entries = Vec::new();
    for (which, r) in code.localities().into_iter().enumerate() {
        let sets = analysis::recovering_sets(&code, which)?;
        let (verified, certificates, failing) = match analysis::verify_locality(&code, &sets) {
            Ok(certs) => (certs.iter().all(|c| analysis::certificate_is_dual(&code, c)), certs.len(), None),
            Err(f) => (false, 0, Some(f.coordinate)),
        };
        let exhaustive = if exhaustive {
            Some(analysis::verify_locality_exhaustive(&code, &sets, cap()?)?.is_none())
        } else {
            None
        };
        entries.push(LocalityEntry { partition: which + 1, r, verified, certificates, failing_coordinate: failing, exhaustive });
    }
    print_json(&entries)?;
    Ok(entries.iter().all(|e| e.verified && e.exhaustive != Some(false)))
}

fn points(curve: Curve, q0: u32, level: u32) -> Result<()> {
    let mut out = io::stdout().lock();
    match curve {
        Curve::Hermitian => {
            let geom = hermitian::enumerate_points(q0)?;
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["index", "x", "y"])?;
            let order = geom.columns().iter().flat_map(|c| c.points.iter().copied());
            for (i, p) in order.enumerate() {
                let pt = geom.points()[p];
                w.write_record([i.to_string(), pt.x.to_wire().to_string(), pt.y.to_wire().to_string()])?;
            }
            w.flush()?;
        }
        Curve::GsTower => {
            let pts = gs_tower::enumerate_tower_points(q0, level)?;
            let header: Vec<String> =
                std::iter::once("x1".to_string()).chain((2..=level).map(|i| format!("z{i}"))).collect();
            writeln!(out, "{}", header.join("\t"))?;
            for p in pts {
                let row: Vec<String> = p.coords.iter().map(|e| e.to_wire().to_string()).collect();
                writeln!(out, "{}", row.join("\t"))?;
            }
        }
    }
    Ok(())
}

fn parse_grid(s: &str) -> Result<(f64, f64, f64)> {
    let parts: Vec<f64> = s
        .split(':')
        .map(|t| t.trim().parse::<f64>().with_context(|| format!("bad --delta-grid component {t:?}")))
        .collect::<Result<_>>()?;
    match parts[..] {
        [a, b, c] => Ok((a, b, c)),
        _ => bail!("--delta-grid must be start:end:step"),
    }
}

#[derive(Serialize)]
struct CrossoverReport {
    q0: u32,
    q: u32,
    family: BoundFamily,
    r: u32,
    interval: Option<[f64; 2]>,
    sensitivity: Vec<Sensitivity>,
}

#[derive(Serialize)]
struct Sensitivity {
    gv_r: u32,
    interval: Option<[f64; 2]>,
}

fn bounds_cmd(args: BoundsArgs) -> Result<()> {
    let grid = SGrid::default();
    if let Some(BoundsCmd::Crossover { q0, family, resolution }) = args.action {
        let family = BoundFamily::from(family);
        let c = bounds::crossover_interval(q0, family, resolution, &grid)?;
        let sensitivity = [c.r - 1, c.r + 1]
            .into_iter()
            .filter(|&r| r >= 1)
            .map(|r| {
                let s = bounds::crossover_with_locality(q0, family, r, resolution, &grid)?;
                Ok(Sensitivity { gv_r: r, interval: s.interval.map(|(a, b)| [a, b]) })
            })
            .collect::<Result<_>>()?;
        return print_json(&CrossoverReport {
            q0,
            q: q0 * q0,
            family,
            r: c.r,
            interval: c.interval.map(|(a, b)| [a, b]),
            sensitivity,
        });
    }
    let family = BoundFamily::from(args.family.ok_or_else(|| anyhow!("--family is required"))?);
    let q = args.q.ok_or_else(|| anyhow!("--q is required"))?;
    let r = match family {
        BoundFamily::Gv => args.r.ok_or_else(|| anyhow!("--r is required for --family gv"))?,
        _ => args.r.unwrap_or(0),
    };
    let (start, end, step) = parse_grid(&args.delta_grid)?;
    let pts = bounds::sweep(family, q, r, start, end, step, &grid)?;
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(["delta", "rate"])?;
    for p in pts {
        w.write_record([format!("{:.6}", p.delta), format!("{:.10}", p.rate)])?;
    }
    w.flush()?;
    Ok(())
}
