//! Command-line front end. [`run`] takes the full argument list (program
//! name first) and returns the exit code with the text to print: 0 on
//! success, 1 for domain errors such as non-gentle input, 2 for usage and
//! parse errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::ag::{ag_invariant, format_ag, AgInvariant};
use crate::atilde::{
    decompose, free_arrows, generate_normal_form, is_atilde_branched, is_m_cluster_tilted_atilde,
    params_of, BranchParams,
};
use crate::gerstenhaber::gerstenhaber_nontrivial;
use crate::hochschild::{hh_sequence, FieldSpec};
use crate::quiver::BoundQuiver;
use crate::parse_bound_quiver;

/// Seed for the sign solver; the invariant does not depend on it.
const SEED: u64 = 0;

#[derive(Debug, Parser)]
#[command(name = "gentle-hh", version, about = "Derived invariants of gentle bound quivers")]
struct Cli {
    /// Print a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct MArg {
    /// Saturated cycles have m + 2 arrows.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    m: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Gentleness, admissibility and connectivity.
    Validate { file: PathBuf },
    /// The AG-invariant.
    Ag { file: PathBuf },
    /// Hochschild cohomology dimensions.
    Hh {
        file: PathBuf,
        #[arg(long = "char", default_value = "0")]
        characteristic: FieldSpec,
        #[arg(long, default_value_t = 24)]
        max: u64,
    },
    /// Root cycle, rays and the parameters (s1, s2, k1, k2, r).
    Params {
        file: PathBuf,
        #[command(flatten)]
        m: MArg,
    },
    /// m-cluster tilted and Ã-branched verdicts.
    Classify {
        file: PathBuf,
        #[command(flatten)]
        m: MArg,
    },
    /// Write the normal form with the given parameters.
    Generate {
        #[command(flatten)]
        m: MArg,
        #[arg(long)]
        s1: u64,
        #[arg(long)]
        s2: u64,
        #[arg(long)]
        k1: u64,
        #[arg(long)]
        k2: u64,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Compare invariants of two quivers.
    Compare {
        file1: PathBuf,
        file2: PathBuf,
        #[command(flatten)]
        m: MArg,
        #[arg(long, default_value_t = 24)]
        max: u64,
    },
    /// Whether cup product and Lie bracket are nontrivial.
    Gerstenhaber {
        file: PathBuf,
        #[command(flatten)]
        m: MArg,
        #[arg(long = "char", default_value = "0")]
        characteristic: FieldSpec,
    },
    /// List the m-saturated cycles.
    Saturated {
        file: PathBuf,
        #[command(flatten)]
        m: MArg,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn domain(message: impl ToString) -> Failure {
    Failure {
        code: 1,
        message: message.to_string(),
    }
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

#[derive(Default)]
struct Report {
    text: String,
    phi: Value,
    hh: Value,
    params: Value,
    verdicts: Value,
}

impl Report {
    fn json(&self) -> String {
        let obj = json!({
            "phi": self.phi,
            "hh": self.hh,
            "params": self.params,
            "verdicts": self.verdicts,
        });
        format!("{}\n", serde_json::to_string_pretty(&obj).expect("plain JSON values"))
    }
}

pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => return (e.exit_code(), e.render().to_string()),
    };
    match dispatch(&cli.command) {
        Ok(report) if cli.json => (0, report.json()),
        Ok(report) => (0, report.text),
        Err(f) => (f.code, format!("error: {}\n", f.message)),
    }
}

fn load(path: &Path) -> Result<BoundQuiver, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_bound_quiver(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn phi_of(bq: &BoundQuiver) -> Result<AgInvariant, Failure> {
    ag_invariant(bq, SEED).map_err(domain)
}

fn dims(bq: &BoundQuiver, phi: &AgInvariant, max: u64, k: FieldSpec) -> Vec<u64> {
    hh_sequence(phi, bq.vertex_count() as u64, bq.arrow_count() as u64, max, k).dims
}

fn dispatch(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::Validate { file } => validate(&load(file)?),
        Command::Ag { file } => {
            let phi = phi_of(&load(file)?)?;
            Ok(Report {
                text: format!("{}\n", format_ag(&phi)),
                phi: json!(phi),
                ..Report::default()
            })
        }
        Command::Hh {
            file,
            characteristic,
            max,
        } => {
            let bq = load(file)?;
            let phi = phi_of(&bq)?;
            let d = dims(&bq, &phi, *max, *characteristic);
            let mut text = format!("characteristic {}\n", characteristic.characteristic());
            for (n, x) in d.iter().enumerate() {
                let _ = writeln!(text, "HH^{n} = {x}");
            }
            Ok(Report {
                text,
                phi: json!(phi),
                hh: json!({ "char": characteristic.characteristic(), "dims": d }),
                ..Report::default()
            })
        }
        Command::Params { file, m } => params(&load(file)?, m.m),
        Command::Classify { file, m } => classify(&load(file)?, m.m),
        Command::Generate {
            m,
            s1,
            s2,
            k1,
            k2,
            r,
            output,
        } => {
            let p = BranchParams::new(m.m, *s1, *k1, *s2, *k2, *r);
            let bq = generate_normal_form(p).map_err(domain)?;
            let quiver = bq.to_text();
            let text = match output {
                Some(path) => {
                    std::fs::write(path, &quiver)
                        .map_err(|e| domain(format!("{}: {e}", path.display())))?;
                    format!("wrote {}\n", path.display())
                }
                None => quiver.clone(),
            };
            Ok(Report {
                text,
                params: json!(p),
                verdicts: json!({ "quiver": quiver }),
                ..Report::default()
            })
        }
        Command::Compare {
            file1,
            file2,
            m,
            max,
        } => compare(&load(file1)?, &load(file2)?, m.m, *max),
        Command::Gerstenhaber {
            file,
            m,
            characteristic,
        } => {
            let bq = load(file)?;
            if let Some(v) = bq.gentleness().violations.first() {
                return Err(domain(format!("not gentle: {v}")));
            }
            let v = gerstenhaber_nontrivial(&bq, *characteristic, bq.arrow_count());
            let sat = bq.saturated_cycles(m.m as usize).len();
            let mut text = v.describe(&bq);
            let _ = writeln!(text, "{} saturated cycle(s) for m = {}", sat, m.m);
            Ok(Report {
                text,
                verdicts: json!({
                    "cup": v.cup,
                    "bracket": v.bracket,
                    "witness": v.witness.as_ref().map(|w| w.path.names(&bq)),
                    "saturated_cycles": sat,
                }),
                ..Report::default()
            })
        }
        Command::Saturated { file, m } => {
            let bq = load(file)?;
            if let Some(v) = bq.gentleness().violations.first() {
                return Err(domain(format!("not gentle: {v}")));
            }
            let cycles = bq.find_saturated_cycles(m.m as usize);
            let mut text = format!("{} saturated cycle(s) for m = {}\n", cycles.len(), m.m);
            for c in &cycles {
                let _ = writeln!(text, "{}", c.join(" "));
            }
            Ok(Report {
                text,
                verdicts: json!({ "saturated_cycles": cycles }),
                ..Report::default()
            })
        }
    }
}

fn validate(bq: &BoundQuiver) -> Result<Report, Failure> {
    let report = bq.gentleness();
    let relation_free = bq.relation_free_cycle();
    let mut text = format!(
        "quiver {}: {} vertices, {} arrows, {} relations\n",
        bq.name(),
        bq.vertex_count(),
        bq.arrow_count(),
        bq.relation_count()
    );
    let yes = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(text, "gentle: {}", yes(report.is_gentle()));
    for v in &report.violations {
        let _ = writeln!(text, "  {v}");
    }
    let _ = writeln!(text, "admissible: {}", yes(relation_free.is_none()));
    if let Some(c) = &relation_free {
        let _ = writeln!(text, "  relation-free cycle: {}", bq.names(c).join(" "));
    }
    let _ = writeln!(text, "connected: {}", yes(bq.is_connected()));
    if !report.is_gentle() || relation_free.is_some() {
        return Err(domain(text.trim_end()));
    }
    Ok(Report {
        text,
        verdicts: json!({
            "gentle": true,
            "admissible": true,
            "connected": bq.is_connected(),
        }),
        ..Report::default()
    })
}

fn params(bq: &BoundQuiver, m: u64) -> Result<Report, Failure> {
    let dec = decompose(bq, m).map_err(domain)?;
    let raw = params_of(&dec, m);
    let p = raw.canonical();
    let free = free_arrows(bq, m, &dec);
    let mut text = format!("{p}\n");
    text.push_str(&dec.summary(bq));
    let _ = writeln!(text, "free arrows: cw {} ccw {}", free.cw, free.ccw);
    if raw != p {
        text.push_str("orientation reversed for the canonical form\n");
    }
    Ok(Report {
        text,
        params: json!(p),
        verdicts: json!({ "free_arrows": free }),
        ..Report::default()
    })
}

fn classify(bq: &BoundQuiver, m: u64) -> Result<Report, Failure> {
    let tilted = is_m_cluster_tilted_atilde(bq, m);
    let branched = is_atilde_branched(bq, m);
    Ok(Report {
        text: format!("{tilted}{branched}"),
        verdicts: json!({
            "m_cluster_tilted": tilted,
            "atilde_branched": branched,
        }),
        ..Report::default()
    })
}

const COMPARE_CHARS: [u64; 3] = [0, 2, 3];

fn compare(a: &BoundQuiver, b: &BoundQuiver, m: u64, max: u64) -> Result<Report, Failure> {
    let (pa, pb) = (phi_of(a)?, phi_of(b)?);
    let phi_equal = pa == pb;
    let (va, vb) = (a.vertex_count(), b.vertex_count());
    let mut text = String::new();
    let _ = writeln!(text, "phi({}) = {}", a.name(), format_ag(&pa));
    let _ = writeln!(text, "phi({}) = {}", b.name(), format_ag(&pb));
    let _ = writeln!(text, "phi equal: {phi_equal}");
    let _ = writeln!(
        text,
        "|Q0|: {va} vs {vb} ({})",
        if va == vb { "equal" } else { "different" }
    );
    let mut hh_json = serde_json::Map::new();
    let mut hh_equal = true;
    for c in COMPARE_CHARS {
        let k = FieldSpec::new(c).expect("0, 2 and 3 are valid");
        let (da, db) = (dims(a, &pa, max, k), dims(b, &pb, max, k));
        let same = da == db;
        hh_equal &= same;
        let _ = writeln!(
            text,
            "HH^n for n <= {max}, char {c}: {}",
            if same { "equal" } else { "different" }
        );
        hh_json.insert(c.to_string(), json!({ "a": da, "b": db, "equal": same }));
    }
    let verdict = match (phi_equal, va == vb) {
        (false, _) if hh_equal && va == vb => {
            "same Hochschild data, different AG-invariant: not derived equivalent"
        }
        (false, _) => "different AG-invariant: not derived equivalent",
        (true, false) => "different number of vertices: not derived equivalent",
        (true, true) => {
            "AG-invariant and vertex count match (derived equivalence not decided by this tool alone)"
        }
    };
    let _ = writeln!(text, "verdict: {verdict}");
    let param = |q: &BoundQuiver| decompose(q, m).ok().map(|d| params_of(&d, m).canonical());
    let (qa, qb) = (param(a), param(b));
    for (q, p) in [(a, qa), (b, qb)] {
        if let Some(p) = p {
            let _ = writeln!(text, "params({}): {p}", q.name());
        }
    }
    Ok(Report {
        text,
        phi: json!({ "a": pa, "b": pb, "equal": phi_equal }),
        hh: Value::Object(hh_json),
        params: json!({ "a": qa, "b": qb }),
        verdicts: json!({
            "vertices": { "a": va, "b": vb, "equal": va == vb },
            "hh_equal": hh_equal,
            "verdict": verdict,
        }),
    })
}
