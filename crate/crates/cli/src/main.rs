use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zsym_core::census::{build_grading, emit, enumerate_all, run_all, CaseSpec, Format, Selection};
use zsym_core::equivalence::{
    canonical_witnesses, inequivalence_certificate, product_grading, verify_equiv, ClassicalFamily,
};
use zsym_core::gradings::{check_grading, dual_eigenspaces, Grading};
use zsym_core::io::{grading_from_str, grading_to_string};
use zsym_core::symspace::{build_space, connection_data, fixed_subalgebra};
use zsym_core::Error;

#[derive(Parser)]
#[command(name = "zsym", version, about = "Z2xZ2-gradings of classical Lie algebras and their symmetric spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum EquivFamily {
    So,
    Sp,
}

#[derive(Subcommand)]
enum Command {
    /// Build and check every classified case up to a size bound.
    Census {
        /// A, B, C, D or all.
        #[arg(long, default_value = "all")]
        family: String,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, value_enum, default_value = "markdown")]
        format: OutFormat,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include torsion and curvature arrays in JSON output.
        #[arg(long)]
        tensors: bool,
    },
    /// Check the grading axioms of a grading file.
    Verify { file: PathBuf },
    /// Run the canonical weak-equivalence witnesses of the fine product gradings.
    Equiv {
        #[arg(long, value_enum)]
        family: EquivFamily,
        /// Tensor parameter: gradings of so(2m), or of sp(4m) and sp(2m).
        #[arg(long)]
        m: usize,
    },
    /// Torsion and curvature of the canonical connections of a graded Lie algebra.
    Connection { file: PathBuf },
    /// Print the grading of a census case, e.g. `BCD_elem/Phi1/2,2`.
    Grading { case: String },
}

fn read_grading(path: &Path) -> Result<Grading> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    grading_from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Write to stdout; a closed pipe is not an error.
fn emit_stdout(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json(v: &Value) -> Result<()> {
    emit_stdout(&format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")))
}

fn census(family: &str, max_n: usize, format: OutFormat, out: Option<PathBuf>, tensors: bool) -> Result<bool> {
    let selection: Selection = family.parse().with_context(|| format!("unknown family {family}"))?;
    let specs = enumerate_all(selection, max_n);
    let reports = run_all(&specs, tensors);
    let format = match format {
        OutFormat::Json => Format::Json,
        OutFormat::Markdown => Format::Markdown,
    };
    let text = emit(&reports, format);
    match out {
        Some(p) => fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
        None => emit_stdout(&text)?,
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.id.as_str()).collect();
    eprintln!("{} cases, {} failed", reports.len(), failed.len());
    for id in &failed {
        eprintln!("  failed: {id}");
    }
    Ok(failed.is_empty())
}

fn verify(path: &Path) -> Result<bool> {
    let g = read_grading(path)?;
    let report = check_grading(&g);
    let mut ok = report.passed();
    let mut out = json!({ "carrier": g.carrier().describe(), "report": report });
    // characters are only available for exponents with Gaussian roots of unity
    match dual_eigenspaces(&g) {
        Ok(dual) => {
            let round_trip = dual == g;
            out["dual_round_trip"] = json!(round_trip);
            ok &= round_trip;
        }
        Err(Error::UnsupportedExponent(_)) => out["dual_round_trip"] = Value::Null,
        Err(e) => return Err(e.into()),
    }
    out["passed"] = json!(ok);
    print_json(&out)?;
    Ok(ok)
}

fn equiv(family: EquivFamily, m: usize) -> Result<bool> {
    if m == 0 {
        bail!("m must be positive");
    }
    let (fam, size) = match family {
        EquivFamily::So => (ClassicalFamily::SoEven, m),
        EquivFamily::Sp => (ClassicalFamily::Sp, 2 * m),
    };
    let source = product_grading(fam, 1, size)?;
    let mut ok = true;
    let mut checks = Vec::new();
    let grp = source.group();
    for cw in canonical_witnesses(fam, size)? {
        let target = product_grading(fam, cw.target, size)?;
        let forward = verify_equiv(&source, &target, &cw.witness);
        let back = verify_equiv(&target, &source, &cw.witness.inverse(source.group()));
        ok &= forward && back;
        checks.push(json!({
            "source": cw.source,
            "target": cw.target,
            "omega": (0..grp.order())
                .map(|p| format!("{}->{}", grp.name(p), grp.name(cw.witness.omega().apply_idx(grp, p))))
                .collect::<Vec<_>>(),
            "equivalent": forward,
            "inverse_equivalent": back,
        }));
    }
    // the fourth product involution needs a skew factor of even size
    let fourth = match product_grading(fam, 4, size) {
        Ok(g4) => {
            let cert = inequivalence_certificate(&source, &g4)?;
            ok &= cert.is_some();
            json!({ "applicable": true, "inequivalent": cert.is_some(), "signatures": cert })
        }
        Err(_) => json!({ "applicable": false }),
    };
    print_json(&json!({ "family": fam_name(family), "m": m, "witnesses": checks, "fourth": fourth, "passed": ok }))?;
    Ok(ok)
}

fn fam_name(f: EquivFamily) -> &'static str {
    match f {
        EquivFamily::So => "so",
        EquivFamily::Sp => "sp",
    }
}

fn connection(path: &Path) -> Result<bool> {
    let g = read_grading(path)?;
    if !check_grading(&g).passed() {
        bail!("{} is not a grading", path.display());
    }
    let s = build_space(&g)?;
    let fixed_ok = fixed_subalgebra(&g)? == *s.h();
    let data = connection_data(&s);
    let ok = fixed_ok && data.second_torsion.is_zero();
    let mut out = serde_json::to_value(&data)?;
    out["fixed_is_identity"] = json!(fixed_ok);
    print_json(&out)?;
    Ok(ok)
}

fn grading(case: &str) -> Result<bool> {
    let spec = CaseSpec::parse(case)?;
    let g = build_grading(&spec)?;
    emit_stdout(&format!("{}\n", grading_to_string(&g)))?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Census {
            family,
            max_n,
            format,
            out,
            tensors,
        } => census(&family, max_n, format, out, tensors),
        Command::Verify { file } => verify(&file),
        Command::Equiv { family, m } => equiv(family, m),
        Command::Connection { file } => connection(&file),
        Command::Grading { case } => grading(&case),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
