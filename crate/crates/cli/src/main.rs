//! Command-line pipeline for spin-quadric geometry.
//!
//! Subcommands: `classify` (kind and case per predicate), `eigen` (exact
//! squared data, floating eigenvalues, frame residuals), `param` (case
//! metadata), `sample` (CSV) and `mesh` (OBJ via stereographic
//! projection).
//!
//! Exit codes: 0 success, 1 usage error, 2 scene parse error, 3 internal
//! consistency failure (an emitted sample missed the residual bound).

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use spinquad::param::{classify_spectrum, sample_chart, ParamCase, SampleSet};
use spinquad::predicate::{PredicateKind, ReducedPredicate};
use spinquad::scene::SceneDocument;
use spinquad::spectrum::{eigenvalues, orthonormal_frame, EigenFrame, Spectrum};
use spinquad::viz::{
    emit_mesh, mesh_to_obj, samples_to_csv, weld_domain_holes, MeshBuffer, ProjectionSpec,
};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "spinquad",
    version,
    about = "Exact configuration-space obstacle surfaces for rotating scenes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Skip re-verification of emitted samples.
    #[arg(long, global = true)]
    no_verify: bool,
    /// Residual tolerance override (default 1e-9, or SPINQUAD_TOL).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Report format for classify/eigen/param.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Human,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Print kind and parameterization case per predicate.
    Classify { file: PathBuf },
    /// Print eigenvalues (exact squared products, floating values) and
    /// eigenframe residuals per predicate.
    Eigen { file: PathBuf },
    /// Print the parameterization case and its topology metadata.
    Param { file: PathBuf },
    /// Sample every proper predicate and emit CSV.
    Sample {
        file: PathBuf,
        /// Grid resolution per continuous chart parameter.
        #[arg(short = 'n', long, default_value_t = 16)]
        resolution: usize,
        /// Output path (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sample, project stereographically and write an OBJ mesh.
    Mesh {
        file: PathBuf,
        #[arg(short = 'n', long, default_value_t = 16)]
        resolution: usize,
        #[arg(short, long)]
        output: PathBuf,
        /// Projection pole: {+|-}{e12|e23|e31|e0}.
        #[arg(long, default_value = "-e0")]
        pole: String,
        /// Weld vertices across chart branches within this distance.
        #[arg(long)]
        weld: Option<f64>,
        /// Scale applied to projected coordinates.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
}

enum CliError {
    Usage(String),
    Parse(String),
    Consistency(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Consistency(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Parse(m) | CliError::Consistency(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("spinquad: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn tolerance(cli_tol: Option<f64>) -> Result<f64, CliError> {
    let tol = match cli_tol {
        Some(t) => t,
        None => match std::env::var("SPINQUAD_TOL") {
            Ok(v) => v
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("invalid SPINQUAD_TOL `{v}`")))?,
            Err(_) => spinquad::DEFAULT_TOLERANCE,
        },
    };
    if !(tol > 0.0) {
        return Err(CliError::Usage(format!("tolerance must be positive, got {tol}")));
    }
    Ok(tol)
}

fn load_scene(path: &Path) -> Result<Vec<ReducedPredicate>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let doc = SceneDocument::parse(&text)
        .map_err(|e| CliError::Parse(format!("{}:{e}", path.display())))?;
    Ok(doc.reduced_predicates())
}

/// Case for a proper predicate, `None` for improper.
fn case_of(r: &ReducedPredicate, spec: &Spectrum) -> Option<ParamCase> {
    match r.classify() {
        PredicateKind::Improper => None,
        _ => Some(classify_spectrum(spec).expect("proper predicate has a case")),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let tol = tolerance(cli.tol)?;
    match &cli.command {
        Command::Classify { file } => classify_cmd(file, cli.format),
        Command::Eigen { file } => eigen_cmd(file, cli.format),
        Command::Param { file } => param_cmd(file, cli.format),
        Command::Sample {
            file,
            resolution,
            output,
        } => sample_cmd(file, *resolution, output.as_deref(), tol, cli.no_verify),
        Command::Mesh {
            file,
            resolution,
            output,
            pole,
            weld,
            scale,
        } => mesh_cmd(
            file,
            *resolution,
            output,
            pole,
            *weld,
            *scale,
            tol,
            cli.no_verify,
        ),
    }
}

fn classify_cmd(file: &Path, format: Format) -> Result<(), CliError> {
    let preds = load_scene(file)?;
    let sep = if format == Format::Tsv { "\t" } else { " " };
    let mut out = String::new();
    for (idx, r) in preds.iter().enumerate() {
        let kind = r.classify();
        let spec = eigenvalues(r);
        let case = case_of(r, &spec)
            .map(|c| c.name().to_string())
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(out, "{idx}{sep}{kind}{sep}{case}");
    }
    print!("{out}");
    Ok(())
}

fn eigen_cmd(file: &Path, format: Format) -> Result<(), CliError> {
    let preds = load_scene(file)?;
    let mut out = String::new();
    for (idx, r) in preds.iter().enumerate() {
        let kind = r.classify();
        let spec = eigenvalues(r);
        let frame = orthonormal_frame(r).ok();
        let (ortho, recon, det) = frame
            .as_ref()
            .map(|f| frame_residuals(r, f))
            .unwrap_or((f64::NAN, f64::NAN, 0));
        match format {
            Format::Human => {
                let _ = writeln!(out, "predicate {idx}: {kind}");
                let _ = writeln!(
                    out,
                    "  a2 = {}  b2 = {}  c = {}",
                    spec.a2, spec.b2, spec.c
                );
                for l in &spec.lambdas {
                    let _ = writeln!(
                        out,
                        "  lambda[{}{}] = {:.12e}",
                        sign_char(l.alpha),
                        sign_char(l.beta),
                        l.value
                    );
                }
                match frame {
                    Some(_) => {
                        let _ = writeln!(
                            out,
                            "  frame: orthonormality {ortho:.3e}  reconstruction {recon:.3e}  det {det:+}"
                        );
                    }
                    None => {
                        let _ = writeln!(out, "  frame: none (improper predicate)");
                    }
                }
            }
            Format::Tsv => {
                let ls = spec.values();
                let frame_cols = match frame {
                    Some(_) => format!("{ortho:.3e}\t{recon:.3e}\t{det:+}"),
                    None => "-\t-\t-".into(),
                };
                let _ = writeln!(
                    out,
                    "{idx}\t{kind}\t{}\t{}\t{}\t{:.12e}\t{:.12e}\t{:.12e}\t{:.12e}\t{frame_cols}",
                    spec.a2, spec.b2, spec.c, ls[0], ls[1], ls[2], ls[3]
                );
            }
        }
    }
    print!("{out}");
    Ok(())
}

fn sign_char(s: i8) -> char {
    if s >= 0 {
        '+'
    } else {
        '-'
    }
}

/// (max |Q^T Q - I| entry, Frobenius reconstruction residual, det sign).
fn frame_residuals(r: &ReducedPredicate, frame: &EigenFrame) -> (f64, f64, i8) {
    let mut ortho: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let mut d = 0.0;
            for k in 0..4 {
                d += frame.columns[i][k] * frame.columns[j][k];
            }
            let want = if i == j { 1.0 } else { 0.0 };
            ortho = ortho.max((d - want).abs());
        }
    }
    let mf = r.spin_matrix().to_f64();
    let mut err = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let mut recon = 0.0;
            for k in 0..4 {
                recon += frame.columns[k][i] * frame.lambdas[k] * frame.columns[k][j];
            }
            err += (recon - mf[i][j]).powi(2);
        }
    }
    (ortho, err.sqrt(), frame.det_sign)
}

fn param_cmd(file: &Path, format: Format) -> Result<(), CliError> {
    let preds = load_scene(file)?;
    let sep = if format == Format::Tsv { "\t" } else { " " };
    let mut out = String::new();
    for (idx, r) in preds.iter().enumerate() {
        let kind = r.classify();
        let spec = eigenvalues(r);
        match case_of(r, &spec) {
            None => {
                let _ = writeln!(
                    out,
                    "{idx}{sep}{kind}{sep}-{sep}components=0{sep}dimension=-{sep}hole=-{sep}manifold=-"
                );
            }
            Some(case) => {
                let m = case.metadata();
                let _ = writeln!(
                    out,
                    "{idx}{sep}{kind}{sep}{case}{sep}components={}{sep}dimension={}{sep}hole={}{sep}manifold={}",
                    m.component_count, m.dimension, m.domain_hole, m.is_manifold
                );
            }
        }
    }
    print!("{out}");
    Ok(())
}

struct PreparedPredicate {
    idx: usize,
    reduced: ReducedPredicate,
    set: SampleSet,
}

/// Sample all proper predicates of the scene and verify every emitted
/// sample unless verification is disabled.
fn prepare_samples(
    file: &Path,
    resolution: usize,
    tol: f64,
    no_verify: bool,
) -> Result<Vec<PreparedPredicate>, CliError> {
    if resolution < 2 {
        return Err(CliError::Usage(format!(
            "resolution must be at least 2, got {resolution}"
        )));
    }
    let preds = load_scene(file)?;
    let mut out = Vec::new();
    for (idx, r) in preds.into_iter().enumerate() {
        let spec = eigenvalues(&r);
        let Some(case) = case_of(&r, &spec) else {
            eprintln!("spinquad: warning: predicate {idx} is an improper predicate; skipped");
            continue;
        };
        let frame = orthonormal_frame(&r).expect("frame exists for proper predicates");
        let set = sample_chart(&spec, &case, &frame, resolution).map_err(|e| {
            CliError::Consistency(format!("predicate {idx}: chart evaluation failed: {e}"))
        })?;
        if !no_verify {
            verify_samples(idx, &r, &set, tol)?;
        }
        out.push(PreparedPredicate {
            idx,
            reduced: r,
            set,
        });
    }
    Ok(out)
}

fn verify_samples(
    idx: usize,
    r: &ReducedPredicate,
    set: &SampleSet,
    tol: f64,
) -> Result<(), CliError> {
    let m = r.spin_matrix();
    let scaled = tol * (1.0 + m.frobenius_norm());
    for s in &set.samples {
        let residual = m.evaluate(s.spinor).abs();
        if residual > scaled {
            return Err(CliError::Consistency(format!(
                "predicate {idx}: sample residual {residual:.3e} exceeds {scaled:.3e}"
            )));
        }
        let unit = (s.spinor.norm_sqr() - 1.0).abs();
        if unit > 1e-12 {
            return Err(CliError::Consistency(format!(
                "predicate {idx}: sample norm deviates by {unit:.3e}"
            )));
        }
    }
    Ok(())
}

fn sample_cmd(
    file: &Path,
    resolution: usize,
    output: Option<&Path>,
    tol: f64,
    no_verify: bool,
) -> Result<(), CliError> {
    let prepared = prepare_samples(file, resolution, tol, no_verify)?;
    let mut csv = String::from("s12,s23,s31,s0,chart,alpha,beta_or_h\n");
    for p in &prepared {
        let body = samples_to_csv(&p.set, &format!("p{}/", p.idx));
        csv.push_str(body.split_once('\n').map(|(_, rest)| rest).unwrap_or(""));
    }
    write_output(output, &csv)
}

#[allow(clippy::too_many_arguments)]
fn mesh_cmd(
    file: &Path,
    resolution: usize,
    output: &Path,
    pole: &str,
    weld: Option<f64>,
    scale: f64,
    tol: f64,
    no_verify: bool,
) -> Result<(), CliError> {
    let Some((axis, positive)) = ProjectionSpec::parse_pole(pole) else {
        return Err(CliError::Usage(format!(
            "invalid pole `{pole}`; expected {{+|-}}{{e12|e23|e31|e0}}"
        )));
    };
    if let Some(eps) = weld {
        if !(eps > 0.0) {
            return Err(CliError::Usage(format!(
                "weld epsilon must be positive, got {eps}"
            )));
        }
    }
    if !(scale > 0.0) {
        return Err(CliError::Usage(format!("scale must be positive, got {scale}")));
    }
    let spec = ProjectionSpec {
        axis,
        positive,
        scale,
    };
    let prepared = prepare_samples(file, resolution, tol, no_verify)?;
    let mut combined = MeshBuffer::default();
    for p in &prepared {
        if p.set.is_empty() {
            eprintln!(
                "spinquad: warning: predicate {} has an empty surface; skipped",
                p.idx
            );
            continue;
        }
        match emit_mesh(&p.set, &spec) {
            Ok(mut mesh) => {
                mesh.branch_names = mesh
                    .branch_names
                    .iter()
                    .map(|n| format!("p{}/{}", p.idx, n))
                    .collect();
                let mesh = match weld {
                    Some(eps) => weld_domain_holes(&mesh, eps),
                    None => mesh,
                };
                combined.append(mesh);
            }
            Err(e) => {
                eprintln!(
                    "spinquad: warning: predicate {} emitted no mesh ({e}); skipped",
                    p.idx
                );
            }
        }
        let _ = &p.reduced;
    }
    if combined.is_empty() {
        eprintln!("spinquad: warning: mesh is empty");
    }
    write_output(Some(output), &mesh_to_obj(&combined))
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(p) => std::fs::write(p, content)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
    }
}
