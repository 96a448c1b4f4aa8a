//! The `x6` command line tool. [`run`] does all the work so it can be driven
//! from tests with in-memory streams.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use hadamard6::catalog::{
    bn_b, bn_circulant_witness, dita_circulant_witness, dita_d, generalized_fourier, load_matrix,
    CirculantRepWitness,
};
use hadamard6::equivalence::{
    are_equivalent, is_self_adjoint, partition_classes, EquivalenceWitness, EQUIV_TOL,
};
use hadamard6::family::{
    all_variants, block_params_from_alpha, h_block, x6_from_alpha, FamilyVariant,
};
use hadamard6::linalg::{fourier_matrix, hadamard_residual, DEFAULT_TOL};
use hadamard6::mub::{mub_from_alpha, MubReport};
use hadamard6::region::{sample_region, write_region_csv};
use hadamard6::{AlphaPoint, ComplexMatrix, DiagonalPhases, Error, PhaseValue};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Tolerance for the pass/fail line of `mub`.
pub const MUB_REPORT_TOL: f64 = 1e-7;

#[derive(Parser, Debug)]
#[command(
    name = "x6",
    version,
    about = "Complex Hadamard matrices of order 6 from the X6 family"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build X6(alpha) and report its Hadamard residual.
    Construct {
        /// Point of the region as `re,im`.
        #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true)]
        alpha: AlphaPoint,
        /// Emit the transposed family member.
        #[arg(long)]
        transpose: bool,
        /// Emit the undephased block form `[[A, B], [B*, -A*]]`.
        #[arg(long)]
        block: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a matrix file for the Hadamard property and self-adjointness.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Classify a grid of alpha values and write CSV.
    Region {
        /// `xmin,xmax,ymin,ymax`.
        #[arg(long, value_parser = parse_bounds, allow_hyphen_values = true)]
        bounds: [f64; 4],
        /// `nx,ny`.
        #[arg(long, value_parser = parse_grid)]
        grid: (usize, usize),
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for an equivalence `A = D1 P B Q D2`.
    Equiv {
        #[arg(short = 'a')]
        a: PathBuf,
        #[arg(short = 'b')]
        b: PathBuf,
        #[arg(long, default_value_t = EQUIV_TOL)]
        tol: f64,
    },
    /// Print a catalog matrix; parameters are phases in radians.
    Catalog {
        #[arg(long, value_enum)]
        name: CatalogName,
        /// Comma-separated: `t` for dita_d, `x,y,z` for bn_b, `n` for fourier, `a,b` for gfourier.
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        /// Print the 2-circulant representation instead (dita_d, bn_b).
        #[arg(long)]
        witness: bool,
    },
    /// Build the unbiased bases Z1, Z2 from the seed X6(alpha)/sqrt6.
    Mub {
        #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true)]
        alpha: AlphaPoint,
        /// Write `<prefix>z1.mat` and `<prefix>z2.mat`.
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Print all 36 root assignments and their equivalence classes.
    Variants {
        #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true)]
        alpha: AlphaPoint,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum CatalogName {
    DitaD,
    BnB,
    Fourier,
    Gfourier,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Validation(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io { .. } => Failure::Io(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

type CmdResult = Result<i32, Failure>;

fn parse_reals(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(format!("not a finite decimal: {t:?}")),
            }
        })
        .collect()
}

fn parse_alpha(s: &str) -> Result<AlphaPoint, String> {
    match parse_reals(s)?.as_slice() {
        &[re, im] => Ok(AlphaPoint::from_parts(re, im)),
        _ => Err("expected re,im".into()),
    }
}

fn parse_bounds(s: &str) -> Result<[f64; 4], String> {
    parse_reals(s)?
        .try_into()
        .map_err(|_| "expected xmin,xmax,ymin,ymax".to_string())
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [nx, ny] => {
            let n = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
            Ok((n(nx)?, n(ny)?))
        }
        _ => Err("expected nx,ny".into()),
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn write_file(
    path: &Path,
    body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<(), Failure> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut w = BufWriter::new(file);
    body(&mut w)
        .and_then(|_| w.flush())
        .map_err(|e| io_err(path, e))
}

fn out_err(e: std::io::Error) -> Failure {
    Failure::Io(format!("stdout: {e}"))
}

fn phases_row(d: &DiagonalPhases) -> ComplexMatrix {
    d.to_row()
}

fn perm_line(label: &str, p: &[usize]) -> String {
    let items: Vec<String> = p.iter().map(usize::to_string).collect();
    format!("{label} {}", items.join(" "))
}

/// Text block for an equivalence witness, matrices in the standard text format.
pub fn format_equivalence_witness(w: &EquivalenceWitness) -> String {
    format!(
        "{}\n{}\n# left_diag\n{}# right_diag\n{}",
        perm_line("row_perm", &w.row_perm),
        perm_line("col_perm", &w.col_perm),
        phases_row(&w.left_diag),
        phases_row(&w.right_diag),
    )
}

/// Text block for a 2-circulant representation witness.
pub fn format_circulant_witness(w: &CirculantRepWitness) -> String {
    format!(
        "{}\n{}\n# left_diag\n{}# right_diag\n{}# expected\n{}",
        perm_line("row_perm", &w.row_perm),
        perm_line("col_perm", &w.col_perm),
        phases_row(&w.left_diag),
        phases_row(&w.right_diag),
        w.expected,
    )
}

pub fn format_mub_report(r: &MubReport) -> String {
    let mut s = String::new();
    for (label, u) in r.labels.iter().zip(&r.unitarity) {
        s += &format!("unitarity {label} {u:.3e}\n");
    }
    for &(i, j, d) in &r.pairs {
        s += &format!("unbiased {} {} {d:.3e}\n", r.labels[i], r.labels[j]);
    }
    let verdict = if r.passes() { "PASS" } else { "FAIL" };
    s += &format!(
        "max_deviation {:.3e} tol {:.1e} {verdict}\n",
        r.max_deviation(),
        r.tol
    );
    s
}

/// The matrix printed by `construct`.
pub fn construct_matrix(
    alpha: AlphaPoint,
    transpose: bool,
    block: bool,
) -> hadamard6::Result<ComplexMatrix> {
    let m = if block {
        h_block(&block_params_from_alpha(alpha)?)
    } else {
        x6_from_alpha(alpha, FamilyVariant::Standard)?
    };
    Ok(if transpose { m.transpose() } else { m })
}

/// The matrix printed by `catalog` (without `--witness`).
fn catalog_matrix(name: CatalogName, params: &[f64]) -> Result<ComplexMatrix, Failure> {
    let p = PhaseValue::from_angle;
    let arity = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(Failure::Usage(format!(
                "{name:?} takes {n} parameter(s), got {}",
                params.len()
            )))
        }
    };
    match name {
        CatalogName::DitaD => {
            arity(1)?;
            Ok(dita_d(p(params[0])))
        }
        CatalogName::BnB => {
            arity(3)?;
            Ok(bn_b(p(params[0]), p(params[1]), p(params[2])))
        }
        CatalogName::Fourier => {
            arity(1)?;
            let n = params[0];
            if n < 1.0 || n.fract() != 0.0 || n > 64.0 {
                return Err(Failure::Validation(format!(
                    "fourier order must be an integer in 1..=64, got {n}"
                )));
            }
            let n = n as usize;
            Ok(fourier_matrix(n).scale((n as f64).sqrt()))
        }
        CatalogName::Gfourier => {
            arity(2)?;
            Ok(generalized_fourier(params[0], params[1]))
        }
    }
}

fn catalog_params(name: CatalogName, raw: Option<&str>) -> Result<Vec<f64>, Failure> {
    match raw {
        Some(s) => parse_reals(s).map_err(Failure::Usage),
        None => Ok(match name {
            CatalogName::DitaD => vec![0.0],
            CatalogName::BnB => vec![0.0; 3],
            CatalogName::Fourier => vec![6.0],
            CatalogName::Gfourier => vec![0.0; 2],
        }),
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Construct {
            alpha,
            transpose,
            block,
            output,
        } => {
            let m = construct_matrix(alpha, transpose, block)?;
            let res = hadamard_residual(&m)?;
            let text = format!("# hadamard_residual {res:.3e}\n{m}");
            match output {
                Some(path) => {
                    write_file(&path, |w| w.write_all(text.as_bytes()))?;
                    writeln!(out, "hadamard_residual {res:.3e}").map_err(out_err)?;
                    writeln!(out, "wrote {}", path.display()).map_err(out_err)?;
                }
                None => out.write_all(text.as_bytes()).map_err(out_err)?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify { input, tol } => {
            let m = load_matrix(&input)?;
            let res = hadamard_residual(&m)?;
            let adjoint = is_self_adjoint(&m, tol);
            let ok = res <= tol;
            writeln!(out, "hadamard_residual {res:.3e}").map_err(out_err)?;
            writeln!(out, "self_adjoint {adjoint}").map_err(out_err)?;
            writeln!(
                out,
                "{} at tol={tol:e}",
                if ok { "HADAMARD" } else { "NOT HADAMARD" }
            )
            .map_err(out_err)?;
            Ok(if ok { EXIT_OK } else { EXIT_VALIDATION })
        }
        Command::Region {
            bounds,
            grid,
            output,
        } => {
            let [xmin, xmax, ymin, ymax] = bounds;
            let samples = sample_region(xmin, xmax, ymin, ymax, grid.0, grid.1)?;
            match output {
                Some(path) => {
                    write_file(&path, |w| write_region_csv(w, &samples))?;
                    writeln!(out, "wrote {} samples to {}", samples.len(), path.display())
                        .map_err(out_err)?;
                }
                None => write_region_csv(&mut *out, &samples).map_err(out_err)?,
            }
            Ok(EXIT_OK)
        }
        Command::Equiv { a, b, tol } => {
            let (ma, mb) = (load_matrix(&a)?, load_matrix(&b)?);
            match are_equivalent(&ma, &mb, tol)? {
                Some(w) => {
                    writeln!(out, "EQUIVALENT").map_err(out_err)?;
                    writeln!(out, "defect {:.3e}", w.defect(&ma, &mb)).map_err(out_err)?;
                    out.write_all(format_equivalence_witness(&w).as_bytes())
                        .map_err(out_err)?;
                }
                None => writeln!(out, "INEQUIVALENT at tol={tol:e}").map_err(out_err)?,
            }
            Ok(EXIT_OK)
        }
        Command::Catalog {
            name,
            params,
            witness,
        } => {
            let params = catalog_params(name, params.as_deref())?;
            let m = catalog_matrix(name, &params)?;
            if witness {
                let p = PhaseValue::from_angle;
                let w = match name {
                    CatalogName::DitaD => dita_circulant_witness(p(params[0])),
                    CatalogName::BnB => {
                        bn_circulant_witness(p(params[0]), p(params[1]), p(params[2]))
                    }
                    _ => return Err(Failure::Usage(format!("{name:?} has no circulant witness"))),
                };
                writeln!(out, "# defect {:.3e}", w.defect(&m)).map_err(out_err)?;
                out.write_all(format_circulant_witness(&w).as_bytes())
                    .map_err(out_err)?;
            } else {
                write!(out, "{m}").map_err(out_err)?;
            }
            Ok(EXIT_OK)
        }
        Command::Mub { alpha, output } => {
            let t = mub_from_alpha(alpha)?;
            let report = MubReport {
                tol: MUB_REPORT_TOL,
                ..t.report.clone()
            };
            writeln!(out, "reconstruction {:.3e}", t.reconstruction).map_err(out_err)?;
            out.write_all(format_mub_report(&report).as_bytes())
                .map_err(out_err)?;
            match output {
                Some(prefix) => {
                    for (suffix, m) in [("z1.mat", &t.z1), ("z2.mat", &t.z2)] {
                        let path = PathBuf::from(format!("{prefix}{suffix}"));
                        write_file(&path, |w| write!(w, "{m}"))?;
                        writeln!(out, "wrote {}", path.display()).map_err(out_err)?;
                    }
                }
                None => {
                    write!(out, "# Z1\n{}# Z2\n{}", t.z1, t.z2).map_err(out_err)?;
                }
            }
            Ok(if report.passes() {
                EXIT_OK
            } else {
                EXIT_VALIDATION
            })
        }
        Command::Variants { alpha } => {
            let variants = all_variants(alpha)?;
            for (k, m) in variants.iter().enumerate() {
                write!(out, "# variant {k}\n{m}").map_err(out_err)?;
            }
            let standard = x6_from_alpha(alpha, FamilyVariant::Standard)?;
            let transpose = x6_from_alpha(alpha, FamilyVariant::Transpose)?;
            let classes = partition_classes(&variants, EQUIV_TOL)?;
            writeln!(out, "classes {}", classes.len()).map_err(out_err)?;
            for (c, members) in classes.iter().enumerate() {
                let rep = &variants[members[0]];
                let is_std = are_equivalent(rep, &standard, EQUIV_TOL)?.is_some();
                let is_tr = are_equivalent(rep, &transpose, EQUIV_TOL)?.is_some();
                let label = match (is_std, is_tr) {
                    (true, true) => "standard,transpose",
                    (true, false) => "standard",
                    (false, true) => "transpose",
                    (false, false) => "other",
                };
                let idx: Vec<String> = members.iter().map(usize::to_string).collect();
                writeln!(out, "class {c} ({label}): {}", idx.join(" ")).map_err(out_err)?;
            }
            Ok(EXIT_OK)
        }
    }
}

/// Parse `argv` (including the program name) and execute. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(rendered.as_bytes());
                EXIT_OK
            };
        }
    };
    let result = dispatch(cli.command, out);
    let _ = out.flush();
    match result {
        Ok(code) => code,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Validation(m) => (EXIT_VALIDATION, m),
                Failure::Io(m) => (EXIT_IO, m),
            };
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
