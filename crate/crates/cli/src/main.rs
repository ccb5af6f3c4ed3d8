use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;

use salem_core::arith::{parse_rational, squarefree_part};
use salem_core::census::{
    census_report, enumerate_salem, CensusOptions, CensusQuery, ConstantsBundle, DEFAULT_BUDGET,
};
use salem_core::diophantine::{
    count_report, generate_primitive_solutions, lattice_count, ConvexRegion, CountMethod,
    LatticeVariant,
};
use salem_core::poly::{Classifier, PalindromicPolynomial, DEFAULT_PRECISION};
use salem_core::quadform::{integralize, QuadraticForm, RatMatrix, RationalIsometry};
use salem_core::report::{
    ClassificationRecord, CompatibilityRecord, CountReport, IntegralizationRecord, LatticeRow,
};
use salem_core::spectrum::{realized_length_census, SpectrumBounds};
use salem_core::{Error, Result};

const EXIT_VALIDATION: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "salem",
    version,
    about = "Salem polynomial census and related counts"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output format; tables default to csv, single records to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// Cap on the census coefficient box (overrides SALEM_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u128>,
    /// Absolute precision of the Salem root.
    #[arg(long, global = true)]
    precision: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a palindromic polynomial (constant term first).
    Classify {
        #[arg(long)]
        poly: String,
    },
    /// Count primitive solutions of A^2 + D B^2 = C^2 with |C| <= X.
    CountTriples {
        /// One or more D, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u64>,
        /// One or more X, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
        #[arg(long, default_value = "param")]
        method: String,
    },
    /// List primitive solutions with |C| <= X.
    GenTriples {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        x: u64,
    },
    /// Count lattice points in a scaled region.
    Lattice {
        /// unit_disk or ellipse_sector:D1,D2
        #[arg(long, default_value = "unit_disk")]
        region: String,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value = "all")]
        variant: String,
    },
    /// Count Salem polynomials of degree 2m with lambda <= Q.
    Census {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: Option<u64>,
        /// Ascending grid, comma separated; integers, decimals or p/q.
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<String>,
        /// List the polynomials at the largest Q instead of counting.
        #[arg(long)]
        list: bool,
    },
    /// Counting constants for (m, D).
    Constants {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        d: u64,
    },
    /// Length census (with --m) or length and multiplicity bounds (with --n).
    Spectrum {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long)]
        form: Option<String>,
        #[arg(long)]
        l: f64,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        non_classical: bool,
    },
    /// Integral model of a rational isometry of a form.
    Integralize {
        #[arg(long)]
        form: String,
        /// Isometry matrix, row-major `r;e11,e12,...`.
        #[arg(long)]
        iso: String,
    },
    /// Square-class compatibility of a form with a polynomial.
    Compat {
        #[arg(long)]
        form: String,
        #[arg(long)]
        poly: String,
    },
}

struct Output {
    format: Option<Format>,
}

impl Output {
    fn table<R: Serialize>(&self, rows: Vec<R>) -> Result<String> {
        let report = CountReport::new(rows);
        match self.format.unwrap_or(Format::Csv) {
            Format::Csv => report.to_csv(),
            Format::Json => report.to_json().map(|s| s + "\n"),
        }
    }

    fn record<R: Serialize>(&self, record: R) -> Result<String> {
        match self.format.unwrap_or(Format::Json) {
            Format::Csv => CountReport::new(vec![record]).to_csv(),
            Format::Json => serde_json::to_string_pretty(&record)
                .map(|s| s + "\n")
                .map_err(|e| Error::Parse(e.to_string())),
        }
    }
}

fn budget(common: &Common) -> Result<u128> {
    if let Some(b) = common.budget {
        return Ok(b);
    }
    match std::env::var("SALEM_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("SALEM_BUDGET is not an integer: {v:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn precision(common: &Common) -> Result<f64> {
    let p = common.precision.unwrap_or(DEFAULT_PRECISION);
    if !(1e-15..=1e-6).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "precision must lie in [1e-15, 1e-6], got {p}"
        )));
    }
    Ok(p)
}

fn parse_matrix(s: &str) -> Result<RatMatrix> {
    let (r, rest) = s
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("expected `rank;entries`, got {s:?}")))?;
    let r: usize = r
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rank {r:?}")))?;
    let e: Vec<BigRational> = rest.split(',').map(parse_rational).collect::<Result<_>>()?;
    if e.len() != r * r {
        return Err(Error::Parse(format!(
            "rank {r} needs {} entries, got {}",
            r * r,
            e.len()
        )));
    }
    RatMatrix::from_rows(e.chunks(r).map(<[BigRational]>::to_vec).collect())
}

fn matrix_string(m: &RatMatrix) -> String {
    format!("{};{}", m.rows(), m)
}

fn run(cli: &Cli) -> Result<String> {
    let common = &cli.common;
    let out = Output {
        format: common.format,
    };
    let opts = CensusOptions {
        budget: budget(common)?,
        precision: precision(common)?,
    };
    match &cli.command {
        Command::Classify { poly } => {
            let f: PalindromicPolynomial = poly.parse()?;
            let c = Classifier::new(f.half_degree(), opts.precision).classify(&f);
            out.record(ClassificationRecord::new(&f, &c))
        }
        Command::CountTriples { d, x, method } => {
            let method: CountMethod = method.parse()?;
            out.table(count_report(d, x, method)?.rows)
        }
        Command::GenTriples { d, x } => {
            out.table(generate_primitive_solutions(*d, *x)?.into_iter().collect())
        }
        Command::Lattice {
            region,
            alpha,
            variant,
        } => {
            let region: ConvexRegion = region.parse()?;
            let variant: LatticeVariant = variant.parse()?;
            let count = lattice_count(&region, *alpha, variant)?;
            out.table(vec![LatticeRow::new(&region, *alpha, variant, count)])
        }
        Command::Census { m, d, q, list } => {
            let grid: Vec<BigRational> =
                q.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
            if *list {
                let q_max = grid.iter().max().cloned().expect("nonempty grid");
                let entries = enumerate_salem(&CensusQuery::new(*m, *d, q_max)?, &opts)?;
                let rows = entries
                    .iter()
                    .map(|e| ClassificationRecord::new(&e.polynomial, &e.classification))
                    .collect();
                return out.table(rows);
            }
            out.table(census_report(*m, *d, &grid, &opts)?.rows)
        }
        Command::Constants { m, d } => out.record(ConstantsBundle::new(*m, *d)?),
        Command::Spectrum {
            m,
            n,
            d,
            form,
            l,
            r,
            non_classical,
        } => {
            if let Some(n) = n {
                let bounds = match (form, d) {
                    (Some(form), _) => {
                        let q: QuadraticForm = form.parse()?;
                        if q.rank() != n + 1 {
                            return Err(Error::InvalidArgument(format!(
                                "form rank {} does not match n + 1 = {}",
                                q.rank(),
                                n + 1
                            )));
                        }
                        SpectrumBounds::from_form(&q, *r)?
                    }
                    (None, Some(d)) => SpectrumBounds::new(*n, *d, *r)?,
                    (None, None) => {
                        return Err(Error::InvalidArgument(
                            "spectrum bounds need --form or --d".into(),
                        ))
                    }
                };
                return out.record(bounds.report(*l, !non_classical)?);
            }
            let (Some(m), Some(d)) = (m, d) else {
                return Err(Error::InvalidArgument(
                    "spectrum needs --n for bounds, or --m and --d for the length census".into(),
                ));
            };
            out.table(realized_length_census(*m, *d, *l, &opts)?)
        }
        Command::Integralize { form, iso } => {
            let q: QuadraticForm = form.parse()?;
            let t = RationalIsometry::new(q, parse_matrix(iso)?)?;
            let res = integralize(&t)?;
            let cp: Vec<String> = t
                .integer_char_poly()?
                .coeffs()
                .iter()
                .map(ToString::to_string)
                .collect();
            out.record(IntegralizationRecord {
                form: res.form.to_string(),
                isometry: matrix_string(&res.isometry_matrix()),
                basis: matrix_string(&res.basis),
                char_poly: cp.join(","),
            })
        }
        Command::Compat { form, poly } => {
            let q: QuadraticForm = form.parse()?;
            let f: PalindromicPolynomial = poly.parse()?;
            let (n_pos, n_neg) = q.signature()?;
            let product = f.value_at_one() * f.value_at_minus_one();
            out.record(CompatibilityRecord {
                form: q.to_string(),
                polynomial: f.clone(),
                n_pos,
                n_neg,
                reduced_determinant: q.reduced_determinant()?,
                polynomial_class: (product != 0).then(|| squarefree_part(product).0),
                compatible: q.compatible_with_polynomial(&f)?,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let threads = cli.common.threads.unwrap_or(0) as usize;
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    let result = pool.install(|| run(&cli));
    let text = match result {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            let code = if e.is_validation() {
                EXIT_VALIDATION
            } else {
                EXIT_BUDGET
            };
            return ExitCode::from(code);
        }
    };
    let written = match &cli.common.out {
        Some(path) => fs::write(path, text.as_bytes()),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_VALIDATION);
    }
    ExitCode::SUCCESS
}
