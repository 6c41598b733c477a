//! The `wesym` command line: argument parsing, command drivers, JSON output
//! and the enumerator cache.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use wesym_core::classify::{analyze_infinite, ClassifyError};
use wesym_core::code::{
    dimension_from_total, divisibility, macwilliams, weight_enumerator, write_code, CodeError, LinearCode, WeightEnumerator,
};
use wesym_core::invring::{decompose, dihedral_generators, gleason_generators, DecomposeError};
use wesym_core::roots::{find_roots, RootOptions, DEFAULT_SEED};
use wesym_core::symgroup::{
    divisibility_witness, invariance_check, symmetry_group, trivial_certificate, SymmetryError, SymmetryGroup,
};
use wesym_core::tables::{self, reference_table, CellResult, Route};
use wesym_core::wpoly::{HomPoly, PolyError};

pub mod cache;
pub mod dto;
pub mod spec;

use cache::Cache;
use dto::{ClassifyDto, CodeDto, DecompositionDto, DivisibilityDto, EnumeratorDto, SymmetryDto, TableDto};

pub const MAX_BUDGET: u128 = 1 << 40;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Budget(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Budget(_) | CliError::Code(CodeError::TooLarge { .. }) => 3,
            CliError::Symmetry(SymmetryError::PrecisionExhausted { .. }) => 4,
            CliError::Usage(_) => 64,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn parse_budget(s: &str) -> Result<u128, String> {
    let v = match s.split_once('^') {
        Some((b, e)) => {
            let b: u128 = b.trim().parse().map_err(|_| format!("bad budget `{s}`"))?;
            let e: u32 = e.trim().parse().map_err(|_| format!("bad budget `{s}`"))?;
            b.checked_pow(e).ok_or_else(|| format!("budget `{s}` overflows"))?
        }
        None => s.trim().parse().map_err(|_| format!("bad budget `{s}`"))?,
    };
    if v > MAX_BUDGET {
        return Err(format!("budget {v} exceeds the cap 2^40"));
    }
    Ok(v)
}

#[derive(Debug, Parser)]
#[command(name = "wesym", version, about = "Weight enumerators of linear codes and their symmetry groups")]
pub struct Cli {
    /// Working precision in bits for root finding.
    #[arg(long, global = true, env = "PRECISION", default_value_t = 256, value_parser = clap::value_parser!(u64).range(64..=4096))]
    pub precision: u64,
    /// Maximum number of codewords to enumerate; accepts `2^k`.
    #[arg(long, global = true, env = "BUDGET", default_value = "4294967296", value_parser = parse_budget)]
    pub budget: u128,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, env = "THREADS")]
    pub threads: Option<usize>,
    /// Output format; each command has its own default.
    #[arg(long, global = true, env = "FORMAT", value_enum)]
    pub format: Option<Format>,
    /// Directory for cached enumerators.
    #[arg(long, global = true, env = "CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Seed for root-finder initialization.
    #[arg(long, global = true, env = "SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weight enumerator of a code.
    Enum {
        /// Enumerate the code itself even when its dual is cheaper.
        #[arg(long)]
        direct: bool,
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Projective symmetry group of an enumerator or polynomial.
    Sym {
        /// Polynomial file or shape (`zero-code`, `full-space`, `sum-of-pairs`).
        #[arg(long)]
        poly: Option<String>,
        /// Field order for the infinite-case shapes.
        #[arg(long)]
        q: Option<u64>,
        /// Code spec, or parameters of a polynomial shape.
        args: Vec<String>,
    },
    /// Recompute a reference table and diff it.
    Tables {
        #[arg(long)]
        field: u64,
        #[arg(long)]
        max_m: Option<usize>,
    },
    /// MacWilliams transform of an enumerator.
    Macwilliams {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        q: u64,
        /// Code dimension; inferred from the codeword count when omitted.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Generator matrix of the dual code.
    Dual {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Write a form in the ring generated by two forms.
    Decompose {
        #[arg(long)]
        poly: String,
        #[arg(long, conflicts_with_all = ["dihedral", "f1"])]
        gleason: bool,
        /// Generators `x^(2^i) + y^(2^i)` and the `RM(1, i+1)` enumerator.
        #[arg(long, conflicts_with = "f1")]
        dihedral: Option<u32>,
        #[arg(long, requires = "f2")]
        f1: Option<String>,
        #[arg(long, requires = "f1")]
        f2: Option<String>,
    },
    /// Infinite-case classification of an enumerator.
    Classify {
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        q: Option<u64>,
        args: Vec<String>,
    },
    /// Largest common divisor of the weights.
    Divisibility {
        #[arg(long)]
        poly: Option<String>,
        args: Vec<String>,
    },
}

/// What a command prints and the exit status it asks for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub exit: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, exit: 0 }
    }
}

pub struct RunConfig {
    pub opts: RootOptions,
    pub budget: u128,
    pub format: Option<Format>,
    pub cache: Option<Cache>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Self {
        RunConfig {
            opts: RootOptions { prec: cli.precision as usize, seed: cli.seed, ..RootOptions::default() },
            budget: cli.budget,
            format: cli.format,
            cache: cli.cache_dir.clone().map(Cache::new),
        }
    }

    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    /// Enumerator of `code` along `route`, through the cache.
    fn enumerate_via(&self, code: &LinearCode, route: Route) -> Result<EnumeratorDto, CliError> {
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.get(code)) {
            return Ok(hit);
        }
        let q = code.q() as u64;
        let w = match route {
            Route::Direct => weight_enumerator(code, self.budget)?,
            Route::ViaDual => {
                let dual = code.dual();
                macwilliams(&weight_enumerator(&dual, self.budget)?, q, dual.dim())?
            }
            Route::Skipped => return Err(self.too_large(code, false)),
        };
        let dto = EnumeratorDto::new(&w, q, code.dim());
        if let Some(cache) = &self.cache {
            cache.put(code, &dto).map_err(|e| CliError::Io(format!("{}: {e}", cache.dir().display())))?;
        }
        Ok(dto)
    }

    fn enumerate(&self, code: &LinearCode) -> Result<EnumeratorDto, CliError> {
        self.enumerate_via(code, tables::route(code.q() as u64, code.dim(), code.len(), self.budget))
    }

    fn too_large(&self, code: &LinearCode, direct_only: bool) -> CliError {
        let q = code.q() as u128;
        let size = |k: usize| format!("{q}^{k}");
        let (k, codim) = (code.dim(), code.len() - code.dim());
        let dual_fits = q.checked_pow(codim as u32).is_some_and(|c| c <= self.budget);
        let hint = if direct_only && dual_fits {
            format!("the dual has {} codewords and fits; drop --direct to enumerate it and apply MacWilliams", size(codim))
        } else {
            format!("the dual has {} codewords and does not fit either; raise --budget (cap 2^40)", size(codim))
        };
        CliError::Budget(format!("enumeration of {} codewords exceeds the budget {}: {hint}", size(k), self.budget))
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn enumerator_text(dto: &EnumeratorDto) -> String {
    let mut out = String::new();
    for (i, c) in dto.coeffs.iter().enumerate() {
        writeln!(out, "A_{i} = {c}").expect("writing to a String");
    }
    out
}

fn symmetry_text(dto: &SymmetryDto, g: &SymmetryGroup) -> String {
    let mut out = String::new();
    let w = &mut out;
    match &dto.case {
        Some(case) => writeln!(w, "kind: Infinite({case})"),
        None => writeln!(w, "kind: Finite"),
    }
    .expect("writing to a String");
    writeln!(w, "degree: {}", dto.degree).expect("writing to a String");
    if let (Some(iso), Some(p), Some(f)) = (g.iso, dto.proj_order, dto.full_order) {
        writeln!(w, "iso: {iso}\nproj_order: {p}\nfull_order: {f}").expect("writing to a String");
        for e in &g.elements {
            let m = e.proj.entries();
            writeln!(w, "  order {:>2}  [{}, {}; {}, {}]", e.order, m[0], m[1], m[2], m[3]).expect("writing to a String");
        }
    }
    if let Some(cert) = &dto.certificates {
        writeln!(w, "trivial-group certificate (root indices): {cert:?}").expect("writing to a String");
    }
    out
}

fn read_poly(path: &str) -> Result<HomPoly, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    Ok(HomPoly::parse(&text)?)
}

/// The enumerator named by `--poly` or a code spec, with its field order.
fn enumerator_input(cfg: &RunConfig, poly: Option<&str>, q: Option<u64>, args: &[String]) -> Result<(HomPoly, Option<u64>), CliError> {
    match poly {
        Some(source) => {
            let (p, implied) = spec::parse_poly_spec(source, args)?;
            Ok((p, q.or(implied)))
        }
        None => {
            if args.is_empty() {
                return Err(CliError::Usage("give a code spec or --poly".into()));
            }
            let code = spec::parse_code_spec(args)?;
            let w = cfg.enumerate(&code)?.to_enumerator()?;
            Ok((HomPoly::from(&w), Some(code.q() as u64)))
        }
    }
}

fn cmd_sym(cfg: &RunConfig, poly: Option<&str>, q: Option<u64>, args: &[String]) -> Result<Outcome, CliError> {
    let (p, q) = enumerator_input(cfg, poly, q, args)?;
    let g = symmetry_group(&p, q, &cfg.opts)?;
    let certificate = if g.proj_order() == Some(1) {
        find_roots(&p, &RootOptions { prec: g.prec, ..cfg.opts }).ok().and_then(|rs| trivial_certificate(&rs).ok().flatten())
    } else {
        None
    };
    let dto = SymmetryDto::new(&g, certificate.as_ref());
    Ok(Outcome::ok(match cfg.format_or(Format::Json) {
        Format::Json => json(&dto),
        Format::Text => symmetry_text(&dto, &g),
    }))
}

fn cmd_tables(cfg: &RunConfig, q: u64, max_m: Option<usize>) -> Result<Outcome, CliError> {
    let table = reference_table(q).ok_or_else(|| CliError::Usage(format!("no reference table for q = {q}; use 2, 3 or 4")))?;
    let max_m = max_m.unwrap_or(table.max_m()).min(table.max_m());
    let field = std::sync::Arc::new(wesym_core::gf::Field::with_order(q).map_err(CodeError::from)?);
    let mut results = Vec::new();
    for spec in table.cells(max_m) {
        let code = wesym_core::code::reed_muller(field.clone(), spec.r, spec.m)?;
        let route = tables::route(q, code.dim(), code.len(), cfg.budget);
        let computed = match route {
            Route::Skipped => None,
            _ => Some(tables::evaluate(&cfg.enumerate_via(&code, route)?.to_enumerator()?, q, &cfg.opts)?),
        };
        results.push(CellResult { spec, route, computed });
    }
    let mismatches = tables::diff(&results);
    let out = match cfg.format_or(Format::Text) {
        Format::Json => json(&TableDto { q, max_m, cells: results.iter().map(Into::into).collect(), mismatches: mismatches.len() }),
        Format::Text => {
            let mut out = tables::render(table, &results);
            for (r, m, expected, computed) in &mismatches {
                writeln!(out, "mismatch at (r, m) = ({r}, {m}): reference {expected}, computed {computed}").expect("writing to a String");
            }
            out
        }
    };
    Ok(Outcome { stdout: out, exit: if mismatches.is_empty() { 0 } else { 2 } })
}

fn cmd_macwilliams(cfg: &RunConfig, path: &str, q: u64, k: Option<usize>) -> Result<Outcome, CliError> {
    let w = spec::as_enumerator(&read_poly(path)?)?;
    let k = match k {
        Some(k) => k,
        None => dimension_from_total(&w.total(), q)
            .ok_or_else(|| CliError::Usage(format!("the coefficients do not sum to a power of {q}; pass --k")))?,
    };
    let dual = macwilliams(&w, q, k)?;
    let dual_k = w.degree().checked_sub(k).ok_or_else(|| CliError::Usage(format!("k = {k} exceeds the degree")))?;
    Ok(Outcome::ok(match cfg.format_or(Format::Text) {
        Format::Json => json(&EnumeratorDto::new(&dual, q, dual_k)),
        Format::Text => HomPoly::from(&dual).to_text(),
    }))
}

fn cmd_decompose(cfg: &RunConfig, c: &Command) -> Result<Outcome, CliError> {
    let Command::Decompose { poly, gleason, dihedral, f1, f2 } = c else { unreachable!() };
    let p = read_poly(poly)?;
    let (g1, g2) = match (gleason, dihedral, f1, f2) {
        (true, _, _, _) => gleason_generators(),
        (_, Some(i), _, _) => dihedral_generators(*i),
        (_, _, Some(a), Some(b)) => (read_poly(a)?, read_poly(b)?),
        _ => return Err(CliError::Usage("choose generators: --gleason, --dihedral I, or --f1 FILE --f2 FILE".into())),
    };
    let d = decompose(&p, &g1, &g2)?;
    let dto = DecompositionDto::from(&d);
    Ok(Outcome::ok(match cfg.format_or(Format::Json) {
        Format::Json => json(&dto),
        Format::Text => {
            let mut out = String::new();
            for t in &dto.terms {
                writeln!(out, "{} * f1^{} f2^{}", t.coeff, t.a, t.b).expect("writing to a String");
            }
            writeln!(out, "unique: {}", dto.unique).expect("writing to a String");
            out
        }
    }))
}

fn cmd_classify(cfg: &RunConfig, poly: Option<&str>, q: Option<u64>, args: &[String]) -> Result<Outcome, CliError> {
    let (p, q) = enumerator_input(cfg, poly, q, args)?;
    let q = q.ok_or_else(|| CliError::Usage("classify needs the field order: pass --q".into()))?;
    let w = spec::as_enumerator(&p)?;
    let dto = match analyze_infinite(&w, q) {
        Ok(report) => ClassifyDto::from(&report),
        Err(ClassifyError::Finite) => ClassifyDto {
            kind: "Finite".into(),
            case: None,
            structure: None,
            notes: vec!["at least three distinct roots; the symmetry group is finite".into()],
        },
        Err(e @ ClassifyError::ContradictsLemma { .. }) => ClassifyDto {
            kind: "Infinite".into(),
            case: Some("OtherTwoRoot".into()),
            structure: Some(dto::structure_name(&wesym_core::classify::StructureClaim::NotACodeEnumerator)),
            notes: vec![e.to_string()],
        },
        Err(e) => return Err(e.into()),
    };
    Ok(Outcome::ok(match cfg.format_or(Format::Json) {
        Format::Json => json(&dto),
        Format::Text => {
            let mut out = format!("kind: {}\n", dto.kind);
            if let (Some(case), Some(structure)) = (&dto.case, &dto.structure) {
                out += &format!("case: {case}\nstructure: {structure}\n");
            }
            for n in &dto.notes {
                out += &format!("note: {n}\n");
            }
            out
        }
    }))
}

fn cmd_divisibility(cfg: &RunConfig, poly: Option<&str>, args: &[String]) -> Result<Outcome, CliError> {
    let (p, _) = enumerator_input(cfg, poly, None, args)?;
    let w: WeightEnumerator = spec::as_enumerator(&p)?;
    let m = divisibility(&w);
    // diag(1, zeta_m) fixes p exactly; check it numerically as a sanity test.
    let prec = cfg.opts.prec;
    let (_, worst) = invariance_check(&p, &divisibility_witness(m as u64, prec), p.degree() + 1, cfg.opts.seed);
    let dto = DivisibilityDto { divisibility: m, witness_order: m, witness_verified: worst <= -(prec as f64) / 2.0 };
    Ok(Outcome::ok(match cfg.format_or(Format::Text) {
        Format::Json => json(&dto),
        Format::Text => format!("divisibility: {m}\nwitness diag(1, zeta_{m}) verified: {}\n", dto.witness_verified),
    }))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = RunConfig::from_cli(cli);
    match &cli.command {
        Command::Enum { direct, spec } => {
            let code = spec::parse_code_spec(spec)?;
            let dto = if *direct {
                if (code.q() as u128).checked_pow(code.dim() as u32).is_none_or(|c| c > cfg.budget) {
                    return Err(cfg.too_large(&code, true));
                }
                cfg.enumerate_via(&code, Route::Direct)?
            } else {
                cfg.enumerate(&code)?
            };
            Ok(Outcome::ok(match cfg.format_or(Format::Text) {
                Format::Json => json(&dto),
                Format::Text => enumerator_text(&dto),
            }))
        }
        Command::Sym { poly, q, args } => cmd_sym(&cfg, poly.as_deref(), *q, args),
        Command::Tables { field, max_m } => cmd_tables(&cfg, *field, *max_m),
        Command::Macwilliams { poly, q, k } => cmd_macwilliams(&cfg, poly, *q, *k),
        Command::Dual { spec } => {
            let dual = spec::parse_code_spec(spec)?.dual();
            Ok(Outcome::ok(match cfg.format_or(Format::Text) {
                Format::Json => json(&CodeDto { q: dual.q() as u64, n: dual.len(), k: dual.dim(), rows: dual.generator().to_vec() }),
                Format::Text => write_code(&dual),
            }))
        }
        c @ Command::Decompose { .. } => cmd_decompose(&cfg, c),
        Command::Classify { poly, q, args } => cmd_classify(&cfg, poly.as_deref(), *q, args),
        Command::Divisibility { poly, args } => cmd_divisibility(&cfg, poly.as_deref(), args),
    }
}
