//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use dialg_core::dialgebra::DiPolynomial;
use dialg_core::linalg::{Field, FieldTag, PrimeField, Rationals};
use dialg_core::{
    bso_presentation, double_signature, Error, Limits, MonomialBasis, Polynomial, Session,
    Signature, VarietyPresentation,
};
use serde_json::Value;

use crate::cache::DiskStores;
use crate::catalog;
use crate::input::{
    canonical_presentation_text, format_input, format_monomial, format_polynomial,
    format_presentation, parse_input_with, parse_polynomial, MorphismDef, PresentationDef,
    WorkbenchInput,
};
use crate::report::{Dims, Report};
use crate::sexpr::read_all;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "dialg",
    version,
    about = "Multilinear operad components, dialgebra transforms and special identities"
)]
pub struct Cli {
    /// Scalar field: `q` or `p:<prime>`.
    #[arg(long, global = true, default_value = "p:1000003", value_parser = parse_field)]
    pub field: FieldTag,
    /// Largest degree any command may enumerate.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_degree: usize,
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Ignore CACHE_DIR.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Include basis listings.
    #[arg(long, global = true)]
    pub basis: bool,
    /// Report `elapsed_ms` as null so output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    pub no_timings: bool,
    /// File with presentations and morphisms.
    #[arg(long, global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_field(s: &str) -> Result<FieldTag, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct VarietyArg {
    /// A presentation: `builtin:NAME` or a name from --input.
    #[arg(long)]
    pub variety: Option<String>,
}

#[derive(Debug, Args)]
pub struct MorphismArg {
    /// A morphism: `builtin:NAME` or a name from --input.
    #[arg(long)]
    pub morphism: String,
    #[arg(long)]
    pub degree: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the multilinear monomials of a degree.
    Basis {
        #[command(flatten)]
        variety: VarietyArg,
        #[arg(long)]
        degree: usize,
        /// Use the doubled signature.
        #[arg(long)]
        di: bool,
    },
    /// Dimension of the operad component at a degree.
    Dim {
        #[command(flatten)]
        variety: VarietyArg,
        #[arg(long)]
        degree: usize,
        /// Use the dialgebra presentation.
        #[arg(long)]
        di: bool,
    },
    /// Whether an identity follows from the presentation.
    Implies {
        #[command(flatten)]
        variety: VarietyArg,
        /// An s-expression over the signature.
        #[arg(long)]
        identity: String,
        /// Read the identity over the doubled signature and test it against
        /// the dialgebra presentation.
        #[arg(long)]
        di: bool,
    },
    /// Print the dialgebra presentation.
    Dialgebrize {
        #[command(flatten)]
        variety: VarietyArg,
        /// Also run the equivalence check at this degree.
        #[arg(long)]
        verify_degree: Option<usize>,
    },
    /// Check that the dialgebra presentation presents `P ⊗ Perm` at a degree.
    VerifyDi {
        #[command(flatten)]
        variety: VarietyArg,
        #[arg(long)]
        degree: usize,
    },
    /// Special identities of a morphism at a degree.
    Special {
        #[command(flatten)]
        morphism: MorphismArg,
    },
    /// Special identities of the dialgebra lift of a morphism.
    SpecialDi {
        #[command(flatten)]
        morphism: MorphismArg,
    },
    /// Compare the identities of the lifted morphism with the dialgebra
    /// presentation of the morphism's identities.
    VerifyBso {
        #[command(flatten)]
        morphism: MorphismArg,
    },
    /// List the built-in presentations and morphisms.
    Catalog,
}

/// What a process prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(code: i32, message: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: message,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit { .. } => EXIT_LIMIT,
            Error::Argument(_) | Error::CharacteristicGuard { .. } => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses `args` (program name first) and runs the command. `cache_dir` is
/// used unless `--no-cache` is given.
pub fn run_command<I, T>(args: I, cache_dir: Option<&Path>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.exit_code() == 0 {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::failure(EXIT_USAGE, text)
            };
        }
    };
    let cache = if cli.no_cache { None } else { cache_dir };
    match execute(&cli, cache) {
        Ok(report) => {
            let code = if report.verdict == Some(false) {
                EXIT_FALSE
            } else {
                EXIT_OK
            };
            let stdout = if cli.json {
                report.to_json()
            } else {
                report.to_table()
            };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome::failure(e.code, format!("error: {}\n", e.message)),
    }
}

/// Runs a parsed command.
pub fn execute(cli: &Cli, cache_dir: Option<&Path>) -> Result<Report, CliError> {
    let started = Instant::now();
    let input = load_input(cli.input.as_deref())?;
    let limits = Limits {
        max_degree: cli.max_degree,
    };
    let mut report = match cli.field {
        FieldTag::Rationals => dispatch(cli, &input, session(Rationals, limits, cache_dir))?,
        FieldTag::Prime(p) => {
            dispatch(cli, &input, session(PrimeField::new(p)?, limits, cache_dir))?
        }
    };
    if !cli.no_timings {
        report.elapsed_ms = Some(started.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn session<F: Field>(field: F, limits: Limits, cache_dir: Option<&Path>) -> Session<F> {
    let s = Session::new(field, limits);
    match cache_dir {
        Some(dir) => s.with_stores(DiskStores::shared(dir)),
        None => s,
    }
}

fn load_input(path: Option<&Path>) -> Result<WorkbenchInput, CliError> {
    let Some(path) = path else {
        return Ok(WorkbenchInput::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let lookup =
        |name: &str| catalog::presentation(name.strip_prefix("builtin:").unwrap_or(name)).cloned();
    parse_input_with(&text, &lookup)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn resolve_variety<'a>(
    input: &'a WorkbenchInput,
    name: Option<&str>,
) -> Result<&'a PresentationDef, CliError> {
    let found = match name {
        Some(n) => match n.strip_prefix("builtin:") {
            Some(b) => catalog::presentation(b),
            None => input.presentation(n).or_else(|| catalog::presentation(n)),
        },
        None => match &input.presentations[..] {
            [only] => Some(only),
            _ => return Err(CliError::usage("--variety is required")),
        },
    };
    found.ok_or_else(|| CliError::usage(format!("unknown presentation `{}`", name.unwrap_or(""))))
}

fn resolve_morphism<'a>(
    input: &'a WorkbenchInput,
    name: &str,
) -> Result<&'a MorphismDef, CliError> {
    let found = match name.strip_prefix("builtin:") {
        Some(b) => catalog::morphism(b),
        None => input.morphism(name).or_else(|| catalog::morphism(name)),
    };
    found.ok_or_else(|| CliError::usage(format!("unknown morphism `{name}`")))
}

fn degree_at_least_2(d: usize) -> Result<(), CliError> {
    if d < 2 {
        return Err(CliError::usage(format!("degree {d} is below 2")));
    }
    Ok(())
}

/// Identifies everything a report depends on.
struct Inputs(String);

impl Inputs {
    fn new(cli: &Cli) -> Self {
        Inputs(format!("field={}\nbasis={}\n", cli.field, cli.basis))
    }

    fn add(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        writeln!(self.0, "{key}={value}").unwrap();
        self
    }
}

fn new_report(cli: &Cli, command: &str, inputs: &Inputs) -> Report {
    Report::new(command, &inputs.0, cli.field.to_string())
}

fn dispatch<F: Field>(
    cli: &Cli,
    input: &WorkbenchInput,
    mut s: Session<F>,
) -> Result<Report, CliError> {
    let mut inputs = Inputs::new(cli);
    match &cli.command {
        Command::Basis {
            variety,
            degree,
            di,
        } => {
            let def = resolve_variety(input, variety.variety.as_deref())?;
            degree_at_least_2(*degree)?;
            let sig = working_signature(&def.presentation, *di);
            inputs
                .add("signature", crate::input::format_signature(&sig))
                .add("degree", degree);
            let basis = MonomialBasis::new(&sig, *degree, s.limits())?;
            let mut r = new_report(cli, "basis", &inputs);
            r.degree = Some(*degree);
            r.dims.ambient = Some(basis.len());
            r.basis = Some(basis.iter().map(|m| format_monomial(&m, &sig)).collect());
            Ok(r)
        }
        Command::Dim {
            variety,
            degree,
            di,
        } => {
            let def = resolve_variety(input, variety.variety.as_deref())?;
            degree_at_least_2(*degree)?;
            let v = working_presentation(&def.presentation, *di)?;
            inputs
                .add("presentation", canonical_presentation_text(&v))
                .add("degree", degree);
            let c = s.component(&v, *degree)?;
            let mut r = new_report(cli, "dim", &inputs);
            r.degree = Some(*degree);
            r.dims = Dims::new(c.basis.len(), c.ideal.rank());
            if cli.basis {
                let sig = v.signature();
                r.basis = Some(
                    c.ideal
                        .free_columns()
                        .into_iter()
                        .map(|col| format_monomial(&c.basis.monomial(col as usize), sig))
                        .collect(),
                );
            }
            Ok(r)
        }
        Command::Implies {
            variety,
            identity,
            di,
        } => {
            let def = resolve_variety(input, variety.variety.as_deref())?;
            let v = working_presentation(&def.presentation, *di)?;
            let t = parse_expression(identity, v.signature())?;
            inputs
                .add("presentation", canonical_presentation_text(&v))
                .add("identity", format_polynomial(&t, v.signature()));
            let implied = s.implies(&v, &t)?;
            let c = s.component(&v, t.degree())?;
            let mut r = new_report(cli, "implies", &inputs);
            r.degree = Some(t.degree());
            r.dims = Dims::new(c.basis.len(), c.ideal.rank());
            r.verdict = Some(implied);
            r.detail("identity", format_polynomial(&t, v.signature()));
            Ok(r)
        }
        Command::Dialgebrize {
            variety,
            verify_degree,
        } => {
            let def = resolve_variety(input, variety.variety.as_deref())?;
            let doubled = dialgebrize(def)?;
            inputs.add(
                "presentation",
                canonical_presentation_text(&def.presentation),
            );
            if let Some(d) = verify_degree {
                degree_at_least_2(*d)?;
                inputs.add("degree", d);
            }
            let mut r = new_report(cli, "dialgebrize", &inputs);
            r.detail("presentation", format_presentation(&doubled));
            r.detail("generators", doubled.presentation.generators().len());
            if let Some(d) = verify_degree {
                equivalence(&mut s, &def.presentation, *d, &mut r)?;
            }
            Ok(r)
        }
        Command::VerifyDi { variety, degree } => {
            let def = resolve_variety(input, variety.variety.as_deref())?;
            degree_at_least_2(*degree)?;
            inputs
                .add(
                    "presentation",
                    canonical_presentation_text(&def.presentation),
                )
                .add("degree", degree);
            let mut r = new_report(cli, "verify-di", &inputs);
            equivalence(&mut s, &def.presentation, *degree, &mut r)?;
            Ok(r)
        }
        Command::Special { morphism } => {
            let def = resolve_morphism(input, &morphism.morphism)?;
            degree_at_least_2(morphism.degree)?;
            morphism_inputs(&mut inputs, def, morphism.degree);
            let sp =
                s.special_identities(&def.morphism, &def.source.presentation, morphism.degree)?;
            let mut r = new_report(cli, "special", &inputs);
            r.degree = Some(sp.degree);
            r.dims = Dims::new(sp.ambient_dim, sp.kernel_dim);
            r.detail("source_ideal_dim", sp.source_ideal_dim);
            r.detail("special_dim", sp.basis.len());
            if cli.basis {
                let sig = def.source.presentation.signature();
                r.basis = Some(sp.basis.iter().map(|p| format_polynomial(p, sig)).collect());
            }
            Ok(r)
        }
        Command::SpecialDi { morphism } => {
            let def = resolve_morphism(input, &morphism.morphism)?;
            degree_at_least_2(morphism.degree)?;
            morphism_inputs(&mut inputs, def, morphism.degree);
            let sp =
                s.di_special_identities(&def.morphism, &def.source.presentation, morphism.degree)?;
            let mut r = new_report(cli, "special-di", &inputs);
            r.degree = Some(sp.degree);
            r.dims.ambient = Some(sp.ambient_dim);
            r.verdict = Some(sp.lifts_contained && sp.matches_lifts);
            r.detail("special_dim", sp.special_dim);
            r.detail("di_special_dim", sp.basis.len());
            r.detail("lifts_contained", sp.lifts_contained);
            r.detail("matches_lifts", sp.matches_lifts);
            if cli.basis {
                let sig = def.source.presentation.signature();
                r.basis = Some(sp.basis.iter().map(|p| format_di(p, sig)).collect());
            }
            Ok(r)
        }
        Command::VerifyBso { morphism } => {
            let def = resolve_morphism(input, &morphism.morphism)?;
            degree_at_least_2(morphism.degree)?;
            morphism_inputs(&mut inputs, def, morphism.degree);
            let b = s.verify_bso_theorem(&def.morphism, morphism.degree)?;
            let mut r = new_report(cli, "verify-bso", &inputs);
            r.degree = Some(b.degree);
            r.dims = Dims::new(b.ambient_dim, b.kernel_dim);
            r.verdict = Some(b.equal);
            r.detail("presentation_ideal_dim", b.presentation_dim);
            Ok(r)
        }
        Command::Catalog => {
            let cat = catalog::builtin();
            inputs.add("catalog", format_input(cat));
            let mut r = new_report(cli, "catalog", &inputs);
            let presentations: Vec<Value> = cat
                .presentations
                .iter()
                .map(|p| {
                    Value::from(format!(
                        "builtin:{} ({} identities over {})",
                        p.name,
                        p.presentation.generators().len(),
                        crate::input::format_signature(p.presentation.signature())
                    ))
                })
                .collect();
            let morphisms: Vec<Value> = cat
                .morphisms
                .iter()
                .map(|m| {
                    Value::from(format!(
                        "builtin:{} ({} -> {})",
                        m.name, m.source.name, m.target.name
                    ))
                })
                .collect();
            r.detail("presentations", presentations);
            r.detail("morphisms", morphisms);
            if cli.basis {
                r.detail("text", format_input(cat));
            }
            Ok(r)
        }
    }
}

fn working_signature(v: &VarietyPresentation, di: bool) -> Signature {
    if di {
        double_signature(v.signature()).signature().clone()
    } else {
        v.signature().clone()
    }
}

fn working_presentation(
    v: &VarietyPresentation,
    di: bool,
) -> Result<VarietyPresentation, CliError> {
    if di {
        Ok(bso_presentation(v)?.1)
    } else {
        Ok(v.clone())
    }
}

fn parse_expression(text: &str, sig: &Signature) -> Result<Polynomial, CliError> {
    let exprs = read_all(text).map_err(|e| CliError::usage(format!("--identity: {e}")))?;
    let [e] = &exprs[..] else {
        return Err(CliError::usage(
            "--identity must hold exactly one expression",
        ));
    };
    parse_polynomial(e, sig).map_err(|e| CliError::usage(format!("--identity: {e}")))
}

/// The dialgebra presentation with generated identity names: `zero-i` for
/// the inner-superscript identities and `NAME^k` for the transformed ones.
pub fn dialgebrize(def: &PresentationDef) -> Result<PresentationDef, CliError> {
    let (_, presentation) = bso_presentation(&def.presentation)?;
    let zero = presentation.generators().len()
        - def
            .presentation
            .generators()
            .iter()
            .map(|g| g.degree())
            .sum::<usize>();
    let mut identity_names: Vec<String> = (1..=zero).map(|i| format!("zero-{i}")).collect();
    for (name, g) in def.identity_names.iter().zip(def.presentation.generators()) {
        identity_names.extend((1..=g.degree()).map(|k| format!("{name}^{k}")));
    }
    Ok(PresentationDef {
        name: format!("di-{}", def.name),
        presentation,
        identity_names,
    })
}

fn equivalence<F: Field>(
    s: &mut Session<F>,
    v: &VarietyPresentation,
    d: usize,
    r: &mut Report,
) -> Result<(), CliError> {
    let e = s.verify_dialgebra_equivalence(v, d)?;
    r.degree = Some(d);
    r.dims = Dims::new(e.ambient_dim, e.presentation_ideal_dim);
    r.verdict = Some(e.equal);
    r.detail("preimage_dim", e.preimage_dim);
    r.detail("base_quotient_dim", e.base_quotient_dim);
    Ok(())
}

fn morphism_inputs(inputs: &mut Inputs, def: &MorphismDef, degree: usize) {
    let tsig = def.target.presentation.signature();
    inputs
        .add(
            "source",
            canonical_presentation_text(&def.source.presentation),
        )
        .add(
            "target",
            canonical_presentation_text(&def.target.presentation),
        );
    for img in def.morphism.images() {
        inputs.add("image", format_polynomial(img, tsig));
    }
    inputs.add("degree", degree);
}

/// `[k] EXPR` for every nonzero component.
fn format_di(p: &DiPolynomial, sig: &Signature) -> String {
    let parts: Vec<String> = p
        .components()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| format!("[{}] {}", k + 1, format_polynomial(c, sig)))
        .collect();
    parts.join(" ; ")
}
