//! Command-line front end: generator files, run configuration, report
//! assembly and the exit-code contract.
//!
//! Exit codes: 0 ran to completion (whatever the verdict), 2 input error,
//! 3 non-abelian generators, 4 internal numerical failure.

use std::fmt;
use std::io;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::analyzer::{self, AnalysisParams, Thresholds};
use crate::dynamics::{enumerate_orbit, jset_score, jset_witness, DEFAULT_START_COUNT};
use crate::error::Error;
use crate::homogenize::homogenize;
use crate::model::{AffineMap, ComplexMatrix, ComplexScalar, ComplexVector, GeneratorSet, ValidationReport};
use crate::normalform::{compute_normal_form, CriticalLocus, NormalFormResiduals, SpectralWarning};

pub const TOOL_NAME: &str = "jclass";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// 17 significant digits in scientific notation.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    NotAbelian,
    Numerical,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self { kind: ErrorKind::Input, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Input => 2,
            ErrorKind::NotAbelian => 3,
            ErrorKind::Numerical => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::NotAbelian { .. } => ErrorKind::NotAbelian,
            Error::DimensionMismatch { .. } | Error::InvalidArgument(_) => ErrorKind::Input,
            Error::NormalFormFailure { .. } | Error::NonFinite(_) | Error::NotAffineChart => ErrorKind::Numerical,
        };
        Self { kind, message: e.to_string() }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Complex numbers are written as `[re, im]`.
pub type ComplexPair = [f64; 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub linear: Vec<Vec<ComplexPair>>,
    pub translation: Vec<ComplexPair>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorFile {
    pub dimension: usize,
    pub generators: Vec<GeneratorEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

fn pair(z: &ComplexScalar) -> ComplexPair {
    [z.re, z.im]
}

fn scalar(p: &ComplexPair, at: impl Fn() -> String) -> CliResult<ComplexScalar> {
    if p[0].is_finite() && p[1].is_finite() {
        Ok(ComplexScalar::new(p[0], p[1]))
    } else {
        Err(CliError::input(format!("non-finite number at {}", at())))
    }
}

impl GeneratorEntry {
    pub fn from_map(f: &AffineMap) -> Self {
        Self {
            linear: f.linear().to_rows().iter().map(|r| r.iter().map(pair).collect()).collect(),
            translation: f.translation().entries().iter().map(pair).collect(),
        }
    }

    fn to_map(&self, n: usize, index: usize) -> CliResult<AffineMap> {
        if self.linear.len() != n {
            return Err(CliError::input(format!(
                "generators[{index}].linear has {} rows, expected {n}",
                self.linear.len()
            )));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in self.linear.iter().enumerate() {
            if row.len() != n {
                return Err(CliError::input(format!(
                    "generators[{index}].linear[{i}] has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, p) in row.iter().enumerate() {
                entries.push(scalar(p, || format!("generators[{index}].linear[{i}][{j}]"))?);
            }
        }
        if self.translation.len() != n {
            return Err(CliError::input(format!(
                "generators[{index}].translation has {} entries, expected {n}",
                self.translation.len()
            )));
        }
        let a = self
            .translation
            .iter()
            .enumerate()
            .map(|(i, p)| scalar(p, || format!("generators[{index}].translation[{i}]")))
            .collect::<CliResult<Vec<_>>>()?;
        let linear = ComplexMatrix::from_row_major(n, n, entries)?;
        Ok(AffineMap::new(linear, ComplexVector::new(a)?)?)
    }
}

impl GeneratorFile {
    pub fn from_generators(gens: &GeneratorSet, label: Option<String>) -> Self {
        Self {
            dimension: gens.dimension(),
            generators: gens.generators().iter().map(GeneratorEntry::from_map).collect(),
            label,
        }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let file: Self = serde_json::from_str(text)
            .map_err(|e| CliError::input(format!("generator file, line {} column {}: {e}", e.line(), e.column())))?;
        file.to_generator_set(0.0)?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        to_json_string(self)
    }

    pub fn to_generator_set(&self, commutation_tolerance: f64) -> CliResult<GeneratorSet> {
        if self.dimension == 0 {
            return Err(CliError::input("dimension must be at least 1"));
        }
        if self.generators.is_empty() {
            return Err(CliError::input("at least one generator is required"));
        }
        let maps = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| g.to_map(self.dimension, i))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(GeneratorSet::with_tolerance(maps, commutation_tolerance)?)
    }
}

/// A point of ℂⁿ given as a JSON array of `[re, im]` pairs.
pub fn parse_point(text: &str, n: usize) -> CliResult<ComplexVector> {
    let pairs: Vec<ComplexPair> = serde_json::from_str(text)
        .map_err(|e| CliError::input(format!("point {text:?}, column {}: {e}", e.column())))?;
    if pairs.len() != n {
        return Err(CliError::input(format!("point has dimension {}, expected {n}", pairs.len())));
    }
    let z = pairs.iter().map(|p| scalar(p, || format!("point {text:?}"))).collect::<CliResult<Vec<_>>>()?;
    Ok(ComplexVector::new(z)?)
}

/// Pretty JSON whose floats always carry 17 significant digits.
struct FixedFloatFormatter(PrettyFormatter<'static>);

impl Formatter for FixedFloatFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", format_f64(value))
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object_value(writer)
    }
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloatFormatter(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("report types serialize infallibly");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[derive(Parser, Debug)]
#[command(name = "jclass", version, about = "Hypercyclicity analysis for abelian semigroups of affine maps on C^n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form, critical vector and critical hyperplanes.
    NormalForm(CommonArgs),
    /// Density and J-set scores at the critical vector, with a verdict.
    Hypercyclic(CommonArgs),
    /// All consistency checks at the critical vector and at extra points.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Extra point, e.g. '[[1,0],[0,2]]'; may be repeated.
        #[arg(long = "point")]
        points: Vec<String>,
    },
    /// Orbit sample as CSV.
    Orbit {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        point: String,
    },
    /// J-set witness towards --target, or the grid score when no target is given.
    Jset {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        point: String,
        #[arg(long)]
        target: Option<String>,
    },
    /// Homogenized matrices of the generators.
    Homogenize(CommonArgs),
}

impl Command {
    pub fn common(&self) -> &CommonArgs {
        match self {
            Command::NormalForm(c) | Command::Hypercyclic(c) | Command::Homogenize(c) => c,
            Command::Verify { common, .. } | Command::Orbit { common, .. } | Command::Jset { common, .. } => common,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::NormalForm(_) => "normal-form",
            Command::Hypercyclic(_) => "hypercyclic",
            Command::Verify { .. } => "verify",
            Command::Orbit { .. } => "orbit",
            Command::Jset { .. } => "jset",
            Command::Homogenize(_) => "homogenize",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Generator file (JSON).
    pub input: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ConfigArgs {
    #[arg(long, default_value_t = 30)]
    pub max_degree: u32,
    #[arg(long = "box", default_value_t = 2.0)]
    pub box_radius: f64,
    #[arg(long = "eps", default_value_t = 0.125)]
    pub cell_size: f64,
    #[arg(long, default_value_t = 0.5)]
    pub grid_step: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub delta: f64,
    #[arg(long = "witness-tol", default_value_t = 1e-2)]
    pub witness_tolerance: f64,
    /// Commutation tolerance for the abelian check.
    #[arg(long = "tol", default_value_t = 1e-9)]
    pub tolerance: f64,
    #[arg(long = "membership-tol", default_value_t = 1e-9)]
    pub membership_tolerance: f64,
    #[arg(long, default_value_t = 1e12)]
    pub norm_cap: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.9)]
    pub tau_hyp: f64,
    #[arg(long, default_value_t = 0.9)]
    pub tau_conc: f64,
    #[arg(long, default_value_t = 0.2)]
    pub tau_neg: f64,
}

impl Default for ConfigArgs {
    fn default() -> Self {
        Self::from(&RunConfig::default())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub max_degree: u32,
    pub box_radius: f64,
    pub cell_size: f64,
    pub grid_step: f64,
    pub delta: f64,
    pub witness_tolerance: f64,
    pub commutation_tolerance: f64,
    pub membership_tolerance: f64,
    pub thresholds: Thresholds,
    pub norm_cap: f64,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let p = AnalysisParams::default();
        Self {
            max_degree: p.max_degree,
            box_radius: p.box_radius,
            cell_size: p.cell_size,
            grid_step: p.grid_step,
            delta: p.delta,
            witness_tolerance: p.witness_tolerance,
            commutation_tolerance: crate::model::DEFAULT_COMMUTATION_TOLERANCE,
            membership_tolerance: p.membership_tolerance,
            thresholds: p.thresholds,
            norm_cap: p.norm_cap,
            seed: p.seed,
        }
    }
}

impl From<&RunConfig> for ConfigArgs {
    fn from(c: &RunConfig) -> Self {
        Self {
            max_degree: c.max_degree,
            box_radius: c.box_radius,
            cell_size: c.cell_size,
            grid_step: c.grid_step,
            delta: c.delta,
            witness_tolerance: c.witness_tolerance,
            tolerance: c.commutation_tolerance,
            membership_tolerance: c.membership_tolerance,
            norm_cap: c.norm_cap,
            seed: c.seed,
            tau_hyp: c.thresholds.tau_hyp,
            tau_conc: c.thresholds.tau_conc,
            tau_neg: c.thresholds.tau_neg,
        }
    }
}

impl RunConfig {
    pub fn from_args(a: &ConfigArgs) -> CliResult<Self> {
        let positive = [
            ("--box", a.box_radius),
            ("--eps", a.cell_size),
            ("--grid-step", a.grid_step),
            ("--delta", a.delta),
            ("--witness-tol", a.witness_tolerance),
            ("--norm-cap", a.norm_cap),
        ];
        for (flag, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::input(format!("{flag} must be positive and finite, got {v}")));
            }
        }
        let nonnegative = [
            ("--tol", a.tolerance),
            ("--membership-tol", a.membership_tolerance),
            ("--tau-hyp", a.tau_hyp),
            ("--tau-conc", a.tau_conc),
            ("--tau-neg", a.tau_neg),
        ];
        for (flag, v) in nonnegative {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(CliError::input(format!("{flag} must be nonnegative and finite, got {v}")));
            }
        }
        Ok(Self {
            max_degree: a.max_degree,
            box_radius: a.box_radius,
            cell_size: a.cell_size,
            grid_step: a.grid_step,
            delta: a.delta,
            witness_tolerance: a.witness_tolerance,
            commutation_tolerance: a.tolerance,
            membership_tolerance: a.membership_tolerance,
            thresholds: Thresholds { tau_hyp: a.tau_hyp, tau_conc: a.tau_conc, tau_neg: a.tau_neg },
            norm_cap: a.norm_cap,
            seed: a.seed,
        })
    }

    pub fn analysis_params(&self) -> AnalysisParams {
        AnalysisParams {
            max_degree: self.max_degree,
            box_radius: self.box_radius,
            cell_size: self.cell_size,
            grid_step: self.grid_step,
            delta: self.delta,
            witness_tolerance: self.witness_tolerance,
            membership_tolerance: self.membership_tolerance,
            norm_cap: self.norm_cap,
            start_count: DEFAULT_START_COUNT,
            seed: self.seed,
            thresholds: self.thresholds.clone(),
            ..AnalysisParams::default()
        }
    }
}

fn render<T: Serialize>(command: &'static str, label: Option<&str>, config: &RunConfig, result: &T) -> String {
    to_json_string(&Envelope { tool: TOOL_NAME, version: TOOL_VERSION, command, label, config, result })
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    label: Option<&'a str>,
    config: &'a RunConfig,
    result: &'a T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalFormReport {
    pub dimension: usize,
    pub eta: Vec<usize>,
    /// Eigenvalue of each generator on each block.
    pub block_eigenvalues: Vec<Vec<ComplexScalar>>,
    pub conjugator: ComplexMatrix,
    pub conjugator_inverse: ComplexMatrix,
    /// `φ = (Q, d)` with `P = Φ(φ)`.
    pub phi: GeneratorEntry,
    pub u0: ComplexVector,
    pub v0: ComplexVector,
    pub w0: ComplexVector,
    /// Linear functionals `x ↦ ℓ_k(1, x)` that must not vanish on `U`.
    pub u_description: String,
    pub u_functionals: Vec<Vec<ComplexScalar>>,
    pub hyperplanes: CriticalLocus,
    pub residuals: NormalFormResiduals,
    pub warnings: Vec<SpectralWarning>,
    pub validation: ValidationReport,
}

pub fn normal_form_report(gens: &GeneratorSet) -> CliResult<NormalFormReport> {
    let nf = compute_normal_form(gens)?;
    let leading = nf.partition.leading_indices();
    let u_functionals: Vec<Vec<ComplexScalar>> =
        leading.iter().skip(1).map(|&l| nf.conjugator_inverse.row(l).to_vec()).collect();
    let u_description = if u_functionals.is_empty() {
        "U is all of C^n (single block)".to_string()
    } else {
        format!("U = {{x : row l_k of P^-1 applied to (1, x) is nonzero for k = 2..{}}}", leading.len())
    };
    Ok(NormalFormReport {
        dimension: nf.dimension(),
        eta: nf.partition.parts().to_vec(),
        block_eigenvalues: nf.block_eigenvalues.clone(),
        conjugator: nf.conjugator.matrix().clone(),
        conjugator_inverse: nf.conjugator_inverse.clone(),
        phi: GeneratorEntry::from_map(&nf.phi_map),
        u0: nf.u0.clone(),
        v0: nf.v0.clone(),
        w0: nf.w0.clone(),
        u_description,
        u_functionals,
        hyperplanes: nf.critical_hyperplanes(),
        residuals: nf.residuals.clone(),
        warnings: nf.warnings.clone(),
        validation: gens.validate(gens.commutation_tolerance()),
    })
}

#[derive(Serialize)]
struct JSetPointReport {
    point: ComplexVector,
    target: ComplexVector,
    search: crate::dynamics::JSetSearch,
}

#[derive(Serialize)]
struct JSetGridReport {
    point: ComplexVector,
    score: crate::dynamics::JSetScore,
}

/// Runs one command on already-loaded input text and returns the output bytes.
pub fn run_on_text(command: &Command, input: &str) -> CliResult<Vec<u8>> {
    let common = command.common();
    let config = RunConfig::from_args(&common.config)?;
    let file = GeneratorFile::parse(input)?;
    let gens = file.to_generator_set(config.commutation_tolerance)?;
    let params = config.analysis_params();
    let n = gens.dimension();
    let label = file.label.as_deref();
    let name = command.name();
    let text = match command {
        Command::NormalForm(_) => render(name, label, &config, &normal_form_report(&gens)?),
        Command::Hypercyclic(_) => render(name, label, &config, &analyzer::hypercyclicity_report(&gens, &params)?),
        Command::Verify { points, .. } => {
            let extra = points.iter().map(|p| parse_point(p, n)).collect::<CliResult<Vec<_>>>()?;
            render(name, label, &config, &analyzer::verify(&gens, &extra, &params)?)
        }
        Command::Orbit { point, .. } => {
            gens.ensure_abelian()?;
            let x = parse_point(point, n)?;
            enumerate_orbit(&gens, &x, config.max_degree, config.norm_cap)?.to_csv()
        }
        Command::Jset { point, target, .. } => {
            gens.ensure_abelian()?;
            let x = parse_point(point, n)?;
            match target {
                Some(t) => {
                    let y = parse_point(t, n)?;
                    let search = jset_witness(&gens, &x, &y, &params.jset_params())?;
                    render(name, label, &config, &JSetPointReport { point: x, target: y, search })
                }
                None => {
                    let score = jset_score(&gens, &x, config.box_radius, config.grid_step, &params.jset_params())?;
                    render(name, label, &config, &JSetGridReport { point: x, score })
                }
            }
        }
        Command::Homogenize(_) => {
            let mats: Vec<ComplexMatrix> = gens.generators().iter().map(|f| homogenize(f).into_matrix()).collect();
            render(name, label, &config, &mats)
        }
    };
    Ok(text.into_bytes())
}

pub fn run(cli: &Cli) -> CliResult<Vec<u8>> {
    let common = cli.command.common();
    let input = std::fs::read_to_string(&common.input)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", common.input.display())))?;
    run_on_text(&cli.command, &input)
}

/// Parses `args`, runs the command, writes the output and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = run(&cli).and_then(|bytes| {
        match &cli.command.common().out {
            Some(path) => std::fs::write(path, &bytes),
            None => io::Write::write_all(&mut io::stdout().lock(), &bytes),
        }
        .map_err(|e| CliError::input(format!("cannot write output: {e}")))
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems;

    const TRANSLATIONS: &str = r#"{
        "dimension": 1,
        "generators": [
            {"linear": [[[1, 0]]], "translation": [[1, 0]]},
            {"linear": [[[1, 0]]], "translation": [[0, 1]]}
        ],
        "label": "translations"
    }"#;

    fn normal_form_cmd() -> Command {
        Command::NormalForm(CommonArgs { input: PathBuf::new(), config: ConfigArgs::default(), out: None })
    }

    #[test]
    fn parse_translations() {
        let f = GeneratorFile::parse(TRANSLATIONS).unwrap();
        assert_eq!(f.label.as_deref(), Some("translations"));
        assert_eq!(f.to_generator_set(1e-9).unwrap(), systems::translation_pair());
    }

    #[test]
    fn round_trip() {
        for (name, g) in systems::normal_form_suite() {
            let f = GeneratorFile::from_generators(&g, Some(name.to_string()));
            let back = GeneratorFile::parse(&f.to_json()).unwrap();
            assert_eq!(back, f, "{name}");
            assert_eq!(back.to_generator_set(1e-9).unwrap(), g, "{name}");
        }
    }

    #[test]
    fn syntax_error_reports_location() {
        let e = GeneratorFile::parse("{\n  \"dimension\": 1,\n  \"generators\": [oops]\n}").unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.message.contains("line 3"), "{}", e.message);
    }

    #[test]
    fn shape_errors_are_input_errors() {
        let bad = r#"{"dimension": 2, "generators": [{"linear": [[[1,0]]], "translation": [[0,0],[0,0]]}]}"#;
        let e = GeneratorFile::parse(bad).unwrap_err();
        assert_eq!(e.kind, ErrorKind::Input);
        assert!(e.message.contains("linear"));
        assert!(GeneratorFile::parse(r#"{"dimension": 1, "generators": []}"#).is_err());
    }

    #[test]
    fn fixed_float_format() {
        let s = to_json_string(&vec![0.5, 1.0 / 3.0]);
        assert!(s.contains("5.0000000000000000e-1"));
        assert!(s.contains("3.3333333333333331e-1"));
        let v: Vec<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(v, vec![0.5, 1.0 / 3.0]);
    }

    #[test]
    fn normal_form_of_translations() {
        let out = String::from_utf8(run_on_text(&normal_form_cmd(), TRANSLATIONS).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["eta"], serde_json::json!([2]));
        assert_eq!(v["result"]["w0"], serde_json::json!([[0.0, 0.0]]));
        assert_eq!(v["version"], TOOL_VERSION);
    }

    #[test]
    fn non_commuting_exit_code() {
        let text = r#"{"dimension": 1, "generators": [
            {"linear": [[[2,0]]], "translation": [[0,0]]},
            {"linear": [[[1,0]]], "translation": [[1,0]]}]}"#;
        let e = run_on_text(&normal_form_cmd(), text).unwrap_err();
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn point_parsing() {
        assert_eq!(parse_point("[[1, 2]]", 1).unwrap().entries()[0], ComplexScalar::new(1.0, 2.0));
        assert_eq!(parse_point("[[1, 2]]", 2).unwrap_err().exit_code(), 2);
        assert_eq!(parse_point("[1, 2]", 1).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn invalid_config_rejected() {
        let args = ConfigArgs { cell_size: 0.0, ..ConfigArgs::default() };
        assert_eq!(RunConfig::from_args(&args).unwrap_err().exit_code(), 2);
    }
}
