//! Command-line front end. [`run`] parses arguments, dispatches, and maps
//! errors to exit codes: 0 success, 2 bad arguments or input, 3 theorem
//! violation, 4 concept ceiling exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::analysis::{
    appose_generalized, build_phi, build_psi, check_surjective, classify_scheme, export_nested, is_order_preserving,
    phi_below_psi, projection_classes, size_report_with, stepwise_sizes, verify_exists_distributive, verify_forall_theorem,
    TheoremOutcome,
};
use crate::context::{read_csv, read_cxt, write_csv, write_cxt, ContextDocument, FormalContext};
use crate::error::{Error, Result};
use crate::generalize::{
    generalize_attributes, generalize_objects, hypercontext, propose_groupings, roll_up, Axis, GroupingScheme,
    HyperRelationSpec, Mode, SchemeDocument, Taxonomy,
};
use crate::lattice::{count_concepts_with, enumerate_concepts_with, to_dot, LatticeDocument, DEFAULT_CONCEPT_CEILING};
use crate::ratio::{parse_fraction, Fraction};
use crate::rules::{diff_rulesets, mine_strong_rules, rules_to_csv, rules_to_json};
use crate::service::{self, ServiceConfig};
use crate::synth::{generate_context, median_ratio_by_fanout, plot_data_csv, records_to_csv, sweep, SweepGrid, SweepRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ARGUMENT: i32 = 2;
pub const EXIT_THEOREM: i32 = 3;
pub const EXIT_CEILING: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "genconcept", version, about = "Concept lattices of generalized formal contexts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate or count the concepts of a context.
    Lattice(LatticeArgs),
    /// Apply a grouping scheme or a taxonomy cut and write the new context.
    Generalize(GeneralizeArgs),
    /// Put two contexts over the same objects side by side.
    Appose(ApposeArgs),
    /// Projection classes of the apposed lattice onto the generalized attributes.
    Project(SchemeArgs),
    /// Classify each group as generalization, specialization, equivalent or approximation.
    Classify(SchemeArgs),
    /// Size report, optional concept maps and theorem checks.
    Analyze(AnalyzeArgs),
    /// Mine or compare association rules.
    #[command(subcommand)]
    Rules(RulesCommand),
    /// Propose groupings of infrequent attributes.
    Propose(ProposeArgs),
    /// Build a hypercontext between object and attribute groups.
    Hyper(HyperArgs),
    /// Generate a random context.
    Synth(SynthArgs),
    /// Run a fanout sweep and write one CSV row per (cell, seed).
    Sweep(SweepArgs),
    /// Median ratio per fanout from a sweep CSV.
    PlotData(PlotDataArgs),
    /// Serve the wizard HTTP API.
    Serve(ServeArgs),
    /// Two-level JSON of the apposition: generalized lattice outside, original inside.
    ExportNested(SchemeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LatticeFormat {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ContextFormat {
    Cxt,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RuleFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exists,
    Forall,
    Alpha,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exists => Mode::Exists,
            ModeArg::Forall => Mode::ForAll,
            ModeArg::Alpha => Mode::Alpha,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Forall,
    Exists,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    /// Context file (.cxt, .csv or .json).
    pub input: PathBuf,
    /// Print only the number of concepts.
    #[arg(long)]
    pub count: bool,
    #[arg(long, value_enum, default_value_t = LatticeFormat::Text)]
    pub format: LatticeFormat,
    #[arg(long, default_value_t = DEFAULT_CONCEPT_CEILING)]
    pub ceiling: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GeneralizeArgs {
    pub input: PathBuf,
    /// Grouping scheme JSON.
    #[arg(long, conflicts_with = "taxonomy", required_unless_present = "taxonomy")]
    pub scheme: Option<PathBuf>,
    /// Taxonomy JSON; attributes roll up to the nodes at `--depth`.
    #[arg(long, requires = "depth")]
    pub taxonomy: Option<PathBuf>,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, value_enum, default_value_t = ContextFormat::Cxt)]
    pub format: ContextFormat,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ApposeArgs {
    pub left: PathBuf,
    pub right: PathBuf,
    #[arg(long, value_enum, default_value_t = ContextFormat::Cxt)]
    pub format: ContextFormat,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SchemeArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub scheme: PathBuf,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub common: SchemeArgs,
    /// Concept count after each group on its own.
    #[arg(long)]
    pub steps: bool,
    /// Build the phi and psi maps and report their properties.
    #[arg(long)]
    pub maps: bool,
    /// Check a size theorem; exits 3 when it is violated.
    #[arg(long, value_enum)]
    pub theorem: Option<TheoremArg>,
    #[arg(long, default_value_t = DEFAULT_CONCEPT_CEILING)]
    pub ceiling: usize,
}

#[derive(Debug, Subcommand)]
pub enum RulesCommand {
    /// Strong rules of one context.
    Mine(MineArgs),
    /// Rules before and after applying a scheme.
    Diff(DiffArgs),
}

#[derive(Debug, Args)]
pub struct MineArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub minsupp: String,
    #[arg(long)]
    pub minconf: String,
    #[arg(long, value_enum, default_value_t = RuleFormat::Csv)]
    pub format: RuleFormat,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiffArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub scheme: PathBuf,
    #[arg(long)]
    pub minsupp: String,
    #[arg(long)]
    pub minconf: String,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProposeArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub minsupp: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Exists)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HyperArgs {
    pub input: PathBuf,
    /// Object grouping scheme JSON; defaults to singletons.
    #[arg(long)]
    pub objects: Option<PathBuf>,
    /// Attribute grouping scheme JSON; defaults to singletons.
    #[arg(long)]
    pub attributes: Option<PathBuf>,
    #[arg(long)]
    pub case: u8,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long)]
    pub density: Option<String>,
    #[arg(long, value_enum, default_value_t = ContextFormat::Cxt)]
    pub format: ContextFormat,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub objects: usize,
    #[arg(long)]
    pub attributes: usize,
    #[arg(long)]
    pub density: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ContextFormat::Cxt)]
    pub format: ContextFormat,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub objects: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub attributes: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub density: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub fanout: Vec<usize>,
    #[arg(long, value_delimiter = ',', value_enum, default_value = "exists")]
    pub mode: Vec<ModeArg>,
    /// Number of seeds per cell.
    #[arg(long, default_value_t = 20)]
    pub seeds: u64,
    #[arg(long, default_value_t = 0)]
    pub first_seed: u64,
    #[arg(long, default_value_t = DEFAULT_CONCEPT_CEILING)]
    pub ceiling: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Also write the median-ratio table here.
    #[arg(long)]
    pub plot_data: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotDataArgs {
    /// CSV written by `sweep`.
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, env = service::LISTEN_ENV, default_value = service::DEFAULT_LISTEN)]
    pub listen: String,
    /// Directory for session decision logs; sessions are in-memory only without it.
    #[arg(long)]
    pub log_dir: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_CONCEPT_CEILING)]
    pub ceiling: usize,
    /// Allowed CORS origin; any origin when omitted.
    #[arg(long)]
    pub allow_origin: Option<String>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TheoremViolation(_) => EXIT_THEOREM,
        Error::Ceiling { .. } => EXIT_CEILING,
        _ => EXIT_ARGUMENT,
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Diagnostics go to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ARGUMENT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::argument(format!("{}: {e}", path.display())))
}

/// Reads a context, choosing the parser by extension.
pub fn load_context(path: &Path) -> Result<FormalContext> {
    let text = read_text(path)?;
    let ctx = match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => read_csv(&text)?,
        Some("json") => serde_json::from_str::<ContextDocument>(&text)?.to_context()?,
        _ => read_cxt(&text)?,
    };
    if ctx.name().is_empty() {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        return Ok(ctx.with_name(stem));
    }
    Ok(ctx)
}

pub fn load_scheme(path: &Path, ctx: &FormalContext) -> Result<GroupingScheme> {
    SchemeDocument::from_json(&read_text(path)?)?.resolve(ctx)
}

fn format_context(ctx: &FormalContext, format: ContextFormat) -> Result<String> {
    Ok(match format {
        ContextFormat::Cxt => write_cxt(ctx),
        ContextFormat::Csv => write_csv(ctx)?,
        ContextFormat::Json => to_json(&ContextDocument::from_context(ctx))?,
    })
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn emit(output: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn fraction(text: &str) -> Result<Fraction> {
    parse_fraction(text)
}

fn apply_scheme(ctx: &FormalContext, scheme: &GroupingScheme) -> Result<FormalContext> {
    match scheme.axis {
        Axis::Attributes => generalize_attributes(ctx, scheme),
        Axis::Objects => generalize_objects(ctx, scheme),
    }
}

fn attribute_scheme(path: &Path, ctx: &FormalContext) -> Result<GroupingScheme> {
    let scheme = load_scheme(path, ctx)?;
    if scheme.axis != Axis::Attributes {
        return Err(Error::argument("this command needs an attribute scheme"));
    }
    Ok(scheme)
}

fn execute(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Lattice(a) => lattice(a, out),
        Command::Generalize(a) => {
            let ctx = load_context(&a.input)?;
            let generalized = match (&a.scheme, &a.taxonomy) {
                (Some(s), _) => apply_scheme(&ctx, &load_scheme(s, &ctx)?)?,
                (None, Some(t)) => {
                    let tax = Taxonomy::from_json(&read_text(t)?)?;
                    let cut = tax.cut_at_depth(a.depth.unwrap_or(0));
                    generalize_attributes(&ctx, &roll_up(&ctx, &tax, &cut)?)?
                }
                (None, None) => return Err(Error::argument("either --scheme or --taxonomy is required")),
            };
            emit(a.output.as_deref(), &format_context(&generalized, a.format)?, out)
        }
        Command::Appose(a) => {
            let apposed = load_context(&a.left)?.apposition(&load_context(&a.right)?)?;
            emit(a.output.as_deref(), &format_context(&apposed, a.format)?, out)
        }
        Command::Project(a) => project(a, out),
        Command::Classify(a) => {
            let ctx = load_context(&a.input)?;
            let classes = classify_scheme(&ctx, &attribute_scheme(&a.scheme, &ctx)?)?;
            let text = match a.format {
                ReportFormat::Json => to_json(&json!({"format_version": 1, "groups": classes}))?,
                ReportFormat::Text => {
                    let mut s = String::new();
                    for c in &classes {
                        s.push_str(&format!("{}: {:?}\n", c.group, c.kind));
                        for w in &c.witnesses {
                            s.push_str(&format!(
                                "  {}: only member {:?}, only group {:?}\n",
                                w.member, w.member_only, w.group_only
                            ));
                        }
                    }
                    s
                }
            };
            emit(a.output.as_deref(), &text, out)
        }
        Command::Analyze(a) => analyze(a, out),
        Command::Rules(RulesCommand::Mine(a)) => {
            let ctx = load_context(&a.input)?;
            let rules = mine_strong_rules(&ctx, &fraction(&a.minsupp)?, &fraction(&a.minconf)?)?;
            let text = match a.format {
                RuleFormat::Csv => rules_to_csv(&ctx, &rules)?,
                RuleFormat::Json => rules_to_json(&ctx, &rules),
            };
            emit(a.output.as_deref(), &text, out)
        }
        Command::Rules(RulesCommand::Diff(a)) => {
            let ctx = load_context(&a.input)?;
            let scheme = attribute_scheme(&a.scheme, &ctx)?;
            let generalized = generalize_attributes(&ctx, &scheme)?;
            let (minsupp, minconf) = (fraction(&a.minsupp)?, fraction(&a.minconf)?);
            let before = mine_strong_rules(&ctx, &minsupp, &minconf)?;
            let after = mine_strong_rules(&generalized, &minsupp, &minconf)?;
            let diff = diff_rulesets(&ctx, &before, &generalized, &after, &scheme)?;
            let mut value = serde_json::to_value(&diff)?;
            value["format_version"] = json!(1);
            emit(a.output.as_deref(), &to_json(&value)?, out)
        }
        Command::Propose(a) => {
            let ctx = load_context(&a.input)?;
            let proposals = propose_groupings(&ctx, &fraction(&a.minsupp)?, a.mode.into())?;
            let text = match a.format {
                ReportFormat::Json => to_json(&json!({"format_version": 1, "proposals": proposals}))?,
                ReportFormat::Text => proposals
                    .iter()
                    .map(|p| {
                        let flag = if p.below_threshold { " (below threshold)" } else { "" };
                        format!("{} {} {} {}{flag}\n", p.fingerprint, p.name, p.support, p.member_names.join(" "))
                    })
                    .collect(),
            };
            emit(a.output.as_deref(), &text, out)
        }
        Command::Hyper(a) => {
            let ctx = load_context(&a.input)?;
            let objects = match &a.objects {
                Some(p) => load_scheme(p, &ctx)?,
                None => GroupingScheme::singletons(&ctx, Axis::Objects, Mode::Exists),
            };
            let attributes = match &a.attributes {
                Some(p) => load_scheme(p, &ctx)?,
                None => GroupingScheme::singletons(&ctx, Axis::Attributes, Mode::Exists),
            };
            let spec = HyperRelationSpec {
                case: a.case,
                alpha: a.alpha.as_deref().map(fraction).transpose()?,
                beta: a.beta.as_deref().map(fraction).transpose()?,
                density: a.density.as_deref().map(fraction).transpose()?,
            };
            let hyper = hypercontext(&ctx, &objects, &attributes, &spec)?;
            emit(a.output.as_deref(), &format_context(&hyper, a.format)?, out)
        }
        Command::Synth(a) => {
            let ctx = generate_context(a.objects, a.attributes, a.density, a.seed)?;
            emit(a.output.as_deref(), &format_context(&ctx, a.format)?, out)
        }
        Command::Sweep(a) => {
            let grid = SweepGrid {
                n_g: a.objects,
                n_m: a.attributes,
                density: a.density,
                fanout: a.fanout,
                mode: a.mode.into_iter().map(Mode::from).collect(),
                seeds: (a.first_seed..a.first_seed + a.seeds).collect(),
                ceiling: a.ceiling,
            };
            let records = sweep(&grid)?;
            if let Some(p) = &a.plot_data {
                fs::write(p, plot_data_csv(&median_ratio_by_fanout(&records)))?;
            }
            emit(a.output.as_deref(), &records_to_csv(&records), out)
        }
        Command::PlotData(a) => {
            let records = read_sweep_csv(&read_text(&a.input)?)?;
            emit(a.output.as_deref(), &plot_data_csv(&median_ratio_by_fanout(&records)), out)
        }
        Command::Serve(a) => {
            let config = ServiceConfig {
                log_dir: a.log_dir,
                ceiling: a.ceiling,
                allow_origin: a.allow_origin,
            };
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(service::serve(&a.listen, config))
        }
        Command::ExportNested(a) => {
            let ctx = load_context(&a.input)?;
            let generalized = generalize_attributes(&ctx, &attribute_scheme(&a.scheme, &ctx)?)?;
            emit(a.output.as_deref(), &to_json(&export_nested(&ctx, &generalized)?)?, out)
        }
    }
}

fn lattice(a: LatticeArgs, out: &mut dyn Write) -> Result<()> {
    let ctx = load_context(&a.input)?;
    if a.count {
        let n = count_concepts_with(&ctx, a.ceiling)?;
        return emit(a.output.as_deref(), &format!("{n}\n"), out);
    }
    let lat = enumerate_concepts_with(&ctx, a.ceiling)?;
    let text = match a.format {
        LatticeFormat::Dot => to_dot(&lat),
        LatticeFormat::Json => to_json(&LatticeDocument::from_lattice(&lat))?,
        LatticeFormat::Text => lat
            .concepts()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                format!(
                    "{i}: {{{}}} x {{{}}}\n",
                    ctx.object_labels(&c.extent).join(", "),
                    ctx.attribute_labels(&c.intent).join(", ")
                )
            })
            .collect(),
    };
    emit(a.output.as_deref(), &text, out)
}

fn project(a: SchemeArgs, out: &mut dyn Write) -> Result<()> {
    let ctx = load_context(&a.input)?;
    let generalized = generalize_attributes(&ctx, &attribute_scheme(&a.scheme, &ctx)?)?;
    let (apposed, s) = appose_generalized(&ctx, &generalized)?;
    let lat = enumerate_concepts_with(&apposed, DEFAULT_CONCEPT_CEILING)?;
    let classes = projection_classes(&lat, &s)?;
    let text = match a.format {
        ReportFormat::Json => {
            let listed: Vec<_> = classes
                .iter()
                .map(|ids| {
                    let restricted = lat.concept(ids[0]).intent.intersection(&s);
                    json!({"intent": apposed.attribute_labels(&restricted), "concepts": ids})
                })
                .collect();
            to_json(&json!({
                "format_version": 1,
                "apposed_concepts": lat.len(),
                "class_count": classes.len(),
                "classes": listed,
            }))?
        }
        ReportFormat::Text => format!("apposed concepts: {}\nprojection classes: {}\n", lat.len(), classes.len()),
    };
    emit(a.output.as_deref(), &text, out)
}

fn analyze(a: AnalyzeArgs, out: &mut dyn Write) -> Result<()> {
    let ctx = load_context(&a.common.input)?;
    let scheme = attribute_scheme(&a.common.scheme, &ctx)?;
    let mut report = size_report_with(&ctx, &scheme, a.ceiling)?;
    if a.steps {
        report.steps = stepwise_sizes(&ctx, &scheme)?;
    }
    let mut text = report.to_text();
    let mut value = json!({"format_version": 1, "report": report});

    if a.maps {
        let generalized = generalize_attributes(&ctx, &scheme)?;
        let src = enumerate_concepts_with(&ctx, a.ceiling)?;
        let dst = enumerate_concepts_with(&generalized, a.ceiling)?;
        let phi = build_phi(&src, &dst, &scheme)?;
        let psi = build_psi(&src, &dst, &scheme)?;
        let (phi_onto, phi_missed) = check_surjective(&phi, &dst);
        let (psi_onto, psi_missed) = check_surjective(&psi, &dst);
        let maps = json!({
            "phi": phi.targets,
            "psi": psi.targets,
            "phi_surjective": phi_onto,
            "psi_surjective": psi_onto,
            "phi_missed": phi_missed,
            "psi_missed": psi_missed,
            "phi_order_preserving": is_order_preserving(&phi, &src, &dst),
            "psi_order_preserving": is_order_preserving(&psi, &src, &dst),
            "phi_below_psi": phi_below_psi(&phi, &psi, &dst),
        });
        text.push_str(&format!(
            "phi surjective: {phi_onto}\npsi surjective: {psi_onto}\nphi <= psi: {}\n",
            maps["phi_below_psi"]
        ));
        value["maps"] = maps;
    }

    match a.theorem {
        Some(TheoremArg::Forall) => {
            let r = verify_forall_theorem(&ctx, &scheme)?;
            text.push_str(&format!(
                "forall theorem holds: {} <= {} = {}\n",
                r.report.size_after,
                r.report.apposed.unwrap_or(r.report.size_before),
                r.report.size_before
            ));
            value["theorem"] = serde_json::to_value(&r)?;
        }
        Some(TheoremArg::Exists) => {
            let outcome = verify_exists_distributive(&ctx, &scheme)?;
            match &outcome {
                TheoremOutcome::Holds(r) => {
                    text.push_str(&format!("exists theorem holds: {} <= {}\n", r.size_after, r.size_before))
                }
                TheoremOutcome::Inapplicable { reason } => text.push_str(&format!("exists theorem inapplicable: {reason}\n")),
            }
            value["theorem"] = serde_json::to_value(&outcome)?;
        }
        None => {}
    }

    let rendered = match a.common.format {
        ReportFormat::Text => text,
        ReportFormat::Json => to_json(&value)?,
    };
    emit(a.common.output.as_deref(), &rendered, out)
}

/// Reads back the CSV written by [`records_to_csv`].
pub fn read_sweep_csv(text: &str) -> Result<Vec<SweepRecord>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header.join(",") != crate::synth::SWEEP_CSV_HEADER {
        return Err(Error::Format("not a sweep CSV".into()));
    }
    let opt = |s: &str| -> Result<Option<usize>> {
        if s.is_empty() {
            Ok(None)
        } else {
            s.parse().map(Some).map_err(|_| Error::Format(format!("bad count {s:?}")))
        }
    };
    let mut out = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row?;
        let bad = |what: &str| Error::parse(i + 2, format!("bad {what}"));
        out.push(SweepRecord {
            seed: row[0].parse().map_err(|_| bad("seed"))?,
            n_g: row[1].parse().map_err(|_| bad("nG"))?,
            n_m: row[2].parse().map_err(|_| bad("nM"))?,
            density: row[3].parse().map_err(|_| bad("density"))?,
            fanout: row[4].parse().map_err(|_| bad("fanout"))?,
            mode: row[5].parse().map_err(|_| bad("mode"))?,
            size_before: opt(&row[6])?,
            size_after: opt(&row[7])?,
            censored: row[9].parse().map_err(|_| bad("censored"))?,
        });
    }
    Ok(out)
}
