//! `permtri`: verify, search and analyze permutation trinomials from the shell.
//!
//! Exit status: 0 when the checked property holds, 1 when it fails, 2 on
//! usage or input errors.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use permtri::analysis::{differential_spectrum, fixed_point_count, DifferentialProfile};
use permtri::families::{
    applicability_in, catalog, claim1_check, instantiate, t33_condition, FamilyInstance,
};
use permtri::permcheck::{
    compose_check, eqa_solution_count_in, is_permutation, select_inverse_reading, value_set, ReadingVerdict,
    ValueSet,
};
use permtri::search::{enumerate_in, SearchOptions, CSV_HEADER};
use permtri::{FieldCtx, SweepConfig, TrinomialSpec};

use output::{Format, Sink};

#[derive(Parser)]
#[command(name = "permtri", version, about = "Permutation trinomials over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustively check that a polynomial permutes its field.
    #[command(long_about = VERIFY_HELP)]
    Verify(VerifyArgs),
    /// Enumerate unit-coefficient permutation trinomials over GF(2^m).
    #[command(long_about = SEARCH_HELP)]
    Search(SearchArgs),
    /// Check a compositional inverse, selecting the exponent reading that works.
    #[command(long_about = INVERT_HELP)]
    Invert(InvertArgs),
    /// Evaluate a polynomial at one point or on the whole field.
    #[command(long_about = EVAL_HELP)]
    Eval(EvalArgs),
    /// Count solutions of y^2k + y^k ybar^k + ybar^2k = 0, or check Tr(D1) = 1.
    #[command(long_about = CENSUS_HELP)]
    Census(CensusArgs),
    /// Differential uniformity, fixed points and value set of a polynomial.
    #[command(long_about = ANALYZE_HELP)]
    Analyze(AnalyzeArgs),
    /// List the catalog of families with conditions and selected readings.
    #[command(long_about = CATALOG_HELP)]
    Catalog(CatalogArgs),
}

const VERIFY_HELP: &str = "\
Exhaustively check that a polynomial permutes its field.

f permutes GF(q^m) when x -> f(x) is a bijection; the check evaluates f at
every element and reports the first collision in index order. The family's
own condition is reported next to the verdict, e.g. T33 is claimed to permute
GF(q^m) (q not divisible by 3, m even) iff m = 0 mod 4, or q = 1 mod 3, or
m = 2 mod 4, q = 2 mod 3 and exp3(k) >= exp3(q^(m/2)+1).

Exit status 0 when f permutes, 1 when it does not.";

const SEARCH_HELP: &str = "\
Enumerate unit-coefficient permutation trinomials x^e1 + x^e2 + x^e3 over
GF(2^m) with exponents in [1, 2^m - 2], one record per orbit of
(e1, e2, e3) -> (2e1, 2e2, 2e3) mod 2^m - 1. Squaring is a field automorphism,
so every member of an orbit permutes iff the representative does. Each triple
is matched against the catalog (first family in catalog order) and
re-verified independently.

Exit status 0 when every reported triple re-verifies.";

const INVERT_HELP: &str = "\
Check that g(f(x)) = x on the whole field.

With only --family F, F must be C34, C35, C36 or C37: the command tries every
rounding of the half-integer exponents (m+1)/2, (m+3)/2, ... in the inverse
formula, reports which readings invert the forward family and whether the
catalog reading is among them. C35 inverts C34 = x + x^(2^(m/2+1)-1) +
x^(2^m-2^(m/2+1)+2); C37 inverts C36 = x + x^(2^(m/2)) + x^(2^m-2^(m/2)+1);
both for 4 | m. With --with G the pair (F, G) is checked directly.

Exit status 0 when the inverse holds.";

const EVAL_HELP: &str = "\
Evaluate a polynomial. Field elements are written as hex bit masks of their
polynomial-basis coordinates (for odd p, the base-p index in hex).";

const CENSUS_HELP: &str = "\
Count y in GF(q^m) with y^2k + y^k ybar^k + ybar^2k = 0, ybar = y^(q^(m/2)),
for q not divisible by 3 and m even. y = 0 is the only solution iff
m = 0 mod 4, or q = 1 mod 3, or m = 2 mod 4, q = 2 mod 3 and
exp3(k) >= exp3(q^(m/2)+1).

With --trace, instead check Tr(D1) = 1 for every a in GF(2^m) \\ GF(2), m odd,
where d = (m+1)/2, b = a^(2^d), D1 = A1 A3^(2^d+1) / A2^(2^d+2) with
A1 = a(b+1)^2(a^2+a+1), A2 = a(b+1)^2 and A3 = (a+1)^3 + (b+1)^2.

Exit status 0 when y = 0 is the only solution (or the trace identity holds).";

const ANALYZE_HELP: &str = "\
Differential uniformity delta = max over a != 0 and b of
#{x : f(x+a) - f(x) = b}, the full spectrum of these counts, the number of
fixed points and the preimage histogram. f is APN when delta = 2 in
characteristic 2. Fields up to 2^16 elements.";

const CATALOG_HELP: &str = "\
List every family with its formula, parameters, permutation condition and
provenance. For C35, C37 and K5 the exponent reading selected by exhaustive
checks is recorded.";

#[derive(Args, Clone)]
struct SweepArgs {
    /// Largest field the exhaustive sweeps may visit.
    #[arg(long, default_value_t = permtri::galois::DEFAULT_SWEEP_BOUND)]
    max_order: u64,
    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl SweepArgs {
    fn config(&self) -> SweepConfig {
        SweepConfig::with_threads(self.threads).with_max_order(self.max_order)
    }
}

#[derive(Args, Clone)]
struct Target {
    /// Family instance, e.g. T33:q=2,k=3,m=6 or T21:m=7.
    #[arg(long, conflicts_with = "spec")]
    family: Option<String>,
    /// Polynomial as JSON: {"field": ..., "terms": [[coeff_hex, exponent], ...]}.
    #[arg(long)]
    spec: Option<String>,
    /// Field descriptor overriding the default modulus, e.g. gf:p=2,n=7,mod=0x83.
    #[arg(long)]
    field: Option<String>,
    /// Extension degree m (fills or overrides the instance's m).
    #[arg(long)]
    m: Option<u32>,
    /// Base field order q (T33 only).
    #[arg(long)]
    q: Option<u64>,
    /// Family parameter k (T33, K5).
    #[arg(long)]
    k: Option<u64>,
}

#[derive(Args)]
struct CommonOut {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    target: Target,
    #[command(flatten)]
    sweep: SweepArgs,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct SearchArgs {
    /// Extension degree of GF(2^m).
    #[arg(long)]
    m: Option<u32>,
    /// Binary field descriptor, instead of --m with the default modulus.
    #[arg(long)]
    field: Option<String>,
    /// List every member of each orbit instead of the representative.
    #[arg(long)]
    all_members: bool,
    /// Skip matching against the catalog.
    #[arg(long)]
    no_classify: bool,
    #[command(flatten)]
    sweep: SweepArgs,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct InvertArgs {
    #[command(flatten)]
    target: Target,
    /// Candidate inverse, as a family instance.
    #[arg(long)]
    with: Option<String>,
    #[command(flatten)]
    sweep: SweepArgs,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    target: Target,
    /// Point to evaluate at; the whole value table when omitted.
    #[arg(long)]
    x: Option<String>,
    #[command(flatten)]
    sweep: SweepArgs,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct CensusArgs {
    /// Base field order q.
    #[arg(long, default_value_t = 2)]
    q: u64,
    #[arg(long)]
    m: u32,
    #[arg(long, required_unless_present = "trace")]
    k: Option<u64>,
    /// Check the trace identity Tr(D1) = 1 over GF(2^m) instead.
    #[arg(long)]
    trace: bool,
    /// Field descriptor overriding the default modulus.
    #[arg(long)]
    field: Option<String>,
    #[command(flatten)]
    sweep: SweepArgs,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    target: Target,
    #[command(flatten)]
    sweep: SweepArgs,
    #[command(flatten)]
    out: CommonOut,
}

#[derive(Args)]
struct CatalogArgs {
    #[command(flatten)]
    out: CommonOut,
}

/// A resolved polynomial together with the instance it came from, if any.
struct Resolved {
    label: String,
    instance: Option<FamilyInstance>,
    spec: TrinomialSpec,
}

fn parse_field(desc: &str) -> Result<FieldCtx> {
    FieldCtx::from_descriptor(desc).with_context(|| format!("bad field descriptor '{desc}'"))
}

fn resolve_instance(target: &Target) -> Result<FamilyInstance> {
    let raw = target
        .family
        .as_deref()
        .ok_or_else(|| anyhow!("one of --family or --spec is required"))?;
    let mut text = raw.to_string();
    let mut sep = if raw.contains(':') { ',' } else { ':' };
    for (key, value) in [
        ("m", target.m.map(|v| v.to_string())),
        ("q", target.q.map(|v| v.to_string())),
        ("k", target.k.map(|v| v.to_string())),
    ] {
        if let Some(v) = value {
            text.push(sep);
            text.push_str(&format!("{key}={v}"));
            sep = ',';
        }
    }
    let inst: FamilyInstance = text.parse().with_context(|| format!("bad family instance '{text}'"))?;
    inst.check_structure()?;
    Ok(inst)
}

fn resolve(target: &Target) -> Result<Resolved> {
    if let Some(json) = &target.spec {
        if target.field.is_some() || target.m.is_some() || target.q.is_some() || target.k.is_some() {
            bail!("--spec carries its own field; --field, --m, --q and --k do not apply");
        }
        let spec = TrinomialSpec::from_json(json).context("bad --spec")?;
        return Ok(Resolved {
            label: "spec".into(),
            instance: None,
            spec,
        });
    }
    let inst = resolve_instance(target)?;
    let field = match &target.field {
        Some(desc) => {
            let f = parse_field(desc)?;
            let (_, s) = inst.base()?;
            f.with_subfield(s)?
        }
        None => inst.field()?,
    };
    let spec = instantiate(&inst, &field)?;
    Ok(Resolved {
        label: inst.to_string(),
        instance: Some(inst),
        spec,
    })
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    instance: &'a str,
    field: String,
    spec: &'a TrinomialSpec,
    collapsed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    applicability: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(flatten)]
    report: permtri::VerificationReport,
}

fn verify(args: &VerifyArgs) -> Result<bool> {
    let r = resolve(&args.target)?;
    let report = is_permutation(&r.spec, &args.sweep.config())?;
    let app = r.instance.as_ref().map(|i| applicability_in(i, r.spec.field()));
    let holds = report.is_permutation;
    let out = VerifyOutput {
        instance: &r.label,
        field: r.spec.field().descriptor(),
        spec: &r.spec,
        collapsed: r.spec.collapsed(),
        applicability: app.as_ref().map(|a| a.applicable),
        reason: app.map(|a| a.reason),
        report,
    };
    let mut sink = Sink::open(&args.out)?;
    match args.out.format {
        Format::Json => sink.json(&out)?,
        Format::Csv => {
            sink.line("instance,field,applicability,is_permutation,domain_size,image_deficit,collision")?;
            let collision = out
                .report
                .collision
                .map(|(a, b)| format!("{a:#x} {b:#x}"))
                .unwrap_or_default();
            sink.line(&format!(
                "{},{},{},{},{},{},{}",
                output::csv_field(out.instance),
                output::csv_field(&out.field),
                out.applicability.map(|b| b.to_string()).unwrap_or_default(),
                out.report.is_permutation,
                out.report.domain_size,
                out.report.image_deficit,
                collision
            ))?;
        }
    }
    sink.finish()?;
    Ok(holds)
}

fn search(args: &SearchArgs) -> Result<bool> {
    let field = match (&args.field, args.m) {
        (Some(_), Some(_)) => bail!("give either --m or --field, not both"),
        (Some(desc), None) => parse_field(desc)?,
        (None, Some(m)) => FieldCtx::binary(m)?,
        (None, None) => bail!("--m or --field is required"),
    };
    let opts = SearchOptions {
        canonical_only: !args.all_members,
        classify: !args.no_classify,
    };
    let outcome = enumerate_in(&field, opts, &args.sweep.config())?;
    let mut sink = Sink::open(&args.out)?;
    match args.out.format {
        Format::Json => {
            for r in &outcome.records {
                sink.json_line(r)?;
            }
        }
        Format::Csv => {
            sink.line(CSV_HEADER)?;
            for r in &outcome.records {
                sink.line(&r.csv_row())?;
            }
        }
    }
    sink.finish()?;
    Ok(outcome.records.iter().all(|r| r.verified))
}

#[derive(Serialize)]
struct InvertOutput {
    forward: String,
    inverse: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    readings: Option<Vec<ReadingVerdict>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    selected: Option<String>,
    is_inverse: bool,
    witness: Option<permtri::FieldElement>,
}

fn invert(args: &InvertArgs) -> Result<bool> {
    let cfg = args.sweep.config();
    let fwd = resolve(&args.target)?;
    let (inverse_label, g, readings) = match &args.with {
        Some(text) => {
            let inst: FamilyInstance = text.parse().with_context(|| format!("bad family instance '{text}'"))?;
            let g = instantiate(&inst, fwd.spec.field())?;
            (inst.to_string(), g, None)
        }
        None => {
            let inst = fwd
                .instance
                .as_ref()
                .ok_or_else(|| anyhow!("--spec needs --with to name the candidate inverse"))?;
            let partner = inst
                .family
                .inverse_partner()
                .ok_or_else(|| anyhow!("{} has no catalog inverse; use --with", inst.family))?;
            if partner.candidate_readings().is_empty() {
                bail!(
                    "{} is itself an inverse family; run invert on {partner} (its forward family)",
                    inst.family
                );
            }
            let verdicts = select_inverse_reading(partner, inst.m, &cfg)?;
            let g_inst = FamilyInstance::new(partner, inst.m);
            let g = instantiate(&g_inst, fwd.spec.field())?;
            (g_inst.to_string(), g, Some(verdicts))
        }
    };
    let outcome = compose_check(&fwd.spec, &g, &cfg)?;
    let selected = readings.as_ref().and_then(|_| {
        fwd.instance
            .as_ref()
            .and_then(|i| i.family.inverse_partner())
            .and_then(|p| p.default_reading())
            .map(|r| r.to_string())
    });
    let out = InvertOutput {
        forward: fwd.label,
        inverse: inverse_label,
        readings,
        selected,
        is_inverse: outcome.is_inverse,
        witness: outcome.witness,
    };
    let mut sink = Sink::open(&args.out)?;
    match args.out.format {
        Format::Json => sink.json(&out)?,
        Format::Csv => {
            sink.line("forward,inverse,selected,is_inverse,witness")?;
            sink.line(&format!(
                "{},{},{},{},{}",
                output::csv_field(&out.forward),
                output::csv_field(&out.inverse),
                out.selected.clone().unwrap_or_default(),
                out.is_inverse,
                out.witness.map(|w| format!("{w:#x}")).unwrap_or_default()
            ))?;
        }
    }
    sink.finish()?;
    Ok(out.is_inverse)
}

#[derive(Serialize)]
struct EvalPoint {
    x: String,
    y: String,
}

fn eval(args: &EvalArgs) -> Result<bool> {
    let r = resolve(&args.target)?;
    let field = r.spec.field();
    let points: Vec<EvalPoint> = match &args.x {
        Some(x) => {
            let x = field.parse_element(x).with_context(|| format!("bad element '{x}'"))?;
            vec![EvalPoint {
                x: field.format_element(x),
                y: field.format_element(r.spec.eval(x)?),
            }]
        }
        None => {
            args.sweep.config().check_order(field.order())?;
            field
                .elements()
                .map(|x| {
                    Ok(EvalPoint {
                        x: field.format_element(x),
                        y: field.format_element(r.spec.eval(x)?),
                    })
                })
                .collect::<permtri::Result<_>>()?
        }
    };
    let mut sink = Sink::open(&args.out)?;
    match args.out.format {
        Format::Json => {
            for p in &points {
                sink.json_line(p)?;
            }
        }
        Format::Csv => {
            sink.line("x,y")?;
            for p in &points {
                sink.line(&format!("{},{}", p.x, p.y))?;
            }
        }
    }
    sink.finish()?;
    Ok(true)
}

#[derive(Serialize)]
struct CensusOutput {
    q: u64,
    m: u32,
    k: u64,
    field: String,
    count: u64,
    only_zero: bool,
    condition: bool,
    reason: String,
}

fn census(args: &CensusArgs) -> Result<bool> {
    let cfg = args.sweep.config();
    if args.trace {
        let field = match &args.field {
            Some(desc) => parse_field(desc)?,
            None => FieldCtx::binary(args.m)?,
        };
        if field.degree() != args.m {
            bail!("--field has degree {}, --m is {}", field.degree(), args.m);
        }
        let out = claim1_check(&field, &cfg)?;
        let mut sink = Sink::open(&args.out)?;
        match args.out.format {
            Format::Json => sink.json(&out)?,
            Format::Csv => {
                sink.line("m,holds,checked,witness")?;
                sink.line(&format!(
                    "{},{},{},{}",
                    args.m,
                    out.holds,
                    out.checked,
                    out.witness.map(|w| format!("{w:#x}")).unwrap_or_default()
                ))?;
            }
        }
        sink.finish()?;
        return Ok(out.holds);
    }
    let k = args.k.expect("clap enforces --k");
    let inst = FamilyInstance::t33(args.q, k, args.m);
    let (_, s) = inst.base()?;
    let field = match &args.field {
        Some(desc) => parse_field(desc)?.with_subfield(s)?,
        None => inst.field()?,
    };
    if field.relative_degree() != args.m || field.subfield_order() != args.q {
        bail!("--field is not GF({}^{})", args.q, args.m);
    }
    let count = eqa_solution_count_in(&field, k, &cfg)?;
    let cond = t33_condition(args.q, args.m, k);
    let out = CensusOutput {
        q: args.q,
        m: args.m,
        k,
        field: field.descriptor(),
        count,
        only_zero: count == 1,
        condition: cond.applicable,
        reason: cond.reason,
    };
    let mut sink = Sink::open(&args.out)?;
    match args.out.format {
        Format::Json => sink.json(&out)?,
        Format::Csv => {
            sink.line("q,m,k,count,only_zero,condition")?;
            sink.line(&format!(
                "{},{},{},{},{},{}",
                out.q, out.m, out.k, out.count, out.only_zero, out.condition
            ))?;
        }
    }
    sink.finish()?;
    Ok(out.only_zero)
}

#[derive(Serialize)]
struct AnalyzeOutput {
    field: String,
    differential: DifferentialProfile,
    fixed_points: u64,
    value_set: ValueSet,
}

fn analyze(args: &AnalyzeArgs) -> Result<bool> {
    let r = resolve(&args.target)?;
    let cfg = args.sweep.config();
    let out = AnalyzeOutput {
        field: r.spec.field().descriptor(),
        differential: differential_spectrum(&r.spec, &cfg)?,
        fixed_points: fixed_point_count(&r.spec, &cfg)?,
        value_set: value_set(&r.spec, &cfg)?,
    };
    let mut sink = Sink::open(&args.out)?;
    match args.out.format {
        Format::Json => {
            let mut keyed = serde_json::Map::new();
            keyed.insert(r.label.clone(), serde_json::to_value(&out)?);
            sink.json(&keyed)?;
        }
        Format::Csv => {
            sink.line("instance,uniformity,fixed_points,image_size")?;
            sink.line(&format!(
                "{},{},{},{}",
                output::csv_field(&r.label),
                out.differential.uniformity,
                out.fixed_points,
                out.value_set.image_size
            ))?;
        }
    }
    sink.finish()?;
    Ok(true)
}

fn catalog_cmd(args: &CatalogArgs) -> Result<bool> {
    let entries = catalog();
    let mut sink = Sink::open(&args.out)?;
    match args.out.format {
        Format::Json => sink.json(&entries)?,
        Format::Csv => {
            sink.line("id,formula,parameters,condition,provenance,reading")?;
            for e in &entries {
                sink.line(&format!(
                    "{},{},{},{},{},{}",
                    e.id,
                    output::csv_field(e.formula),
                    output::csv_field(&e.parameters.join(" ")),
                    output::csv_field(e.condition),
                    output::csv_field(e.provenance),
                    e.reading.as_ref().map(|r| r.to_string()).unwrap_or_default()
                ))?;
            }
        }
    }
    sink.finish()?;
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    match &cli.command {
        Command::Verify(a) => verify(a),
        Command::Search(a) => search(a),
        Command::Invert(a) => invert(a),
        Command::Eval(a) => eval(a),
        Command::Census(a) => census(a),
        Command::Analyze(a) => analyze(a),
        Command::Catalog(a) => catalog_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
