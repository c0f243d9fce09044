//! `lsa`: build, check and classify left-symmetric algebras from the shell.
//!
//! Exit status is 0 for success or a true answer, 1 for a false answer
//! (not left-symmetric, not isomorphic, undecided, no match) and 2 for bad
//! input, with a one-line diagnostic on stderr.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use lsa_core::analysis::TransitivityMode;
use lsa_core::burgers::{integrate, write_csv, CsvValue, FieldValue, FloatAlgebra, InitialCondition, SimConfig};
use lsa_core::catalog::{members, reconstruct_spec, sample_alphas, sample_lambdas, Reconstruction};
use lsa_core::construct::{algebra_from_inner_product, inner_product_spec, PairVerdict};
use lsa_core::io::{algebra_from_json, algebra_to_json, algebra_to_value, lie_from_json, parse_matrix, parse_vector, spec_from_json};
use lsa_core::{
    algebra_from_extended, algebra_from_pair, are_isomorphic, classify_extended, generate, identify, is_r_matrix,
    lsa_from_r_matrix, match_catalog, property_report, Algebra, CaseVerdict, CatalogId, IsoVerdict, LinearFunctional,
    PairSpec, Witness,
};

#[derive(Parser)]
#[command(name = "lsa", version, about = "Left-symmetric algebras built from linear functions")]
struct Cli {
    /// Print every report as {"command": ..., "result": ...}.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the normal-form families, or their members in one dimension.
    CatalogList {
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Write the structure constants of a family member.
    CatalogGen {
        /// Family name, e.g. a3.1, a3.2:1, a4:-1/2, a7:2, assocL, lie24.
        id: String,
        #[arg(long)]
        dim: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the left-symmetric identity.
    Verify { algebra: PathBuf },
    /// Build an algebra from a specification, an inner product or a pair of functionals.
    Construct(ConstructArgs),
    /// Sort a specification into its case.
    Classify { spec: PathBuf },
    /// Normal form and witness for a specification or an algebra file.
    Identify { input: PathBuf },
    /// Decide isomorphism, with a verified witness when positive.
    Iso { first: PathBuf, second: PathBuf },
    /// Report commutativity, associativity, Novikov, transitivity and more.
    Properties { algebra: PathBuf },
    /// Check the classical Yang-Baxter condition for a linear map.
    RmatrixVerify(RMatrixArgs),
    /// The left-symmetric product x*y = [R(x), y] + R([x, y]).
    RmatrixLsa {
        #[command(flatten)]
        r: RMatrixArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Integrate u_t = u_xx + 2 u*u_x + u*(u*u) on a periodic grid, writing CSV.
    Burgers(BurgersArgs),
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["spec", "inner_product", "pair"])))]
struct ConstructArgs {
    /// Specification file {"dim", "f", "g", "h", "c"}.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Vector a for u*v = (u,v)a + (u,a)v, e.g. "1,0,0".
    #[arg(long, value_name = "A")]
    inner_product: Option<String>,
    /// Functionals f and g for x*y = f(y)x + g(x)y.
    #[arg(long, num_args = 2, value_names = ["F", "G"])]
    pair: Option<Vec<String>>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RMatrixArgs {
    /// Lie algebra file in the algebra format, constants of the bracket.
    lie: PathBuf,
    /// The map R by rows, e.g. "1,0;0,0".
    #[arg(long)]
    r: String,
}

#[derive(Args)]
struct BurgersArgs {
    algebra: PathBuf,
    /// Initial condition: per component a list of {type, amplitude, wavenumber, phase}.
    #[arg(long)]
    ic: PathBuf,
    #[arg(long, default_value_t = 64)]
    grid: usize,
    #[arg(long, default_value_t = 1.0)]
    length: f64,
    #[arg(long)]
    dt: f64,
    #[arg(long)]
    t_max: f64,
    /// Keep every k-th step.
    #[arg(long, default_value_t = 1)]
    stride: usize,
    /// Complex field, needed for non-real structure constants.
    #[arg(long)]
    complex: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// A finished command: what to print and how to exit.
struct Report {
    text: String,
    result: Value,
    ok: bool,
}

impl Report {
    fn new(ok: bool, text: impl Into<String>, result: Value) -> Self {
        Report { text: text.into(), result, ok }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // First paragraph of clap's message, without the usage block.
            let msg = e.to_string();
            let head: Vec<&str> = msg.lines().take_while(|l| !l.trim().is_empty()).map(str::trim).collect();
            eprintln!("{}", head.join(" "));
            return ExitCode::from(2);
        }
    };
    let name = command_name(&cli.command);
    match run(cli.command) {
        Ok(report) => {
            let out = if cli.json {
                serde_json::to_string_pretty(&json!({"command": name, "result": report.result})).expect("json value")
            } else {
                report.text
            };
            if !out.is_empty() {
                println!("{out}");
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let chain: Vec<String> = e.chain().map(|c| c.to_string()).collect();
            eprintln!("error: {}", chain.join(": ").replace('\n', " "));
            ExitCode::from(2)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::CatalogList { .. } => "catalog-list",
        Command::CatalogGen { .. } => "catalog-gen",
        Command::Verify { .. } => "verify",
        Command::Construct(_) => "construct",
        Command::Classify { .. } => "classify",
        Command::Identify { .. } => "identify",
        Command::Iso { .. } => "iso",
        Command::Properties { .. } => "properties",
        Command::RmatrixVerify(_) => "rmatrix-verify",
        Command::RmatrixLsa { .. } => "rmatrix-lsa",
        Command::Burgers(_) => "burgers",
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_algebra(path: &Path) -> anyhow::Result<Algebra> {
    algebra_from_json(&read(path)?).with_context(|| format!("{}", path.display()))
}

/// Writes `text` to `path`, or returns it for stdout.
fn emit(path: Option<&Path>, text: String) -> anyhow::Result<Option<String>> {
    match path {
        Some(p) => {
            fs::write(p, text + "\n").with_context(|| format!("cannot write {}", p.display()))?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

fn lines(parts: impl IntoIterator<Item = String>) -> String {
    parts.into_iter().collect::<Vec<_>>().join("\n")
}

fn run(command: Command) -> anyhow::Result<Report> {
    match command {
        Command::CatalogList { dim } => catalog_list(dim),
        Command::CatalogGen { id, dim, output } => {
            let id: CatalogId = id.parse()?;
            let a = generate(&id, dim)?;
            let written = emit(output.as_deref(), algebra_to_json(&a))?;
            let text = written.unwrap_or_else(|| format!("{id} (dim {dim}): {a}"));
            Ok(Report::new(true, text, json!({"id": id, "dim": dim, "algebra": algebra_to_value(&a)})))
        }
        Command::Verify { algebra } => {
            let a = load_algebra(&algebra)?;
            let ls = a.is_left_symmetric();
            Ok(Report::new(ls, format!("left-symmetric: {ls}"), json!({"left_symmetric": ls})))
        }
        Command::Construct(args) => construct(args),
        Command::Classify { spec } => {
            let spec = spec_from_json(&read(&spec)?)?;
            let verdict = classify_extended(&spec);
            let text = match verdict.number() {
                Some(k) => format!("case {k}\nleft-symmetric: true\n{}", case_detail(&verdict)),
                None => "left-symmetric: false".to_string(),
            };
            Ok(Report::new(verdict.is_left_symmetric(), text.trim_end(), json!(verdict)))
        }
        Command::Identify { input } => identify_cmd(&input),
        Command::Iso { first, second } => {
            let (a, b) = (load_algebra(&first)?, load_algebra(&second)?);
            let verdict = are_isomorphic(&a, &b);
            let (ok, text) = match &verdict {
                IsoVerdict::Isomorphic { witness } => {
                    (true, format!("isomorphic (witness verified)\nwitness: {}", show_witness(witness)))
                }
                IsoVerdict::NonIsomorphic { invariant } => (false, format!("not isomorphic (invariant '{invariant}' differs)")),
                IsoVerdict::Unknown => (false, "undecided: invariants agree but no witness was found".to_string()),
            };
            Ok(Report::new(ok, text, json!(verdict)))
        }
        Command::Properties { algebra } => {
            let r = property_report(&load_algebra(&algebra)?);
            let mode = match r.transitive_mode {
                Some(TransitivityMode::ExactGrid) => " (exact)",
                Some(TransitivityMode::Randomized) => " (randomized)",
                None => "",
            };
            let text = lines([
                format!("left-symmetric: {}", r.left_symmetric),
                format!("commutative: {}", r.commutative),
                format!("associative: {}", r.associative),
                format!("novikov: {}", r.novikov),
                format!("bisymmetric: {}", r.bisymmetric),
                format!("transitive: {}{mode}", r.transitive),
                format!("interior-derivation: {}", r.interior_derivation),
                format!("simple: {}", r.simple),
            ]);
            Ok(Report::new(true, text, json!(r)))
        }
        Command::RmatrixVerify(args) => {
            let lie = lie_from_json(&read(&args.lie)?)?;
            let r = parse_matrix(&args.r)?;
            let ok = is_r_matrix(&lie, &r)?;
            Ok(Report::new(ok, format!("r-matrix: {ok}"), json!({"r_matrix": ok})))
        }
        Command::RmatrixLsa { r: args, output } => {
            let lie = lie_from_json(&read(&args.lie)?)?;
            let r = parse_matrix(&args.r)?;
            let a = lsa_from_r_matrix(&lie, &r)?;
            let matched = match_catalog(&a).map(|(id, _)| id);
            let written = emit(output.as_deref(), algebra_to_json(&a))?;
            let text = lines([
                written.unwrap_or_else(|| a.to_string()),
                format!("catalog: {}", matched.as_ref().map_or("no match".to_string(), |id| id.to_string())),
            ]);
            Ok(Report::new(true, text, json!({"algebra": algebra_to_value(&a), "catalog": matched})))
        }
        Command::Burgers(args) => burgers(args),
    }
}

fn catalog_list(dim: Option<usize>) -> anyhow::Result<Report> {
    const FAMILIES: &[(&str, &str)] = &[
        ("a1:k", "e_je_j = e_1 for j = 2..k+1"),
        ("a2", "e_1e_1 = e_1"),
        ("a3.1", "e_1e_1 = 2e_1, e_1e_j = e_j, e_je_j = e_1"),
        ("a3.2:k", "e_1e_1 = 2e_1, e_1e_j = e_j, e_le_l = e_1 for l = 3..k+2"),
        ("a3.3:k", "e_1e_2 = e_1, e_2e_1 = 2e_1, e_2e_2 = e_2, e_2e_j = e_j, e_le_l = e_1"),
        ("a4.1", "e_1e_1 = e_1 + e_2, e_1e_j = e_j"),
        ("a4:lambda", "e_1e_1 = lambda e_1, e_1e_j = e_j, lambda not 1 or 2"),
        ("a5:k", "e_2e_1 = -e_1, e_2e_2 = e_2, e_je_2 = e_j, e_le_l = e_1"),
        ("a6", "e_1e_1 = e_1 + e_2, e_je_1 = e_j"),
        ("a7:alpha", "e_1e_1 = alpha e_1, e_1e_j = e_j, e_je_1 = alpha e_j, alpha nonzero"),
        ("assocL", "e_1x = x"),
        ("assocR", "xe_1 = x"),
        ("trivial", "all products zero"),
        ("lie24", "Lie algebra [e_1, e_j] = e_j"),
    ];
    match dim {
        None => {
            let text = lines(FAMILIES.iter().map(|(id, d)| format!("{id:<10} {d}")));
            let result: Vec<Value> = FAMILIES.iter().map(|(id, d)| json!({"id": id, "products": d})).collect();
            Ok(Report::new(true, text, json!(result)))
        }
        Some(n) => {
            if n < 2 {
                bail!("catalog families need dim >= 2, got {n}");
            }
            let ids = members(n, &sample_lambdas(), &sample_alphas(), true);
            let text = lines(ids.iter().map(|id| id.to_string()));
            Ok(Report::new(true, text, json!({"dim": n, "members": ids})))
        }
    }
}

fn case_detail(v: &CaseVerdict) -> String {
    match v {
        CaseVerdict::Case1 { rank } | CaseVerdict::Case3 { rank } | CaseVerdict::Case5 { rank } => {
            format!("rank of h: {rank}")
        }
        CaseVerdict::Case4(p) => match p.lambda() {
            Some(l) => format!("lambda: {l}"),
            None => "l(c) = 0".to_string(),
        },
        CaseVerdict::Case7 { alpha } => format!("alpha: {alpha}"),
        _ => String::new(),
    }
}

fn construct(args: ConstructArgs) -> anyhow::Result<Report> {
    let (a, verdict) = if let Some(path) = &args.spec {
        let spec = spec_from_json(&read(path)?)?;
        (algebra_from_extended(&spec), json!(classify_extended(&spec)))
    } else if let Some(v) = &args.inner_product {
        let a = parse_vector(v)?;
        let spec = inner_product_spec(&a)?;
        (algebra_from_inner_product(&a)?, json!(classify_extended(&spec)))
    } else {
        let fg = args.pair.as_deref().unwrap_or_default();
        let f = LinearFunctional::new(parse_vector(&fg[0])?);
        let g = LinearFunctional::new(parse_vector(&fg[1])?);
        let (a, v) = algebra_from_pair(&PairSpec::new(f, g)?);
        let label = match v {
            PairVerdict::LeftSymmetricAssociative => "associative",
            PairVerdict::NotLeftSymmetric => "not left-symmetric",
        };
        (a, json!(label))
    };
    let ls = a.is_left_symmetric();
    let written = emit(args.output.as_deref(), algebra_to_json(&a))?;
    let mut parts = vec![format!("left-symmetric: {ls}")];
    parts.extend(written);
    Ok(Report::new(ls, lines(parts), json!({"left_symmetric": ls, "verdict": verdict, "algebra": algebra_to_value(&a)})))
}

/// A specification file goes through the case analysis; an algebra file is
/// matched against the catalog in an arbitrary basis.
fn identify_cmd(input: &Path) -> anyhow::Result<Report> {
    let text = read(input)?;
    let value: Value = serde_json::from_str(&text).with_context(|| format!("{}", input.display()))?;
    if value.get("structure").is_some() {
        let a = algebra_from_json(&text)?;
        return Ok(match match_catalog(&a) {
            Some((id, w)) => {
                let text = format!("{id}\nwitness: {}", show_witness(&w));
                Report::new(true, text, json!({"id": id, "witness": w}))
            }
            None => {
                let form = match reconstruct_spec(&a) {
                    Some(Reconstruction::Pair(_)) => "pair construction",
                    Some(Reconstruction::Extended(_)) => "extended construction outside the catalog",
                    None => "not built from linear functions",
                };
                Report::new(false, format!("no catalog match ({form})"), json!({"id": null, "form": form}))
            }
        });
    }
    let spec = spec_from_json(&text)?;
    if !classify_extended(&spec).is_left_symmetric() {
        return Ok(Report::new(false, "left-symmetric: false", json!({"id": null, "left_symmetric": false})));
    }
    let (id, w) = identify(&spec)?;
    Ok(Report::new(true, format!("{id}\nwitness: {}", show_witness(&w)), json!({"id": id, "witness": w})))
}

fn show_witness(w: &Witness) -> String {
    match w {
        Witness::Exact(m) => format!("{m} (columns are images of the basis)"),
        Witness::Approx(m) => {
            let rows: Vec<String> = (0..m.rows())
                .map(|i| {
                    let cells: Vec<String> = (0..m.cols())
                        .map(|j| {
                            let z = m[(i, j)];
                            if z.im == 0.0 {
                                format!("{:.12}", z.re)
                            } else {
                                format!("{:.12}{:+.12}i", z.re, z.im)
                            }
                        })
                        .collect();
                    format!("[{}]", cells.join(", "))
                })
                .collect();
            format!("[{}] (approximate; columns are images of the basis)", rows.join(", "))
        }
    }
}

fn burgers(args: BurgersArgs) -> anyhow::Result<Report> {
    let a = load_algebra(&args.algebra)?;
    let ic: InitialCondition =
        serde_json::from_str(&read(&args.ic)?).with_context(|| format!("{}", args.ic.display()))?;
    if ic.components.len() != a.dim() {
        bail!("initial condition has {} components, algebra has dim {}", ic.components.len(), a.dim());
    }
    let cfg = SimConfig { dt: args.dt, t_max: args.t_max, output_stride: args.stride };
    if args.complex {
        simulate::<Complex64>(&a, &ic, &cfg, &args)
    } else {
        simulate::<f64>(&a, &ic, &cfg, &args)
    }
}

fn simulate<T: FieldValue + CsvValue>(
    a: &Algebra,
    ic: &InitialCondition,
    cfg: &SimConfig,
    args: &BurgersArgs,
) -> anyhow::Result<Report> {
    let fa = FloatAlgebra::<T>::from_exact(a).context("use --complex for non-real structure constants")?;
    let s0 = ic.sample::<T>(args.grid, args.length)?;
    cfg.validate(s0.dx())?;
    let traj = match integrate(&fa, &s0, cfg) {
        Ok(t) => t,
        Err(e @ lsa_core::Error::Unstable { .. }) => {
            return Ok(Report::new(false, e.to_string(), json!({"stable": false, "diagnostic": e.to_string()})));
        }
        Err(e) => return Err(e.into()),
    };
    let (_, max) = traj.last().max_magnitude();
    let summary = json!({
        "stable": true,
        "steps": cfg.steps(),
        "samples": traj.samples.len(),
        "final_max_magnitude": max,
        "output": args.output.as_ref().map(|p| p.display().to_string()),
    });
    match &args.output {
        Some(p) => {
            let file = fs::File::create(p).with_context(|| format!("cannot write {}", p.display()))?;
            write_csv(&traj, io::BufWriter::new(file))?;
            let text = format!("{} samples written to {}; final max |u| = {max:.6e}", traj.samples.len(), p.display());
            Ok(Report::new(true, text, summary))
        }
        None => {
            let mut out = io::stdout().lock();
            write_csv(&traj, &mut out)?;
            out.flush()?;
            Ok(Report::new(true, "", summary))
        }
    }
}
