//! Command-line front end: loads complex documents, runs the spectral,
//! balance, bound and homology computations and the constructions, and prints
//! deterministic text or JSON reports.

pub mod document;
pub mod format;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use simplicial::signed_graph::BRUTE_FORCE_EDGE_CAP;
use simplicial::{
    betti_numbers, bound_report, brute_force_balance, cartesian_product, duplicate_motif, eigenvalues,
    incidence_signed_graph, is_acyclic, is_balanced, join, laplacian, wedge_sum, BalanceCertificate,
    Face, LaplacianKind, MotifSpec, SimplicialComplex, VertexLabel,
    WedgeSpec, Weights,
};

use document::{ComplexDocument, InputError, Loaded, WeightPreset};
use format::{json_num, num};

#[derive(Parser, Debug)]
#[command(name = "simplicial", version, about = "Laplacian spectra, balance and constructions for simplicial complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WeightsArg {
    Unit,
    Normalized,
}

impl From<WeightsArg> for WeightPreset {
    fn from(w: WeightsArg) -> Self {
        match w {
            WeightsArg::Unit => WeightPreset::Unit,
            WeightsArg::Normalized => WeightPreset::Normalized,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum KindArg {
    Up,
    Down,
    Full,
    SignlessUp,
    SignlessDown,
}

impl From<KindArg> for LaplacianKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Up => LaplacianKind::Up,
            KindArg::Down => LaplacianKind::Down,
            KindArg::Full => LaplacianKind::Full,
            KindArg::SignlessUp => LaplacianKind::SignlessUp,
            KindArg::SignlessDown => LaplacianKind::SignlessDown,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension, face counts, facets and path connectivity per level.
    Info { file: PathBuf },
    /// Eigenvalues of a Laplacian in ascending order.
    Spectrum {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        level: isize,
        #[arg(long, value_enum, default_value_t = KindArg::Up)]
        kind: KindArg,
        /// Overrides the weights of the document.
        #[arg(long, value_enum)]
        weights: Option<WeightsArg>,
    },
    /// Balance of the incidence signed graph B_i(K) with a certificate.
    Balance {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        level: isize,
    },
    /// Largest eigenvalues of L_up and Q_up and the upper bounds.
    Bounds {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        level: isize,
        #[arg(long, value_enum)]
        weights: Option<WeightsArg>,
    },
    /// Reduced Betti numbers.
    Betti { file: PathBuf },
    /// Wedge sum along FACE1 of the first and FACE2 of the second complex.
    Wedge {
        file1: PathBuf,
        file2: PathBuf,
        /// Labels of the face in the first complex, e.g. `a,b` or `["a","b"]`.
        #[arg(long)]
        face1: String,
        #[arg(long)]
        face2: String,
        /// Identification `u=v,...` from FACE1 to FACE2; defaults to matching
        /// the faces in vertex order.
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Join of two complexes on disjoint vertex sets.
    Join {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cartesian product with the product weight.
    Product {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Duplication of the motif spanned by the given vertices.
    Duplicate {
        file: PathBuf,
        #[arg(long)]
        motif_vertices: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks the largest-eigenvalue inequality, the equality criterion and
    /// the bound ordering; exits with status 1 on any violation.
    Verify {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        level: isize,
        #[arg(long, value_enum)]
        weights: Option<WeightsArg>,
    },
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Bad input; exit status 2.
    Input(String),
    /// A verification failed; exit status 1. Carries the reproduction dump.
    Violation { summary: String, dump: String },
}

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn at(location: &str) -> impl Fn(simplicial::Error) -> Failure + '_ {
    move |e| Failure::Input(format!("{location}: {e}"))
}

pub fn load_file(path: &Path) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    ComplexDocument::parse(&text)
        .and_then(|d| d.load())
        .map_err(|e: InputError| input(format!("{}: {e}", path.display())))
}

/// Parses `a,b,c` or a JSON array of labels.
pub fn parse_labels(arg: &str) -> Result<Vec<VertexLabel>, String> {
    let t = arg.trim();
    if t.starts_with('[') {
        return serde_json::from_str(t).map_err(|e| format!("{arg:?}: {e}"));
    }
    if t.is_empty() {
        return Ok(Vec::new());
    }
    Ok(t.split(',').map(|s| s.trim().parse().unwrap()).collect())
}

fn parse_map(arg: &str) -> Result<Vec<(VertexLabel, VertexLabel)>, String> {
    arg.split(',')
        .map(|pair| {
            let (a, b) = pair
                .split_once('=')
                .ok_or_else(|| format!("--map: {pair:?} is not of the form u=v"))?;
            Ok((a.trim().parse().unwrap(), b.trim().parse().unwrap()))
        })
        .collect()
}

fn weights_for(l: &Loaded, arg: Option<WeightsArg>) -> (Weights, &'static str) {
    match arg {
        Some(w) => (WeightPreset::from(w).build(&l.complex), if w == WeightsArg::Unit { "unit" } else { "normalized" }),
        None => (l.weights.clone(), "document"),
    }
}

fn face_list(k: &SimplicialComplex, faces: &[Face]) -> String {
    faces.iter().map(|f| k.display_face(f)).collect::<Vec<_>>().join(" ")
}

fn labels_json(k: &SimplicialComplex, f: &Face) -> Value {
    json!(k.face_labels(f))
}

fn info(l: &Loaded) -> Result<(String, Value), Failure> {
    let k = &l.complex;
    let mut text = String::new();
    writeln!(text, "name: {}", l.name).unwrap();
    writeln!(text, "vertices: {}", k.num_vertices()).unwrap();
    writeln!(text, "dimension: {}", k.dim()).unwrap();
    let counts: Vec<(isize, usize)> = (-1..=k.dim()).map(|d| (d, k.count(d))).collect();
    let line: Vec<String> = counts.iter().map(|(d, c)| format!("f{d}={c}")).collect();
    writeln!(text, "faces: {}", line.join(" ")).unwrap();
    writeln!(text, "facets: {}", face_list(k, k.facets())).unwrap();
    let mut connected = Vec::new();
    for i in 0..k.dim().max(0) {
        let c = k.is_path_connected(i).map_err(at("level"))?;
        writeln!(text, "{}-path connected (level {i}): {c}", i + 1).unwrap();
        connected.push(json!({"level": i, "path_connected": c}));
    }
    let j = json!({
        "name": l.name,
        "vertices": k.num_vertices(),
        "dimension": k.dim(),
        "face_counts": counts.iter().map(|(d, c)| json!({"dimension": d, "count": c})).collect::<Vec<_>>(),
        "facets": k.facets().iter().map(|f| labels_json(k, f)).collect::<Vec<_>>(),
        "levels": connected,
    });
    Ok((text, j))
}

fn spectrum(l: &Loaded, level: isize, kind: KindArg, w: Option<WeightsArg>) -> Result<(String, Value), Failure> {
    let (weights, source) = weights_for(l, w);
    let kind = LaplacianKind::from(kind);
    let m = laplacian(&l.complex, level, &weights, &l.orientation, kind).map_err(at("--level"))?;
    let values = eigenvalues(&m).map_err(input)?.cleaned();
    let mut text = format!("{kind} Laplacian at level {level} ({source} weights), {} eigenvalues:\n", values.len());
    for v in &values {
        writeln!(text, "{}", num(*v)).unwrap();
    }
    let j = json!({
        "level": level,
        "kind": kind.to_string(),
        "weights": source,
        "eigenvalues": values.iter().map(|&v| json_num(v)).collect::<Vec<_>>(),
    });
    Ok((text, j))
}

fn balance(l: &Loaded, level: isize) -> Result<(String, Value), Failure> {
    let k = &l.complex;
    let g = incidence_signed_graph(k, level, &l.orientation).map_err(at("--level"))?;
    let cert = is_balanced(&g);
    let mut text = String::new();
    let j = match &cert {
        BalanceCertificate::Balanced { potential } => {
            writeln!(text, "B_{level}(K) is balanced").unwrap();
            writeln!(text, "switching potential:").unwrap();
            let mut rows = Vec::new();
            for &(n, t) in potential {
                let f = g.face(n);
                writeln!(text, "{} {}", k.display_face(f), if t > 0 { "+1" } else { "-1" }).unwrap();
                rows.push(json!({"face": labels_json(k, f), "sign": t}));
            }
            json!({"level": level, "balanced": true, "potential": rows})
        }
        BalanceCertificate::Unbalanced { cycle } => {
            writeln!(text, "B_{level}(K) is unbalanced").unwrap();
            let faces: Vec<Face> = cycle.iter().map(|&n| g.face(n).clone()).collect();
            writeln!(text, "negative cycle of length {}: {}", cycle.len(), face_list(k, &faces)).unwrap();
            json!({
                "level": level,
                "balanced": false,
                "negative_cycle": faces.iter().map(|f| labels_json(k, f)).collect::<Vec<_>>(),
            })
        }
    };
    Ok((text, j))
}

fn bounds(l: &Loaded, level: isize, w: Option<WeightsArg>) -> Result<(String, Value), Failure> {
    let (weights, source) = weights_for(l, w);
    let r = bound_report(&l.complex, level, &weights, &l.orientation).map_err(at("--level"))?;
    let mut text = format!("level {level} ({source} weights)\n");
    let numbers = [
        ("lambda_max_up", r.lambda_max_up),
        ("lambda_max_signless", r.lambda_max_signless),
        ("degree_sum_bound", r.degree_sum_bound),
        ("hj_bound", r.hj_bound),
        ("dr_bound", r.dr_bound),
    ];
    let flags = [
        ("balanced", r.balanced),
        ("path_connected", r.path_connected),
        ("equality", r.equality_holds),
        ("constant_degree_sums", r.constant_degree_sums),
        ("degree_bound_attained", r.degree_bound_attained),
    ];
    let mut j = serde_json::Map::new();
    j.insert("level".into(), json!(level));
    j.insert("weights".into(), json!(source));
    for (name, v) in numbers {
        writeln!(text, "{name}: {}", num(v)).unwrap();
        j.insert(name.into(), json_num(v));
    }
    for (name, v) in flags {
        writeln!(text, "{name}: {v}").unwrap();
        j.insert(name.into(), json!(v));
    }
    Ok((text, Value::Object(j)))
}

fn betti(l: &Loaded) -> (String, Value) {
    let b = betti_numbers(&l.complex).betti;
    let acyclic = is_acyclic(&l.complex);
    let parts: Vec<String> = b.iter().map(ToString::to_string).collect();
    let text = format!("reduced betti numbers: ({})\nacyclic: {acyclic}\n", parts.join(", "));
    (text, json!({"betti": b, "acyclic": acyclic}))
}

/// The `(level + 1)`-skeleton with its weights and flips: everything the
/// level-`level` checks depend on.
fn reproduction(l: &Loaded, level: isize, weights: &Weights) -> ComplexDocument {
    let k = &l.complex;
    let skel = k.skeleton(level + 1);
    let w = Weights::from_fn(&skel, |f| weights.of(k, f).expect("face of k")).expect("restricted weights");
    let mut doc = ComplexDocument::from_complex(&l.name, &skel, &w);
    let flips: Vec<Vec<VertexLabel>> = l
        .orientation
        .flipped_faces()
        .filter(|f| skel.contains(f))
        .map(|f| skel.face_labels(f))
        .collect();
    if !flips.is_empty() {
        doc.orientation_flips = Some(flips);
    }
    doc
}

/// The failure reported by `verify`: the findings plus a document holding the
/// (level+1)-skeleton, enough to rerun the same check.
fn violation(
    l: &Loaded,
    level: isize,
    weights: &Weights,
    source: &str,
    violations: &[String],
    report: Value,
) -> Failure {
    let dump = json!({
        "command": "verify",
        "level": level,
        "weights": source,
        "violations": violations,
        "report": report,
        "document": reproduction(l, level, weights),
    });
    Failure::Violation {
        summary: format!("{} violation(s) at level {level}", violations.len()),
        dump: serde_json::to_string_pretty(&dump).unwrap() + "\n",
    }
}

fn verify(l: &Loaded, level: isize, w: Option<WeightsArg>) -> Result<(String, Value), Failure> {
    let (weights, source) = weights_for(l, w);
    let r = bound_report(&l.complex, level, &weights, &l.orientation).map_err(at("--level"))?;
    let mut violations = r.violations();
    let g = incidence_signed_graph(&l.complex, level, &l.orientation).map_err(at("--level"))?;
    let cert = is_balanced(&g);
    if !cert.verify(&g) {
        violations.push("balance certificate does not verify".into());
    }
    if g.edges().len() <= BRUTE_FORCE_EDGE_CAP && brute_force_balance(&g).map_err(input)? != cert.verdict() {
        violations.push("balance verdict disagrees with the cycle enumeration".into());
    }
    let report = serde_json::to_value(&r).expect("report serializes");
    if !violations.is_empty() {
        return Err(violation(l, level, &weights, source, &violations, report));
    }
    let mut text = format!("level {level} ({source} weights): all checks passed\n");
    writeln!(
        text,
        "lambda_max_up = {} <= lambda_max_signless = {} <= degree_sum_bound = {} <= hj_bound = {}",
        num(r.lambda_max_up),
        num(r.lambda_max_signless),
        num(r.degree_sum_bound),
        num(r.hj_bound)
    )
    .unwrap();
    if r.path_connected {
        writeln!(text, "equality {} and balanced {} agree", r.equality_holds, r.balanced).unwrap();
    } else {
        writeln!(text, "not {}-path connected: equality criterion not applicable", level + 1).unwrap();
    }
    Ok((text, json!({"level": level, "weights": source, "passed": true, "report": report})))
}

fn write_document(doc: &ComplexDocument, out: Option<&Path>) -> Result<String, Failure> {
    let text = doc.to_json();
    match out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| input(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn unit_document(name: &str, k: &SimplicialComplex) -> ComplexDocument {
    ComplexDocument::from_complex(name, k, &Weights::unit(k))
}

/// Runs one command and returns what goes to standard output.
pub fn run(cli: &Cli) -> Result<String, Failure> {
    let render = |(text, j): (String, Value)| -> String {
        match cli.format {
            OutputFormat::Text => text,
            OutputFormat::Json => serde_json::to_string_pretty(&j).unwrap() + "\n",
        }
    };
    match &cli.command {
        Command::Info { file } => Ok(render(info(&load_file(file)?)?)),
        Command::Spectrum { file, level, kind, weights } => {
            Ok(render(spectrum(&load_file(file)?, *level, *kind, *weights)?))
        }
        Command::Balance { file, level } => Ok(render(balance(&load_file(file)?, *level)?)),
        Command::Bounds { file, level, weights } => Ok(render(bounds(&load_file(file)?, *level, *weights)?)),
        Command::Betti { file } => Ok(render(betti(&load_file(file)?))),
        Command::Verify { file, level, weights } => Ok(render(verify(&load_file(file)?, *level, *weights)?)),
        Command::Wedge { file1, file2, face1, face2, map, out } => {
            let (a, b) = (load_file(file1)?, load_file(file2)?);
            let f1 = parse_labels(face1).map_err(|e| input(format!("--face1: {e}")))?;
            let f2 = parse_labels(face2).map_err(|e| input(format!("--face2: {e}")))?;
            let face1 = a.complex.face_from_labels(&f1).map_err(at("--face1"))?;
            let face2 = b.complex.face_from_labels(&f2).map_err(at("--face2"))?;
            let spec = match map {
                None => WedgeSpec::aligned(&a.complex, &b.complex, face1, face2),
                Some(m) => {
                    let pairs = parse_map(m).map_err(input)?;
                    let spec = WedgeSpec::by_labels(&a.complex, &b.complex, &pairs).map_err(at("--map"))?;
                    if spec.face1 != face1 || spec.face2 != face2 {
                        return Err(input("--map: the identification must map --face1 onto --face2"));
                    }
                    spec
                }
            };
            let k = wedge_sum(&spec).map_err(at("wedge"))?;
            write_document(&unit_document(&format!("{} v {}", a.name, b.name), &k), out.as_deref())
        }
        Command::Join { file1, file2, out } => {
            let (a, b) = (load_file(file1)?, load_file(file2)?);
            let k = join(&a.complex, &b.complex).map_err(at("join"))?;
            write_document(&unit_document(&format!("{} * {}", a.name, b.name), &k), out.as_deref())
        }
        Command::Product { file1, file2, out } => {
            let (a, b) = (load_file(file1)?, load_file(file2)?);
            let (k, w) = cartesian_product(&a.complex, &a.weights, &b.complex, &b.weights).map_err(at("product"))?;
            let doc = ComplexDocument::from_complex(&format!("{} x {}", a.name, b.name), &k, &w);
            write_document(&doc, out.as_deref())
        }
        Command::Duplicate { file, motif_vertices, out } => {
            let l = load_file(file)?;
            let labels = parse_labels(motif_vertices).map_err(|e| input(format!("--motif-vertices: {e}")))?;
            let unique: BTreeSet<&VertexLabel> = labels.iter().collect();
            if unique.len() != labels.len() {
                return Err(input("--motif-vertices: vertex listed twice"));
            }
            let spec = MotifSpec::from_vertices(&l.complex, &labels).map_err(at("--motif-vertices"))?;
            let k = duplicate_motif(&spec).map_err(at("--motif-vertices"))?;
            write_document(&unit_document(&format!("{} duplicated", l.name), &k), out.as_deref())
        }
    }
}

/// Parses arguments, runs the command and maps the outcome to an exit code:
/// 0 on success, 1 when a verification fails, 2 on bad input.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Violation { summary, dump }) => {
            print!("{dump}");
            eprintln!("verification failed: {summary}");
            ExitCode::from(1)
        }
    }
}
