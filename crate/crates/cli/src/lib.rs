//! Command-line front end. `main.rs` only parses arguments and forwards to [`run`].

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use torcfg::combinatorics::{coeff_bruteforce, coeff_closed, partitions, BRUTE_FORCE_MAX_K};
use torcfg::complexes::{k_ij, k_p, k_pm, l_pm, sd_boundary_simplex};
use torcfg::cover::validate_cover_model;
use torcfg::euler::{
    chi_classical_closed, chi_classical_partition, chi_moment_angle_torus, chi_orbit_config, chi_real_moment_angle,
    OrbitConfigSpec,
};
use torcfg::homology::simplicial_homology;
use torcfg::io::{complex_from_json, complex_to_json, integer, polytope_from_json};
use torcfg::polytope::{validate_characteristic_function, CharacteristicFunction};
use torcfg::reproduce::ReproTable;
use torcfg::spectral::{build_model, run_model, Family, SpectralRun};
use torcfg::{Coeff, Error, SimplePolytope, Torus};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "torcfg",
    version,
    about = "Invariants of orbit configuration spaces over simple polytopes"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// f-vector and h-vector of a polytope, optionally checking a characteristic function.
    Hvector {
        #[command(flatten)]
        polytope: PolytopeSource,
        /// JSON `{"d": 1|2, "vectors": [[...], ...]}`, one vector per facet.
        #[arg(long)]
        lambda: Option<PathBuf>,
    },
    /// Euler characteristics.
    #[command(subcommand)]
    Euler(EulerCommand),
    /// Signed subgraph counts C_I for all partitions of k.
    Coeff {
        #[arg(long)]
        k: u32,
        /// Also enumerate edge subsets of the complete graph (k <= 6).
        #[arg(long)]
        verify: bool,
    },
    /// Simplicial complexes attached to polytopes.
    #[command(subcommand)]
    Complex(ComplexCommand),
    /// Homology of a simplicial complex given as JSON (`-` reads stdin).
    Homology {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, value_enum, default_value_t = CoeffArg::Z)]
        coeff: CoeffArg,
    },
    /// Spectral sequence of a cover model.
    #[command(subcommand)]
    Ss(SsCommand),
    /// Recompute a homology table and compare it with its closed form.
    Reproduce {
        #[arg(value_enum)]
        table: Table,
        #[arg(long)]
        m_max: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
    },
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct PolytopeSource {
    /// Polytope JSON file (`-` reads stdin).
    #[arg(long)]
    pub polytope: Option<PathBuf>,
    /// `ngon:M`, `simplex:N` or `cube:N`.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum EulerCommand {
    /// Orbit configuration space of k points.
    Orbit {
        #[command(flatten)]
        polytope: PolytopeSource,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: u32,
    },
    /// Ordered configuration space of k points in a closed n-manifold with the given χ.
    Classical {
        #[arg(long, allow_hyphen_values = true)]
        chi: BigInt,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u32,
    },
    /// Moment-angle manifold (d = 2) or real moment-angle manifold (d = 1).
    MomentAngle {
        #[command(flatten)]
        polytope: PolytopeSource,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: u32,
        /// Required for d = 1: asserts that a small cover over the polytope exists.
        #[arg(long)]
        assume_small_cover: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum ComplexCommand {
    /// Nerve of the maximal disjoint face pairs.
    Kp {
        #[command(flatten)]
        polytope: PolytopeSource,
    },
    /// Explicit nerve for the m-gon.
    Kpm {
        #[arg(long)]
        m: usize,
    },
    /// Annulus subcomplex for the m-gon.
    Lpm {
        #[arg(long)]
        m: usize,
    },
    /// Barycentric subdivision of the boundary of the n-simplex.
    Sdbd {
        #[arg(long)]
        n: usize,
    },
    /// Chains of faces with sizes between i+1 and n-j.
    Kij {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum SsCommand {
    Polygon {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        opts: SsOptions,
    },
    Simplex {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        opts: SsOptions,
    },
}

#[derive(Args, Debug, Clone)]
pub struct SsOptions {
    #[arg(long)]
    pub d: u32,
    /// Defaults to q, or z2 for the real simplex model.
    #[arg(long, value_enum)]
    pub coeff: Option<CoeffArg>,
    /// Last page printed explicitly; E∞ is always included.
    #[arg(long, default_value_t = 3)]
    pub r_max: usize,
    /// Also write the cover model as JSON to this file.
    #[arg(long)]
    pub dump_model: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoeffArg {
    Z,
    Q,
    Z2,
}

impl From<CoeffArg> for Coeff {
    fn from(c: CoeffArg) -> Coeff {
        match c {
            CoeffArg::Z => Coeff::Z,
            CoeffArg::Q => Coeff::Q,
            CoeffArg::Z2 => Coeff::Z2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Table {
    /// Polygon model Betti numbers.
    #[value(name = "prop-b1")]
    Polygon,
    /// Simplex model Betti numbers and second page.
    #[value(name = "prop-b2")]
    Simplex,
    /// Homology of the subcomplexes K_ij.
    #[value(name = "prop-hom")]
    Kij,
    /// Real against complex second pages.
    #[value(name = "thm15")]
    PageComparison,
    /// Face counts of the polygon annulus.
    #[value(name = "lemma-annulus")]
    Annulus,
}

impl Table {
    fn name(self) -> &'static str {
        match self {
            Table::Polygon => "prop-b1",
            Table::Simplex => "prop-b2",
            Table::Kij => "prop-hom",
            Table::PageComparison => "thm15",
            Table::Annulus => "lemma-annulus",
        }
    }
}

/// What a command produced: exit code plus rendered text.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

/// A command's result before rendering.
struct Report {
    json: Value,
    table: String,
    pass: bool,
}

impl Report {
    fn ok(json: Value, table: String) -> Self {
        Report {
            json,
            table,
            pass: true,
        }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::BadParameter(msg.into())
}

fn read_input(path: &PathBuf) -> torcfg::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

fn load_polytope(src: &PolytopeSource) -> torcfg::Result<SimplePolytope> {
    if let Some(path) = &src.polytope {
        return polytope_from_json(&read_input(path)?);
    }
    let spec = src.builtin.as_deref().unwrap_or_default();
    let (kind, size) = spec
        .split_once(':')
        .ok_or_else(|| usage(format!("--builtin expects ngon:M, simplex:N or cube:N, got {spec:?}")))?;
    let size: usize = size
        .parse()
        .map_err(|_| usage(format!("--builtin size {size:?} is not a number")))?;
    match kind {
        "ngon" => SimplePolytope::ngon(size),
        "simplex" => SimplePolytope::simplex(size),
        "cube" => SimplePolytope::cube(size),
        other => Err(usage(format!("unknown builtin {other:?}; use ngon, simplex or cube"))),
    }
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(T::to_string).collect()
}

fn hvector(src: &PolytopeSource, lambda: Option<&PathBuf>) -> torcfg::Result<Report> {
    let p = load_polytope(src)?;
    let f = strings(&p.f_vector().0);
    let h = strings(&p.h_polynomial().0);
    let mut json = json!({ "dim": p.dim().to_string(), "f_vector": f, "h_vector": h });
    let mut table = format!("dim {}\nf {}\nh {}\n", p.dim(), f.join(" "), h.join(" "));
    let mut pass = true;
    if let Some(path) = lambda {
        let v: Value = serde_json::from_str(&read_input(path)?).map_err(|e| Error::Parse(e.to_string()))?;
        let d = integer(v.get("d").ok_or_else(|| Error::Parse("missing \"d\"".into()))?)?;
        let torus = Torus::from_d(u32::try_from(d).map_err(|_| usage(format!("bad d {d}")))?)?;
        let vectors = v
            .get("vectors")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"vectors\" array".into()))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("each vector must be an array".into()))?
                    .iter()
                    .map(integer)
                    .collect::<torcfg::Result<Vec<i64>>>()
            })
            .collect::<torcfg::Result<_>>()?;
        let report = validate_characteristic_function(&p, &CharacteristicFunction { torus, vectors })?;
        pass = report.valid;
        for v in report.failing() {
            let _ = writeln!(table, "vertex {} fails (det {})", v.vertex, v.determinant);
        }
        let _ = writeln!(
            table,
            "characteristic function {}",
            if pass { "valid" } else { "INVALID" }
        );
        json["characteristic"] = serde_json::to_value(&report).expect("serializable");
    }
    Ok(Report { json, table, pass })
}

fn chi_report(chi: BigInt) -> Report {
    Report::ok(json!({ "chi": chi.to_string() }), format!("chi {chi}\n"))
}

fn euler(cmd: &EulerCommand) -> torcfg::Result<Report> {
    match cmd {
        EulerCommand::Orbit { polytope, d, k } => {
            let p = load_polytope(polytope)?;
            let torus = Torus::from_d(*d)?;
            Ok(chi_report(chi_orbit_config(&OrbitConfigSpec {
                polytope: &p,
                torus,
                k: *k,
            })?))
        }
        EulerCommand::Classical { chi, n, k } => {
            if *k == 0 {
                return Err(usage("--k must be at least 1"));
            }
            let closed = chi_classical_closed(chi, *n, *k);
            let partition = chi_classical_partition(chi, *n, *k)?;
            let pass = closed == partition;
            Ok(Report {
                json: json!({ "chi": closed.to_string(), "partition_sum": partition.to_string() }),
                table: format!("chi {closed}\npartition sum {partition}\n"),
                pass,
            })
        }
        EulerCommand::MomentAngle {
            polytope,
            d,
            k,
            assume_small_cover,
        } => {
            let p = load_polytope(polytope)?;
            let chi = match Torus::from_d(*d)? {
                Torus::Real => chi_real_moment_angle(&p, *k, *assume_small_cover).map_err(|e| match e {
                    Error::SmallCoverNotAssumed => {
                        usage("d = 1 needs a small cover over the polytope; pass --assume-small-cover if one exists")
                    }
                    other => other,
                })?,
                Torus::Complex => chi_moment_angle_torus(&p, *k)?,
            };
            Ok(chi_report(chi))
        }
    }
}

fn coeff(k: u32, verify: bool) -> torcfg::Result<Report> {
    if verify && k > BRUTE_FORCE_MAX_K {
        return Err(usage(format!(
            "--verify enumerates edge subsets and is limited to k <= {BRUTE_FORCE_MAX_K}"
        )));
    }
    let brute = if verify { Some(coeff_bruteforce(k)?) } else { None };
    let mut rows = Vec::new();
    let mut table = String::new();
    let mut pass = true;
    let _ = writeln!(
        table,
        "{:16} {:>12} {:>12}  match",
        "partition", "closed", "brute force"
    );
    for part in partitions(k)? {
        let closed = coeff_closed(&part);
        let mut row = json!({ "partition": part.parts(), "closed": closed.to_string() });
        match brute.as_ref() {
            Some(b) => {
                let value = b.get(&part).cloned().unwrap_or_default();
                let matched = value == closed;
                pass &= matched;
                row["bruteforce"] = json!(value.to_string());
                row["match"] = json!(matched);
                let _ = writeln!(
                    table,
                    "{:16} {:>12} {:>12}  {}",
                    part.to_string(),
                    closed,
                    value,
                    if matched { "yes" } else { "NO" }
                );
            }
            None => {
                let _ = writeln!(table, "{:16} {:>12} {:>12}  -", part.to_string(), closed, "-");
            }
        }
        rows.push(row);
    }
    Ok(Report {
        json: Value::Array(rows),
        table,
        pass,
    })
}

fn complex(cmd: &ComplexCommand) -> torcfg::Result<Report> {
    let k = match cmd {
        ComplexCommand::Kp { polytope } => k_p(&load_polytope(polytope)?)?,
        ComplexCommand::Kpm { m } => k_pm(*m)?,
        ComplexCommand::Lpm { m } => l_pm(*m)?,
        ComplexCommand::Sdbd { n } => sd_boundary_simplex(*n)?,
        ComplexCommand::Kij { n, i, j } => k_ij(*n, *i, *j)?,
    };
    let json = complex_to_json(&k);
    let mut table = format!("{} vertices, face counts {:?}\n", k.vertex_count(), k.face_counts());
    for s in k.maximal_simplices() {
        let _ = writeln!(table, "{}", k.simplex_labels(&s).join(" "));
    }
    Ok(Report::ok(json, table))
}

fn homology_table(h: &torcfg::HomologyResult) -> String {
    let mut table = String::new();
    for (q, b) in h.betti.iter().enumerate() {
        let torsion = &h.torsion[q];
        if torsion.is_empty() {
            let _ = writeln!(table, "H_{q}: rank {b}");
        } else {
            let _ = writeln!(table, "H_{q}: rank {b}, torsion {}", strings(torsion).join(" "));
        }
    }
    table
}

fn homology(path: &PathBuf, coeff: CoeffArg) -> torcfg::Result<Report> {
    let k = complex_from_json(&read_input(path)?)?;
    let h = simplicial_homology(&k, coeff.into());
    Ok(Report::ok(
        serde_json::to_value(&h).expect("serializable"),
        homology_table(&h),
    ))
}

fn ss_table(run: &SpectralRun) -> String {
    let mut table = format!("{} over {}\n", run.context, run.total.coeff);
    if let Some(sp) = &run.pages {
        let named = sp
            .pages
            .iter()
            .enumerate()
            .map(|(i, g)| (format!("E{}", i + 1), g))
            .chain([("E∞".to_string(), &sp.infinity)]);
        for (name, grid) in named {
            let entries: Vec<String> = grid.iter().map(|((p, q), d)| format!("({p},{q}):{d}")).collect();
            let _ = writeln!(table, "{name:4} {}", entries.join(" "));
        }
        let _ = writeln!(
            table,
            "collapse page {}",
            sp.collapse_page.map_or("-".into(), |r| r.to_string())
        );
    }
    table.push_str(&homology_table(&run.total));
    if let Some(conv) = &run.convergence {
        let _ = writeln!(table, "converged {}", conv.pass);
    }
    table
}

fn ss(cmd: &SsCommand) -> torcfg::Result<Report> {
    let (family, opts) = match cmd {
        SsCommand::Polygon { m, opts } => (Family::Polygon(*m), opts),
        SsCommand::Simplex { n, opts } => (Family::Simplex(*n), opts),
    };
    let torus = Torus::from_d(opts.d)?;
    let coeff = match (opts.coeff, family, torus) {
        (Some(c), _, _) => c.into(),
        (None, Family::Simplex(_), Torus::Real) => Coeff::Z2,
        (None, _, _) => Coeff::Q,
    };
    let cm = build_model(family, torus, coeff)?;
    if let Some(path) = &opts.dump_model {
        let mut dump = cm.to_json();
        dump["validation"] = serde_json::to_value(validate_cover_model(&cm)?).expect("serializable");
        let text = serde_json::to_string_pretty(&dump).expect("serializable");
        std::fs::write(path, text + "\n").map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    }
    let run = run_model(&cm, opts.r_max.max(1))?;
    let pass = run.convergence.as_ref().is_none_or(|c| c.pass);
    Ok(Report {
        json: run.to_json(),
        table: ss_table(&run),
        pass,
    })
}

fn reproduce(table: Table, m_max: Option<usize>, n_max: Option<usize>) -> torcfg::Result<Report> {
    let (m_default, n_default) = match table {
        Table::Polygon => (8, 0),
        Table::Simplex => (0, 5),
        Table::Kij => (0, 6),
        Table::PageComparison => (6, 4),
        Table::Annulus => (12, 0),
    };
    let t: ReproTable =
        torcfg::reproduce::by_name(table.name(), m_max.unwrap_or(m_default), n_max.unwrap_or(n_default))?;
    Ok(Report {
        json: serde_json::to_value(&t).expect("serializable"),
        table: t.render_text(),
        pass: t.pass,
    })
}

fn dispatch(cmd: &Command) -> torcfg::Result<Report> {
    match cmd {
        Command::Hvector { polytope, lambda } => hvector(polytope, lambda.as_ref()),
        Command::Euler(e) => euler(e),
        Command::Coeff { k, verify } => coeff(*k, *verify),
        Command::Complex(c) => complex(c),
        Command::Homology { complex, coeff } => homology(complex, *coeff),
        Command::Ss(s) => ss(s),
        Command::Reproduce { table, m_max, n_max } => reproduce(*table, *m_max, *n_max),
    }
}

/// Runs one command and renders its output; nothing is printed here.
pub fn run(config: &RunConfig) -> Outcome {
    match dispatch(&config.command) {
        Ok(report) => {
            let output = match config.format {
                Format::Json => serde_json::to_string_pretty(&report.json).expect("serializable") + "\n",
                Format::Table => report.table,
            };
            Outcome {
                code: if report.pass { EXIT_OK } else { EXIT_FAIL },
                output,
            }
        }
        Err(e) => Outcome {
            code: exit_code(&e),
            output: format!("error: {e}\n"),
        },
    }
}

/// Bad input is a usage error; a model that fails its own checks is a failure.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ValidationFailed(_) | Error::NotAComplex(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

/// Sizes the global thread pool from `TORCFG_THREADS` when it is set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("TORCFG_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("TORCFG_THREADS must be a positive integer, got {value:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}
