//! The `rainbow` command line: catalog generation, homology, subdivision and
//! rainbow-simplex checks on instance files.
//!
//! Exit status: 0 when every checked hypothesis holds or an informational
//! command succeeds, 1 when some hypothesis fails, 2 on usage or input errors.

pub mod instance;
pub mod report;

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rainbow_core::{
    alexander_duality_audit, check_theorem, generate, iterated_subdivision, rainbow_simplices, reduced_betti,
    relative_betti, sperner_instance, ChromaticError, ComplexName, FieldSpec, TheoremId,
};

use instance::{parse_instance, Instance, InstanceError, InstanceFile};
use report::{render_audit, render_check, simplex_text, ReportFile};

#[derive(Debug, Parser)]
#[command(name = "rainbow", version, about = "Rainbow simplices in vertex-colored simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a catalog complex as an instance file.
    Gen {
        /// simplex(n), sphere(n), torus7, rp2_6, cycle(k), disjoint(k[,base])
        name: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Summarize a complex and its coloring.
    Info { path: String },
    /// Reduced Betti numbers.
    Betti {
        path: String,
        /// q, 2, 3, 5 or p:N; repeatable (default q)
        #[arg(long = "field")]
        fields: Vec<FieldSpec>,
    },
    /// Relative (unreduced) Betti numbers of the pair (K, L).
    Relbetti {
        path: String,
        /// Instance file holding the subcomplex L.
        #[arg(long)]
        sub: String,
        #[arg(long = "field")]
        fields: Vec<FieldSpec>,
    },
    /// Barycentric subdivision.
    Sd {
        path: String,
        #[arg(long, default_value_t = 1)]
        times: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Check the hypotheses of a theorem on a colored complex.
    Check {
        path: String,
        #[arg(long)]
        theorem: TheoremId,
        /// Repeatable; defaults to GF(2), GF(3), GF(5) and Q.
        #[arg(long = "field")]
        fields: Vec<FieldSpec>,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<String>,
    },
    /// List rainbow facets.
    Rainbow { path: String },
    /// Compare Betti numbers of complementary color classes on a homology sphere.
    AuditDuality {
        path: String,
        #[arg(long = "field")]
        fields: Vec<FieldSpec>,
    },
    /// Sperner-labeled iterated subdivision of a simplex.
    Sperner {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Write { path: String, source: std::io::Error },
}

impl From<ChromaticError> for CliError {
    fn from(e: ChromaticError) -> Self {
        CliError::Input(e.to_string())
    }
}

struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn fields_or(fields: Vec<FieldSpec>, default: &[FieldSpec]) -> Vec<FieldSpec> {
    let mut f = if fields.is_empty() { default.to_vec() } else { fields };
    f.dedup();
    f
}

fn write_file(path: &str, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Write { path: path.to_string(), source })
}

/// Emits `contents` to `out` if given, otherwise returns it for stdout.
fn emit(out: Option<&str>, contents: String, summary: String) -> Result<Output, CliError> {
    match out {
        Some(path) => {
            write_file(path, &contents)?;
            Ok(Output::ok(summary))
        }
        None => Ok(Output::ok(contents)),
    }
}

fn needs_coloring(inst: &Instance, path: &str) -> Result<rainbow_core::Coloring, CliError> {
    inst.coloring.clone().ok_or_else(|| CliError::Input(format!("{path}: instance has no classes")))
}

fn info(path: &str) -> Result<Output, CliError> {
    let inst = parse_instance(path)?;
    let k = &inst.complex;
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut s = String::new();
    if let Some(n) = &inst.name {
        let _ = writeln!(s, "name: {n}");
    }
    let f: Vec<String> = k.f_vector().iter().map(ToString::to_string).collect();
    let _ = writeln!(s, "vertices: {}", k.num_vertices());
    let _ = writeln!(s, "facets: {}", k.facets().len());
    let _ = writeln!(s, "dimension: {}", k.dim());
    let _ = writeln!(s, "f-vector: ({})", f.join(", "));
    let _ = writeln!(s, "euler characteristic: {}", k.euler_characteristic());
    let _ = writeln!(s, "pure: {}", yes(k.is_pure()));
    let _ = writeln!(s, "connected components: {}", k.connected_components().len());
    let pm = k.pseudomanifold_report();
    let _ = writeln!(
        s,
        "pseudomanifold: {} (closed: {}, ridge degrees ok: {}, links ok: {}, strongly connected: {})",
        yes(pm.is_pseudomanifold()),
        yes(pm.is_closed),
        yes(pm.ridge_degrees_ok),
        yes(pm.link_betti_ok),
        yes(pm.strongly_connected),
    );
    if !pm.bad_links.is_empty() {
        let _ = writeln!(s, "bad links at: {}", simplex_text(&pm.bad_links));
    }
    match &inst.coloring {
        Some(c) => {
            let sizes: Vec<String> = c.classes().iter().map(|cl| cl.len().to_string()).collect();
            let _ = writeln!(s, "coloring: {} classes, sizes ({})", c.num_classes(), sizes.join(", "));
        }
        None => {
            let _ = writeln!(s, "coloring: none");
        }
    }
    for w in &inst.warnings {
        let _ = writeln!(s, "{w}");
    }
    Ok(Output::ok(s))
}

fn dispatch(cmd: Command) -> Result<Output, CliError> {
    match cmd {
        Command::Gen { name, out } => {
            let parsed: ComplexName = name.parse().map_err(|e: rainbow_core::generators::GeneratorError| {
                CliError::Input(e.to_string())
            })?;
            let g = generate(&parsed).map_err(|e| CliError::Input(e.to_string()))?;
            let file = InstanceFile::from_complex(Some(g.name.to_string()), &g.complex, None);
            let summary = format!("wrote {} ({} facets)\n", g.name, g.complex.facets().len());
            emit(out.as_deref(), file.to_json(), summary)
        }
        Command::Info { path } => info(&path),
        Command::Betti { path, fields } => {
            let inst = parse_instance(&path)?;
            let mut s = String::new();
            for f in fields_or(fields, &[FieldSpec::Q]) {
                let _ = writeln!(s, "β̃ = {} over {f}", reduced_betti(&inst.complex, f));
            }
            Ok(Output::ok(s))
        }
        Command::Relbetti { path, sub, fields } => {
            let inst = parse_instance(&path)?;
            let l = parse_instance(&sub)?;
            let mut s = String::new();
            for f in fields_or(fields, &[FieldSpec::Q]) {
                let b = relative_betti(&inst.complex, &l.complex, f).map_err(|e| CliError::Input(e.to_string()))?;
                let _ = writeln!(s, "H(K, L) = {b} over {f}");
            }
            Ok(Output::ok(s))
        }
        Command::Sd { path, times, out } => {
            let inst = parse_instance(&path)?;
            let map = iterated_subdivision(&inst.complex, times).map_err(|e| CliError::Input(e.to_string()))?;
            let base = inst.name.clone().unwrap_or_else(|| "K".into());
            let name = if times == 1 { format!("sd({base})") } else { format!("sd^{times}({base})") };
            let file = InstanceFile::from_complex(Some(name.clone()), &map.subdivided, None);
            let summary = format!("wrote {name} ({} facets)\n", map.subdivided.facets().len());
            emit(out.as_deref(), file.to_json(), summary)
        }
        Command::Check { path, theorem, fields, json } => {
            let inst = parse_instance(&path)?;
            let c = needs_coloring(&inst, &path)?;
            let fields = fields_or(fields, &FieldSpec::default_menu());
            let start = Instant::now();
            let r = check_theorem(&inst.complex, &c, theorem, &fields)?;
            let elapsed = start.elapsed().as_millis() as u64;
            let text = render_check(&r);
            let code = if r.all_hold && r.consistent { 0 } else { 1 };
            if let Some(j) = json {
                write_file(&j, &ReportFile::new(inst.name.clone(), r, elapsed).to_json())?;
            }
            Ok(Output { text, code })
        }
        Command::Rainbow { path } => {
            let inst = parse_instance(&path)?;
            let c = needs_coloring(&inst, &path)?;
            let found = rainbow_simplices(&inst.complex, &c)?;
            let mut s = format!("rainbow simplices: {}\n", found.len());
            for r in &found {
                let _ = writeln!(s, "  {}", simplex_text(&inst.complex.labels_of(r)));
            }
            Ok(Output::ok(s))
        }
        Command::AuditDuality { path, fields } => {
            let inst = parse_instance(&path)?;
            let c = needs_coloring(&inst, &path)?;
            let mut s = String::new();
            let mut pass = true;
            for f in fields_or(fields, &[FieldSpec::Q]) {
                let a = alexander_duality_audit(&inst.complex, &c, f)?;
                pass &= a.pass;
                s.push_str(&render_audit(&a));
            }
            Ok(Output { text: s, code: if pass { 0 } else { 1 } })
        }
        Command::Sperner { dim, depth, out } => {
            let inst = sperner_instance(dim, depth).map_err(|e| CliError::Input(e.to_string()))?;
            let name = format!("sperner({dim},{depth})");
            let file = InstanceFile::from_complex(Some(name.clone()), &inst.complex, Some(&inst.coloring));
            let count = rainbow_simplices(&inst.complex, &inst.coloring)?.len();
            let summary =
                format!("wrote {name} ({} facets, {count} rainbow)\n", inst.complex.facets().len());
            emit(out.as_deref(), file.to_json(), summary)
        }
    }
}

/// Runs one command line (including the program name) and returns the exit
/// status. Nothing is written to the process streams directly.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                2
            } else {
                let _ = stdout.write_all(text.as_bytes());
                0
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => {
            let _ = stdout.write_all(out.text.as_bytes());
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}
