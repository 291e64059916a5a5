//! Command-line surface: argument parsing, config ingestion, report
//! rendering and exit codes (0 success, 1 check mismatch, 2 invalid input,
//! 3 computation failure).

mod errors;
mod expr;

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use o2deg::burnside::multiply;
use o2deg::characters::{dihedral_character_table, isotypic_multiplicities};
use o2deg::degrees::{basic_degree, degree_report, AnalysisConfig};
use o2deg::fixtures::{check_d8, FixtureReport};
use o2deg::gamma::GammaGroup;
use o2deg::o2_lattice::{folding_relation, SymmetryGroup};
use o2deg::pendula::{existence_report, PendulaSpec};
use o2deg::representations::{IndexConvention, IrrepLabel};
use o2deg_galerkin::{
    default_candidates, isotropy_check, newton_solve, seed_state, symmetric_basis, Model, NewtonOptions,
    SolutionExport,
};
use serde::Serialize;
use serde_json::json;

pub use errors::CliError;
pub use expr::parse_element;

#[derive(Parser, Debug)]
#[command(name = "o2deg", version, about = "Equivariant degree computations for O(2) x D_N x Z2")]
pub struct Cli {
    /// Emit JSON instead of aligned text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Which irreducible the index j denotes (default: antipodal, or the
    /// config's own setting).
    #[arg(long, global = true, value_enum)]
    pub convention: Option<Convention>,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Convention {
    Antipodal,
    Reference,
}

impl From<Convention> for IndexConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Antipodal => IndexConvention::Antipodal,
            Convention::Reference => IndexConvention::Reference,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Conjugacy classes of subgroups of D<N> or D<N>xZ2.
    Ccs { group: String },
    /// Character table of D_N and the isotypic decomposition of R^N.
    CharacterTable { n: usize },
    /// Maximal orbit types of V_{m,j} (every j when omitted).
    MaximalOrbitTypes {
        group: String,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        j: Option<usize>,
    },
    /// Basic degree of V_{m,j}.
    BasicDegree {
        group: String,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        j: usize,
    },
    /// Product of two Burnside ring elements, e.g. "1(G) - 1(D1 x D8p)".
    BurnsideMul { group: String, a: String, b: String },
    /// The s-folding of an orbit type.
    Fold { group: String, orbit_type: String, s: u32 },
    /// Folding relation for (s0, s1) against the subconjugacy of the folds.
    FoldingRelation { group: String, orbit_type: String, s0: u32, s1: u32 },
    /// Degree or existence report for a config file.
    Analyze {
        #[arg(long)]
        config: PathBuf,
    },
    /// Galerkin search for a periodic orbit in a fixed space.
    VerifySolution {
        #[arg(long)]
        config: PathBuf,
        /// Defaults to the first predicted type with m = 1 and the largest j.
        #[arg(long)]
        orbit_type: Option<String>,
        #[arg(long, default_value_t = 8)]
        modes: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV samples of u(t) on 256 points.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Recompute the D8 reference tables and compare.
    FixturesCheck,
}

/// Parses `argv` (program name first), writes the report to `stdout` and
/// returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &report.text) {
                    let _ = writeln!(stderr, "cli: cannot write {}: {e}", path.display());
                    return 2;
                }
            }
            let _ = write!(stdout, "{}", report.text);
            report.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

struct Report {
    text: String,
    code: i32,
}

fn ok(text: String) -> Result<Report, CliError> {
    Ok(Report { text, code: 0 })
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

fn group(spec: &str) -> Result<SymmetryGroup, CliError> {
    Ok(SymmetryGroup::new(GammaGroup::parse(spec)?))
}

fn read_json(path: &Path) -> Result<serde_json::Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::validation("cli", format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::validation("cli", format!("{}: {e}", path.display())))
}

enum Config {
    Pendula(PendulaSpec),
    General(AnalysisConfig),
}

/// Pendula configs carry `N`; general ones carry `gammaN`.
fn load_config(path: &Path) -> Result<Config, CliError> {
    let v = read_json(path)?;
    let bad = |e: serde_json::Error| CliError::validation("cli", format!("{}: {e}", path.display()));
    if v.get("N").is_some() {
        Ok(Config::Pendula(serde_json::from_value(v).map_err(bad)?))
    } else if v.get("gammaN").is_some() {
        Ok(Config::General(serde_json::from_value(v).map_err(bad)?))
    } else {
        Err(CliError::validation("cli", format!("{}: expected an \"N\" or \"gammaN\" field", path.display())))
    }
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let conv: IndexConvention = cli.convention.map(Into::into).unwrap_or_default();
    match &cli.command {
        Command::Ccs { group: spec } => {
            let g = GammaGroup::parse(spec)?;
            if cli.json {
                return ok(to_json(&g.to_json()));
            }
            let mut s = format!("{} classes in {}\n", g.classes().len(), g.label());
            let _ = writeln!(s, "{:<10} {:>6} {:>6}", "name", "order", "size");
            for (i, c) in g.classes().iter().enumerate() {
                let _ = writeln!(s, "{:<10} {:>6} {:>6}", g.class_name(i), c.order(), c.class_size());
            }
            ok(s)
        }
        Command::CharacterTable { n } => {
            let table = dihedral_character_table(*n)?;
            let mult = isotypic_multiplicities(*n)?;
            if cli.json {
                let classes: Vec<_> = (0..table.classes.len())
                    .map(|i| json!({"representative": table.class_name(i), "size": table.classes[i].1}))
                    .collect();
                let rows: Vec<_> = table
                    .rows
                    .iter()
                    .map(|(r, v)| json!({"irrep": r.label(*n), "values": v.iter().map(|x| x.to_string()).collect::<Vec<_>>()}))
                    .collect();
                return ok(to_json(&json!({"n": n, "classes": classes, "rows": rows, "isotypic": mult})));
            }
            let mut s = table.render();
            s.push('\n');
            let _ = writeln!(s, "{:<4} {:>4} {:>4}", "j", "m_j", "dim");
            for m in &mult {
                let _ = writeln!(s, "{:<4} {:>4} {:>4}", m.j, m.multiplicity, m.dim);
            }
            ok(s)
        }
        Command::MaximalOrbitTypes { group: spec, m, j } => {
            let g = group(spec)?;
            let js: Vec<usize> = match j {
                Some(j) => vec![*j],
                None => (0..=g.gamma().n() / 2).collect(),
            };
            let mut sets = Vec::new();
            for j in js {
                let v = g.irrep(IrrepLabel::new(*m, j), conv)?;
                let members: Vec<String> = g.maximal_orbit_types(&v)?.iter().map(|t| g.name(t)).collect();
                sets.push(json!({"m": m, "j": j, "members": members}));
            }
            if cli.json {
                let out = if sets.len() == 1 { sets.remove(0) } else { json!(sets) };
                return ok(to_json(&out));
            }
            let mut s = String::new();
            for set in &sets {
                let members: Vec<&str> = set["members"].as_array().unwrap().iter().filter_map(|x| x.as_str()).collect();
                let _ = writeln!(s, "M({},{}) = {{{}}}", set["m"], set["j"], members.join(", "));
            }
            ok(s)
        }
        Command::BasicDegree { group: spec, m, j } => {
            let g = group(spec)?;
            let d = basic_degree(&g, IrrepLabel::new(*m, *j), conv)?;
            if cli.json {
                return ok(to_json(&json!({"m": m, "j": j, "degree": d.export(&g)})));
            }
            ok(format!("{}\n", d.render(&g)))
        }
        Command::BurnsideMul { group: spec, a, b } => {
            let g = group(spec)?;
            let (x, y) = (parse_element(&g, a)?, parse_element(&g, b)?);
            let p = multiply(&g, &x, &y)?;
            if cli.json {
                return ok(to_json(&p.export(&g)));
            }
            ok(format!("{}\n", p.render(&g)))
        }
        Command::Fold { group: spec, orbit_type, s } => {
            let g = group(spec)?;
            if *s == 0 {
                return Err(CliError::validation("o2-lattice", "folding index must be positive"));
            }
            let t = g.parse(orbit_type)?;
            let f = g.name(&g.fold(&t, *s));
            if cli.json {
                return ok(to_json(&json!({"orbit_type": g.name(&t), "s": s, "fold": f})));
            }
            ok(format!("{f}\n"))
        }
        Command::FoldingRelation { group: spec, orbit_type, s0, s1 } => {
            let g = group(spec)?;
            if *s0 == 0 || *s1 == 0 {
                return Err(CliError::validation("o2-lattice", "folding indices must be positive"));
            }
            let t = g.parse(orbit_type)?;
            let m = g.m_of(t.rep());
            let relation = folding_relation(m, *s0, *s1);
            let (f0, f1) = (g.fold(&t, *s0), g.fold(&t, *s1));
            let sub = g.subconjugate(&f1, &f0);
            let report = json!({
                "orbit_type": g.name(&t), "m": m, "s0": s0, "s1": s1,
                "relation": relation, "fold_s0": g.name(&f0), "fold_s1": g.name(&f1),
                "subconjugate": sub, "agree": relation == sub,
            });
            if cli.json {
                return ok(to_json(&report));
            }
            ok(format!(
                "m = {m}\nrelation({s0}, {s1}) = {relation}\n{} <= {} : {sub}\n",
                g.name(&f1),
                g.name(&f0)
            ))
        }
        Command::Analyze { config } => match load_config(config)? {
            Config::Pendula(spec) => {
                let mut c = spec.config()?;
                c.convention = conv;
                let g = group(&format!("D{}xZ2", spec.n))?;
                let r = existence_report(&g, &c)?;
                if cli.json {
                    return ok(to_json(&r));
                }
                let mut s = format!("{}\nSigma_0: ", r.sign_convention);
                let idx: Vec<String> = r.sigma_zero.iter().map(|i| format!("({},{})", i.m, i.j)).collect();
                let _ = writeln!(s, "{}", idx.join(" "));
                if !r.resonant.is_empty() {
                    let res: Vec<String> = r.resonant.iter().map(|i| format!("({},{})", i.m, i.j)).collect();
                    let _ = writeln!(s, "resonant (dropped): {}", res.join(" "));
                }
                for e in &r.entries {
                    let _ = writeln!(s, "{:>3} {:>3} {:>4}  {}", e.m, e.j, e.coefficient, e.orbit_type);
                }
                for e in &r.excluded {
                    let _ = writeln!(s, "{:>3} {:>3} {:>4}  {}  ({})", e.m, e.j, "-", e.orbit_type, e.reason);
                }
                ok(s)
            }
            Config::General(mut c) => {
                if cli.convention.is_some() {
                    c.convention = conv;
                }
                let g = group(&format!("D{}xZ2", c.gamma_n))?;
                let r = degree_report(&g, &c)?;
                if cli.json {
                    return ok(to_json(&r));
                }
                let mut s = String::new();
                for e in &r.maximal_kind_nonzero {
                    let _ = writeln!(s, "{:>4}  {}  (m={}, j={})", e.coeff, e.orbit_type, e.witness.m, e.witness.j);
                }
                let _ = writeln!(s, "invariant: {} terms", r.invariant.len());
                ok(s)
            }
        },
        Command::VerifySolution { config, orbit_type, modes, tol, seed, csv } => {
            let spec = match load_config(config)? {
                Config::Pendula(s) => s,
                Config::General(_) => {
                    return Err(CliError::validation("cli", "verify-solution needs a pendula config"))
                }
            };
            if *modes == 0 {
                return Err(CliError::validation("galerkin", "modes must be positive"));
            }
            let g = group(&format!("D{}xZ2", spec.n))?;
            let t = match orbit_type {
                Some(name) => g.parse(name)?,
                None => {
                    let mut c = spec.config()?;
                    c.convention = conv;
                    let r = existence_report(&g, &c)?;
                    let best = r
                        .entries
                        .iter()
                        .filter(|e| e.m == 1)
                        .max_by_key(|e| e.j)
                        .ok_or_else(|| CliError::validation("pendula", "no predicted orbit type with m = 1"))?;
                    g.parse(&best.orbit_type)?
                }
            };
            let model = Model::pendula(&spec, *modes)?;
            let basis = symmetric_basis(&g, &t, *modes)?;
            let x0 = seed_state(&basis, *modes, spec.n, *seed)?;
            let opts = NewtonOptions { tol: *tol, ..NewtonOptions::default() };
            let sol = newton_solve(&x0, &model, &basis, &opts)?;
            let iso = isotropy_check(&g, &sol.state, 1e-6, &default_candidates(&g, 2 * spec.n as u32));
            let meets = iso.largest_type.is_some_and(|u| g.subconjugate(&t, &u));
            if let Some(path) = csv {
                std::fs::write(path, sol.state.to_csv())
                    .map_err(|e| CliError::validation("cli", format!("cannot write {}: {e}", path.display())))?;
            }
            let export = SolutionExport::new(&sol, iso.largest.clone(), *seed);
            if cli.json {
                return ok(to_json(&json!({
                    "target": g.name(&t), "solution": export, "isotropy": iso, "guarantee_met": meets,
                })));
            }
            let mut s = String::new();
            let _ = writeln!(s, "target      {}", g.name(&t));
            let _ = writeln!(s, "modes       {}", modes);
            let _ = writeln!(s, "seed        {}", seed);
            let _ = writeln!(s, "residual    {:.3e}", sol.residual_norm);
            let _ = writeln!(s, "iterations  {}", sol.iterations);
            let _ = writeln!(s, "stationary  {}", !sol.nonstationary);
            let _ = writeln!(s, "mode-1 norm {:.12}", sol.state.mode_norm(1));
            let _ = writeln!(s, "isotropy    {}", iso.largest.as_deref().unwrap_or("(trivial)"));
            let _ = writeln!(s, "guarantee   {}", if meets { "met" } else { "NOT met" });
            ok(s)
        }
        Command::FixturesCheck => {
            let g = group("D8xZ2")?;
            let r = check_d8(&g)?;
            let code = if r.passed() { 0 } else { 1 };
            let text = if cli.json { to_json(&r) } else { render_fixtures(&r) };
            Ok(Report { text, code })
        }
    }
}

fn render_fixtures(r: &FixtureReport) -> String {
    let status = |b: bool| if b { "PASS" } else { "FAIL" };
    let mut s = String::new();
    let _ = writeln!(s, "{}  class names", status(r.classes.is_empty()));
    for l in &r.labels {
        let _ = writeln!(s, "{}  M(1,{}) maximal set", status(l.maximal.is_empty()), l.j);
        let _ = writeln!(s, "{}  deg(1,{}) support and signs", status(l.degree_signs.is_empty()), l.j);
        let _ = write!(s, "{}  deg(1,{}) exact coefficients", status(l.degree.is_empty()), l.j);
        if !l.degree.is_empty() {
            let _ = write!(s, "  reference {} / computed {}", l.degree.missing.join(" "), l.degree.unexpected.join(" "));
        }
        s.push('\n');
    }
    let _ = writeln!(s, "{}", status(r.passed()));
    s
}
