//! The `lkit` command line. [`run`] parses arguments, dispatches one command
//! and returns the process exit code: 0 on success, 1 on a domain error
//! (invalid chart, mismatch, failed move) and 2 on an I/O or parse error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::chart::{self, derive_hurwitz_seeded, sigma_chart, sigma_luo, validate, Chart, ChartWord, Counts, Flavor};
use crate::classifier::{invariants_of, stable_equivalent, Mode, Presentation};
use crate::error::Error;
use crate::formats::{format_factorization, format_matrix, parse_factorization, parse_lagrangian, parse_matrix, parse_word_file, parse_word_line};
use crate::meyer::{maslov, tau_detailed};
use crate::moves::factory::{factory, FactoryName};
use crate::moves::{apply_script, MoveScript};
use crate::signature::{i_g, Factorization, InvariantTuple};
use crate::symplectic::{eval_word, SpMatrix};
use crate::words::{expand_derived, expand_relator, Derived, RelatorId};

const DEFAULT_MAX_GENUS: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "lkit", version, about = "Invariants of Lefschetz fibrations from words and charts")]
struct Cli {
    /// Structured JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Write the main result to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Seed for commands that make arbitrary choices.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct WordSource {
    /// A relator name such as r_C, r_B(2) or r_F(1,3).
    #[arg(long)]
    relator: Option<String>,
    /// A derived word such as tau(2), ell(1) or delta_g.
    #[arg(long)]
    derived: Option<String>,
    /// A word in the generators, e.g. "z1 Z2 z3".
    #[arg(long)]
    word: Option<String>,
    /// A word file; each word line is treated separately.
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print relator words.
    Relator {
        #[arg(long)]
        genus: usize,
        /// Relator name; all relators when omitted.
        name: Option<String>,
    },
    /// Evaluate words in Sp(2g, Z).
    Eval {
        #[arg(long)]
        genus: Option<usize>,
        #[command(flatten)]
        source: WordSource,
    },
    /// The Meyer cocycle of two matrices.
    Tau {
        #[arg(long, value_name = "B.mat", conflicts_with_all = ["identity_right", "a"])]
        identity_left: Option<PathBuf>,
        #[arg(long, value_name = "A.mat", conflicts_with_all = ["identity_left", "a"])]
        identity_right: Option<PathBuf>,
        a: Option<PathBuf>,
        b: Option<PathBuf>,
    },
    /// The Maslov index of three Lagrangians.
    Maslov { l1: PathBuf, l2: PathBuf, l3: PathBuf },
    /// The local signature sum of words.
    Ig {
        #[arg(long)]
        genus: Option<usize>,
        #[command(flatten)]
        source: WordSource,
    },
    /// The invariant tuple of a chart or factorization file.
    Tuple { file: PathBuf },
    /// Validate a chart file.
    ChartValidate { file: PathBuf },
    /// The chart signature.
    ChartSigma { file: PathBuf },
    /// A Hurwitz factorization read off a chart.
    ChartDerive { file: PathBuf },
    /// Replay a move script on a chart.
    ChartMove { chart: PathBuf, script: PathBuf },
    /// Stable equivalence of two presentations.
    Compare {
        p: Option<PathBuf>,
        q: Option<PathBuf>,
        #[arg(long, default_value = "universal")]
        mode: String,
        /// A file of `left right` path pairs, one per line.
        #[arg(long, conflicts_with_all = ["p", "q"])]
        batch: Option<PathBuf>,
    },
    /// The fiber sum of two charts, glued along a tube word.
    FiberSum {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value = "")]
        tube: String,
    },
    /// Graphviz DOT for a chart.
    ExportDot { file: PathBuf },
    /// Emit a ready-made chart: L_0(i), L_h, R_C, R_L, with optional _mirror.
    Factory {
        name: String,
        #[arg(long, default_value_t = 3)]
        genus: usize,
    },
}

struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn domain(msg: impl Into<String>) -> Self {
        Failure { code: 1, msg: msg.into() }
    }
}

/// Errors from the library, attributed to the file they came from.
fn at(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| {
        let code = if matches!(e, Error::Parse { .. }) { 2 } else { 1 };
        Failure { code, msg: format!("{}: {e}", path.display()) }
    }
}

fn bare(e: Error) -> Failure {
    let code = if matches!(e, Error::Parse { .. }) { 2 } else { 1 };
    Failure { code, msg: e.to_string() }
}

type Out<T> = std::result::Result<T, Failure>;

struct Ctx {
    json: bool,
    out: Option<PathBuf>,
    seed: Option<u64>,
    max_genus: usize,
}

impl Ctx {
    fn genus(&self, g: usize) -> Out<usize> {
        if g > self.max_genus {
            return Err(Failure::domain(format!("genus {g} exceeds LKIT_MAX_GENUS={}", self.max_genus)));
        }
        Ok(g)
    }

    fn read(&self, path: &Path) -> Out<String> {
        std::fs::read_to_string(path).map_err(|e| Failure { code: 2, msg: format!("{}: {e}", path.display()) })
    }

    fn chart(&self, path: &Path) -> Out<Chart> {
        let c = chart::json::from_json(&self.read(path)?).map_err(at(path))?;
        self.genus(c.g)?;
        Ok(c)
    }

    fn presentation(&self, path: &Path) -> Out<Presentation> {
        let text = self.read(path)?;
        let p: Presentation = if text.trim_start().starts_with('{') {
            chart::json::from_json(&text).map_err(at(path))?.into()
        } else {
            parse_factorization(&text).map_err(at(path))?.into()
        };
        self.genus(p.g())?;
        Ok(p)
    }

    fn matrix(&self, path: &Path) -> Out<SpMatrix> {
        let m = parse_matrix(&self.read(path)?).map_err(at(path))?;
        self.genus(m.g())?;
        Ok(m)
    }

    fn words(&self, genus: Option<usize>, src: &WordSource) -> Out<(usize, Vec<(String, ChartWord)>)> {
        if let Some(path) = &src.file {
            let f = parse_word_file(&self.read(path)?).map_err(at(path))?;
            self.genus(f.g)?;
            let words = f.words.into_iter().enumerate().map(|(i, w)| (format!("word {}", i + 1), w)).collect();
            return Ok((f.g, words));
        }
        let g = self.genus(genus.ok_or_else(|| Failure { code: 2, msg: "--genus is required here".into() })?)?;
        let (name, word) = if let Some(r) = &src.relator {
            let id: RelatorId = r.parse().map_err(bare)?;
            (id.to_string(), ChartWord::Gen(expand_relator(id, g).map_err(bare)?))
        } else if let Some(d) = &src.derived {
            let id: Derived = d.parse().map_err(bare)?;
            (d.trim().to_string(), ChartWord::Gen(expand_derived(id, g).map_err(bare)?))
        } else {
            let text = src.word.as_deref().unwrap_or_default();
            (text.to_string(), parse_word_line(text, g).map_err(bare)?)
        };
        Ok((g, vec![(name, word)]))
    }

    /// Sends the main result to `--out` or standard output.
    fn emit(&self, stdout: &mut dyn Write, text: &str) -> Out<()> {
        let mut text = text.to_string();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match &self.out {
            Some(p) => std::fs::write(p, text).map_err(|e| Failure { code: 2, msg: format!("{}: {e}", p.display()) }),
            None => stdout.write_all(text.as_bytes()).map_err(|e| Failure { code: 2, msg: e.to_string() }),
        }
    }

    fn emit_json(&self, stdout: &mut dyn Write, v: &Value) -> Out<()> {
        self.emit(stdout, &serde_json::to_string_pretty(v).expect("json values serialize"))
    }
}

/// Runs one invocation, writing results to `stdout` and diagnostics to
/// `stderr`.
pub fn run_with(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    let max_genus = match std::env::var("LKIT_MAX_GENUS") {
        Ok(v) => match v.trim().parse() {
            Ok(n) => n,
            Err(_) => {
                let _ = writeln!(stderr, "LKIT_MAX_GENUS: expected an integer, got '{v}'");
                return 2;
            }
        },
        Err(_) => DEFAULT_MAX_GENUS,
    };
    let ctx = Ctx { json: cli.json, out: cli.out, seed: cli.seed, max_genus };
    match dispatch(&ctx, cli.command, stdout) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.msg);
            f.code
        }
    }
}

pub fn run(argv: &[String]) -> i32 {
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn matrix_json(m: &SpMatrix) -> Value {
    let rows: Vec<Vec<Value>> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string().parse::<i64>().map(Value::from).unwrap_or_else(|_| x.to_string().into())).collect())
        .collect();
    json!({ "g": m.g(), "rows": rows })
}

fn tuple_text(t: &InvariantTuple) -> String {
    let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    format!(
        "n0+ = {}\nn0- = {}\nnh+ = [{}]\nnh- = [{}]\nsigma = {}",
        t.n0_plus,
        t.n0_minus,
        list(&t.nh_plus),
        list(&t.nh_minus),
        t.sigma
    )
}

fn chart_value(c: &Chart) -> Out<Value> {
    let text = chart::json::to_json(c).map_err(bare)?;
    Ok(serde_json::from_str(&text).expect("chart JSON re-parses"))
}

fn chart_sigma(c: &Chart) -> crate::Result<i64> {
    validate(c).into_result()?;
    match c.flavor {
        Flavor::Wajnryb => sigma_chart(c),
        Flavor::Luo => sigma_luo(&Counts::of(c)),
    }
}

fn dispatch(ctx: &Ctx, command: Command, stdout: &mut dyn Write) -> Out<i32> {
    match command {
        Command::Relator { genus, name } => {
            let g = ctx.genus(genus)?;
            let ids = match name {
                Some(n) => vec![n.parse::<RelatorId>().map_err(bare)?],
                None => RelatorId::all(g),
            };
            let mut rows = Vec::new();
            for id in ids {
                let w = expand_relator(id, g).map_err(bare)?;
                rows.push((id, w));
            }
            if ctx.json {
                let v: Vec<Value> = rows
                    .iter()
                    .map(|(id, w)| json!({ "name": id.to_string(), "word": w.to_string(), "length": w.len(), "exponent_sum": w.exponent_sum() }))
                    .collect();
                ctx.emit_json(stdout, &json!({ "g": g, "relators": v }))?;
            } else {
                let mut s = String::new();
                for (id, w) in &rows {
                    let _ = writeln!(s, "{id}: {w}");
                }
                ctx.emit(stdout, &s)?;
            }
        }
        Command::Eval { genus, source } => {
            let (g, words) = ctx.words(genus, &source)?;
            let mats: Vec<(String, SpMatrix)> = words.into_iter().map(|(n, w)| (n, eval_word(&w.to_twists()))).collect();
            if ctx.json {
                let v: Vec<Value> = mats
                    .iter()
                    .map(|(n, m)| json!({ "name": n, "identity": m.is_identity(), "matrix": matrix_json(m) }))
                    .collect();
                ctx.emit_json(stdout, &json!({ "g": g, "results": v }))?;
            } else {
                let s: Vec<String> = mats.iter().map(|(_, m)| format_matrix(m)).collect();
                ctx.emit(stdout, &s.join("\n"))?;
            }
        }
        Command::Tau { identity_left, identity_right, a, b } => {
            let (ma, mb) = match (identity_left, identity_right, a, b) {
                (Some(p), None, None, None) => {
                    let m = ctx.matrix(&p)?;
                    (SpMatrix::identity(m.g()), m)
                }
                (None, Some(p), None, None) => {
                    let m = ctx.matrix(&p)?;
                    let id = SpMatrix::identity(m.g());
                    (m, id)
                }
                (None, None, Some(a), Some(b)) => (ctx.matrix(&a)?, ctx.matrix(&b)?),
                _ => return Err(Failure { code: 2, msg: "tau needs A.mat B.mat, --identity-left B.mat or --identity-right A.mat".into() }),
            };
            let r = tau_detailed(&ma, &mb).map_err(bare)?;
            if ctx.json {
                ctx.emit_json(stdout, &json!({ "tau": r.value, "kernel_dim": r.kernel_dim, "symmetrized": r.symmetrized }))?;
            } else {
                ctx.emit(stdout, &r.value.to_string())?;
            }
        }
        Command::Maslov { l1, l2, l3 } => {
            let mut ls = Vec::new();
            for p in [&l1, &l2, &l3] {
                ls.push(parse_lagrangian(&ctx.read(p)?).map_err(at(p))?);
            }
            let v = maslov(&ls[0], &ls[1], &ls[2]).map_err(bare)?;
            if ctx.json {
                ctx.emit_json(stdout, &json!({ "maslov": v }))?;
            } else {
                ctx.emit(stdout, &v.to_string())?;
            }
        }
        Command::Ig { genus, source } => {
            let (g, words) = ctx.words(genus, &source)?;
            let vals: Vec<(String, i64)> = words.into_iter().map(|(n, w)| (n, i_g(&w.to_twists()))).collect();
            if ctx.json {
                let v: Vec<Value> = vals.iter().map(|(n, x)| json!({ "name": n, "ig": x })).collect();
                ctx.emit_json(stdout, &json!({ "g": g, "results": v }))?;
            } else if vals.len() == 1 {
                ctx.emit(stdout, &vals[0].1.to_string())?;
            } else {
                let s: Vec<String> = vals.iter().map(|(n, x)| format!("{n}: {x}")).collect();
                ctx.emit(stdout, &s.join("\n"))?;
            }
        }
        Command::Tuple { file } => {
            let p = ctx.presentation(&file)?;
            let t = invariants_of(&p).map_err(at(&file))?;
            if ctx.json {
                ctx.emit_json(stdout, &serde_json::to_value(&t).expect("tuple serializes"))?;
            } else {
                ctx.emit(stdout, &tuple_text(&t))?;
            }
        }
        Command::ChartValidate { file } => {
            let c = ctx.chart(&file)?;
            let r = validate(&c);
            if ctx.json {
                ctx.emit_json(stdout, &serde_json::to_value(&r).expect("report serializes"))?;
            } else {
                let mut s = format!(
                    "{}: V={} E={} F={} C={} euler={} (expected {})\n",
                    if r.ok { "valid" } else { "invalid" },
                    r.vertices,
                    r.edges,
                    r.faces,
                    r.components,
                    r.euler,
                    r.expected_euler
                );
                for d in &r.diagnostics {
                    let _ = writeln!(s, "{}: {}: {}", file.display(), d.entity, d.message);
                }
                ctx.emit(stdout, &s)?;
            }
            return Ok(if r.ok { 0 } else { 1 });
        }
        Command::ChartSigma { file } => {
            let c = ctx.chart(&file)?;
            let s = chart_sigma(&c).map_err(at(&file))?;
            if ctx.json {
                let counts = Counts::of(&c);
                ctx.emit_json(stdout, &json!({ "sigma": s, "counts": counts }))?;
            } else {
                ctx.emit(stdout, &s.to_string())?;
            }
        }
        Command::ChartDerive { file } => {
            let c = ctx.chart(&file)?;
            let f: Factorization = derive_hurwitz_seeded(&c, ctx.seed).map_err(at(&file))?;
            if ctx.json {
                let ig = i_g(f.word());
                ctx.emit_json(
                    stdout,
                    &json!({ "g": f.g(), "base_genus": f.base_genus(), "word": f.word().to_string(), "length": f.len(), "ig": ig }),
                )?;
            } else {
                ctx.emit(stdout, &format_factorization(&f))?;
            }
        }
        Command::ChartMove { chart: path, script } => {
            let c = ctx.chart(&path)?;
            let s = MoveScript::from_json(&ctx.read(&script)?).map_err(at(&script))?;
            let steps = apply_script(&c, &s).map_err(at(&script))?;
            let mut rows = vec![("start".to_string(), c.clone(), None)];
            for (m, a) in s.moves.iter().zip(&steps) {
                rows.push((m.name().to_string(), a.chart.clone(), a.transition.clone()));
            }
            let mut table = Vec::new();
            for (name, chart, note) in &rows {
                let t = Counts::of(chart).tuple(chart_sigma(chart).map_err(bare)?);
                table.push((name.clone(), chart.vertices.len(), chart.edges.len(), t, note.clone()));
            }
            let last = rows.last().map(|r| &r.1).unwrap_or(&c);
            if ctx.json {
                let t: Vec<Value> = table
                    .iter()
                    .map(|(n, v, e, t, note)| json!({ "move": n, "vertices": v, "edges": e, "tuple": t, "transition": note }))
                    .collect();
                let v = json!({ "before": chart_value(&c)?, "after": chart_value(last)?, "steps": t });
                ctx.emit_json(stdout, &v)?;
            } else {
                let mut s = format!("{:<4} {:<20} {:>4} {:>4} {:>5} {:>5} {:>6}  nh\n", "step", "move", "V", "E", "n0+", "n0-", "sigma");
                for (i, (n, v, e, t, _)) in table.iter().enumerate() {
                    let nh = t.nh_plus.iter().zip(&t.nh_minus).map(|(p, m)| format!("{p}/{m}")).collect::<Vec<_>>().join(" ");
                    let _ = writeln!(s, "{i:<4} {n:<20} {v:>4} {e:>4} {:>5} {:>5} {:>6}  {nh}", t.n0_plus, t.n0_minus, t.sigma);
                }
                let changed = table.first().map(|r| &r.3) != table.last().map(|r| &r.3);
                let _ = writeln!(s, "invariants {}", if changed { "changed" } else { "unchanged" });
                match &ctx.out {
                    Some(p) => {
                        let text = chart::json::to_json(last).map_err(bare)?;
                        std::fs::write(p, text + "\n").map_err(|e| Failure { code: 2, msg: format!("{}: {e}", p.display()) })?;
                        stdout.write_all(s.as_bytes()).map_err(|e| Failure { code: 2, msg: e.to_string() })?;
                    }
                    None => {
                        s.push_str(&chart::json::to_json(last).map_err(bare)?);
                        ctx.emit(stdout, &s)?;
                    }
                }
            }
        }
        Command::Compare { p, q, mode, batch } => {
            let mode: Mode = mode.parse().map_err(|e: Error| Failure { code: 2, msg: e.to_string() })?;
            let pairs: Vec<(PathBuf, PathBuf)> = match (batch, p, q) {
                (Some(b), None, None) => {
                    let text = ctx.read(&b)?;
                    let dir = b.parent().map(Path::to_path_buf).unwrap_or_default();
                    let mut pairs = Vec::new();
                    for (n, line) in text.lines().enumerate() {
                        let line = line.split('#').next().unwrap_or("").trim();
                        if line.is_empty() {
                            continue;
                        }
                        let parts: Vec<&str> = line.split_whitespace().collect();
                        if parts.len() != 2 {
                            return Err(Failure { code: 2, msg: format!("{}: line {}: expected two paths", b.display(), n + 1) });
                        }
                        pairs.push((dir.join(parts[0]), dir.join(parts[1])));
                    }
                    pairs
                }
                (None, Some(p), Some(q)) => vec![(p, q)],
                _ => return Err(Failure { code: 2, msg: "compare needs two files or --batch".into() }),
            };
            let mut verdicts = Vec::new();
            for (a, b) in &pairs {
                let (pa, pb) = (ctx.presentation(a)?, ctx.presentation(b)?);
                let v = stable_equivalent(&pa, &pb, mode).map_err(|e| at(a)(e))?;
                verdicts.push(v);
            }
            if ctx.json {
                let mut vals: Vec<Value> = verdicts.iter().map(|v| serde_json::to_value(v).expect("verdict serializes")).collect();
                let v = if vals.len() == 1 && pairs.len() == 1 { vals.remove(0) } else { Value::Array(vals) };
                ctx.emit_json(stdout, &v)?;
            } else {
                let mut s = String::new();
                for ((a, b), v) in pairs.iter().zip(&verdicts) {
                    let detail = if v.equivalent {
                        format!("equivalent, N = {}", v.n.unwrap_or_default())
                    } else {
                        let c: Vec<String> = v.failing_conditions.iter().map(|c| c.to_string()).collect();
                        format!("not equivalent, fails {}", c.join(" "))
                    };
                    let _ = writeln!(s, "{} {}: {detail}", a.display(), b.display());
                }
                ctx.emit(stdout, &s)?;
            }
        }
        Command::FiberSum { left, right, tube } => {
            let (a, b) = (ctx.chart(&left)?, ctx.chart(&right)?);
            let w = parse_word_line(&tube, a.g).map_err(bare)?;
            let c = crate::moves::fiber_sum(&a, &b, &w).map_err(bare)?;
            ctx.emit(stdout, &chart::json::to_json(&c).map_err(bare)?)?;
        }
        Command::ExportDot { file } => {
            let c = ctx.chart(&file)?;
            ctx.emit(stdout, &chart::dot::to_dot(&c))?;
        }
        Command::Factory { name, genus } => {
            let g = ctx.genus(genus)?;
            let n: FactoryName = name.parse().map_err(bare)?;
            let c = factory(n, g).map_err(bare)?;
            ctx.emit(stdout, &chart::json::to_json(&c).map_err(bare)?)?;
        }
    }
    Ok(0)
}
