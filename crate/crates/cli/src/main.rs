use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use furstenberg::borel::{enumerate_borel_sets, verify_frontier_lemma};
use furstenberg::degen::{dilate, gin, is_borel_fixed};
use furstenberg::fverify::{
    bound_report, induction_step_check, make_fat_point, make_rotations_union, search_furstenberg_sets, BoundReport,
    SearchMode,
};
use furstenberg::gb::paper_lex;
use furstenberg::geom::{enumerate_directions, plucker, Chart, Direction};
use furstenberg::incidence::{direction_richness, radon_transform_with, restriction_sides, IncidenceTable};
use furstenberg::io::parse_ideal_file;
use furstenberg::poly::{parse_field_element, OrderKind};
use furstenberg::xscheme::{
    bound_from_equality, build_chart_matrix, generic_ranks, minor_degree_stats, minor_ideal, vanishing_order_at,
    x_equals_grassmannian,
};
use furstenberg::{FieldCtx, MonomialOrder, Scheme};

#[derive(Parser)]
#[command(
    name = "furst",
    version,
    about = "Zero-dimensional schemes over finite fields and their rich planes"
)]
struct Cli {
    /// Output format; csv is available for tabular commands.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Degenerate to the ideal of top-degree forms.
    Dilate { ideal: PathBuf },
    /// Generic initial ideal for the upper-triangular group.
    Gin {
        ideal: PathBuf,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Term order with x1 lowest.
        #[arg(long, value_enum, default_value = "lex")]
        order: GinOrder,
    },
    /// Borel-fixed set combinatorics.
    Borel {
        #[command(subcommand)]
        command: BorelCommand,
    },
    /// List k-plane directions through the origin with Plücker coordinates.
    Planes {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "3")]
        field: String,
    },
    /// Intersection degrees with every plane of one direction, or all richness values.
    Incidence {
        #[command(flatten)]
        input: IdealK,
        /// Rows of a spanning set, e.g. "1,0,2;0,1,1".
        #[arg(long)]
        direction: Option<String>,
    },
    /// The Radon transform: richness of every direction.
    Radon {
        #[command(flatten)]
        input: IdealK,
    },
    /// Directions that are m-rich.
    Rich {
        #[command(flatten)]
        input: IdealK,
        #[arg(long)]
        m: usize,
    },
    /// Both sides of the restriction-type inequality.
    Restriction {
        #[command(flatten)]
        input: IdealK,
    },
    /// The incidence matrix on one chart.
    Xmatrix {
        #[command(flatten)]
        input: IdealK,
        #[command(flatten)]
        chart: ChartArg,
    },
    /// The ideal of (N−m+1)-minors on one chart.
    Minors {
        #[command(flatten)]
        input: IdealK,
        #[command(flatten)]
        chart: ChartArg,
        #[arg(long)]
        m: usize,
    },
    /// Whether every k-plane through the origin is m-rich, chart by chart.
    XgrTest {
        #[command(flatten)]
        input: IdealK,
        #[arg(long)]
        m: usize,
    },
    /// Bound checks on example schemes.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
    /// Search for small reduced sets with every direction m-rich.
    Search {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "greedy")]
        mode: ModeArg,
        #[arg(long, default_value_t = 50)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GinOrder {
    Lex,
    Grevlex,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Greedy,
    Random,
}

#[derive(Subcommand)]
enum BorelCommand {
    /// Check the frontier inequality on every Borel-fixed set up to a size.
    Verify {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        max_size: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// The fat point (x1..xn)^{d+1}.
    Fatpoint {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        q: u32,
    },
    /// Union of the q+1 rotated curvilinear schemes of length N in the plane.
    Rotations {
        #[arg(long)]
        q: u32,
        #[arg(long = "N")]
        length: u32,
    },
    /// |S| against the minimal richness.
    Bound {
        #[command(flatten)]
        input: IdealK,
        #[arg(long, default_value_t = 1.0)]
        constant: f64,
    },
    /// From k-planes to (k+1)-planes through the origin.
    Induction {
        #[command(flatten)]
        input: IdealK,
    },
}

#[derive(Args)]
struct IdealK {
    /// Ideal file.
    #[arg(long)]
    ideal: PathBuf,
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct ChartArg {
    /// Leading variables of the cutting forms, 1-based, e.g. "1,2".
    #[arg(long)]
    chart: String,
}

enum Output {
    Json(Value),
    Table {
        header: Vec<String>,
        rows: Vec<Vec<String>>,
    },
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let out = run(cli.command)?;
    let text = render(out, cli.format)?;
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
        Err(e) if e.kind() == ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn render(out: Output, format: Format) -> Result<String> {
    let mut text = match (out, format) {
        (Output::Json(v), Format::Json) => serde_json::to_string_pretty(&v)?,
        (Output::Json(_), Format::Csv) => bail!("csv output is only available for tabular commands"),
        (Output::Table { header, rows }, Format::Csv) => {
            let mut lines = vec![header.join(",")];
            for r in rows {
                let cells: Vec<String> = r.iter().map(|c| csv_cell(c)).collect();
                lines.push(cells.join(","));
            }
            lines.join("\n")
        }
        (Output::Table { header, rows }, Format::Json) => {
            let objs: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(header.iter().cloned().zip(r.iter().map(|c| json!(c))).collect()))
                .collect();
            serde_json::to_string_pretty(&objs)?
        }
    };
    text.push('\n');
    Ok(text)
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

fn load(path: &Path) -> Result<Scheme> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = parse_ideal_file(&text, 0).with_context(|| format!("parsing {}", path.display()))?;
    Scheme::new(file.ideal).context("the ideal must have a finite-dimensional quotient")
}

/// GF(q) from its size.
fn field_of_size(q: u32) -> Result<Arc<FieldCtx>> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).context("q must be at least 2")?;
    let (mut e, mut rest) = (0, q);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        bail!("{q} is not a prime power");
    }
    Ok(FieldCtx::new(p, e, 0)?)
}

fn parse_chart(s: &Scheme, k: usize, spec: &str) -> Result<Chart> {
    let vars = spec
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<usize>()
                .context("chart variables are 1-based integers")
        })
        .collect::<Result<Vec<_>>>()?;
    if vars.contains(&0) {
        bail!("chart variables are 1-based");
    }
    let zero_based: Vec<usize> = vars.iter().map(|v| v - 1).collect();
    Ok(Chart::new(s.nvars(), k, &zero_based)?)
}

fn parse_direction(field: &Arc<FieldCtx>, n: usize, spec: &str) -> Result<Direction> {
    let rows = spec
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| parse_field_element(x.trim(), field).map_err(anyhow::Error::from))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Direction::from_rows(field, n, &rows)?)
}

fn direction_cells(field: &FieldCtx, d: &Direction) -> [String; 2] {
    [d.format(field), plucker(field, d).format(field)]
}

fn richness_table(s: &Scheme, table: &IncidenceTable) -> Output {
    let rows = table
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let [dir, pl] = direction_cells(s.field(), &r.direction);
            vec![
                i.to_string(),
                dir,
                pl,
                r.richness.to_string(),
                r.best_plane.format(s.field()),
            ]
        })
        .collect();
    Output::Table {
        header: ["id", "direction", "plucker", "richness", "best_plane"]
            .map(String::from)
            .to_vec(),
        rows,
    }
}

fn bound_json(r: &BoundReport) -> Value {
    json!({
        "q": r.q, "n": r.n, "k": r.k, "m_star": r.m_star, "size": r.size,
        "ratio": r.ratio, "factorial_ratio": r.factorial_ratio,
        "constant": r.constant, "pass": r.pass,
    })
}

fn run(command: Command) -> Result<Output> {
    Ok(match command {
        Command::Dilate { ideal } => {
            let s = load(&ideal)?;
            let d = dilate(&s)?;
            Output::Json(json!({
                "generators": s.generator_strings(),
                "degenerate_generators": d.degenerate.generator_strings(),
                "degree": s.degree(),
                "degenerate_degree": d.degenerate.degree(),
                "homogeneous": d.degenerate.is_homogeneous(),
            }))
        }
        Command::Gin {
            ideal,
            trials,
            seed,
            order,
        } => {
            let s = load(&ideal)?;
            let n = s.nvars();
            let ord = match order {
                GinOrder::Lex => paper_lex(n),
                GinOrder::Grevlex => MonomialOrder::ascending(OrderKind::Grevlex, n),
            };
            let g = gin(&s, &ord, trials, seed)?;
            let names = s.ring().names();
            Output::Json(json!({
                "generators": s.generator_strings(),
                "gin": g.gin.generator_strings(),
                "standard_monomials": g.gin.standard_monomials().iter().map(|m| m.format(names)).collect::<Vec<_>>(),
                "degree": s.degree(),
                "gin_degree": g.gin.degree(),
                "borel_fixed": is_borel_fixed(&g.gin)?.is_none(),
                "trials_used": g.trials_used,
                "field_extension_degree": g.field_extension_degree,
            }))
        }
        Command::Borel {
            command: BorelCommand::Verify { vars, max_size },
        } => {
            let sets = enumerate_borel_sets(vars, max_size)?;
            let mut violations = Vec::new();
            for set in &sets {
                let v = verify_frontier_lemma(set);
                if let Some(w) = v.witness {
                    violations.push(json!({"set": set.format(), "witness": w}));
                }
            }
            Output::Json(json!({"checked": sets.len(), "violations": violations}))
        }
        Command::Planes { n, k, field } => {
            let f = FieldCtx::parse_spec(&field, 0)?;
            let rows = enumerate_directions(&f, n, k)?
                .iter()
                .enumerate()
                .map(|(i, d)| {
                    let [dir, pl] = direction_cells(&f, d);
                    vec![i.to_string(), dir, pl]
                })
                .collect();
            Output::Table {
                header: ["id", "direction", "plucker"].map(String::from).to_vec(),
                rows,
            }
        }
        Command::Incidence { input, direction } => {
            let s = load(&input.ideal)?;
            match direction {
                Some(spec) => {
                    let dir = parse_direction(s.field(), s.nvars(), &spec)?;
                    if dir.k() != input.k {
                        bail!("direction has dimension {}, expected {}", dir.k(), input.k);
                    }
                    let r = direction_richness(&s, &dir, true)?;
                    let planes = furstenberg::geom::enumerate_parallel(s.field(), &dir)?;
                    let rows = planes
                        .iter()
                        .zip(r.per_plane.unwrap_or_default())
                        .map(|(p, d)| vec![p.format(s.field()), d.to_string()])
                        .collect();
                    Output::Table {
                        header: vec!["plane".into(), "degree".into()],
                        rows,
                    }
                }
                None => richness_table(&s, &radon_transform_with(&s, input.k, false)?),
            }
        }
        Command::Radon { input } => {
            let s = load(&input.ideal)?;
            richness_table(&s, &radon_transform_with(&s, input.k, false)?)
        }
        Command::Rich { input, m } => {
            let s = load(&input.ideal)?;
            let table = radon_transform_with(&s, input.k, false)?;
            let rows = table
                .rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.richness >= m)
                .map(|(i, r)| {
                    let [dir, pl] = direction_cells(s.field(), &r.direction);
                    vec![i.to_string(), dir, pl, r.richness.to_string()]
                })
                .collect();
            Output::Table {
                header: ["id", "direction", "plucker", "richness"].map(String::from).to_vec(),
                rows,
            }
        }
        Command::Restriction { input } => {
            let s = load(&input.ideal)?;
            let r = restriction_sides(&s, input.k)?;
            Output::Json(json!({"lhs": r.lhs, "rhs": r.rhs, "lhs_exceeds_rhs": r.lhs > r.rhs}))
        }
        Command::Xmatrix { input, chart } => {
            let s = load(&input.ideal)?;
            let chart = parse_chart(&s, input.k, &chart.chart)?;
            let m = build_chart_matrix(&s, &chart)?;
            Output::Json(json!({
                "chart": chart.label(),
                "coordinates": m.ring().names(),
                "rows": m.row_labels(),
                "columns": m.col_labels(),
                "entries": m.entry_strings(),
                "generic_rank": m.generic_rank()?,
            }))
        }
        Command::Minors { input, chart, m } => {
            let s = load(&input.ideal)?;
            let chart = parse_chart(&s, input.k, &chart.chart)?;
            let mat = build_chart_matrix(&s, &chart)?;
            let j = minor_ideal(&mat, m)?;
            let stats = minor_degree_stats(&j);
            let reduced = j.ideal()?.grevlex_basis()?;
            let origin = vec![furstenberg::Fe::ZERO; chart.dim()];
            Output::Json(json!({
                "chart": chart.label(),
                "m": m,
                "size": j.size,
                "identically_zero": j.is_zero(),
                "generators": j.generator_strings(),
                "condensed": j.condensed,
                "reduced_basis": reduced.elements().iter().map(|g| g.format()).collect::<Vec<_>>(),
                "chart_degree": stats.chart_degree,
                "plucker_degree": stats.plucker_degree,
                "degree_ratio": stats.ratio,
                "vanishing_order_at_origin": vanishing_order_at(&j, &origin)?.to_string(),
            }))
        }
        Command::XgrTest { input, m } => {
            let s = load(&input.ideal)?;
            let ranks = generic_ranks(&s, input.k)?;
            let equal = x_equals_grassmannian(&s, m, input.k)?;
            let bound = bound_from_equality(m as u64, input.k as u64, s.nvars() as u64)?;
            Output::Json(json!({
                "m": m,
                "k": input.k,
                "degree": s.degree(),
                "equals_grassmannian": equal,
                "generic_ranks": ranks.iter().map(|(c, r)| json!({"chart": c.label(), "rank": r})).collect::<Vec<_>>(),
                "b": bound.b,
                "bound": bound.bound,
                "asymptotic_bound": bound.asymptotic,
                "bound_holds": !equal || s.degree() as u64 >= bound.bound,
            }))
        }
        Command::Verify { command } => match command {
            VerifyCommand::Fatpoint { n, d, k, q } => {
                let s = make_fat_point(&field_of_size(q)?, n, d)?;
                let table = radon_transform_with(&s, k, false)?;
                let m = furstenberg::binom(d as u64 + k as u64, k as u64) as usize;
                let bound = bound_from_equality(m as u64, k as u64, n as u64)?;
                Output::Json(json!({
                    "size": s.degree(),
                    "expected_size": furstenberg::binom(d as u64 + n as u64, n as u64),
                    "min_richness": table.min_richness(),
                    "max_richness": table.values().into_iter().max(),
                    "expected_richness": m,
                    "equals_grassmannian_at_m": x_equals_grassmannian(&s, m, k)?,
                    "equals_grassmannian_at_m_plus_1": x_equals_grassmannian(&s, m + 1, k)?,
                    "bound_from_equality": bound.bound,
                }))
            }
            VerifyCommand::Rotations { q, length } => {
                let s = make_rotations_union(&field_of_size(q)?, length)?;
                let report = bound_report(&s, 1, 1.0)?;
                Output::Json(json!({
                    "q": q,
                    "N": length,
                    "size": s.degree(),
                    "generators": s.generator_strings(),
                    "report": bound_json(&report),
                    "size_below_square": (s.degree() as u64) < (length as u64).pow(2),
                }))
            }
            VerifyCommand::Bound { input, constant } => {
                let s = load(&input.ideal)?;
                Output::Json(bound_json(&bound_report(&s, input.k, constant)?))
            }
            VerifyCommand::Induction { input } => {
                let s = load(&input.ideal)?;
                let r = induction_step_check(&s, input.k)?;
                Output::Json(json!({
                    "k": r.k,
                    "m": r.m,
                    "b": r.b,
                    "required": r.required,
                    "planes_checked": r.rows.len(),
                    "min_actual": r.min_actual(),
                    "hypothesis_holds": r.hypothesis_holds(),
                    "holds": r.holds(),
                    "failures": r.failures().iter().map(|(d, v)| json!({"direction": d.format(s.field()), "degree": v})).collect::<Vec<_>>(),
                }))
            }
        },
        Command::Search {
            q,
            n,
            k,
            m,
            mode,
            budget,
            seed,
        } => {
            let field = field_of_size(q)?;
            let mode = match mode {
                ModeArg::Exhaustive => SearchMode::Exhaustive,
                ModeArg::Greedy => SearchMode::Greedy,
                ModeArg::Random => SearchMode::Random,
            };
            let res = search_furstenberg_sets(&field, n, k, m, mode, budget, seed)?;
            let report = furstenberg::fverify::bound_report_from(q, n, k, m, res.size, 1.0);
            Output::Json(json!({
                "size": res.size,
                "points": res.points.iter().map(|p| p.iter().map(|&x| field.format(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "certified": res.certified,
                "evaluated": res.evaluated,
                "ratio": report.ratio,
            }))
        }
    })
}
