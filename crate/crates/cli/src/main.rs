//! `polycycle` command-line front end.

use std::collections::BTreeMap;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polycycle::embedding::{embed, EmbedResult};
use polycycle::enumeration::{budget_from_env, enumerate, Census, Filter};
use polycycle::extremal::{formula_n, n_max};
use polycycle::homomorphism::{curvature, project, reciprocal};
use polycycle::kernel::{elementary_decompose, is_elementary, kernel};
use polycycle::recognition::{realize, recognize, RecognitionError};
use polycycle::render::render_svg;
use polycycle::symmetry::symmetry_report;
use polycycle::{geometry_class, pmap, Geometry, Graph, Polycycle, TessellationPatch};
use serde_json::{json, Value};

/// Largest r or q accepted on the command line.
const MAX_RQ: u32 = 64;
/// Largest face count for enumeration-driven subcommands.
const MAX_FACES: usize = 64;

#[derive(Parser)]
#[command(name = "polycycle", version, about = "Recognize, enumerate and analyse (r,q)-polycycles")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether a graph is an (r,q)-polycycle.
    Recognize(InputArgs),
    /// Emit the polycyclic realization of a graph.
    Realize {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "pmap")]
        format: Format,
    },
    /// Project into (r^q) and report properness and fibers.
    Classify(InputArgs),
    /// List polycycles up to a face count, one record per line.
    Enumerate {
        #[command(flatten)]
        rq: RqArgs,
        #[command(flatten)]
        sweep: SweepArgs,
        /// Emit both mirror images of each chiral class.
        #[arg(long)]
        chiral_split: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Automorphism group and transitivity report.
    Symmetry {
        #[command(flatten)]
        input: InputArgs,
        /// Aggregate over an enumeration instead of reading one polycycle.
        #[arg(long)]
        census: bool,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Maximum number of interior vertices for each face count.
    Extremal {
        #[command(flatten)]
        rq: RqArgs,
        /// Inclusive range of face counts, `A..B`.
        #[arg(long, value_parser = parse_range)]
        x_range: (usize, usize),
        /// Include the canonical codes of all extremal polycycles.
        #[arg(long)]
        witnesses: bool,
    },
    /// Hypercube embedding certificate or obstruction.
    Embed(InputArgs),
    /// Patches of the regular tessellations.
    Tess {
        #[command(subcommand)]
        cmd: TessCmd,
    },
    /// Complement of the image inside the spheric tessellation.
    Reciprocal {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "pmap")]
        format: Format,
    },
    /// Kernel and elementary decomposition.
    Kernel(InputArgs),
    /// SVG drawing of a polycycle.
    Render(InputArgs),
}

#[derive(Subcommand)]
enum TessCmd {
    /// Emit a patch of (r^q) grown by whole coronas.
    Dump {
        #[command(flatten)]
        rq: RqArgs,
        #[arg(long, default_value_t = 1)]
        coronas: usize,
    },
}

#[derive(Args, Clone)]
struct RqArgs {
    #[arg(long)]
    r: u32,
    #[arg(long)]
    q: u32,
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Edge list or PMAP file; stdin when absent or `-`.
    file: Option<PathBuf>,
    /// Required for edge lists; PMAP headers carry their own.
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
}

#[derive(Args, Clone)]
struct SweepArgs {
    /// Defaults to one less than the face count of (r^q) for spheric pairs.
    #[arg(long)]
    max_faces: Option<usize>,
    #[arg(long, default_value = "all")]
    filter: Filter,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Pmap,
    Svg,
}

enum Failure {
    Usage(String),
    Domain(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

type Out<'a> = &'a mut dyn Write;

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|_| format!("bad lower bound `{a}`"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad upper bound `{b}`"))?;
    if a == 0 || a > b {
        return Err("need 1 <= A <= B".into());
    }
    Ok((a, b))
}

fn check_rq(r: u32, q: u32) -> Result<(), Failure> {
    if !(3..=MAX_RQ).contains(&r) || !(3..=MAX_RQ).contains(&q) {
        return Err(Failure::Usage(format!("r and q must lie in 3..={MAX_RQ}")));
    }
    Ok(())
}

fn read_input(file: &Option<PathBuf>) -> Result<String, Failure> {
    let mut text = String::new();
    match file {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?
        }
        _ => {
            io::stdin().read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

enum Input {
    Map(pmap::Pmap),
    Edges(Graph, u32, u32),
}

fn load(args: &InputArgs) -> Result<Input, Failure> {
    let text = read_input(&args.file)?;
    if text.trim_start().starts_with("pmap") {
        let pm = pmap::parse(&text).map_err(domain)?;
        return Ok(Input::Map(pm));
    }
    let (Some(r), Some(q)) = (args.r, args.q) else {
        return Err(Failure::Usage("edge-list input needs --r and --q".into()));
    };
    check_rq(r, q)?;
    let (g, _) = Graph::parse_edge_list(&text).map_err(domain)?;
    Ok(Input::Edges(g, r, q))
}

fn load_poly(args: &InputArgs) -> Result<Polycycle, Failure> {
    match load(args)? {
        Input::Map(pm) => {
            check_rq(pm.r, pm.q)?;
            Polycycle::new(pm.r, pm.q, pm.map).map_err(domain)
        }
        Input::Edges(g, r, q) => realize(&g, r, q).map_err(domain),
    }
}

fn default_max_faces(r: u32, q: u32, given: Option<usize>) -> Result<usize, Failure> {
    let m = match given {
        Some(m) => m,
        None => match TessellationPatch::platonic(r, q) {
            Some(t) => t.map().face_count() - 1,
            None => return Err(Failure::Usage(format!("({r},{q}) is not spheric; pass --max-faces"))),
        },
    };
    if m == 0 || m > MAX_FACES {
        return Err(Failure::Usage(format!("--max-faces must lie in 1..={MAX_FACES}")));
    }
    Ok(m)
}

fn census(r: u32, q: u32, sweep: &SweepArgs) -> Result<Census, Failure> {
    check_rq(r, q)?;
    let max = default_max_faces(r, q, sweep.max_faces)?;
    enumerate(r, q, max, sweep.filter, budget_from_env()).map_err(domain)
}

fn line(out: Out, v: &Value) -> io::Result<()> {
    writeln!(out, "{v}")
}

fn emit_poly(out: Out, p: &Polycycle, format: Format) -> io::Result<()> {
    match format {
        Format::Pmap => write!(out, "{}", pmap::emit(p.r, p.q, p.map())),
        Format::Svg => write!(out, "{}", render_svg(p)),
        Format::Json => line(out, &poly_json(p)),
    }
}

fn poly_json(p: &Polycycle) -> Value {
    json!({
        "r": p.r,
        "q": p.q,
        "code": p.map().canonical_code(true).hex(),
        "stats": p.stats(),
        "pmap": pmap::emit(p.r, p.q, p.map()),
    })
}

fn run(cli: Cli, out: Out) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Recognize(args) => {
            let (g, r, q) = match load(&args)? {
                Input::Map(pm) => (pm.map.to_graph(), args.r.unwrap_or(pm.r), args.q.unwrap_or(pm.q)),
                Input::Edges(g, r, q) => (g, r, q),
            };
            check_rq(r, q)?;
            match recognize(&g, r, q) {
                Ok(rep) => writeln!(out, "{}", rep.to_json())?,
                Err(RecognitionError::Parameters) => return Err(Failure::Usage("r and q must be at least 3".into())),
                Err(e) => line(out, &json!({ "verdict": "rejected", "r": r, "q": q, "error": e.to_string() }))?,
            }
        }
        Cmd::Realize { input, format } => {
            let p = load_poly(&input)?;
            emit_poly(out, &p, format)?;
        }
        Cmd::Classify(args) => {
            let p = load_poly(&args)?;
            let h = project(&p).map_err(domain)?;
            let c = curvature(&p);
            let geometry = match geometry_class(p.r, p.q) {
                Geometry::Spheric => "spheric",
                Geometry::Euclidean => "euclidean",
                Geometry::Hyperbolic => "hyperbolic",
            };
            let v = json!({
                "geometry": geometry,
                "proper": h.is_proper(),
                "vertex_injective": h.vertex_injective,
                "edge_injective": h.edge_injective,
                "face_injective": h.face_injective,
                "fiber_histograms": {
                    "vertex": h.vertex_fibers,
                    "edge": h.edge_fibers,
                    "face": h.face_fibers,
                },
                "curvature": format!("{}/{}", c.numer(), c.denom()),
            });
            line(out, &v)?;
        }
        Cmd::Enumerate { rq, sweep, chiral_split, format } => {
            let c = census(rq.r, rq.q, &sweep)?;
            for (i, level) in c.levels.iter().enumerate() {
                let mut classes: Vec<_> = level.iter().collect();
                classes.sort_by(|a, b| a.code.cmp(&b.code));
                for cl in classes {
                    let mut polys = vec![(cl.poly.clone(), "class")];
                    if chiral_split && cl.chiral {
                        polys[0].1 = "left";
                        polys.push((cl.poly.mirror(), "right"));
                    }
                    for (p, orientation) in polys {
                        match format {
                            Format::Json => {
                                let mut v = poly_json(&p);
                                v["faces"] = json!(i + 1);
                                v["code"] = json!(cl.code.hex());
                                v["chiral"] = json!(cl.chiral);
                                v["proper"] = json!(cl.proper);
                                if chiral_split {
                                    v["orientation"] = json!(orientation);
                                    v["oriented_code"] = json!(p.map().canonical_code(false).hex());
                                }
                                line(out, &v)?;
                            }
                            Format::Pmap => writeln!(out, "{}", pmap::emit(p.r, p.q, p.map()))?,
                            Format::Svg => writeln!(out, "{}", render_svg(&p).replace('\n', ""))?,
                        }
                    }
                }
            }
        }
        Cmd::Symmetry { input, census: agg, sweep } => {
            if !agg {
                let p = load_poly(&input)?;
                line(out, &serde_json::to_value(symmetry_report(&p)).expect("report serializes"))?;
                return Ok(());
            }
            let (Some(r), Some(q)) = (input.r, input.q) else {
                return Err(Failure::Usage("--census needs --r and --q".into()));
            };
            let c = census(r, q, &sweep)?;
            for (i, level) in c.levels.iter().enumerate() {
                let mut orders: BTreeMap<usize, usize> = BTreeMap::new();
                let (mut chiral, mut it, mut ig, mut ih) = (0, 0, 0, 0);
                for cl in level {
                    let s = symmetry_report(&cl.poly);
                    *orders.entry(s.group_order).or_default() += 1;
                    chiral += s.chiral as usize;
                    it += s.it as usize;
                    ig += s.ig as usize;
                    ih += s.ih as usize;
                }
                let v = json!({
                    "r": r, "q": q, "faces": i + 1, "classes": level.len(),
                    "chiral": chiral, "it": it, "ig": ig, "ih": ih, "group_orders": orders,
                });
                line(out, &v)?;
            }
        }
        Cmd::Extremal { rq, x_range: (a, b), witnesses } => {
            check_rq(rq.r, rq.q)?;
            if b > MAX_FACES {
                return Err(Failure::Usage(format!("x must be at most {MAX_FACES}")));
            }
            let budget = budget_from_env();
            for x in a..=b {
                let rec = n_max(rq.r, rq.q, x, budget).map_err(domain)?;
                let mut v = serde_json::to_value(&rec).expect("record serializes");
                v["witness_count"] = json!(rec.witnesses.len());
                if let Ok(f) = formula_n(rq.r, rq.q, x) {
                    v["formula"] = json!(f);
                }
                if !witnesses {
                    v.as_object_mut().expect("object").remove("witnesses");
                }
                line(out, &v)?;
            }
        }
        Cmd::Embed(args) => {
            let p = load_poly(&args)?;
            let v = match embed(&p) {
                EmbedResult::Embeddable(c) => json!({
                    "embeddable": true,
                    "scale": c.scale,
                    "dimension": c.dimension,
                    "zones_closed": c.zones_closed,
                    "perimeter": c.perimeter,
                    "labels": c.labels,
                }),
                EmbedResult::NotEmbeddable(o) => json!({ "embeddable": false, "obstruction": o }),
            };
            line(out, &v)?;
        }
        Cmd::Tess { cmd: TessCmd::Dump { rq, coronas } } => {
            check_rq(rq.r, rq.q)?;
            let mut t = TessellationPatch::new(rq.r, rq.q).map_err(domain)?;
            let cap = budget_from_env();
            for _ in 0..coronas {
                if t.is_closed() {
                    break;
                }
                t.grow_corona().map_err(domain)?;
                if t.n() > cap {
                    return Err(Failure::Domain(format!("patch exceeds budget of {cap} vertices")));
                }
            }
            write!(out, "{}", pmap::emit_raw(rq.r, rq.q, &t.addressed_map()))?;
        }
        Cmd::Reciprocal { input, format } => {
            let p = load_poly(&input)?;
            let rp = reciprocal(&p).map_err(domain)?;
            emit_poly(out, &rp, format)?;
        }
        Cmd::Kernel(args) => {
            let p = load_poly(&args)?;
            let mut v = json!({
                "kernel": kernel(&p),
                "elementary": is_elementary(&p),
            });
            match elementary_decompose(&p) {
                Ok(d) => {
                    let parts: Vec<Value> = d
                        .parts
                        .iter()
                        .map(|part| {
                            json!({
                                "faces": part.faces,
                                "vertices": part.vertices,
                                "pmap": pmap::emit(part.poly.r, part.poly.q, part.poly.map()),
                            })
                        })
                        .collect();
                    v["parts"] = json!(parts);
                    v["gluing"] = json!(d.gluing);
                }
                Err(e) => v["decomposition_error"] = json!(e.to_string()),
            }
            line(out, &v)?;
        }
        Cmd::Render(args) => {
            let p = load_poly(&args)?;
            write!(out, "{}", render_svg(&p))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let res = run(cli, &mut out).and_then(|()| out.flush().map_err(Failure::Io));
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
