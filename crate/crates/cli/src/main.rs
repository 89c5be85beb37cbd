//! `tropcurve`: file-driven front end for the tropcurve library.
//!
//! Exit codes: 0 success or property true, 1 property false, 2 input error,
//! 64 unknown subcommand, 65 malformed input file.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use tropcurve::curve::{canonical_model, glue, parse_length, Curve, Dir, PointRef, Subgraph};
use tropcurve::io;
use tropcurve::morphism::{weight_check, weight_from_generators, weighted_local_image, Localization, Morphism};
use tropcurve::rat_fun::{chip_fire, disconnect_witness, div_of, extend, glue_function, is_harmonic_at, module_degree, restrict, PlFunction, WitnessOutcome};
use tropcurve::rational::{fmt_point, fmt_rational, Rational};
use tropcurve::realization::{
    bezout_check, check_balanced, fit_tropical_polynomial, harmonic_realization_check, ingest_balanced, intersect, realize, to_csv, to_svg, PolyComplex,
};
use tropcurve::selftest;
use tropcurve::tropical::{hypersurface2, Germ, TropPoly, Window};
use tropcurve::Error;

#[derive(Parser)]
#[command(name = "tropcurve", version, about = "Exact tropical curves, rational functions and their realizations")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CurveFn {
    #[arg(long)]
    curve: PathBuf,
    #[arg(long = "fn")]
    function: PathBuf,
}

#[derive(Args)]
struct CurveFns {
    #[arg(long)]
    curve: PathBuf,
    /// Function files; repeat for several functions.
    #[arg(long = "fn", required = true)]
    functions: Vec<PathBuf>,
}

#[derive(Args)]
struct MorphismFiles {
    #[arg(long)]
    source: PathBuf,
    #[arg(long)]
    target: PathBuf,
    #[arg(long)]
    morphism: PathBuf,
}

#[derive(Args)]
struct Pair {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a curve and summarize it.
    CheckCurve {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Print the canonical model of a connected curve.
    Canonical {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Chip-firing function CF(G, l) of a subgraph.
    Chipfire {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        subgraph: PathBuf,
        /// Firing distance: a rational or `inf`.
        #[arg(long)]
        length: String,
    },
    /// Principal divisor of a function, as a label-to-order object.
    Div(CurveFn),
    /// Degree of the module generated by the given functions.
    Degree(CurveFns),
    /// Harmonicity at a point, or the points where harmonicity fails.
    Harmonic {
        #[command(flatten)]
        f: CurveFn,
        #[arg(long)]
        point: Option<String>,
    },
    /// Germ of a function at a point.
    Localize {
        #[command(flatten)]
        f: CurveFn,
        #[arg(long)]
        point: String,
    },
    /// Pull a function on the target back along a morphism.
    Pullback {
        #[command(flatten)]
        m: MorphismFiles,
        #[arg(long = "fn")]
        function: PathBuf,
    },
    /// Weight check for a morphism, or edge weights from generator slopes.
    Weight {
        #[arg(long, requires_all = ["target", "morphism"])]
        source: Option<PathBuf>,
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long)]
        morphism: Option<PathBuf>,
        /// With a morphism: source point whose local slope lattice is listed.
        #[arg(long)]
        point: Option<String>,
        /// Curve of the generators when no morphism is given.
        #[arg(long, conflicts_with = "morphism")]
        curve: Option<PathBuf>,
        /// Generators, or with a morphism, target functions sampled at `--point`.
        #[arg(long = "fn")]
        functions: Vec<PathBuf>,
        /// Restrict the generator mode to one edge.
        #[arg(long)]
        edge: Option<String>,
    },
    /// Restrict a function to the components of a subgraph.
    Restrict {
        #[command(flatten)]
        f: CurveFn,
        #[arg(long)]
        subgraph: PathBuf,
    },
    /// Extend per-component functions from a subgraph to the whole curve.
    Extend {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        subgraph: PathBuf,
        /// JSON array with one function per subgraph component.
        #[arg(long)]
        parts: PathBuf,
        /// Outgoing slope used to leave the subgraph (negative).
        #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
        slope: i64,
    },
    /// Glue two curves along a shared curve, and optionally two functions.
    Glue {
        #[arg(long)]
        c1: PathBuf,
        #[arg(long)]
        c2: PathBuf,
        #[arg(long)]
        shared: PathBuf,
        #[arg(long)]
        emb1: PathBuf,
        #[arg(long)]
        emb2: PathBuf,
        #[arg(long, requires = "h2")]
        h1: Option<PathBuf>,
        #[arg(long, requires = "h1")]
        h2: Option<PathBuf>,
    },
    /// Build the function that certifies a curve is disconnected.
    WitnessDisconnected {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Realize a curve in R^n through a list of functions.
    Realize(CurveFns),
    /// Balancing check for a weighted complex.
    Balance {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Abstract curve and harmonic coordinates for a balanced complex.
    Ingest {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Tropical polynomial whose curve is the given planar complex.
    Fitpoly {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Planar tropical curve of a polynomial in two variables.
    Hypersurface {
        /// Polynomial file in the `coeff : e1 e2` line format.
        #[arg(long)]
        poly: PathBuf,
        /// Clip to `xmin,ymin,xmax,ymax`.
        #[arg(long)]
        window: Option<String>,
    },
    /// Transversal intersection points of two planar curves with multiplicities.
    Intersect(Pair),
    /// Total intersection multiplicity against the product of fitted degrees.
    Bezout(Pair),
    /// Run the invariant suites.
    Selftest {
        #[arg(long)]
        parallel: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run only the named suites.
        #[arg(long)]
        suite: Vec<String>,
        /// List suite names and exit.
        #[arg(long)]
        list: bool,
    },
    /// Render a complex as SVG (planar only) or CSV, chosen by extension or `--format`.
    Plot {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_parser = ["svg", "csv"])]
        format: Option<String>,
    },
}

/// Result of a subcommand: text and JSON renderings and whether the property holds.
struct Report {
    text: String,
    json: Json,
    holds: bool,
}

impl Report {
    fn ok(text: String, json: Json) -> Self {
        Report { text, json, holds: true }
    }
}

struct Failure {
    code: u8,
    msg: String,
}

type Out = Result<Report, Failure>;

fn input_error(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

fn lib_error(e: Error) -> Failure {
    match e {
        Error::Malformed { .. } => Failure { code: 65, msg: e.to_string() },
        _ => input_error(e.to_string()),
    }
}

trait Lift<T> {
    fn lift(self) -> Result<T, Failure>;
}

impl<T> Lift<T> for tropcurve::Result<T> {
    fn lift(self) -> Result<T, Failure> {
        self.map_err(lib_error)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))
}

/// Reads and parses a file, prefixing errors with its path.
fn load<T>(path: &Path, parse: impl FnOnce(&str) -> tropcurve::Result<T>) -> Result<T, Failure> {
    let text = read(path)?;
    parse(&text).map_err(|e| {
        let f = lib_error(e);
        Failure { code: f.code, msg: format!("{}: {}", path.display(), f.msg) }
    })
}

fn load_curve(path: &Path) -> Result<Arc<Curve>, Failure> {
    load(path, io::parse_curve).map(Arc::new)
}

fn load_fn(path: &Path, c: &Arc<Curve>) -> Result<PlFunction, Failure> {
    load(path, |t| io::parse_function(t, c))
}

fn load_complex(path: &Path) -> Result<PolyComplex, Failure> {
    load(path, io::parse_complex)
}

fn point(c: &Curve, label: &str) -> Result<PointRef, Failure> {
    c.parse_point(label).lift()
}

fn as_json(text: &str) -> Json {
    serde_json::from_str(text).expect("library output is valid JSON")
}

/// A report whose text is a data file and whose JSON is the same document.
fn data(text: String) -> Report {
    let json = as_json(&text);
    Report::ok(text, json)
}

fn dir_label(c: &Curve, d: &Dir) -> String {
    format!("{}{}", c.edge(d.edge).id, if d.forward { "+" } else { "-" })
}

fn germ_json(g: &Germ) -> Json {
    match g {
        Germ::NegInf { .. } => json!("-inf"),
        Germ::Finite { coeff, slopes } => json!({"value": fmt_rational(coeff), "slopes": slopes}),
    }
}

fn point_json(p: &[Rational]) -> Json {
    Json::Array(p.iter().map(|x| json!(fmt_rational(x))).collect())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check_curve(path: &Path) -> Out {
    let c = load_curve(path)?;
    let classes: BTreeMap<String, Vec<String>> =
        c.classes().into_iter().map(|(k, v)| (k.to_string(), v.iter().map(|&e| c.edge(e).id.clone()).collect())).collect();
    let text = format!("{c}connected: {}\n", yes_no(c.is_connected()));
    let json = json!({
        "vertices": c.vertices().len(),
        "edges": c.edges().len(),
        "components": c.num_components(),
        "connected": c.is_connected(),
        "ray_classes": classes,
    });
    Ok(Report::ok(text, json))
}

fn div(a: &CurveFn) -> Out {
    let c = load_curve(&a.curve)?;
    let f = load_fn(&a.function, &c)?;
    let d = div_of(&f).lift()?;
    let obj: BTreeMap<String, i64> = d.labelled().into_iter().collect();
    let json = json!(obj);
    Ok(Report::ok(format!("{json}\n"), json))
}

fn degree(a: &CurveFns) -> Out {
    let c = load_curve(&a.curve)?;
    let fs = a.functions.iter().map(|p| load_fn(p, &c)).collect::<Result<Vec<_>, _>>()?;
    let d = module_degree(&fs).lift()?;
    Ok(Report::ok(format!("module degree: {d}\n"), json!({"degree": d.to_string()})))
}

fn harmonic(a: &CurveFn, at: Option<&str>) -> Out {
    let c = load_curve(&a.curve)?;
    let f = load_fn(&a.function, &c)?;
    if let Some(label) = at {
        let p = point(&c, label)?;
        let h = is_harmonic_at(&f, &p).lift()?;
        let label = c.point_label(&p);
        return Ok(Report { text: format!("harmonic at {label}: {}\n", yes_no(h)), json: json!({"point": label, "harmonic": h}), holds: h });
    }
    let bad: Vec<String> = div_of(&f).lift()?.labelled().into_iter().map(|(l, _)| l).collect();
    let text = if bad.is_empty() { "harmonic everywhere\n".to_string() } else { format!("not harmonic at: {}\n", bad.join(", ")) };
    Ok(Report { text, json: json!({"harmonic_everywhere": bad.is_empty(), "not_harmonic_at": bad}), holds: bad.is_empty() })
}

fn localize(a: &CurveFn, label: &str) -> Out {
    let c = load_curve(&a.curve)?;
    let f = load_fn(&a.function, &c)?;
    let loc = Localization::new(c.clone(), &point(&c, label)?, None).lift()?;
    let g = loc.apply(&f).lift()?;
    let order: Vec<String> = loc.order().iter().map(|d| dir_label(&c, d)).collect();
    let omega = g.omega().ok();
    let mut text = format!("point: {}\ndirections: {}\ngerm: {g}\n", c.point_label(loc.point()), order.join(" "));
    if let Some(w) = omega {
        text.push_str(&format!("slope sum: {w}\n"));
    }
    let json = json!({"point": c.point_label(loc.point()), "directions": order, "germ": germ_json(&g), "slope_sum": omega});
    Ok(Report::ok(text, json))
}

fn load_morphism(m: &MorphismFiles) -> Result<Morphism, Failure> {
    let (s, t) = (load_curve(&m.source)?, load_curve(&m.target)?);
    load(&m.morphism, |text| io::parse_morphism(text, &s, &t))
}

fn pullback(m: &MorphismFiles, function: &Path) -> Out {
    let phi = load_morphism(m)?;
    let f = load_fn(function, &phi.target)?;
    Ok(data(io::function_to_json(&phi.pullback(&f).lift()?)))
}

#[allow(clippy::too_many_arguments)]
fn weight(
    source: &Option<PathBuf>,
    target: &Option<PathBuf>,
    morphism: &Option<PathBuf>,
    at: Option<&str>,
    curve: &Option<PathBuf>,
    functions: &[PathBuf],
    edge: Option<&str>,
) -> Out {
    if let (Some(source), Some(target), Some(morphism)) = (source, target, morphism) {
        let m = load_morphism(&MorphismFiles { source: source.clone(), target: target.clone(), morphism: morphism.clone() })?;
        let rep = weight_check(&m).lift()?;
        let weights: BTreeMap<String, u64> =
            rep.edge_weights.iter().flatten().map(|(e, w)| (m.target.edge(*e).id.clone(), *w)).collect();
        let mut text = format!("weight: {}\n", yes_no(rep.is_weight));
        for (e, w) in &weights {
            text.push_str(&format!("  {e}: {w}\n"));
        }
        for r in &rep.reasons {
            text.push_str(&format!("  {r}\n"));
        }
        let mut json = json!({"is_weight": rep.is_weight, "edge_weights": weights, "reasons": rep.reasons});
        let mut holds = rep.is_weight;
        if let (Some(label), true) = (at, rep.is_weight) {
            let samples = functions.iter().map(|p| load_fn(p, &m.target)).collect::<Result<Vec<_>, _>>()?;
            let img = weighted_local_image(&m, &point(&m.source, label)?, &samples).lift()?;
            text.push_str(&format!("local slope lattice at {}: {img}\n", img.point));
            for v in &img.violations {
                text.push_str(&format!("  {v}\n"));
            }
            holds &= img.violations.is_empty();
            json["local_image"] = json!({"point": img.point, "lattice": img.to_string(), "moduli": img.moduli, "violations": img.violations});
        }
        return Ok(Report { text, json, holds });
    }
    let Some(curve) = curve else {
        return Err(input_error("weight needs --source/--target/--morphism or --curve with --fn"));
    };
    let c = load_curve(curve)?;
    if functions.is_empty() {
        return Err(input_error("weight --curve needs at least one --fn"));
    }
    let gens = functions.iter().map(|p| load_fn(p, &c)).collect::<Result<Vec<_>, _>>()?;
    let edges: Vec<usize> = match edge {
        Some(id) => vec![c.edge_id(id).lift()?],
        None => (0..c.edges().len()).collect(),
    };
    let mut text = String::new();
    let mut weights = BTreeMap::new();
    for e in edges {
        let id = c.edge(e).id.clone();
        match weight_from_generators(&gens, e) {
            Ok(w) => {
                text.push_str(&format!("{id}: {w}\n"));
                weights.insert(id, json!(w));
            }
            Err(err) => {
                text.push_str(&format!("{id}: {err}\n"));
                weights.insert(id, json!(err.to_string()));
            }
        }
    }
    Ok(Report::ok(text, json!({"edge_weights": weights})))
}

fn restrict_cmd(a: &CurveFn, subgraph: &Path) -> Out {
    let c = load_curve(&a.curve)?;
    let f = load_fn(&a.function, &c)?;
    let g = load(subgraph, |t| io::parse_subgraph(t, &c))?;
    let parts = restrict(&f, &g).lift()?;
    let items: Vec<Json> = parts
        .iter()
        .map(|p| json!({"curve": as_json(&io::curve_to_json(p.curve())), "function": as_json(&io::function_to_json(p))}))
        .collect();
    let json = Json::Array(items);
    Ok(Report::ok(format!("{}\n", serde_json::to_string_pretty(&json).unwrap()), json))
}

fn malformed_json(path: &Path, e: serde_json::Error) -> Failure {
    Failure { code: 65, msg: format!("{}: malformed input at line {}, column {}: {e}", path.display(), e.line(), e.column()) }
}

fn extend_cmd(curve: &Path, subgraph: &Path, parts: &Path, slope: i64) -> Out {
    let c = load_curve(curve)?;
    let g: Subgraph = load(subgraph, |t| io::parse_subgraph(t, &c))?;
    let items: Vec<Json> = serde_json::from_str(&read(parts)?).map_err(|e| malformed_json(parts, e))?;
    let comps = g.component_curves();
    if items.len() != comps.len() {
        return Err(input_error(format!("{}: expected {} parts, found {}", parts.display(), comps.len(), items.len())));
    }
    let fs = items
        .iter()
        .zip(&comps)
        .map(|(item, sc)| io::parse_function(&item.to_string(), &sc.curve).map_err(lib_error))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(data(io::function_to_json(&extend(&fs, &g, slope).lift()?)))
}

#[allow(clippy::too_many_arguments)]
fn glue_cmd(c1: &Path, c2: &Path, shared: &Path, emb1: &Path, emb2: &Path, h1: &Option<PathBuf>, h2: &Option<PathBuf>) -> Out {
    let (a, b, s) = (load_curve(c1)?, load_curve(c2)?, load_curve(shared)?);
    let e1 = load(emb1, |t| io::parse_embedding(t, &s, &a))?;
    let e2 = load(emb2, |t| io::parse_embedding(t, &s, &b))?;
    let glued = glue(a.clone(), b.clone(), s, e1, e2).lift()?;
    let curve = as_json(&io::curve_to_json(&glued.curve));
    let (Some(h1), Some(h2)) = (h1, h2) else {
        return Ok(Report::ok(io::curve_to_json(&glued.curve), curve));
    };
    let (f1, f2) = (load_fn(h1, &a)?, load_fn(h2, &b)?);
    match glue_function(&f1, &f2, &glued) {
        Ok(h) => {
            let json = json!({"curve": curve, "function": as_json(&io::function_to_json(&h))});
            Ok(Report::ok(format!("{}\n", serde_json::to_string_pretty(&json).unwrap()), json))
        }
        Err(Error::GlueMismatch { point, left, right }) => Ok(Report {
            text: format!("functions disagree on the shared curve at {point}: {left} vs {right}\n"),
            json: json!({"agree": false, "point": point, "left": left, "right": right}),
            holds: false,
        }),
        Err(e) => Err(lib_error(e)),
    }
}

fn witness(path: &Path) -> Out {
    let c = load_curve(path)?;
    match disconnect_witness(&c).lift()? {
        WitnessOutcome::Connected => Ok(Report {
            text: "curve is connected: no witness exists\n".into(),
            json: json!({"disconnected": false}),
            holds: false,
        }),
        WitnessOutcome::Found { s, a, conditions } => {
            let consts: Vec<String> = a.iter().map(fmt_rational).collect();
            let conds = json!({
                "differs_from_max": conditions.differs_from_max,
                "differs_from_min": conditions.differs_from_min,
                "identity": conditions.identity,
            });
            let text = format!(
                "witness constants: {}\ns differs from s + a3: {}\ns differs from min(s, a1): {}\nidentity holds: {}\nwitness function:\n{}",
                consts.join(", "),
                yes_no(conditions.differs_from_max),
                yes_no(conditions.differs_from_min),
                yes_no(conditions.identity),
                io::function_to_json(&s)
            );
            let json = json!({"disconnected": true, "constants": consts, "conditions": conds, "witness": as_json(&io::function_to_json(&s))});
            Ok(Report { text, json, holds: conditions.all() })
        }
    }
}

fn realize_cmd(a: &CurveFns) -> Out {
    let c = load_curve(&a.curve)?;
    let fs = a.functions.iter().map(|p| load_fn(p, &c)).collect::<Result<Vec<_>, _>>()?;
    let r = realize(&c, &fs).lift()?;
    let rep = r.check();
    let holds = rep.injective && rep.local_isometry && rep.parallel_respected && rep.condition5_free;
    let mut text = format!(
        "injective: {}\nlocal isometry: {}\nparallel rays respected: {}\nno collapsed parallel class: {}\n",
        yes_no(rep.injective),
        yes_no(rep.local_isometry),
        yes_no(rep.parallel_respected),
        yes_no(rep.condition5_free)
    );
    for (piece, k) in &rep.expansions {
        text.push_str(&format!("  {piece} stretched by {k}\n"));
    }
    for n in &rep.notes {
        text.push_str(&format!("  {n}\n"));
    }
    text.push_str("image:\n");
    text.push_str(&io::complex_to_json(&r.image));
    let json = json!({
        "injective": rep.injective,
        "local_isometry": rep.local_isometry,
        "parallel_respected": rep.parallel_respected,
        "no_collapsed_parallel_class": rep.condition5_free,
        "expansions": rep.expansions,
        "notes": rep.notes,
        "image": as_json(&io::complex_to_json(&r.image)),
    });
    Ok(Report { text, json, holds })
}

fn balance(path: &Path) -> Out {
    let k = load_complex(path)?;
    k.validate().lift()?;
    let rep = check_balanced(&k);
    let mut text = format!("balanced: {}\n", yes_no(rep.balanced));
    for (v, d) in rep.defects.iter().enumerate() {
        if d.iter().any(|x| *x != 0) {
            text.push_str(&format!("  vertex {v} {}: defect {d:?}\n", fmt_point(&k.vertices[v])));
        }
    }
    Ok(Report { text, json: json!({"balanced": rep.balanced, "defects": rep.defects}), holds: rep.balanced })
}

fn ingest(path: &Path) -> Out {
    let k = load_complex(path)?;
    let ing = ingest_balanced(&k).lift()?;
    let harmonic = harmonic_realization_check(&ing.realization).lift()?;
    let fs: Vec<Json> = ing.fs.iter().map(|f| as_json(&io::function_to_json(f))).collect();
    let json = json!({"curve": as_json(&io::curve_to_json(&ing.curve)), "functions": fs, "all_harmonic": harmonic.all_harmonic});
    Ok(Report { text: format!("{}\n", serde_json::to_string_pretty(&json).unwrap()), json, holds: harmonic.all_harmonic })
}

fn fitpoly(path: &Path) -> Out {
    let k = load_complex(path)?;
    match fit_tropical_polynomial(&k) {
        Ok(p) => {
            let d = p.degree().lift()?;
            Ok(Report::ok(p.to_string(), json!({"polynomial": p.to_string(), "degree": d.to_string()})))
        }
        Err(Error::NotHypersurface(why)) => Ok(Report {
            text: format!("not the curve of a polynomial: {why}\n"),
            json: json!({"hypersurface": false, "reason": why}),
            holds: false,
        }),
        Err(e) => Err(lib_error(e)),
    }
}

fn parse_window(s: &str) -> Result<Window, Failure> {
    let v = s
        .split(',')
        .map(|t| tropcurve::rational::parse_rational(t).map_err(lib_error))
        .collect::<Result<Vec<_>, _>>()?;
    let [x0, y0, x1, y1]: [Rational; 4] = v.try_into().map_err(|_| input_error("window needs xmin,ymin,xmax,ymax"))?;
    Ok(Window { min: (x0, y0), max: (x1, y1) })
}

fn hypersurface(poly: &Path, window: Option<&str>) -> Out {
    let p = load(poly, TropPoly::parse)?;
    let w = window.map(parse_window).transpose()?;
    Ok(data(io::complex_to_json(&hypersurface2(&p, w.as_ref()).lift()?)))
}

fn intersect_cmd(p: &Pair) -> Out {
    let (a, b) = (load_complex(&p.a)?, load_complex(&p.b)?);
    match intersect(&a, &b) {
        Ok(xs) => {
            let text: String = xs.iter().map(|c| format!("{} multiplicity {}\n", fmt_point(&c.point), c.mult)).collect();
            let json = Json::Array(xs.iter().map(|c| json!({"point": point_json(&c.point), "mult": c.mult})).collect());
            Ok(Report::ok(if text.is_empty() { "no intersection points\n".into() } else { text }, json))
        }
        Err(e @ Error::NonTransversal { .. }) => {
            Ok(Report { text: format!("{e}\n"), json: json!({"transversal": false, "reason": e.to_string()}), holds: false })
        }
        Err(e) => Err(lib_error(e)),
    }
}

fn bezout(p: &Pair) -> Out {
    let (a, b) = (load_complex(&p.a)?, load_complex(&p.b)?);
    let r = bezout_check(&a, &b).lift()?;
    let text = format!("total multiplicity {} against degree product {}: {}\n", r.sum, r.bound, if r.ok { "within bound" } else { "exceeds bound" });
    Ok(Report { text, json: json!({"sum": r.sum, "bound": r.bound, "ok": r.ok}), holds: r.ok })
}

fn selftest_cmd(parallel: bool, seed: u64, names: &[String], list: bool) -> Out {
    if list {
        let names = selftest::suite_names();
        return Ok(Report::ok(names.iter().map(|n| format!("{n}\n")).collect(), json!(names)));
    }
    let results = selftest::run_suites(names, parallel, seed).lift()?;
    let mut text = String::new();
    for r in &results {
        text.push_str(&format!(
            "{:<28} {:>5} passed {:>3} failed {:>3} skipped\n",
            r.name,
            r.cases - r.failed,
            r.failed,
            r.skipped
        ));
        for m in &r.messages {
            text.push_str(&format!("    {m}\n"));
        }
    }
    let holds = results.iter().all(|r| r.passed());
    let total: usize = results.iter().map(|r| r.cases).sum();
    let failed: usize = results.iter().map(|r| r.failed).sum();
    text.push_str(&format!("{} suites, {} cases, {} failed\n", results.len(), total, failed));
    Ok(Report { text, json: json!({"suites": results, "cases": total, "failed": failed}), holds })
}

fn plot(complex: &Path, out: &Path, format: Option<&str>) -> Out {
    let k = load_complex(complex)?;
    let fmt = match format {
        Some(f) => f.to_string(),
        None => match out.extension().and_then(|e| e.to_str()) {
            Some("svg") => "svg".into(),
            Some("csv") => "csv".into(),
            _ => return Err(input_error("cannot tell the format from the output name; use --format svg|csv")),
        },
    };
    let body = if fmt == "svg" { to_svg(&k).lift()? } else { to_csv(&k) };
    std::fs::write(out, body).map_err(|e| input_error(format!("cannot write {}: {e}", out.display())))?;
    Ok(Report::ok(format!("wrote {}\n", out.display()), json!({"written": out.display().to_string(), "format": fmt})))
}

fn execute(cmd: &Command) -> Out {
    match cmd {
        Command::CheckCurve { curve } => check_curve(curve),
        Command::Canonical { curve } => {
            let c = load_curve(curve)?;
            Ok(data(io::curve_to_json(&canonical_model(&c).lift()?)))
        }
        Command::Chipfire { curve, subgraph, length } => {
            let c = load_curve(curve)?;
            let g = load(subgraph, |t| io::parse_subgraph(t, &c))?;
            let l = parse_length(length).lift()?;
            Ok(data(io::function_to_json(&chip_fire(&g, &l).lift()?)))
        }
        Command::Div(a) => div(a),
        Command::Degree(a) => degree(a),
        Command::Harmonic { f, point } => harmonic(f, point.as_deref()),
        Command::Localize { f, point } => localize(f, point),
        Command::Pullback { m, function } => pullback(m, function),
        Command::Weight { source, target, morphism, point, curve, functions, edge } => {
            weight(source, target, morphism, point.as_deref(), curve, functions, edge.as_deref())
        }
        Command::Restrict { f, subgraph } => restrict_cmd(f, subgraph),
        Command::Extend { curve, subgraph, parts, slope } => extend_cmd(curve, subgraph, parts, *slope),
        Command::Glue { c1, c2, shared, emb1, emb2, h1, h2 } => glue_cmd(c1, c2, shared, emb1, emb2, h1, h2),
        Command::WitnessDisconnected { curve } => witness(curve),
        Command::Realize(a) => realize_cmd(a),
        Command::Balance { complex } => balance(complex),
        Command::Ingest { complex } => ingest(complex),
        Command::Fitpoly { complex } => fitpoly(complex),
        Command::Hypersurface { poly, window } => hypersurface(poly, window.as_deref()),
        Command::Intersect(p) => intersect_cmd(p),
        Command::Bezout(p) => bezout(p),
        Command::Selftest { parallel, seed, suite, list } => selftest_cmd(*parallel, *seed, suite, *list),
        Command::Plot { complex, out, format } => plot(complex, out, format.as_deref()),
    }
}

fn run(args: impl IntoIterator<Item = OsString>) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                ErrorKind::InvalidSubcommand => 64,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(r) => {
            if cli.json {
                println!("{}", r.json);
            } else {
                print!("{}", r.text);
            }
            if r.holds {
                0
            } else {
                1
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            f.code
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
