//! JSON interchange for curves, functions, divisors, morphisms, complexes,
//! subgraphs and embeddings. Rationals are strings `"p/q"`; JSON numbers are
//! accepted only where integers are expected, and never as floats.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::{DeserializeOwned, Error as _};
use serde::{Deserialize, Deserializer};
use serde_json::{json, Map, Value as Json};

use crate::curve::{parse_length, Curve, CurveDesc, EdgeDesc, EdgeImage, Embedding, PointRef, Subgraph, SubgraphSpec};
use crate::error::{Error, Result};
use crate::morphism::{EdgeTarget, Morphism};
use crate::rat_fun::{Divisor, PlFunction, Profile};
use crate::rational::{fmt_rational, parse_rational, Extended, Rational};
use crate::realization::{PolyComplex, Ray, Segment};

struct Q(Rational);

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map(Q).map_err(D::Error::custom)
    }
}

struct Len(Extended);

impl<'de> Deserialize<'de> for Len {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_length(&s).map(Len).map_err(D::Error::custom)
    }
}

fn read<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Malformed { line: e.line(), column: e.column(), msg: e.to_string() })
}

fn ext(x: &Extended) -> String {
    match x {
        Extended::Finite(t) => fmt_rational(t),
        Extended::Infinite => "inf".into(),
    }
}

fn pretty(v: Json) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveFile {
    vertices: Vec<VertexFile>,
    edges: Vec<EdgeFile>,
    #[serde(default)]
    ray_classes: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexFile {
    id: String,
    #[serde(default)]
    at_infinity: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeFile {
    id: String,
    u: String,
    #[serde(default)]
    v: Option<String>,
    length: Len,
}

pub fn parse_curve(text: &str) -> Result<Curve> {
    let f: CurveFile = read(text)?;
    Curve::build(CurveDesc {
        vertices: f.vertices.into_iter().map(|v| (v.id, v.at_infinity)).collect(),
        edges: f.edges.into_iter().map(|e| EdgeDesc { id: e.id, u: e.u, v: e.v, length: e.length.0 }).collect(),
        ray_classes: f.ray_classes,
    })
}

pub fn curve_to_json(c: &Curve) -> String {
    let d = c.to_desc();
    pretty(json!({
        "vertices": d.vertices.iter().map(|(id, inf)| json!({"id": id, "at_infinity": inf})).collect::<Vec<_>>(),
        "edges": d.edges.iter().map(|e| json!({"id": e.id, "u": e.u, "v": e.v, "length": ext(&e.length)})).collect::<Vec<_>>(),
        "ray_classes": d.ray_classes,
    }))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FnFile {
    Literal(String),
    Pieces(BTreeMap<String, FnEntry>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FnEntry {
    Value(Q),
    Profile(ProfileFile),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileFile {
    breakpoints: Vec<(Q, Q)>,
    #[serde(default)]
    slope_at_infinity: Option<i64>,
}

/// Edge ids map to profiles; `@vertex` keys give values at vertices without edges.
pub fn parse_function(text: &str, c: &Arc<Curve>) -> Result<PlFunction> {
    let entries = match read::<FnFile>(text)? {
        FnFile::Literal(s) if s == "-inf" => return Ok(PlFunction::neg_inf(c.clone())),
        FnFile::Literal(s) => {
            return Err(Error::Malformed { line: 1, column: 1, msg: format!("expected \"-inf\" or an object, found {s:?}") })
        }
        FnFile::Pieces(m) => m,
    };
    let mut profiles: Vec<Option<Profile>> = vec![None; c.edges().len()];
    let mut isolated = BTreeMap::new();
    for (key, entry) in entries {
        match (key.strip_prefix('@'), entry) {
            (Some(v), FnEntry::Value(x)) => {
                isolated.insert(c.vertex_id(v)?, x.0);
            }
            (None, FnEntry::Profile(p)) => {
                let e = c.edge_id(&key)?;
                profiles[e] = Some(Profile {
                    breakpoints: p.breakpoints.into_iter().map(|(t, v)| (t.0, v.0)).collect(),
                    slope_at_infinity: p.slope_at_infinity,
                });
            }
            _ => return Err(Error::InvalidFunction(format!("entry {key:?} has the wrong shape"))),
        }
    }
    let profiles = profiles
        .into_iter()
        .enumerate()
        .map(|(e, p)| p.ok_or_else(|| Error::InvalidFunction(format!("no profile for edge {}", c.edge(e).id))))
        .collect::<Result<Vec<_>>>()?;
    PlFunction::from_profiles(c.clone(), profiles, &isolated)
}

pub fn function_to_json(f: &PlFunction) -> String {
    let c = f.curve();
    let Some(profiles) = f.profiles() else { return pretty(json!("-inf")) };
    let mut m = Map::new();
    for (e, p) in profiles.iter().enumerate() {
        let mut entry = Map::new();
        entry.insert(
            "breakpoints".into(),
            json!(p.breakpoints.iter().map(|(t, v)| json!([fmt_rational(t), fmt_rational(v)])).collect::<Vec<_>>()),
        );
        if let Some(s) = p.slope_at_infinity {
            entry.insert("slope_at_infinity".into(), json!(s));
        }
        m.insert(c.edge(e).id.clone(), Json::Object(entry));
    }
    for (v, x) in f.isolated_values() {
        m.insert(format!("@{}", c.vertex(v).id), json!(fmt_rational(&x)));
    }
    pretty(Json::Object(m))
}

/// A list of `[point label, coefficient]` pairs.
pub fn parse_divisor(text: &str, c: &Arc<Curve>) -> Result<Divisor> {
    let rows: Vec<(String, i64)> = read(text)?;
    let entries = rows.iter().map(|(l, k)| Ok((c.parse_point(l)?, *k))).collect::<Result<Vec<_>>>()?;
    Divisor::new(c.clone(), entries)
}

pub fn divisor_to_json(d: &Divisor) -> String {
    pretty(json!(d.labelled().into_iter().map(|(l, k)| json!([l, k])).collect::<Vec<_>>()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismFile {
    vertex_map: BTreeMap<String, String>,
    edge_map: BTreeMap<String, TargetFile>,
    degrees: BTreeMap<String, u64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TargetFile {
    Edge {
        edge: String,
        #[serde(default)]
        reversed: bool,
    },
    Vertex {
        vertex: String,
    },
}

pub fn parse_morphism(text: &str, source: &Arc<Curve>, target: &Arc<Curve>) -> Result<Morphism> {
    let f: MorphismFile = read(text)?;
    let missing = |what: &str, id: &str| Error::InvalidMorphism(vec![format!("no {what} given for {id}")]);
    let vertex_map = source
        .vertices()
        .iter()
        .map(|v| target.vertex_id(f.vertex_map.get(&v.id).ok_or_else(|| missing("image", &v.id))?))
        .collect::<Result<Vec<_>>>()?;
    let mut edge_map = Vec::new();
    let mut degrees = Vec::new();
    for e in source.edges() {
        edge_map.push(match f.edge_map.get(&e.id).ok_or_else(|| missing("image", &e.id))? {
            TargetFile::Edge { edge, reversed } => EdgeTarget::Edge { edge: target.edge_id(edge)?, reversed: *reversed },
            TargetFile::Vertex { vertex } => EdgeTarget::Vertex(target.vertex_id(vertex)?),
        });
        degrees.push(*f.degrees.get(&e.id).ok_or_else(|| missing("degree", &e.id))?);
    }
    Ok(Morphism { source: source.clone(), target: target.clone(), vertex_map, edge_map, degrees })
}

pub fn morphism_to_json(m: &Morphism) -> String {
    let (s, t) = (&m.source, &m.target);
    let vertex_map: Map<String, Json> =
        m.vertex_map.iter().enumerate().map(|(v, w)| (s.vertex(v).id.clone(), json!(t.vertex(*w).id))).collect();
    let edge_map: Map<String, Json> = m
        .edge_map
        .iter()
        .enumerate()
        .map(|(e, img)| {
            let j = match img {
                EdgeTarget::Edge { edge, reversed } => json!({"edge": t.edge(*edge).id, "reversed": reversed}),
                EdgeTarget::Vertex(w) => json!({"vertex": t.vertex(*w).id}),
            };
            (s.edge(e).id.clone(), j)
        })
        .collect();
    let degrees: Map<String, Json> = m.degrees.iter().enumerate().map(|(e, d)| (s.edge(e).id.clone(), json!(d))).collect();
    pretty(json!({"vertex_map": vertex_map, "edge_map": edge_map, "degrees": degrees}))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    dim: usize,
    vertices: Vec<Vec<Q>>,
    #[serde(default)]
    segments: Vec<(usize, usize, u64)>,
    #[serde(default)]
    rays: Vec<(usize, Vec<i64>, u64)>,
}

pub fn parse_complex(text: &str) -> Result<PolyComplex> {
    let f: ComplexFile = read(text)?;
    let k = PolyComplex {
        dim: f.dim,
        vertices: f.vertices.into_iter().map(|v| v.into_iter().map(|x| x.0).collect()).collect(),
        segments: f.segments.into_iter().map(|(a, b, weight)| Segment { a, b, weight }).collect(),
        rays: f.rays.into_iter().map(|(from, dir, weight)| Ray { from, dir, weight }).collect(),
    };
    k.validate_basic()?;
    Ok(k)
}

pub fn complex_to_json(k: &PolyComplex) -> String {
    pretty(json!({
        "dim": k.dim,
        "vertices": k.vertices.iter().map(|v| v.iter().map(fmt_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "segments": k.segments.iter().map(|s| json!([s.a, s.b, s.weight])).collect::<Vec<_>>(),
        "rays": k.rays.iter().map(|r| json!([r.from, r.dir, r.weight])).collect::<Vec<_>>(),
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SubgraphFile {
    #[serde(default)]
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<String>,
    #[serde(default)]
    intervals: Vec<(String, Q, Len)>,
}

pub fn parse_subgraph(text: &str, c: &Arc<Curve>) -> Result<Subgraph> {
    let f: SubgraphFile = read(text)?;
    let spec = SubgraphSpec {
        vertices: f.vertices.iter().map(|v| c.vertex_id(v)).collect::<Result<_>>()?,
        edges: f.edges.iter().map(|e| c.edge_id(e)).collect::<Result<_>>()?,
        intervals: f.intervals.into_iter().map(|(e, a, b)| Ok((c.edge_id(&e)?, a.0, b.0))).collect::<Result<_>>()?,
    };
    Subgraph::new(c.clone(), &spec)
}

pub fn subgraph_to_json(g: &Subgraph) -> String {
    let c = g.curve();
    let intervals: Vec<Json> = g
        .intervals()
        .iter()
        .flat_map(|(e, ivs)| ivs.iter().map(move |(a, b)| json!([c.edge(*e).id, fmt_rational(a), ext(b)])))
        .collect();
    pretty(json!({
        "vertices": g.vertex_set().iter().map(|v| c.vertex(*v).id.clone()).collect::<Vec<_>>(),
        "intervals": intervals,
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EmbeddingFile {
    vertices: BTreeMap<String, String>,
    #[serde(default)]
    edges: BTreeMap<String, ImageFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ImageFile {
    edge: String,
    start: Q,
    #[serde(default)]
    reversed: bool,
}

/// Shared vertex ids map to point labels of `target`; shared edge ids to placed target edges.
pub fn parse_embedding(text: &str, shared: &Curve, target: &Curve) -> Result<Embedding> {
    let f: EmbeddingFile = read(text)?;
    let missing = |id: &str| Error::InvalidEmbedding(format!("no image for {id}"));
    let vertices = shared
        .vertices()
        .iter()
        .map(|v| target.parse_point(f.vertices.get(&v.id).ok_or_else(|| missing(&v.id))?))
        .collect::<Result<Vec<PointRef>>>()?;
    let edges = shared
        .edges()
        .iter()
        .map(|e| {
            let img = f.edges.get(&e.id).ok_or_else(|| missing(&e.id))?;
            Ok(EdgeImage { edge: target.edge_id(&img.edge)?, start: img.start.0.clone(), reversed: img.reversed })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Embedding { vertices, edges })
}

pub fn embedding_to_json(emb: &Embedding, shared: &Curve, target: &Curve) -> String {
    let vertices: Map<String, Json> =
        emb.vertices.iter().enumerate().map(|(v, p)| (shared.vertex(v).id.clone(), json!(target.point_label(p)))).collect();
    let edges: Map<String, Json> = emb
        .edges
        .iter()
        .enumerate()
        .map(|(e, img)| {
            (
                shared.edge(e).id.clone(),
                json!({"edge": target.edge(img.edge).id, "start": fmt_rational(&img.start), "reversed": img.reversed}),
            )
        })
        .collect();
    pretty(json!({"vertices": vertices, "edges": edges}))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    const LINE: &str = r#"{
  "vertices": [{"id": "o"}, {"id": "-inf_point", "at_infinity": true}, {"id": "+inf_point", "at_infinity": true}],
  "edges": [
    {"id": "l", "u": "o", "v": "-inf_point", "length": "inf"},
    {"id": "r", "u": "o", "v": "+inf_point", "length": "inf"}
  ],
  "ray_classes": {"l": "left", "r": "right"}
}"#;

    #[test]
    fn curve_round_trip() {
        let c = parse_curve(LINE).unwrap();
        assert_eq!(parse_curve(&curve_to_json(&c)).unwrap(), c);
        for seed in 0..20 {
            let c = random::connected_curve(&mut random::rng(seed), 5);
            assert_eq!(parse_curve(&curve_to_json(&c)).unwrap(), *c);
        }
    }

    #[test]
    fn floats_rejected_with_position() {
        let bad = LINE.replace("\"inf\"}", "1.5}");
        match parse_curve(&bad) {
            Err(Error::Malformed { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        match parse_curve("{\"vertices\": [}") {
            Err(Error::Malformed { line: 1, column, .. }) => assert!(column > 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_curve(&LINE.replace("\"inf\"}", "\"0.5\"}")), Err(Error::Malformed { .. })));
    }

    #[test]
    fn function_round_trip() {
        let c = Arc::new(parse_curve(LINE).unwrap());
        let text = r#"{"l": {"breakpoints": [["0", "0"]], "slope_at_infinity": -2},
                        "r": {"breakpoints": [["0", "0"]], "slope_at_infinity": 2}}"#;
        let f = parse_function(text, &c).unwrap();
        assert_eq!(parse_function(&function_to_json(&f), &c).unwrap(), f);
        assert!(parse_function("\"-inf\"", &c).unwrap().is_neg_inf());
        assert_eq!(function_to_json(&PlFunction::neg_inf(c.clone())), "\"-inf\"\n");
        for seed in 0..20 {
            let mut r = random::rng(seed);
            let c = random::connected_curve(&mut r, 5);
            let f = random::function(&mut r, &c);
            assert_eq!(parse_function(&function_to_json(&f), &c).unwrap(), f);
            let d = crate::rat_fun::div_of(&f).unwrap();
            assert_eq!(parse_divisor(&divisor_to_json(&d), &c).unwrap(), d);
        }
    }

    #[test]
    fn complex_and_subgraph_round_trip() {
        let k = crate::tropical::hypersurface2(
            &crate::tropical::TropPoly::parse("0 : 0 0\n1 : 1 0\n0 : 0 1\n-1 : 1 1").unwrap(),
            None,
        )
        .unwrap();
        assert_eq!(parse_complex(&complex_to_json(&k)).unwrap(), k);
        for seed in 0..20 {
            let mut r = random::rng(seed);
            let c = random::connected_curve(&mut r, 5);
            let g = random::subgraph(&mut r, &c);
            assert_eq!(parse_subgraph(&subgraph_to_json(&g), &c).unwrap(), g);
        }
    }

    #[test]
    fn morphism_and_embedding_round_trip() {
        let c = Arc::new(parse_curve(LINE).unwrap());
        let m = Morphism { degrees: vec![2, 2], ..Morphism::identity(c.clone()) };
        assert_eq!(parse_morphism(&morphism_to_json(&m), &c, &c).unwrap(), m);
        let seg = Curve::build(
            CurveDesc::default().vertex("a", false).vertex("b", false).edge("s", "a", "b", Extended::Finite(crate::rational::q(1))),
        )
        .unwrap();
        let emb = Embedding {
            vertices: vec![PointRef::OnEdge(1, crate::rational::q(2)), PointRef::OnEdge(1, crate::rational::q(3))],
            edges: vec![EdgeImage { edge: 1, start: crate::rational::q(2), reversed: false }],
        };
        let text = embedding_to_json(&emb, &seg, &c);
        assert_eq!(parse_embedding(&text, &seg, &c).unwrap(), emb);
    }
}
