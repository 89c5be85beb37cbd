use std::collections::BTreeMap;

use crate::curve::{Glued, PointRef};
use crate::error::{Error, Result};
use crate::rat_fun::{PlFunction, Profile};
use crate::rational::{Extended, Rational};

/// Profile of `f` along the image of shared edge `k` under the embedding of `side`,
/// read in the shared edge's orientation.
fn along_image(f: &PlFunction, glued: &Glued, side: usize, k: usize) -> Profile {
    let img = &glued.embeddings[side].edges[k];
    let prof = f.profile(img.edge).unwrap();
    match (&glued.shared.edge(k).length, img.reversed) {
        (Extended::Infinite, _) => prof.slice(&img.start, &Extended::Infinite),
        (Extended::Finite(l), false) => prof.slice(&img.start, &Extended::Finite(&img.start + l)),
        (Extended::Finite(l), true) => prof.slice(&(&img.start - l), &Extended::Finite(img.start.clone())).reversed(),
    }
}

/// Welds `h1` and `h2` into one function on the glued curve after checking that they
/// agree on the shared subgraph.
pub fn glue_function(h1: &PlFunction, h2: &PlFunction, glued: &Glued) -> Result<PlFunction> {
    if **h1.curve() != *glued.inputs[0] || **h2.curve() != *glued.inputs[1] {
        return Err(Error::CurveMismatch);
    }
    let shared = &glued.shared;
    let mismatch = |p: &PointRef, l: String, r: String| Error::GlueMismatch { point: shared.point_label(p), left: l, right: r };
    if h1.is_neg_inf() || h2.is_neg_inf() {
        if h1.is_neg_inf() && h2.is_neg_inf() {
            return Ok(PlFunction::neg_inf(glued.curve.clone()));
        }
        let p = PointRef::Vertex(shared.vertices().iter().position(|v| !v.at_infinity).unwrap_or(0));
        let (a, b) = (h1.eval(&glued.embed(0, &p)?)?, h2.eval(&glued.embed(1, &p)?)?);
        return Err(mismatch(&p, a.to_string(), b.to_string()));
    }
    for w in 0..shared.vertices().len() {
        let p = PointRef::Vertex(w);
        let (a, b) = (h1.eval(&glued.embed(0, &p)?)?, h2.eval(&glued.embed(1, &p)?)?);
        if a != b {
            return Err(mismatch(&p, a.to_string(), b.to_string()));
        }
    }
    for k in 0..shared.edges().len() {
        let (p1, p2) = (along_image(h1, glued, 0, k), along_image(h2, glued, 1, k));
        if p1 == p2 {
            continue;
        }
        let mut offsets: Vec<&Rational> = p1.breakpoints.iter().chain(&p2.breakpoints).map(|(t, _)| t).collect();
        offsets.sort();
        let at = offsets
            .into_iter()
            .find(|t| p1.value_at(t) != p2.value_at(t))
            .cloned()
            .unwrap_or_else(|| p1.last_offset().max(p2.last_offset()) + Rational::from_integer(1.into()));
        let p = shared.normalize(&PointRef::OnEdge(k, at.clone()))?;
        return Err(mismatch(&p, crate::rational::fmt_rational(&p1.value_at(&at)), crate::rational::fmt_rational(&p2.value_at(&at))));
    }

    let c = &glued.curve;
    let mut profiles = Vec::with_capacity(c.edges().len());
    for (g, (side, orig, start)) in glued.origins().iter().enumerate() {
        let h = if *side == 0 { h1 } else { h2 };
        let end = match &c.edge(g).length {
            Extended::Finite(l) => Extended::Finite(start + l),
            Extended::Infinite => Extended::Infinite,
        };
        profiles.push(h.profile(*orig).unwrap().slice(start, &end));
    }
    let mut isolated = BTreeMap::new();
    for (side, h) in [h1, h2].into_iter().enumerate() {
        for v in 0..glued.inputs[side].vertices().len() {
            if let PointRef::Vertex(gv) = glued.map(side, &PointRef::Vertex(v))? {
                if c.incident(gv).is_empty() {
                    isolated.insert(gv, h.vertex_value(v).unwrap().clone());
                }
            }
        }
    }
    PlFunction::from_profiles(c.clone(), profiles, &isolated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{glue, Curve, CurveDesc, EdgeImage, Embedding};
    use crate::rational::q;
    use std::sync::Arc;

    fn segment(a: &str, b: &str, e: &str) -> Arc<Curve> {
        Arc::new(Curve::build(CurveDesc::default().vertex(a, false).vertex(b, false).edge(e, a, b, Extended::Finite(q(1)))).unwrap())
    }

    fn path() -> Glued {
        let shared = Arc::new(Curve::build(CurveDesc::default().vertex("P", false)).unwrap());
        let e1 = Embedding { vertices: vec![PointRef::Vertex(1)], edges: vec![] };
        let e2 = Embedding { vertices: vec![PointRef::Vertex(0)], edges: vec![] };
        glue(segment("A", "B", "x"), segment("C", "D", "y"), shared, e1, e2).unwrap()
    }

    fn affine(c: &Arc<Curve>, v: i64, s: i64) -> PlFunction {
        PlFunction::from_profiles(c.clone(), vec![Profile::affine(&Extended::Finite(q(1)), q(v), s)], &BTreeMap::new()).unwrap()
    }

    #[test]
    fn tent() {
        let g = path();
        let h1 = affine(&g.inputs[0], -1, 1);
        let h2 = affine(&g.inputs[1], 0, -1);
        let h = glue_function(&h1, &h2, &g).unwrap();
        let top = g.map(0, &PointRef::Vertex(1)).unwrap();
        assert_eq!(h.eval_finite(&top).unwrap(), q(0));
        assert_eq!(crate::rat_fun::div_of(&h).unwrap().get(&top), -2);
    }

    #[test]
    fn constants() {
        let g = path();
        let h = glue_function(&affine(&g.inputs[0], 3, 0), &affine(&g.inputs[1], 3, 0), &g).unwrap();
        assert!(h.is_constant());
    }

    #[test]
    fn mismatch_names_the_glue_point() {
        let g = path();
        let err = glue_function(&affine(&g.inputs[0], -1, 1), &affine(&g.inputs[1], 1, 0), &g).unwrap_err();
        assert_eq!(err, Error::GlueMismatch { point: "P".into(), left: "0".into(), right: "1".into() });
    }

    #[test]
    fn along_an_edge() {
        let shared = segment("S", "T", "s");
        let emb = Embedding {
            vertices: vec![PointRef::Vertex(0), PointRef::Vertex(1)],
            edges: vec![EdgeImage { edge: 0, start: q(0), reversed: false }],
        };
        let g = glue(segment("A", "B", "x"), segment("C", "D", "y"), shared, emb.clone(), emb).unwrap();
        let f1 = affine(&g.inputs[0], 0, 1);
        assert!(glue_function(&f1, &affine(&g.inputs[1], 0, 1), &g).is_ok());
        let tent = PlFunction::from_profiles(
            g.inputs[1].clone(),
            vec![Profile { breakpoints: vec![(q(0), q(0)), (crate::rational::qq(1, 2), crate::rational::qq(1, 2)), (q(1), q(1))], slope_at_infinity: None }],
            &BTreeMap::new(),
        )
        .unwrap();
        assert!(glue_function(&f1, &tent, &g).is_ok());
        let bent = PlFunction::from_profiles(
            g.inputs[1].clone(),
            vec![Profile { breakpoints: vec![(q(0), q(0)), (crate::rational::qq(1, 2), q(1)), (q(1), q(1))], slope_at_infinity: None }],
            &BTreeMap::new(),
        )
        .unwrap();
        let err = glue_function(&f1, &bent, &g).unwrap_err();
        assert_eq!(err, Error::GlueMismatch { point: "s@1/2".into(), left: "1/2".into(), right: "1".into() });
    }
}
