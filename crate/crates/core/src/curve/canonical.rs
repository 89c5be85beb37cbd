use std::collections::BTreeMap;

use crate::curve::{Curve, Edge};
use crate::error::{Error, Result};
use crate::rational::Extended;

/// Suppresses two-valent finite vertices. A circle keeps its least vertex id and
/// the line [−∞, ∞] keeps its least finite vertex id.
pub fn canonical_model(c: &Curve) -> Result<Curve> {
    if !c.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut edges: Vec<Option<Edge>> = c.edges().iter().cloned().map(Some).collect();
    let mut classes: BTreeMap<usize, String> = c.ray_classes().clone();
    let mut alive = vec![true; c.vertices().len()];

    let mut order: Vec<usize> = (0..c.vertices().len()).filter(|&v| !c.vertex(v).at_infinity).collect();
    order.sort_by(|&a, &b| c.vertex(b).id.cmp(&c.vertex(a).id));

    for v in order {
        let ends: Vec<usize> = edges
            .iter()
            .enumerate()
            .flat_map(|(i, e)| match e {
                Some(e) => {
                    let mut k = Vec::new();
                    if e.u == v {
                        k.push(i);
                    }
                    if e.v == v {
                        k.push(i);
                    }
                    k
                }
                None => Vec::new(),
            })
            .collect();
        if ends.len() != 2 || ends[0] == ends[1] {
            continue;
        }
        let (mut i, mut j) = (ends[0], ends[1]);
        let (ei, ej) = (edges[i].clone().unwrap(), edges[j].clone().unwrap());
        if ei.is_infinite() && ej.is_infinite() {
            continue;
        }
        if ej.id < ei.id {
            std::mem::swap(&mut i, &mut j);
        }
        let (ei, ej) = (edges[i].clone().unwrap(), edges[j].clone().unwrap());
        let far = |e: &Edge| if e.u == v { e.v } else { e.u };
        let (a, b) = (far(&ei), far(&ej));
        let length = match (&ei.length, &ej.length) {
            (Extended::Finite(x), Extended::Finite(y)) => Extended::Finite(x + y),
            _ => Extended::Infinite,
        };
        let (u, w, class) = if ej.is_infinite() {
            (a, b, classes.get(&j).cloned())
        } else if ei.is_infinite() {
            (b, a, classes.get(&i).cloned())
        } else {
            (a, b, None)
        };
        classes.remove(&i);
        classes.remove(&j);
        if let Some(cl) = class {
            classes.insert(i, cl);
        }
        edges[i] = Some(Edge { id: ei.id.clone(), u, v: w, length });
        edges[j] = None;
        alive[v] = false;
    }

    let mut vmap = vec![usize::MAX; alive.len()];
    let mut vertices = Vec::new();
    for (i, keep) in alive.iter().enumerate() {
        if *keep {
            vmap[i] = vertices.len();
            vertices.push(c.vertex(i).clone());
        }
    }
    let mut out_edges = Vec::new();
    let mut out_classes = BTreeMap::new();
    for (i, e) in edges.into_iter().enumerate() {
        if let Some(mut e) = e {
            e.u = vmap[e.u];
            e.v = vmap[e.v];
            if let Some(cl) = classes.get(&i) {
                out_classes.insert(out_edges.len(), cl.clone());
            }
            out_edges.push(e);
        }
    }
    Curve::assemble(vertices, out_edges, out_classes)
}
