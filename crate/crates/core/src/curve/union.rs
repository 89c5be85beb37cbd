use std::collections::BTreeMap;

use crate::curve::{Curve, Edge, Vertex};
use crate::error::{Error, Result};

/// Disjoint union. Ids become `"{i}.{id}"` for the `i`-th input. By default each
/// ray class is kept within its component as `"{i}.{label}"`; `shared` maps
/// `(i, label)` to a common label to merge classes across components.
pub fn disjoint_union(cs: &[&Curve], shared: Option<&BTreeMap<(usize, String), String>>) -> Result<Curve> {
    if cs.len() < 2 {
        return Err(Error::InvalidCurve("disjoint union needs at least two curves".into()));
    }
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut classes = BTreeMap::new();
    for (i, c) in cs.iter().enumerate() {
        let off = vertices.len();
        for v in c.vertices() {
            vertices.push(Vertex { id: format!("{i}.{}", v.id), at_infinity: v.at_infinity });
        }
        for (k, e) in c.edges().iter().enumerate() {
            if let Some(label) = c.ray_class(k) {
                let merged = shared.and_then(|m| m.get(&(i, label.to_string())).cloned());
                classes.insert(edges.len(), merged.unwrap_or_else(|| format!("{i}.{label}")));
            }
            edges.push(Edge { id: format!("{i}.{}", e.id), u: e.u + off, v: e.v + off, length: e.length.clone() });
        }
    }
    Curve::assemble(vertices, edges, classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurveDesc;

    fn real_line() -> Curve {
        Curve::build(CurveDesc::default().vertex("O", false).ray("L", "O", "left").ray("R", "O", "right")).unwrap()
    }

    #[test]
    fn direct_sum_keeps_classes_apart() {
        let l = real_line();
        let u = disjoint_union(&[&l, &l], None).unwrap();
        assert_eq!(u.num_components(), 2);
        assert_eq!(u.classes().len(), 4);
        for (_, members) in u.classes() {
            let comps: std::collections::BTreeSet<usize> =
                members.iter().map(|e| u.component_of(u.edge(*e).u)).collect();
            assert_eq!(comps.len(), 1);
        }
    }

    #[test]
    fn shared_classes() {
        let l = real_line();
        let mut m = BTreeMap::new();
        for i in 0..2 {
            m.insert((i, "left".to_string()), "minus".to_string());
            m.insert((i, "right".to_string()), "plus".to_string());
        }
        let u = disjoint_union(&[&l, &l], Some(&m)).unwrap();
        assert_eq!(u.classes().len(), 2);
        assert_eq!(u.classes()["plus"].len(), 2);
    }

    #[test]
    fn segments_without_rays() {
        let s = Curve::build(
            CurveDesc::default().vertex("A", false).vertex("B", false).edge(
                "e",
                "A",
                "B",
                crate::rational::Extended::Finite(crate::rational::q(1)),
            ),
        )
        .unwrap();
        let u = disjoint_union(&[&s, &s, &s], None).unwrap();
        assert_eq!(u.num_components(), 3);
        assert!(u.classes().is_empty());
    }
}
