//! Deterministic SVG and CSV renderings of complexes.
//!
//! SVG viewport: let `s` be the larger side of the vertex bounding box, at least 1.
//! Each ray is drawn from its vertex to `vertex + s·d` for its primitive direction `d`.
//! The view box is the bounding box of all drawn points grown by `s/10` on every side,
//! with the y axis pointing up. Coordinates are printed with four decimals, rounded
//! half away from zero.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::rational::{fmt_decimal, fmt_rational, q, Rational};
use crate::realization::PolyComplex;

fn d(x: &Rational) -> String {
    fmt_decimal(x, 4)
}

pub fn to_svg(k: &PolyComplex) -> Result<String> {
    if k.dim != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: k.dim });
    }
    k.validate_basic()?;
    let (lo, hi) = k.bounding_box().ok_or_else(|| Error::InvalidComplex("complex has no vertices".into()))?;
    let s = (&hi[0] - &lo[0]).max(&hi[1] - &lo[1]).max(q(1));
    let ray_end = |from: usize, dir: &[i64]| -> Vec<Rational> {
        k.vertices[from].iter().zip(dir).map(|(x, &di)| x + &s * q(di)).collect()
    };
    let mut pts: Vec<Vec<Rational>> = k.vertices.clone();
    pts.extend(k.rays.iter().map(|r| ray_end(r.from, &r.dir)));
    let min = |i: usize| pts.iter().map(|p| p[i].clone()).min().unwrap();
    let max = |i: usize| pts.iter().map(|p| p[i].clone()).max().unwrap();
    let margin = &s / q(10);
    let (x0, x1) = (min(0) - &margin, max(0) + &margin);
    let (y0, y1) = (min(1) - &margin, max(1) + &margin);
    let font = &s / q(15);
    let dot = &s / q(60);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="480" height="480">"#,
        d(&x0),
        d(&-&y1),
        d(&(&x1 - &x0)),
        d(&(&y1 - &y0))
    )
    .unwrap();
    let mut line = |a: &[Rational], b: &[Rational], w: u64, label_at: Vec<Rational>| {
        writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="2" vector-effect="non-scaling-stroke"/>"#,
            d(&a[0]),
            d(&-&a[1]),
            d(&b[0]),
            d(&-&b[1])
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-size="{}" fill="blue">{w}</text>"#,
            d(&label_at[0]),
            d(&-&label_at[1]),
            d(&font)
        )
        .unwrap();
    };
    for sg in &k.segments {
        let (a, b) = (&k.vertices[sg.a], &k.vertices[sg.b]);
        let mid = a.iter().zip(b).map(|(x, y)| (x + y) / q(2)).collect();
        line(a, b, sg.weight, mid);
    }
    for r in &k.rays {
        let end = ray_end(r.from, &r.dir);
        let mid = k.vertices[r.from].iter().zip(&end).map(|(x, y)| (x + y) / q(2)).collect();
        line(&k.vertices[r.from], &end, r.weight, mid);
    }
    for v in &k.vertices {
        writeln!(out, r#"<circle cx="{}" cy="{}" r="{}" fill="black"/>"#, d(&v[0]), d(&-&v[1]), d(&dot)).unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// One row per vertex, segment and ray. Coordinates are exact and joined by `;`.
pub fn to_csv(k: &PolyComplex) -> String {
    let join = |v: Vec<String>| v.join(";");
    let mut out = String::from("kind,index,a,b,weight\n");
    for (i, v) in k.vertices.iter().enumerate() {
        out.push_str(&format!("vertex,{i},{},,\n", join(v.iter().map(fmt_rational).collect())));
    }
    for (i, s) in k.segments.iter().enumerate() {
        out.push_str(&format!("segment,{i},{},{},{}\n", s.a, s.b, s.weight));
    }
    for (i, r) in k.rays.iter().enumerate() {
        out.push_str(&format!("ray,{i},{},{},{}\n", r.from, join(r.dir.iter().map(|x| x.to_string()).collect()), r.weight));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::Ray;

    fn line() -> PolyComplex {
        PolyComplex {
            dim: 2,
            vertices: vec![vec![q(0), q(0)]],
            segments: vec![],
            rays: vec![
                Ray { from: 0, dir: vec![1, 1], weight: 1 },
                Ray { from: 0, dir: vec![-1, 0], weight: 1 },
                Ray { from: 0, dir: vec![0, -1], weight: 1 },
            ],
        }
    }

    #[test]
    fn svg_has_three_rays_and_labels() {
        let svg = to_svg(&line()).unwrap();
        assert_eq!(svg.matches("<line").count(), 3);
        assert_eq!(svg.matches("<text").count(), 3);
        assert!(svg.contains(r#"viewBox="-1.1000 -1.1000 2.2000 2.2000""#), "{svg}");
        assert_eq!(svg, to_svg(&line()).unwrap());
    }

    #[test]
    fn three_dimensional() {
        let k = PolyComplex { dim: 3, vertices: vec![vec![q(0), q(0), q(1)]], segments: vec![], rays: vec![] };
        assert!(to_svg(&k).is_err());
        assert_eq!(to_csv(&k), "kind,index,a,b,weight\nvertex,0,0;0;1,,\n");
    }
}
