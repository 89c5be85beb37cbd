//! Images of curves under lists of rational functions.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;

use crate::curve::{Curve, PointRef};
use crate::error::{Error, Result};
use crate::rat_fun::{div_of, PlFunction};
use crate::rational::{fmt_rational, gcd_slice, q, Extended, Rational};
use crate::realization::{check_balanced, intersect_cells, BalanceReport, Cell, Meet, PolyComplex, Ray, Segment};

/// One affine piece of the common breakpoint refinement and its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImagePiece {
    pub edge: usize,
    pub start: Rational,
    pub end: Extended,
    /// Slope of each function along the piece, toward `end`.
    pub slopes: Vec<i64>,
    pub from: Vec<Rational>,
    /// Image of `end`; `None` on the unbounded piece of a ray.
    pub to: Option<Vec<Rational>>,
}

impl ImagePiece {
    pub fn expansion(&self) -> u64 {
        gcd_slice(&self.slopes) as u64
    }

    fn cell(&self) -> Option<Cell> {
        if self.expansion() == 0 {
            return None;
        }
        Some(match &self.to {
            Some(to) => Cell::Segment(self.from.clone(), to.clone()),
            None => Cell::Ray(self.from.clone(), self.slopes.iter().map(|&s| q(s)).collect()),
        })
    }
}

/// The map `x ↦ (f₁(x), …, fₙ(x))` on the finite part of a curve.
#[derive(Clone, Debug)]
pub struct RealizationMap {
    pub curve: Arc<Curve>,
    pub fs: Vec<PlFunction>,
    pub pieces: Vec<ImagePiece>,
    /// Vertices and breakpoints of the refinement with their images.
    pub skeleton: Vec<(PointRef, Vec<Rational>)>,
    /// The image with gcd-of-slopes weights, in canonical form.
    pub image: PolyComplex,
}

pub fn realize(c: &Arc<Curve>, fs: &[PlFunction]) -> Result<RealizationMap> {
    if fs.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    for f in fs {
        if **f.curve() != **c {
            return Err(Error::CurveMismatch);
        }
        if f.is_neg_inf() {
            return Err(Error::ZeroFunction);
        }
    }
    let theta = |p: &PointRef| -> Result<Vec<Rational>> { fs.iter().map(|f| f.eval_finite(p)).collect() };
    let mut skeleton = Vec::new();
    for (v, vert) in c.vertices().iter().enumerate() {
        if !vert.at_infinity {
            skeleton.push((PointRef::Vertex(v), theta(&PointRef::Vertex(v))?));
        }
    }
    let mut pieces = Vec::new();
    for (e, edge) in c.edges().iter().enumerate() {
        let mut cuts: BTreeSet<Rational> = BTreeSet::new();
        cuts.insert(Rational::zero());
        for f in fs {
            cuts.extend(f.profile(e).unwrap().breakpoints.iter().map(|(t, _)| t.clone()));
        }
        let cuts: Vec<Rational> = cuts.into_iter().collect();
        let at = |t: &Rational| -> Vec<Rational> { fs.iter().map(|f| f.profile(e).unwrap().value_at(t)).collect() };
        for t in &cuts[1..] {
            if Extended::Finite(t.clone()) != edge.length {
                skeleton.push((PointRef::OnEdge(e, t.clone()), at(t)));
            }
        }
        for w in cuts.windows(2) {
            let (a, b) = (at(&w[0]), at(&w[1]));
            let len = &w[1] - &w[0];
            let slopes = a.iter().zip(&b).map(|(x, y)| crate::rational::as_i64(&((y - x) / &len)).unwrap()).collect();
            pieces.push(ImagePiece { edge: e, start: w[0].clone(), end: Extended::Finite(w[1].clone()), slopes, from: a, to: Some(b) });
        }
        if edge.is_infinite() {
            let last = cuts.last().unwrap().clone();
            let slopes = fs.iter().map(|f| f.profile(e).unwrap().slope_at_infinity.unwrap()).collect();
            pieces.push(ImagePiece { edge: e, start: last.clone(), end: Extended::Infinite, slopes, from: at(&last), to: None });
        }
    }
    let mut raw = PolyComplex::new(fs.len());
    for (_, x) in &skeleton {
        raw.vertex(x.clone());
    }
    for p in &pieces {
        let w = p.expansion();
        if w == 0 {
            continue;
        }
        let a = raw.vertex(p.from.clone());
        match &p.to {
            Some(to) => {
                let b = raw.vertex(to.clone());
                raw.segments.push(Segment { a, b, weight: w });
            }
            None => {
                let dir = p.slopes.iter().map(|s| s / w as i64).collect();
                raw.rays.push(Ray { from: a, dir, weight: w });
            }
        }
    }
    Ok(RealizationMap { curve: c.clone(), fs: fs.to_vec(), pieces, skeleton, image: raw.canonical() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationReport {
    pub injective: bool,
    pub local_isometry: bool,
    pub parallel_respected: bool,
    pub condition5_free: bool,
    /// Pieces whose expansion factor differs from one, with that factor.
    pub expansions: Vec<(String, u64)>,
    pub notes: Vec<String>,
}

impl RealizationMap {
    pub fn piece_label(&self, p: &ImagePiece) -> String {
        let end = match &p.end {
            Extended::Finite(t) => fmt_rational(t),
            Extended::Infinite => "inf".into(),
        };
        format!("{}[{},{}]", self.curve.edge(p.edge).id, fmt_rational(&p.start), end)
    }

    fn ray_direction(&self, e: usize) -> Vec<i64> {
        let p = self.pieces.iter().rev().find(|p| p.edge == e && p.to.is_none()).unwrap();
        let g = gcd_slice(&p.slopes).max(1);
        p.slopes.iter().map(|s| s / g).collect()
    }

    pub fn check(&self) -> RealizationReport {
        let mut notes = Vec::new();
        let mut injective = true;
        let expansions: Vec<(String, u64)> =
            self.pieces.iter().filter(|p| p.expansion() != 1).map(|p| (self.piece_label(p), p.expansion())).collect();
        for p in self.pieces.iter().filter(|p| p.expansion() == 0) {
            injective = false;
            notes.push(format!("piece {} collapses to a point", self.piece_label(p)));
        }
        let mut seen: BTreeMap<&Vec<Rational>, &PointRef> = BTreeMap::new();
        for (pt, x) in &self.skeleton {
            if let Some(other) = seen.insert(x, pt) {
                injective = false;
                notes.push(format!(
                    "{} and {} have the same image",
                    self.curve.point_label(other),
                    self.curve.point_label(pt)
                ));
            }
        }
        let cells: Vec<(usize, Cell)> =
            self.pieces.iter().enumerate().filter_map(|(i, p)| p.cell().map(|c| (i, c))).collect();
        for a in 0..cells.len() {
            for b in a + 1..cells.len() {
                let (pa, pb) = (&self.pieces[cells[a].0], &self.pieces[cells[b].0]);
                let ends = |p: &ImagePiece| -> Vec<Vec<Rational>> {
                    std::iter::once(p.from.clone()).chain(p.to.clone()).collect()
                };
                let ok = match intersect_cells(&cells[a].1, &cells[b].1) {
                    Meet::Empty => true,
                    Meet::Overlap => false,
                    Meet::Point(x) => ends(pa).contains(&x) && ends(pb).contains(&x),
                };
                if !ok {
                    injective = false;
                    notes.push(format!("images of {} and {} meet", self.piece_label(pa), self.piece_label(pb)));
                }
            }
        }
        let rays: Vec<usize> = self.curve.ray_classes().keys().copied().collect();
        let mut parallel_respected = true;
        for (i, &r) in rays.iter().enumerate() {
            for &s in &rays[i + 1..] {
                let same_class = self.curve.ray_class(r) == self.curve.ray_class(s);
                let same_dir = self.ray_direction(r) == self.ray_direction(s);
                if same_class != same_dir {
                    parallel_respected = false;
                    notes.push(format!(
                        "rays {} and {}: same class {same_class}, same direction {same_dir}",
                        self.curve.edge(r).id,
                        self.curve.edge(s).id
                    ));
                }
            }
        }
        let mut condition5_free = true;
        let image_rays: Vec<&ImagePiece> = self.pieces.iter().filter(|p| p.to.is_none() && p.expansion() > 0).collect();
        for (i, a) in image_rays.iter().enumerate() {
            for b in &image_rays[i + 1..] {
                let (ca, cb) = (a.cell().unwrap(), b.cell().unwrap());
                let dir = |p: &ImagePiece| {
                    let g = p.expansion() as i64;
                    p.slopes.iter().map(|s| s / g).collect::<Vec<_>>()
                };
                if dir(a) == dir(b) && !ca.contains(&b.from) && !cb.contains(&a.from) {
                    condition5_free = false;
                    notes.push(format!(
                        "image rays of {} and {} share a direction without nesting",
                        self.piece_label(a),
                        self.piece_label(b)
                    ));
                }
            }
        }
        RealizationReport {
            injective,
            local_isometry: expansions.is_empty(),
            parallel_respected,
            condition5_free,
            expansions,
            notes,
        }
    }
}

/// Harmonicity of every coordinate at every finite skeleton point, and balancing of the image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicReport {
    /// Point label and, per function, whether it is harmonic there.
    pub table: Vec<(String, Vec<bool>)>,
    pub all_harmonic: bool,
    pub balance: BalanceReport,
    /// `Some(balanced)` when every function is harmonic everywhere, `None` otherwise.
    pub implication: Option<bool>,
}

pub fn harmonic_realization_check(r: &RealizationMap) -> Result<HarmonicReport> {
    if !r.check().injective {
        return Err(Error::NotInjective);
    }
    let divs = r.fs.iter().map(div_of).collect::<Result<Vec<_>>>()?;
    let table: Vec<(String, Vec<bool>)> = r
        .skeleton
        .iter()
        .map(|(p, _)| (r.curve.point_label(p), divs.iter().map(|d| d.get(p) == 0).collect()))
        .collect();
    let finite_support = divs.iter().any(|d| {
        d.coefficients().keys().any(|p| !r.curve.is_at_infinity(p).unwrap_or(true))
    });
    let all_harmonic = !finite_support;
    let balance = check_balanced(&r.image);
    let implication = all_harmonic.then_some(balance.balanced);
    Ok(HarmonicReport { table, all_harmonic, balance, implication })
}
