use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use tropcurve::morphism::Localization;
use tropcurve::random;
use tropcurve::rat_fun::{div_of, module_degree};
use tropcurve::realization::{bezout_check, fit_tropical_polynomial, ingest_balanced, realize};
use tropcurve::tropical::hypersurface2;

fn functions(c: &mut Criterion) {
    let mut r = random::rng(1);
    let curve = random::connected_curve(&mut r, 6);
    let (f, g) = (random::function(&mut r, &curve), random::function(&mut r, &curve));
    let x = random::finite_point(&mut r, &curve);
    c.bench_function("function oplus", |b| b.iter(|| black_box(&f).oplus(black_box(&g)).unwrap()));
    c.bench_function("function otimes", |b| b.iter(|| black_box(&f).otimes(black_box(&g)).unwrap()));
    c.bench_function("divisor", |b| b.iter(|| div_of(black_box(&f)).unwrap()));
    let gens = [f.clone(), g.clone()];
    c.bench_function("module degree", |b| b.iter(|| module_degree(black_box(&gens)).unwrap()));
    let loc = Localization::new(curve.clone(), &x, None).unwrap();
    c.bench_function("localize", |b| b.iter(|| loc.apply(black_box(&f)).unwrap()));
}

fn planar(c: &mut Criterion) {
    let mut r = random::rng(2);
    let p = random::poly2(&mut r, 6, 3);
    let q = random::poly2(&mut r, 4, 2);
    c.bench_function("hypersurface", |b| b.iter(|| hypersurface2(black_box(&p), None).unwrap()));
    let k = hypersurface2(&p, None).unwrap();
    let k2 = hypersurface2(&q, None).unwrap().translate(&[tropcurve::rational::qq(1, 3), tropcurve::rational::qq(2, 7)]);
    c.bench_function("fit polynomial", |b| b.iter(|| fit_tropical_polynomial(black_box(&k)).unwrap()));
    if k.is_connected() {
        let ing = ingest_balanced(&k).unwrap();
        c.bench_function("realize ingested", |b| b.iter(|| realize(&ing.curve, black_box(&ing.fs)).unwrap()));
    }
    c.bench_function("bezout", |b| b.iter(|| bezout_check(black_box(&k), black_box(&k2))));
}

criterion_group!(benches, functions, planar);
criterion_main!(benches);
