use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use vform::engine::Engine;
use vform::hermitian::Hermitian;
use vform::presentation::fixtures;
use vform::scalar::linalg;
use vform::zhu::{ZhuElement, ZhuPresentation};
use vform::HalfInt;
use vform_bench::{affine_word, rational_pair, weight_space};

fn straightening(c: &mut Criterion) {
    let (p, word) = affine_word();
    let mut g = c.benchmark_group("straightening");
    // a fresh engine per iteration, so the field cache does not hide the work
    g.bench_function("affine word, cold cache", |b| {
        b.iter_batched(|| Engine::new(&p).unwrap(), |e| black_box(e.apply_word(&word).unwrap()), BatchSize::SmallInput)
    });
    let e = Engine::new(&p).unwrap();
    g.bench_function("affine word, warm cache", |b| b.iter(|| black_box(e.apply_word(&word).unwrap())));
    let bp = fixtures::bershadsky_polyakov();
    let e = Engine::new(&bp).unwrap();
    let states = weight_space(&bp, HalfInt::from_int(3));
    g.bench_function("Bershadsky-Polyakov L_1 on weight 3", |b| {
        b.iter(|| states.iter().map(|s| e.conformal_mode(1, s)).collect::<Vec<_>>())
    });
    g.finish();
}

fn gram_assembly(c: &mut Criterion) {
    let mut g = c.benchmark_group("gram");
    g.sample_size(20);
    for (name, p, w) in [
        ("affine sl2 weight 3", fixtures::affine_sl2(), HalfInt::from_int(3)),
        ("Bershadsky-Polyakov weight 3", fixtures::bershadsky_polyakov(), HalfInt::from_int(3)),
        ("symplectic fermion weight 3", fixtures::symplectic_fermion(), HalfInt::from_int(3)),
    ] {
        g.bench_function(name, |b| {
            b.iter_batched(|| Hermitian::new(&p).unwrap(), |f| black_box(f.gram(w)), BatchSize::SmallInput)
        });
    }
    let f = Hermitian::new(&fixtures::affine_sl2()).unwrap();
    let gram = f.gram(HalfInt::from_int(2));
    g.bench_function("affine sl2 weight 2 determinant", |b| b.iter(|| black_box(linalg::determinant(&gram.entries))));
    g.finish();
}

fn scalar_arithmetic(c: &mut Criterion) {
    let (x, y) = rational_pair();
    let mut g = c.benchmark_group("scalar");
    g.bench_function("add", |b| b.iter(|| black_box(&x + &y)));
    g.bench_function("mul", |b| b.iter(|| black_box(&x * &y)));
    g.bench_function("div", |b| b.iter(|| black_box(x.checked_div(&y).unwrap())));
    g.bench_function("parse", |b| b.iter(|| black_box("(-6*k^2+-11*k^1+-3)/(1*k^1+3)".parse::<vform::Scalar>().unwrap())));
    g.finish();
}

fn zhu_rewriting(c: &mut Criterion) {
    let zp = ZhuPresentation::new(&fixtures::bershadsky_polyakov_datum()).unwrap();
    let gens: Vec<ZhuElement> = (0..zp.len()).map(ZhuElement::generator).collect();
    let x = zp.multiply(&zp.multiply(&gens[1], &gens[2]), &gens[0]);
    let y = zp.multiply(&gens[2], &gens[1]);
    c.bench_function("zhu straighten degree-5 product", |b| b.iter(|| black_box(zp.multiply(&x, &y))));
}

criterion_group!(benches, straightening, gram_assembly, scalar_arithmetic, zhu_rewriting);
criterion_main!(benches);
