use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hypam::{bounds_log, bounds_ratio, bounds_rational, eval_F, make_params, ExactScalar, HypParams, RatioRegion};

fn evaluation(c: &mut Criterion) {
    let k = HypParams::new(0.5, 0.5, 1.0).unwrap();
    let mut g = c.benchmark_group("eval_F");
    for x in [0.5, 0.9, 0.99] {
        g.bench_function(format!("K x={x}"), |bch| bch.iter(|| eval_F(&k, black_box(x), 1e-14).unwrap()));
    }
    g.finish();
}

fn bounds(c: &mut Criterion) {
    let q = |s: &str| s.parse::<ExactScalar>().unwrap();
    let t = make_params(q("1/2"), q("1/2"), q("1")).unwrap();
    c.bench_function("bounds_rational n=2", |bch| {
        bch.iter(|| bounds_rational(&t, &q("1/4"), 2, black_box(0.7)).unwrap())
    });
    c.bench_function("bounds_log n=2", |bch| bch.iter(|| bounds_log(&t, &q("0"), 2, black_box(0.7)).unwrap()));
    c.bench_function("bounds_ratio", |bch| {
        bch.iter(|| bounds_ratio(&t, 2.0, 2.0, black_box(0.5), RatioRegion::Auto).unwrap())
    });
}

criterion_group!(benches, evaluation, bounds);
criterion_main!(benches);
