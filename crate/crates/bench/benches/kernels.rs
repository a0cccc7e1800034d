use criterion::{criterion_group, criterion_main, Criterion};
use gonspan::gf2::{self, Gf2Matrix, Gf2Vector, RankBuilder, EXACT_DIM_CAP};
use gonspan::graph::{gen_gnp, mix_seed};
use gonspan::paths::{sigma, PathCaps};
use gonspan::subspace::{cut_space, find_f, in_t_cycle, kappa_span_rank};

fn random_matrix(rows: usize, ambient: usize, seed: u64) -> Gf2Matrix {
    let mut m = Gf2Matrix::new(ambient);
    for r in 0..rows {
        let mut v = Gf2Vector::zeros(ambient);
        for i in 0..ambient {
            if mix_seed(&[seed, r as u64, i as u64]).is_multiple_of(2) {
                v.set(i);
            }
        }
        m.push(v).unwrap();
    }
    m
}

fn bench_rank(c: &mut Criterion) {
    let m = random_matrix(1200, 1024, 7);
    c.bench_function("gf2_reduce_1200x1024", |b| {
        b.iter(|| {
            let basis = gf2::reduce(&m);
            assert!(basis.dim() <= 1024);
            basis.dim()
        })
    });
    c.bench_function("gf2_rank_builder_sparse", |b| {
        b.iter(|| {
            let mut rb = RankBuilder::new(4096);
            for i in 0..3000usize {
                let s = [
                    (i * 97) % 4096,
                    (i * 193 + 11) % 4096,
                    (i * 389 + 29) % 4096,
                ];
                rb.push_sparse(&s);
            }
            rb.rank()
        })
    });
}

fn bench_span_test(c: &mut Criterion) {
    let g = gen_gnp(150, 0.25, 42).unwrap();
    c.bench_function("triangle_span_rank_n150", |b| {
        b.iter(|| kappa_span_rank(&g, 3, None))
    });
    c.bench_function("in_t_cycle_n150", |b| b.iter(|| in_t_cycle(&g, 3).unwrap()));
}

fn bench_minimizer(c: &mut Criterion) {
    let g = gen_gnp(80, 0.12, 9).unwrap();
    c.bench_function("find_f_n80_subthreshold", |b| {
        b.iter(|| find_f(&g, 3, EXACT_DIM_CAP, 1).unwrap().subset.weight())
    });
    let small = gen_gnp(16, 0.4, 3).unwrap();
    let cut = cut_space(&small);
    let v = Gf2Vector::from_support(small.m(), &[0, 3, 5]);
    c.bench_function("coset_min_exact_dim15", |b| {
        b.iter(|| {
            gf2::coset_min_weight(cut.basis(), &v, EXACT_DIM_CAP)
                .unwrap()
                .0
                .weight()
        })
    });
}

fn bench_paths(c: &mut Criterion) {
    let g = gen_gnp(200, 0.08, 11).unwrap();
    c.bench_function("sigma_l3_n200", |b| {
        b.iter(|| sigma(&g, 0, 1, 3, PathCaps::default()).unwrap().sigma)
    });
}

criterion_group!(
    benches,
    bench_rank,
    bench_span_test,
    bench_minimizer,
    bench_paths
);
criterion_main!(benches);
