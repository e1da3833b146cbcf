//! Compares the data-parallel fan-out against single-threaded execution
//! on the three heaviest batch shapes. With the `parallel` feature (the
//! default) the "default" series runs on the global rayon pool and
//! "one-thread" pins the same code to one worker; without the feature
//! only the sequential fallback exists and "default" measures it.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use frobsplit_core::derham::{verify_total_splitting, FrobeniusLift};
use frobsplit_core::exec;
use frobsplit_core::fpoly::{Ambient, FpPoly, PrimeField};
use frobsplit_core::sample::{Sampler, DEFAULT_SEED};
use frobsplit_core::splitting::{projective_point_count, sample_smooth_weierstrass};
use frobsplit_core::witt::{WittRing, WittVector};

fn bench_point_count_batch(c: &mut Criterion) {
    let field = PrimeField::new(13).expect("13 is supported");
    let mut rng = Sampler::from_seed(DEFAULT_SEED);
    let curves: Vec<FpPoly> =
        (0..128).map(|_| sample_smooth_weierstrass(field, &mut rng)).collect();

    let mut group = c.benchmark_group("point-count-batch");
    group.sample_size(30);
    group.bench_function("default", |b| {
        b.iter(|| black_box(exec::par_map(&curves, projective_point_count)))
    });
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("pool builds");
        group.bench_function("one-thread", |b| {
            b.iter(|| pool.install(|| black_box(exec::par_map(&curves, projective_point_count))))
        });
    }
    group.finish();
}

fn witt_sample_pairs(ring: &WittRing, count: usize) -> Vec<(WittVector, WittVector)> {
    let field = ring.ambient().field();
    let mut rng = Sampler::from_seed(DEFAULT_SEED ^ 0x9e37);
    (0..count)
        .map(|_| {
            let comps = |rng: &mut Sampler| {
                (0..ring.n()).map(|_| rng.poly(field, 2, 2, 3)).collect::<Vec<_>>()
            };
            (ring.from_comps(comps(&mut rng)), ring.from_comps(comps(&mut rng)))
        })
        .collect()
}

fn bench_witt_product_batch(c: &mut Criterion) {
    let field = PrimeField::new(3).expect("3 is supported");
    let ring = WittRing::new(Ambient::free(field, 2), 3);
    let pairs = witt_sample_pairs(&ring, 24);

    let mut group = c.benchmark_group("witt-product-batch");
    group.sample_size(20);
    group.bench_function("default", |b| {
        b.iter(|| black_box(exec::par_map(&pairs, |(x, y)| ring.mul(x, y))))
    });
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("pool builds");
        group.bench_function("one-thread", |b| {
            b.iter(|| pool.install(|| black_box(exec::par_map(&pairs, |(x, y)| ring.mul(x, y)))))
        });
    }
    group.finish();
}

fn bench_total_splitting(c: &mut Criterion) {
    let field = PrimeField::new(2).expect("2 is supported");
    let lift = FrobeniusLift::standard(field, 2);

    let mut group = c.benchmark_group("total-splitting");
    group.sample_size(20);
    group.bench_function("default", |b| {
        b.iter(|| black_box(verify_total_splitting(&lift, 6).expect("splitting verifies")))
    });
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("pool builds");
        group.bench_function("one-thread", |b| {
            b.iter(|| {
                pool.install(|| black_box(verify_total_splitting(&lift, 6).expect("splitting verifies")))
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_point_count_batch, bench_witt_product_batch, bench_total_splitting);
criterion_main!(benches);
