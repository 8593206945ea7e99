use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use relcsp::consistency::{pac_with, sac_with, Options};
use relcsp::fixtures::{random_instance, sac_not_pac, InstanceParams};
use relcsp::par;
use relcsp::Instance;
use std::hint::black_box;

fn instances(count: u64, elements: usize, tuples: usize) -> Vec<Instance> {
    let b = sac_not_pac();
    (0..count)
        .map(|seed| {
            random_instance(
                &b,
                &InstanceParams {
                    elements,
                    tuples,
                    seed,
                    planted: seed % 2 == 0,
                },
            )
            .expect("generator")
            .instance
        })
        .collect()
}

fn pac_probes(c: &mut Criterion) {
    let mut group = c.benchmark_group("pac_probes");
    for &elements in &[8usize, 16, 32] {
        let inst = &instances(1, elements, elements * 2)[0];
        for (label, parallel) in [("sequential", false), ("parallel", true)] {
            let opts = Options {
                parallel,
                ..Options::default()
            };
            group.bench_with_input(BenchmarkId::new(label, elements), inst, |bch, inst| {
                bch.iter(|| black_box(pac_with(inst, &opts)))
            });
        }
    }
    group.finish();
}

fn sac_batch(c: &mut Criterion) {
    let batch = instances(64, 6, 10);
    let mut group = c.benchmark_group("sac_batch");
    for (label, parallel) in [("sequential", false), ("parallel", true)] {
        group.bench_function(label, |bch| {
            bch.iter(|| {
                black_box(par::map_slice(&batch, parallel, |i| {
                    sac_with(i, &Options::default()).verdict.is_reject()
                }))
            })
        });
    }
    group.finish();
}

criterion_group!(benches, pac_probes, sac_batch);
criterion_main!(benches);
