use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use optlink_core::exec::{map_indexed, Execution};
use optlink_core::fso::max_fso_distance;
use optlink_core::sweep::{figure_preset, run_sweep_with, FigureId};
use optlink_core::{AngleDeg, FsoLinkConfig, Wavelength, WeatherCondition};

fn strategies() -> Vec<(&'static str, Execution)> {
    let mut v = vec![("sequential", Execution::Sequential)];
    #[cfg(feature = "parallel")]
    v.push(("parallel", Execution::Parallel));
    v
}

fn bench_presets(c: &mut Criterion) {
    let mut group = c.benchmark_group("figure_presets");
    for (name, exec) in strategies() {
        for id in [FigureId::Fig5, FigureId::Fig11, FigureId::Fig14] {
            let spec = figure_preset(id);
            group.bench_with_input(BenchmarkId::new(name, id), &spec, |b, spec| {
                b.iter(|| run_sweep_with(black_box(spec), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_max_distance_batch(c: &mut Criterion) {
    let lambda0 = Wavelength::from_um(0.55).unwrap();
    let cases: Vec<(FsoLinkConfig, WeatherCondition)> = (0..2000)
        .map(|i| {
            let cfg = FsoLinkConfig {
                divergence: AngleDeg::new(0.05 + 0.001 * (i % 200) as f64).unwrap(),
                ..FsoLinkConfig::default()
            };
            let weather = WeatherCondition::new(0.5 + 0.025 * i as f64, 0.0, 0.0, 1e-15).unwrap();
            (cfg, weather)
        })
        .collect();
    let mut group = c.benchmark_group("max_fso_distance_batch");
    for (name, exec) in strategies() {
        group.bench_function(name, |b| {
            b.iter(|| {
                map_indexed(cases.len(), exec, |i| {
                    let (cfg, w) = &cases[i];
                    max_fso_distance(cfg, w, lambda0).unwrap()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_presets, bench_max_distance_batch);
criterion_main!(benches);
