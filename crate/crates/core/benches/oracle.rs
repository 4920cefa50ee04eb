use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use monres::parallel::Execution;
use monres::taylor::{betti_table_oracle_with, OracleOptions};
use monres::verify::{verify_campaign, VerifyOptions};
use monres::{random_ideals, Ideal, RandomIdealConfig};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn strand_oracle(c: &mut Criterion) {
    let ideals = [
        ("q12-n4", "x1^3*x2, x1^2*x2^2*x3, x2^3*x4, x1*x3^3, x3^2*x4^2, x4^3, x1^4, x2^4, x1*x2*x3*x4, x2^2*x3^2, x1^2*x4^2, x3^4"),
        ("q14-n3", "a^6, b^6, c^6, a^5*b, a^4*b^2, a^3*b^3, a^2*b^4, a*b^5, a^4*c^2, b^4*c^2, a^2*b^2*c^2, a*c^5, b*c^5, a^3*b*c"),
    ];
    let mut group = c.benchmark_group("strand_oracle");
    group.sample_size(10);
    for (name, text) in ideals {
        let ideal = Ideal::parse_text(text, None).unwrap();
        for (mode, execution) in MODES {
            let opts = OracleOptions {
                execution,
                ..OracleOptions::default()
            };
            group.bench_with_input(BenchmarkId::new(mode, name), &ideal, |b, i| {
                b.iter(|| betti_table_oracle_with(black_box(i), &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn campaign(c: &mut Criterion) {
    let ideals: Vec<Ideal> = random_ideals(7, RandomIdealConfig::new(3, 7, 6))
        .unwrap()
        .take(100)
        .collect();
    let mut group = c.benchmark_group("verify_campaign");
    group.sample_size(10);
    for (mode, execution) in MODES {
        let opts = VerifyOptions {
            execution,
            ..VerifyOptions::default()
        };
        group.bench_function(BenchmarkId::new(mode, "n3-q7-100"), |b| {
            b.iter(|| verify_campaign(black_box(&ideals), &opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, strand_oracle, campaign);
criterion_main!(benches);
