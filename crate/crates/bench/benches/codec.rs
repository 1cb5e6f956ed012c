use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nfcodes::codec::{build_decoding_module, RootFinder};
use nfcodes::{decode, encode, DecodeOptions, Strategy};
use nfcodes_bench::reference_word;

fn bench_encode(c: &mut Criterion) {
    let (code, _) = reference_word(0);
    let m = code.field().element(&[-41, 17]);
    c.bench_function("encode_gauss_6_2", |b| b.iter(|| encode(black_box(&m), &code).unwrap()));
}

fn bench_module(c: &mut Criterion) {
    let (code, word) = reference_word(1);
    let mut g = c.benchmark_group("decoding_module");
    for l in [1, 2, 4] {
        g.bench_with_input(BenchmarkId::from_parameter(l), &l, |b, &l| {
            b.iter(|| build_decoding_module(black_box(&word), &[1; 6], l, &code).unwrap())
        });
    }
    g.finish();
}

fn bench_decode(c: &mut Criterion) {
    let mut g = c.benchmark_group("decode");
    g.sample_size(20);
    for (errors, rf) in [(0, RootFinder::Hensel), (1, RootFinder::Hensel), (1, RootFinder::Reference)] {
        let (code, word) = reference_word(errors);
        let opts = DecodeOptions { root_finder: rf, ..DecodeOptions::default() };
        let id = format!("e{errors}_{rf:?}").to_lowercase();
        g.bench_function(id, |b| b.iter(|| decode(black_box(&word), &code, &opts).unwrap()));
    }
    let (code, word) = reference_word(1);
    let opts = DecodeOptions { strategy: Strategy::Explicit { z_star: vec![1; 6], l: 3 }, ..DecodeOptions::default() };
    g.bench_function("explicit_l3", |b| b.iter(|| decode(black_box(&word), &code, &opts).unwrap()));
    g.finish();
}

criterion_group!(benches, bench_encode, bench_module, bench_decode);
criterion_main!(benches);
