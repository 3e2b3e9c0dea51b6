use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use ldisj_core::harness::generate_instance;
use ldisj_core::recognizer::{check_consistency, search_output_one_probability};
use ldisj_core::{
    blockwise_recognize, exact_word_distribution, GateId, GateInstruction, GateTape, InstanceKind,
    RecognizerKind, TokenStream,
};

fn member_word(k: u32) -> String {
    generate_instance(k, InstanceKind::Member, 7)
        .unwrap()
        .encode()
}

fn bench_search_run(c: &mut Criterion) {
    let word = member_word(2);
    c.bench_function("search_run_k2_j3", |b| {
        b.iter(|| {
            let mut stream = TokenStream::from_word(black_box(&word)).unwrap();
            search_output_one_probability(&mut stream, 2, 3).unwrap()
        })
    });
}

fn bench_consistency_point(c: &mut Criterion) {
    let word = member_word(2);
    c.bench_function("consistency_check_k2_single_point", |b| {
        b.iter(|| {
            let mut stream = TokenStream::from_word(black_box(&word)).unwrap();
            check_consistency(&mut stream, 2, 101, 257).unwrap()
        })
    });
}

fn bench_blockwise_run(c: &mut Criterion) {
    let word = member_word(2);
    c.bench_function("blockwise_run_k2", |b| {
        b.iter(|| {
            let mut stream = TokenStream::from_word(black_box(&word)).unwrap();
            blockwise_recognize(&mut stream, 5).unwrap()
        })
    });
}

fn bench_exact_enumeration(c: &mut Criterion) {
    let word = member_word(1);
    c.bench_function("quantum_exact_enumeration_k1", |b| {
        b.iter(|| exact_word_distribution(black_box(&word), RecognizerKind::Quantum).unwrap())
    });
}

fn bench_tape_executor(c: &mut Criterion) {
    // deterministic mixed tape on 10 qubits
    let instructions: Vec<GateInstruction> = (0..1000)
        .map(|i| {
            let a = i % 10;
            let b = (i * 7 + 3) % 10;
            let gate = match i % 3 {
                0 => GateId::Hadamard,
                1 => GateId::T,
                _ => GateId::Cnot,
            };
            GateInstruction::new(a, b, gate)
        })
        .collect();
    let tape = GateTape::new(instructions, 10).unwrap();
    c.bench_function("tape_executor_10q_1000_gates", |b| {
        b.iter(|| black_box(&tape).run().unwrap())
    });
}

criterion_group!(
    benches,
    bench_search_run,
    bench_consistency_point,
    bench_blockwise_run,
    bench_exact_enumeration,
    bench_tape_executor
);
criterion_main!(benches);
