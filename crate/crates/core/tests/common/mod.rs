//! Shared helpers for the integration tests: an independent dense-matrix
//! oracle for the tape executor, word surgery for building structurally
//! inconsistent inputs, and random-state generation.
#![allow(dead_code)] // each test target uses its own subset

use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::FRAC_1_SQRT_2;

use ldisj_core::{GateId, GateInstruction, QuantumRegister};

/// Flips one bit inside a block of an encoded word.
/// `block_offset`: 0 = leading x copy, 1 = y, 2 = trailing x copy.
pub fn flip_block_bit(
    word: &str,
    k: u32,
    repetition: u32,
    block_offset: usize,
    bit_pos: usize,
) -> String {
    let side = 1usize << (2 * k);
    let header = k as usize + 1;
    let block_global = (repetition as usize - 1) * 3 + block_offset;
    let idx = header + block_global * (side + 1) + bit_pos;
    let mut bytes = word.as_bytes().to_vec();
    bytes[idx] = match bytes[idx] {
        b'0' => b'1',
        b'1' => b'0',
        other => panic!("expected a bit at {idx}, found {}", other as char),
    };
    String::from_utf8(bytes).unwrap()
}

type Matrix = Vec<Vec<Complex64>>;

fn zero_matrix(dim: usize) -> Matrix {
    vec![vec![Complex64::new(0.0, 0.0); dim]; dim]
}

fn identity(dim: usize) -> Matrix {
    let mut m = zero_matrix(dim);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    m
}

/// Full 2^s x 2^s matrix of one instruction, built entrywise.
#[allow(clippy::needless_range_loop)] // the permutation indexing reads clearer
fn instruction_matrix(ins: GateInstruction, s: usize) -> Matrix {
    let dim = 1usize << s;
    let mut m = zero_matrix(dim);
    match ins.gate {
        GateId::Hadamard => {
            let h = [
                [
                    Complex64::new(FRAC_1_SQRT_2, 0.0),
                    Complex64::new(FRAC_1_SQRT_2, 0.0),
                ],
                [
                    Complex64::new(FRAC_1_SQRT_2, 0.0),
                    Complex64::new(-FRAC_1_SQRT_2, 0.0),
                ],
            ];
            let mask = 1usize << ins.a;
            for (r, row) in m.iter_mut().enumerate() {
                for (c, cell) in row.iter_mut().enumerate() {
                    if r & !mask == c & !mask {
                        *cell = h[usize::from(r & mask != 0)][usize::from(c & mask != 0)];
                    }
                }
            }
        }
        GateId::T => {
            let phase = Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
            let mask = 1usize << ins.a;
            for (r, row) in m.iter_mut().enumerate() {
                row[r] = if r & mask != 0 {
                    phase
                } else {
                    Complex64::new(1.0, 0.0)
                };
            }
        }
        GateId::Cnot => {
            if ins.a == ins.b {
                return identity(dim);
            }
            let cmask = 1usize << ins.a;
            let tmask = 1usize << ins.b;
            for c in 0..dim {
                let r = if c & cmask != 0 { c ^ tmask } else { c };
                m[r][c] = Complex64::new(1.0, 0.0);
            }
        }
    }
    m
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let dim = a.len();
    let mut out = zero_matrix(dim);
    for r in 0..dim {
        for k in 0..dim {
            let ark = a[r][k];
            if ark.norm_sqr() == 0.0 {
                continue;
            }
            for c in 0..dim {
                out[r][c] += ark * b[k][c];
            }
        }
    }
    out
}

/// Left-to-right matrix product semantics: composes the full matrices of
/// the instructions in emission order and reads off the image of the
/// all-zeros basis state.
pub fn dense_tape_state(instructions: &[GateInstruction], s: usize) -> Vec<Complex64> {
    let mut total = identity(1usize << s);
    for &ins in instructions {
        total = matmul(&instruction_matrix(ins, s), &total);
    }
    total.iter().map(|row| row[0]).collect()
}

/// Random normalized register over `num_qubits` qubits.
pub fn random_register(rng: &mut impl Rng, num_qubits: usize) -> QuantumRegister {
    loop {
        let mut amps: Vec<Complex64> = (0..1usize << num_qubits)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-3 {
            continue;
        }
        for a in &mut amps {
            *a /= norm;
        }
        return QuantumRegister::from_amplitudes(amps).unwrap();
    }
}

pub fn max_amp_diff(a: &QuantumRegister, b: &QuantumRegister) -> f64 {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
