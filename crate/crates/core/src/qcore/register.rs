//! Dense complex state-vector register.
//!
//! Basis states are integers whose bit `q` is the value of qubit `q`, so
//! qubit 0 is the least significant bit of the basis index.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};

/// Hard cap on register width; 2^30 amplitudes is already past desk scale.
pub const MAX_QUBITS: usize = 30;

/// Tolerance for norm and unitarity assertions throughout the crate.
pub const NORM_TOLERANCE: f64 = 1e-12;

#[derive(Clone, PartialEq)]
pub struct QuantumRegister {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl QuantumRegister {
    /// A fresh register in the all-zeros basis state.
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::RegisterTooLarge {
                requested: num_qubits,
                cap: MAX_QUBITS,
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << num_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(QuantumRegister { num_qubits, amps })
    }

    /// Wraps an explicit amplitude vector. The length must be a power of two
    /// within the cap and the vector must be normalized.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::BadAmplitudeCount { len });
        }
        let num_qubits = len.trailing_zeros() as usize;
        if num_qubits > MAX_QUBITS {
            return Err(Error::RegisterTooLarge {
                requested: num_qubits,
                cap: MAX_QUBITS,
            });
        }
        let reg = QuantumRegister { num_qubits, amps };
        let norm = reg.norm();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::NotNormalized { norm });
        }
        Ok(reg)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, basis: usize) -> Complex64 {
        self.amps[basis]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q < self.num_qubits {
            Ok(())
        } else {
            Err(Error::QubitOutOfRange {
                index: q,
                num_qubits: self.num_qubits,
            })
        }
    }

    pub fn apply_hadamard(&mut self, q: usize) -> Result<()> {
        self.check_qubit(q)?;
        let stride = 1usize << q;
        let mut base = 0;
        while base < self.amps.len() {
            for i0 in base..base + stride {
                let i1 = i0 | stride;
                let a = self.amps[i0];
                let b = self.amps[i1];
                self.amps[i0] = (a + b) * FRAC_1_SQRT_2;
                self.amps[i1] = (a - b) * FRAC_1_SQRT_2;
            }
            base += stride << 1;
        }
        Ok(())
    }

    /// The pi/8 gate: diag(1, e^{i pi/4}).
    pub fn apply_t(&mut self, q: usize) -> Result<()> {
        self.check_qubit(q)?;
        let phase = Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
        let mask = 1usize << q;
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & mask != 0 {
                *amp *= phase;
            }
        }
        Ok(())
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        if control == target {
            return Err(Error::CnotSameQubit { qubit: control });
        }
        let cmask = 1usize << control;
        let tmask = 1usize << target;
        for i in 0..self.amps.len() {
            if i & cmask != 0 && i & tmask == 0 {
                self.amps.swap(i, i | tmask);
            }
        }
        Ok(())
    }

    /// Exact probability that measuring qubit `q` in the computational basis
    /// yields 1. Pure: the register is unchanged.
    pub fn measure_one_probability(&self, q: usize) -> Result<f64> {
        self.check_qubit(q)?;
        let mask = 1usize << q;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    pub(crate) fn negate(&mut self, basis: usize) {
        self.amps[basis] = -self.amps[basis];
    }

    pub(crate) fn swap_amplitudes(&mut self, i: usize, j: usize) {
        self.amps.swap(i, j);
    }
}

impl std::fmt::Debug for QuantumRegister {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "QuantumRegister({} qubits)", self.num_qubits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs_diff(a: &QuantumRegister, b: &QuantumRegister) -> f64 {
        a.amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn new_register_is_all_zeros_state() {
        let r = QuantumRegister::new(1).unwrap();
        assert_eq!(r.amplitude(0), Complex64::new(1.0, 0.0));
        assert_eq!(r.amplitude(1), Complex64::new(0.0, 0.0));

        let r = QuantumRegister::new(3).unwrap();
        assert_eq!(r.amplitude(0), Complex64::new(1.0, 0.0));
        assert!(r.amplitudes()[1..].iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn register_cap_is_enforced() {
        assert!(matches!(
            QuantumRegister::new(31),
            Err(Error::RegisterTooLarge {
                requested: 31,
                cap: 30
            })
        ));
        assert!(QuantumRegister::new(0).is_err());
    }

    #[test]
    fn hadamard_twice_is_identity() {
        let mut r = QuantumRegister::new(2).unwrap();
        r.apply_hadamard(0).unwrap();
        r.apply_cnot(0, 1).unwrap();
        let before = r.clone();
        r.apply_hadamard(1).unwrap();
        r.apply_hadamard(1).unwrap();
        assert!(max_abs_diff(&r, &before) < NORM_TOLERANCE);
    }

    #[test]
    fn t_eighth_power_is_identity() {
        let mut r = QuantumRegister::new(1).unwrap();
        // move to |1> via an H-sandwich-free route: swap amplitudes directly
        r.swap_amplitudes(0, 1);
        let before = r.clone();
        for _ in 0..8 {
            r.apply_t(0).unwrap();
        }
        assert!(max_abs_diff(&r, &before) < NORM_TOLERANCE);
    }

    #[test]
    fn cnot_truth_table() {
        // |10> with qubit 0 = 1 is basis index 1; target qubit 1 flips to 1.
        let mut r = QuantumRegister::new(2).unwrap();
        r.swap_amplitudes(0, 1);
        r.apply_cnot(0, 1).unwrap();
        assert_eq!(r.amplitude(0b11), Complex64::new(1.0, 0.0));
        assert_eq!(r.norm(), 1.0);
    }

    #[test]
    fn cnot_rejects_equal_control_and_target() {
        let mut r = QuantumRegister::new(2).unwrap();
        assert!(matches!(
            r.apply_cnot(1, 1),
            Err(Error::CnotSameQubit { qubit: 1 })
        ));
    }

    #[test]
    fn measurement_probabilities() {
        let r = QuantumRegister::new(1).unwrap();
        assert_eq!(r.measure_one_probability(0).unwrap(), 0.0);

        let mut r = QuantumRegister::new(1).unwrap();
        r.apply_hadamard(0).unwrap();
        assert!((r.measure_one_probability(0).unwrap() - 0.5).abs() < NORM_TOLERANCE);

        // Bell pair: marginal of either qubit is 1/2
        let mut r = QuantumRegister::new(2).unwrap();
        r.apply_hadamard(0).unwrap();
        r.apply_cnot(0, 1).unwrap();
        assert!((r.measure_one_probability(1).unwrap() - 0.5).abs() < NORM_TOLERANCE);
    }

    #[test]
    fn out_of_range_qubits_error() {
        let mut r = QuantumRegister::new(2).unwrap();
        assert!(r.apply_hadamard(2).is_err());
        assert!(r.measure_one_probability(5).is_err());
    }

    #[test]
    fn registers_move_between_threads() {
        // distinct registers may be driven in parallel with no shared state
        let handles: Vec<_> = (0..4)
            .map(|q| {
                std::thread::spawn(move || {
                    let mut reg = QuantumRegister::new(3).unwrap();
                    reg.apply_hadamard(q % 3).unwrap();
                    reg.measure_one_probability(q % 3).unwrap()
                })
            })
            .collect();
        for h in handles {
            assert!((h.join().unwrap() - 0.5).abs() < NORM_TOLERANCE);
        }
    }

    #[test]
    fn from_amplitudes_validates_shape_and_norm() {
        let half = Complex64::new(0.5, 0.0);
        assert!(QuantumRegister::from_amplitudes(vec![half; 4]).is_ok());
        assert!(QuantumRegister::from_amplitudes(vec![half; 3]).is_err());
        assert!(QuantumRegister::from_amplitudes(vec![half; 8]).is_err());
    }
}
