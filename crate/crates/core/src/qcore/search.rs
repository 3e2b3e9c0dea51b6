//! The structured register used by the streaming search procedure.
//!
//! Layout for parameter k: qubit 0 is the result qubit (the one measured at
//! the end of a run), qubit 1 is the mark qubit, and qubits 2..2k+2 hold a
//! 2k-bit index. A basis state is therefore the integer
//! `(index << 2) | (mark << 1) | result`, which puts the measured qubit first.
//!
//! All operations here are involutions or self-inverse layer products, and
//! every per-bit form commutes with itself across distinct indices, so the
//! string-at-once and bit-at-a-time applications agree. That is what makes
//! them usable while the input is still streaming in.

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::qcore::register::{QuantumRegister, MAX_QUBITS};

/// Largest k for which a 2k+2 register fits under the register cap.
pub const MAX_SEARCH_K: u32 = ((MAX_QUBITS - 2) / 2) as u32;

const MARK: usize = 0b10;

#[derive(Clone, Debug)]
pub struct SearchRegister {
    reg: QuantumRegister,
    k: u32,
}

impl SearchRegister {
    /// A 2k+2 qubit register in the all-zeros state.
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 || k > MAX_SEARCH_K {
            return Err(Error::KOutOfRange {
                k,
                cap: MAX_SEARCH_K,
            });
        }
        let reg = QuantumRegister::new(2 * k as usize + 2)?;
        Ok(SearchRegister { reg, k })
    }

    /// Adopts an existing register, checking it has the 2k+2 shape.
    pub fn from_register(reg: QuantumRegister, k: u32) -> Result<Self> {
        let expected = 2 * k as usize + 2;
        if reg.num_qubits() != expected {
            return Err(Error::RegisterShape {
                expected,
                found: reg.num_qubits(),
            });
        }
        if k == 0 || k > MAX_SEARCH_K {
            return Err(Error::KOutOfRange {
                k,
                cap: MAX_SEARCH_K,
            });
        }
        Ok(SearchRegister { reg, k })
    }

    pub fn into_register(self) -> QuantumRegister {
        self.reg
    }

    pub fn register(&self) -> &QuantumRegister {
        &self.reg
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn num_qubits(&self) -> usize {
        2 * self.k as usize + 2
    }

    /// Number of index values, 2^{2k}; bit strings fed to the marked
    /// operations must have exactly this length.
    pub fn index_len(&self) -> u64 {
        1u64 << (2 * self.k)
    }

    fn check_bits(&self, bits: &BitString) -> Result<()> {
        if bits.len() as u64 != self.index_len() {
            return Err(Error::BitLength {
                expected: self.index_len(),
                found: bits.len() as u64,
            });
        }
        Ok(())
    }

    /// Hadamard on every index qubit; mark and result untouched. Applied to
    /// the all-zeros state this prepares the uniform index superposition.
    pub fn hadamard_index(&mut self) {
        for q in 2..self.num_qubits() {
            self.reg
                .apply_hadamard(q)
                .expect("index qubit within register");
        }
    }

    /// Negates the amplitude of every basis state whose index part is
    /// nonzero. Together with [`hadamard_index`] on both sides this is the
    /// reflection about the uniform index superposition.
    pub fn negate_nonzero_index(&mut self) {
        let len = self.index_len() as usize;
        for i in 1..len {
            for low in 0..4 {
                self.reg.negate((i << 2) | low);
            }
        }
    }

    /// One diffusion layer: Hadamards, nonzero-index negation, Hadamards.
    pub fn diffuse(&mut self) {
        self.hadamard_index();
        self.negate_nonzero_index();
        self.hadamard_index();
    }

    /// XORs the mark qubit with bit `i` of the streamed string: where the
    /// bit is 1, the mark-0 and mark-1 amplitudes at index `i` swap.
    pub fn mark_xor_bit(&mut self, i: u64, bit: bool) {
        debug_assert!(i < self.index_len());
        if bit {
            let base = (i as usize) << 2;
            self.reg.swap_amplitudes(base, base | MARK);
            self.reg.swap_amplitudes(base | 1, base | MARK | 1);
        }
    }

    pub fn mark_xor(&mut self, bits: &BitString) -> Result<()> {
        self.check_bits(bits)?;
        for (i, bit) in bits.iter().enumerate() {
            self.mark_xor_bit(i as u64, bit);
        }
        Ok(())
    }

    /// Phase flip on basis states whose mark qubit is 1 at indices where the
    /// streamed bit is 1.
    pub fn marked_phase_flip_bit(&mut self, i: u64, bit: bool) {
        debug_assert!(i < self.index_len());
        if bit {
            let base = ((i as usize) << 2) | MARK;
            self.reg.negate(base);
            self.reg.negate(base | 1);
        }
    }

    pub fn marked_phase_flip(&mut self, bits: &BitString) -> Result<()> {
        self.check_bits(bits)?;
        for (i, bit) in bits.iter().enumerate() {
            self.marked_phase_flip_bit(i as u64, bit);
        }
        Ok(())
    }

    /// Flips the result qubit where the mark qubit is 1 and the streamed bit
    /// is 1, i.e. XORs `mark AND bit_i` into the result.
    pub fn result_xor_marked_bit(&mut self, i: u64, bit: bool) {
        debug_assert!(i < self.index_len());
        if bit {
            let base = ((i as usize) << 2) | MARK;
            self.reg.swap_amplitudes(base, base | 1);
        }
    }

    pub fn result_xor_marked(&mut self, bits: &BitString) -> Result<()> {
        self.check_bits(bits)?;
        for (i, bit) in bits.iter().enumerate() {
            self.result_xor_marked_bit(i as u64, bit);
        }
        Ok(())
    }

    /// Exact probability that measuring the result qubit yields 1.
    pub fn result_one_probability(&self) -> f64 {
        self.reg
            .measure_one_probability(0)
            .expect("result qubit always present")
    }
}
