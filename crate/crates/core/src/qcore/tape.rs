//! Gate tapes: the textual circuit format `a1#b1#c1#...#ar#br#cr` emitted by
//! a classical one-pass controller and replayed against a fresh register.
//!
//! Gate ids: 0 = H, 1 = T, 2 = CNOT with `a` the control and `b` the target.
//! Single-qubit gates act on qubit `a` and ignore `b`. A CNOT with `a == b`
//! denotes the identity; that is the only instruction the executor skips.

use crate::error::{Error, Result};
use crate::qcore::register::QuantumRegister;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateId {
    Hadamard = 0,
    T = 1,
    Cnot = 2,
}

impl GateId {
    pub fn from_code(code: u64) -> Result<GateId> {
        match code {
            0 => Ok(GateId::Hadamard),
            1 => Ok(GateId::T),
            2 => Ok(GateId::Cnot),
            other => Err(Error::InvalidGateId { found: other }),
        }
    }

    pub fn code(self) -> u64 {
        self as u64
    }
}

/// One tape entry: qubit operands `a`, `b` and a gate id.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GateInstruction {
    pub a: usize,
    pub b: usize,
    pub gate: GateId,
}

impl GateInstruction {
    pub fn new(a: usize, b: usize, gate: GateId) -> Self {
        GateInstruction { a, b, gate }
    }
}

impl QuantumRegister {
    /// Applies one tape instruction in place.
    pub fn apply_instruction(&mut self, ins: GateInstruction) -> Result<()> {
        if ins.a >= self.num_qubits() {
            return Err(Error::QubitOutOfRange {
                index: ins.a,
                num_qubits: self.num_qubits(),
            });
        }
        if ins.b >= self.num_qubits() {
            return Err(Error::QubitOutOfRange {
                index: ins.b,
                num_qubits: self.num_qubits(),
            });
        }
        match ins.gate {
            GateId::Hadamard => self.apply_hadamard(ins.a),
            GateId::T => self.apply_t(ins.a),
            GateId::Cnot => {
                if ins.a == ins.b {
                    Ok(()) // identity by convention
                } else {
                    self.apply_cnot(ins.a, ins.b)
                }
            }
        }
    }
}

/// An ordered instruction list targeting a declared register width.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateTape {
    instructions: Vec<GateInstruction>,
    declared_space: usize,
}

impl GateTape {
    pub fn new(instructions: Vec<GateInstruction>, declared_space: usize) -> Result<Self> {
        if declared_space == 0 {
            return Err(Error::RegisterTooLarge {
                requested: 0,
                cap: crate::qcore::register::MAX_QUBITS,
            });
        }
        // the step budget 2^s bounds how long an emitted tape can be
        if declared_space < 64 && instructions.len() as u64 > 1u64 << declared_space {
            return Err(Error::TapeTooLong {
                len: instructions.len(),
                space: declared_space,
            });
        }
        for ins in &instructions {
            for index in [ins.a, ins.b] {
                if index >= declared_space {
                    return Err(Error::TapeIndexOutOfRange {
                        index,
                        space: declared_space,
                    });
                }
            }
        }
        Ok(GateTape {
            instructions,
            declared_space,
        })
    }

    /// Parses the wire format: decimal integers separated by `#`, three per
    /// instruction, no whitespace and no trailing separator. The empty
    /// string is the empty tape.
    pub fn parse(text: &str, declared_space: usize) -> Result<Self> {
        if text.is_empty() {
            return GateTape::new(Vec::new(), declared_space);
        }
        let fields: Vec<&str> = text.split('#').collect();
        if !fields.len().is_multiple_of(3) {
            return Err(Error::TapeSyntax {
                reason: format!("{} fields, not a multiple of three", fields.len()),
            });
        }
        let mut instructions = Vec::with_capacity(fields.len() / 3);
        for triple in fields.chunks(3) {
            let mut nums = [0u64; 3];
            for (slot, field) in nums.iter_mut().zip(triple) {
                *slot = field.parse().map_err(|_| Error::TapeSyntax {
                    reason: format!("bad integer field {field:?}"),
                })?;
            }
            let gate = GateId::from_code(nums[2])?;
            instructions.push(GateInstruction::new(
                nums[0] as usize,
                nums[1] as usize,
                gate,
            ));
        }
        GateTape::new(instructions, declared_space)
    }

    pub fn to_text(&self) -> String {
        self.instructions
            .iter()
            .map(|ins| format!("{}#{}#{}", ins.a, ins.b, ins.gate.code()))
            .collect::<Vec<_>>()
            .join("#")
    }

    pub fn instructions(&self) -> &[GateInstruction] {
        &self.instructions
    }

    pub fn declared_space(&self) -> usize {
        self.declared_space
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    /// Runs the tape against a fresh all-zeros register, applying the
    /// instructions in emission order.
    pub fn run(&self) -> Result<QuantumRegister> {
        let mut reg = QuantumRegister::new(self.declared_space)?;
        for ins in &self.instructions {
            reg.apply_instruction(*ins)?;
        }
        Ok(reg)
    }
}
