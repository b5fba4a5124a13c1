//! Computational-basis simulation.
//!
//! Every gate in the IR permutes basis states, so a classical bit vector is
//! a complete description of the state. The engine is bit-sliced: each wire
//! holds a `u64` whose 64 bit lanes are 64 independent basis states, which is
//! what the exhaustive sweeps run on. [`BasisState`] is the single-state view.

mod verify;

pub use verify::{
    verify_adder_exhaustive, verify_adder_random, AdderBuilder, Counterexample, VerificationError, VerificationResult,
    MAX_EXHAUSTIVE_BITS,
};

use num_bigint::BigUint;
use thiserror::Error;

use crate::circuit::{Circuit, Gate, QubitId, Role};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("state has {got} bits but the circuit has {expected} qubits")]
    LengthMismatch { expected: usize, got: usize },
    #[error("gate #{gate_index} ({gate}): AND target is not zero")]
    AndInitTargetNonzero { gate_index: usize, gate: Gate, lanes: u64 },
    #[error("gate #{gate_index} ({gate}): AND uncompute target does not match its controls")]
    AndUncomputeInconsistent { gate_index: usize, gate: Gate, lanes: u64 },
    #[error("ancilla qubit {qubit} is dirty at exit")]
    DirtyAncilla { qubit: QubitId, lanes: u64 },
}

impl SimError {
    /// Lanes (bit-sliced cases) that triggered the error.
    pub fn lanes(&self) -> u64 {
        match self {
            SimError::LengthMismatch { .. } => !0,
            SimError::AndInitTargetNonzero { lanes, .. }
            | SimError::AndUncomputeInconsistent { lanes, .. }
            | SimError::DirtyAncilla { lanes, .. } => *lanes,
        }
    }
}

/// How the measurement-based AND gadgets are interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AndSemantics {
    /// Preconditions are checked and violations are errors.
    Strict,
    /// Both AND gadgets act as plain Toffolis, so the circuit is a
    /// permutation of all basis states.
    Toffoli,
}

/// Runs `gates` on bit-sliced wires. Only lanes set in `active` are checked
/// against the AND preconditions.
pub fn run_lanes(gates: &[Gate], words: &mut [u64], active: u64, semantics: AndSemantics) -> Result<(), SimError> {
    let strict = semantics == AndSemantics::Strict;
    for (gate_index, g) in gates.iter().enumerate() {
        match *g {
            Gate::X(t) => words[t.index()] ^= !0,
            Gate::Cnot(c, t) => words[t.index()] ^= words[c.index()],
            Gate::Ccnot(a, b, t) => words[t.index()] ^= words[a.index()] & words[b.index()],
            Gate::AndInit(a, b, t) => {
                let bad = words[t.index()] & active;
                if strict && bad != 0 {
                    return Err(SimError::AndInitTargetNonzero {
                        gate_index,
                        gate: *g,
                        lanes: bad,
                    });
                }
                words[t.index()] ^= words[a.index()] & words[b.index()];
            }
            Gate::AndUncompute(a, b, t) => {
                let and = words[a.index()] & words[b.index()];
                let bad = (words[t.index()] ^ and) & active;
                if strict && bad != 0 {
                    return Err(SimError::AndUncomputeInconsistent {
                        gate_index,
                        gate: *g,
                        lanes: bad,
                    });
                }
                words[t.index()] ^= and;
            }
            Gate::Swap(a, b) => words.swap(a.index(), b.index()),
        }
    }
    Ok(())
}

/// Lanes in which some ancilla wire is nonzero.
pub fn check_ancillas_clean(c: &Circuit, words: &[u64], active: u64) -> Result<(), SimError> {
    for (i, role) in c.roles().iter().enumerate() {
        if *role == Role::Ancilla {
            let dirty = words[i] & active;
            if dirty != 0 {
                return Err(SimError::DirtyAncilla {
                    qubit: QubitId(i as u32),
                    lanes: dirty,
                });
            }
        }
    }
    Ok(())
}

/// One basis state, packed 64 bits per word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisState {
    words: Vec<u64>,
    len: usize,
}

impl BasisState {
    pub fn zeros(len: usize) -> Self {
        BasisState {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn for_circuit(c: &Circuit) -> Self {
        Self::zeros(c.qubit_count())
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut s = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            s.set(QubitId(i as u32), b);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, q: QubitId) -> bool {
        let i = q.index();
        assert!(i < self.len, "qubit {i} out of range");
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, q: QubitId, v: bool) {
        let i = q.index();
        assert!(i < self.len, "qubit {i} out of range");
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(QubitId(i as u32))).collect()
    }

    /// Writes the little-endian value of `v` into `reg`; higher bits are dropped.
    pub fn write_uint(&mut self, reg: &[QubitId], v: &BigUint) {
        for (k, &q) in reg.iter().enumerate() {
            self.set(q, v.bit(k as u64));
        }
    }

    pub fn read_uint(&self, reg: &[QubitId]) -> BigUint {
        let mut v = BigUint::default();
        for (k, &q) in reg.iter().enumerate() {
            if self.get(q) {
                v.set_bit(k as u64, true);
            }
        }
        v
    }

    fn to_lanes(&self) -> Vec<u64> {
        (0..self.len).map(|i| self.get(QubitId(i as u32)) as u64).collect()
    }

    fn from_lanes(words: &[u64]) -> Self {
        let mut s = Self::zeros(words.len());
        for (i, w) in words.iter().enumerate() {
            s.set(QubitId(i as u32), w & 1 == 1);
        }
        s
    }
}

fn check_len(c: &Circuit, s: &BasisState) -> Result<(), SimError> {
    if s.len() != c.qubit_count() {
        return Err(SimError::LengthMismatch {
            expected: c.qubit_count(),
            got: s.len(),
        });
    }
    Ok(())
}

/// Applies the circuit to a basis state with strict AND semantics.
pub fn simulate(c: &Circuit, initial: &BasisState) -> Result<BasisState, SimError> {
    simulate_gates(c, c.gates(), initial, AndSemantics::Strict)
}

/// Like [`simulate`], but for an arbitrary gate list over `c`'s wires.
pub fn simulate_gates(
    c: &Circuit,
    gates: &[Gate],
    initial: &BasisState,
    semantics: AndSemantics,
) -> Result<BasisState, SimError> {
    check_len(c, initial)?;
    let mut words = initial.to_lanes();
    run_lanes(gates, &mut words, 1, semantics)?;
    Ok(BasisState::from_lanes(&words))
}

/// Applies the circuit with every AND gadget treated as a Toffoli. This is
/// a permutation of basis states and never fails.
pub fn simulate_permutation(c: &Circuit, initial: &BasisState) -> BasisState {
    simulate_gates(c, c.gates(), initial, AndSemantics::Toffoli)
        .expect("toffoli semantics cannot fail on a sized state")
}

/// [`simulate`], then require every ancilla wire to end at zero.
pub fn run_and_check_clean(c: &Circuit, initial: &BasisState) -> Result<BasisState, SimError> {
    check_len(c, initial)?;
    let mut words = initial.to_lanes();
    check_ancillas_clean(c, &words, 1)?;
    run_lanes(c.gates(), &mut words, 1, AndSemantics::Strict)?;
    check_ancillas_clean(c, &words, 1)?;
    Ok(BasisState::from_lanes(&words))
}
