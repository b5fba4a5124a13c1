//! Gate-level IR for classical-reversible circuits.
//!
//! A [`Circuit`] is an append-only list of [`Gate`]s over a set of indexed
//! wires. Wires are handed out in registers ([`RegisterHandle`]) tagged with a
//! [`Role`]. Ancilla registers are scoped: allocating one records an
//! [`ScopeKind::Allocate`] event and releasing it records a matching
//! [`ScopeKind::Release`] event, both positioned relative to the gate list.
//! The workspace analyzer in [`crate::metrics`] reads these events.

use std::fmt;
use std::ops::{Deref, Index};
use std::slice::SliceIndex;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QubitId(pub u32);

impl QubitId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A reversible gate.
///
/// `AndInit` is a Toffoli whose target is promised to hold 0 beforehand.
/// `AndUncompute` is its measurement-based inverse: the target is promised to
/// hold `c1 & c2` and is left at 0, consuming no magic state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    X(QubitId),
    Cnot(QubitId, QubitId),
    Ccnot(QubitId, QubitId, QubitId),
    AndInit(QubitId, QubitId, QubitId),
    AndUncompute(QubitId, QubitId, QubitId),
    Swap(QubitId, QubitId),
}

impl Gate {
    /// All wires touched by the gate, controls first.
    pub fn qubits(&self) -> impl Iterator<Item = QubitId> {
        let (arr, len) = match *self {
            Gate::X(t) => ([t, t, t], 1),
            Gate::Cnot(c, t) | Gate::Swap(c, t) => ([c, t, t], 2),
            Gate::Ccnot(a, b, t) | Gate::AndInit(a, b, t) | Gate::AndUncompute(a, b, t) => ([a, b, t], 3),
        };
        arr.into_iter().take(len)
    }

    /// The wire that is flipped. For `Swap` this is the second wire.
    pub fn target(&self) -> QubitId {
        match *self {
            Gate::X(t)
            | Gate::Cnot(_, t)
            | Gate::Swap(_, t)
            | Gate::Ccnot(_, _, t)
            | Gate::AndInit(_, _, t)
            | Gate::AndUncompute(_, _, t) => t,
        }
    }

    /// Consumes a Toffoli magic state when executed.
    pub fn consumes_magic_state(&self) -> bool {
        matches!(self, Gate::Ccnot(..) | Gate::AndInit(..))
    }

    /// Involves an adaptive measurement (one reaction-time step).
    pub fn is_adaptive(&self) -> bool {
        matches!(self, Gate::Ccnot(..) | Gate::AndInit(..) | Gate::AndUncompute(..))
    }

    pub fn adjoint(&self) -> Gate {
        match *self {
            Gate::AndInit(a, b, t) => Gate::AndUncompute(a, b, t),
            Gate::AndUncompute(a, b, t) => Gate::AndInit(a, b, t),
            g => g,
        }
    }

    pub fn mnemonic(&self) -> &'static str {
        match self {
            Gate::X(_) => "X",
            Gate::Cnot(..) => "CNOT",
            Gate::Ccnot(..) => "CCNOT",
            Gate::AndInit(..) => "AND",
            Gate::AndUncompute(..) => "UNAND",
            Gate::Swap(..) => "SWAP",
        }
    }

    fn has_duplicate(&self) -> bool {
        match *self {
            Gate::X(_) => false,
            Gate::Cnot(a, b) | Gate::Swap(a, b) => a == b,
            Gate::Ccnot(a, b, c) | Gate::AndInit(a, b, c) | Gate::AndUncompute(a, b, c) => a == b || a == c || b == c,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())?;
        for q in self.qubits() {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}

/// Reverses a gate sequence and replaces every gate by its adjoint.
pub fn adjoint_of(gates: &[Gate]) -> Vec<Gate> {
    gates.iter().rev().map(Gate::adjoint).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Input,
    Output,
    Ancilla,
}

/// Little-endian list of wires naming an integer register.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterHandle {
    qubits: Vec<QubitId>,
    role: Role,
}

impl RegisterHandle {
    pub fn new(qubits: Vec<QubitId>, role: Role) -> Self {
        RegisterHandle { qubits, role }
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn qubits(&self) -> &[QubitId] {
        &self.qubits
    }
}

impl Deref for RegisterHandle {
    type Target = [QubitId];

    fn deref(&self) -> &[QubitId] {
        &self.qubits
    }
}

impl<I: SliceIndex<[QubitId]>> Index<I> for RegisterHandle {
    type Output = I::Output;

    fn index(&self, i: I) -> &I::Output {
        &self.qubits[i]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScopeKind {
    Allocate,
    Release,
}

/// Ancilla lifetime boundary. `at` is the number of gates preceding it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScopeEvent {
    pub at: usize,
    pub kind: ScopeKind,
    pub qubits: Vec<QubitId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("gate `{0}` uses the same qubit twice")]
    DuplicateQubit(Gate),
    #[error("gate `{gate}` references qubit {qubit} but only {count} qubits are allocated")]
    UnallocatedQubit { gate: Gate, qubit: QubitId, count: usize },
    #[error("register widths differ: {0}")]
    WidthMismatch(String),
    #[error("qubit {0} is not a live ancilla")]
    NotLiveAncilla(QubitId),
    #[error("invalid block size {block_size} for a {n}-bit register")]
    InvalidBlockSize { n: usize, block_size: usize },
    #[error("register size {0} is below the minimum for this construction")]
    TooSmall(usize),
}

pub type Result<T, E = CircuitError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Circuit {
    roles: Vec<Role>,
    gates: Vec<Gate>,
    registers: Vec<(String, RegisterHandle)>,
    scopes: Vec<ScopeEvent>,
    live: Vec<bool>,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    /// Rebuilds a circuit from a raw gate list, treating every wire as input.
    pub fn from_gates(qubit_count: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Circuit::new();
        c.alloc_register(qubit_count, Role::Input);
        for g in gates {
            c.append(g)?;
        }
        Ok(c)
    }

    pub fn qubit_count(&self) -> usize {
        self.roles.len()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn scopes(&self) -> &[ScopeEvent] {
        &self.scopes
    }

    pub fn role(&self, q: QubitId) -> Role {
        self.roles[q.index()]
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn registers(&self) -> &[(String, RegisterHandle)] {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Option<&RegisterHandle> {
        self.registers.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }

    /// Ancilla wires allocated and not yet released.
    pub fn live_ancillas(&self) -> usize {
        self.live.iter().filter(|&&l| l).count()
    }

    /// Appends `width` fresh wires. Ancilla registers enter the current scope
    /// and must be released with [`Circuit::release`].
    pub fn alloc_register(&mut self, width: usize, role: Role) -> RegisterHandle {
        let start = self.roles.len() as u32;
        let qubits: Vec<QubitId> = (start..start + width as u32).map(QubitId).collect();
        self.roles.extend(std::iter::repeat_n(role, width));
        self.live.extend(std::iter::repeat_n(role == Role::Ancilla, width));
        if role == Role::Ancilla && width > 0 {
            self.scopes.push(ScopeEvent {
                at: self.gates.len(),
                kind: ScopeKind::Allocate,
                qubits: qubits.clone(),
            });
        }
        RegisterHandle::new(qubits, role)
    }

    pub fn alloc_named(&mut self, name: &str, width: usize, role: Role) -> RegisterHandle {
        let reg = self.alloc_register(width, role);
        self.registers.push((name.to_string(), reg.clone()));
        reg
    }

    pub fn alloc_ancilla(&mut self, width: usize) -> RegisterHandle {
        self.alloc_register(width, Role::Ancilla)
    }

    pub fn release(&mut self, reg: &RegisterHandle) -> Result<()> {
        for &q in reg.iter() {
            if !self.live.get(q.index()).copied().unwrap_or(false) {
                return Err(CircuitError::NotLiveAncilla(q));
            }
        }
        for &q in reg.iter() {
            self.live[q.index()] = false;
        }
        if !reg.is_empty() {
            self.scopes.push(ScopeEvent {
                at: self.gates.len(),
                kind: ScopeKind::Release,
                qubits: reg.to_vec(),
            });
        }
        Ok(())
    }

    /// Allocates an ancilla register for the duration of `body`.
    pub fn with_ancillas<T>(
        &mut self,
        width: usize,
        body: impl FnOnce(&mut Circuit, &RegisterHandle) -> Result<T>,
    ) -> Result<T> {
        let reg = self.alloc_ancilla(width);
        let out = body(self, &reg)?;
        self.release(&reg)?;
        Ok(out)
    }

    pub fn validate(&self, g: &Gate) -> Result<()> {
        if g.has_duplicate() {
            return Err(CircuitError::DuplicateQubit(*g));
        }
        let count = self.qubit_count();
        if let Some(q) = g.qubits().find(|q| q.index() >= count) {
            return Err(CircuitError::UnallocatedQubit {
                gate: *g,
                qubit: q,
                count,
            });
        }
        Ok(())
    }

    pub fn append(&mut self, g: Gate) -> Result<()> {
        self.validate(&g)?;
        self.gates.push(g);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        for g in gates {
            self.append(g)?;
        }
        Ok(())
    }

    /// Appends `within`, then `apply`, then the adjoint of `within`.
    pub fn conjugate(&mut self, within: &[Gate], apply: &[Gate]) -> Result<()> {
        for g in within.iter().chain(apply) {
            self.validate(g)?;
        }
        self.gates.extend_from_slice(within);
        self.gates.extend_from_slice(apply);
        self.gates.extend(adjoint_of(within));
        Ok(())
    }

    /// Closure form of [`Circuit::conjugate`]: whatever `within` emits
    /// (including ancilla scopes) is replayed in adjoint form after `apply`.
    pub fn within_apply<T>(
        &mut self,
        within: impl FnOnce(&mut Circuit) -> Result<()>,
        apply: impl FnOnce(&mut Circuit) -> Result<T>,
    ) -> Result<T> {
        let (g0, s0) = (self.gates.len(), self.scopes.len());
        within(self)?;
        let (g1, s1) = (self.gates.len(), self.scopes.len());
        let out = apply(self)?;
        let undo: Vec<Gate> = adjoint_of(&self.gates[g0..g1]);
        let undo_scopes = reversed_scopes(&self.scopes[s0..s1], g0, g1);
        let base = self.gates.len();
        self.gates.extend(undo);
        for mut ev in undo_scopes {
            ev.at = ev.at - g0 + base;
            self.apply_scope_liveness(&ev);
            self.scopes.push(ev);
        }
        Ok(out)
    }

    /// Emits the adjoint of whatever `body` emits. Ancillas allocated by
    /// `body` are fresh wires, so the reversed segment shares no scratch
    /// space with earlier gates.
    pub fn adjoint<T>(&mut self, body: impl FnOnce(&mut Circuit) -> Result<T>) -> Result<T> {
        let (g0, s0) = (self.gates.len(), self.scopes.len());
        let out = body(self)?;
        let g1 = self.gates.len();
        let rev = adjoint_of(&self.gates[g0..g1]);
        self.gates.truncate(g0);
        self.gates.extend(rev);
        let scopes = reversed_scopes(&self.scopes[s0..], g0, g1);
        self.scopes.truncate(s0);
        self.scopes.extend(scopes);
        Ok(out)
    }

    fn apply_scope_liveness(&mut self, ev: &ScopeEvent) {
        let live = ev.kind == ScopeKind::Allocate;
        for q in &ev.qubits {
            self.live[q.index()] = live;
        }
    }
}

/// Mirrors scope events of the gate segment `[start, end)` for its adjoint.
fn reversed_scopes(events: &[ScopeEvent], start: usize, end: usize) -> Vec<ScopeEvent> {
    events
        .iter()
        .rev()
        .map(|ev| ScopeEvent {
            at: start + end - ev.at,
            kind: match ev.kind {
                ScopeKind::Allocate => ScopeKind::Release,
                ScopeKind::Release => ScopeKind::Allocate,
            },
            qubits: ev.qubits.clone(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

impl Circuit {
    /// Line-oriented dump: `qubits N` followed by one `GATE q0 q1 q2` per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("qubits {}\n", self.qubit_count());
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    /// Inverse of [`Circuit::to_text`]. Roles and scopes are not part of the
    /// dump, so every wire of the parsed circuit is an input.
    pub fn parse_text(text: &str) -> Result<Circuit, ParseError> {
        let syntax = |line: usize, msg: &str| ParseError::Syntax {
            line,
            msg: msg.to_string(),
        };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines.next().ok_or_else(|| syntax(1, "missing header"))?;
        let count: usize = header
            .strip_prefix("qubits ")
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| syntax(1, "expected `qubits N`"))?;
        let mut gates = Vec::new();
        for (no, line) in lines {
            let mut parts = line.split(' ');
            let name = parts.next().unwrap_or_default();
            let ids = parts
                .map(|p| p.parse::<u32>().map(QubitId))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| syntax(no, "bad qubit index"))?;
            let gate = match (name, ids.as_slice()) {
                ("X", &[t]) => Gate::X(t),
                ("CNOT", &[c, t]) => Gate::Cnot(c, t),
                ("SWAP", &[a, b]) => Gate::Swap(a, b),
                ("CCNOT", &[a, b, t]) => Gate::Ccnot(a, b, t),
                ("AND", &[a, b, t]) => Gate::AndInit(a, b, t),
                ("UNAND", &[a, b, t]) => Gate::AndUncompute(a, b, t),
                _ => return Err(syntax(no, "unknown gate or wrong arity")),
            };
            gates.push(gate);
        }
        Ok(Circuit::from_gates(count, gates)?)
    }
}
