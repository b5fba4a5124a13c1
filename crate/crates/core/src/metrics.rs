//! Static resource analysis: Toffoli count, reaction depth, workspace and the
//! per-layer magic-state timeline.
//!
//! Reaction depth is the longest path through the gate dependency DAG where
//! adaptive gates (CCNOT, AND, AND uncompute) weigh 1 and Clifford gates weigh
//! 0 but still carry dependencies.

use std::fmt::Write as _;

use crate::circuit::{Circuit, Gate, Role, ScopeKind};

/// When two gates in the list must stay ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DependencyModel {
    /// Any two gates sharing a wire are ordered.
    SharedQubit,
    /// Gates are ordered only if they fail to commute: one writes a wire the
    /// other reads. Controls commute with controls, XOR targets commute with
    /// XOR targets. AND gadget targets and both wires of a swap are exclusive.
    #[default]
    Commutation,
}

/// Earliest-start schedule over the weighted DAG. Returns each gate's finish
/// layer (a gate of weight 1 finishing at `k` occupies layer `k - 1`).
pub fn schedule(c: &Circuit, model: DependencyModel) -> Vec<usize> {
    match model {
        DependencyModel::SharedQubit => schedule_shared(c),
        DependencyModel::Commutation => schedule_commuting(c),
    }
}

fn weight(g: &Gate) -> usize {
    g.is_adaptive() as usize
}

fn schedule_shared(c: &Circuit) -> Vec<usize> {
    let mut last = vec![0usize; c.qubit_count()];
    c.gates()
        .iter()
        .map(|g| {
            let start = g.qubits().map(|q| last[q.index()]).max().unwrap_or(0);
            let finish = start + weight(g);
            for q in g.qubits() {
                last[q.index()] = finish;
            }
            finish
        })
        .collect()
}

fn schedule_commuting(c: &Circuit) -> Vec<usize> {
    let n = c.qubit_count();
    // finish of the latest gate that XORed into / read / exclusively used a wire
    let mut written = vec![0usize; n];
    let mut read = vec![0usize; n];
    let mut exclusive = vec![0usize; n];
    let mut out = Vec::with_capacity(c.gates().len());
    for g in c.gates() {
        let (controls, targets, excl): (&[_], &[_], bool) = match g {
            Gate::X(t) => (&[], std::slice::from_ref(t), false),
            Gate::Cnot(a, t) => (std::slice::from_ref(a), std::slice::from_ref(t), false),
            Gate::Ccnot(a, b, t) => (&[*a, *b][..], std::slice::from_ref(t), false),
            Gate::AndInit(a, b, t) | Gate::AndUncompute(a, b, t) => (&[*a, *b][..], std::slice::from_ref(t), true),
            Gate::Swap(a, b) => (&[], &[*a, *b][..], true),
        };
        let mut start = 0;
        for q in controls {
            start = start.max(written[q.index()]).max(exclusive[q.index()]);
        }
        for q in targets {
            start = start.max(read[q.index()]).max(exclusive[q.index()]);
            if excl {
                start = start.max(written[q.index()]);
            }
        }
        let finish = start + weight(g);
        for q in controls {
            read[q.index()] = read[q.index()].max(finish);
        }
        for q in targets {
            let slot = if excl { &mut exclusive } else { &mut written };
            slot[q.index()] = slot[q.index()].max(finish);
        }
        out.push(finish);
    }
    out
}

/// Magic states consumed: CCNOT and AND gates.
pub fn toffoli_count(c: &Circuit) -> usize {
    c.gates().iter().filter(|g| g.consumes_magic_state()).count()
}

pub fn reaction_depth(c: &Circuit) -> usize {
    reaction_depth_with(c, DependencyModel::default())
}

pub fn reaction_depth_with(c: &Circuit, model: DependencyModel) -> usize {
    schedule(c, model).into_iter().max().unwrap_or(0)
}

/// Largest number of simultaneously live ancilla wires.
pub fn workspace(c: &Circuit) -> usize {
    let mut live = 0usize;
    let mut peak = 0usize;
    // events are stored in execution order
    for e in c.scopes() {
        let width = e.qubits.iter().filter(|q| c.role(**q) == Role::Ancilla).count();
        match e.kind {
            ScopeKind::Allocate => {
                live += width;
                peak = peak.max(live);
            }
            ScopeKind::Release => live = live.saturating_sub(width),
        }
    }
    peak
}

/// Magic states consumed in each reaction layer of the earliest-start
/// schedule. Layers holding only AND uncomputes appear as zeros.
pub fn toffoli_timeline(c: &Circuit) -> Vec<usize> {
    toffoli_timeline_with(c, DependencyModel::default())
}

pub fn toffoli_timeline_with(c: &Circuit, model: DependencyModel) -> Vec<usize> {
    let finish = schedule(c, model);
    let mut layers = vec![0usize; finish.iter().copied().max().unwrap_or(0)];
    for (g, f) in c.gates().iter().zip(finish) {
        if g.consumes_magic_state() {
            layers[f - 1] += 1;
        }
    }
    layers
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResourceReport {
    pub toffoli_count: usize,
    pub reaction_depth: usize,
    pub workspace: usize,
    pub timeline: Vec<usize>,
}

impl ResourceReport {
    pub fn measure(c: &Circuit) -> Self {
        Self::measure_with(c, DependencyModel::default())
    }

    pub fn measure_with(c: &Circuit, model: DependencyModel) -> Self {
        let timeline = toffoli_timeline_with(c, model);
        ResourceReport {
            toffoli_count: toffoli_count(c),
            reaction_depth: timeline.len(),
            workspace: workspace(c),
            timeline,
        }
    }

    pub const CSV_HEADER: &'static str = "name,n,b,toffolis,reaction_depth,workspace";

    /// One CSV row; an absent block size is left empty.
    pub fn csv_row(&self, name: &str, n: usize, b: Option<usize>) -> String {
        let b = b.map(|b| b.to_string()).unwrap_or_default();
        format!(
            "{name},{n},{b},{},{},{}",
            self.toffoli_count, self.reaction_depth, self.workspace
        )
    }

    /// `layer,count` CSV with header, layers numbered from 0.
    pub fn timeline_csv(&self) -> String {
        let mut s = String::from("layer,count\n");
        for (i, k) in self.timeline.iter().enumerate() {
            writeln!(s, "{i},{k}").unwrap();
        }
        s
    }
}
