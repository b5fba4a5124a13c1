//! Adder constructions.
//!
//! The `emit_*` functions append gates for one subroutine to an existing
//! circuit, operating on wire slices. The `build_*` functions allocate the
//! registers of a complete adder and return an [`AdderBuild`].
//!
//! The block lookahead adder ripples inside blocks of `b` bits for both
//! possible carry-ins, turns the block carry-outs into generate/propagate
//! signals, resolves the block carries with a parallel-prefix network and
//! then picks each block's sum with a multiplexer. Its in-place version is
//! obtained generically from any out-of-place adder by running it forwards
//! into a scratch register and backwards after a swap.

use crate::circuit::{Circuit, CircuitError, Gate, QubitId, RegisterHandle, Result, Role};

/// A built adder circuit and the registers the caller needs to drive it.
#[derive(Debug, Clone)]
pub struct AdderBuild {
    pub circuit: Circuit,
    pub a: RegisterHandle,
    pub b: RegisterHandle,
    /// Sum register. For in-place builds this is the `b` register itself.
    pub out: RegisterHandle,
    pub block_size: Option<usize>,
}

impl AdderBuild {
    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn is_in_place(&self) -> bool {
        self.out == self.b
    }
}

/// Emits the gates of an out-of-place adder `out := a + b` on given wires.
pub trait OutOfPlaceAdder {
    fn emit(&self, c: &mut Circuit, a: &[QubitId], b: &[QubitId], out: &[QubitId]) -> Result<()>;
}

impl<F> OutOfPlaceAdder for F
where
    F: Fn(&mut Circuit, &[QubitId], &[QubitId], &[QubitId]) -> Result<()>,
{
    fn emit(&self, c: &mut Circuit, a: &[QubitId], b: &[QubitId], out: &[QubitId]) -> Result<()> {
        self(c, a, b, out)
    }
}

/// Block lookahead sum with a fixed block size, usable with [`make_in_place`].
#[derive(Debug, Clone, Copy)]
pub struct BlockSum(pub usize);

impl OutOfPlaceAdder for BlockSum {
    fn emit(&self, c: &mut Circuit, a: &[QubitId], b: &[QubitId], out: &[QubitId]) -> Result<()> {
        emit_block_sum(c, self.0, a, b, out)
    }
}

fn mismatch(what: &str, lens: &[usize]) -> CircuitError {
    CircuitError::WidthMismatch(format!("{what}: {lens:?}"))
}

/// `2*out2 + c_to_s := a + b + c_to_s`, restoring `a` and `b`. `out2` must be 0.
pub fn full_adder_step_gates(a: QubitId, b: QubitId, c_to_s: QubitId, out2: QubitId) -> [Gate; 6] {
    [
        Gate::Cnot(a, b),
        Gate::Cnot(a, c_to_s),
        Gate::AndInit(b, c_to_s, out2),
        Gate::Cnot(a, b),
        Gate::Cnot(a, out2),
        Gate::Cnot(b, c_to_s),
    ]
}

pub fn emit_full_adder_step(c: &mut Circuit, a: QubitId, b: QubitId, c_to_s: QubitId, out2: QubitId) -> Result<()> {
    c.extend(full_adder_step_gates(a, b, c_to_s, out2))
}

/// Ripple-carry `out := a + b + out[0]`.
///
/// `out` has `n` wires (sum mod 2^n) or `n + 1` wires (with carry-out). All of
/// `out` except `out[0]`, the optional carry-in, must start at zero. Uses
/// `|out| - 1` AND computations and no scratch space.
pub fn emit_ripple_sum(c: &mut Circuit, a: &[QubitId], b: &[QubitId], out: &[QubitId]) -> Result<()> {
    let n = a.len();
    if b.len() != n || (out.len() != n && out.len() != n + 1) {
        return Err(mismatch("ripple sum a/b/out", &[n, b.len(), out.len()]));
    }
    for k in 0..out.len().saturating_sub(1) {
        emit_full_adder_step(c, a[k], b[k], out[k], out[k + 1])?;
    }
    if n > 0 && n == out.len() {
        c.append(Gate::Cnot(a[n - 1], out[n - 1]))?;
        c.append(Gate::Cnot(b[n - 1], out[n - 1]))?;
    }
    Ok(())
}

/// `out := control ? option1 : option0`, one AND per bit. `out` must be zero.
pub fn emit_choose(
    c: &mut Circuit,
    control: QubitId,
    option0: &[QubitId],
    option1: &[QubitId],
    out: &[QubitId],
) -> Result<()> {
    if option0.len() != option1.len() || option0.len() != out.len() {
        return Err(mismatch(
            "choose option0/option1/out",
            &[option0.len(), option1.len(), out.len()],
        ));
    }
    for k in 0..option0.len() {
        c.extend([
            Gate::Cnot(option1[k], option0[k]),
            Gate::AndInit(control, option0[k], out[k]),
            Gate::Cnot(option1[k], option0[k]),
            Gate::Cnot(option0[k], out[k]),
        ])?;
    }
    Ok(())
}

/// `[1, 2, 4, ...]` strictly below `n`.
pub fn powers_of_two_below(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = 1;
    while k < n {
        out.push(k);
        k <<= 1;
    }
    out
}

/// Number of times `n` is divisible by two; zero for `n == 0`.
pub fn factors_of_2(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        n.trailing_zeros()
    }
}

// Ranges are half-open intervals of signal positions: range (s, e) covers
// positions s+1..=e. The unit range (i, i+1) is position i+1, whose generate
// bit lives in gens[i+1] and whose propagate bit lives in propagates[i].

fn range_p_storage(ps: &[QubitId], start: isize, end: isize) -> QubitId {
    if end == start + 1 {
        return ps[start as usize];
    }
    ps[((ps.len() as isize + start + end) / 2) as usize]
}

fn range_g_storage(gs: &[QubitId], start: isize, end: isize) -> QubitId {
    if end == start + 1 {
        return gs[end as usize];
    }
    let mut i = ((start + end) / 2) as usize;
    for v in (0..factors_of_2(i)).rev() {
        let m = 1usize << v;
        if i + m < gs.len() {
            i += m;
        }
    }
    gs[i + 1]
}

/// Replaces local generate bits with prefix-combined generate bits, in place.
///
/// With `G[-1] = 0`, afterwards `gens[k] = gens[k] ^ (propagates[k-1] & G[k-1])`
/// for every `k` (for valid carry signals, where a position never both
/// generates and propagates, the xor is an or). `propagates[m-1]` is never
/// read. Runs a Brent-Kung style up-sweep and down-sweep over
/// `m` scratch wires that are returned clean.
pub fn emit_prop_gen(c: &mut Circuit, propagates: &[QubitId], gens: &[QubitId]) -> Result<()> {
    let n = propagates.len();
    if gens.len() != n {
        return Err(mismatch("prop_gen propagates/gens", &[n, gens.len()]));
    }
    c.with_ancillas(n, |c, workspace| {
        let ps: Vec<QubitId> = propagates.iter().chain(workspace.iter()).copied().collect();
        let p = |s: isize, e: isize| range_p_storage(&ps, s, e);
        let g = |s: isize, e: isize| range_g_storage(gens, s, e);
        let n = n as isize;
        let steps: Vec<isize> = powers_of_two_below(n as usize)
            .into_iter()
            .map(|s| s as isize)
            .collect();
        for &step in &steps {
            for i in (0..=n).step_by(2 * step as usize) {
                let (j, k) = (i + step, i + 2 * step);
                if k < n {
                    c.append(Gate::AndInit(p(i, j), p(j, k), p(i, k)))?;
                    c.append(Gate::Ccnot(g(i, j), p(j, k), g(i, k)))?;
                }
            }
        }
        for &step in steps.iter().rev() {
            for i in (0..=n).step_by(2 * step as usize) {
                let (j, k) = (i + step, i + 2 * step);
                if k < n {
                    c.append(Gate::AndUncompute(p(i, j), p(j, k), p(i, k)))?;
                }
                if j < n {
                    c.append(Gate::Ccnot(g(i - 1, i), p(i, j), g(i, j)))?;
                }
            }
        }
        Ok(())
    })
}

/// Block lookahead `out := a + b mod 2^n`. Falls back to a plain ripple sum
/// when the whole register fits in one block. `out` must be zero.
pub fn emit_block_sum(c: &mut Circuit, block_size: usize, a: &[QubitId], b: &[QubitId], out: &[QubitId]) -> Result<()> {
    let n = a.len();
    if b.len() != n || out.len() != n {
        return Err(mismatch("block sum a/b/out", &[n, b.len(), out.len()]));
    }
    if block_size == 0 {
        return Err(CircuitError::InvalidBlockSize { n, block_size });
    }
    if n <= block_size {
        return emit_ripple_sum(c, a, b, out);
    }
    emit_block_sum_helper(c, block_size, a, b, out)
}

fn emit_block_sum_helper(c: &mut Circuit, bs: usize, a: &[QubitId], b: &[QubitId], out: &[QubitId]) -> Result<()> {
    let a_blocks: Vec<&[QubitId]> = a.chunks(bs).collect();
    let b_blocks: Vec<&[QubitId]> = b.chunks(bs).collect();
    let c_blocks: Vec<&[QubitId]> = out.chunks(bs).collect();
    let n = a.len();
    let m = a_blocks.len();

    let carries_0 = c.alloc_ancilla(m);
    let carries_1 = c.alloc_ancilla(m);
    let mux_0 = c.alloc_ancilla(n - bs);
    let mux_1 = c.alloc_ancilla(n - bs);
    let case_blocks_0: Vec<&[QubitId]> = std::iter::once(&[][..]).chain(mux_0.chunks(bs)).collect();
    let case_blocks_1: Vec<&[QubitId]> = std::iter::once(&[][..]).chain(mux_1.chunks(bs)).collect();

    // The low block has a single case, computed alongside the high cases.
    let low_out: Vec<QubitId> = c_blocks[0].iter().copied().chain([carries_0[0]]).collect();
    emit_ripple_sum(c, a_blocks[0], b_blocks[0], &low_out)?;

    c.within_apply(
        |c| {
            for case in &case_blocks_1[1..] {
                c.append(Gate::X(case[0]))?;
            }
            for k in 1..m {
                // the top block has no carry-out
                let with_carry = k != m - 1;
                for (cases, carries) in [(&case_blocks_0, &carries_0), (&case_blocks_1, &carries_1)] {
                    let mut t = cases[k].to_vec();
                    if with_carry {
                        t.push(carries[k]);
                    }
                    emit_ripple_sum(c, a_blocks[k], b_blocks[k], &t)?;
                }
            }
            // carries_0 holds generate bits; turn carries_1 into propagate bits
            for k in 1..m {
                c.append(Gate::Cnot(carries_0[k], carries_1[k]))?;
            }
            Ok(())
        },
        |c| {
            let rotated: Vec<QubitId> = carries_1.qubits()[1..]
                .iter()
                .chain(&carries_1.qubits()[..1])
                .copied()
                .collect();
            emit_prop_gen(c, &rotated, &carries_0)?;

            for k in 1..m {
                emit_choose(c, carries_0[k - 1], case_blocks_0[k], case_blocks_1[k], c_blocks[k])?;
            }

            // A block's carry-in is the xor of its low sum bit and low input bits.
            for k in 1..m {
                c.append(Gate::Cnot(a_blocks[k][0], carries_0[k - 1]))?;
                c.append(Gate::Cnot(b_blocks[k][0], carries_0[k - 1]))?;
                c.append(Gate::Cnot(c_blocks[k][0], carries_0[k - 1]))?;
            }

            // Recompute the local carries from the top bit of each carry-clear case.
            for k in 1..m.saturating_sub(1) {
                let af = *a_blocks[k].last().unwrap();
                let bf = *b_blocks[k].last().unwrap();
                let cf = *case_blocks_0[k].last().unwrap();
                let tf = carries_0[k];
                c.within_apply(
                    |c| c.extend([Gate::X(cf), Gate::Cnot(af, bf), Gate::Cnot(af, cf)]),
                    |c| c.extend([Gate::AndInit(bf, cf, tf), Gate::Cnot(af, tf)]),
                )?;
            }
            Ok(())
        },
    )?;

    for reg in [&mux_1, &mux_0, &carries_1, &carries_0] {
        c.release(reg)?;
    }
    Ok(())
}

/// Two-way carry-select sum: ripple the low half while computing the high
/// half for both carry-ins, then select with the low half's carry-out.
pub fn emit_two_block_sum(c: &mut Circuit, a: &[QubitId], b: &[QubitId], out: &[QubitId]) -> Result<()> {
    let n = a.len();
    if b.len() != n || out.len() != n {
        return Err(mismatch("two-block sum a/b/out", &[n, b.len(), out.len()]));
    }
    if n < 2 {
        return Err(CircuitError::TooSmall(n));
    }
    let lo = n.div_ceil(2);
    let hi = n - lo;
    let (a_lo, a_hi) = a.split_at(lo);
    let (b_lo, b_hi) = b.split_at(lo);
    let (out_lo, out_hi) = out.split_at(lo);

    let carry = c.alloc_ancilla(1);
    let case0 = c.alloc_ancilla(hi);
    let case1 = c.alloc_ancilla(hi);

    let low_out: Vec<QubitId> = out_lo.iter().copied().chain([carry[0]]).collect();
    emit_ripple_sum(c, a_lo, b_lo, &low_out)?;
    c.within_apply(
        |c| {
            c.append(Gate::X(case1[0]))?;
            emit_ripple_sum(c, a_hi, b_hi, &case0)?;
            emit_ripple_sum(c, a_hi, b_hi, &case1)
        },
        |c| {
            emit_choose(c, carry[0], &case0, &case1, out_hi)?;
            c.extend([
                Gate::Cnot(a_hi[0], carry[0]),
                Gate::Cnot(b_hi[0], carry[0]),
                Gate::Cnot(out_hi[0], carry[0]),
            ])
        },
    )?;
    for reg in [&case1, &case0, &carry] {
        c.release(reg)?;
    }
    Ok(())
}

fn alloc_operands(c: &mut Circuit, n: usize, out_width: usize) -> (RegisterHandle, RegisterHandle, RegisterHandle) {
    let a = c.alloc_named("a", n, Role::Input);
    let b = c.alloc_named("b", n, Role::Input);
    let out = c.alloc_named("out", out_width, Role::Output);
    (a, b, out)
}

/// Out-of-place ripple adder; `carry_out` adds an `(n+1)`-th output bit.
pub fn build_ripple_adder(n: usize, carry_out: bool) -> Result<AdderBuild> {
    let mut c = Circuit::new();
    let (a, b, out) = alloc_operands(&mut c, n, n + carry_out as usize);
    emit_ripple_sum(&mut c, &a, &b, &out)?;
    Ok(AdderBuild {
        circuit: c,
        a,
        b,
        out,
        block_size: None,
    })
}

pub fn build_two_block_adder(n: usize) -> Result<AdderBuild> {
    if n < 2 {
        return Err(CircuitError::TooSmall(n));
    }
    let mut c = Circuit::new();
    let (a, b, out) = alloc_operands(&mut c, n, n);
    emit_two_block_sum(&mut c, &a, &b, &out)?;
    Ok(AdderBuild {
        circuit: c,
        a,
        b,
        out,
        block_size: None,
    })
}

pub fn build_block_adder(n: usize, block_size: usize) -> Result<AdderBuild> {
    if n == 0 || block_size == 0 || block_size > n {
        return Err(CircuitError::InvalidBlockSize { n, block_size });
    }
    let mut c = Circuit::new();
    let (a, b, out) = alloc_operands(&mut c, n, n);
    emit_block_sum(&mut c, block_size, &a, &b, &out)?;
    Ok(AdderBuild {
        circuit: c,
        a,
        b,
        out,
        block_size: Some(block_size),
    })
}

/// Turns an out-of-place adder into `b := a + b mod 2^n`.
///
/// Computes `a + b` into an `n`-wire scratch register, swaps it with `b`,
/// complements both, and runs the adder backwards: since `a + ~(a + b) = ~b`,
/// the backwards pass clears the scratch register, and a final complement
/// restores the sum. Swaps and complements are free to track classically.
pub fn make_in_place(n: usize, block_size: Option<usize>, oop: &dyn OutOfPlaceAdder) -> Result<AdderBuild> {
    let mut c = Circuit::new();
    let a = c.alloc_named("a", n, Role::Input);
    let b = c.alloc_named("b", n, Role::Input);
    let work = c.alloc_ancilla(n);
    oop.emit(&mut c, &a, &b, &work)?;
    for k in 0..n {
        c.append(Gate::Swap(b[k], work[k]))?;
    }
    for k in 0..n {
        c.append(Gate::X(b[k]))?;
        c.append(Gate::X(work[k]))?;
    }
    c.adjoint(|c| oop.emit(c, &a, &b, &work))?;
    for k in 0..n {
        c.append(Gate::X(b[k]))?;
    }
    c.release(&work)?;
    Ok(AdderBuild {
        circuit: c,
        out: b.clone(),
        a,
        b,
        block_size,
    })
}

pub fn build_in_place_ripple_adder(n: usize) -> Result<AdderBuild> {
    make_in_place(n, None, &emit_ripple_sum)
}

pub fn build_in_place_block_adder(n: usize, block_size: usize) -> Result<AdderBuild> {
    if n == 0 || block_size == 0 || block_size > n {
        return Err(CircuitError::InvalidBlockSize { n, block_size });
    }
    make_in_place(n, Some(block_size), &BlockSum(block_size))
}

/// The adder constructions exposed by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    Ripple,
    TwoBlock,
    Block(usize),
    InPlaceRipple,
    InPlaceBlock(usize),
}

impl Construction {
    pub fn build(&self, n: usize) -> Result<AdderBuild> {
        match *self {
            Construction::Ripple => build_ripple_adder(n, false),
            Construction::TwoBlock => build_two_block_adder(n),
            Construction::Block(b) => build_block_adder(n, b),
            Construction::InPlaceRipple => build_in_place_ripple_adder(n),
            Construction::InPlaceBlock(b) => build_in_place_block_adder(n, b),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Construction::Ripple => "ripple",
            Construction::TwoBlock => "two-block",
            Construction::Block(_) => "block",
            Construction::InPlaceRipple => "in-place-ripple",
            Construction::InPlaceBlock(_) => "in-place-block",
        }
    }

    pub fn block_size(&self) -> Option<usize> {
        match *self {
            Construction::Block(b) | Construction::InPlaceBlock(b) => Some(b),
            _ => None,
        }
    }
}
