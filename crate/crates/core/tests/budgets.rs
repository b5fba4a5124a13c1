//! Resource budgets of the built adders.

use blockadder::adders::{
    build_block_adder, build_in_place_block_adder, build_in_place_ripple_adder, build_ripple_adder,
    build_two_block_adder,
};
use blockadder::costmodel::ceil_sqrt;
use blockadder::metrics::{reaction_depth, reaction_depth_with, toffoli_count, workspace, DependencyModel};

fn lg_ceil(x: f64) -> usize {
    x.log2().ceil().max(0.0) as usize
}

/// Up-sweep and down-sweep node counts of the carry network on `m` signals.
fn network_nodes(m: usize) -> (usize, usize) {
    let (mut up, mut down) = (0, 0);
    let mut s = 1;
    while s < m {
        up += (m - 1) / (2 * s);
        down += (m - 1 - s) / (2 * s) + 1;
        s *= 2;
    }
    (up, down)
}

/// Toffolis, counted block by block: the low block's ripple, both carry
/// cases of every higher block (the top block has no carry-out), the carry
/// network (an AND and a CCNOT per up-sweep node, a CCNOT per down-sweep
/// node), the selection ANDs and one AND per interior carry restore.
fn expected_toffolis(n: usize, b: usize) -> (usize, usize) {
    if b >= n {
        return (n - 1, n - 1);
    }
    let m = n.div_ceil(b);
    let top = n - (m - 1) * b;
    let cases = 2 * ((m - 2) * b + top - 1);
    let (up, down) = network_nodes(m);
    let out = b + cases + 2 * up + down + (n - b) + (m - 2);
    // reversal: CCNOTs stay, uncomputes of the cases and of the up-sweep ANDs
    // become ANDs
    let back = up + down + cases + up;
    (out, out + back)
}

/// Two carry registers, two case registers for the higher blocks, network
/// scratch, plus the in-place work register.
fn expected_workspace(n: usize, b: usize) -> (usize, usize) {
    if b >= n {
        return (0, n);
    }
    let m = n.div_ceil(b);
    let out = 2 * m + 2 * (n - b) + m;
    (out, out + n)
}

#[test]
fn toffoli_and_workspace_match_structure() {
    for n in 1..=64 {
        for b in 1..=n {
            let o = build_block_adder(n, b).unwrap().circuit;
            let i = build_in_place_block_adder(n, b).unwrap().circuit;
            let (t_out, t_in) = expected_toffolis(n, b);
            let (w_out, w_in) = expected_workspace(n, b);
            assert_eq!(toffoli_count(&o), t_out, "out n={n} b={b}");
            assert_eq!(toffoli_count(&i), t_in, "in n={n} b={b}");
            assert_eq!(workspace(&o), w_out, "out n={n} b={b}");
            assert_eq!(workspace(&i), w_in, "in n={n} b={b}");
        }
    }
}

/// (n, b, [toffolis, depth, workspace] out of place, same in place,
/// [out, in] depth under the shared-wire dependency rule).
type Locked = (usize, usize, [usize; 3], [usize; 3], [usize; 2]);

const LOCKED: &[Locked] = &[
    (16, 2, [63, 12, 52], [104, 24, 68], [17, 34]),
    (16, 4, [45, 14, 36], [72, 28, 52], [20, 40]),
    (16, 8, [31, 17, 22], [46, 34, 38], [25, 50]),
    (16, 16, [15, 15, 0], [15, 30, 16], [15, 30]),
    (32, 2, [141, 14, 108], [236, 28, 140], [20, 40]),
    (32, 4, [107, 16, 80], [176, 32, 112], [23, 46]),
    (32, 6, [97, 20, 70], [158, 40, 102], [29, 58]),
    (32, 8, [85, 22, 60], [136, 44, 92], [32, 64]),
    (32, 16, [63, 33, 38], [94, 66, 70], [49, 98]),
    (64, 2, [299, 16, 220], [504, 32, 284], [23, 46]),
    (64, 4, [233, 18, 168], [388, 36, 232], [26, 52]),
    (64, 8, [195, 24, 136], [320, 48, 200], [35, 70]),
    (64, 16, [165, 38, 108], [264, 76, 172], [56, 112]),
    (128, 2, [617, 18, 444], [1044, 36, 572], [26, 52]),
    (128, 4, [487, 20, 344], [816, 40, 472], [29, 58]),
    (128, 8, [417, 26, 288], [692, 52, 416], [38, 76]),
    (128, 12, [393, 34, 265], [649, 68, 393], [50, 100]),
    (128, 16, [371, 40, 248], [608, 80, 376], [59, 118]),
    (256, 2, [1255, 20, 892], [2128, 40, 1148], [29, 58]),
    (256, 4, [997, 22, 696], [1676, 44, 952], [32, 64]),
    (256, 8, [863, 28, 592], [1440, 56, 848], [41, 82]),
    (256, 16, [785, 42, 528], [1300, 84, 784], [62, 124]),
];

fn grid() -> Vec<(usize, usize)> {
    let mut g = Vec::new();
    for n in [16, 32, 64, 128, 256] {
        let mut bs = vec![2, 4, 8, 16, ceil_sqrt(n)];
        bs.sort_unstable();
        bs.dedup();
        g.extend(bs.into_iter().map(|b| (n, b)));
    }
    g
}

#[test]
fn locked_values() {
    assert_eq!(grid(), LOCKED.iter().map(|r| (r.0, r.1)).collect::<Vec<_>>());
    for &(n, b, out, inp, shared) in LOCKED {
        let o = build_block_adder(n, b).unwrap().circuit;
        let i = build_in_place_block_adder(n, b).unwrap().circuit;
        assert_eq!(
            [toffoli_count(&o), reaction_depth(&o), workspace(&o)],
            out,
            "out n={n} b={b}"
        );
        assert_eq!(
            [toffoli_count(&i), reaction_depth(&i), workspace(&i)],
            inp,
            "in n={n} b={b}"
        );
        assert_eq!(
            [
                reaction_depth_with(&o, DependencyModel::SharedQubit),
                reaction_depth_with(&i, DependencyModel::SharedQubit)
            ],
            shared,
            "shared n={n} b={b}"
        );
    }
}

#[test]
fn out_of_place_within_budget() {
    for (n, b) in grid() {
        let m = n.div_ceil(b);
        let c = build_block_adder(n, b).unwrap().circuit;
        assert!(toffoli_count(&c) <= 3 * n - 2 * b + 5 * m + 10, "n={n} b={b}");
        assert!(workspace(&c) <= 2 * n + 3 * m + 10, "n={n} b={b}");
        assert!(
            reaction_depth(&c) <= 3 * b + 2 * lg_ceil(n as f64 / b as f64) + 10,
            "n={n} b={b}"
        );
    }
}

#[test]
fn in_place_toffolis_and_depth_within_budget() {
    for (n, b) in grid() {
        let m = n.div_ceil(b);
        let c = build_in_place_block_adder(n, b).unwrap().circuit;
        assert!(toffoli_count(&c) <= 5 * n - 4 * b + 8 * m + 10, "n={n} b={b}");
        assert!(
            reaction_depth(&c) <= 6 * b + 4 * lg_ceil(n as f64 / b as f64) + 10,
            "n={n} b={b}"
        );
    }
}

#[test]
fn in_place_workspace_adds_the_work_register() {
    for (n, b) in grid() {
        let o = build_block_adder(n, b).unwrap().circuit;
        let i = build_in_place_block_adder(n, b).unwrap().circuit;
        assert_eq!(workspace(&i), workspace(&o) + n);
    }
}

#[test]
fn in_place_is_twice_as_deep() {
    for (n, b) in grid() {
        let o = build_block_adder(n, b).unwrap().circuit;
        let i = build_in_place_block_adder(n, b).unwrap().circuit;
        assert_eq!(reaction_depth(&i), 2 * reaction_depth(&o), "n={n} b={b}");
    }
}

#[test]
fn ripple_counts() {
    for n in [1, 2, 8, 64, 256] {
        let c = build_ripple_adder(n, false).unwrap().circuit;
        assert_eq!(
            (toffoli_count(&c), reaction_depth(&c), workspace(&c)),
            (n - 1, n - 1, 0)
        );
        let c = build_ripple_adder(n, true).unwrap().circuit;
        assert_eq!((toffoli_count(&c), reaction_depth(&c)), (n, n));
        let c = build_in_place_ripple_adder(n).unwrap().circuit;
        // forward chain of ANDs, then the mirrored chain of uncomputes
        assert_eq!(
            (toffoli_count(&c), reaction_depth(&c), workspace(&c)),
            (n - 1, 2 * (n - 1), n)
        );
    }
}

#[test]
fn two_block_counts() {
    for n in [16, 32, 64, 128] {
        let c = build_two_block_adder(n).unwrap().circuit;
        // three ripples (the low one with carry-out), a selection over the
        // high half
        let lo = n.div_ceil(2);
        let hi = n - lo;
        assert_eq!(toffoli_count(&c), lo + 2 * (hi - 1) + hi, "n={n}");
        assert_eq!(workspace(&c), 1 + 2 * hi);
        // case ripples run beside the low ripple, then the selection, then
        // the case uncompute
        assert_eq!(reaction_depth(&c), n + 1, "n={n}");
    }
}

#[test]
fn block_size_tradeoff() {
    for n in [64, 128, 256] {
        let sizes = [4, 8, 16, 32];
        let depth: Vec<usize> = sizes
            .iter()
            .map(|&b| reaction_depth(&build_block_adder(n, b).unwrap().circuit))
            .collect();
        assert!(depth.windows(2).all(|w| w[0] < w[1]), "n={n} {depth:?}");
        let toffolis: Vec<usize> = [2, 4, 8, 16, 32]
            .iter()
            .map(|&b| toffoli_count(&build_block_adder(n, b).unwrap().circuit))
            .collect();
        assert!(toffolis.windows(2).all(|w| w[0] > w[1]), "n={n} {toffolis:?}");
    }
}
