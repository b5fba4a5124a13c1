//! Carry-propagation network against brute-force carry chains.

use blockadder::adders::emit_prop_gen;
use blockadder::circuit::{Circuit, QubitId, Role};
use blockadder::metrics::toffoli_count;
use blockadder::sim::{check_ancillas_clean, run_lanes, AndSemantics};

struct Net {
    circuit: Circuit,
    p: Vec<QubitId>,
    g: Vec<QubitId>,
}

fn net(m: usize) -> Net {
    let mut circuit = Circuit::new();
    let p = circuit.alloc_register(m, Role::Input).qubits().to_vec();
    let g = circuit.alloc_register(m, Role::Input).qubits().to_vec();
    emit_prop_gen(&mut circuit, &p, &g).unwrap();
    Net { circuit, p, g }
}

/// Sequential chain: G[0] = g[0], G[k] = g[k] xor (p[k-1] and G[k-1]).
fn xor_chain(p: u32, g: u32, m: usize) -> u32 {
    let mut out = g & 1;
    for k in 1..m {
        let prev = out >> (k - 1) & 1;
        let bit = (g >> k & 1) ^ (p >> (k - 1) & 1 & prev);
        out |= bit << k;
    }
    out
}

/// Textbook carry chain: G[k] = g[k] or (p[k-1] and G[k-1]).
fn or_chain(p: u32, g: u32, m: usize) -> u32 {
    let mut carry = false;
    let mut out = 0;
    for k in 0..m {
        let gk = g >> k & 1 == 1;
        let pk = k > 0 && p >> (k - 1) & 1 == 1;
        carry = gk || (pk && carry);
        out |= (carry as u32) << k;
    }
    out
}

/// Runs the network on up to 64 (p, g) pairs; returns (p, g) after.
fn run(net: &Net, cases: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let active = if cases.len() == 64 {
        !0
    } else {
        (1u64 << cases.len()) - 1
    };
    let mut words = vec![0u64; net.circuit.qubit_count()];
    for (lane, &(p, g)) in cases.iter().enumerate() {
        for (k, q) in net.p.iter().enumerate() {
            words[q.index()] |= ((p >> k & 1) as u64) << lane;
        }
        for (k, q) in net.g.iter().enumerate() {
            words[q.index()] |= ((g >> k & 1) as u64) << lane;
        }
    }
    run_lanes(net.circuit.gates(), &mut words, active, AndSemantics::Strict).unwrap();
    check_ancillas_clean(&net.circuit, &words, active).unwrap();
    let read = |reg: &[QubitId], lane: usize| {
        reg.iter()
            .enumerate()
            .fold(0u32, |acc, (k, q)| acc | ((words[q.index()] >> lane & 1) as u32) << k)
    };
    (0..cases.len()).map(|l| (read(&net.p, l), read(&net.g, l))).collect()
}

fn exhaustive(m: usize, mut check: impl FnMut(u32, u32, u32, u32)) {
    let net = net(m);
    let all: Vec<(u32, u32)> = (0..1u32 << (2 * m)).map(|i| (i >> m, i & ((1 << m) - 1))).collect();
    for chunk in all.chunks(64) {
        for (&(p, g), (p_after, g_after)) in chunk.iter().zip(run(&net, chunk)) {
            check(p, g, p_after, g_after);
        }
    }
}

#[test]
fn matches_xor_chain_for_all_inputs_up_to_m10() {
    for m in 1..=10 {
        exhaustive(m, |p, g, p_after, g_after| {
            assert_eq!(p_after, p, "m={m} propagates changed");
            assert_eq!(g_after, xor_chain(p, g, m), "m={m} p={p:b} g={g:b}");
        });
    }
}

#[test]
fn matches_or_chain_when_signals_are_exclusive() {
    for m in 1..=10 {
        let mut checked = 0u64;
        exhaustive(m, |p, g, _, g_after| {
            // position k propagates via p[k-1]; a carry pair never both
            // generates and propagates
            if (p << 1) & g == 0 {
                checked += 1;
                assert_eq!(g_after, or_chain(p, g, m), "m={m} p={p:b} g={g:b}");
            }
        });
        assert_eq!(checked, 4 * 3u64.pow(m as u32 - 1), "m={m}");
    }
}

/// `.`/`1` strings, most significant position on the left.
fn bits(s: &str) -> u32 {
    s.chars().fold(0, |acc, c| acc << 1 | (c == '1') as u32)
}

#[test]
fn worked_example() {
    let p = bits("...111...1...1.....");
    let g = bits(".....1...1......1..");
    let want = bits("..1111..11......1..");
    let net = net(19);
    let got = run(&net, &[(p, g)]);
    assert_eq!(got, vec![(p, want)]);
    assert_eq!(xor_chain(p, g, 19), want);
    assert_eq!(or_chain(p, g, 19), want);
}

#[test]
fn single_position_is_empty() {
    let n = net(1);
    assert!(n.circuit.gates().is_empty());
    assert_eq!(toffoli_count(&n.circuit), 0);
}

#[test]
fn random_wide_networks() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for m in [11, 17, 24, 31] {
        let net = net(m);
        let mask = (1u32 << m) - 1;
        let cases: Vec<(u32, u32)> = (0..64)
            .map(|_| (rng.gen::<u32>() & mask, rng.gen::<u32>() & mask))
            .collect();
        for (&(p, g), (_, after)) in cases.iter().zip(run(&net, &cases)) {
            assert_eq!(after, xor_chain(p, g, m));
        }
    }
}
