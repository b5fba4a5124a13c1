use blockadder::costmodel::{
    best_adder, kind_volume, sweep_curve, sweep_heatmap, table1_costs, AdderKind, BlockSearch, Place, VolumeParams,
    CURVE_HEADER, HEATMAP_HEADER,
};

type P = VolumeParams<f64>;

fn within_factor(x: f64, want: f64, factor: f64) -> bool {
    x <= want * factor && x >= want / factor
}

#[test]
fn published_examples() {
    let v = kind_volume(AdderKind::Cuccaro, 100, None, &P::default_preset(10))
        .unwrap()
        .1
        .volume;
    assert!(within_factor(v, 3.0, 2.0), "{v}");
    let v = kind_volume(AdderKind::GidneyOut, 1000, None, &P::default_preset(100))
        .unwrap()
        .1
        .volume;
    assert!(within_factor(v, 41.0, 2.0), "{v}");
}

#[test]
fn storage_only_volume() {
    // T = 0: duration is the reaction-limited D * rt and only data is stored
    let p = P::default_preset(3);
    let e = blockadder::costmodel::estimate_volume(0.0, 40.0, 0.0, 100.0, &p).unwrap();
    assert!((e.volume - 100.0 * 40.0 * 10e-6).abs() < 1e-12);
}

#[test]
fn block_adder_beats_other_lookahead_designs_at_scale() {
    let p = P::default_preset(1000);
    for place in [Place::In, Place::Out] {
        let best_block = AdderKind::of_place(place)
            .filter(|k| k.is_block())
            .map(|k| {
                blockadder::costmodel::optimize_kind(k, 10000, &p, BlockSearch::Bounded)
                    .unwrap()
                    .estimate
                    .volume
            })
            .fold(f64::INFINITY, f64::min);
        for k in AdderKind::of_place(place).filter(|k| !k.is_ripple() && !k.is_block()) {
            let v = kind_volume(k, 10000, None, &p).unwrap().1.volume;
            assert!(best_block < v, "{k}: {v} vs block {best_block}");
        }
    }
}

#[test]
fn curve_uses_a_tenth_of_n_factories() {
    let rows = sweep_curve(
        &[1000, 100],
        &P::default_preset(1),
        &AdderKind::ALL,
        BlockSearch::Bounded,
    )
    .unwrap();
    assert_eq!(rows.len(), 28);
    assert_eq!(rows[0].n, 100);
    assert_eq!(rows[0].choice.kind, AdderKind::Cuccaro);
    let ripple = rows
        .iter()
        .find(|r| r.n == 1000 && r.choice.kind == AdderKind::GidneyOut)
        .unwrap();
    let direct = kind_volume(AdderKind::GidneyOut, 1000, None, &P::default_preset(100))
        .unwrap()
        .1;
    assert_eq!(ripple.choice.estimate, direct);
    assert_eq!(CURVE_HEADER.split(',').count(), rows[0].csv().split(',').count());
}

#[test]
fn heatmap_schema() {
    let cells = sweep_heatmap(&[100], &[10], Place::Out, &P::default_preset(1), BlockSearch::Bounded).unwrap();
    assert_eq!(HEATMAP_HEADER.split(',').count(), cells[0].csv().split(',').count());
    assert_eq!(
        cells[0].winner,
        best_adder(100, &P::default_preset(10), Place::Out, BlockSearch::Bounded).unwrap()
    );
}

#[test]
fn full_block_search_is_never_worse() {
    for (n, f) in [(100, 10), (1000, 100), (10000, 1000)] {
        let p = P::default_preset(f);
        for k in [AdderKind::BlockBIn, AdderKind::BlockBOut] {
            let bounded = blockadder::costmodel::optimize_kind(k, n, &p, BlockSearch::Bounded).unwrap();
            let full = blockadder::costmodel::optimize_kind(k, n, &p, BlockSearch::Full).unwrap();
            assert!(full.estimate.volume <= bounded.estimate.volume);
        }
    }
}

#[test]
fn block_sqrt_matches_block_b_at_sqrt() {
    let a = table1_costs::<f64>(AdderKind::BlockSqrtOut, 1000, None).unwrap();
    let b = table1_costs::<f64>(AdderKind::BlockBOut, 1000, Some(32)).unwrap();
    assert_eq!(a, b);
}
