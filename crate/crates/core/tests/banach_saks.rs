//! What the gliding-hump selection actually produces, computed rather than
//! assumed.

use vp_space::{
    extract_gliding_hump, norm_vp, property_bsp_check, verify_bs_bound, ExtractionConfig,
    FiniteSequence, NormalizedBasis, SeparatedSpikes, WeightSequence,
};

#[test]
fn normalized_basis_blocks_are_consecutive() {
    // e_n/‖e_n‖ is supported on {n}, so every head over [1, n−1] and every
    // tail past n is exactly zero and the selection never skips.
    for p in [1.5, 2.0, 3.0] {
        let w = WeightSequence::Identity;
        let fam = NormalizedBasis::new(w.clone(), p);
        let ex = extract_gliding_hump(&fam, &w, p, 32, &ExtractionConfig::default()).unwrap();
        assert!(ex.is_valid());
        assert_eq!(ex.indices(), (1..=32).collect::<Vec<_>>());
        assert_eq!(ex.cuts(), (1..=32).collect::<Vec<_>>());
        assert!(ex
            .steps
            .iter()
            .all(|s| s.head_norm == 0.0 && s.tail_norm == 0.0));
    }
}

#[test]
fn normalized_basis_sums_in_cesaro_spaces_outgrow_the_bound() {
    // Under λ_k = k every window reaches back to index 1, so disjointly
    // supported blocks still share windows and the block sum grows
    // linearly. The bound 2(n+1)^{1/p} eventually fails; the first failing
    // n is recorded here as computed.
    for (p, first_fail) in [(1.5, 13usize), (2.0, 7), (3.0, 5)] {
        let w = WeightSequence::Identity;
        let fam = NormalizedBasis::new(w.clone(), p);
        let report = property_bsp_check(&fam, &w, p, 24, &ExtractionConfig::default()).unwrap();
        let first = report.failures().next().map(|r| r.n);
        assert_eq!(first, Some(first_fail), "p = {p}");
        if p == 2.0 {
            assert!((report.rows[7].lhs - 5.841_124_651_651_731).abs() < 1e-9);
        }
        for r in &report.rows {
            // the triangle-inequality link always holds
            assert!(r.decomposition_holds, "{r:?}");
            assert_eq!(r.pass, r.lhs <= r.rhs + 1e-8 + r.lhs_error);
        }
    }
}

#[test]
fn lhs_equals_the_direct_norm_of_the_block_sum() {
    let w = WeightSequence::Identity;
    let fam = NormalizedBasis::new(w.clone(), 2.0);
    let ex = extract_gliding_hump(&fam, &w, 2.0, 8, &ExtractionConfig::default()).unwrap();
    let b = verify_bs_bound(&ex, &w, 1e-12).unwrap();
    let mut v = vec![0.0; 8];
    for (n, slot) in v.iter_mut().enumerate() {
        let e = FiniteSequence::unit(n + 1);
        *slot = 1.0 / norm_vp(&e, &w, 2.0, 1e-13).unwrap().estimate;
    }
    let direct = norm_vp(&FiniteSequence::new(v).unwrap(), &w, 2.0, 1e-12).unwrap();
    assert!((b.lhs - direct.estimate).abs() < 1e-12);
    assert!((b.lhs - 6.652_425_77).abs() < 1e-8);
    assert!(!b.pass && b.ratio > 1.1);
}

#[test]
fn window_separated_family_meets_the_bound() {
    // λ_k = 1 + (k−1)/8: spikes can be placed so no window holds two of
    // them, and then ρ(Σ b_j) = n exactly.
    let w = WeightSequence::rate(8.0).unwrap();
    for p in [1.5, 2.0, 3.0] {
        let fam = SeparatedSpikes::new(&w, p, 64, 1 << 20).unwrap();
        let report = property_bsp_check(&fam, &w, p, 64, &ExtractionConfig::default()).unwrap();
        assert!(report.all_pass(), "p = {p}");
        for r in &report.rows {
            assert!((r.lhs - (r.n as f64).powf(1.0 / p)).abs() < 1e-9, "{r:?}");
            assert!(r.middle_bound_holds);
        }
    }
}

#[test]
fn zero_family_passes_trivially() {
    let w = WeightSequence::Identity;
    let zero = |_: usize| Some(FiniteSequence::zero(0));
    let report = property_bsp_check(&zero, &w, 2.0, 16, &ExtractionConfig::default()).unwrap();
    assert!(report.all_pass());
    assert!(report.rows.iter().all(|r| r.lhs == 0.0));
}
