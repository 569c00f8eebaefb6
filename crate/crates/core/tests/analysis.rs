use num_complex::Complex64;
use num_traits::ToPrimitive;
use pentaverify_core::asymptotics::*;
use pentaverify_core::truncated::mk;
use pentaverify_core::{Family, SeqTable, TruncatedFamily};

#[test]
fn bessel_paths_agree() {
    for x in [1.0, 5.0, 20.0, 50.0] {
        for order in [-2.5, -1.5, -0.5, 0.5, 1.5] {
            let closed = bessel_i_half_integer(order, x).unwrap();
            let series = bessel_i_series(order, x).unwrap();
            let rel = ((closed - series) / closed).abs();
            assert!(rel < 1e-12, "order {order}, x {x}: {rel:e}");
        }
    }
}

#[test]
fn bessel_leading_asymptotic() {
    let approach = |x: f64| bessel_i(-2.5, x).unwrap() * (2.0 * std::f64::consts::PI * x).sqrt() * (-x).exp();
    assert!((approach(400.0) - 1.0).abs() < (approach(50.0) - 1.0).abs());
    assert!((approach(400.0) - 1.0).abs() < 0.01);
}

#[test]
fn wright_tracks_bessel() {
    let opts = QuadOptions::with_tol(1e-22);
    let defects: Vec<f64> = [5.0, 10.0, 20.0]
        .iter()
        .map(|&u| wright_bessel_defect(1.5, u, arc_constant(), &opts).unwrap().abs())
        .collect();
    assert!(defects.iter().all(|d| *d < 10.0 * defects[0]), "{defects:?}");

    let est = wright_p(1.5, 20.0, arc_constant(), 1e-12).unwrap();
    assert!(est.value.im.abs() < 1e-10 * est.value.re);
    let ratio = est.value.re / bessel_i(-2.5, 40.0).unwrap();
    assert!((ratio - 1.0).abs() < 1e-6);
}

#[test]
fn mgf_matches_exact_partial_sums() {
    let table = SeqTable::build(Family::P, 200);
    for k in 1..=3u64 {
        let q = Complex64::new(0.3, 0.0);
        let partial: f64 = (0..=200)
            .map(|n| mk(n, k as usize, &table).unwrap().to_f64().unwrap() * 0.3f64.powi(n as i32))
            .sum();
        let v = mgf_eval_q(q, k, DEFAULT_PROD_TOL).unwrap();
        assert!((v.re - partial).abs() < 1e-12 * partial.abs().max(1.0), "k {k}");
        assert!(v.im.abs() < 1e-15);
    }
}

#[test]
fn circle_rounds_on_a_sample() {
    let table = SeqTable::build(Family::P, 80);
    for (n, k) in [(1, 1), (13, 2), (37, 3), (64, 1), (80, 2)] {
        let r = circle_method_mk(&ContourSpec::new(n, k).unwrap(), &QuadOptions::with_tol(1e-12)).unwrap();
        let exact = mk(n as usize, k as usize, &table).unwrap().to_f64().unwrap();
        assert!((r.value - exact).abs() < 0.5, "n {n} k {k}: {} vs {exact}", r.value);
        assert!(r.imag_ok());
    }
}

#[test]
fn ratios_settle_in_regime() {
    let table = SeqTable::build(Family::P, 6400);
    let rows = ratio_table(TruncatedFamily::Mk, &[100, 400, 1600, 6400], &[1], &table).unwrap();
    assert!(is_converging(&rows));
    assert!(rows.iter().all(|r| r.in_regime));
    assert!(rows[3].rel_dev.unwrap().abs() < 0.05);
}

#[test]
fn lemma_defects_stay_bounded() {
    let mut near = Vec::new();
    let mut away = Vec::new();
    for n in [400, 1600] {
        near.push(lemma_near1_check(n, 1, NEAR_SAMPLES).unwrap().normalized);
        let a = lemma_away1_check(n, 1, AWAY_SAMPLES_PER_SIDE).unwrap();
        assert!(a.numerator_bound_holds());
        away.push(a.normalized);
    }
    assert!(near[1] <= 3.0 * near[0]);
    assert!(away[1] <= 3.0 * away[0]);
    assert!(lemma_near1_check(400, 5, NEAR_SAMPLES).is_err());
}
