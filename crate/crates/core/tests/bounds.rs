mod common;

use zassenhaus_core::convergence::{
    adaptive_simpson, bayen_lhs, bayen_rhs, d1, triangle_norm_bound,
};
use zassenhaus_core::{
    bayen_radius, converges, domain_boundary, suzuki_radius, zassenhaus_series, BoundTable,
};

fn assert_ln_close(ours: f64, exact: f64, rel: f64, what: &str) {
    // |ours/exact - 1| = |expm1(ln ours - ln exact)|
    let err = (ours - exact).exp_m1().abs();
    assert!(err <= rel, "{what}: relative error {err:e}");
}

#[test]
fn d1_matches_exact_rational_evaluation() {
    for (x, y) in [(0.3, 0.3), (1.0, 1.0), (0.01, 2.5)] {
        let (ex, ey) = (common::exact(x), common::exact(y));
        for k in 1..=500 {
            let exact = common::d1_exact(k, &ex, &ey);
            let ours = d1(k, x, y).unwrap().ln();
            assert_ln_close(
                ours,
                common::ln_rational(&exact),
                1e-10,
                &format!("d1({k}) at ({x},{y})"),
            );
        }
    }
}

#[test]
fn table_matches_exact_recursion() {
    for (x, y) in [(0.3, 0.3), (1.0, 1.0), (0.01, 2.5), (2.0, 0.125)] {
        let oracle = common::ExactBounds::new(x, y);
        let table = BoundTable::build(x, y, 30).unwrap();
        for n in 2..=30 {
            let ours = table.delta(n).unwrap().ln();
            let exact = common::ln_rational(&oracle.delta(n));
            assert_ln_close(ours, exact, 1e-11, &format!("delta_{n} at ({x},{y})"));
        }
        for n in 1..=14 {
            for k in n..30 {
                let ours = table.d(n, k).unwrap().ln();
                let exact = common::ln_rational(&oracle.d(n, k));
                assert_ln_close(ours, exact, 1e-11, &format!("d_{{{n},{k}}} at ({x},{y})"));
            }
        }
    }
}

#[test]
fn hand_unrolled_values() {
    let t = BoundTable::build(1.0, 1.0, 10).unwrap();
    assert!((t.delta(2).unwrap().value() - 1.0).abs() < 1e-15);
    assert!((t.delta(3).unwrap().value() - 2.0).abs() < 1e-14);
    let d14 = d1(4, 1.0, 1.0).unwrap().value();
    let d12 = d1(2, 1.0, 1.0).unwrap().value();
    let want = d14 + 2.0 * 1.0 * d12;
    assert!((t.d(2, 4).unwrap().value() - want).abs() < 1e-13 * want);
    assert_eq!(t.d(2, 2).unwrap(), t.d(1, 2).unwrap());
    let oracle = common::ExactBounds::new(1.0, 1.0);
    assert_eq!(oracle.delta(3), common::exact(2.0));
}

#[test]
fn zero_norm_propagates() {
    let t = BoundTable::build(3.0, 0.0, 40).unwrap();
    for n in 2..=40 {
        assert!(t.delta(n).unwrap().is_zero());
    }
    assert!(t.d(3, 20).unwrap().is_zero());
    let v = converges(0.0, 0.0, 1000).unwrap();
    assert!(v.convergent);
    assert_eq!(v.final_ratio, 0.0);
}

#[test]
fn bounds_dominate_triangle_estimate() {
    let s = zassenhaus_series(8).unwrap();
    let grid = [0.05, 0.3, 0.7, 1.5, 3.0];
    for &x in &grid {
        for &y in &grid {
            let t = BoundTable::build(x, y, 8).unwrap();
            for (n, c) in s.iter() {
                let norm = triangle_norm_bound(c, x, y);
                let delta = t.delta(n).unwrap().value();
                assert!(
                    norm <= delta * (1.0 + 1e-12),
                    "C_{n} at ({x},{y}): {norm} > {delta}"
                );
            }
        }
    }
}

#[test]
fn invalid_inputs_rejected() {
    assert!(BoundTable::build(f64::NAN, 1.0, 10).is_err());
    assert!(BoundTable::build(-1.0, 1.0, 10).is_err());
    assert!(BoundTable::build(1.0, 1.0, 2).is_err());
    assert!(d1(0, 1.0, 1.0).is_err());
    assert!(domain_boundary(&[1.0, 0.5], 100, 1e-3).is_err());
    assert!(domain_boundary(&[0.5], 100, 0.0).is_err());
}

#[test]
fn suzuki_value() {
    assert!((suzuki_radius() - 0.193_147_180_559_945_3).abs() < 1e-12);
    assert!(suzuki_radius() > 0.0);
    assert!(suzuki_radius() < bayen_radius().unwrap());
}

#[test]
fn bayen_root_and_monotonicity() {
    let r = bayen_radius().unwrap();
    assert!((r - 0.59670569).abs() < 1e-6);
    assert!((bayen_lhs(r) - bayen_rhs()).abs() < 1e-8);
    let h = 1e-4;
    let mut z: f64 = 0.01;
    while z <= 1.0 {
        let slope = (bayen_lhs(z + h) - bayen_lhs(z - h)) / (2.0 * h);
        assert!(slope > 0.0, "lhs not increasing at {z}");
        z += 0.01;
    }
}

#[test]
fn quadrature_matches_power_series() {
    // int_0^z (e^{2w}-1)/w dw = sum_k (2z)^k / (k k!)
    for z in [0.1, 0.5967, 1.0] {
        let mut series = 0.0;
        let mut term = 1.0;
        for k in 1..60 {
            term *= 2.0 * z / k as f64;
            series += term / k as f64;
        }
        let quad = adaptive_simpson(
            |w: f64| {
                if w == 0.0 {
                    2.0
                } else {
                    (2.0 * w).exp_m1() / w
                }
            },
            0.0,
            z,
            1e-14,
        );
        assert!((quad - series).abs() < 1e-12, "z={z}: {quad} vs {series}");
    }
}

#[test]
fn reference_points() {
    for (x, y, want) in [
        (0.5, 0.5, true),
        (0.002, 2.92, true),
        (2.89, 0.014, true),
        (2.0, 2.0, false),
    ] {
        let v = converges(x, y, 1000).unwrap();
        assert_eq!(v.convergent, want, "({x},{y}) ratio {}", v.final_ratio);
        assert_eq!(v.trailing_ratios.len(), 10);
        assert_eq!(*v.trailing_ratios.last().unwrap(), v.final_ratio);
    }
}

#[test]
fn boundary_sits_between_verdicts() {
    let pts = domain_boundary(&[0.2, 1.0], 300, 1e-3).unwrap();
    for p in pts {
        assert!(converges(p.x, p.y_boundary, 300).unwrap().convergent);
        assert!(!converges(p.x, p.y_boundary + 1e-3, 300).unwrap().convergent);
        assert!(p.ratio < 1.0);
    }
    let axis = domain_boundary(&[0.0], 100, 1e-3).unwrap();
    assert!(axis[0].y_boundary.is_infinite());
}

#[test]
fn diagonal_reaches_quoted_region() {
    // x = y = 0.527 is inside; the boundary is not symmetric and dips to
    // x + y ~ 1.047 near x = 0.43 at n_max = 1000.
    assert!(converges(0.527, 0.527, 1000).unwrap().convergent);
    let p = domain_boundary(&[0.43], 1000, 1e-4).unwrap()[0];
    let sum = p.x + p.y_boundary;
    assert!((1.045..1.049).contains(&sum), "x+y = {sum}");
    assert!(!converges(0.43, 0.625, 1000).unwrap().convergent);
}
