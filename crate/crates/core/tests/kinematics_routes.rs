use harvest_core::kinematics::{
    light_travel_time, light_travel_time_by_quadrature, params_from_physical, rho_l_from_lab,
    time_for_xi_x, xi_l_direct, xi_l_from_xi_x,
};
use harvest_core::{QubitPairConfig, WormholeGeometry};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.log10(), hi.log10());
    (0..n).map(|i| 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64)).collect()
}

#[test]
fn closed_form_matches_quadrature_across_throat_ratios() {
    let x_b = 1.0;
    let mut worst: f64 = 0.0;
    for ratio in log_grid(1e-6, 1e3, 50) {
        let geom = WormholeGeometry::new(ratio * x_b, 1.0).unwrap();
        let closed = light_travel_time(&geom, x_b).unwrap();
        let quad = light_travel_time_by_quadrature(&geom, x_b, 1e-12).unwrap();
        worst = worst.max(rel(closed, quad));
    }
    assert!(worst <= 1e-8, "worst relative error {worst:e}");
}

#[test]
fn quadrature_reference_value_at_unit_throat() {
    let geom = WormholeGeometry::new(1.0, 1.0).unwrap();
    let closed = light_travel_time(&geom, 1.0).unwrap();
    let quad = light_travel_time_by_quadrature(&geom, 1.0, 1e-13).unwrap();
    assert!(rel(closed, quad) < 1e-10);
    assert!(closed > 2.0);
}

#[test]
fn route_independence_on_throat_time_grid() {
    let x_b = 0.75;
    let c = 3.0;
    let mut worst: f64 = 0.0;
    for b0 in log_grid(1e-7, 50.0, 20) {
        let geom = WormholeGeometry::new(b0, c).unwrap();
        for t in log_grid(1e-3, 1e2, 20) {
            let cfg = QubitPairConfig::new(x_b, 1.0, 1e-3, t).unwrap();
            let p = params_from_physical(&geom, &cfg).unwrap();
            let via_lab = xi_l_from_xi_x(p.xi_x, p.xi_b, p.xi_f).unwrap();
            let direct = xi_l_direct(&geom, &cfg).unwrap();
            worst = worst.max(rel(via_lab, direct));
        }
    }
    assert!(worst <= 1e-10, "worst relative error {worst:e}");
}

#[test]
fn flat_limit_is_bitwise() {
    let geom = WormholeGeometry::flat(2.0).unwrap();
    for &t in &[0.1, 1.0, 3.7, 12.0] {
        let cfg = QubitPairConfig::new(1.3, 1.0, 1e-3, t).unwrap();
        let p = params_from_physical(&geom, &cfg).unwrap();
        assert_eq!(p.xi_x, p.xi_f);
        assert_eq!(p.xi_l, p.xi_x);
        assert_eq!(p.rho_l, p.rho_x);
    }
}

#[test]
fn unit_light_cone_is_exact() {
    for &b0 in &[1e-9, 0.3, 4.0, 700.0] {
        let geom = WormholeGeometry::new(b0, 1.0).unwrap();
        let t = time_for_xi_x(&geom, 2.0, 1.0).unwrap();
        let cfg = QubitPairConfig::new(2.0, 1.0, 1e-3, t).unwrap();
        assert_eq!(params_from_physical(&geom, &cfg).unwrap().xi_x, 1.0);
    }
}

#[test]
fn near_flat_throat_is_continuous() {
    let geom = WormholeGeometry::new(1e-9, 1.0).unwrap();
    assert!(rel(light_travel_time(&geom, 1.0).unwrap(), 2.0) < 1e-6);
}

#[test]
fn xi_x_decreases_with_throat() {
    let t = 5.0;
    let mut last = f64::INFINITY;
    for b0 in log_grid(1e-6, 1e3, 60) {
        let geom = WormholeGeometry::new(b0, 1.0).unwrap();
        let cfg = QubitPairConfig::new(1.0, 1.0, 1e-3, t).unwrap();
        let xi_x = params_from_physical(&geom, &cfg).unwrap().xi_x;
        assert!(xi_x < last, "b0 = {b0}");
        last = xi_x;
    }
}

#[test]
fn free_falling_separation_exceeds_lab_separation() {
    for b0 in log_grid(1e-8, 1e4, 40) {
        let geom = WormholeGeometry::new(b0, 1.0).unwrap();
        assert!(rho_l_from_lab(&geom, 1.0).unwrap() > 2.0);
    }
}
