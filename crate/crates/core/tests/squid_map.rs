use std::f64::consts::PI;

use harvest_core::squid_map::{discretize_profile, flux_profile, thermal_occupation};
use harvest_core::{ArraySpec, WormholeGeometry};

#[test]
fn thermal_occupation_at_ten_gigahertz() {
    let omega = 2.0 * PI * 1e10;
    // 40-digit reference evaluations of 1/expm1(ħΩ/k_B T)
    let at_30_mk = 1.128_194_832_895_637_4e-7;
    let at_5_mk = 2.062_074_463_551_311_6e-42;
    let n30 = thermal_occupation(omega, 0.030).unwrap();
    let n5 = thermal_occupation(omega, 0.005).unwrap();
    assert!((n30 - at_30_mk).abs() / at_30_mk < 1e-12, "{n30:e}");
    assert!((n5 - at_5_mk).abs() / at_5_mk < 1e-11, "{n5:e}");
    let five_ghz = thermal_occupation(PI * 1e10, 0.030).unwrap();
    assert!((five_ghz - 3.359_989_549_783_402_5e-4).abs() / 3.36e-4 < 1e-12);
}

#[test]
fn thousand_cell_table_matches_midpoint_samples() {
    let geom = WormholeGeometry::new(1e-3, 1e6).unwrap();
    let array = ArraySpec::new(10e-6, 1000, 1.0).unwrap();
    let table = discretize_profile(&geom, &array);
    assert_eq!(table.len(), 1000);
    for &(i, value) in &table {
        let x = (i as f64 + 0.5 - 500.0) * 10e-6;
        let q = 1e-3 / (x.abs() + 1e-3);
        let reference = (1.0 - q * q).acos() / PI;
        assert!((value - reference).abs() <= 1e-12 * reference, "cell {i}");
        assert_eq!(value, flux_profile(&geom, x, 1.0));
    }
    for i in 0..500 {
        assert_eq!(table[i].1, table[999 - i].1);
    }
    for i in 500..999 {
        assert!(table[i + 1].1 < table[i].1);
    }
}

#[test]
fn odd_array_peaks_in_the_middle() {
    let geom = WormholeGeometry::new(1.0, 1.0).unwrap();
    let array = ArraySpec::new(0.7, 3, 1.0).unwrap();
    let table = discretize_profile(&geom, &array);
    assert!(table[1].1 > table[0].1);
    assert_eq!(table[0].1, table[2].1);
    assert!((table[1].1 - 0.5).abs() < 1e-15);
}
