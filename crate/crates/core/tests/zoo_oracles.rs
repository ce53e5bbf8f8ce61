use lipderiv::metric::Norm;
use lipderiv::scales::{scale_profile, RadiusGrid};
use lipderiv::zoo::{entry, make_zoo};
use lipderiv::LinearMapSpec;
use proptest::prelude::*;

/// Largest singular value of a 2×2 matrix from the eigenvalues of AᵀA.
fn spectral_norm(a: [[f64; 2]; 2]) -> f64 {
    let p = a[0][0] * a[0][0] + a[1][0] * a[1][0];
    let q = a[0][0] * a[0][1] + a[1][0] * a[1][1];
    let s = a[0][1] * a[0][1] + a[1][1] * a[1][1];
    let mean = (p + s) / 2.0;
    (mean + (((p - s) / 2.0).powi(2) + q * q).sqrt()).sqrt()
}

#[test]
fn operator_norms_of_reference_matrices() {
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    for (a, expect) in
        [([[2.0, 0.0], [0.0, 1.0]], 2.0), ([[1.0, 1.0], [0.0, 1.0]], golden), ([[0.0, -1.0], [1.0, 0.0]], 1.0)]
    {
        assert!((spectral_norm(a) - expect).abs() < 1e-15);
        let map = LinearMapSpec::euclidean(vec![a[0].to_vec(), a[1].to_vec()]).unwrap();
        let est = map.operator_norm(20_000, 3).unwrap();
        assert!(est <= expect * (1.0 + 1e-12) && est > expect * (1.0 - 1e-6), "{est} vs {expect}");
    }
}

#[test]
fn l1_to_linf_norm_is_the_largest_entry() {
    let map = LinearMapSpec::new(vec![vec![1.0, -4.0], vec![2.5, 0.5]], Norm::L1, Norm::LInf).unwrap();
    assert_eq!(map.operator_norm(10, 0).unwrap(), 4.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampled_operator_norm_converges(a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0, d in -3.0f64..3.0) {
        let exact = spectral_norm([[a, b], [c, d]]);
        let map = LinearMapSpec::euclidean(vec![vec![a, b], vec![c, d]]).unwrap();
        let est = map.operator_norm(5_000, 11).unwrap();
        prop_assert!(est <= exact * (1.0 + 1e-12) + 1e-15);
        prop_assert!(est >= exact * (1.0 - 1e-5) - 1e-15);
    }
}

#[test]
fn smooth_entries_track_the_derivative_in_the_interior() {
    // Lip of a C¹ function is |f'|; at resolution h and radius r the sampled
    // estimate is off by at most about sup|f''|·r.
    let h = 1e-3;
    let grid = RadiusGrid::new(0.05, 0.5, 5, 2).unwrap();
    for (name, deriv, lo, hi) in [
        ("sin", f64::cos as fn(f64) -> f64, 0.1, 3.0),
        ("square", |u: f64| 2.0 * u, 0.1, 1.9),
        ("cube", |u: f64| 3.0 * u * u, -0.9, 0.9),
        ("affine", |_| 3.0, -0.9, 0.9),
    ] {
        let e = entry(name, h).unwrap();
        let prof = scale_profile(&e.map, &grid).unwrap();
        let xs = e.map.domain().embedding().unwrap();
        for p in &prof.points {
            let u = xs.point(p.point)[0];
            if u < lo || u > hi {
                continue;
            }
            let r = p.estimate_radius.unwrap();
            let want = deriv(u).abs();
            let slack = 6.0 * r + 1e-9;
            assert!((p.big_hat - want).abs() <= slack, "{name} big at {u}: {} vs {want}", p.big_hat);
            assert!((p.lip_hat - want).abs() <= slack, "{name} lip at {u}: {} vs {want}", p.lip_hat);
            assert!((p.loc_hat - want).abs() <= slack, "{name} loc at {u}: {} vs {want}", p.loc_hat);
        }
    }
}

#[test]
fn zoo_metadata_is_consistent() {
    for e in make_zoo(1e-2).unwrap() {
        assert_eq!(e.oracle.len(), e.map.len(), "{}", e.name);
        for t in &e.oracle {
            assert!(t.lip <= t.big && t.big <= t.loc, "{}: {t:?}", e.name);
        }
        let biggest = e.oracle.iter().map(|t| t.loc).fold(0.0, f64::max);
        assert!(biggest <= e.lip_norm || e.lip_norm.is_infinite(), "{}", e.name);
    }
}
