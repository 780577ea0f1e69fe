mod common;

use std::f64::consts::PI;

use common::{kummer_exact, rel, simpson};
use proptest::prelude::*;
use selfsim_heat::specfun::{
    dawson, erfi, hermite_nu, hermite_nu_scaled, hermite_poly, kummer_1f1, kummer_1f1_scaled,
    kummer_asymptotic, kummer_series, log_gamma, KummerParams, KUMMER_Z_SWITCH,
};
use selfsim_heat::Error;

// Γ(1/4) and Γ(3/4) to 20 digits
const GAMMA_QUARTER: f64 = 3.6256099082219083119;
const GAMMA_THREE_QUARTERS: f64 = 1.2254167024651776451;

fn m(a: f64, b: f64, z: f64) -> f64 {
    kummer_1f1(KummerParams::new(a, b, z).unwrap()).unwrap()
}

#[test]
fn series_branch_matches_exact_rational_sums() {
    // (α, β, z) as fractions
    let cases = [
        ((-1, 2), (1, 2), (1, 1)),
        ((-1, 2), (1, 2), (10, 1)),
        ((-1, 2), (1, 2), (40, 1)),
        ((1, 2), (3, 2), (7, 4)),
        ((1, 3), (5, 2), (25, 1)),
        ((-7, 3), (1, 2), (3, 1)),
        ((5, 1), (2, 1), (1, 8)),
        ((-3, 1), (1, 2), (9, 1)),
    ];
    for (a, b, z) in cases {
        let exact = kummer_exact(a, b, z, 400);
        let (af, bf, zf) = (
            a.0 as f64 / a.1 as f64,
            b.0 as f64 / b.1 as f64,
            z.0 as f64 / z.1 as f64,
        );
        let got = m(af, bf, zf);
        assert!(
            rel(got, exact) < 1e-13,
            "1F1({af}, {bf}; {zf}) = {got}, exact {exact}"
        );
    }
}

#[test]
fn asymptotic_branch_carries_the_leading_term_error() {
    // 1F1 / leading term = 1 + (1-α)(β-α)/z + (1-α)(2-α)(β-α)(β-α+1)/(2z²) + O(z⁻³)
    for z in [50i64, 80, 120] {
        let exact = kummer_exact((-1, 2), (1, 2), (z, 1), 800);
        let lead = m(-0.5, 0.5, z as f64);
        let gap = exact / lead - 1.0;
        let zf = z as f64;
        let two_terms = 1.5 / zf + 3.75 / (zf * zf);
        assert!(
            (gap - two_terms).abs() < 30.0 / zf.powi(3),
            "z = {z}: gap {gap}"
        );
    }
}

#[test]
fn ratio_to_leading_term_falls_to_one() {
    let p = |z: f64| KummerParams::new(-0.5, 0.5, z).unwrap();
    let mut last = f64::INFINITY;
    for i in 0..60 {
        let z = 5.0 + 1.6 * i as f64;
        let r = kummer_1f1(p(z)).unwrap() / kummer_asymptotic(p(z)).unwrap();
        assert!(r <= last + 1e-15, "ratio rises at z = {z}");
        last = r;
    }
    let r = kummer_1f1(p(100.0)).unwrap() / kummer_asymptotic(p(100.0)).unwrap();
    assert!((r - 1.0).abs() < 1e-3);
    assert!(KUMMER_Z_SWITCH == 40.0);
}

#[test]
fn scaled_kummer_is_consistent() {
    for z in [0.5, 12.0, 39.0, 41.0, 300.0] {
        let p = KummerParams::new(-0.5, 0.5, z).unwrap();
        let scaled = kummer_1f1_scaled(p).unwrap();
        if z < 700.0 {
            assert!(rel(scaled, kummer_1f1(p).unwrap() * (-z).exp()) < 1e-13);
        }
        assert!(scaled.is_finite());
    }
    // terminating case stays a polynomial at large z
    let p = KummerParams::new(-2.0, 0.5, 800.0).unwrap();
    let poly = 1.0 - 4.0 * 800.0 + 4.0 / 3.0 * 800.0f64.powi(2);
    assert!(rel(kummer_1f1(p).unwrap(), poly) < 1e-14);
}

#[test]
fn degenerate_and_invalid_arguments() {
    let p = KummerParams::new(-2.0, 0.5, 50.0).unwrap();
    assert!(matches!(
        kummer_asymptotic(p),
        Err(Error::DegenerateLeadingTerm { .. })
    ));
    assert!(KummerParams::new(0.5, -1.0, 1.0).is_err());
    assert!(KummerParams::new(0.5, 0.5, -1.0).is_err());
    assert!(matches!(log_gamma(-3.0), Err(Error::Pole(_))));
}

/// `H_ν(x) = 2^{ν+1}/√π e^{x²} ∫₀^∞ e^{-t²} t^ν cos(2xt - νπ/2) dt`, `ν > -1`,
/// with `t = s²` to smooth the endpoint.
fn hermite_integral(nu: f64, x: f64) -> f64 {
    let f = |s: f64| {
        let t = s * s;
        2.0 * s.powf(2.0 * nu + 1.0) * (-t * t).exp() * (2.0 * x * t - 0.5 * nu * PI).cos()
    };
    2f64.powf(nu + 1.0) / PI.sqrt() * (x * x).exp() * simpson(&f, 0.0, 6.5, 1e-15)
}

#[test]
fn hermite_function_matches_integral_representation() {
    for (nu, x) in [
        (0.5, 1.0),
        (1.5, 0.3),
        (-0.5, 0.7),
        (2.5, -1.2),
        (0.25, 2.0),
    ] {
        let got = hermite_nu(nu, x).unwrap();
        let oracle = hermite_integral(nu, x);
        assert!(
            rel(got, oracle) < 1e-10,
            "H_{nu}({x}) = {got}, integral {oracle}"
        );
    }
}

#[test]
fn hermite_half_at_one_from_gamma_constants() {
    // H_{1/2}(1) = √(2π)/Γ(1/4)·M(-1/4, 1/2; 1) + √(2π)/(2Γ(3/4))·M(1/4, 3/2; 1)
    let a = (2.0 * PI).sqrt() / GAMMA_QUARTER;
    let b = (2.0 * PI).sqrt() / (2.0 * GAMMA_THREE_QUARTERS);
    let oracle = a * kummer_exact((-1, 4), (1, 2), (1, 1), 80)
        + b * kummer_exact((1, 4), (3, 2), (1, 1), 80);
    assert!(rel(hermite_nu(0.5, 1.0).unwrap(), oracle) < 1e-14);
    assert!(rel(log_gamma(0.25).unwrap().value(), GAMMA_QUARTER) < 1e-14);
    assert!(rel(log_gamma(0.75).unwrap().value(), GAMMA_THREE_QUARTERS) < 1e-14);
}

#[test]
fn hermite_polynomials_agree() {
    for n in 0..=10u32 {
        for i in 0..=40 {
            let x = -5.0 + 0.25 * i as f64;
            let p = hermite_poly(n, x);
            let h = hermite_nu(n as f64, x).unwrap();
            assert!(
                (h - p).abs() <= 1e-12 * p.abs().max(1.0),
                "n = {n}, x = {x}"
            );
        }
    }
}

#[test]
fn derivative_identity() {
    let step = 1e-5;
    for nu in [0.5, 1.5, 2.0, 3.0] {
        for x in [-1.3, -0.2, 0.4, 1.1] {
            let fd = (hermite_nu(nu, x + step).unwrap() - hermite_nu(nu, x - step).unwrap())
                / (2.0 * step);
            let exact = 2.0 * nu * hermite_nu(nu - 1.0, x).unwrap();
            assert!((fd - exact).abs() < 1e-6, "nu = {nu}, x = {x}");
        }
    }
}

#[test]
fn scaled_hermite_is_finite_far_out() {
    for nu in [-1.5, 0.3, 2.0] {
        for x in [30.0, -30.0] {
            let s = hermite_nu_scaled(nu, x).unwrap();
            assert!(s.is_finite());
        }
    }
    assert!(hermite_nu(0.3, 40.0).is_err());
}

#[test]
fn erfi_matches_quadrature() {
    let f = |t: f64| 2.0 / PI.sqrt() * (t * t).exp();
    for x in [0.1, 1.0, 2.5, 3.0, 3.5, 5.0] {
        let oracle = simpson(&f, 0.0, x, 1e-14 * f(x));
        assert!(rel(erfi(x).unwrap(), oracle) < 1e-12, "erfi({x})");
    }
    // the Dawson relation
    for x in [0.5, 4.0, 12.0] {
        let lhs = dawson(x);
        let rhs = 0.5 * PI.sqrt() * (-x * x).exp() * erfi(x).unwrap();
        assert!(rel(lhs, rhs) < 1e-13);
    }
}

proptest! {
    #[test]
    fn contiguous_relation(a in -3.0f64..3.0, b in 0.2f64..4.0, z in 0.0f64..30.0) {
        // b M(a, b, z) - b M(a-1, b, z) - z M(a, b+1, z) = 0
        let s = |a: f64, b: f64| kummer_series(KummerParams::new(a, b, z).unwrap()).unwrap();
        let (t1, t2, t3) = (b * s(a, b), b * s(a - 1.0, b), z * s(a, b + 1.0));
        let scale = t1.abs().max(t2.abs()).max(t3.abs()).max(1.0);
        prop_assert!((t1 - t2 - t3).abs() <= 1e-8 * scale);
    }

    #[test]
    fn parity(n in 0u32..12, x in -6.0f64..6.0, y in 0.0f64..6.0) {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(hermite_poly(n, -x), sign * hermite_poly(n, x));
        prop_assert_eq!(erfi(-y).unwrap(), -erfi(y).unwrap());
        prop_assert_eq!(m(-0.5, 0.5, (-y) * (-y) / 2.0), m(-0.5, 0.5, y * y / 2.0));
    }

    #[test]
    fn gamma_reflection(x in 0.01f64..0.99) {
        let g = log_gamma(x).unwrap().value() * log_gamma(1.0 - x).unwrap().value();
        prop_assert!(rel(g, PI / (PI * x).sin()) < 1e-12);
    }
}
