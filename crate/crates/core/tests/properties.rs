//! Property tests for the structural invariants: initial conditions,
//! envelope orderings, exact partitions and hypothesis windows hold for all
//! admissible inputs, not just the worked examples.

use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use proptest::prelude::*;

use hwave_core::decay::zone_split_norm;
use hwave_core::fields::CoefficientField;
use hwave_core::fourier::plancherel_norm;
use hwave_core::grids::{SpectralGrid, SpectralGridSpec};
use hwave_core::oracle::{check_sqrt_inequality, gn_theta};
use hwave_core::params::ModelParams;
use hwave_core::propagator::{
    char_roots, evolve_coefficient, evolve_time_derivative, ModeFrequency,
};

fn shared_grid() -> Arc<SpectralGrid> {
    static GRID: OnceLock<Arc<SpectralGrid>> = OnceLock::new();
    Arc::clone(GRID.get_or_init(|| {
        Arc::new(
            SpectralGrid::new(
                1,
                &SpectralGridSpec {
                    max_degree: 3,
                    node_count: 6,
                    lambda_min: 0.03,
                    lambda_max: 5.0,
                    lambda_split: None,
                },
            )
            .unwrap(),
        )
    }))
}

/// Admissible `(b, m)` with `b^2 > 4m`.
fn admissible_bm() -> impl Strategy<Value = (f64, f64)> {
    (0.2f64..6.0).prop_flat_map(|b| {
        (Just(b), 0.0f64..(0.999 * b * b / 4.0).max(1e-12))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn initial_conditions_are_exact(
        (b, m) in admissible_bm(),
        s in 1e-6f64..50.0,
        re0 in -2.0f64..2.0, im0 in -2.0f64..2.0,
        re1 in -2.0f64..2.0, im1 in -2.0f64..2.0,
    ) {
        let params = ModelParams::new(1, b, m, 1.0).unwrap();
        let u0 = Complex64::new(re0, im0);
        let u1 = Complex64::new(re1, im1);
        let s = ModeFrequency(s);
        prop_assert_eq!(evolve_coefficient(0.0, u0, u1, s, &params), u0);
        prop_assert_eq!(evolve_time_derivative(0.0, u0, u1, s, &params), u1);
    }

    #[test]
    fn characteristic_roots_stay_strictly_damped(
        (b, m) in admissible_bm(),
        s in 1e-6f64..100.0,
    ) {
        let params = ModelParams::new(1, b, m, 1.0).unwrap();
        let (r1, r2) = char_roots(ModeFrequency(s), &params);
        let cap = -m / (2.0 * b) + 1e-12;
        prop_assert!(r1.re <= cap && r2.re <= cap);
        // the product of the roots is s + m, the sum is -b
        let sum = r1 + r2;
        let prod = r1 * r2;
        prop_assert!((sum.re + b).abs() <= 1e-9 * (1.0 + b) && sum.im.abs() <= 1e-9);
        prop_assert!((prod.re - (s + m)).abs() <= 1e-9 * (1.0 + s + m));
    }

    #[test]
    fn sharp_exponent_below_weak_exponent(
        (b, m) in admissible_bm(),
        t in 0.0f64..200.0,
    ) {
        // e^{(-b/2 + sqrt(b^2/4 - m)) t} <= e^{-mt/2b}
        let sharp = (-0.5 * b + (0.25 * b * b - m).sqrt()) * t;
        let weak = -m * t / (2.0 * b);
        prop_assert!(sharp <= weak + 1e-10 * (1.0 + t));
    }

    #[test]
    fn sqrt_inequality_holds_on_domain(x in 0.0f64..=0.25) {
        prop_assert!(check_sqrt_inequality(x).unwrap());
    }

    #[test]
    fn interpolation_exponent_stays_in_unit_interval(
        s in 0.05f64..=1.0,
        r_frac in 0.05f64..0.95,
        q_frac in 0.0f64..=1.0,
    ) {
        let big_q = 4usize;
        // r strictly inside (1, Q/s)
        let r = 1.0 + r_frac * (big_q as f64 / s - 1.0) * 0.999;
        let q_upper = r * big_q as f64 / (big_q as f64 - s * r);
        if q_upper < 2.0 {
            return Ok(());
        }
        let q = 2.0 + q_frac * (q_upper - 2.0);
        let denom = s / big_q as f64 + 0.5 - 1.0 / r;
        if denom.abs() < 1e-6 {
            return Ok(());
        }
        let theta = gn_theta(q, s, r, big_q).unwrap();
        prop_assert!((0.0..=1.0).contains(&theta));
    }

    #[test]
    fn zone_split_is_an_exact_partition(
        values in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 192),
        m_frac in 0.0f64..0.9,
    ) {
        let grid = shared_grid();
        let b = 2.0;
        let params = ModelParams::new(1, b, m_frac * b * b / 4.0, 1.0).unwrap();
        let mut f = CoefficientField::zeros(Arc::clone(&grid));
        for (slot, (re, im)) in f.values_mut().iter_mut().zip(values.iter().cycle()) {
            *slot = Complex64::new(*re, *im);
        }
        let (low, high) = zone_split_norm(&f, &params).unwrap();
        let total = plancherel_norm(&f).powi(2);
        prop_assert!(low >= 0.0 && high >= 0.0);
        prop_assert!(((low + high) - total).abs() <= 1e-12 * total.max(1e-300));
    }

    #[test]
    fn damped_evolution_of_position_data_never_grows(
        (b, m) in admissible_bm(),
        s in 1e-6f64..50.0,
        t in 0.0f64..100.0,
    ) {
        // with u1 = 0 the mode magnitude stays below its initial value
        // up to the uniform-estimate constant; assert the weak form
        let params = ModelParams::new(1, b, m, 1.0).unwrap();
        let u0 = Complex64::new(1.0, 0.0);
        let u1 = Complex64::new(0.0, 0.0);
        let v = evolve_coefficient(t, u0, u1, ModeFrequency(s), &params);
        // |u(t)| <= e^{(-b/2 + sqrt(max(0, b^2/4 - m - s))) t} (1 + b t / 2) holds
        // in every regime
        let d = (0.25 * b * b - m - s).max(0.0);
        let bound = ((-0.5 * b + d.sqrt()) * t).exp() * (1.0 + 0.5 * b * t);
        prop_assert!(v.norm() <= bound * (1.0 + 1e-9));
    }

    #[test]
    fn massless_position_modes_never_exceed_initial_magnitude(
        b in 0.2f64..6.0,
        s in 1e-6f64..50.0,
        t in 0.0f64..100.0,
    ) {
        // damping never pumps energy into a mode started from rest
        let params = ModelParams::new(1, b, 0.0, 1.0).unwrap();
        let v = evolve_coefficient(
            t,
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            ModeFrequency(s),
            &params,
        );
        prop_assert!(v.norm() <= 1.0 + 1e-6, "|u({t})| = {} at b={b} s={s}", v.norm());
    }
}
