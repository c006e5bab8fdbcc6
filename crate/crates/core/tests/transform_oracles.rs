//! Derived oracles for the transform-level operations that need the
//! ingestion-scale resolution: the power nonlinearity against a directly
//! transformed reference, and the interpolation-inequality reduction at
//! `q = 2`.

use std::sync::Arc;

use num_complex::Complex64;

use hwave_core::duhamel::nonlinearity_transform;
use hwave_core::fixtures::{
    gaussian_family, gaussian_field, ingestion_grid, roundtrip_spectral_spec, GH_POINTS,
};
use hwave_core::fourier::{calibrated_setup, plancherel_norm};
use hwave_core::oracle::check_gagliardo_nirenberg;
use hwave_core::params::ModelParams;

#[test]
fn squaring_nonlinearity_matches_direct_transform() {
    let pgrid = Arc::new(ingestion_grid().unwrap());
    let family = gaussian_family(&pgrid);
    let (_sgrid, plan, _cal) = calibrated_setup(
        1,
        &roundtrip_spectral_spec(),
        Arc::clone(&pgrid),
        &family,
        GH_POINTS,
    )
    .unwrap();
    // |g|^2 of a width-w Gaussian is the width w/sqrt(2) Gaussian, so the
    // oracle is a directly transformed exact field
    let w = 1.3;
    let g = gaussian_field(&pgrid, w, 1.0);
    let g_squared = gaussian_field(&pgrid, w / 2.0_f64.sqrt(), 1.0);
    let state = plan.forward(&g).unwrap();
    let oracle = plan.forward(&g_squared).unwrap();
    let got = nonlinearity_transform(&state, 2.0, &plan).unwrap();
    let rel = plancherel_norm(&got.sub(&oracle).unwrap()) / plancherel_norm(&oracle);
    assert!(rel <= 0.08, "round-trip error of the squared state: {rel:.4}");

    // homogeneity: scaling the state scales the output by the power
    let scaled_in = state.scale(Complex64::new(0.2, 0.0));
    let scaled_out = nonlinearity_transform(&scaled_in, 2.0, &plan).unwrap();
    let rel = plancherel_norm(
        &scaled_out
            .sub(&got.scale(Complex64::new(0.04, 0.0)))
            .unwrap(),
    ) / (0.04 * plancherel_norm(&got));
    assert!(rel <= 1e-12, "homogeneity violated: {rel:.3e}");
}

#[test]
fn interpolation_ratio_reduces_to_roundtrip_at_q_two() {
    let pgrid = Arc::new(ingestion_grid().unwrap());
    let family = gaussian_family(&pgrid);
    let (_sgrid, plan, _cal) = calibrated_setup(
        1,
        &roundtrip_spectral_spec(),
        Arc::clone(&pgrid),
        &family,
        GH_POINTS,
    )
    .unwrap();
    let params = ModelParams::new(1, 2.0, 0.0, 1.0).unwrap();
    // theta = 0 at q = 2: the ratio is grid-L2 over Plancherel-L2, which is
    // 1 up to the calibrated round-trip tolerance
    let f = &family[0];
    let coeff = plan.forward(f).unwrap();
    let r = check_gagliardo_nirenberg(f, &coeff, 2.0, 1.0, &params).unwrap();
    assert!(
        (r.sup_ratio - 1.0).abs() <= 0.03,
        "q = 2 reduction ratio {}",
        r.sup_ratio
    );
}
