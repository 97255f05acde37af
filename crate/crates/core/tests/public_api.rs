use optorouter_core::response::{count_local_maxima, uniform_grid};
use optorouter_core::{
    assess_stability, default_params, derive_operating_point, output_spectra,
    routing_probabilities, Band, Error, Lorentzian,
};

#[test]
fn spectra_over_the_plotted_range() {
    let params = default_params();
    let op = derive_operating_point(&params).unwrap();
    let wm = params.mech_freq;
    let grid = uniform_grid(0.5 * wm, 1.5 * wm, 1001).unwrap();
    let line = Lorentzian::new(params.probe_center(), params.input_bandwidth).unwrap();
    let s = output_spectra(&grid, &op, &line).unwrap();
    assert_eq!(s.len(), 1001);
    assert!(s.reflection[500] > 0.99 && s.transmission[500] < 0.02);
    assert_eq!(count_local_maxima(&s.vacuum), 1);
    for i in 0..s.len() {
        assert!(s.reflection[i] >= 0.0 && s.transmission[i] >= 0.0);
        assert!(s.vacuum[i] >= 0.0 && s.thermal[i] >= 0.0);
    }
}

#[test]
fn driven_response_is_stable_and_routes() {
    let op = derive_operating_point(&default_params()).unwrap();
    assert!(assess_stability(&op).unwrap().stable);
    let report = routing_probabilities(&op, Band::default_for(&op.params), 400).unwrap();
    assert!(report.p_reflect > report.p_transmit);
}

#[test]
fn bad_input_is_named() {
    let err = derive_operating_point(&default_params().with_power(f64::NAN)).unwrap_err();
    assert!(matches!(
        err,
        Error::InvalidParameter {
            field: "drive_power",
            ..
        }
    ));
    assert!(uniform_grid(1.0, 2.0, 1).is_err());
}
