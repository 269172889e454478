use shrinkerlab_core::surface::fixtures::{finite_difference, FIXTURE_NAMES};
use shrinkerlab_core::surface::{
    by_name, codazzi_residual, default_step, hopf_norm_defect, lambda_sphere_radius,
    qzbar_identity_residual, shrinker_residual, sphere_radius_for_weight, surface_grid, WeightSpec,
};

#[test]
fn fixture_names_are_documented() {
    assert_eq!(FIXTURE_NAMES.len(), 5);
}

#[test]
fn shrinkers_among_the_fixtures() {
    for name in ["sphere 2", "cylinder sqrt(2)", "plane"] {
        let s = by_name(name).unwrap();
        for (u, v) in s.domain.grid(10) {
            assert!(shrinker_residual(&s, u, v).unwrap().abs() < 1e-10, "{name}");
        }
    }
    for name in ["sphere 1", "cylinder 1", "torus 2,1"] {
        let s = by_name(name).unwrap();
        let (u, v) = s.domain.grid(3)[4];
        assert!(shrinker_residual(&s, u, v).unwrap().abs() > 0.1, "{name}");
    }
}

#[test]
fn hopf_norm_identity_on_a_hundred_points() {
    for name in ["sphere 2", "cylinder sqrt(2)", "ellipsoid 1,1.2,1.5", "torus 3,1"] {
        let s = by_name(name).unwrap();
        let worst = s
            .domain
            .grid(10)
            .into_iter()
            .map(|(u, v)| hopf_norm_defect(&s, u, v).unwrap())
            .fold(0.0, f64::max);
        assert!(worst < 1e-8, "{name}: {worst:e}");
    }
}

#[test]
fn weighted_and_unweighted_identities_across_the_ellipsoid() {
    let s = by_name("ellipsoid 1,1.2,1.5").unwrap();
    let step = default_step(&s);
    let w = WeightSpec::linear(0.25);
    for (u, v) in s.domain.grid(4) {
        assert!(qzbar_identity_residual(&s, &w, u, v, step).unwrap() < 1e-5);
        assert!(codazzi_residual(&s, u, v, step).unwrap() < 1e-5);
    }
}

#[test]
fn finite_difference_chart_keeps_the_shrinker_property() {
    let s = finite_difference(&by_name("sphere 2").unwrap(), None).unwrap();
    for (u, v) in s.domain.grid(5) {
        assert!(shrinker_residual(&s, u, v).unwrap().abs() < 1e-6);
    }
}

#[test]
fn grid_rows_and_radii() {
    let rows = surface_grid(&by_name("cylinder sqrt(2)").unwrap(), &WeightSpec::linear(0.25), 10).unwrap();
    assert_eq!(rows.len(), 100);
    assert!(rows.iter().all(|r| (r.phi_norm - 0.5).abs() < 1e-12));
    assert!((sphere_radius_for_weight(&WeightSpec::linear(0.25)).unwrap() - 2.0).abs() < 2e-12);
    for lam in [-2.0, 0.0, 1.5, 10.0] {
        let r = lambda_sphere_radius(lam);
        assert!((r * (r + 2.0 * lam) - 4.0).abs() < 1e-12);
    }
}
