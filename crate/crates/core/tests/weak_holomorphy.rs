use num_complex::Complex64;
use shrinkerlab_core::weakholo::{
    cauchy_pompeiu_residual, direction_field_index, kq_constant, kq_disc_contribution,
    kq_monte_carlo, weak_bound_margin, zero_order_loglog, zero_order_winding, DiscDomain,
    FieldOnDisc, GrowthBound, HalfInteger,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn kq_increases_toward_two_and_matches_sampling() {
    let vals: Vec<f64> = [1.5, 1.8, 1.95].iter().map(|&q| kq_constant(q, 1e-8).unwrap().value).collect();
    assert!(vals[0] < vals[1] && vals[1] < vals[2], "{vals:?}");
    let mc = kq_monte_carlo(1.5, 1 << 22, 7).unwrap();
    assert!((mc.value / vals[0] - 1.0).abs() < 0.005, "{} vs {}", mc.value, vals[0]);
}

#[test]
fn small_disc_piece_scales_like_the_leading_term() {
    for q in [1.5, 1.8] {
        let eps: f64 = 1e-3;
        let leading = 2.0 * std::f64::consts::PI * eps.powf(2.0 - q) / (2.0 - q);
        let got = kq_disc_contribution(q, eps).unwrap();
        assert!((got / leading - 1.0).abs() < 0.05, "q={q}");
    }
}

#[test]
fn pompeiu_on_an_off_center_disc() {
    let d = DiscDomain::new(c(0.3, -0.2), 0.8, 128).unwrap();
    let f = FieldOnDisc::parse("(z-0.3+0.2i)^2*zbar").unwrap();
    let r = cauchy_pompeiu_residual(&f, 2, c(0.25, 0.1), &d).unwrap();
    assert!(r < 1e-4, "{r}");
}

#[test]
fn order_and_index_agree_on_products() {
    let f = FieldOnDisc::parse("(z-0.2)^2*(3+z)").unwrap();
    let g = f.times(&FieldOnDisc::parse("exp(z)").unwrap());
    let radii: Vec<f64> = (0..6).map(|j| 0.05 / 2f64.powi(j)).collect();
    for h in [&f, &g] {
        let rep = zero_order_loglog(h, c(0.2, 0.0), &radii).unwrap();
        assert!((rep.order_loglog - 2.0).abs() <= 0.01);
        assert_eq!(rep.order_winding, 2);
        assert_eq!(zero_order_winding(h, c(0.2, 0.0), 0.05).unwrap(), 2);
        assert_eq!(direction_field_index(h, c(0.2, 0.0), 0.05).unwrap(), HalfInteger(-2));
    }
}

#[test]
fn growth_bound_semantics() {
    let d = DiscDomain::new(c(0.0, 0.0), 0.5, 48).unwrap();
    let f = FieldOnDisc::parse("z*exp(zbar)").unwrap();
    assert!(weak_bound_margin(&f, &GrowthBound::linear(2.0, 3.0).unwrap(), &d) >= 0.0);
    assert!(weak_bound_margin(&f, &GrowthBound::linear(0.5, 3.0).unwrap(), &d) < 0.0);
}
