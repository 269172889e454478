//! One function per command: compute, tabulate, tag.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use shrinkerlab_core::numerics::fit::loglog_fit;
use shrinkerlab_core::rotational::series::{derived_a4, reference_a4, DEFAULT_SERIES_ORDER, SERIES_SWITCH_X};
use shrinkerlab_core::rotational::{
    axis_ratio_limit, curvature_sample, integrate_arclength, integrate_graph, series_coefficients,
    shoot_profile, umbilic_scan, zero_order_report, ArcState, LpIntegrand, ProfileSeries, ShotClass,
    UmbilicScan,
};
use shrinkerlab_core::surface::{
    by_name, codazzi_residual, default_step, lambda_sphere_radius, qzbar_identity,
    sphere_radius_for_weight, surface_grid, ParametricSurface, SurfaceGridRow, WeightSpec,
};
use shrinkerlab_core::weakholo::{
    cauchy_pompeiu, direction_field_index, kq_constant, kq_disc_contribution, kq_monte_carlo,
    zero_order_loglog, zero_order_winding, DiscDomain, FieldOnDisc,
};

use crate::config::{ctx, CliError, RunConfig};
use crate::report::{num, Cell, Comparison, Output, Provenance, ResultEntry, Table};
use crate::svg::{plot, Series};

use Comparison::{Absolute, AtLeast, AtMost, Relative};
use Provenance::{DerivedOracle, Measured, PaperFormula};

fn bad(key: &str, value: &str, reason: &str) -> CliError {
    CliError::BadParameter { key: key.into(), value: value.into(), reason: reason.into() }
}

pub fn profile(cfg: &RunConfig) -> Result<Output, CliError> {
    let b = cfg.f64("b")?;
    let tol = cfg.f64("tol")?;
    let n = cfg.usize("samples")?.max(2);
    let mut out = Output::default();
    let chart = cfg.str("chart");
    let points: Vec<(f64, f64)>;
    match chart {
        "graph" => {
            let x_end = cfg.f64("x-end")?;
            let curve = ctx("graph-chart integration", integrate_graph(b, x_end, tol))?;
            let (_, x_hi) = curve.range();
            let mut t = Table::new("profile.csv", &["x", "gamma", "gamma_p", "H", "phi_norm"]);
            let mut sphere_err: f64 = 0.0;
            let mut plane_err: f64 = 0.0;
            let mut pts = Vec::new();
            for j in 1..=n {
                let x = x_hi * j as f64 / n as f64;
                let Some(st) = curve.graph_state_at(x) else { continue };
                let c = ctx("curvature", curvature_sample(&st))?;
                t.push(vec![x.into(), st.gamma.into(), st.gamma_p.into(), c.h.into(), c.phi_norm.into()]);
                pts.push((x, st.gamma));
                if x >= SERIES_SWITCH_X {
                    sphere_err = sphere_err.max((st.gamma - (4.0 - x * x).sqrt()).abs());
                }
                plane_err = plane_err.max(st.gamma.abs());
            }
            out.results.push(ResultEntry::info(
                "termination",
                Measured,
                serde_json::to_value(curve.termination).expect("serializes"),
            ));
            out.results.push(ResultEntry::info("x_final", Measured, num(x_hi)));
            if b == 2.0 {
                out.results.push(ResultEntry::check(
                    "max |gamma - sqrt(4 - x^2)|",
                    sphere_err,
                    0.0,
                    DerivedOracle,
                    AtMost,
                    1e-8,
                ));
            }
            if b == 0.0 {
                out.results.push(ResultEntry::check("max |gamma|", plane_err, 0.0, DerivedOracle, AtMost, 1e-12));
            }
            out.tables.push(t);
            points = pts;
        }
        "arclength" => {
            let s_end = cfg.f64("s-end")?;
            let series = ctx("series start", ProfileSeries::new(b, DEFAULT_SERIES_ORDER))?;
            let start = ArcState::from_graph(&series.state(SERIES_SWITCH_X), 0.0);
            let curve = ctx("arclength integration", integrate_arclength(start, s_end, tol))?;
            let (s0, s1) = curve.range();
            let mut t = Table::new("profile.csv", &["s", "x", "y", "theta"]);
            let mut pts = Vec::new();
            for j in 0..n {
                let s = s0 + (s1 - s0) * j as f64 / (n - 1) as f64;
                let Some(a) = curve.arc_state_at(s) else { continue };
                t.push(vec![s.into(), a.x.into(), a.y.into(), a.theta.into()]);
                pts.push((a.x, a.y));
            }
            out.results.push(ResultEntry::info(
                "termination",
                Measured,
                serde_json::to_value(curve.termination).expect("serializes"),
            ));
            out.results.push(ResultEntry::info("s_final", Measured, num(s1)));
            out.results.push(ResultEntry::info(
                "events",
                Measured,
                serde_json::to_value(&curve.events).expect("serializes"),
            ));
            out.tables.push(t);
            points = pts;
        }
        other => return Err(bad("chart", other, "expected 'graph' or 'arclength'")),
    }
    let circle: Vec<(f64, f64)> = (0..=90).map(|j| {
        let a = PI / 2.0 * j as f64 / 90.0;
        (2.0 * a.cos(), 2.0 * a.sin())
    }).collect();
    out.figures.push((
        "profile.svg".into(),
        plot(
            &format!("profile curve, b = {b}"),
            &[
                Series { label: "profile", points: &points, dashed: false },
                Series { label: "|X| = 2", points: &circle, dashed: true },
            ],
        ),
    ));
    Ok(out)
}

pub fn umbilics(cfg: &RunConfig) -> Result<Output, CliError> {
    let b = cfg.f64("b")?;
    let curve = ctx("graph-chart integration", integrate_graph(b, cfg.f64("x-end")?, cfg.f64("tol")?))?;
    let scan = ctx("umbilic scan", umbilic_scan(&curve))?;
    let mut out = Output::default();
    let mut t = Table::new("umbilics.csv", &["x"]);
    match &scan {
        UmbilicScan::TotallyUmbilic => {
            out.results.push(ResultEntry::info("totally_umbilic", Measured, true));
        }
        UmbilicScan::Points(xs) => {
            out.results.push(ResultEntry::info("totally_umbilic", Measured, false));
            out.results.push(ResultEntry::info("count", Measured, xs.len()));
            for &x in xs {
                t.push(vec![x.into()]);
            }
        }
    }
    out.results.push(ResultEntry::info("x_final", Measured, num(curve.range().1)));
    out.tables.push(t);
    Ok(out)
}

pub fn lp_check(cfg: &RunConfig) -> Result<Output, CliError> {
    let (b, p, eps) = (cfg.f64("b")?, cfg.f64("p")?, cfg.f64("eps")?);
    let deltas = cfg.f64_list("deltas")?;
    if deltas.len() < 2 {
        return Err(bad("deltas", cfg.str("deltas"), "need at least two values"));
    }
    let lp = ctx("L^p integrand", LpIntegrand::new(b, p, eps))?;
    let mut t = Table::new("lp.csv", &["delta", "integral"]);
    let mut vals = Vec::new();
    for &d in &deltas {
        let v = ctx("L^p integral", lp.integral(d))?;
        t.push(vec![d.into(), v.into()]);
        vals.push(v);
    }
    let fit = loglog_fit(&deltas, &vals);
    let mut out = Output::default();
    out.results.push(ResultEntry::check("divergence exponent", fit.slope, 2.0 - p, PaperFormula, Absolute, 0.05));
    out.results.push(ResultEntry::info("fit_residual", Measured, num(fit.residual)));
    out.tables.push(t);
    Ok(out)
}

pub fn axis_limit(cfg: &RunConfig) -> Result<Output, CliError> {
    let mut out = Output::default();
    let mut t = Table::new("axis-limit.csv", &["b", "x", "x_ratio", "richardson"]);
    for b in cfg.f64_list("b")? {
        let r = ctx("axis ratio limit", axis_ratio_limit(b))?;
        let z = ctx("axis zero orders", zero_order_report(b))?;
        for i in 0..r.xs.len() {
            let rich = r.richardson.get(i).copied().unwrap_or(f64::NAN);
            t.push(vec![b.into(), r.xs[i].into(), r.values[i].into(), rich.into()]);
        }
        out.results.push(ResultEntry::check(
            format!("x*ratio limit (b = {b})"),
            r.limit,
            r.series_predicted,
            DerivedOracle,
            Relative,
            1e-4,
        ));
        out.results.push(ResultEntry::check(
            format!("richardson stability, relative (b = {b})"),
            r.limit_error / r.limit.abs(),
            0.0,
            DerivedOracle,
            AtMost,
            1e-4,
        ));
        out.results.push(ResultEntry::info(format!("published closed form (b = {b})"), PaperFormula, num(r.reference_closed_form)));
        out.results.push(ResultEntry::check(format!("order of |Phi|^2 (b = {b})"), z.phi_sq_order, 4.0, DerivedOracle, Absolute, 0.1));
        out.results.push(ResultEntry::check(
            format!("order of (|X|^2 - 4H^2) H^2 (b = {b})"),
            z.defect_h_sq_order,
            2.0,
            DerivedOracle,
            Absolute,
            0.1,
        ));
        out.results.push(ResultEntry::check(format!("order difference (b = {b})"), z.criterion, 2.0, DerivedOracle, Absolute, 0.2));
        out.results.push(ResultEntry::info(format!("order difference below 2 (b = {b})"), Measured, z.criterion_satisfied));
    }
    out.tables.push(t);
    Ok(out)
}

/// Coefficients of `sqrt(4 - x^2) = 2 sqrt(1 - x^2/4)` in even powers.
fn binomial_sphere(n_terms: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_terms);
    let mut c = 1.0; // binom(1/2, k)
    for k in 0..n_terms {
        if k > 0 {
            c *= (0.5 - (k - 1) as f64) / k as f64;
        }
        out.push(2.0 * c * (-0.25f64).powi(k as i32));
    }
    out
}

pub fn taylor_audit(cfg: &RunConfig) -> Result<Output, CliError> {
    let bs = cfg.f64_list("b")?;
    let order = cfg.usize("order")?;
    let mut out = Output::default();
    let mut coeffs_t = Table::new("taylor-coefficients.csv", &["b", "power", "coefficient"]);
    let mut a4_t = Table::new("taylor-a4.csv", &["b", "a4_computed", "a4_published", "difference"]);
    for &b in &bs {
        let a = ctx("series coefficients", series_coefficients(b, order))?;
        for (k, c) in a.iter().enumerate() {
            coeffs_t.push(vec![b.into(), ((2 * k) as f64).into(), (*c).into()]);
        }
        out.results.push(ResultEntry::check(format!("a2 (b = {b})"), a[1], -b / 8.0, PaperFormula, Absolute, 1e-12));
        let published = reference_a4(b);
        a4_t.push(vec![b.into(), a[2].into(), published.into(), (a[2] - published).into()]);
        out.results.push(ResultEntry::check(format!("a4 (b = {b})"), a[2], derived_a4(b), DerivedOracle, Absolute, 1e-12));
        out.results.push(ResultEntry::info(format!("a4 published (b = {b})"), PaperFormula, num(published)));
        out.results.push(ResultEntry::info(format!("a4 published minus computed (b = {b})"), Measured, num(published - a[2])));

        let s = ctx("series", ProfileSeries::new(b, order))?;
        let xs: Vec<f64> = (0..9).map(|j| 1e-3 * 10f64.powf(j as f64 / 4.0)).collect();
        let rs: Vec<f64> = xs.iter().map(|&x| s.ode_residual(x).abs()).collect();
        if rs.iter().all(|r| *r > 0.0) {
            let fit = loglog_fit(&xs, &rs);
            out.results.push(ResultEntry::check(
                format!("ODE residual slope (b = {b})"),
                fit.slope,
                6.8,
                DerivedOracle,
                AtLeast,
                0.0,
            ));
        } else {
            out.results.push(ResultEntry::info(format!("ODE residual slope (b = {b})"), Measured, "residual vanishes"));
        }
        if b == 2.0 {
            let want = binomial_sphere(a.len());
            let err = a.iter().zip(&want).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            out.results.push(ResultEntry::check("max binomial mismatch (b = 2)", err, 0.0, DerivedOracle, AtMost, 1e-12));
        }
    }
    out.tables.push(coeffs_t);
    out.tables.push(a4_t);
    Ok(out)
}

pub fn kq(cfg: &RunConfig) -> Result<Output, CliError> {
    let qs = cfg.f64_list("q")?;
    let tol = cfg.f64("tol")?;
    let samples = cfg.u64("samples")?;
    let seed = cfg.u64("seed")?;
    let eps = cfg.f64("eps")?;
    let mut out = Output::default();
    let mut t = Table::new(
        "kq.csv",
        &["q", "value", "abs_error", "mc_value", "mc_std_error", "disc_contribution", "disc_leading_term"],
    );
    let mut values = Vec::new();
    for &q in &qs {
        let k = ctx("K_q decomposition", kq_constant(q, tol))?;
        let mc = ctx("K_q Monte Carlo", kq_monte_carlo(q, samples, seed))?;
        let disc = ctx("K_q disc contribution", kq_disc_contribution(q, eps))?;
        let leading = 2.0 * PI * eps.powf(2.0 - q) / (2.0 - q);
        t.push(vec![
            q.into(),
            k.value.into(),
            k.abs_error.into(),
            mc.value.into(),
            mc.std_error.into(),
            disc.into(),
            leading.into(),
        ]);
        out.results.push(ResultEntry::info(format!("K_q (q = {q})"), Measured, num(k.value)));
        if q == 1.5 {
            out.results.push(ResultEntry::check(
                "Monte Carlo vs K_q (q = 1.5)",
                mc.value,
                k.value,
                DerivedOracle,
                Relative,
                0.005,
            ));
        } else {
            out.results.push(ResultEntry::info(format!("Monte Carlo (q = {q})"), Measured, num(mc.value)));
        }
        out.results.push(ResultEntry::check(
            format!("disc contribution (q = {q}, eps = {eps})"),
            disc,
            leading,
            PaperFormula,
            Relative,
            0.05,
        ));
        values.push(k.value);
    }
    if values.len() > 1 {
        let min_step = values.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        out.results.push(ResultEntry::check(
            "K_q increments (minimum, strictly positive)",
            min_step,
            0.0,
            DerivedOracle,
            AtLeast,
            0.0,
        ));
        if let Some(last) = out.results.last_mut() {
            last.pass = Some(min_step > 0.0);
        }
    }
    out.tables.push(t);
    Ok(out)
}

fn field(cfg: &RunConfig) -> Result<FieldOnDisc, CliError> {
    ctx("field expression", FieldOnDisc::parse(cfg.str("field")))
}

pub fn pompeiu(cfg: &RunConfig) -> Result<Output, CliError> {
    let f = field(cfg)?;
    let k = cfg.usize("k")? as u32;
    let xi = cfg.complex("xi")?;
    let center = cfg.complex("center")?;
    let radius = cfg.f64("radius")?;
    let grids: Vec<usize> = cfg.f64_list("grids")?.iter().map(|g| *g as usize).collect();
    let mut out = Output::default();
    let mut t = Table::new(
        "pompeiu.csv",
        &["grid_n", "residual", "lhs_re", "lhs_im", "boundary_re", "boundary_im", "area_re", "area_im"],
    );
    let mut steps = Vec::new();
    let mut res = Vec::new();
    for &n in &grids {
        let d = ctx("disc", DiscDomain::new(center, radius, n))?;
        let bd = ctx("Cauchy-Pompeiu", cauchy_pompeiu(&f, k, xi, &d))?;
        t.push(vec![
            (n as f64).into(),
            bd.residual.into(),
            bd.lhs[0].into(),
            bd.lhs[1].into(),
            bd.boundary[0].into(),
            bd.boundary[1].into(),
            bd.area[0].into(),
            bd.area[1].into(),
        ]);
        steps.push(radius / n as f64);
        res.push(bd.residual);
    }
    let finest = *res.last().ok_or_else(|| bad("grids", cfg.str("grids"), "need at least one grid"))?;
    let holomorphic = (1..8).all(|j| {
        let z = center + Complex64::from_polar(0.6 * radius, j as f64);
        f.h_zbar(z).norm() == 0.0
    });
    let tol = if holomorphic { 1e-6 } else { 1e-5 };
    out.results.push(ResultEntry::check("residual (finest grid)", finest, 0.0, DerivedOracle, AtMost, tol));
    if res.len() > 1 && res.iter().all(|r| *r > 1e-13) {
        let fit = loglog_fit(&steps, &res);
        out.results.push(ResultEntry::check("refinement order", fit.slope, 2.0, DerivedOracle, Absolute, 0.3));
    }
    out.tables.push(t);
    Ok(out)
}

pub fn order(cfg: &RunConfig) -> Result<Output, CliError> {
    let f = field(cfg)?;
    let z0 = cfg.complex("z0")?;
    let radii = cfg.f64_list("radii")?;
    let rep = ctx("zero order", zero_order_loglog(&f, z0, &radii))?;
    let mut t = Table::new("order.csv", &["radius", "winding"]);
    for &r in &radii {
        let w = ctx("winding number", zero_order_winding(&f, z0, r))?;
        t.push(vec![r.into(), (w as f64).into()]);
    }
    let mut out = Output::default();
    out.results.push(ResultEntry::info("order_loglog", Measured, num(rep.order_loglog)));
    out.results.push(ResultEntry::info("order_winding", Measured, rep.order_winding));
    out.results.push(ResultEntry::info("fit_residual", Measured, num(rep.fit_residual)));
    out.tables.push(t);
    Ok(out)
}

pub fn index(cfg: &RunConfig) -> Result<Output, CliError> {
    let f = field(cfg)?;
    let z0 = cfg.complex("z0")?;
    let r = cfg.f64("r")?;
    let idx = ctx("direction field index", direction_field_index(&f, z0, r))?;
    let w = ctx("winding number", zero_order_winding(&f, z0, r))?;
    let mut out = Output::default();
    out.results.push(ResultEntry::info("index", Measured, idx.to_string()));
    out.results.push(ResultEntry::info("index_value", Measured, num(idx.value())));
    out.results.push(ResultEntry::info("winding", Measured, w));
    Ok(out)
}

fn parse_weight(cfg: &RunConfig) -> Result<(WeightSpec, Option<f64>), CliError> {
    let s = cfg.str("weight");
    let (kind, val) = s.split_once(':').ok_or_else(|| bad("weight", s, "expected linear:<c> or constant:<c>"))?;
    let c: f64 = val.trim().parse().map_err(|_| bad("weight", s, "coefficient is not a number"))?;
    match kind.trim() {
        "linear" => Ok((WeightSpec::linear(c), Some(c))),
        "constant" => Ok((WeightSpec::constant(c), None)),
        _ => Err(bad("weight", s, "expected linear:<c> or constant:<c>")),
    }
}

fn slug(name: &str) -> String {
    let mut s: String = name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '.' { c } else { '-' }).collect();
    while s.contains("--") {
        s = s.replace("--", "-");
    }
    s.trim_matches('-').to_string()
}

/// Fixtures known to solve the shrinker equation.
fn is_shrinker(s: &ParametricSurface) -> bool {
    let mut it = s.name.split_whitespace();
    let kind = it.next().unwrap_or("");
    let arg: Option<f64> = it.next().and_then(|a| a.parse().ok());
    match (kind, arg) {
        ("plane", _) => true,
        ("sphere", Some(r)) => (r - 2.0).abs() < 1e-12,
        ("cylinder", Some(r)) => (r - SQRT_2).abs() < 1e-12,
        _ => false,
    }
}

pub fn surface_suite(cfg: &RunConfig) -> Result<Output, CliError> {
    let (weight, linear_c) = parse_weight(cfg)?;
    let n = cfg.usize("grid")?;
    let steps = cfg.f64_list("steps")?;
    let mut out = Output::default();
    for name in cfg.name_list("fixtures") {
        let s = ctx(&format!("fixture '{name}'"), by_name(&name))?;
        let rows = ctx(&format!("grid on '{name}'"), surface_grid(&s, &weight, n))?;
        let mut t = Table::new(format!("surface-{}.csv", slug(&name)), &SurfaceGridRow::COLUMNS);
        for r in &rows {
            t.push(r.values().iter().map(|x| Cell::Num(*x)).collect());
        }
        out.tables.push(t);
        let max = |f: fn(&SurfaceGridRow) -> f64| rows.iter().map(f).fold(0.0, f64::max);
        out.results.push(ResultEntry::check(
            format!("{name}: max |Phi|^2 vs (8/alpha^2)|P|^2 (relative)"),
            max(|r| r.hopf_norm_defect),
            0.0,
            PaperFormula,
            AtMost,
            1e-8,
        ));
        let shrink = max(|r| r.shrinker_residual.abs());
        if is_shrinker(&s) {
            out.results.push(ResultEntry::check(format!("{name}: max |H + <X,nu>/2|"), shrink, 0.0, DerivedOracle, AtMost, 1e-10));
        } else {
            out.results.push(ResultEntry::info(format!("{name}: max |H + <X,nu>/2|"), Measured, num(shrink)));
        }
        out.results.push(ResultEntry::check(
            format!("{name}: max Q_zbar identity residual"),
            max(|r| r.qzbar_residual),
            0.0,
            DerivedOracle,
            AtMost,
            1e-5,
        ));
        let step = default_step(&s);
        let mut codazzi: f64 = 0.0;
        for (u, v) in s.domain.grid(n) {
            codazzi = codazzi.max(ctx("Codazzi residual", codazzi_residual(&s, u, v, step))?);
        }
        out.results.push(ResultEntry::check(
            format!("{name}: max Codazzi residual"),
            codazzi,
            0.0,
            PaperFormula,
            AtMost,
            1e-5,
        ));

        // step ladder at a generic point where the identity is not trivially 0 = 0
        let d = s.domain;
        let (u, v) = (d.u.0 + 0.37 * (d.u.1 - d.u.0), d.v.0 + 0.61 * (d.v.1 - d.v.0));
        let probe = ctx("Q_zbar identity", qzbar_identity(&s, &weight, u, v, step))?;
        if probe.closed_form.norm() > 1e-6 && steps.len() > 1 {
            let hs: Vec<f64> = steps.iter().map(|f| f * d.scale()).collect();
            let mut rs = Vec::new();
            for &h in &hs {
                rs.push(ctx("Q_zbar ladder", qzbar_identity(&s, &weight, u, v, h))?.residual);
            }
            let fit = loglog_fit(&hs, &rs);
            out.results.push(ResultEntry::check(
                format!("{name}: Q_zbar residual step order"),
                fit.slope,
                2.0,
                DerivedOracle,
                Absolute,
                0.3,
            ));
        }
    }

    match sphere_radius_for_weight(&weight) {
        Ok(r) => {
            if let Some(c) = linear_c {
                let prov = if c == 0.25 { PaperFormula } else { DerivedOracle };
                out.results.push(ResultEntry::check("sphere radius for weight", r, 1.0 / c.sqrt(), prov, Relative, 1e-12));
            } else {
                out.results.push(ResultEntry::info("sphere radius for weight", Measured, num(r)));
            }
        }
        Err(e) => out.results.push(ResultEntry::info("sphere radius for weight", Measured, e.to_string())),
    }
    let mut t = Table::new("lambda-radius.csv", &["lambda", "radius", "identity_residual"]);
    for lam in cfg.f64_list("lambdas")? {
        let r = lambda_sphere_radius(lam);
        let id = r * (r + 2.0 * lam);
        t.push(vec![lam.into(), r.into(), (id - 4.0).into()]);
        out.results.push(ResultEntry::check(format!("R(R + 2 lambda) (lambda = {lam})"), id, 4.0, DerivedOracle, Absolute, 1e-12));
    }
    out.tables.push(t);
    Ok(out)
}

pub fn shoot(cfg: &RunConfig) -> Result<Output, CliError> {
    let recs = ctx("shooting sweep", shoot_profile(cfg.f64("b-lo")?, cfg.f64("b-hi")?, cfg.usize("n")?))?;
    let mut t = Table::new(
        "shoot.csv",
        &["b", "class", "s_final", "x_final", "y_final", "theta_final", "height_zero_crossings", "first_zero_x", "max_sphere_defect"],
    );
    let mut out = Output::default();
    for r in &recs {
        let class = match r.class {
            ShotClass::ClosedSphere => "closed_sphere".to_string(),
            ShotClass::AxisReturn { smooth } => format!("axis_return{}", if smooth { "_smooth" } else { "" }),
            ShotClass::Escape => "escape".into(),
            ShotClass::HeightZero { first_outside_sphere } => {
                format!("height_zero_{}", if first_outside_sphere { "outside" } else { "inside" })
            }
            ShotClass::BudgetExhausted => "budget_exhausted".into(),
        };
        t.push(vec![
            r.b.into(),
            class.into(),
            r.s_final.into(),
            r.x_final.into(),
            r.y_final.into(),
            r.theta_final.into(),
            (r.height_zero_crossings as f64).into(),
            r.first_height_zero.map_or(f64::NAN, |(_, x)| x).into(),
            r.max_sphere_defect.into(),
        ]);
    }
    out.results.push(ResultEntry::info("trajectories", Measured, recs.len()));
    out.tables.push(t);
    Ok(out)
}
