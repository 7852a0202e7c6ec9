use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use riesz_average::cases::{
    decomposition_total, dominance_certificate, eval_term, full_integral, part_e_certificate, total_report,
    CaseConfig, CaseKind, FullMethod, Integrand, Precision, Term,
};
use riesz_average::piecewise::{make_f_piece, make_small_f};
use riesz_average::quadrature::{integrate_domain, QuadratureConfig};
use riesz_average::regions::{ArcEndpoint, Domain, PhiArc, ThetaBound};

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(99)
}

#[test]
fn lobe_signs_hold_pointwise() {
    let tent = make_small_f::<f64>();
    let mut rng = rng();
    for _ in 0..100_000 {
        let theta: f64 = rng.random_range(0.0..FRAC_PI_2 - 1e-6);
        let phi: f64 = rng.random_range(0.0..TAU);
        let (c, s) = (theta.cos(), theta.sin());
        let t = rng.random_range(0.0..2.0 / c);
        let ff = tent.eval(t * s * phi.cos()) * tent.eval(t * s * phi.sin());
        let piece = |i| make_f_piece(i, c).unwrap().eval(t);
        let neg = t * t * (piece(1) + piece(2)) * ff;
        let pos = t * t * (piece(3) + piece(4)) * ff;
        assert!(neg <= 0.0 && pos >= 0.0, "t={t} θ={theta} φ={phi}: {neg}, {pos}");
    }
}

#[test]
fn certificates_hold() {
    assert!(dominance_certificate().holds);
    assert!(part_e_certificate().holds);
}

const QUARTER_PI: ThetaBound = ThetaBound::PiFraction { num: 1, den: 4 };

/// Each `(negative, positive)` bound pair and the rectangle it covers.
fn bound_pairs() -> Vec<(Term, Term, Domain)> {
    let quarter = PhiArc::new(ArcEndpoint::pi(-1, 4), ArcEndpoint::pi(1, 4));
    let full = PhiArc::new(ArcEndpoint::pi(0, 1), ArcEndpoint::pi(2, 1));
    vec![
        (Term::Neg24, Term::Pos24, Domain::rectangle(QUARTER_PI, ThetaBound::Theta3, full, 1)),
        (
            Term::FNeg,
            Term::FPos,
            Domain::rectangle(ThetaBound::acot(2, 4), ThetaBound::acot_sqrt2(2, 4), quarter, 4),
        ),
        (
            Term::GNeg,
            Term::GPos,
            Domain::rectangle(ThetaBound::acot(3, 4), ThetaBound::acot_sqrt2(3, 4), quarter, 4),
        ),
    ]
}

#[test]
fn upper_bounds_dominate_the_true_integrals() {
    let cfg = CaseConfig::default();
    let tol = cfg.quadrature.tolerance();
    for (neg, pos, domain) in bound_pairs() {
        assert_eq!(eval_term(pos, &cfg).unwrap().kind, CaseKind::UpperBound);
        let bound = eval_term(neg, &cfg).unwrap().value.value + eval_term(pos, &cfg).unwrap().value.value;
        let truth = integrate_domain(&domain, |t, p| Ok(Integrand::Xi3.eval(t, p)?), tol).unwrap();
        assert!(bound >= truth.value - truth.error, "{neg}+{pos}: {bound} < {}", truth.value);
    }
}

#[test]
fn bounds_hold_pointwise() {
    let mut rng = rng();
    let theta3 = 2f64.sqrt().atan();
    let f_range = ((2.0f64 / 4.0).recip().atan(), (4.0 * 2f64.sqrt() / 2.0).atan());
    let g_range = ((4.0f64 / 3.0).atan(), (4.0 * 2f64.sqrt() / 3.0).atan());
    for _ in 0..5_000 {
        let phi = rng.random_range(-FRAC_PI_4..FRAC_PI_4);
        let ev = |i: Integrand, t: f64| i.eval(t, phi).unwrap();

        let t = rng.random_range(FRAC_PI_4..theta3);
        let phi_full = rng.random_range(0.0..TAU);
        let xi = Integrand::Xi3.eval(t, phi_full).unwrap();
        let neg = Integrand::NegPart.eval(t, phi_full).unwrap();
        let tilde = Integrand::TildeWithF.eval(t, phi_full).unwrap();
        assert!(tilde >= xi - neg - 1e-14, "Cases 2/4 at θ={t}");

        let t = rng.random_range(f_range.0..f_range.1);
        assert!(ev(Integrand::H1, t) + ev(Integrand::TildeNoF, t) >= ev(Integrand::Xi3, t) - 1e-14, "F at θ={t}");

        let t = rng.random_range(g_range.0..g_range.1);
        assert!(ev(Integrand::NegPart, t) + ev(Integrand::TildeWithF, t) >= ev(Integrand::Xi3, t) - 1e-14, "G at θ={t}");
    }
}

#[test]
fn decomposition_matches_direct_integral() {
    let cfg = QuadratureConfig::default();
    let parts = decomposition_total(&cfg).unwrap();
    let direct = full_integral(3, FullMethod::DirectQuadrature, &cfg).unwrap();
    let diff = (parts.value - direct.value).abs();
    assert!(diff <= 3.0 * (parts.error + direct.error) + 1e-12, "{} vs {}", parts.value, direct.value);
    assert!(parts.value < 0.0);
}

#[test]
fn sign_argument_encloses_its_quadrature() {
    let r = eval_term(Term::C3E, &CaseConfig::default()).unwrap();
    assert_eq!(r.kind, CaseKind::SignArgument);
    let enc = r.enclosure.unwrap();
    assert_eq!(enc.hi(), 0.0);
    assert!(enc.contains(r.cross_check.unwrap()));
}

#[test]
fn interval_total_is_strictly_negative() {
    let cfg = CaseConfig {
        precision: Precision::Interval,
        oracle: false,
        ..CaseConfig::default()
    };
    let report = total_report(&cfg).unwrap();
    assert!(report.total_upper_bound < 0.0, "{}", report.total_upper_bound);
    assert!(report.sign_conclusion);
}

#[test]
fn float_reports_are_deterministic() {
    let cfg = CaseConfig {
        quadrature: QuadratureConfig {
            mc_samples: 50_000,
            ..Default::default()
        },
        ..CaseConfig::default()
    };
    let a = total_report(&cfg).unwrap().to_json();
    let b = total_report(&cfg).unwrap().to_json();
    assert_eq!(a, b);
}
