use cohstate::families::{self, DfbDeformation, Family, FamilySpec};
use cohstate::photostats::{detected_moments, detection_distribution, PhotonStatistics};
use cohstate::Complex64;
use proptest::prelude::*;

fn infinite_specs() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        Just(FamilySpec::GlauberSudarshan {}),
        (0u32..6).prop_map(|s| FamilySpec::DisplacedNumber { s }),
        (0.2f64..1.8).prop_map(|q| FamilySpec::QDeformed { q }),
        (0.6f64..4.0).prop_map(|kappa| FamilySpec::BarutGirardello { kappa }),
        Just(FamilySpec::SusskindGlogowerModified {}),
    ]
}

fn spec_and_alpha() -> impl Strategy<Value = (FamilySpec, Complex64)> {
    let finite = prop_oneof![
        (1u32..30).prop_map(|n_j| FamilySpec::Spin { n_j }),
        (1u32..12).prop_flat_map(|n_j| (Just(n_j), 0..=n_j)).prop_map(|(n_j, s)| FamilySpec::SpinJacobi { n_j, s }),
    ];
    let plane = (infinite_specs(), 0.0f64..3.0, -3.2f64..3.2).prop_map(|(f, r, t)| (f, Complex64::from_polar(r, t)));
    let spin = (finite, 0.0f64..5.0, -3.2f64..3.2).prop_map(|(f, r, t)| (f, Complex64::from_polar(r, t)));
    let disc = (0.5f64..3.0, 0u32..4, 0.0f64..0.95, -3.2f64..3.2)
        .prop_map(|(kappa, s, r, t)| (FamilySpec::Su11Perelomov { kappa, s }, Complex64::from_polar(r, t)));
    prop_oneof![plane, spin, disc]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn states_are_normalized((spec, a) in spec_and_alpha()) {
        let f = Family::new(spec).unwrap();
        let cut = f.required_cutoff(a, 1e-13).unwrap();
        let v = f.coefficients(a, &cut).unwrap();
        prop_assert!((v.norm_sqr() - 1.0).abs() <= 1e-9 + v.tail_mass);
    }

    #[test]
    fn an_profile_reproduces_coefficients((spec, a) in spec_and_alpha()) {
        let f = Family::new(spec).unwrap();
        prop_assume!(f.is_an_class() && a.norm() > 1e-3);
        let cut = f.required_cutoff(a, 1e-13).unwrap();
        let v = f.coefficients(a, &cut).unwrap();
        let phase = match f.spec() {
            FamilySpec::SpinJacobi { s, .. } => Complex64::from_polar(if s % 2 == 0 { 1.0 } else { -1.0 }, -(*s as f64) * a.arg()),
            _ => Complex64::new(1.0, 0.0),
        };
        for n in 0..v.coeffs.len().min(25) {
            let want = phase * a.powu(n as u32) * f.an_profile(n, a.norm_sqr()).unwrap();
            prop_assert!((v.coeffs[n] - want).norm() <= 1e-12 * (1.0 + want.norm()), "n = {}: {} vs {}", n, v.coeffs[n], want);
        }
    }

    #[test]
    fn dfb_distribution_reflects(c0 in 0.0f64..0.3, c1 in 0.0f64..0.3, n in 1usize..25, xi in 0.0f64..1.0) {
        // linear a_2 keeps a_2(xi) + a_2(1 - xi) constant, so x_n is derivable
        let a2 = vec![c0, c1];
        let def = DfbDeformation { a_polys: vec![a2], ..Default::default() };
        let p = families::dfb_distribution(&def, n, xi).unwrap();
        let r = families::dfb_distribution(&def, n, 1.0 - xi).unwrap();
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        for k in 0..=n {
            prop_assert!((p[k] - r[n - k]).abs() < 1e-10);
        }
    }

    #[test]
    fn loss_scales_moments((spec, a) in spec_and_alpha(), eta in 0.0f64..=1.0) {
        let f = Family::new(spec).unwrap();
        let cut = f.required_cutoff(a, 1e-14).unwrap();
        let v = f.coefficients(a, &cut).unwrap();
        let s = PhotonStatistics::from_probabilities(v.probabilities(), v.tail_mass);
        let d = detection_distribution(&s.probabilities, eta).unwrap();
        let total: f64 = d.iter().sum();
        let mean: f64 = d.iter().enumerate().map(|(m, p)| m as f64 * p).sum::<f64>();
        let var = d.iter().enumerate().map(|(m, p)| (m as f64 - mean).powi(2) * p).sum::<f64>();
        let (m_closed, v_closed) = detected_moments(&s, eta).unwrap();
        prop_assert!((total - s.probabilities.iter().sum::<f64>()).abs() < 1e-12);
        prop_assert!((mean - eta * s.nbar).abs() < 1e-9 * (1.0 + s.nbar));
        prop_assert!((mean - m_closed).abs() < 1e-9 * (1.0 + s.nbar));
        prop_assert!((var - v_closed).abs() < 1e-8 * (1.0 + s.variance));
    }
}
