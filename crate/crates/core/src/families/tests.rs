use super::*;
use approx::assert_relative_eq;

fn fam(spec: FamilySpec) -> Family {
    Family::new(spec).unwrap()
}

fn cut(n: usize) -> FockCutoff {
    FockCutoff::new(n, 1e-12).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn glauber_vacuum_at_origin() {
    let v = fam(FamilySpec::GlauberSudarshan {})
        .coefficients(c(0.0, 0.0), &cut(20))
        .unwrap();
    assert_relative_eq!(v.coeffs[0].re, 1.0, epsilon = 1e-15);
    assert!(v.coeffs[1..].iter().all(|z| z.norm() == 0.0));
}

#[test]
fn spin_two_at_one() {
    let v = fam(FamilySpec::Spin { n_j: 2 })
        .coefficients(c(1.0, 0.0), &cut(10))
        .unwrap();
    assert_eq!(v.len(), 3);
    let want = [0.5, 0.5f64.sqrt(), 0.5];
    for (z, w) in v.coeffs.iter().zip(want) {
        assert_relative_eq!(z.re, w, epsilon = 1e-15);
        assert_relative_eq!(z.im, 0.0, epsilon = 1e-15);
    }
}

#[test]
fn spin_jacobi_identity_and_reduction() {
    for s in 0..=4u32 {
        let f = fam(FamilySpec::SpinJacobi { n_j: 4, s });
        let v = f.coefficients(c(0.0, 0.0), &cut(10)).unwrap();
        for (n, z) in v.coeffs.iter().enumerate() {
            assert_relative_eq!(
                z.norm(),
                if n == s as usize { 1.0 } else { 0.0 },
                epsilon = 1e-14
            );
        }
    }
    let sj = fam(FamilySpec::SpinJacobi { n_j: 7, s: 0 });
    let sp = fam(FamilySpec::Spin { n_j: 7 });
    for a in [c(0.3, 0.2), c(-1.5, 0.7), c(4.0, -3.0)] {
        let x = sj.coefficients(a, &cut(10)).unwrap();
        let y = sp.coefficients(a, &cut(10)).unwrap();
        assert_eq!(x.coeffs, y.coeffs);
    }
}

#[test]
fn su11_ground_column_matches_closed_form() {
    for kappa in [0.5, 0.75, 1.0, 2.5] {
        let f = fam(FamilySpec::Su11Perelomov { kappa, s: 0 });
        let a = c(0.3, -0.4);
        let u = a.norm_sqr();
        let v = f.coefficients(a, &cut(200)).unwrap();
        for (n, z) in v.coeffs.iter().enumerate().take(30) {
            let h = (0.5
                * (ln_gamma(2.0 * kappa + n as f64)
                    - ln_gamma(2.0 * kappa)
                    - ln_factorial(n as u64)))
            .exp()
                * (1.0 - u).powf(kappa);
            let want = a.powu(n as u32) * h;
            assert!(
                (z - want).norm() <= 1e-13 * (1.0 + want.norm()),
                "kappa {kappa} n {n}"
            );
        }
    }
}

#[test]
fn su11_columns_are_unit_vectors() {
    for kappa in [0.75, 1.0, 2.0] {
        for s in [0u32, 1, 2, 5] {
            let f = fam(FamilySpec::Su11Perelomov { kappa, s });
            for r in [0.1, 0.5, 0.8] {
                let a = Complex64::from_polar(r, 0.7);
                let cf = f.required_cutoff(a, 1e-12).unwrap();
                let v = f.coefficients(a, &cf).unwrap();
                assert!(
                    (v.norm_sqr() - 1.0).abs() <= 1e-8 + v.tail_mass,
                    "kappa {kappa} s {s} r {r}"
                );
            }
        }
    }
}

#[test]
fn su11_domain_error() {
    let f = fam(FamilySpec::Su11Perelomov { kappa: 1.0, s: 0 });
    assert!(matches!(
        f.coefficients(c(1.0, 0.0), &cut(10)),
        Err(Error::Domain { .. })
    ));
}

#[test]
fn sgm_vacuum_and_small_u_profile() {
    let f = fam(FamilySpec::SusskindGlogowerModified {});
    let v = f.coefficients(c(0.0, 0.0), &cut(20)).unwrap();
    assert_eq!(v.coeffs[0].re, 1.0);
    for n in 0..6 {
        let want = ((n + 1) as f64).sqrt() / (-ln_factorial(n as u64 + 1)).exp().recip();
        assert_relative_eq!(f.an_profile(n, 0.0).unwrap(), want, max_relative = 1e-14);
    }
    // series branch and Bessel branch agree near the switch
    let u = 1.0;
    let r = f.radial_amplitudes(u, 5).unwrap();
    for n in 0..=5 {
        assert_relative_eq!(f.an_profile(n, u).unwrap(), r[n], max_relative = 1e-12);
    }
}

#[test]
fn an_examples() {
    let g = fam(FamilySpec::GlauberSudarshan {});
    assert_eq!(g.an_profile(0, 0.0).unwrap(), 1.0);
    for n_j in [1u32, 4, 9] {
        let s = fam(FamilySpec::Spin { n_j });
        assert_relative_eq!(
            s.an_profile(n_j as usize, 1.0).unwrap(),
            2f64.powf(-(n_j as f64) / 2.0),
            max_relative = 1e-14
        );
    }
    assert!(matches!(
        fam(FamilySpec::DisplacedNumber { s: 2 }).an_profile(0, 1.0),
        Err(Error::NotAnClass(_))
    ));
    assert!(matches!(
        fam(FamilySpec::HolomorphicHermite { s: 0.5 }).an_profile(0, 1.0),
        Err(Error::NotAnClass(_))
    ));
}

#[test]
fn an_consistency() {
    let specs = vec![
        FamilySpec::GlauberSudarshan {},
        FamilySpec::Spin { n_j: 6 },
        FamilySpec::QDeformed { q: 0.7 },
        FamilySpec::QDeformed { q: 1.4 },
        FamilySpec::BarutGirardello { kappa: 1.5 },
        FamilySpec::Su11Perelomov { kappa: 1.25, s: 0 },
        FamilySpec::SusskindGlogowerModified {},
        FamilySpec::DfbPlane {
            deformation: DfbDeformation::default(),
        },
    ];
    for spec in specs {
        let f = fam(spec.clone());
        let a = c(0.35, 0.4);
        let v = f.coefficients(a, &cut(120)).unwrap();
        for (n, z) in v.coeffs.iter().enumerate().take(40) {
            let w = a.powu(n as u32) * f.an_profile(n, a.norm_sqr()).unwrap();
            assert!((z - w).norm() <= 1e-12, "{spec:?} n {n}: {z} vs {w}");
        }
    }
}

#[test]
fn q_to_one_limit() {
    let g = fam(FamilySpec::GlauberSudarshan {});
    for q in [1.0 - 1e-7, 1.0 + 1e-7] {
        let f = fam(FamilySpec::QDeformed { q });
        let a = c(1.2, -0.5);
        let x = f.coefficients(a, &cut(80)).unwrap();
        let y = g.coefficients(a, &cut(80)).unwrap();
        assert!(x.max_abs_diff(&y) <= 1e-6);
    }
}

#[test]
fn bg_equals_nonlinear_su11() {
    let kappa = 1.3;
    let bg = fam(FamilySpec::BarutGirardello { kappa });
    let nl = fam(FamilySpec::NonlinearDeformed {
        x_seq: XSequence::ClosedForm(ClosedFormX::Su11 { kappa }),
        radius: None,
    });
    for a in [c(0.5, 0.0), c(2.0, 1.0), c(-3.0, 2.5)] {
        let x = bg.coefficients(a, &cut(120)).unwrap();
        let y = nl.coefficients(a, &cut(120)).unwrap();
        assert_eq!(x.coeffs, y.coeffs);
    }
}

#[test]
fn bg_mean_matches_series() {
    let f = fam(FamilySpec::BarutGirardello { kappa: 1.0 });
    for u in [0.1f64, 1.0, 4.0, 16.0] {
        let v = f.coefficients(c(u.sqrt(), 0.0), &cut(300)).unwrap();
        let mean: f64 = v
            .probabilities()
            .iter()
            .enumerate()
            .map(|(n, p)| n as f64 * p)
            .sum();
        assert_relative_eq!(f.nbar_closed(u).unwrap(), mean, max_relative = 1e-10);
    }
}

#[test]
fn table_sequence_is_finite() {
    let f = fam(FamilySpec::NonlinearDeformed {
        x_seq: XSequence::Table {
            values: vec![1.0, 3.0, 4.0],
        },
        radius: None,
    });
    assert_eq!(f.dimension(), Some(4));
    let v = f.coefficients(c(1.0, 1.0), &cut(50)).unwrap();
    assert_eq!(v.len(), 4);
    assert_relative_eq!(v.norm_sqr(), 1.0, epsilon = 1e-14);
}

#[test]
fn displaced_number_matches_displacement_action() {
    let f = fam(FamilySpec::DisplacedNumber { s: 0 });
    let g = fam(FamilySpec::GlauberSudarshan {});
    let a = c(0.8, 0.3);
    assert!(
        f.coefficients(a, &cut(60))
            .unwrap()
            .max_abs_diff(&g.coefficients(a, &cut(60)).unwrap())
            < 1e-15
    );
    let f = fam(FamilySpec::DisplacedNumber { s: 3 });
    let v = f.coefficients(c(0.0, 0.0), &cut(20)).unwrap();
    assert_relative_eq!(v.coeffs[3].norm(), 1.0, epsilon = 1e-15);
    let v = f.coefficients(a, &cut(80)).unwrap();
    assert_relative_eq!(v.norm_sqr(), 1.0, epsilon = 1e-12);
    let mean: f64 = v
        .probabilities()
        .iter()
        .enumerate()
        .map(|(n, p)| n as f64 * p)
        .sum();
    assert_relative_eq!(mean, a.norm_sqr() + 3.0, epsilon = 1e-10);
}

#[test]
fn hermite_normalization() {
    for s in [0.2, 0.5, 0.8] {
        let f = fam(FamilySpec::HolomorphicHermite { s });
        for a in [c(0.0, 0.0), c(0.7, -0.4), c(-1.5, 1.0), c(2.0, 0.5)] {
            let cf = f.required_cutoff(a, 1e-13).unwrap();
            let v = f.coefficients(a, &cf).unwrap();
            assert!(
                (v.norm_sqr() - 1.0).abs() <= 1e-9 + v.tail_mass,
                "s {s} a {a}: {}",
                v.norm_sqr()
            );
        }
    }
}

#[test]
fn identity_weight_examples() {
    let spin = fam(FamilySpec::Spin { n_j: 5 });
    let su = fam(FamilySpec::Su11Perelomov { kappa: 1.5, s: 0 });
    let g = fam(FamilySpec::GlauberSudarshan {});
    for u in [0.0, 0.2, 0.7] {
        assert_relative_eq!(
            spin.identity_weight(u).unwrap(),
            6.0 / (1.0 + u).powi(2),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            su.identity_weight(u).unwrap(),
            2.0 / (1.0 - u).powi(2),
            max_relative = 1e-14
        );
        assert_eq!(g.identity_weight(u).unwrap(), 1.0);
    }
    assert!(matches!(
        fam(FamilySpec::QDeformed { q: 2.0 }).identity_weight(1.0),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn nbar_examples() {
    assert_eq!(
        fam(FamilySpec::GlauberSudarshan {})
            .nbar_closed(2.5)
            .unwrap(),
        2.5
    );
    assert_relative_eq!(
        fam(FamilySpec::Spin { n_j: 8 }).nbar_closed(1.0).unwrap(),
        4.0,
        epsilon = 1e-15
    );
    assert_relative_eq!(
        fam(FamilySpec::Su11Perelomov { kappa: 0.75, s: 0 })
            .nbar_closed(0.25)
            .unwrap(),
        0.5,
        epsilon = 1e-15
    );
    let q = fam(FamilySpec::QDeformed { q: 0.6 });
    let a = c(1.1, 0.4);
    let v = q.coefficients(a, &cut(200)).unwrap();
    let mean: f64 = v
        .probabilities()
        .iter()
        .enumerate()
        .map(|(n, p)| n as f64 * p)
        .sum();
    assert_relative_eq!(
        q.nbar_closed(a.norm_sqr()).unwrap(),
        mean,
        max_relative = 1e-10
    );
}

#[test]
fn phase_space_points() {
    let cf = cut(100);
    let a = c(0.4, -1.1);
    let xi = fam(FamilySpec::GlauberSudarshan {})
        .phase_space_point(a, &cf)
        .unwrap();
    assert!((xi - a).norm() < 1e-14);
    let spin = fam(FamilySpec::Spin { n_j: 9 });
    let far = spin.phase_space_point(c(1e6, 0.0), &cf).unwrap();
    assert!(far.norm() < 3.0 && far.norm() > 3.0 - 1e-5);
    for spec in [
        FamilySpec::SusskindGlogowerModified {},
        FamilySpec::Spin { n_j: 3 },
    ] {
        assert_eq!(
            fam(spec).phase_space_point(c(0.0, 0.0), &cf).unwrap(),
            c(0.0, 0.0)
        );
    }
    // numeric fallback
    let sgm = fam(FamilySpec::SusskindGlogowerModified {});
    assert!(sgm.phase_space_point(c(0.5, 0.5), &cf).unwrap().norm() > 0.0);
}

#[test]
fn stereographic_examples() {
    assert_eq!(stereographic(0.0, 1.3).unwrap().norm(), 0.0);
    let z = stereographic(PI / 2.0, 0.0).unwrap();
    assert_relative_eq!(z.re, 1.0, epsilon = 1e-15);
    assert!(stereographic(PI, 0.0).is_err());
    let n_j = 6;
    let spin = fam(FamilySpec::Spin { n_j });
    for theta in [0.3, 1.0, 2.0, 3.0] {
        let a = stereographic(theta, 0.4).unwrap();
        let p = spin.nbar_closed(a.norm_sqr()).unwrap() / n_j as f64;
        assert_relative_eq!(p, (theta / 2.0).sin().powi(2), epsilon = 1e-14);
    }
}

#[test]
fn truncation_reported() {
    let g = fam(FamilySpec::GlauberSudarshan {});
    assert!(matches!(
        g.coefficients(c(5.0, 0.0), &cut(10)),
        Err(Error::Truncation { .. })
    ));
    let cf = g.required_cutoff(c(5.0, 0.0), 1e-12).unwrap();
    assert!(g.coefficients(c(5.0, 0.0), &cf).is_ok());
}

#[test]
fn dfb_standard_plane_is_glauber_and_spin_is_spin() {
    let plane = fam(FamilySpec::DfbPlane {
        deformation: DfbDeformation::default(),
    });
    let g = fam(FamilySpec::GlauberSudarshan {});
    let a = c(1.3, 0.6);
    assert!(
        plane
            .coefficients(a, &cut(80))
            .unwrap()
            .max_abs_diff(&g.coefficients(a, &cut(80)).unwrap())
            < 1e-12
    );
    let ds = fam(FamilySpec::DfbSpin {
        n_j: 5,
        deformation: DfbDeformation::default(),
    });
    let sp = fam(FamilySpec::Spin { n_j: 5 });
    assert!(
        ds.coefficients(a, &cut(5))
            .unwrap()
            .max_abs_diff(&sp.coefficients(a, &cut(5)).unwrap())
            < 1e-12
    );
    assert_relative_eq!(
        ds.identity_weight(0.4).unwrap(),
        6.0 / 1.4f64.powi(2),
        max_relative = 1e-12
    );
}

#[test]
fn deformed_dfb_spin_is_normalized() {
    let def = DfbDeformation {
        a_polys: vec![vec![0.05, 0.2]],
        ..Default::default()
    };
    let f = fam(FamilySpec::DfbSpin {
        n_j: 6,
        deformation: def,
    });
    for a in [c(0.0, 0.0), c(0.5, 0.1), c(3.0, -2.0)] {
        assert_relative_eq!(
            f.coefficients(a, &cut(6)).unwrap().norm_sqr(),
            1.0,
            epsilon = 1e-13
        );
    }
}

#[test]
fn serde_round_trip() {
    let specs = vec![
        FamilySpec::GlauberSudarshan {},
        FamilySpec::HolomorphicHermite { s: 0.3 },
        FamilySpec::NonlinearDeformed {
            x_seq: XSequence::ClosedForm(ClosedFormX::Power { exponent: 1.5 }),
            radius: None,
        },
        FamilySpec::NonlinearDeformed {
            x_seq: XSequence::Table {
                values: vec![1.0, 2.5],
            },
            radius: Some(3.0),
        },
        FamilySpec::Su11Perelomov { kappa: 0.75, s: 2 },
        FamilySpec::DfbSpin {
            n_j: 4,
            deformation: DfbDeformation {
                a_polys: vec![vec![0.0, 0.1]],
                a1: A1Convention::Xi,
                x_seq: Some(XSequence::ClosedForm(ClosedFormX::Harmonic)),
            },
        },
    ];
    for s in specs {
        let j = serde_json::to_string(&s).unwrap();
        let back: FamilySpec = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s, "{j}");
    }
    let parsed: FamilySpec =
        serde_json::from_str(r#"{"family":"spin","params":{"n_j":3}}"#).unwrap();
    assert_eq!(parsed, FamilySpec::Spin { n_j: 3 });
}

#[test]
fn invalid_parameters_rejected() {
    assert!(Family::new(FamilySpec::HolomorphicHermite { s: 1.0 }).is_err());
    assert!(Family::new(FamilySpec::SpinJacobi { n_j: 3, s: 4 }).is_err());
    assert!(Family::new(FamilySpec::BarutGirardello { kappa: 0.5 }).is_err());
    assert!(Family::new(FamilySpec::QDeformed { q: -1.0 }).is_err());
}
