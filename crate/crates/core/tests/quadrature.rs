use cohstate::families::{DfbDeformation, Family, FamilySpec};
use cohstate::quadrature::{gram_identity, verify_moment_problem, QuadratureSpec};

fn gram_cases() -> Vec<(FamilySpec, usize)> {
    let mut v = vec![
        (FamilySpec::GlauberSudarshan {}, 15),
        (FamilySpec::Spin { n_j: 10 }, 15),
        (FamilySpec::SpinJacobi { n_j: 10, s: 3 }, 15),
        (FamilySpec::QDeformed { q: 0.5 }, 15),
        (FamilySpec::BarutGirardello { kappa: 1.0 }, 15),
        (FamilySpec::SusskindGlogowerModified {}, 15),
        (
            FamilySpec::DfbPlane {
                deformation: DfbDeformation::default(),
            },
            15,
        ),
        (
            FamilySpec::DfbSpin {
                n_j: 10,
                deformation: DfbDeformation::default(),
            },
            15,
        ),
        (FamilySpec::HolomorphicHermite { s: 0.5 }, 8),
    ];
    for kappa in [0.75, 1.0, 2.0] {
        for s in [0, 2] {
            v.push((FamilySpec::Su11Perelomov { kappa, s }, 15));
        }
    }
    v
}

#[test]
fn gram_identity_across_families() {
    let spec = QuadratureSpec::default();
    for (f, n) in gram_cases() {
        let fam = Family::new(f.clone()).unwrap();
        let r = gram_identity(&fam, n, &spec).unwrap();
        assert!(r.residual <= 1e-6, "{f:?}: {}", r.residual);
    }
}

#[test]
fn moment_problem_deformed_families() {
    let spec = QuadratureSpec::default();
    for f in [
        FamilySpec::QDeformed { q: 0.3 },
        FamilySpec::QDeformed { q: 0.8 },
        FamilySpec::BarutGirardello { kappa: 2.5 },
        FamilySpec::Spin { n_j: 4 },
    ] {
        let fam = Family::new(f.clone()).unwrap();
        let r = verify_moment_problem(&fam, 12, &spec).unwrap();
        assert!(r.passed, "{f:?}: {}", r.residual);
    }
}
