use extrinsic::wpde::frame::{companion, eval_matrix, series_fundamental_system};
use extrinsic::wpde::sp4::{unit, Sp4Setup};
use extrinsic::wpde::*;
use extrinsic::{q, Error, Rat};

fn bound(name: &str, a: i64) -> OperatorSystem {
    let mut sys = fixture(name).unwrap().system;
    for p in sys.space.params().to_vec() {
        sys.set_param(&p, Rat::int(a)).unwrap();
    }
    sys
}

#[test]
fn solution_dimensions() {
    let expect = [
        ("case_i_model", 8),
        ("case_i_deformed", 8),
        ("ea", 10),
        ("g2_model", 14),
        ("segre", 4),
        ("veronese_n2", 6),
        ("veronese_n3", 10),
    ];
    for (name, dim) in expect {
        let f = fixture(name).unwrap();
        let n = f.truncate.unwrap();
        for a in [0, 1, -2] {
            let s = formal_solutions(&bound(name, a), n).unwrap();
            assert_eq!(s.dim(), dim, "{name} a={a}");
            assert!(s.stable, "{name}");
        }
    }
}

#[test]
fn shipped_bases_verify_symbolically() {
    for name in fixture_names() {
        let f = fixture(name).unwrap();
        let r = verify_basis(&f.system, &f.basis);
        assert!(r.ok(), "{name}: {:?}", r.residuals);
    }
}

#[test]
fn broken_basis_is_rejected() {
    let f = fixture("ea").unwrap();
    let space = &f.system.space;
    let mut basis = f.basis.clone();
    // Drop the a-correction from y^2 + a/3 x^3.
    basis[7] = parse_poly(space, "y^2").unwrap();
    let r = verify_basis(&f.system, &basis);
    assert!(!r.ok());
    assert!(r.residuals.iter().all(|x| x.element == 7));
    assert_eq!(r.residuals[0].residual.display(&space.var_names()).to_string(), "-2*a");

    let mut dup = f.basis.clone();
    dup[9] = dup[8].clone();
    assert!(!verify_basis(&f.system, &dup).independent);
}

#[test]
fn unbound_parameter_is_an_error() {
    let f = fixture("ea").unwrap();
    assert_eq!(
        formal_solutions(&f.system, 8).unwrap_err(),
        Error::UnboundParameter("a".into())
    );
    assert!(formal_solutions(&bound("ea", 1), 1).is_err());
}

#[test]
fn ea_relations() {
    let f = fixture("ea").unwrap();
    let space = &f.system.space;
    let rel = prolong_relations(&f.system, 6).unwrap();
    let names: Vec<String> = rel.standard.iter().map(|w| space.display_word(w)).collect();
    assert_eq!(names, ["1", "Y", "X", "Z", "Y^2", "XY", "X^2", "YZ", "XZ", "Z^2"]);
    let rule = |ws: &[&str]| rel.rule(&space.word(ws).unwrap()).unwrap().display(space).to_string();
    assert_eq!(rule(&["X", "X", "Y"]), "X^2Y = -XZ");
    assert_eq!(rule(&["X", "X", "Y", "Y"]), "X^2Y^2 = 1/2 Z^2");
    assert_eq!(rule(&["X", "X", "X", "X", "X"]), "X^5 = 1/2*a Z^2");
    assert_eq!(rule(&["X", "X", "X"]), "X^3 = a Y^2");
    for r in rel.rules_of_weight(space, 6) {
        assert!(r.is_zero(), "{}", r.display(space));
    }
}

#[test]
fn ea_relations_agree_with_numeric_parameter() {
    // The symbolic rules specialised at a = 3 must match a direct run at a = 3.
    let f = fixture("ea").unwrap();
    let space = &f.system.space;
    let sym = prolong_relations(&f.system, 5).unwrap();
    let num = prolong_relations(&bound("ea", 3), 5).unwrap();
    assert_eq!(sym.standard, num.standard);
    let mut sub = vec![None; space.ncoords()];
    sub.push(Some(Rat::int(3)));
    for (a, b) in sym.rules.iter().zip(&num.rules) {
        assert_eq!(a.word, b.word);
        let lhs: Vec<(Rat, Word)> = a
            .rhs
            .iter()
            .map(|(c, w)| (c.substitute(&sub).as_constant().unwrap(), w.clone()))
            .collect();
        let rhs: Vec<(Rat, Word)> = b
            .rhs
            .iter()
            .map(|(c, w)| (c.substitute(&sub).as_constant().unwrap(), w.clone()))
            .collect();
        assert_eq!(lhs, rhs, "{}", a.display(space));
    }
}

#[test]
fn ea_connection_is_adjoint_plus_deformation() {
    let s = Sp4Setup::new().unwrap();
    for a in [0, 1, 2, -3] {
        let a = Rat::int(a);
        let chi = s.chi1(&a).unwrap();
        assert_eq!(chi.connection[0], s.ad[7].add(&unit(7, 4).scale(&a)));
        assert_eq!(chi.connection[1], s.ad[8]);
        assert_eq!(chi.connection[2], s.ad[9]);
    }
}

#[test]
fn ea_chi1_class() {
    let s = Sp4Setup::new().unwrap();
    let (p, gamma) = s.gamma().unwrap();
    assert_eq!(p, Rat::ONE);
    assert!(s.complex.is_cocycle(1, &p, &gamma).unwrap());
    assert!(!s.complex.is_coboundary(1, &p, &gamma).unwrap());

    assert!(s.chi1(&Rat::ZERO).unwrap().is_zero());
    for a in [Rat::ONE, q(-5, 2)] {
        let chi = s.chi1(&a).unwrap();
        let (pa, c) = s.cochain(&chi.values).unwrap();
        assert_eq!(pa, p);
        let scaled: Vec<Rat> = gamma.iter().map(|g| g * &a).collect();
        assert_eq!(c, scaled);
    }
}

#[test]
fn frame_data_needs_invertible_theta() {
    let f = fixture("ea").unwrap();
    let sys = bound("ea", 1);
    let sol = stable_solutions(&sys, 12).unwrap();
    let mut frame = f.frame.clone();
    frame[1] = frame[0].clone();
    assert!(matches!(FrameData::new(&sys, sol.basis, frame), Err(Error::Singular(_))));
}

#[test]
fn wilczynski_veronese() {
    for k in 1..=4usize {
        let f = fixture(&format!("ode_{k}")).unwrap();
        let n = 1;
        let p = vec![Poly::zero(n); k + 1];
        let w = wilczynski_frame(&p, &f.basis, 0, None).unwrap();
        assert_eq!(w.companion, companion(&p, n));
        // dΘ = C Θ, hence Θ d(Θ⁻¹) = -C.
        let mc = w.maurer_cartan(0).unwrap();
        let neg: Vec<Vec<Poly>> = w.companion.iter().map(|r| r.iter().map(Poly::neg).collect()).collect();
        assert_eq!(mc, neg);
        let sol = formal_solutions(&f.system, f.truncate.unwrap()).unwrap();
        assert_eq!(sol.dim(), k + 1);
    }
}

#[test]
fn wilczynski_symbolic_coefficients() {
    // y'' = p0 y' + p1 y with symbolic constants p0, p1 (variables 1, 2).
    let nv = 3;
    let p = vec![Poly::var(nv, 1), Poly::var(nv, 2)];
    let order = 8;
    let theta = series_fundamental_system(&p, 0, order);
    let w = wilczynski_frame(&p, &theta, 0, Some(order - 1)).unwrap();
    let at0 = eval_matrix(&w.theta_matrix, &[Rat::ZERO, Rat::ONE, Rat::ONE]);
    assert!(at0.determinant() != Rat::ZERO);
    assert_eq!(w.companion[0], p);
    assert_eq!(w.companion[1][0], Poly::one(nv));
    assert!(w.companion[1][1].is_zero());
}

#[test]
fn filtration_duality() {
    let phi = Filtration::standard(&[10, 7, 3, 1], -2).unwrap();
    let d = dualize_filtration(&phi).unwrap();
    assert_eq!((d.start, d.end()), (-1, 2));
    assert_eq!(d.type_dims(), vec![10, 9, 7, 3]);
    assert!(extrinsic::wpde::filtration::check_graded_pairing(&phi, &d));
    assert_eq!(dualize_filtration(&d).unwrap(), phi);
}

#[test]
fn parse_errors_carry_position() {
    let src = "coord x 1\nfield X = D(x)\neq X^2 + 3 q\n";
    match parse_fixture("t", src).unwrap_err() {
        Error::Parse { line, col, .. } => assert_eq!((line, col), (3, 12)),
        e => panic!("{e:?}"),
    }
}
