use lefschetz_core::exact::{rat, ratio, BigInt, BigRational};
use lefschetz_core::fourmanifold::{blow_up, catalog, FourManifoldLattice, HomologyClass};
use lefschetz_core::kahler_gromov::CohomologyProfile;
use lefschetz_core::pencil::{
    build_pencil, count_decision, count_rules, family_index, fibre_degree, is_monotone_toward_one, ratio_convergence,
    sections_of_fk_dim, virtual_dim, CountKind, PencilError,
};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn h() -> HomologyClass {
    HomologyClass::new(vec![1])
}

#[test]
fn plane_pencil_numerology() {
    let x = catalog::get("cp2").unwrap();
    for k in 1..=40i64 {
        let p = build_pencil(&x, k as u64).unwrap();
        // plane curves of degree k: g = (k-1)(k-2)/2, k^2 base points, 3(k-1)^2 nodal members
        assert_eq!(p.genus, (k - 1) * (k - 2) / 2);
        assert_eq!(p.base_points, k * k);
        assert_eq!(p.critical_points, 3 * (k - 1) * (k - 1));
    }
    let first: Vec<_> = (1..=3)
        .map(|k| {
            let p = build_pencil(&x, k).unwrap();
            (p.genus, p.base_points, p.critical_points)
        })
        .collect();
    assert_eq!(first, [(0, 1, 0), (0, 4, 3), (1, 9, 12)]);
    assert!(matches!(build_pencil(&x, 0), Err(PencilError::ZeroDegree)));
}

#[test]
fn delta_nonnegative_and_genus_quadratic() {
    for name in ["cp2", "s2xs2", "k3", "e3", "quintic", "cp2_8"] {
        let x = catalog::get(name).unwrap();
        let mut last = None;
        for k in [20u64, 40, 80, 160] {
            let p = build_pencil(&x, k).unwrap();
            assert!(p.critical_points >= 0);
            if let Some(g) = last {
                let q = BigRational::new(BigInt::from(p.genus), BigInt::from(g));
                assert!(q > ratio(7, 2) && q < ratio(9, 2), "{name} k={k}: {q}");
            }
            last = Some(p.genus);
        }
    }
}

#[test]
fn residual_degree_identity_on_random_classes() {
    let mut g = ChaCha8Rng::seed_from_u64(21);
    let names = ["cp2", "s2xs2", "k3", "e3", "cp2_8", "quintic"];
    for _ in 0..200 {
        let x = catalog::get(names[g.gen_range(0..names.len())]).unwrap();
        let k = g.gen_range(1..=6);
        let p = build_pencil(&x, k).unwrap();
        let a = HomologyClass::new((0..x.rank()).map(|_| g.gen_range(-5..=5)).collect());
        let fd = fibre_degree(&x, &p, &a).unwrap();
        assert_eq!(fd.r + fd.residual, fd.two_g_minus_2);
        // independently: r = a.W + N and residual = (K - a).W
        let w = &p.fibre_class;
        assert_eq!(fd.r, x.pairing(&a, w).unwrap() + p.base_points);
        assert_eq!(fd.residual, x.pairing(&x.canonical().sub(&a).unwrap(), w).unwrap());
    }
}

#[test]
fn zero_class_meets_fibre_in_base_points() {
    for name in ["cp2", "k3", "quintic"] {
        let x = catalog::get(name).unwrap();
        let p = build_pencil(&x, 3).unwrap();
        let fd = fibre_degree(&x, &p, &HomologyClass::zero(x.rank())).unwrap();
        assert_eq!(fd.r, p.base_points);
    }
    let x = catalog::get("cp2").unwrap();
    let fd = fibre_degree(&x, &build_pencil(&x, 3).unwrap(), &h()).unwrap();
    assert_eq!(fd.r, 12);
}

#[test]
fn plane_ratio_closed_form_and_convergence() {
    let x = catalog::get("cp2").unwrap();
    let rows = ratio_convergence(&x, &h(), 50..=300).unwrap();
    for row in &rows {
        let k = row.k as i64;
        assert_eq!(row.ratio, ratio(k - 3, k + 1));
        assert!((&row.ratio - rat(1)).abs() < ratio(1, 10));
    }
    assert_eq!(rows[0].ratio, ratio(47, 51));
    assert!(is_monotone_toward_one(&rows));
}

#[test]
fn doubling_k_halves_the_error() {
    let x = catalog::get("cp2").unwrap();
    let err = |k: u64| (&ratio_convergence(&x, &h(), [k]).unwrap()[0].ratio - rat(1)).abs();
    for k in [400u64, 800, 1600] {
        let q = err(2 * k) / err(k);
        assert!((q - ratio(1, 2)).abs() < ratio(1, 100));
    }
}

#[test]
fn zero_class_ratio_tends_to_one() {
    for name in ["cp2", "k3", "quintic", "e4"] {
        let x = catalog::get(name).unwrap();
        let rows = ratio_convergence(&x, &HomologyClass::zero(x.rank()), [10, 20, 40, 80, 160]).unwrap();
        assert!(is_monotone_toward_one(&rows), "{name}");
        assert!((&rows.last().unwrap().ratio - rat(1)).abs() < ratio(1, 10), "{name}");
    }
}

#[test]
fn virtual_dimension_examples() {
    let cp2 = catalog::get("cp2").unwrap();
    assert_eq!(virtual_dim(&cp2, &h()).unwrap(), 2);
    assert_eq!(virtual_dim(&cp2, &HomologyClass::zero(1)).unwrap(), 0);
    for name in catalog::names() {
        let x = catalog::get(name).unwrap();
        assert_eq!(virtual_dim(&x, &x.canonical().clone()).unwrap(), 0, "{name}");
    }
}

#[test]
fn blow_up_invariance_of_virtual_dimension() {
    let mut g = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let x = catalog::hyperbolic(g.gen_range(0..=3));
        let a = HomologyClass::new((0..x.rank()).map(|_| g.gen_range(-5..=5)).collect());
        let b = blow_up(&x, g.gen_range(1..=10)).unwrap();
        assert_eq!(
            b.virtual_dim(&b.twist(&a).unwrap()).unwrap(),
            virtual_dim(&x, &a).unwrap()
        );
    }
}

#[test]
fn family_index_examples() {
    let k3 = catalog::get("k3").unwrap();
    assert_eq!(family_index(&k3, &HomologyClass::zero(22)).unwrap(), 2);
    let cp2 = catalog::get("cp2").unwrap();
    assert_eq!(family_index(&cp2, &HomologyClass::zero(1)).unwrap(), 1);
    // T^4: b_+ + 1 - b_1 = 0
    let t4 = catalog::get("t4").unwrap();
    assert_eq!(family_index(&t4, &HomologyClass::zero(6)).unwrap(), 0);
}

#[test]
fn sections_of_pushed_forward_canonical_bundle() {
    let s = sections_of_fk_dim(3, 0).unwrap();
    assert_eq!(s.dim, Some(1));
    let s = sections_of_fk_dim(3, 1).unwrap();
    assert_eq!((s.twice_dim, s.dim), (1, None));
    let s = sections_of_fk_dim(5, 2).unwrap();
    assert_eq!((s.dim, s.big_r), (Some(2), 1));
    assert!(sections_of_fk_dim(0, 0).is_err());
}

#[test]
fn count_examples() {
    let cp2 = catalog::get("cp2").unwrap();
    let v = count_decision(&cp2, &h(), None).unwrap();
    assert_eq!(v.kind, CountKind::PlusMinusOne);
    assert_eq!(v.moduli_torus_dim, Some(0));

    let k3 = catalog::get("k3").unwrap();
    // e_1 + f_1 has square 2 but K.a = 0
    let mut a = vec![0; 22];
    a[0] = 1;
    a[1] = 1;
    assert_eq!(
        count_decision(&k3, &HomologyClass::new(a), None).unwrap().kind,
        CountKind::Zero
    );

    let x = catalog::hyperbolic(3);
    assert_eq!(
        count_decision(&x, &x.canonical().clone(), None).unwrap().kind,
        CountKind::PlusMinusOne
    );
    assert_eq!(
        count_decision(&x, &HomologyClass::zero(x.rank()), None).unwrap().kind,
        CountKind::PlusMinusOne
    );
}

#[test]
fn kahler_profile_used_only_as_last_resort() {
    let p_g = 3;
    let x = catalog::hyperbolic(p_g);
    // e_2: square 0, K.e_2 = 0, e_2.omega = 0
    let a = HomologyClass::basis(x.rank(), 2);
    assert!(count_rules(&x, &a).unwrap().is_empty());
    assert_eq!(count_decision(&x, &a, None).unwrap().kind, CountKind::Unknown);
    let p = CohomologyProfile::new(&x, a.clone(), 2, 0, 2).unwrap();
    let v = count_decision(&x, &a, Some(&p)).unwrap();
    assert_eq!((v.kind, v.rule), (CountKind::BinomialValue(BigInt::from(-2)), 6));
}

fn contradictory_lattice() -> FourManifoldLattice {
    // 3H with omega = -(e_1 + f_1): omega^2 = 2 > 0 but K.omega = -6 < 0.
    let mut s = catalog::hyperbolic(1).spec();
    s.omega = vec![rat(-1), rat(-1), rat(0), rat(0), rat(0), rat(0)];
    FourManifoldLattice::new(s).unwrap()
}

#[test]
fn contradictory_hypotheses_give_unknown() {
    let x = contradictory_lattice();
    let v = count_decision(&x, &HomologyClass::zero(6), None).unwrap();
    assert_eq!(v.kind, CountKind::Unknown);
    assert!(v.reason.starts_with("hypotheses contradict each other"));
}

#[test]
fn count_rules_never_mix_on_realistic_data() {
    let mut g = ChaCha8Rng::seed_from_u64(31);
    let mut pool: Vec<_> = catalog::names().map(|n| catalog::get(n).unwrap()).collect();
    pool.extend((0..=4).map(catalog::hyperbolic));
    pool.push(contradictory_lattice());
    for _ in 0..3000 {
        let x = &pool[g.gen_range(0..pool.len())];
        let a = match g.gen_range(0..4) {
            0 => HomologyClass::zero(x.rank()),
            1 => x.canonical().clone(),
            _ => HomologyClass::new((0..x.rank()).map(|_| g.gen_range(-3..=3)).collect()),
        };
        let rules = count_rules(x, &a).unwrap();
        let zero = rules.iter().any(|f| f.kind == CountKind::Zero);
        let one = rules.iter().any(|f| f.kind == CountKind::PlusMinusOne);
        let v = count_decision(x, &a, None).unwrap();
        if zero && one {
            // only rules 3 and 5 can meet, and only with K.omega < 0
            assert!(x.k_dot_omega() < rat(0), "{}: {rules:?}", x.label());
            assert_eq!(v.kind, CountKind::Unknown);
        } else if zero {
            assert_eq!(v.kind, CountKind::Zero);
        } else if one {
            assert_eq!(v.kind, CountKind::PlusMinusOne);
        }
    }
}
