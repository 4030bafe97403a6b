use hus_core::blockmat::{closed_range_equivalence, factorization_check, quad1, quad2, schur1, schur2};
use hus_core::calculus::{
    add_coercive, add_orthogonal_ranges, add_with_bound, adjoint, bounded_transform, compose, defect_transform, direct_sum,
    graph_norm, is_bounded, power_op, pseudo_inverse, relative_bound, scale, sqrt_op,
};
use hus_core::scalar::{real, Scalar};
use hus_core::stability::{gamma, gamma_convergence_table, hus_witness, spectral_floor_check, stability_report, truncate};
use hus_core::zoo::{
    bernstein_basis, bernstein_nodal_matrix, bernstein_nodes, multiplication_sampled, paper_diagonal, szasz_apply,
    szasz_instability_witness, PaperDiagonal, Phi, SzaszSpec,
};
use hus_core::{BlockMatrix, Complement, DiagonalOperator, Error, KernelDim, MatrixOperator, OperatorModel, TailRule, ToleranceConfig};

const ZERO: Scalar = Scalar::new(0.0, 0.0);

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn diag(head: &[f64], tail: TailRule) -> DiagonalOperator {
    DiagonalOperator::from_reals(head, tail).unwrap()
}

fn op(head: &[f64], tail: TailRule) -> OperatorModel {
    diag(head, tail).into()
}

fn mat(rows: &[&[f64]]) -> OperatorModel {
    MatrixOperator::from_real_rows(rows).unwrap().into()
}

fn reals(v: &[f64]) -> Vec<Scalar> {
    v.iter().map(|&x| real(x)).collect()
}

fn mixed() -> DiagonalOperator {
    paper_diagonal(PaperDiagonal::MixedUnstable)
}

fn kernel_plus_n() -> OperatorModel {
    paper_diagonal(PaperDiagonal::KernelPlusN).into()
}

fn constant(c: f64) -> OperatorModel {
    op(&[], TailRule::constant(c))
}

/// Block matrix of constant diagonal blocks.
fn constants(a: f64, b: f64, c: f64, e: f64) -> BlockMatrix {
    BlockMatrix::new(constant(a), constant(b), constant(c), constant(e)).unwrap()
}

fn entry(m: &OperatorModel, n: usize) -> Scalar {
    m.as_diagonal().unwrap().entry(n)
}

#[test]
fn diagonal_infimum_and_supremum() {
    assert_eq!(paper_diagonal(PaperDiagonal::KernelPlusN).inf_nonzero_modulus(), (2.0, true));
    assert_eq!(mixed().inf_nonzero_modulus(), (0.0, false));
    assert_eq!(diag(&[5.0], TailRule::Zero).inf_nonzero_modulus(), (5.0, true));
    assert_eq!(diag(&[], TailRule::power(1.0, 1.0)).sup_modulus(), f64::INFINITY);
    assert_eq!(diag(&[3.0, 1.0], TailRule::constant(2.0)).sup_modulus(), 3.0);
    assert_eq!(mixed().sup_modulus(), f64::INFINITY);
}

#[test]
fn kernel_supports() {
    let k = paper_diagonal(PaperDiagonal::KernelPlusN).kernel_support();
    assert_eq!((k.indices.clone(), k.dim), (vec![1], KernelDim::Finite(1)));
    let odd = diag(&[], TailRule::Cyclic(vec![TailRule::Zero, TailRule::constant(1.0)])).kernel_support();
    assert_eq!(odd.dim, KernelDim::Infinite);
    assert!((1..40).all(|n| odd.contains(n) == (n % 2 == 1)));
    let none = diag(&[1.0, 2.0], TailRule::power(1.0, 2.0)).kernel_support();
    assert_eq!((none.indices.len(), none.dim), (0, KernelDim::Finite(0)));
}

#[test]
fn application() {
    assert_eq!(kernel_plus_n().apply(&reals(&[1.0, 1.0, 1.0])).unwrap(), reals(&[0.0, 2.0, 3.0]));
    assert_eq!(MatrixOperator::identity(2).unwrap().apply(&reals(&[4.0, 5.0])).unwrap(), reals(&[4.0, 5.0]));
    assert_eq!(OperatorModel::from(mixed()).apply(&reals(&[1.0; 4])).unwrap(), reals(&[1.0, 2.0, 1.0 / 3.0, 4.0]));
}

#[test]
fn gamma_examples() {
    assert_eq!(gamma(&kernel_plus_n(), &tol()).unwrap(), (2.0, true));
    let (g, attained) = gamma(&mat(&[&[1.0, 1.0], &[1.0, 1.0]]), &tol()).unwrap();
    assert!((g - 2.0).abs() < 1e-14 && attained);
    assert_eq!(gamma(&mixed().into(), &tol()).unwrap(), (0.0, false));
}

#[test]
fn reports() {
    let r = stability_report(&kernel_plus_n(), &tol()).unwrap();
    assert_eq!((r.gamma, r.hus_constant, r.stable, r.spectral_floor, r.kernel_dim), (2.0, 0.5, true, 4.0, KernelDim::Finite(1)));
    let id: OperatorModel = MatrixOperator::identity(3).unwrap().into();
    let r = stability_report(&id, &tol()).unwrap();
    assert_eq!((r.gamma, r.hus_constant, r.stable, r.spectral_floor, r.kernel_dim), (1.0, 1.0, true, 1.0, KernelDim::Finite(0)));
    let r = stability_report(&op(&[], TailRule::power(1.0, -2.0)), &tol()).unwrap();
    assert_eq!((r.gamma, r.hus_constant, r.stable, r.spectral_floor, r.kernel_dim), (0.0, f64::INFINITY, false, 0.0, KernelDim::Finite(0)));
}

#[test]
fn witnesses() {
    let t = op(&[0.0, 2.0], TailRule::power(1.0, 1.0));
    let w = hus_witness(&t, &reals(&[1.0, 1.0]), &tol()).unwrap();
    assert_eq!((w.x0, w.distance, w.bound), (reals(&[1.0, 0.0]), 1.0, 1.0));
    let w = hus_witness(&t, &reals(&[3.0, 0.0]), &tol()).unwrap();
    assert_eq!((w.x0, w.distance), (reals(&[3.0, 0.0]), 0.0));
    let id: OperatorModel = MatrixOperator::identity(2).unwrap().into();
    let w = hus_witness(&id, &reals(&[3.0, 4.0]), &tol()).unwrap();
    assert_eq!((w.x0, w.distance, w.bound), (reals(&[0.0, 0.0]), 5.0, 5.0));
    let rank_one = mat(&[&[1.0, 1.0], &[1.0, 1.0]]);
    let w = hus_witness(&rank_one, &reals(&[1.0, -1.0]), &tol()).unwrap();
    assert!(w.distance < 1e-14);
    assert_eq!(hus_witness(&mixed().into(), &reals(&[1.0]), &tol()), Err(Error::NotStable));
}

#[test]
fn spectral_floors() {
    assert!(spectral_floor_check(&kernel_plus_n(), 4.0, &tol()).unwrap());
    assert!(!spectral_floor_check(&kernel_plus_n(), 4.5, &tol()).unwrap());
    for r in [1e-12, 1e-3, 1.0] {
        assert!(!spectral_floor_check(&mixed().into(), r, &tol()).unwrap());
    }
    assert!(matches!(spectral_floor_check(&kernel_plus_n(), 0.0, &tol()), Err(Error::DomainViolation(_))));
}

#[test]
fn truncations_and_tables() {
    let t = truncate(kernel_plus_n().as_diagonal().unwrap(), 5).unwrap();
    assert_eq!(t, MatrixOperator::from_real_rows(&[
        &[0.0, 0.0, 0.0, 0.0, 0.0],
        &[0.0, 2.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 3.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 4.0, 0.0],
        &[0.0, 0.0, 0.0, 0.0, 5.0],
    ])
    .unwrap());
    let sevens = truncate(&diag(&[], TailRule::constant(7.0)), 2).unwrap();
    assert_eq!(sevens, MatrixOperator::from_real_rows(&[&[7.0, 0.0], &[0.0, 7.0]]).unwrap());
    let m = truncate(&mixed(), 5).unwrap();
    let d: Vec<Scalar> = (0..5).map(|i| m.get(i, i)).collect();
    assert_eq!(d, reals(&[1.0, 2.0, 1.0 / 3.0, 4.0, 1.0 / 5.0]));

    let table = gamma_convergence_table(&mixed(), &[4, 16, 64], &tol()).unwrap();
    assert_eq!(table, vec![(4, 1.0 / 3.0), (16, 1.0 / 15.0), (64, 1.0 / 63.0)]);
    let table = gamma_convergence_table(kernel_plus_n().as_diagonal().unwrap(), &[4, 8], &tol()).unwrap();
    assert_eq!(table, vec![(4, 2.0), (8, 2.0)]);
    let table = gamma_convergence_table(&diag(&[], TailRule::constant(1.0)), &[1, 2, 3], &tol()).unwrap();
    assert_eq!(table, vec![(1, 1.0), (2, 1.0), (3, 1.0)]);
}

#[test]
fn adjoints() {
    let d = DiagonalOperator::new(vec![Scalar::new(0.0, 2.0)], TailRule::power(1.0, 1.0)).unwrap();
    let expected = DiagonalOperator::new(vec![Scalar::new(0.0, -2.0)], TailRule::power(1.0, 1.0)).unwrap();
    assert_eq!(adjoint(&d.into()).unwrap(), expected.into());
    assert_eq!(adjoint(&mat(&[&[0.0, 1.0], &[0.0, 0.0]])).unwrap(), mat(&[&[0.0, 0.0], &[1.0, 0.0]]));
    assert_eq!(adjoint(&mixed().into()).unwrap(), mixed().into());
}

#[test]
fn pseudo_inverses() {
    let p = pseudo_inverse(&op(&[0.0, 2.0, 4.0], TailRule::Zero), &tol()).unwrap();
    assert_eq!(p, op(&[0.0, 0.5, 0.25], TailRule::Zero));
    let p = pseudo_inverse(&mat(&[&[2.0, 0.0], &[0.0, 0.0]]), &tol()).unwrap();
    assert_eq!(p, mat(&[&[0.5, 0.0], &[0.0, 0.0]]));
    let p = pseudo_inverse(&mat(&[&[1.0, 1.0], &[1.0, 1.0]]), &tol()).unwrap();
    let diff = p.as_matrix().unwrap().max_abs_diff(mat(&[&[0.25, 0.25], &[0.25, 0.25]]).as_matrix().unwrap()).unwrap();
    assert!(diff < 1e-15);
}

#[test]
fn boundedness() {
    assert!(!is_bounded(&op(&[], TailRule::power(1.0, 1.0))).unwrap());
    assert!(is_bounded(&mat(&[&[1e300, 0.0]])).unwrap());
    assert!(is_bounded(&op(&[9.0], TailRule::constant(1.0))).unwrap());
}

#[test]
fn transforms() {
    let c = defect_transform(&diag(&[1.0, 0.0], TailRule::power(1.0, 1.0))).unwrap();
    assert_eq!((c.entry(1), c.entry(2)), (real(0.5), real(1.0)));
    let c = defect_transform(&diag(&[], TailRule::power(1.0, 1.0))).unwrap();
    assert_eq!(c.inf_nonzero_modulus(), (0.0, false));

    let z = bounded_transform(&diag(&[0.0, 1.0], TailRule::Zero)).unwrap();
    assert_eq!(z.entry(1), real(0.0));
    assert!((z.entry(2).re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    let z = bounded_transform(&diag(&[], TailRule::power(1.0, 1.0))).unwrap();
    let (g, attained) = z.inf_nonzero_modulus();
    assert!((g - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15 && attained);
}

#[test]
fn roots_and_powers() {
    assert_eq!(sqrt_op(&op(&[4.0, 9.0], TailRule::Zero), &tol()).unwrap(), op(&[2.0, 3.0], TailRule::Zero));
    let id = mat(&[&[1.0, 0.0], &[0.0, 1.0]]);
    let r = sqrt_op(&id, &tol()).unwrap();
    assert!(r.as_matrix().unwrap().max_abs_diff(id.as_matrix().unwrap()).unwrap() < 1e-15);
    let a = mat(&[&[2.0, 1.0], &[1.0, 2.0]]);
    let r = sqrt_op(&a, &tol()).unwrap();
    let r = r.as_matrix().unwrap();
    assert!(r.mul(r).unwrap().max_abs_diff(a.as_matrix().unwrap()).unwrap() < 1e-10);
    assert_eq!(sqrt_op(&op(&[-1.0], TailRule::Zero), &tol()), Err(Error::NotPositiveSelfAdjoint));

    assert_eq!(power_op(&op(&[2.0, 3.0], TailRule::Zero), 2).unwrap(), op(&[4.0, 9.0], TailRule::Zero));
    assert_eq!(power_op(&mixed().into(), 1).unwrap(), mixed().into());
    let sq = power_op(&kernel_plus_n(), 2).unwrap();
    let k = sq.as_diagonal().unwrap().kernel_support();
    assert_eq!((k.indices, k.dim), (vec![1], KernelDim::Finite(1)));
}

#[test]
fn relative_bounds() {
    let cert = relative_bound(&constant(1.0), &constant(2.0), &tol()).unwrap();
    assert_eq!((cert.b, cert.exact), (0.5, true));
    assert_eq!(relative_bound(&mixed().into(), &mixed().into(), &tol()).unwrap().b, 1.0);
    let cert = relative_bound(&op(&[1.0, 0.0], TailRule::Zero), &op(&[2.0, 5.0], TailRule::Zero), &tol()).unwrap();
    assert_eq!(cert.b, 0.5);
    let cert = relative_bound(&mat(&[&[1.0, 0.0], &[0.0, 1.0]]), &mat(&[&[2.0, 0.0], &[0.0, 4.0]]), &tol()).unwrap();
    assert!((cert.b - 0.5).abs() < 1e-9 && !cert.exact);
}

#[test]
fn bounded_sums() {
    let (sum, cert) = add_with_bound(&constant(-0.5), &constant(2.0), &tol()).unwrap();
    assert_eq!(cert.b, 0.25);
    assert_eq!(entry(&sum, 7), real(1.5));
    assert_eq!(gamma(&sum, &tol()).unwrap().0, 1.5);
    assert!(DiagonalOperator::from_reals(&[0.0, 0.0], TailRule::Zero).is_err());
    assert_eq!(add_with_bound(&constant(3.0), &constant(2.0), &tol()), Err(Error::BoundNotLessThanOne(1.5)));
}

#[test]
fn orthogonal_and_coercive_sums() {
    let s = diag(&[], TailRule::Cyclic(vec![TailRule::Zero, TailRule::constant(3.0)]));
    let t = diag(&[], TailRule::Cyclic(vec![TailRule::constant(2.0), TailRule::Zero]));
    assert_eq!(add_orthogonal_ranges(&s, &t).unwrap().inf_nonzero_modulus(), (2.0, true));
    let t = diag(&[4.0, 0.0, 5.0], TailRule::Zero);
    let s = diag(&[0.0, 7.0], TailRule::Zero);
    assert_eq!(add_orthogonal_ranges(&s, &t).unwrap(), diag(&[4.0, 7.0, 5.0], TailRule::Zero));
    assert_eq!(add_orthogonal_ranges(&t, &t), Err(Error::SupportsOverlap(1)));

    let sum = add_coercive(&diag(&[], TailRule::constant(1.0)), &diag(&[], TailRule::constant(3.0)), 2.0).unwrap();
    assert_eq!((sum.entry(10), sum.inf_nonzero_modulus()), (real(4.0), (4.0, true)));
    assert_eq!(
        add_coercive(&diag(&[], TailRule::constant(1.0)), &diag(&[], TailRule::power(1.0, 1.0)), 1.0),
        Err(Error::Unbounded)
    );
    assert!(matches!(
        add_coercive(&diag(&[], TailRule::constant(1.0)), &diag(&[], TailRule::constant(1.0)), 2.0),
        Err(Error::CoercivityFails(_))
    ));
}

#[test]
fn products_sums_and_scaling() {
    assert_eq!(compose(&constant(2.0), &constant(3.0)).unwrap(), constant(6.0));
    let a = mat(&[&[1.0, 2.0], &[3.0, 4.0]]);
    assert_eq!(compose(&mat(&[&[1.0, 0.0], &[0.0, 1.0]]), &a).unwrap(), a);
    let t = op(&[2.0, 5.0], TailRule::power(2.0, 1.0));
    let s = op(&[3.0], TailRule::power(3.0, 1.0));
    assert!(gamma(&compose(&t, &s).unwrap(), &tol()).unwrap().0 >= 6.0);

    let one = paper_diagonal(PaperDiagonal::StableN).into();
    let two = op(&[], TailRule::power(2.0, 1.0));
    assert_eq!(gamma(&direct_sum(&one, &two).unwrap(), &tol()).unwrap().0, 1.0);
    assert_eq!(gamma(&direct_sum(&two, &two).unwrap(), &tol()).unwrap().0, 2.0);
    assert_eq!(gamma(&direct_sum(&one, &mixed().into()).unwrap(), &tol()).unwrap().0, 0.0);

    assert_eq!(scale(real(1.0), &mixed().into()).unwrap(), mixed().into());
    assert_eq!(scale(real(2.0), &constant(3.0)).unwrap(), constant(6.0));
    let rotated = scale(Scalar::new(0.0, 1.0), &kernel_plus_n()).unwrap();
    assert_eq!(gamma(&rotated, &tol()).unwrap().0, 2.0);
    assert_eq!(scale(ZERO, &kernel_plus_n()), Err(Error::ZeroScalar));

    assert_eq!(graph_norm(&kernel_plus_n(), &reals(&[0.0, 0.0])).unwrap(), 0.0);
    let id: OperatorModel = MatrixOperator::identity(2).unwrap().into();
    assert!((graph_norm(&id, &reals(&[3.0, 4.0])).unwrap() - 50f64.sqrt()).abs() < 1e-14);
    let t = op(&[0.0, 2.0], TailRule::Zero);
    assert!((graph_norm(&t, &reals(&[1.0, 1.0])).unwrap() - 6f64.sqrt()).abs() < 1e-15);
}

#[test]
fn schur_complements() {
    let s2 = schur2(&constants(2.0, 1.0, 1.0, 1.0), ZERO, &tol()).unwrap();
    assert_eq!(entry(&s2, 1), real(0.5));
    let s2 = schur2(&constants(1.0, 1e-3, 1e-3, 1.0), ZERO, &tol()).unwrap();
    assert!((entry(&s2, 3).re - (1.0 - 1e-6)).abs() < 1e-16);
    let s2 = schur2(&constants(1.0, 1.0, 1.0, 1.0), ZERO, &tol()).unwrap();
    assert!(s2.is_zero());

    let s1 = schur1(&constants(3.0, 1.0, 1.0, 1.0), ZERO, &tol()).unwrap();
    assert_eq!(entry(&s1, 1), real(2.0));
    let b = 1.5;
    let s1 = schur1(&constants(b * b + 1.0, b, b, 1.0), ZERO, &tol()).unwrap();
    assert_eq!(s1, constant(1.0));
    let bm = op(&[], TailRule::Cyclic(vec![TailRule::constant(1.0), TailRule::Zero]));
    let cm = op(&[], TailRule::Cyclic(vec![TailRule::Zero, TailRule::constant(2.0)]));
    let a = op(&[], TailRule::power(1.0, 1.0));
    let m = BlockMatrix::new(a.clone(), bm, cm, constant(1.0)).unwrap();
    let s1 = schur1(&m, ZERO, &tol()).unwrap();
    assert!((1..20).all(|n| entry(&s1, n) == entry(&a, n)));
}

#[test]
fn quadratic_complements() {
    assert!(quad2(&constants(1.0, 1.0, 2.0, 2.0), ZERO, &tol()).unwrap().is_zero());
    assert_eq!(quad2(&constants(1.0, 3.0, 1.0, 1.0), ZERO, &tol()).unwrap(), constant(2.0));
    assert_eq!(quad2(&constants(1.0, 3.0, 1.0, 1.0), real(1.0), &tol()).unwrap(), constant(3.0));

    assert!(quad1(&constants(2.0, 2.0, 1.0, 1.0), ZERO, &tol()).unwrap().is_zero());
    assert_eq!(quad1(&constants(1.0, 1.0, 5.0, 2.0), ZERO, &tol()).unwrap(), constant(3.0));
    assert_eq!(quad1(&constants(1.0, 1.0, 5.0, 2.0), real(2.0), &tol()).unwrap(), constant(5.0));
}

#[test]
fn factorizations() {
    let m = constants(2.0, 1.0, 1.0, 1.0);
    for which in Complement::ALL {
        assert!(factorization_check(&m, ZERO, which, 8, &tol()).unwrap(), "{which}");
    }
    let perturbed = constants(2.0, 1.0 + 1e-3, 1.0, 1.0);
    let direct = hus_core::blockmat::assemble_direct(&perturbed, 8).unwrap();
    let factored = hus_core::blockmat::assemble_factorized(&m, ZERO, Complement::Schur2, 8, &tol()).unwrap();
    assert!(!hus_core::blockmat::matrices_match(&factored, &direct, tol().match_tol));
}

fn n_block(e: DiagonalOperator) -> BlockMatrix {
    BlockMatrix::new(op(&[], TailRule::power(1.0, 1.0)), constant(1.0), constant(1.0), e.into()).unwrap()
}

fn plus(a: TailRule, b: TailRule) -> DiagonalOperator {
    DiagonalOperator::zip_with(&diag(&[], a), &diag(&[], b), |x, y| Ok(x + y), |x, y| x.add(y)).unwrap()
}

#[test]
fn closed_range_examples() {
    let e = plus(TailRule::power(1.0, -1.0), TailRule::constant(1.0));
    let r = closed_range_equivalence(&n_block(e), Complement::Schur2, &tol()).unwrap();
    assert!(r.complement_stable && r.whole_stable && r.consistent);

    let r = closed_range_equivalence(&n_block(diag(&[], TailRule::power(1.0, -1.0))), Complement::Schur2, &tol()).unwrap();
    assert!(r.complement_stable && r.consistent);

    let e = plus(TailRule::power(1.0, -1.0), TailRule::power(1.0, -2.0));
    let r = closed_range_equivalence(&n_block(e), Complement::Schur2, &tol()).unwrap();
    assert!(!r.complement_stable && !r.whole_stable && r.consistent);
}

#[test]
fn bernstein_examples() {
    assert_eq!(bernstein_basis(1, 0, 0.25).unwrap(), 0.75);
    assert_eq!(bernstein_basis(2, 1, 0.5).unwrap(), 0.5);
    let id = bernstein_nodal_matrix(1, &[0.0, 1.0]).unwrap();
    assert_eq!(id, MatrixOperator::identity(2).unwrap());
    let m = bernstein_nodal_matrix(2, &[0.0, 0.5, 1.0]).unwrap();
    assert_eq!(m, MatrixOperator::from_real_rows(&[&[1.0, 0.0, 0.0], &[0.25, 0.5, 0.25], &[0.0, 0.0, 1.0]]).unwrap());
    let g = gamma(&m.into(), &tol()).unwrap().0;
    assert!((g - 0.464_365_532_523_224_8).abs() < 1e-14);
    for n in 1..=20 {
        let m: OperatorModel = bernstein_nodal_matrix(n, &bernstein_nodes(n)).unwrap().into();
        assert!(stability_report(&m, &tol()).unwrap().stable, "n = {n}");
    }
}

#[test]
fn szasz_examples() {
    let spec = SzaszSpec::new(1, 10.0).unwrap();
    for x in [0.0, 0.3, 2.0, 9.5] {
        assert!((szasz_apply(&spec, |_| 1.0, x, 1e-14).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(szasz_apply(&spec, |_| 0.0, x, 1e-14).unwrap(), 0.0);
    }
    let w = szasz_instability_witness(&spec, 3001).unwrap();
    assert_eq!(w.j, 20);
    assert_eq!(w.kernel_gap, 11.0);
    assert!((w.predicted_sup - 0.977_188_491_312_937_4).abs() < 1e-12);
    assert!((w.sup_norm - w.predicted_sup).abs() < 1e-6);
    assert!(w.sup_norm <= 1.0 + 1e-9);
}

#[test]
fn multiplication_examples() {
    let g = |phi: &Phi, n| gamma(&multiplication_sampled(phi, n).unwrap().into(), &tol()).unwrap().0;
    assert_eq!(g(&Phi::IdentityOn01, 9), 0.1);
    assert_eq!([99, 999].map(|n| g(&Phi::IdentityOn01, n)), [0.01, 0.001]);
    for n in [1, 7, 100] {
        assert!(g(&Phi::Shifted(1.0), n) >= 1.0);
    }
}

#[test]
fn named_diagonals() {
    let report = |d| stability_report(&paper_diagonal(d).into(), &tol()).unwrap();
    let r = report(PaperDiagonal::StableN);
    assert!(r.stable && r.gamma == 1.0);
    let r = report(PaperDiagonal::InverseOfStableN);
    assert!(!r.stable && r.gamma == 0.0);
    let r = report(PaperDiagonal::ShiftedWeighted);
    assert!(r.stable && r.gamma == 1.0 && r.kernel_dim == KernelDim::Infinite);
    assert!(!report(PaperDiagonal::MixedUnstable).stable);
    let r = report(PaperDiagonal::KernelPlusN);
    assert!(r.stable && r.spectral_floor == 4.0);
    for d in PaperDiagonal::ALL {
        assert_eq!(d.name().parse::<PaperDiagonal>().unwrap(), d);
    }
}
