use curvature_kit::{build, verify_we_algebraic, SpectralData};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tensor_core::{
    einstein_of, ricci_of, scalar_of, weyl_blocks, weyl_of, BivectorFrame, CurvTensor,
    SymMat, NMAX,
};

fn identity_frame() -> [[f64; NMAX]; NMAX] {
    let mut u = [[0.0; NMAX]; NMAX];
    for k in 0..4 {
        u[k][k] = 1.0;
    }
    u
}

fn random_data(rng: &mut ChaCha8Rng) -> SpectralData {
    let c2 = rng.gen_range(-2.0..2.0);
    let c3 = rng.gen_range(-2.0..2.0);
    let c = [c2, c3, -c2 - c3];
    match rng.gen_range(0..3) {
        0 => {
            let m1 = rng.gen_range(-2.0..2.0);
            let m2 = rng.gen_range(-2.0..2.0);
            let m3 = rng.gen_range(-2.0..2.0);
            SpectralData::case_a([m1, m2, m3, -m1 - m2 - m3], c).unwrap()
        }
        1 => SpectralData::case_b(
            rng.gen_range(-3.0..3.0),
            rng.gen_range(0.0..2.0),
            rng.gen_range(0.0..2.0),
            c,
        )
        .unwrap(),
        _ => SpectralData::case_c(
            rng.gen_range(-3.0..3.0),
            rng.gen_range(0.0..2.0),
            c,
            rng.gen_range(-1.0..1.0),
        )
        .unwrap(),
    }
}

#[test]
fn recomputed_invariants_reproduce_the_inputs() {
    let g = SymMat::identity(4);
    let frame = BivectorFrame::from_frame(&identity_frame(), &g).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..60 {
        let data = random_data(&mut rng);
        let r = build(&data).unwrap();
        assert!(r.symmetry_residual() < 1e-12 * (1.0 + r.sup()));

        let ricci = ricci_of(&r, &g);
        let s = scalar_of(&ricci, &g);
        let e = einstein_of(&ricci, &g, s);
        assert!((s - data.s).abs() < 1e-12 * (1.0 + data.s.abs()));
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { data.e_diag[i] } else { 0.0 };
                assert!(
                    (e.m[i][j] - want).abs() < 1e-12 * (1.0 + want.abs()),
                    "einstein entry ({i},{j})"
                );
            }
        }

        let w = weyl_of(&r, &g, &ricci, s);
        let blocks = weyl_blocks(&w, &g, &frame).unwrap();
        assert!(blocks.cross_sup < 1e-12);
        let wp = data.wplus_slots();
        let wm = data.wminus_slots();
        for a in 0..3 {
            for b in 0..3 {
                let want_p = if a == b { wp[a] } else { 0.0 };
                let want_m = if a == b { wm[a] } else { 0.0 };
                assert!((blocks.plus[a][b] - want_p).abs() < 1e-12 * (1.0 + want_p.abs()));
                assert!((blocks.minus[a][b] - want_m).abs() < 1e-12 * (1.0 + want_m.abs()));
            }
        }
    }
}

#[test]
fn worked_block_examples() {
    // s = 12, lambda = 2, mu = 1, no Weyl offsets: both blocks (-1, -1, 2)
    let b = SpectralData::case_b(12.0, 2.0, 1.0, [0.0; 3]).unwrap();
    assert_eq!(b.e_diag, [-2.0, -1.0, 1.0, 2.0]);
    assert_eq!(b.wplus_slots(), [-1.0, -1.0, 2.0]);
    assert_eq!(b.wminus_slots(), [-1.0, -1.0, 2.0]);

    // s = 24, lambda = 1, shear 3: both blocks (-2, 1, 1)
    let c = SpectralData::case_c(24.0, 1.0, [0.0; 3], 3.0).unwrap();
    assert_eq!(c.wplus_slots(), [-2.0, 1.0, 1.0]);
    assert_eq!(c.wminus_slots(), [-2.0, 1.0, 1.0]);
}

#[test]
fn zero_data_builds_the_zero_tensor() {
    let d = SpectralData::case_a([0.0; 4], [0.0; 3]).unwrap();
    let r = build(&d).unwrap();
    assert_eq!(r.sup(), 0.0);
}

#[test]
fn degenerate_case_b_equals_unsheared_case_c() {
    let c = [0.7, -0.4, -0.3];
    let b = build(&SpectralData::case_b(5.0, 1.3, 1.3, c).unwrap()).unwrap();
    let cc = build(&SpectralData::case_c(5.0, 1.3, c, 0.0).unwrap()).unwrap();
    assert_eq!(b.add(&cc.scale(-1.0)).sup(), 0.0);
}

#[test]
fn every_valid_parameter_set_passes_the_quadratic_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let r = build(&random_data(&mut rng)).unwrap();
        worst = worst.max(verify_we_algebraic(&r));
    }
    assert!(worst < 1e-11, "worst residual {worst:e}");
}

#[test]
fn constant_curvature_is_clean() {
    let g = SymMat::identity(4);
    let r = CurvTensor::constant_curvature(0.8, &g);
    assert!(verify_we_algebraic(&r) < 1e-14);
}

#[test]
fn perturbed_tensor_fails_the_quadratic_check() {
    let r = build(&SpectralData::case_b(12.0, 2.0, 1.0, [0.3, -0.1, -0.2]).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut entries = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..=i {
            let v = rng.gen_range(-1.0..1.0);
            entries[i][j] = v;
            entries[j][i] = v;
        }
    }
    let a = SymMat::from_fn(4, |i, j| entries[i][j]);
    let mut p = CurvTensor::kulkarni_nomizu(&a, &SymMat::identity(4));
    p = p.scale(0.1 / p.frobenius());
    let res = verify_we_algebraic(&r.add(&p));
    assert!(res > 1e-3, "perturbation residual {res:e}");
}

#[test]
fn signed_even_permutations_permute_both_halves_together() {
    let data = SpectralData::case_c(24.0, 1.0, [0.5, -0.2, -0.3], 3.0).unwrap();
    let r = build(&data).unwrap();
    let g = SymMat::identity(4);
    let ricci = ricci_of(&r, &g);
    let s = scalar_of(&ricci, &g);
    let w = weyl_of(&r, &g, &ricci, s);

    // 3-cycle on the last three frame vectors: cycles the bivector slots
    let e = identity_frame();
    let cycled = [e[0], e[2], e[3], e[1]];
    let blocks = weyl_blocks(&w, &g, &BivectorFrame::from_frame(&cycled, &g).unwrap()).unwrap();
    let wp = data.wplus_slots();
    let wm = data.wminus_slots();
    let expect_p = [wp[1], wp[2], wp[0]];
    let expect_m = [wm[1], wm[2], wm[0]];
    for k in 0..3 {
        assert!((blocks.plus[k][k] - expect_p[k]).abs() < 1e-12);
        assert!((blocks.minus[k][k] - expect_m[k]).abs() < 1e-12);
    }

    // double sign flip keeps every slot in place
    let flipped = [
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
        e[2],
        e[3],
    ];
    let blocks2 =
        weyl_blocks(&w, &g, &BivectorFrame::from_frame(&flipped, &g).unwrap()).unwrap();
    for k in 0..3 {
        assert!((blocks2.plus[k][k] - wp[k]).abs() < 1e-12);
        assert!((blocks2.minus[k][k] - wm[k]).abs() < 1e-12);
    }
}

#[test]
fn constraint_violations_are_rejected() {
    assert!(SpectralData::case_a([1.0, 0.0, 0.0, 0.0], [0.0; 3]).is_err());
    assert!(SpectralData::case_b(1.0, 1.0, 0.5, [0.1, 0.1, 0.1]).is_err());
    assert!(SpectralData::case_c(1.0, 1.0, [1.0, 1.0, -1.0], 0.2).is_err());
}
