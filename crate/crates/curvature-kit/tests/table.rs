use curvature_kit::{build, nine_case_table, table_csv, verify_we_algebraic, KitError, FLIP_PAIRS};
use num_rational::Rational64;
use tensor_core::{
    ricci_of, scalar_of, weyl_blocks, weyl_of, BivectorFrame, SymMat, NMAX,
};

fn rat(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

// Frozen copy of the table: parameters in units of s, spectra in units of s/24.
// Guards the template derivation in the crate against accidental edits.
const FROZEN: [([i64; 4], [i64; 3], [i64; 3]); 9] = [
    ([0, 0, 0, 3], [-2, 1, 1], [-2, 1, 1]),     // xi = s/8  -> 3/24
    ([-6, 6, 0, 0], [-8, 4, 4], [4, -8, 4]),    // c2 = -s/4 -> -6/24
    ([-6, 0, 6, 6], [-8, 4, 4], [4, 4, -8]),
    ([6, -6, 0, 0], [4, -8, 4], [-8, 4, 4]),
    ([0, 0, 0, 6], [-2, 4, -2], [-2, 4, -2]),
    ([0, 3, -3, 3], [-2, 4, -2], [-2, -2, 4]),
    ([6, 0, -6, 6], [4, 4, -8], [-8, 4, 4]),
    ([0, -3, 3, 3], [-2, -2, 4], [-2, 4, -2]),
    ([0, 0, 0, 0], [-2, -2, 4], [-2, -2, 4]),
];

#[test]
fn frozen_rows_match_exactly() {
    let table = nine_case_table(1.0).unwrap();
    for (row, (params, wp, wm)) in table.iter().zip(FROZEN) {
        for k in 0..3 {
            assert_eq!(row.c[k], rat(params[k], 24), "row {} c{}", row.index, k + 2);
            assert_eq!(row.wplus[k], rat(wp[k], 24), "row {} wp{}", row.index, k + 1);
            assert_eq!(row.wminus[k], rat(wm[k], 24), "row {} wm{}", row.index, k + 1);
        }
        assert_eq!(row.xi, rat(params[3], 24), "row {} xi", row.index);
    }
}

#[test]
fn shared_spectra_and_sigma_membership() {
    let table = nine_case_table(-2.5).unwrap();
    let members = [rat(-1, 3), rat(-1, 12), rat(1, 6)];
    for row in &table {
        let mut p = row.wplus;
        let mut m = row.wminus;
        p.sort();
        m.sort();
        assert_eq!(p, m, "row {} halves differ as multisets", row.index);
        assert!(members.contains(&row.sigma), "row {} sigma", row.index);
        // sigma really is the simple eigenvalue: it appears exactly once
        let count = row.wplus.iter().filter(|v| **v == row.sigma).count();
        assert_eq!(count, 1, "row {}", row.index);
        assert_eq!(row.sigma_at(-2.5), (*row.sigma.numer() as f64 / *row.sigma.denom() as f64) * -2.5);
    }
}

#[test]
fn orientation_flip_pairs_swap_halves() {
    let table = nine_case_table(3.0).unwrap();
    for (a, b) in FLIP_PAIRS {
        let ra = &table[a - 1];
        let rb = &table[b - 1];
        assert_eq!(ra.wplus, rb.wminus, "rows {a} and {b}");
        assert_eq!(ra.wminus, rb.wplus, "rows {a} and {b}");
        for k in 0..3 {
            assert_eq!(ra.c[k], -rb.c[k], "rows {a} and {b} c{}", k + 2);
        }
        assert_eq!(ra.xi, rb.xi, "rows {a} and {b} xi");
    }
    for fixed in [1usize, 5, 9] {
        let r = &table[fixed - 1];
        assert_eq!(r.wplus, r.wminus, "row {fixed} should be flip invariant");
    }
}

#[test]
fn built_rows_pass_the_quadratic_check_and_reproduce_their_spectra() {
    let s = 24.0;
    let g = SymMat::identity(4);
    let mut u = [[0.0; NMAX]; NMAX];
    for k in 0..4 {
        u[k][k] = 1.0;
    }
    let frame = BivectorFrame::from_frame(&u, &g).unwrap();
    for row in &nine_case_table(s).unwrap() {
        let r = build(&row.data(s, 1.0).unwrap()).unwrap();
        let res = verify_we_algebraic(&r);
        assert!(res < 1e-11, "row {} residual {res:e}", row.index);

        let ricci = ricci_of(&r, &g);
        let sc = scalar_of(&ricci, &g);
        let w = weyl_of(&r, &g, &ricci, sc);
        let blocks = weyl_blocks(&w, &g, &frame).unwrap();
        let wp = row.wplus_at(s);
        let wm = row.wminus_at(s);
        for k in 0..3 {
            assert!((blocks.plus[k][k] - wp[k]).abs() < 1e-12 * (1.0 + wp[k].abs()));
            assert!((blocks.minus[k][k] - wm[k]).abs() < 1e-12 * (1.0 + wm[k].abs()));
        }
    }
}

#[test]
fn zero_scalar_is_rejected() {
    assert!(matches!(nine_case_table(0.0), Err(KitError::ZeroScalar)));
    assert!(table_csv(0.0).is_err());
}

#[test]
fn csv_rendering_has_the_agreed_layout() {
    let text = table_csv(24.0).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[0], "case,c2,c3,c4,xi,wp1,wp2,wp3,wm1,wm2,wm3");
    assert_eq!(lines[1], "table-1,0,0,0,3,-2,1,1,-2,1,1");
    assert_eq!(lines[2], "table-2,-6,6,0,0,-8,4,4,4,-8,4");
    assert_eq!(lines[9], "table-9,0,0,0,0,-2,-2,4,-2,-2,4");
}
