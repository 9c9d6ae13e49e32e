use crate::{CaseKind, KitError, SpectralData};
use num_rational::Rational64;

/// One closed-form solution row: all entries are exact rational multiples of
/// the scalar curvature.  `wplus`/`wminus` are the block eigenvalues in slot
/// order; `sigma` is the simple eigenvalue of the shared unordered spectrum.
#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub index: usize,
    pub c: [Rational64; 3],
    pub xi: Rational64,
    pub wplus: [Rational64; 3],
    pub wminus: [Rational64; 3],
    pub sigma: Rational64,
}

/// Rows that exchange under an orientation flip (1-based indices); the other
/// three rows are fixed.
pub const FLIP_PAIRS: [(usize, usize); 3] = [(2, 4), (3, 7), (6, 8)];

fn rat(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

// Block slots from the case-C template, in exact arithmetic:
// w±  = (±c2 − 1/12, ±c3 + ξ − 1/12, ±c4 − ξ + 1/6), coefficients of s.
fn slots(c: [Rational64; 3], xi: Rational64, sign: i64) -> [Rational64; 3] {
    let sg = Rational64::from_integer(sign);
    [
        sg * c[0] - rat(1, 12),
        sg * c[1] + xi - rat(1, 12),
        sg * c[2] - xi + rat(1, 6),
    ]
}

// The simple eigenvalue of a three-element multiset with a repeated pair.
fn simple_eigenvalue(spec: [Rational64; 3]) -> Rational64 {
    let mut v = spec;
    v.sort();
    if v[0] == v[1] {
        v[2]
    } else {
        assert_eq!(v[1], v[2], "each row spectrum has a repeated eigenvalue");
        v[0]
    }
}

fn row(index: usize, c: [Rational64; 3], xi: Rational64) -> TableRow {
    let wplus = slots(c, xi, 1);
    let wminus = slots(c, xi, -1);
    let sigma = simple_eigenvalue(wplus);
    // both halves carry the same unordered spectrum
    let mut a = wplus;
    let mut b = wminus;
    a.sort();
    b.sort();
    assert_eq!(a, b, "row {index}: halves disagree");
    assert_eq!(a[0] + a[1] + a[2], Rational64::from_integer(0), "row {index}: trace");
    TableRow { index, c, xi, wplus, wminus, sigma }
}

fn rows() -> [TableRow; 9] {
    let z = rat(0, 1);
    [
        row(1, [z, z, z], rat(1, 8)),
        row(2, [rat(-1, 4), rat(1, 4), z], z),
        row(3, [rat(-1, 4), z, rat(1, 4)], rat(1, 4)),
        row(4, [rat(1, 4), rat(-1, 4), z], z),
        row(5, [z, z, z], rat(1, 4)),
        row(6, [z, rat(1, 8), rat(-1, 8)], rat(1, 8)),
        row(7, [rat(1, 4), z, rat(-1, 4)], rat(1, 4)),
        row(8, [z, rat(-1, 8), rat(1, 8)], rat(1, 8)),
        row(9, [z, z, z], z),
    ]
}

/// The nine solution rows with two equal double Ricci eigenvalues and shared
/// degenerate block spectra.  Rows scale linearly with the scalar curvature,
/// so they are returned as exact rational coefficients; `s` only gates the
/// degenerate case.  The simple eigenvalue of every row lies in
/// {−s/3, −s/12, s/6}.
pub fn nine_case_table(s: f64) -> Result<[TableRow; 9], KitError> {
    if s == 0.0 {
        return Err(KitError::ZeroScalar);
    }
    let table = rows();
    let members = [rat(-1, 3), rat(-1, 12), rat(1, 6)];
    for r in &table {
        assert!(members.contains(&r.sigma), "row {} sigma outside the triple", r.index);
    }
    Ok(table)
}

impl TableRow {
    /// Case-C parameter set realizing this row at scalar curvature `s`; the
    /// double Ricci eigenvalue `lambda` is a free parameter of the row.
    pub fn data(&self, s: f64, lambda: f64) -> Result<SpectralData, KitError> {
        let c = [
            to_f64(self.c[0]) * s,
            to_f64(self.c[1]) * s,
            to_f64(self.c[2]) * s,
        ];
        let d = SpectralData::case_c(s, lambda, c, to_f64(self.xi) * s)?;
        debug_assert_eq!(d.case, CaseKind::C);
        Ok(d)
    }

    /// `(c2, c3, c4)` and `xi` evaluated at scalar curvature `s`.
    pub fn params_at(&self, s: f64) -> ([f64; 3], f64) {
        (
            [to_f64(self.c[0]) * s, to_f64(self.c[1]) * s, to_f64(self.c[2]) * s],
            to_f64(self.xi) * s,
        )
    }

    pub fn wplus_at(&self, s: f64) -> [f64; 3] {
        [to_f64(self.wplus[0]) * s, to_f64(self.wplus[1]) * s, to_f64(self.wplus[2]) * s]
    }

    pub fn wminus_at(&self, s: f64) -> [f64; 3] {
        [to_f64(self.wminus[0]) * s, to_f64(self.wminus[1]) * s, to_f64(self.wminus[2]) * s]
    }

    pub fn sigma_at(&self, s: f64) -> f64 {
        to_f64(self.sigma) * s
    }
}

/// CSV rendering of the table evaluated at scalar curvature `s`.
pub fn table_csv(s: f64) -> Result<String, KitError> {
    let table = nine_case_table(s)?;
    let mut w = csv::Writer::from_writer(vec![]);
    w.write_record([
        "case", "c2", "c3", "c4", "xi", "wp1", "wp2", "wp3", "wm1", "wm2", "wm3",
    ])
    .expect("in-memory write");
    for r in &table {
        let mut rec = vec![format!("table-{}", r.index)];
        for v in r.c {
            rec.push(format!("{}", to_f64(v) * s));
        }
        rec.push(format!("{}", to_f64(r.xi) * s));
        for v in r.wplus_at(s) {
            rec.push(format!("{v}"));
        }
        for v in r.wminus_at(s) {
            rec.push(format!("{v}"));
        }
        w.write_record(&rec).expect("in-memory write");
    }
    Ok(String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8"))
}
