use crate::matching::CaseMatch;
use crate::residuals::we_residuals;
use crate::SigError;
use metric_field::CurvaturePack;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use tensor_core::{
    einstein_of, ricci_of, scalar_of, spectrum3, sym_eigen, weyl_blocks, weyl_of,
    BivectorFrame, CurvTensor, SymMat, NMAX,
};

/// Pointwise spectral fingerprint of a four-dimensional curvature pack.
///
/// Under a homothety g ↦ k²g every number here scales by k⁻².  The traceless
/// Ricci spectrum sums to zero and so does each Weyl block spectrum.
#[derive(Clone, Copy, Debug)]
pub struct SpectralSignature {
    pub scalar: f64,
    /// Generalized eigenvalues of the traceless Ricci tensor, ascending.
    pub e_spec: [f64; 4],
    /// Self-dual Weyl block eigenvalues in the Ricci eigenframe, ascending.
    pub wplus_spec: [f64; 3],
    /// Anti-self-dual block eigenvalues, ascending.
    pub wminus_spec: [f64; 3],
    /// Worst of the two quadratic-condition residuals.
    pub we_residual: f64,
    pub direct_residual: f64,
    pub weyl_residual: f64,
    /// Rows are the g-orthonormal, positively oriented Ricci eigenframe.
    pub frame: [[f64; NMAX]; NMAX],
}

/// Extracts the signature of a pack.
///
/// Unless `force` is set, the pack must satisfy the quadratic condition at
/// tolerance `tol`; packs that fail it still have well-defined spectra, and
/// `force` admits them for diagnostic use.
pub fn signature_at(
    pack: &CurvaturePack,
    tol: f64,
    force: bool,
) -> Result<SpectralSignature, SigError> {
    let (direct, weyl_form) = we_residuals(pack)?;
    let residual = direct.max(weyl_form);
    if !force && !(residual <= tol) {
        return Err(SigError::NotWeaklyEinstein { residual, tol });
    }
    let eig = sym_eigen(&pack.einstein, &pack.g)?;
    let frame = eig.vectors;
    let bframe = BivectorFrame::from_frame(&frame, &pack.g)?;
    let w = pack.weyl.as_ref().expect("4-dimensional packs carry a Weyl tensor");
    let blocks = weyl_blocks(w, &pack.g, &bframe)?;
    Ok(SpectralSignature {
        scalar: pack.scalar,
        e_spec: [eig.values[0], eig.values[1], eig.values[2], eig.values[3]],
        wplus_spec: spectrum3(&blocks.plus),
        wminus_spec: spectrum3(&blocks.minus),
        we_residual: residual,
        direct_residual: direct,
        weyl_residual: weyl_form,
        frame,
    })
}

/// Wraps an algebraic curvature tensor as a pack on the identity metric at
/// the origin, so tensor-level data can flow through the pointwise tooling.
pub fn algebraic_pack(r: &CurvTensor) -> CurvaturePack {
    assert_eq!(r.n, 4, "algebraic packs are 4-dimensional");
    let g = SymMat::identity(4);
    let ricci = ricci_of(r, &g);
    let scalar = scalar_of(&ricci, &g);
    let einstein = einstein_of(&ricci, &g, scalar);
    let weyl = weyl_of(r, &g, &ricci, scalar);
    CurvaturePack {
        point: vec![0.0; 4],
        g,
        ginv: g,
        gamma: [[[0.0; NMAX]; NMAX]; NMAX],
        riemann: *r,
        ricci,
        einstein,
        scalar,
        weyl: Some(weyl),
    }
}

/// Flat serialization of one classified point.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SignatureRecord {
    pub point: Vec<f64>,
    pub s: f64,
    pub e_spec: [f64; 4],
    pub wp_spec: [f64; 3],
    pub wm_spec: [f64; 3],
    pub residuals: ResidualPair,
    pub case: String,
    pub params: BTreeMap<String, f64>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct ResidualPair {
    pub direct: f64,
    pub weyl_form: f64,
}

impl SignatureRecord {
    pub fn new(point: &[f64], sig: &SpectralSignature, matched: &CaseMatch) -> Self {
        SignatureRecord {
            point: point.to_vec(),
            s: sig.scalar,
            e_spec: sig.e_spec,
            wp_spec: sig.wplus_spec,
            wm_spec: sig.wminus_spec,
            residuals: ResidualPair {
                direct: sig.direct_residual,
                weyl_form: sig.weyl_residual,
            },
            case: matched.label.to_string(),
            params: matched.params.clone(),
        }
    }
}
