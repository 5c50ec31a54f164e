use crate::describe::{block, build_three_level, set_block, JetTols, ThreeLevelDescription};
use crate::error::JetError;
use crate::firstorder::pi_plus_dd1;
use nalgebra::DMatrix;
use symcore::{psd_project, SignClass, SymMatrix};

/// Parabolic second-order directional derivative `Pi_+''(Z; H, W)` along the
/// path `Z + tH + (t^2/2)W`, evaluated from a prebuilt three-level
/// description.
///
/// All divided-difference coefficients use group representative eigenvalues;
/// the `(0,0)` block carries the self-similar term
/// `Pi_+'(H_00; V_0(H, W))` evaluated recursively through the first-order
/// jet.
pub fn pi_plus_dd2_from(desc: &ThreeLevelDescription) -> Result<SymMatrix, JetError> {
    let n = desc.h.order();
    let hd = desc.h.to_dense();
    let wd = desc.w.to_dense();
    let groups = &desc.level1.groups;
    let zero = desc.level1.zero_group().cloned();

    // Pieces reused across blocks when a zero group is present.
    let (h00_sym, psd_h00, psd_neg_h00) = match &zero {
        Some(g) => {
            let h00 = SymMatrix::from_dense(&block(&hd, &g.range, &g.range));
            let plus = psd_project(&h00)?.to_dense();
            let plus_neg = psd_project(&h00.scale(-1.0))?.to_dense();
            (Some(h00), Some(plus), Some(plus_neg))
        }
        None => (None, None, None),
    };

    let mut r = DMatrix::zeros(n, n);
    for (ai, ga) in groups.iter().enumerate() {
        for gb in groups.iter().skip(ai) {
            let la = ga.value;
            let lb = gb.value;
            let value = match (ga.label, gb.label) {
                (SignClass::Pos, SignClass::Pos) => {
                    let mut v = block(&wd, &ga.range, &gb.range);
                    for gc in groups.iter().filter(|g| g.label == SignClass::Neg) {
                        let lc = gc.value;
                        let hac = block(&hd, &ga.range, &gc.range);
                        let hcb = block(&hd, &gc.range, &gb.range);
                        v += (2.0 * -lc / ((lc - la) * (lc - lb))) * (hac * hcb);
                    }
                    v
                }
                (SignClass::Pos, SignClass::Zero) => {
                    let mut v = block(&wd, &ga.range, &gb.range);
                    for gc in groups.iter().filter(|g| g.label == SignClass::Neg) {
                        let lc = gc.value;
                        let hac = block(&hd, &ga.range, &gc.range);
                        let hc0 = block(&hd, &gc.range, &gb.range);
                        v += (2.0 / (la - lc)) * (hac * hc0);
                    }
                    let ha0 = block(&hd, &ga.range, &gb.range);
                    v -= (2.0 / la) * (ha0 * psd_neg_h00.as_ref().unwrap());
                    v
                }
                (SignClass::Pos, SignClass::Neg) => {
                    let mut v = (la / (la - lb)) * block(&wd, &ga.range, &gb.range);
                    for gc in groups.iter().filter(|g| g.label == SignClass::Pos) {
                        let lc = gc.value;
                        let hac = block(&hd, &ga.range, &gc.range);
                        let hcb = block(&hd, &gc.range, &gb.range);
                        v += (2.0 * -lb / ((lb - la) * (lb - lc))) * (hac * hcb);
                    }
                    if let Some(g0) = &zero {
                        let ha0 = block(&hd, &ga.range, &g0.range);
                        let h0b = block(&hd, &g0.range, &gb.range);
                        v += (2.0 / (la - lb)) * (ha0 * h0b);
                    }
                    for gc in groups.iter().filter(|g| g.label == SignClass::Neg) {
                        let lc = gc.value;
                        let hac = block(&hd, &ga.range, &gc.range);
                        let hcb = block(&hd, &gc.range, &gb.range);
                        v += (2.0 * la / ((la - lb) * (la - lc))) * (hac * hcb);
                    }
                    v
                }
                (SignClass::Zero, SignClass::Zero) => {
                    let mut v = DMatrix::zeros(ga.len(), ga.len());
                    for gc in groups.iter().filter(|g| g.label == SignClass::Pos) {
                        let h0c = block(&hd, &ga.range, &gc.range);
                        let hc0 = block(&hd, &gc.range, &ga.range);
                        v += (2.0 / gc.value) * (h0c * hc0);
                    }
                    // Self-similar term: first-order jet of the projection at
                    // the rotated (0,0) block of H in the direction V_0.
                    let k = groups.iter().position(|g| g.label == SignClass::Zero).unwrap();
                    let v0 = &desc.level2[k].v;
                    v += pi_plus_dd1(h00_sym.as_ref().unwrap(), v0)?.to_dense();
                    v
                }
                (SignClass::Zero, SignClass::Neg) => {
                    let mut v = DMatrix::zeros(ga.len(), gb.len());
                    for gc in groups.iter().filter(|g| g.label == SignClass::Pos) {
                        let lc = gc.value;
                        let h0c = block(&hd, &ga.range, &gc.range);
                        let hcb = block(&hd, &gc.range, &gb.range);
                        v += (2.0 / (lc - lb)) * (h0c * hcb);
                    }
                    let h0b = block(&hd, &ga.range, &gb.range);
                    v += (2.0 / -lb) * (psd_h00.as_ref().unwrap() * h0b);
                    v
                }
                (SignClass::Neg, SignClass::Neg) => {
                    let mut v = DMatrix::zeros(ga.len(), gb.len());
                    for gc in groups.iter().filter(|g| g.label == SignClass::Pos) {
                        let lc = gc.value;
                        let hac = block(&hd, &ga.range, &gc.range);
                        let hcb = block(&hd, &gc.range, &gb.range);
                        v += (2.0 * lc / ((lc - la) * (lc - lb))) * (hac * hcb);
                    }
                    v
                }
                // Groups are in descending order, so these cases cannot occur
                // with ai <= bi.
                (SignClass::Zero, SignClass::Pos)
                | (SignClass::Neg, SignClass::Pos)
                | (SignClass::Neg, SignClass::Zero) => unreachable!(),
            };
            set_block(&mut r, &ga.range, &gb.range, &value);
        }
    }
    Ok(SymMatrix::from_dense(&r).conjugate_by(&desc.q.transpose()))
}

/// `Pi_+''(Z; H, W)` with a description built on the fly using default
/// tolerances.
pub fn pi_plus_dd2(z: &SymMatrix, h: &SymMatrix, w: &SymMatrix) -> Result<SymMatrix, JetError> {
    let desc = build_three_level(z, h, w, JetTols::for_matrix(z))?;
    pi_plus_dd2_from(&desc)
}

/// `Pi_-''(Z; H, W)` via the exact symmetry `Pi_-(Z) = -Pi_+(-Z)`, so that
/// the additivity identity `Pi_+'' + Pi_-'' = W` is a genuine cross-check.
pub fn pi_minus_dd2(z: &SymMatrix, h: &SymMatrix, w: &SymMatrix) -> Result<SymMatrix, JetError> {
    Ok(pi_plus_dd2(&z.scale(-1.0), &h.scale(-1.0), &w.scale(-1.0))?.scale(-1.0))
}

/// Frobenius norm of the parabolic Taylor remainder
/// `Pi_+(Z + tH + (t^2/2)W) - Pi_+(Z) - t Pi_+' - (t^2/2) Pi_+''` at a given
/// `t > 0`. Used by the o(t^2) trend checks; the limit is one-sided, so no
/// central differencing applies.
pub fn taylor_remainder(
    z: &SymMatrix,
    h: &SymMatrix,
    w: &SymMatrix,
    t: f64,
) -> Result<f64, JetError> {
    let perturbed = z.axpy(t, h).axpy(0.5 * t * t, w);
    let lhs = psd_project(&perturbed)?;
    let mut rhs = psd_project(z)?;
    rhs += &pi_plus_dd1(z, h)?.scale(t);
    rhs += &pi_plus_dd2(z, h, w)?.scale(0.5 * t * t);
    Ok((&lhs - &rhs).norm())
}
