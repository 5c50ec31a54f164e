use crate::describe::{block, set_block, ThreeLevelDescription};
use crate::error::JetError;
use nalgebra::DMatrix;
use symcore::{eigen_decompose, default_tols, SymMatrix};

/// Scalar data driving the general spectral second derivative:
/// the generating function `f`, its directional derivative `f'(lambda; mu)`,
/// and its parabolic second derivative `f''(lambda; mu, nu)`.
///
/// Eigenvalue arguments arrive as clustered group representatives, so
/// zero-labeled groups pass exactly `0.0` and sign tests inside a table are
/// exact.
pub trait SpectralTable {
    fn f(&self, lambda: f64) -> f64;
    fn df(&self, lambda: f64, mu: f64) -> f64;
    fn d2f(&self, lambda: f64, mu: f64, nu: f64) -> f64;
}

/// The identity function `f(x) = x`; its spectral second derivative is `W`
/// for every triplet.
pub struct IdentityTable;

impl SpectralTable for IdentityTable {
    fn f(&self, lambda: f64) -> f64 {
        lambda
    }
    fn df(&self, _lambda: f64, mu: f64) -> f64 {
        mu
    }
    fn d2f(&self, _lambda: f64, _mu: f64, nu: f64) -> f64 {
        nu
    }
}

/// The positive part `f(x) = max(x, 0)` generating the PSD cone projection.
pub struct PosPartTable;

impl SpectralTable for PosPartTable {
    fn f(&self, lambda: f64) -> f64 {
        lambda.max(0.0)
    }
    fn df(&self, lambda: f64, mu: f64) -> f64 {
        if lambda > 0.0 {
            mu
        } else if lambda == 0.0 {
            mu.max(0.0)
        } else {
            0.0
        }
    }
    fn d2f(&self, lambda: f64, mu: f64, nu: f64) -> f64 {
        if lambda > 0.0 {
            nu
        } else if lambda < 0.0 {
            0.0
        } else if mu > 0.0 {
            nu
        } else if mu == 0.0 {
            nu.max(0.0)
        } else {
            0.0
        }
    }
}

/// First divided difference `(f(x) - f(y)) / (x - y)`.
fn dd1(table: &dyn SpectralTable, x: f64, y: f64) -> f64 {
    (table.f(x) - table.f(y)) / (x - y)
}

/// Second divided difference over three pairwise distinct points.
fn dd2(table: &dyn SpectralTable, x: f64, y: f64, z: f64) -> f64 {
    table.f(x) / ((x - y) * (x - z))
        + table.f(y) / ((y - x) * (y - z))
        + table.f(z) / ((z - x) * (z - y))
}

/// Applies the scalar map `g` spectrally to the diagonal block described by
/// `(q, group representatives per index)`: `Q diag(g(rep)) Q^T`.
fn apply_spectral(q: &DMatrix<f64>, reps: &[f64], g: impl Fn(f64) -> f64) -> DMatrix<f64> {
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        reps.len(),
        reps.iter().map(|&m| g(m)),
    ));
    q * d * q.transpose()
}

/// Per-index representative eigenvalues for a clustered partition.
fn index_reps(part: &symcore::EigenPartition) -> Vec<f64> {
    let mut reps = vec![0.0; part.order()];
    for g in &part.groups {
        for r in reps[g.range.clone()].iter_mut() {
            *r = g.value;
        }
    }
    reps
}

/// General spectral second-order directional derivative
/// `F''(Z; H, W) = Gamma_1 + Gamma_2 + Gamma_3` for the spectral function
/// generated by the scalar table.
///
/// Specialized to [`PosPartTable`] this is an independent oracle for
/// [`crate::pi_plus_dd2`]: the two routes share only the eigen-structure
/// description, not the blockwise formulas.
pub fn general_spectral_dd2(
    desc: &ThreeLevelDescription,
    table: &dyn SpectralTable,
) -> Result<SymMatrix, JetError> {
    let n = desc.h.order();
    let hd = desc.h.to_dense();
    let wd = desc.w.to_dense();
    let groups = &desc.level1.groups;
    let mut r = DMatrix::zeros(n, n);

    for (ai, ga) in groups.iter().enumerate() {
        for (bi, gb) in groups.iter().enumerate().skip(ai) {
            let la = ga.value;
            let lb = gb.value;
            let mut value;
            if ai == bi {
                // Gamma_1 diagonal block.
                value = DMatrix::zeros(ga.len(), ga.len());
                for (ci, gc) in groups.iter().enumerate() {
                    if ci == ai {
                        continue;
                    }
                    let lc = gc.value;
                    let hac = block(&hd, &ga.range, &gc.range);
                    let hca = block(&hd, &gc.range, &ga.range);
                    let coeff = -2.0 * (table.f(la) - table.f(lc)) / ((la - lc) * (la - lc));
                    value += coeff * (hac * hca);
                }

                // Gamma_2 diagonal block: Q^a [Omega o Vhat] (Q^a)^T with
                // Omega carrying the divided differences of f'(lambda_a; .)
                // on off-diagonal beta-blocks and zero on diagonal blocks.
                let lvl2 = &desc.level2[ai];
                let vhat = lvl2.v.conjugate_by(&lvl2.q).to_dense();
                let m = ga.len();
                let mut masked = DMatrix::zeros(m, m);
                for gi in &lvl2.partition.groups {
                    for gj in &lvl2.partition.groups {
                        if gi.range.start == gj.range.start {
                            continue;
                        }
                        let omega =
                            (table.df(la, gi.value) - table.df(la, gj.value)) / (gi.value - gj.value);
                        for p in gi.range.clone() {
                            for q in gj.range.clone() {
                                masked[(p, q)] = omega * vhat[(p, q)];
                            }
                        }
                    }
                }
                value += &lvl2.q * masked * lvl2.q.transpose();

                // Gamma_3 diagonal block: per beta-group spectral application
                // of f''(lambda_a; mu_i, .) to the (i, i) block of Vhat.
                let mut g3 = DMatrix::zeros(m, m);
                for gi in &lvl2.partition.groups {
                    let vii = SymMatrix::from_dense(&block(&vhat, &gi.range, &gi.range));
                    let (ct, zt) = default_tols(&vii);
                    let (veig, vpart) = eigen_decompose(&vii, ct, zt)?;
                    let reps = index_reps(&vpart);
                    let applied =
                        apply_spectral(&veig.q, &reps, |nu| table.d2f(la, gi.value, nu));
                    g3.view_mut((gi.range.start, gi.range.start), (gi.len(), gi.len()))
                        .copy_from(&applied);
                }
                value += &lvl2.q * g3 * lvl2.q.transpose();
            } else {
                // Gamma_1 off-diagonal block.
                let hab = block(&hd, &ga.range, &gb.range);
                value = dd1(table, la, lb) * block(&wd, &ga.range, &gb.range);
                for (ci, gc) in groups.iter().enumerate() {
                    if ci == ai || ci == bi {
                        continue;
                    }
                    let hac = block(&hd, &ga.range, &gc.range);
                    let hcb = block(&hd, &gc.range, &gb.range);
                    value += 2.0 * dd2(table, la, lb, gc.value) * (hac * hcb);
                }
                let haa = block(&hd, &ga.range, &ga.range);
                let hbb = block(&hd, &gb.range, &gb.range);
                let coeff = 2.0 * (table.f(la) - table.f(lb)) / ((la - lb) * (la - lb));
                value -= coeff * (&haa * &hab - &hab * &hbb);

                // Gamma_2 off-diagonal block.
                let lvl2a = &desc.level2[ai];
                let lvl2b = &desc.level2[bi];
                let phi_a = apply_spectral(&lvl2a.q, &index_reps(&lvl2a.partition), |mu| {
                    table.df(la, mu)
                });
                let phi_b = apply_spectral(&lvl2b.q, &index_reps(&lvl2b.partition), |mu| {
                    table.df(lb, mu)
                });
                value += (2.0 / (la - lb)) * (&phi_a * &hab);
                value += (2.0 / (lb - la)) * (&hab * &phi_b);
                // Gamma_3 vanishes off the diagonal.
            }
            set_block(&mut r, &ga.range, &gb.range, &value);
        }
    }
    Ok(SymMatrix::from_dense(&r).conjugate_by(&desc.q.transpose()))
}
