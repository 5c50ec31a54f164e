use crate::error::ToyError;
use crate::{toy1, toy2, toy3};
use nalgebra::DVector;
use rand::Rng;
use sdpmodel::SdpProblem;
use symcore::SymMatrix;

/// Identifier of one of the three reference instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToyId {
    Toy1,
    Toy2,
    Toy3,
}

/// Coordinates of a direction inside an instance's parametric family.
///
/// Each reference instance comes with a low-dimensional family of symmetric
/// directions at its anchor; a parameter value identifies one member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ToyParams {
    /// `[[a, b], [b, -b]]`; in the stalled cone iff `a >= 0`, tangent iff
    /// additionally `b = 0`.
    Toy1 { a: f64, b: f64 },
    /// `[[-h22, h12, 0], [h12, h22, h23], [0, h23, 0]]`; in the stalled cone
    /// iff `h22 >= 0`, tangent iff additionally `h23 = 0`.
    Toy2 { h12: f64, h22: f64, h23: f64 },
    /// The 6x6 family with free entries `h` (at positions (1,5)/(4,5) of the
    /// zero block interactions) and `eps >= 0`; never tangent.
    Toy3 { h: f64, eps: f64 },
}

impl ToyParams {
    pub fn id(&self) -> ToyId {
        match self {
            ToyParams::Toy1 { .. } => ToyId::Toy1,
            ToyParams::Toy2 { .. } => ToyId::Toy2,
            ToyParams::Toy3 { .. } => ToyId::Toy3,
        }
    }

    fn values(&self) -> Vec<f64> {
        match *self {
            ToyParams::Toy1 { a, b } => vec![a, b],
            ToyParams::Toy2 { h12, h22, h23 } => vec![h12, h22, h23],
            ToyParams::Toy3 { h, eps } => vec![h, eps],
        }
    }
}

/// The second-order limit triple `(psi_z, psi_x, psi_s)`; they satisfy
/// `psi_z = psi_x - sigma * psi_s`.
#[derive(Debug, Clone)]
pub struct PsiTriple {
    pub psi_z: SymMatrix,
    pub psi_x: SymMatrix,
    pub psi_s: SymMatrix,
}

/// One reference instance: its SDP data, a KKT anchor, a maximum-rank
/// strictly complementary pair, and closed-form second-order oracles over
/// the instance's direction family.
#[derive(Debug, Clone)]
pub struct ToyOracle {
    id: ToyId,
    pub problem: SdpProblem,
    /// Rank-deficient primal anchor.
    pub x_bar: SymMatrix,
    /// Dual slack anchor complementary to `x_bar`.
    pub s_bar: SymMatrix,
    /// Dual multiplier with `A* y_bar + s_bar = C`.
    pub y_bar: DVector<f64>,
    /// Maximum-rank primal solution certifying strict complementarity.
    pub x_sc: SymMatrix,
    /// Maximum-rank dual slack paired with `x_sc`.
    pub s_sc: SymMatrix,
}

impl ToyOracle {
    pub(crate) fn assemble(
        id: ToyId,
        problem: SdpProblem,
        x_bar: SymMatrix,
        s_bar: SymMatrix,
        y_bar: DVector<f64>,
        x_sc: SymMatrix,
        s_sc: SymMatrix,
    ) -> Self {
        let oracle = ToyOracle {
            id,
            problem,
            x_bar,
            s_bar,
            y_bar,
            x_sc,
            s_sc,
        };
        oracle.check_anchor();
        oracle
    }

    /// Build-time sanity check: both stored pairs are optimal, and the
    /// strictly complementary pair has full combined rank.
    fn check_anchor(&self) {
        for (x, s) in [(&self.x_bar, &self.s_bar), (&self.x_sc, &self.s_sc)] {
            let rp = (self.problem.apply_a(x) - self.problem.rhs()).norm();
            assert!(rp <= 1e-10 * (1.0 + self.problem.rhs().norm()));
            assert!(x.inner(s).abs() <= 1e-10 * (1.0 + x.norm() * s.norm()));
        }
        let rd = (&(&self.problem.apply_a_adj(&self.y_bar) + &self.s_bar)
            - self.problem.cost())
        .norm();
        assert!(rd <= 1e-10 * (1.0 + self.problem.cost().norm()));
        let rank = |m: &SymMatrix| {
            m.to_dense()
                .symmetric_eigenvalues()
                .iter()
                .filter(|l| l.abs() > 1e-8 * (1.0 + m.norm()))
                .count()
        };
        assert_eq!(rank(&self.x_sc) + rank(&self.s_sc), self.problem.order());
    }

    pub fn id(&self) -> ToyId {
        self.id
    }

    /// Splitting anchor `z_bar = x_bar - sigma * s_bar` at the given penalty.
    pub fn z_bar(&self, sigma: f64) -> Result<SymMatrix, ToyError> {
        check_sigma(sigma)?;
        Ok(self.x_bar.axpy(-sigma, &self.s_bar))
    }

    fn check_params(&self, params: &ToyParams) -> Result<(), ToyError> {
        if params.id() != self.id {
            return Err(ToyError::ParamsMismatch {
                expected: self.id,
                got: params.id(),
            });
        }
        if params.values().iter().any(|v| !v.is_finite()) {
            return Err(ToyError::OutOfFamily {
                reason: "non-finite parameter value".into(),
            });
        }
        Ok(())
    }

    fn check_family(&self, params: &ToyParams) -> Result<(), ToyError> {
        self.check_params(params)?;
        if !self.in_cone(params)? {
            return Err(ToyError::OutOfFamily {
                reason: match self.id {
                    ToyId::Toy1 => "requires a >= 0".into(),
                    ToyId::Toy2 => "requires h22 >= 0".into(),
                    ToyId::Toy3 => "requires eps >= 0".into(),
                },
            });
        }
        Ok(())
    }

    /// The family member named by `params`, as a dense symmetric direction.
    pub fn direction(&self, params: &ToyParams) -> Result<SymMatrix, ToyError> {
        self.check_params(params)?;
        Ok(match *params {
            ToyParams::Toy1 { a, b } => toy1::direction(a, b),
            ToyParams::Toy2 { h12, h22, h23 } => toy2::direction(h12, h22, h23),
            ToyParams::Toy3 { h, eps } => toy3::direction(h, eps),
        })
    }

    /// Whether the family member lies in the stalled cone at the anchor.
    pub fn in_cone(&self, params: &ToyParams) -> Result<bool, ToyError> {
        self.check_params(params)?;
        Ok(match *params {
            ToyParams::Toy1 { a, .. } => a >= 0.0,
            ToyParams::Toy2 { h22, .. } => h22 >= 0.0,
            ToyParams::Toy3 { eps, .. } => eps >= 0.0,
        })
    }

    /// Whether the family member lies in the tangent subspace of the
    /// solution set (directions with vanishing second-order limit).
    pub fn in_tangent(&self, params: &ToyParams) -> Result<bool, ToyError> {
        self.check_params(params)?;
        Ok(match *params {
            ToyParams::Toy1 { a, b } => a >= 0.0 && b == 0.0,
            ToyParams::Toy2 { h22, h23, .. } => h22 >= 0.0 && h23 == 0.0,
            ToyParams::Toy3 { .. } => false,
        })
    }

    /// The primal-side drift operator value `E` at the family member.
    pub fn drift_e(&self, params: &ToyParams, sigma: f64) -> Result<SymMatrix, ToyError> {
        self.check_family(params)?;
        check_sigma(sigma)?;
        Ok(match *params {
            ToyParams::Toy1 { a, b } => toy1::drift_e(a, b, sigma),
            ToyParams::Toy2 { h12, h22, h23 } => toy2::drift_e(h12, h22, h23, sigma),
            ToyParams::Toy3 { h, eps } => toy3::drift_e(h, eps, sigma),
        })
    }

    /// The dual-side drift operator value `E_perp` at the family member.
    pub fn drift_e_perp(&self, params: &ToyParams, sigma: f64) -> Result<SymMatrix, ToyError> {
        self.check_family(params)?;
        check_sigma(sigma)?;
        Ok(match *params {
            ToyParams::Toy1 { a, b } => toy1::drift_e_perp(a, b, sigma),
            ToyParams::Toy2 { h12, h22, h23 } => toy2::drift_e_perp(h12, h22, h23, sigma),
            ToyParams::Toy3 { h, eps } => toy3::drift_e_perp(h, eps, sigma),
        })
    }

    /// Closed-form second-order limit triple at the family member.
    pub fn psi(&self, params: &ToyParams, sigma: f64) -> Result<PsiTriple, ToyError> {
        self.check_family(params)?;
        check_sigma(sigma)?;
        Ok(match *params {
            ToyParams::Toy1 { a, b } => toy1::psi(a, b, sigma),
            ToyParams::Toy2 { h12, h22, h23 } => toy2::psi(h12, h22, h23, sigma),
            ToyParams::Toy3 { h, eps } => toy3::psi(h, eps, sigma),
        })
    }

    /// Family coordinates of the direction transported from penalty `sigma`
    /// to `sigma_new` (the positive-part derivative plus the rescaled
    /// negative-part derivative). Only available where the family is closed
    /// under that transport.
    pub fn rescaled_params(
        &self,
        params: &ToyParams,
        sigma: f64,
        sigma_new: f64,
    ) -> Result<ToyParams, ToyError> {
        self.check_family(params)?;
        check_sigma(sigma)?;
        check_sigma(sigma_new)?;
        let ratio = sigma_new / sigma;
        match *params {
            ToyParams::Toy1 { a, b } => Ok(ToyParams::Toy1 { a, b: ratio * b }),
            ToyParams::Toy2 { h12, h22, h23 } => Ok(ToyParams::Toy2 {
                h12,
                h22,
                h23: ratio * h23,
            }),
            ToyParams::Toy3 { .. } => Err(ToyError::Unsupported {
                id: self.id,
                reason: "the direction family is not closed under penalty transport".into(),
            }),
        }
    }

    /// Draws family coordinates of a tangent direction, if the family
    /// contains any.
    pub fn sample_tangent(&self, rng: &mut impl Rng) -> Option<ToyParams> {
        match self.id {
            ToyId::Toy1 => Some(ToyParams::Toy1 {
                a: rng.gen_range(0.1..2.0),
                b: 0.0,
            }),
            ToyId::Toy2 => Some(ToyParams::Toy2 {
                h12: rng.gen_range(-1.0..1.0),
                h22: rng.gen_range(0.1..2.0),
                h23: 0.0,
            }),
            ToyId::Toy3 => None,
        }
    }

    /// Draws family coordinates of a cone direction outside the tangent
    /// subspace (bounded away from it, so the second-order limit is
    /// well-scaled).
    pub fn sample_cone_complement(&self, rng: &mut impl Rng) -> ToyParams {
        fn signed<R: Rng + ?Sized>(rng: &mut R) -> f64 {
            let mag = rng.gen_range(0.3..1.0);
            if rng.gen_bool(0.5) {
                mag
            } else {
                -mag
            }
        }
        match self.id {
            ToyId::Toy1 => ToyParams::Toy1 {
                a: rng.gen_range(0.0..2.0),
                b: signed(rng),
            },
            ToyId::Toy2 => ToyParams::Toy2 {
                h12: rng.gen_range(-1.0..1.0),
                h22: rng.gen_range(0.0..2.0),
                h23: signed(rng),
            },
            ToyId::Toy3 => ToyParams::Toy3 {
                h: rng.gen_range(-2.0..2.0),
                eps: rng.gen_range(0.0..0.5),
            },
        }
    }

    /// Single-block SDPA sparse serialization of the instance data.
    pub fn sdpa_text(&self) -> String {
        crate::sdpa::sdpa_text(&self.problem)
    }
}

fn check_sigma(sigma: f64) -> Result<(), ToyError> {
    if sigma.is_finite() && sigma > 0.0 {
        Ok(())
    } else {
        Err(ToyError::InvalidSigma { sigma })
    }
}

/// Free-function form of [`ToyOracle::psi`].
pub fn oracle_psi(
    toy: &ToyOracle,
    params: &ToyParams,
    sigma: f64,
) -> Result<PsiTriple, ToyError> {
    toy.psi(params, sigma)
}
