use std::cell::OnceCell;

use super::gen::UnitVector;
use super::{CheckKind, CheckResult, InstanceId};
use crate::error::{Error, Result};
use crate::matfun::{
    jacobi_eigen, jacobi_eigenvalues, loewner_margin, EigenDecomp, MatrixFn, SymMatrix,
};
use crate::means::{weighted_arithmetic, weighted_geometric, weighted_harmonic, SpdPair};
use crate::scalar::{ln_specht, log_mean, specht_ratio, Weight};

fn cached(
    cell: &OnceCell<Result<SymMatrix>>,
    f: impl FnOnce() -> Result<SymMatrix>,
) -> Result<&SymMatrix> {
    cell.get_or_init(f).as_ref().map_err(Clone::clone)
}

fn lambda_min(a: &SymMatrix) -> Result<f64> {
    Ok(jacobi_eigenvalues(a)?[0])
}

fn lambda_max(a: &SymMatrix) -> Result<f64> {
    let l = jacobi_eigenvalues(a)?;
    Ok(l[l.len() - 1])
}

/// Means of one pair at one weight, computed on first use and shared by all
/// checks at that `(pair, nu)`.
pub struct MeanSet<'p> {
    pair: &'p SpdPair,
    w: Weight,
    am: OnceCell<Result<SymMatrix>>,
    gm: OnceCell<Result<SymMatrix>>,
    hm: OnceCell<Result<SymMatrix>>,
    refined_hm: OnceCell<Result<SymMatrix>>,
    /// `AM - GM - 2r bridge`
    refined_gap: OnceCell<Result<SymMatrix>>,
}

impl<'p> MeanSet<'p> {
    pub fn new(pair: &'p SpdPair, w: Weight) -> Self {
        MeanSet {
            pair,
            w,
            am: OnceCell::new(),
            gm: OnceCell::new(),
            hm: OnceCell::new(),
            refined_hm: OnceCell::new(),
            refined_gap: OnceCell::new(),
        }
    }

    pub fn pair(&self) -> &SpdPair {
        self.pair
    }

    pub fn weight(&self) -> Weight {
        self.w
    }

    pub fn arithmetic(&self) -> Result<&SymMatrix> {
        cached(&self.am, || Ok(weighted_arithmetic(self.pair, self.w)))
    }

    pub fn geometric(&self) -> Result<&SymMatrix> {
        cached(&self.gm, || weighted_geometric(self.pair, self.w))
    }

    pub fn harmonic(&self) -> Result<&SymMatrix> {
        cached(&self.hm, || weighted_harmonic(self.pair, self.w))
    }

    /// `2r ((A + B)/2 - A #_{1/2} B)`
    pub fn scaled_bridge(&self) -> Result<SymMatrix> {
        Ok(self.pair.bridge_ref()?.scale(2.0 * self.w.r()))
    }

    /// `[A^{-1} #_nu B^{-1} + 2r bridge(A^{-1}, B^{-1})]^{-1}`
    pub fn refined_harmonic(&self) -> Result<&SymMatrix> {
        cached(&self.refined_hm, || {
            let inv = self.pair.inverse()?;
            let g = weighted_geometric(inv, self.w)?;
            let t = g.lincomb(1.0, inv.bridge_ref()?, 2.0 * self.w.r())?;
            jacobi_eigen(&t)?.apply(MatrixFn::Inverse)
        })
    }

    /// `(1 - nu) A + nu B - A #_nu B - 2r bridge`
    pub fn refined_gap(&self) -> Result<&SymMatrix> {
        cached(&self.refined_gap, || {
            let d = self.arithmetic()?.lincomb(1.0, self.geometric()?, -1.0)?;
            d.lincomb(1.0, self.pair.bridge_ref()?, -2.0 * self.w.r())
        })
    }

    fn instance(&self) -> InstanceId {
        InstanceId {
            seed: 0,
            index: 0,
            dim: self.pair.n(),
            nu: self.w.nu(),
        }
    }

    pub fn check_refined_chain(&self) -> Result<CheckResult> {
        let am = self.arithmetic()?;
        let gm = self.geometric()?;
        let hm = self.harmonic()?;
        let bridge = self.scaled_bridge()?;
        let t3 = self.refined_harmonic()?;
        let m1 = lambda_min(self.refined_gap()?)?;
        let m2 = lambda_min(&bridge)?;
        let m3 = loewner_margin(gm, t3)?;
        let m4 = loewner_margin(t3, hm)?;
        let young = loewner_margin(am, gm)?;
        let gm_hm = loewner_margin(gm, hm)?;
        Ok(CheckResult::new(
            CheckKind::RefinedChain,
            self.instance(),
            &[m1, m2, m3, m4, young, gm_hm],
            self.pair.scale(),
        ))
    }

    pub fn check_reverse_ratio(&self) -> Result<CheckResult> {
        let s = specht_ratio(self.pair.h().sqrt())?;
        let am = self.arithmetic()?;
        let rhs = am.lincomb(1.0, &self.scaled_bridge()?, -1.0)?;
        let lhs = self.geometric()?.scale(s);
        let margin = loewner_margin(&lhs, &rhs)?;
        Ok(CheckResult::new(
            CheckKind::ReverseRatio,
            self.instance(),
            &[margin],
            self.pair.scale(),
        ))
    }

    pub fn check_reverse_difference(&self) -> Result<CheckResult> {
        let p = self.pair;
        let h = p.h();
        let sh = h.sqrt();
        let ln_s = ln_specht(sh)?;
        // h sqrt(M) L(sqrt M, sqrt m) ln S(sqrt h)
        let constant = h * p.big_m().sqrt() * log_mean(p.big_m().sqrt(), p.m().sqrt())? * ln_s;
        // sqrt(h) L(sqrt h, 1) ln S(sqrt h), multiplying A in the tighter form
        let k = sh * log_mean(sh, 1.0)? * ln_s;
        let gap = self.refined_gap()?;
        let gap_max = lambda_max(gap)?;
        let operator = loewner_margin(&p.a().scale(k), gap)?;
        Ok(CheckResult::new(
            CheckKind::ReverseDifference,
            self.instance(),
            &[
                constant - gap_max,
                k * p.a_eigen().max_eigenvalue() - gap_max,
                operator,
            ],
            p.scale(),
        ))
    }

    pub fn check_tominaga_baselines(&self) -> Result<CheckResult> {
        let p = self.pair;
        let h = p.h();
        let am = self.arithmetic()?;
        let gm = self.geometric()?;
        let ratio = loewner_margin(&gm.scale(specht_ratio(h)?), am)?;
        let c = h * log_mean(p.m(), p.big_m())? * ln_specht(h)?;
        let difference = loewner_margin(&gm.shift(c), am)?;
        Ok(CheckResult::new(
            CheckKind::TominagaBaselines,
            self.instance(),
            &[ratio, difference],
            p.scale(),
        ))
    }

    /// All four pair checks at this weight, in [`CheckKind`] order.
    pub fn check_all(&self) -> Result<Vec<CheckResult>> {
        Ok(vec![
            self.check_refined_chain()?,
            self.check_reverse_ratio()?,
            self.check_reverse_difference()?,
            self.check_tominaga_baselines()?,
        ])
    }
}

/// Refined operator Young chain: four links plus the two un-refined ones.
pub fn check_refined_chain(p: &SpdPair, w: Weight) -> Result<CheckResult> {
    MeanSet::new(p, w).check_refined_chain()
}

/// `S(sqrt h) A #_nu B >= (1 - nu) A + nu B - 2r bridge`
pub fn check_reverse_ratio(p: &SpdPair, w: Weight) -> Result<CheckResult> {
    MeanSet::new(p, w).check_reverse_ratio()
}

/// `h sqrt(M) L(sqrt M, sqrt m) ln S(sqrt h) >= AM - GM - 2r bridge`, plus the
/// two intermediate forms of the same bound.
pub fn check_reverse_difference(p: &SpdPair, w: Weight) -> Result<CheckResult> {
    MeanSet::new(p, w).check_reverse_difference()
}

/// The un-refined reverse ratio and reverse difference inequalities.
pub fn check_tominaga_baselines(p: &SpdPair, w: Weight) -> Result<CheckResult> {
    MeanSet::new(p, w).check_tominaga_baselines()
}

/// Refined Hölder–McCarthy margin and the plain one for a unit vector.
pub fn check_hm_refined(a: &SymMatrix, x: &UnitVector, w: Weight) -> Result<CheckResult> {
    check_hm_refined_eigen(&jacobi_eigen(a)?, x, w)
}

pub fn check_hm_refined_eigen(a: &EigenDecomp, x: &UnitVector, w: Weight) -> Result<CheckResult> {
    if x.n() != a.n() {
        return Err(Error::Shape(format!(
            "unit vector of length {} for n = {}",
            x.n(),
            a.n()
        )));
    }
    let x = x.coords();
    let q1 = a.quadratic_form(MatrixFn::Power(1.0), x)?;
    if !(q1 > 0.0) {
        return Err(Error::domain("<x|A|x>", q1, "> 0"));
    }
    let q_nu = a.quadratic_form(MatrixFn::Power(w.nu()), x)?;
    let q_half = a.quadratic_form(MatrixFn::Sqrt, x)?;
    let lhs = 1.0 - q1.powf(-w.nu()) * q_nu;
    let inner = 1.0 - q_half / q1.sqrt();
    let refined = lhs - w.r() * inner * inner;
    let baseline = q1.powf(w.nu()) - q_nu;
    Ok(CheckResult::new(
        CheckKind::HolderMccarthy,
        InstanceId {
            seed: 0,
            index: 0,
            dim: a.n(),
            nu: w.nu(),
        },
        &[refined, baseline],
        1.0,
    ))
}
