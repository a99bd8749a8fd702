//! Controllability of the stochastic trends and the linear stabilizing rule.
//!
//! A policy moves the controls `a'X` so that the targets `b'X` settle at
//! `b_star`. The rule is `nu(X) = a (b'Ca)^{-1} [(b_star - b'X) + G (beta'X - mu)]`
//! with `G = b'alpha (beta'alpha)^{-1}`, written as `abar (kappa'X - kappa0)`.

use alloc::format;
use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::estimator::CvarEstimate;
use crate::linalg;
use crate::longrun::LongRunRep;

/// Scale-normalized determinant threshold for controllability.
pub const DET_TOLERANCE: f64 = 1e-10;
/// Below this (and above the tolerance) controllability is flagged as weak.
pub const WEAK_DET: f64 = 1e-6;
/// Two-sided 5% critical value used for the per-entry t-test.
pub const T_CRITICAL: f64 = 1.96;

/// Linear phase-in of the intervention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseIn {
    pub start: i32,
    /// Years to reach full strength; 0 or 1 means immediately.
    pub ramp: u32,
}

impl PhaseIn {
    pub fn immediate(start: i32) -> Self {
        Self { start, ramp: 1 }
    }

    /// `min(1, (year - start + 1) / ramp)`, zero before the start.
    pub fn weight(&self, year: i32) -> f64 {
        if year < self.start {
            return 0.0;
        }
        let ramp = self.ramp.max(1) as f64;
        ((year - self.start + 1) as f64 / ramp).min(1.0)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub enum RuleParameterization {
    /// The rule above with `C` from the fitted model.
    #[default]
    Direct,
    /// User-supplied `kappa` (`n x m`) and `kappa0` (`m`).
    Custom { kappa: DMatrix<f64>, kappa0: DVector<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ControllabilityReport {
    /// `det(b'Ca)`.
    pub det: f64,
    /// Determinant with unit-norm columns of `a`, `b` and `C / |C|`.
    pub normalized_det: f64,
    pub controllable: bool,
    /// Normalized determinant between the tolerance and `WEAK_DET`.
    pub weak: bool,
    /// `(i, j, t)` for every entry `C[i, j]` with `b_i != 0` and `a_j != 0`.
    pub entry_tstats: Vec<(usize, usize, f64)>,
    pub tstats_significant: Option<bool>,
}

fn unit_columns(m: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = m.clone();
    for mut c in out.column_iter_mut() {
        let s = c.norm();
        if s > 0.0 {
            c.unscale_mut(s);
        }
    }
    out
}

fn check_selection(n: usize, a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<()> {
    if a.nrows() != n || b.nrows() != n {
        return Err(Error::DimensionMismatch(format!(
            "a and b need {n} rows, got {} and {}",
            a.nrows(),
            b.nrows()
        )));
    }
    if a.ncols() != b.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "{} controls for {} targets",
            a.ncols(),
            b.ncols()
        )));
    }
    if linalg::rank(a, 1e-10) < a.ncols() || linalg::rank(b, 1e-10) < b.ncols() {
        return Err(Error::DimensionMismatch("a and b must have full column rank".into()));
    }
    Ok(())
}

/// Tests `det(b'Ca) != 0`, optionally requiring every relevant entry of `C`
/// to be significant.
pub fn controllability_test(
    rep: &LongRunRep,
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    tstats: Option<&DMatrix<f64>>,
) -> Result<ControllabilityReport> {
    let c = &rep.c;
    check_selection(c.nrows(), a, b)?;
    let det = (b.transpose() * c * a).determinant();
    let c_norm = c.norm();
    let normalized_det = if c_norm > 0.0 {
        (unit_columns(b).transpose() * (c / c_norm) * unit_columns(a)).determinant()
    } else if a.ncols() == 0 {
        1.0
    } else {
        0.0
    };
    let mut controllable = normalized_det.abs() > DET_TOLERANCE;
    let weak = controllable && normalized_det.abs() < WEAK_DET;
    let mut entry_tstats = Vec::new();
    let mut tstats_significant = None;
    if let Some(t) = tstats {
        for i in 0..c.nrows() {
            if b.row(i).iter().all(|v| *v == 0.0) {
                continue;
            }
            for j in 0..c.ncols() {
                if a.row(j).iter().any(|v| *v != 0.0) {
                    entry_tstats.push((i, j, t[(i, j)]));
                }
            }
        }
        let ok = entry_tstats.iter().all(|(_, _, t)| t.abs() > T_CRITICAL);
        controllable &= ok;
        tstats_significant = Some(ok);
    }
    Ok(ControllabilityReport { det, normalized_det, controllable, weak, entry_tstats, tstats_significant })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ControlPolicy {
    /// Control selection, `n x m`.
    pub a: DMatrix<f64>,
    /// Target selection, `n x m`.
    pub b: DMatrix<f64>,
    pub b_star: DVector<f64>,
    /// `n x m`.
    pub kappa: DMatrix<f64>,
    /// `kappa0` at the `mu` the policy was built with.
    pub kappa0: DVector<f64>,
    /// `a (a'a)^{-1}`.
    pub abar: DMatrix<f64>,
    pub phase_in: PhaseIn,
    pub parameterization: RuleParameterization,
    pub report: ControllabilityReport,
    /// `(a'a) (b'Ca)^{-1}`; maps the target gap into `kappa0`.
    gap_map: DMatrix<f64>,
    /// `b'alpha (beta'alpha)^{-1}`.
    system_map: DMatrix<f64>,
}

impl ControlPolicy {
    pub fn m(&self) -> usize {
        self.a.ncols()
    }

    /// `kappa0` for the equilibrium mean `mu` of the current period.
    pub fn kappa0_at(&self, mu: &DVector<f64>) -> DVector<f64> {
        match &self.parameterization {
            RuleParameterization::Custom { kappa0, .. } => kappa0.clone(),
            RuleParameterization::Direct => -(&self.gap_map * (&self.b_star - &self.system_map * mu)),
        }
    }

    /// `nu(x) = abar (kappa'x - kappa0(mu))`.
    pub fn nu(&self, x: &DVector<f64>, mu: &DVector<f64>) -> DVector<f64> {
        &self.abar * (self.kappa.transpose() * x - self.kappa0_at(mu))
    }

    /// `kappa'alpha` and `I + kappa'abar`: both vanish for a VAR(1) rule.
    pub fn identity_residuals(&self, alpha: &DMatrix<f64>) -> (f64, f64) {
        let m = self.m();
        let ka = self.kappa.transpose() * alpha;
        let kb = DMatrix::identity(m, m) + self.kappa.transpose() * &self.abar;
        (linalg::max_abs(&ka), linalg::max_abs(&kb))
    }
}

/// Builds the stabilizing rule; fails with `NotControllable` when
/// `det(b'Ca)` is below tolerance.
pub fn build_policy(
    est: &CvarEstimate,
    rep: &LongRunRep,
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    b_star: &DVector<f64>,
    phase_in: PhaseIn,
    parameterization: RuleParameterization,
) -> Result<ControlPolicy> {
    let n = est.n();
    let m = a.ncols();
    if b_star.len() != b.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "{} objectives for {} targets",
            b_star.len(),
            b.ncols()
        )));
    }
    let report = controllability_test(rep, a, b, None)?;
    if !report.controllable {
        // Report an exact zero rather than rounding noise.
        let det = if report.det.abs() < DET_TOLERANCE { 0.0 } else { report.det };
        return Err(Error::NotControllable { det });
    }
    let ata = a.transpose() * a;
    let abar = a * linalg::inverse(&ata, "a'a")?;
    let beta = est.beta();
    let alpha = &est.alpha;
    let system_map = if est.rank() == 0 {
        DMatrix::zeros(m, 0)
    } else {
        b.transpose() * alpha * linalg::inverse(&(beta.transpose() * alpha), "beta' alpha")?
    };
    let gap_map = &ata * linalg::inverse(&(b.transpose() * &rep.c * a), "b'Ca")?;
    let (kappa, kappa0) = match &parameterization {
        RuleParameterization::Direct => {
            let kt = &gap_map * (&system_map * beta.transpose() - b.transpose());
            let mu = est.equilibrium_mean(phase_in.start)?;
            let k0 = -(&gap_map * (b_star - &system_map * &mu));
            (kt.transpose(), k0)
        }
        RuleParameterization::Custom { kappa, kappa0 } => {
            if kappa.nrows() != n || kappa.ncols() != m || kappa0.len() != m {
                return Err(Error::DimensionMismatch("custom kappa must be n x m".into()));
            }
            (kappa.clone(), kappa0.clone())
        }
    };
    Ok(ControlPolicy {
        a: a.clone(),
        b: b.clone(),
        b_star: b_star.clone(),
        kappa,
        kappa0,
        abar,
        phase_in,
        parameterization,
        report,
        gap_map,
        system_map,
    })
}

/// `X + lambda_t nu(X)`.
pub fn apply_control(policy: &ControlPolicy, x: &DVector<f64>, year: i32, mu: &DVector<f64>) -> DVector<f64> {
    let w = policy.phase_in.weight(year);
    if w == 0.0 {
        return x.clone();
    }
    x + policy.nu(x, mu) * w
}

/// `W_{t+1} = abar kappa' eps_t`: the injection implied by last period's shock
/// once the rule runs at full strength in a VAR(1).
pub fn policy_assignment(policy: &ControlPolicy, eps: &DVector<f64>) -> DVector<f64> {
    &policy.abar * (policy.kappa.transpose() * eps)
}

/// Controlled system at full strength.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedSystem {
    /// Companion matrix of `X_{t+1} = sum_i A_i (I + abar kappa') X_{t+1-i} + ...`.
    pub companion: DMatrix<f64>,
    /// `(alpha, (I + alpha beta') abar)`.
    pub loadings: DMatrix<f64>,
    /// `(beta, kappa)`.
    pub relations: DMatrix<f64>,
    /// `(I + alpha beta') abar kappa'`, the MA(1) block of the VARMA form.
    pub varma_ma_coef: DMatrix<f64>,
    /// Intercept of the controlled VAR(1), `-alpha mu - (I + alpha beta') abar kappa0`,
    /// at the policy start.
    pub var_constant: DVector<f64>,
    /// Intercept of the VARMA form, `-alpha mu`.
    pub varma_constant: DVector<f64>,
    pub unit_roots: usize,
    pub expected_unit_roots: usize,
    pub companion_moduli: Vec<f64>,
    pub ma_spectral_radius: f64,
}

const UNIT_ROOT_TOL: f64 = 1e-8;

/// Stacks the controlled dynamics and checks that `m` stochastic trends are
/// removed. `policy = None` returns the uncontrolled system.
pub fn augment_system(est: &CvarEstimate, policy: Option<&ControlPolicy>) -> Result<AugmentedSystem> {
    let n = est.n();
    let r = est.rank();
    let k = est.lag_order();
    let levels = est.levels_matrices();
    let (abar, kappa, kappa0) = match policy {
        Some(p) => (p.abar.clone(), p.kappa.clone(), p.kappa0.clone()),
        None => (DMatrix::zeros(n, 0), DMatrix::zeros(n, 0), DVector::zeros(0)),
    };
    let m = abar.ncols();
    let feedback = DMatrix::identity(n, n) + &abar * kappa.transpose();
    let mut companion = DMatrix::zeros(n * k, n * k);
    for (i, a) in levels.iter().enumerate() {
        companion.view_mut((0, i * n), (n, n)).copy_from(&(a * &feedback));
    }
    for i in 1..k {
        companion.view_mut((i * n, (i - 1) * n), (n, n)).fill_with_identity();
    }
    let companion_moduli = linalg::eigen_moduli(&companion)?;
    let unit_roots = companion_moduli.iter().filter(|v| **v >= 1.0 - UNIT_ROOT_TOL).count();
    let expected_unit_roots = n.saturating_sub(r + m);
    let ipab = DMatrix::identity(n, n) + &est.alpha * est.beta().transpose();
    let ma_loading = &ipab * &abar;
    let varma_ma_coef = &ma_loading * kappa.transpose();
    let ma_spectral_radius = linalg::spectral_radius(&varma_ma_coef)?;
    let mu = est.equilibrium_mean(policy.map(|p| p.phase_in.start).unwrap_or(est.origin))?;
    let varma_constant = -(&est.alpha * &mu);
    let var_constant = &varma_constant - &ma_loading * &kappa0;
    let loadings = linalg::hstack(&[&est.alpha, &ma_loading], n);
    let relations = linalg::hstack(&[&est.beta(), &kappa], n);
    if unit_roots != expected_unit_roots {
        return Err(Error::PolicyDoesNotStabilize { unit_roots, expected: expected_unit_roots });
    }
    Ok(AugmentedSystem {
        companion,
        loadings,
        relations,
        varma_ma_coef,
        var_constant,
        varma_constant,
        unit_roots,
        expected_unit_roots,
        companion_moduli,
        ma_spectral_radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimator::CvarSpec;
    use crate::longrun::{compute_c, longrun_from_parts};
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn var1(alpha: DMatrix<f64>, beta: DMatrix<f64>) -> CvarEstimate {
        let n = alpha.nrows();
        let r = alpha.ncols();
        CvarEstimate {
            alpha,
            beta_star: beta,
            gammas: vec![],
            det_coef: DMatrix::zeros(n, 0),
            exog_coef: DMatrix::zeros(n, 0),
            omega: DMatrix::identity(n, n),
            residuals: DMatrix::zeros(10, n),
            eigenvalues: DVector::zeros(n),
            loglik: 0.0,
            spec: CvarSpec::new(1, r),
            names: (0..n).map(|i| format!("x{i}")).collect(),
            years: vec![],
            origin: 0,
            start: 1,
        }
    }

    pub(crate) fn pair() -> CvarEstimate {
        var1(DMatrix::from_column_slice(2, 1, &[-0.5, 0.0]), DMatrix::from_column_slice(2, 1, &[1.0, -1.0]))
    }

    fn e(i: usize) -> DMatrix<f64> {
        let mut v = DMatrix::zeros(2, 1);
        v[(i, 0)] = 1.0;
        v
    }

    fn pair_policy(b_star: f64) -> (CvarEstimate, ControlPolicy) {
        let est = pair();
        let rep = compute_c(&est).unwrap();
        let p = build_policy(
            &est,
            &rep,
            &e(1),
            &e(0),
            &DVector::from_vec(vec![b_star]),
            PhaseIn::immediate(0),
            RuleParameterization::Direct,
        )
        .unwrap();
        (est, p)
    }

    #[test]
    fn pair_controllability() {
        let rep = compute_c(&pair()).unwrap();
        let yes = controllability_test(&rep, &e(1), &e(0), None).unwrap();
        assert!(yes.controllable);
        assert!((yes.det - 1.0).abs() < 1e-12);
        let no = controllability_test(&rep, &e(0), &e(0), None).unwrap();
        assert!(!no.controllable);
        assert_eq!(no.det, 0.0);
        let scaled = controllability_test(&rep, &(e(1) * 1e6), &e(0), None).unwrap();
        assert!(scaled.controllable);
        assert!((scaled.normalized_det - yes.normalized_det).abs() < 1e-12);
        let tiny = controllability_test(&rep, &(e(1) * 1e-6), &e(0), None).unwrap();
        assert!(tiny.controllable);
    }

    #[test]
    fn tstat_requirement() {
        let rep = compute_c(&pair()).unwrap();
        let t = DMatrix::from_row_slice(2, 2, &[0.1, 5.0, 0.3, 1.0]);
        let r = controllability_test(&rep, &e(1), &e(0), Some(&t)).unwrap();
        assert_eq!(r.entry_tstats, vec![(0, 1, 5.0)]);
        assert!(r.controllable);
        let weak = DMatrix::from_row_slice(2, 2, &[0.1, 1.5, 0.3, 1.0]);
        assert!(!controllability_test(&rep, &e(1), &e(0), Some(&weak)).unwrap().controllable);
    }

    #[test]
    fn dimension_checks() {
        let rep = compute_c(&pair()).unwrap();
        let two = DMatrix::identity(2, 2);
        assert!(matches!(controllability_test(&rep, &two, &e(0), None), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn pair_rule() {
        let (est, p) = pair_policy(0.0);
        assert!((p.kappa.transpose() - DMatrix::from_row_slice(1, 2, &[0.0, -1.0])).abs().max() < 1e-12);
        assert!(p.kappa0[0].abs() < 1e-12);
        let mu = DVector::zeros(1);
        let x = DVector::from_vec(vec![2.0, 7.0]);
        assert!((p.nu(&x, &mu) - DVector::from_vec(vec![0.0, -7.0])).abs().max() < 1e-12);
        let (ka, kb) = p.identity_residuals(&est.alpha);
        assert!(ka < 1e-14 && kb < 1e-14);

        let (_, p1) = pair_policy(1.0);
        assert!((p1.nu(&x, &mu) - DVector::from_vec(vec![0.0, -6.0])).abs().max() < 1e-12);
        let at_target = DVector::from_vec(vec![1.0, 1.0]);
        assert!(p1.nu(&at_target, &mu).abs().max() < 1e-12);
    }

    #[test]
    fn not_controllable_error() {
        let est = pair();
        let rep = compute_c(&est).unwrap();
        let err = build_policy(&est, &rep, &e(0), &e(0), &DVector::zeros(1), PhaseIn::immediate(0), Default::default());
        assert!(matches!(err, Err(Error::NotControllable { .. })));
    }

    #[test]
    fn ramp_arithmetic() {
        let (_, mut p) = pair_policy(1.0);
        p.phase_in = PhaseIn { start: 10, ramp: 4 };
        let mu = DVector::zeros(1);
        let x = DVector::from_vec(vec![0.0, 3.0]);
        assert_eq!(apply_control(&p, &x, 9, &mu), x);
        assert!((apply_control(&p, &x, 11, &mu)[1] - 2.0).abs() < 1e-12);
        assert!((apply_control(&p, &x, 20, &mu)[1] - 1.0).abs() < 1e-12);
        assert_eq!(p.phase_in.weight(13), 1.0);
    }

    #[test]
    fn pair_augmented() {
        let (est, p) = pair_policy(1.0);
        let aug = augment_system(&est, Some(&p)).unwrap();
        let want = DMatrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, 0.0]);
        assert!((aug.companion.clone() - want).abs().max() < 1e-12);
        assert_eq!(aug.unit_roots, 0);
        assert!((aug.companion_moduli[0] - 0.5).abs() < 1e-12);
        // (I + alpha beta') abar kappa' by hand: I + alpha beta' = [[0.5, 0.5], [0, 1]],
        // abar kappa' = [[0, 0], [0, -1]].
        let ma = DMatrix::from_row_slice(2, 2, &[0.0, -0.5, 0.0, -1.0]);
        assert!((aug.varma_ma_coef.clone() - ma).abs().max() < 1e-12);
        let none = augment_system(&est, None).unwrap();
        assert_eq!(none.unit_roots, 1);
    }

    #[test]
    fn assignment_examples() {
        let (_, p) = pair_policy(0.0);
        assert_eq!(policy_assignment(&p, &DVector::zeros(2)).abs().max(), 0.0);
        let w = policy_assignment(&p, &DVector::from_vec(vec![0.0, 1.0]));
        assert!((w - DVector::from_vec(vec![0.0, -1.0])).abs().max() < 1e-15);
        assert_eq!(policy_assignment(&p, &DVector::from_vec(vec![1.0, 0.0])).abs().max(), 0.0);
    }

    /// Three-variable VAR(1) with one relation and one control.
    fn fixture3() -> (CvarEstimate, ControlPolicy) {
        let alpha = DMatrix::from_column_slice(3, 1, &[-0.3, 0.1, 0.05]);
        let beta = DMatrix::from_column_slice(3, 1, &[1.0, -0.5, 0.8]);
        let est = var1(alpha, beta);
        let rep = compute_c(&est).unwrap();
        let a = DMatrix::from_column_slice(3, 1, &[0.0, 1.0, 0.0]);
        let b = DMatrix::from_column_slice(3, 1, &[0.0, 0.0, 1.0]);
        let p = build_policy(&est, &rep, &a, &b, &DVector::from_vec(vec![0.4]), PhaseIn::immediate(0), Default::default()).unwrap();
        (est, p)
    }

    #[test]
    fn representations_agree() {
        for (est, p) in [pair_policy(1.0), fixture3()] {
            let n = est.n();
            let mu = DVector::zeros(est.rank());
            let ipab = DMatrix::identity(n, n) + &est.alpha * est.beta().transpose();
            let aug = augment_system(&est, Some(&p)).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(5);
            let shocks: Vec<DVector<f64>> =
                (0..1001).map(|_| DVector::from_fn(n, |_, _| StandardNormal.sample(&mut rng))).collect();
            let x0 = DVector::from_fn(n, |i, _| i as f64 - 0.5);
            // (i) rule then ecosystem
            let mut a = vec![x0.clone()];
            for t in 0..1000 {
                let ctr = apply_control(&p, &a[t], 0, &mu);
                a.push(&ipab * ctr - &est.alpha * &mu + &shocks[t + 1]);
            }
            // (ii) augmented error-correction form
            let mut b = vec![x0.clone()];
            let loads = &aug.loadings;
            for t in 0..1000 {
                let x = &b[t];
                let ec = est.beta().transpose() * x - &mu;
                let kc = p.kappa.transpose() * x - p.kappa0_at(&mu);
                let mut stacked = DVector::zeros(ec.len() + kc.len());
                stacked.rows_mut(0, ec.len()).copy_from(&ec);
                stacked.rows_mut(ec.len(), kc.len()).copy_from(&kc);
                b.push(x + loads * stacked + &shocks[t + 1]);
            }
            // (iii) VARMA(1,1) after the first controlled step
            let mut c = vec![x0.clone(), a[1].clone()];
            for t in 1..1000 {
                let next = &aug.varma_constant + &ipab * &c[t] + &shocks[t + 1] + &aug.varma_ma_coef * &shocks[t];
                c.push(next);
            }
            for t in 0..=1000 {
                assert!((&a[t] - &b[t]).abs().max() < 1e-10, "step {t}");
                assert!((&a[t] - &c[t]).abs().max() < 1e-10, "step {t}");
            }
            for t in 1..1000 {
                let w = policy_assignment(&p, &shocks[t]);
                let direct = p.nu(&a[t], &mu);
                assert!((w - direct).abs().max() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_shock_convergence() {
        let (est, p) = pair_policy(1.0);
        let mu = DVector::zeros(1);
        let ipab = DMatrix::identity(2, 2) + &est.alpha * est.beta().transpose();
        let mut x = DVector::from_vec(vec![4.0, -3.0]);
        for _ in 0..200 {
            x = &ipab * apply_control(&p, &x, 0, &mu);
        }
        assert!((x[0] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn kappa_identities_hold_for_random_models() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut checked = 0;
        while checked < 50 {
            let mut d = |r, c| DMatrix::from_fn(r, c, |_, _| StandardNormal.sample(&mut rng));
            let est = var1(d(4, 2), d(4, 2));
            let Ok(rep) = longrun_from_parts(&est.alpha, &est.beta(), &[]) else { continue };
            let Ok(p) = build_policy(&est, &rep, &d(4, 1), &d(4, 1), &DVector::zeros(1), PhaseIn::immediate(0), Default::default()) else {
                continue;
            };
            let (ka, kb) = p.identity_residuals(&est.alpha);
            let s = 1.0 + linalg::max_abs(&p.kappa);
            assert!(ka < 1e-9 * s && kb < 1e-9 * s, "{ka} {kb}");
            checked += 1;
        }
    }
}
