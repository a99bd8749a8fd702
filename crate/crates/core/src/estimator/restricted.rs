use alloc::format;
use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};

use super::fit::{assemble, loglik_from_omega};
use super::{concentrate_data, fit_data, rrr_solve, CvarEstimate, CvarSpec, Normalization, SampleData};
use crate::error::{Error, Result};
use crate::frame::TimeFrame;
use crate::linalg;
use crate::special::chi2_sf;

/// Linear restrictions `beta*_j = H_j phi_j` and zero restrictions on `alpha`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RestrictionSet {
    /// One entry per cointegration vector; `None` leaves the vector free.
    /// Each `H_j` is `(n + q_r) x s_j` with full column rank.
    pub beta: Vec<Option<DMatrix<f64>>>,
    /// `(row, column)` entries of `alpha` fixed at zero.
    pub alpha_zeros: Vec<(usize, usize)>,
}

impl RestrictionSet {
    /// Degrees of freedom of the LR test.
    ///
    /// Each restricted vector contributes `n1 - r + 1 - s_j` (the count of
    /// restrictions beyond the `r - 1` that identify it), floored at zero;
    /// every zero in `alpha` adds one.
    pub fn degrees_of_freedom(&self, n1: usize, r: usize) -> usize {
        let beta: usize = self
            .beta
            .iter()
            .flatten()
            .map(|h| (n1 + 1).saturating_sub(r + h.ncols()))
            .sum();
        beta + self.alpha_zeros.len()
    }

    fn validate(&self, n: usize, n1: usize, r: usize) -> Result<()> {
        if self.beta.len() != r && !self.beta.is_empty() {
            return Err(Error::InvalidRestrictions(format!(
                "{} design matrices for rank {r}",
                self.beta.len()
            )));
        }
        for (j, h) in self.beta.iter().enumerate() {
            if let Some(h) = h {
                if h.nrows() != n1 || h.ncols() == 0 || h.ncols() > n1 {
                    return Err(Error::InvalidRestrictions(format!(
                        "H for vector {} is {}x{}, expected {n1} rows",
                        j + 1,
                        h.nrows(),
                        h.ncols()
                    )));
                }
                if linalg::rank(h, 1e-10) < h.ncols() {
                    return Err(Error::InvalidRestrictions(format!(
                        "H for vector {} lacks full column rank",
                        j + 1
                    )));
                }
            }
        }
        for &(i, j) in &self.alpha_zeros {
            if i >= n || j >= r {
                return Err(Error::InvalidRestrictions(format!(
                    "alpha zero ({i}, {j}) outside {n}x{r}"
                )));
            }
        }
        Ok(())
    }

    fn design(&self, j: usize, n1: usize) -> DMatrix<f64> {
        match self.beta.get(j) {
            Some(Some(h)) => h.clone(),
            _ => DMatrix::identity(n1, n1),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedFit {
    pub estimate: CvarEstimate,
    pub unrestricted_loglik: f64,
    /// `2 (loglik_unrestricted - loglik_restricted)`, floored at zero.
    pub lr: f64,
    pub df: usize,
    /// Chi-square p-value; 1 when `df = 0`.
    pub p_value: f64,
    pub iterations: usize,
    pub loglik_path: Vec<f64>,
}

pub fn estimate_restricted(
    frame: &TimeFrame,
    spec: &CvarSpec,
    restrictions: &RestrictionSet,
    tol: f64,
    max_iter: usize,
) -> Result<RestrictedFit> {
    estimate_restricted_data(&SampleData::from_frame(frame, spec)?, spec, restrictions, tol, max_iter)
}

/// Switching algorithm: alternate GLS updates of `alpha` (given `beta`) and
/// `phi` (given `alpha`, `Omega`) until the log-likelihood gain drops below
/// `tol`. Two starting values are tried and the better optimum is kept.
pub fn estimate_restricted_data(
    data: &SampleData,
    spec: &CvarSpec,
    restrictions: &RestrictionSet,
    tol: f64,
    max_iter: usize,
) -> Result<RestrictedFit> {
    let r = spec.fixed_rank()?;
    let n = data.n();
    let conc = concentrate_data(data, spec)?;
    let n1 = conc.r1.ncols();
    restrictions.validate(n, n1, r)?;
    let unrestricted = fit_data(data, spec)?;
    let t_eff = conc.t_eff();
    let sol = rrr_solve(&conc.r0, &conc.r1)?;
    let m = Moments { s00: sol.s00.clone(), s01: sol.s01.clone(), s11: sol.s11.clone(), t_eff };
    let hs: Vec<DMatrix<f64>> = (0..r).map(|j| restrictions.design(j, n1)).collect();

    let beta_hat = sol.eigenvectors.columns(0, r).into_owned();
    let mut starts = Vec::new();
    starts.push(projection_start(&hs, &beta_hat)?);
    if let Ok(b) = eigen_start(&hs, &m) {
        starts.push(b);
    }

    let mut best: Option<Switching> = None;
    let mut last_err = None;
    for b0 in starts {
        match switching(&m, &hs, &restrictions.alpha_zeros, b0, tol, max_iter) {
            Ok(s) => {
                if best.as_ref().is_none_or(|b| s.loglik > b.loglik) {
                    best = Some(s);
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    let best = match best {
        Some(b) => b,
        None => return Err(last_err.unwrap_or(Error::EigenFailure)),
    };
    let (alpha, beta) = scale_columns(best.alpha, best.beta, &spec.normalization)?;
    let est = assemble(data, spec, &conc, alpha, beta, unrestricted.eigenvalues.clone())?;
    let lr = (2.0 * (unrestricted.loglik - est.loglik)).max(0.0);
    let df = restrictions.degrees_of_freedom(n1, r);
    let p_value = if df == 0 { 1.0 } else { chi2_sf(lr, df as f64) };
    Ok(RestrictedFit {
        unrestricted_loglik: unrestricted.loglik,
        lr,
        df,
        p_value,
        iterations: best.path.len(),
        loglik_path: best.path,
        estimate: est,
    })
}

struct Moments {
    s00: DMatrix<f64>,
    s01: DMatrix<f64>,
    s11: DMatrix<f64>,
    t_eff: usize,
}

impl Moments {
    fn omega(&self, alpha: &DMatrix<f64>, beta: &DMatrix<f64>) -> DMatrix<f64> {
        let ab = alpha * beta.transpose();
        let cross = &self.s01 * ab.transpose();
        linalg::symmetrize(&(&self.s00 - &cross - cross.transpose() + &ab * &self.s11 * ab.transpose()))
    }
}

struct Switching {
    alpha: DMatrix<f64>,
    beta: DMatrix<f64>,
    loglik: f64,
    path: Vec<f64>,
}

fn switching(
    m: &Moments,
    hs: &[DMatrix<f64>],
    alpha_zeros: &[(usize, usize)],
    mut beta: DMatrix<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<Switching> {
    let n = m.s00.nrows();
    let r = beta.ncols();
    if r == 0 {
        let ll = loglik_from_omega(&m.s00, m.t_eff)?;
        return Ok(Switching { alpha: DMatrix::zeros(n, 0), beta, loglik: ll, path: alloc::vec![ll] });
    }
    let mut omega = m.s00.clone();
    let mut alpha = alpha_step(m, &beta, &omega, alpha_zeros)?;
    omega = m.omega(&alpha, &beta);
    let mut path = Vec::new();
    let mut ll_old = loglik_from_omega(&omega, m.t_eff)?;
    path.push(ll_old);
    for _ in 0..max_iter {
        let beta_prev = beta.clone();
        let omega_inv = linalg::spd_inverse(&omega, "Omega")?;
        beta = unit_columns(beta_step(m, hs, &alpha, &omega_inv)?);
        alpha = alpha_step(m, &beta, &omega, alpha_zeros)?;
        omega = m.omega(&alpha, &beta);
        // With zeros in alpha a single GLS pass depends on Omega; refresh once more.
        if !alpha_zeros.is_empty() {
            alpha = alpha_step(m, &beta, &omega, alpha_zeros)?;
            omega = m.omega(&alpha, &beta);
        }
        let mut ll = loglik_from_omega(&omega, m.t_eff)?;
        // Extrapolate along the last beta update while the likelihood improves.
        // Switching converges linearly and this removes most of the crawl.
        let step = &beta - &beta_prev;
        let mut scale = 1.0;
        while scale < MAX_EXTRAPOLATION {
            scale *= 2.0;
            let b_try = unit_columns(&beta_prev + &step * scale);
            let Ok(a_try) = alpha_step(m, &b_try, &omega, alpha_zeros) else { break };
            let o_try = m.omega(&a_try, &b_try);
            match loglik_from_omega(&o_try, m.t_eff) {
                Ok(l) if l > ll => {
                    (alpha, beta, omega, ll) = (a_try, b_try, o_try, l);
                }
                _ => break,
            }
        }
        path.push(ll);
        if (ll - ll_old).abs() < tol {
            return Ok(Switching { alpha, beta, loglik: ll, path });
        }
        ll_old = ll;
    }
    Err(Error::NoConvergence { iterations: max_iter, loglik_path: path })
}

const MAX_EXTRAPOLATION: f64 = 64.0;

fn unit_columns(mut beta: DMatrix<f64>) -> DMatrix<f64> {
    for mut c in beta.column_iter_mut() {
        let s = c.norm();
        if s > 0.0 {
            c.unscale_mut(s);
        }
    }
    beta
}

fn alpha_step(
    m: &Moments,
    beta: &DMatrix<f64>,
    omega: &DMatrix<f64>,
    zeros: &[(usize, usize)],
) -> Result<DMatrix<f64>> {
    let n = m.s00.nrows();
    let r = beta.ncols();
    let sbb = beta.transpose() * &m.s11 * beta;
    let sby = beta.transpose() * m.s01.transpose();
    if zeros.is_empty() {
        return Ok(sby.transpose() * linalg::inverse(&sbb, "beta' S11 beta")?);
    }
    let omega_inv = linalg::spd_inverse(omega, "Omega")?;
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .filter(|p| !zeros.contains(p))
        .collect();
    let rhs_full = &sby * &omega_inv;
    let f = free.len();
    let mut a = DMatrix::zeros(f, f);
    let mut b = DVector::zeros(f);
    for (p, &(i, j)) in free.iter().enumerate() {
        b[p] = rhs_full[(j, i)];
        for (q, &(l, h)) in free.iter().enumerate() {
            a[(p, q)] = omega_inv[(i, l)] * sbb[(j, h)];
        }
    }
    let x = a.lu().solve(&b).ok_or(Error::SingularMatrix("alpha GLS system"))?;
    let mut alpha = DMatrix::zeros(n, r);
    for (p, &(i, j)) in free.iter().enumerate() {
        alpha[(i, j)] = x[p];
    }
    Ok(alpha)
}

fn beta_step(
    m: &Moments,
    hs: &[DMatrix<f64>],
    alpha: &DMatrix<f64>,
    omega_inv: &DMatrix<f64>,
) -> Result<DMatrix<f64>> {
    let r = hs.len();
    let n1 = m.s11.nrows();
    let sizes: Vec<usize> = hs.iter().map(|h| h.ncols()).collect();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let total: usize = sizes.iter().sum();
    let aoa = alpha.transpose() * omega_inv * alpha;
    let s10_oi_a = m.s01.transpose() * omega_inv * alpha;
    let mut a = DMatrix::zeros(total, total);
    let mut b = DVector::zeros(total);
    for i in 0..r {
        let hi = &hs[i];
        b.rows_mut(offsets[i], sizes[i]).copy_from(&(hi.transpose() * s10_oi_a.column(i)));
        for j in 0..r {
            let block = hi.transpose() * &m.s11 * &hs[j] * aoa[(i, j)];
            a.view_mut((offsets[i], offsets[j]), (sizes[i], sizes[j])).copy_from(&block);
        }
    }
    let phi = a.lu().solve(&b).ok_or(Error::SingularMatrix("beta GLS system"))?;
    let mut beta = DMatrix::zeros(n1, r);
    for j in 0..r {
        beta.set_column(j, &(&hs[j] * phi.rows(offsets[j], sizes[j])));
    }
    Ok(beta)
}

/// Columns of `sp(H_j)` closest to the unrestricted cointegration space.
fn projection_start(hs: &[DMatrix<f64>], beta_hat: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n1 = beta_hat.nrows();
    let r = hs.len();
    let q = beta_hat.clone().qr().q();
    let proj = &q * q.transpose();
    let mut beta = DMatrix::zeros(n1, r);
    for (j, h) in hs.iter().enumerate() {
        let v = generalized_top(&(h.transpose() * &proj * h), &(h.transpose() * h), j)?;
        beta.set_column(j, &(h * v));
    }
    Ok(beta)
}

/// Vector `j` from the reduced-rank problem restricted to `sp(H_j)`.
fn eigen_start(hs: &[DMatrix<f64>], m: &Moments) -> Result<DMatrix<f64>> {
    let n1 = m.s11.nrows();
    let s00_inv = linalg::spd_inverse(&m.s00, "S00")?;
    let mut beta = DMatrix::zeros(n1, hs.len());
    for (j, h) in hs.iter().enumerate() {
        let num = h.transpose() * m.s01.transpose() * &s00_inv * &m.s01 * h;
        let den = h.transpose() * &m.s11 * h;
        let v = generalized_top(&num, &den, j)?;
        beta.set_column(j, &(h * v));
    }
    Ok(beta)
}

/// Eigenvector with the `(index + 1)`-th largest eigenvalue of `a v = l b v`
/// (clamped to the available count).
fn generalized_top(a: &DMatrix<f64>, b: &DMatrix<f64>, index: usize) -> Result<DVector<f64>> {
    let l = linalg::cholesky_lower(b, "H' S H")?;
    let w = l.solve_lower_triangular(a).ok_or(Error::NotPositiveDefinite("H' S H"))?;
    let c = linalg::symmetrize(&l.solve_lower_triangular(&w.transpose()).ok_or(Error::NotPositiveDefinite("H' S H"))?);
    let eig = c.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|x, y| eig.eigenvalues[*y].total_cmp(&eig.eigenvalues[*x]));
    let k = order[index.min(order.len() - 1)];
    l.transpose()
        .solve_upper_triangular(&eig.eigenvectors.column(k).into_owned())
        .ok_or(Error::NotPositiveDefinite("H' S H"))
}

/// Rescales each column to a unit coefficient on its pivot variable, keeping
/// `alpha beta'` unchanged. Restrictions survive because only scales change.
fn scale_columns(
    mut alpha: DMatrix<f64>,
    mut beta: DMatrix<f64>,
    norm: &Normalization,
) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    for j in 0..beta.ncols() {
        let col_norm = beta.column(j).norm();
        let pivot = match norm {
            Normalization::Variables(v) if j < v.len() => v[j],
            _ if j < beta.nrows() && beta[(j, j)].abs() > 1e-8 * col_norm => j,
            _ => beta.column(j).iamax(),
        };
        let p = beta[(pivot, j)];
        if p.abs() <= 1e-12 * col_norm {
            return Err(Error::NormalizationSingular);
        }
        beta.column_mut(j).unscale_mut(p);
        alpha.column_mut(j).scale_mut(p);
    }
    Ok((alpha, beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::Dgp;
    use alloc::vec;

    fn dgp() -> Dgp {
        Dgp::new(
            DMatrix::from_row_slice(3, 2, &[-0.3, 0.0, 0.0, -0.4, 0.1, 0.1]),
            DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, -1.0, -0.5]),
        )
    }

    fn col(v: &[f64]) -> DMatrix<f64> {
        DMatrix::from_column_slice(v.len(), 1, v)
    }

    fn true_set() -> RestrictionSet {
        RestrictionSet {
            beta: vec![Some(col(&[1.0, 0.0, -1.0])), Some(col(&[0.0, 1.0, -0.5]))],
            alpha_zeros: vec![(0, 1), (1, 0)],
        }
    }

    #[test]
    fn degrees_of_freedom_count() {
        assert_eq!(true_set().degrees_of_freedom(3, 2), 4);
        let free = RestrictionSet { beta: vec![None, None], alpha_zeros: vec![] };
        assert_eq!(free.degrees_of_freedom(3, 2), 0);
        let wide = RestrictionSet { beta: vec![Some(DMatrix::identity(3, 3)), None], alpha_zeros: vec![(2, 0)] };
        assert_eq!(wide.degrees_of_freedom(3, 2), 1);
    }

    #[test]
    fn just_identified_matches_unrestricted() {
        let data = dgp().simulate(300, 5);
        let spec = CvarSpec::new(1, 2);
        let h1 = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        let h2 = DMatrix::from_row_slice(3, 2, &[0.0, 0.0, 1.0, 0.0, 0.0, 1.0]);
        let set = RestrictionSet { beta: vec![Some(h1), Some(h2)], alpha_zeros: vec![] };
        let fit = estimate_restricted_data(&data, &spec, &set, 1e-12, 5000).unwrap();
        assert_eq!(fit.df, 0);
        assert!(fit.lr < 1e-8, "lr = {}", fit.lr);
        assert_eq!(fit.p_value, 1.0);
        let b = fit.estimate.beta();
        assert!(b[(1, 0)].abs() < 1e-12 && b[(0, 1)].abs() < 1e-12, "{b}");
    }

    #[test]
    fn restrictions_hold_in_the_estimate() {
        let data = dgp().simulate(400, 9);
        let fit = estimate_restricted_data(&data, &CvarSpec::new(1, 2), &true_set(), 1e-10, 2000).unwrap();
        let est = &fit.estimate;
        assert_eq!(est.alpha[(0, 1)], 0.0);
        assert_eq!(est.alpha[(1, 0)], 0.0);
        let b = est.beta();
        assert!((b[(2, 0)] / b[(0, 0)] + 1.0).abs() < 1e-12);
        assert!(b[(1, 0)].abs() < 1e-12);
        assert!((b[(2, 1)] / b[(1, 1)] + 0.5).abs() < 1e-12);
        assert!(fit.lr >= 0.0 && est.loglik <= fit.unrestricted_loglik + 1e-9);
        assert_eq!(fit.df, 4);
        // True restrictions: the statistic is a chi-square(4) draw, not an outlier.
        assert!(fit.p_value > 0.001, "p = {}", fit.p_value);
        for w in fit.loglik_path.windows(2) {
            assert!(w[1] >= w[0] - 1e-9 * w[0].abs(), "likelihood fell: {w:?}");
        }
    }

    #[test]
    fn false_restriction_is_rejected() {
        let data = dgp().simulate(400, 2);
        let set = RestrictionSet { beta: vec![Some(col(&[1.0, 0.0, -0.3])), None], alpha_zeros: vec![] };
        let fit = estimate_restricted_data(&data, &CvarSpec::new(1, 2), &set, 1e-10, 2000).unwrap();
        assert_eq!(fit.df, 1);
        assert!(fit.p_value < 1e-6, "p = {}", fit.p_value);
    }

    #[test]
    fn invalid_restrictions() {
        let data = dgp().simulate(100, 1);
        let spec = CvarSpec::new(1, 2);
        let one = RestrictionSet { beta: vec![Some(col(&[1.0, 0.0, -1.0]))], alpha_zeros: vec![] };
        assert!(matches!(
            estimate_restricted_data(&data, &spec, &one, 1e-10, 100),
            Err(Error::InvalidRestrictions(_))
        ));
        let deficient = DMatrix::from_row_slice(3, 2, &[1.0, 2.0, 0.0, 0.0, 1.0, 2.0]);
        let bad = RestrictionSet { beta: vec![Some(deficient), None], alpha_zeros: vec![] };
        assert!(matches!(
            estimate_restricted_data(&data, &spec, &bad, 1e-10, 100),
            Err(Error::InvalidRestrictions(_))
        ));
    }
}
