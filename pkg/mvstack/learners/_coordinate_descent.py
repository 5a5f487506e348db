r"""Cyclic coordinate descent for the weighted elastic-net least-squares problem.

The kernels minimize

.. math::

    \frac{1}{2} \sum_i v_i (z_i - \beta_0 - x_i^T \beta)^2
    + \lambda \sum_j w_j \left( \alpha |\beta_j| + \frac{1 - \alpha}{2} \beta_j^2 \right)

optionally subject to :math:`\beta_j \geq 0`. The intercept :math:`\beta_0` is never penalized
nor constrained. With :math:`v_i = 1 / N` this is the Gaussian elastic net; `irls_solve` runs
the IRLS loop of the binomial and Poisson families around the same kernels.

"""
from numba import njit
import numpy as np

BINOMIAL = 1
POISSON = 2

CONVERGED = 0
SWEEPS_EXCEEDED = 1
HALVING_FAILED = 2
IRLS_EXCEEDED = 3


@njit(cache=True)
def soft_threshold(z, gamma):
    """Return sign(z) * max(|z| - gamma, 0)."""
    if z > gamma:
        return z - gamma
    if z < -gamma:
        return z + gamma
    return 0.0


@njit(cache=True)
def nonneg_soft_threshold(z, gamma):
    """Return max(z - gamma, 0)."""
    if z > gamma:
        return z - gamma
    return 0.0


@njit(cache=True)
def weighted_sq_norms(x, v):
    """Return the weighted squared norm of every column of `x`."""
    n, p = x.shape
    out = np.zeros(p)
    for j in range(p):
        total = 0.0
        for i in range(n):
            total += v[i] * x[i, j] * x[i, j]
        out[j] = total
    return out


@njit(cache=True)
def cd_sweep(x, v, r, beta, intercept, xv, lam, alpha, penalty, nonneg, active):
    """Run one sweep of coordinate descent over the intercept and the active coordinates.

    Parameters
    ----------
    x : np.ndarray(N, P)
        Design matrix (standardized scale), preferably Fortran-ordered.
    v : np.ndarray(N,)
        Observation weights.
    r : np.ndarray(N,)
        Current residuals ``z - intercept - x @ beta``. Updated in place.
    beta : np.ndarray(P,)
        Current coefficients. Updated in place.
    intercept : np.ndarray(1,)
        Current intercept. Updated in place.
    xv : np.ndarray(P,)
        Weighted squared norms of the columns of `x`.
    lam : float
        Penalty strength.
    alpha : float
        Elastic-net mixing parameter.
    penalty : np.ndarray(P,)
        Penalty weight of each coordinate.
    nonneg : bool
        Whether the coefficients are constrained to be nonnegative.
    active : np.ndarray(P,) of bool
        Coordinates that are updated. Inactive coordinates stay at their current value.

    Returns
    -------
    max_change : float
        Largest absolute change of the intercept or a coefficient during the sweep.

    """
    n, p = x.shape
    vsum = 0.0
    shift = 0.0
    for i in range(n):
        vsum += v[i]
        shift += v[i] * r[i]
    shift /= vsum
    intercept[0] += shift
    for i in range(n):
        r[i] -= shift
    max_change = abs(shift)

    for j in range(p):
        if not active[j]:
            continue
        old = beta[j]
        grad = 0.0
        for i in range(n):
            grad += v[i] * x[i, j] * r[i]
        grad += xv[j] * old
        denom = xv[j] + lam * (1.0 - alpha) * penalty[j]
        if denom <= 0.0:
            continue
        if nonneg:
            new = nonneg_soft_threshold(grad, lam * alpha * penalty[j]) / denom
        else:
            new = soft_threshold(grad, lam * alpha * penalty[j]) / denom
        if new != old:
            diff = new - old
            for i in range(n):
                r[i] -= diff * x[i, j]
            beta[j] = new
            if abs(diff) > max_change:
                max_change = abs(diff)
    return max_change


@njit(cache=True)
def cd_solve(x, v, r, beta, intercept, xv, lam, alpha, penalty, nonneg, active, tol, max_sweeps):
    """Run coordinate-descent sweeps until the largest change falls below `tol`.

    Arguments are as in `cd_sweep`; `r`, `beta` and `intercept` are updated in place.

    Returns
    -------
    sweeps : int
        Number of sweeps run. Equal to `max_sweeps` + 1 if the tolerance was not reached.

    """
    for sweep in range(max_sweeps):
        change = cd_sweep(x, v, r, beta, intercept, xv, lam, alpha, penalty, nonneg, active)
        if change < tol:
            return sweep + 1
    return max_sweeps + 1


def penalized_ls_objective(x, v, z, beta, intercept, lam, alpha, penalty):
    """Return the weighted elastic-net least-squares objective minimized by the kernels."""
    resid = z - intercept - x @ beta
    return 0.5 * np.sum(v * resid ** 2) + lam * np.sum(
        penalty * (alpha * np.abs(beta) + 0.5 * (1 - alpha) * beta ** 2)
    )


@njit(cache=True)
def _linear_predictor(x, beta, intercept, eta):
    n, p = x.shape
    for i in range(n):
        eta[i] = intercept
    for j in range(p):
        if beta[j] != 0.0:
            for i in range(n):
                eta[i] += beta[j] * x[i, j]


@njit(cache=True)
def _inverse_link(family, eta, mu):
    for i in range(eta.size):
        if family == BINOMIAL:
            mu[i] = 1.0 / (1.0 + np.exp(-eta[i]))
        else:
            mu[i] = np.exp(eta[i])


@njit(cache=True)
def mean_deviance(family, y, mu):
    """Return the mean unit deviance of a binomial (1) or Poisson (2) fit."""
    total = 0.0
    for i in range(y.size):
        if family == BINOMIAL:
            m = min(max(mu[i], 1e-15), 1.0 - 1e-15)
            if y[i] > 0.0:
                total -= 2.0 * y[i] * np.log(m)
            if y[i] < 1.0:
                total -= 2.0 * (1.0 - y[i]) * np.log(1.0 - m)
        else:
            m = max(mu[i], 1e-300)
            if y[i] > 0.0:
                total += 2.0 * y[i] * (np.log(y[i]) - np.log(m))
            total -= 2.0 * (y[i] - m)
    return total / y.size


@njit(cache=True)
def _penalty(beta, alpha, penalty):
    total = 0.0
    for j in range(beta.size):
        total += penalty[j] * (alpha * abs(beta[j]) + 0.5 * (1.0 - alpha) * beta[j] * beta[j])
    return total


@njit(cache=True)
def irls_solve(x, y, family, beta, intercept, lam, alpha, penalty, nonneg, active, tol,
               max_sweeps, irls_tol, max_irls, weight_floor, max_halvings):
    """Minimize the penalized deviance of a binomial or Poisson GLM at one penalty strength.

    Every iteration solves the weighted least-squares problem of the kernels with the IRLS
    working weights and responses, then halves the step towards the previous iterate until the
    penalized objective ``deviance / 2 + lam * penalty`` does not increase.

    Parameters
    ----------
    x : np.ndarray(N, P)
        Design matrix (standardized scale), preferably Fortran-ordered.
    y : np.ndarray(N,)
        Outcome.
    family : int
        `BINOMIAL` (logit link) or `POISSON` (log link).
    beta : np.ndarray(P,)
        Starting coefficients. Updated in place.
    intercept : np.ndarray(1,)
        Starting intercept. Updated in place.
    lam, alpha, penalty, nonneg, active
        As in `cd_sweep`.
    tol : float
        Tolerance of the coordinate-descent solves.
    max_sweeps : int
        Sweep cap of every coordinate-descent solve.
    irls_tol : float
        Tolerance on the change of the mean deviance between iterations.
    max_irls : int
        Maximum number of iterations.
    weight_floor : float
        Lower bound of the working weights.
    max_halvings : int
        Maximum number of step halvings per iteration.

    Returns
    -------
    status : int
        `CONVERGED`, `SWEEPS_EXCEEDED`, `HALVING_FAILED` or `IRLS_EXCEEDED`.
    deviance : float
        Mean deviance at the returned coefficients.

    """
    n, p = x.shape
    eta = np.empty(n)
    mu = np.empty(n)
    v = np.empty(n)
    r = np.empty(n)
    beta_old = np.empty(p)
    _linear_predictor(x, beta, intercept[0], eta)
    _inverse_link(family, eta, mu)
    dev_old = mean_deviance(family, y, mu)
    obj_old = 0.5 * dev_old + lam * _penalty(beta, alpha, penalty)
    dev = dev_old
    for _ in range(max_irls):
        for i in range(n):
            if family == BINOMIAL:
                w = mu[i] * (1.0 - mu[i])
            else:
                w = mu[i]
            w = max(w, weight_floor)
            v[i] = w / n
            # working response minus the current linear predictor
            r[i] = (y[i] - mu[i]) / w
        xv = weighted_sq_norms(x, v)
        beta_old[:] = beta
        intercept_old = intercept[0]
        sweeps = cd_solve(
            x, v, r, beta, intercept, xv, lam, alpha, penalty, nonneg, active, tol, max_sweeps
        )
        if sweeps > max_sweeps:
            return SWEEPS_EXCEEDED, dev

        _linear_predictor(x, beta, intercept[0], eta)
        _inverse_link(family, eta, mu)
        dev = mean_deviance(family, y, mu)
        obj = 0.5 * dev + lam * _penalty(beta, alpha, penalty)
        halvings = 0
        while not (np.isfinite(obj) and obj <= obj_old + 1e-10 * max(1.0, abs(obj_old))):
            if halvings == max_halvings:
                return HALVING_FAILED, dev
            for j in range(p):
                beta[j] = 0.5 * (beta[j] + beta_old[j])
            intercept[0] = 0.5 * (intercept[0] + intercept_old)
            _linear_predictor(x, beta, intercept[0], eta)
            _inverse_link(family, eta, mu)
            dev = mean_deviance(family, y, mu)
            obj = 0.5 * dev + lam * _penalty(beta, alpha, penalty)
            halvings += 1

        change = abs(intercept[0] - intercept_old)
        for j in range(p):
            change = max(change, abs(beta[j] - beta_old[j]))
        if abs(dev - dev_old) < irls_tol and change < 10 * tol:
            return CONVERGED, dev
        dev_old = dev
        obj_old = obj
    return IRLS_EXCEEDED, dev
