"""Test mvstack.learners.glm."""
from dataclasses import replace

from mvstack.data import CvConfig, Dataset
from mvstack.errors import (
    ConfigError,
    ConvergenceError,
    DegenerateError,
    MissingDataError,
    ShapeError,
    StratificationError,
)
from mvstack.learners.glm import (
    adaptive_weights,
    canonical_order,
    cv_select_lambda,
    fit_path,
    glm_predict,
    GlmFit,
    GlmLearner,
    GlmSpec,
    lambda_max,
    reciprocal_weights,
    WEIGHT_CAP,
)
import numpy as np
import pytest
from utils import kkt_violation, view_data


def test_glm_spec():
    """Test mvstack.learners.glm.GlmSpec."""
    test = GlmSpec()
    assert test.family == "binomial"
    assert test.alpha == 1.0
    assert test.family_obj.name == "binomial"
    test = GlmSpec(family="gaussian", penalty_weights=[1, 2], lambdas=[2.0, 1.0])
    assert test.penalty_weights.dtype == float
    with pytest.raises(ValueError):
        test.lambdas[0] = 3.0
    with pytest.raises(ConfigError):
        GlmSpec(alpha=1.5)
    with pytest.raises(ConfigError):
        GlmSpec(family="gamma")
    with pytest.raises(ConfigError):
        GlmSpec(penalty_weights=[1.0, -1.0])
    with pytest.raises(ConfigError):
        GlmSpec(penalty_weights=[1.0, np.inf])
    with pytest.raises(ShapeError):
        GlmSpec(penalty_weights=[[1.0]])
    with pytest.raises(ConfigError):
        GlmSpec(lambdas=[1.0, 2.0])
    with pytest.raises(ConfigError):
        GlmSpec(lambdas=[1.0, 0.0])
    with pytest.raises(ConfigError):
        GlmSpec(n_lambda=0)
    with pytest.raises(ConfigError):
        GlmSpec(lambda_ratio=1.0)
    with pytest.raises(ConfigError):
        GlmSpec(tol=0)
    with pytest.raises(ConfigError):
        GlmSpec(max_irls=0)


def test_canonical_order():
    """Test mvstack.learners.glm.canonical_order."""
    x = np.array([[1.0, 0.0, 1.0, 0.0], [2.0, 5.0, 1.0, 5.0]])
    assert np.array_equal(canonical_order(x), [1, 3, 2, 0])
    assert np.array_equal(canonical_order(x[:, [2, 0, 1, 3]]), [2, 3, 0, 1])

    # paths do not depend on the order of the columns
    data, _ = view_data(60, [6], [1.0, -1.0, 0.5, 0.0, 0.0, 2.0], family="binomial", seed=33)
    order = np.array([4, 1, 5, 0, 3, 2])
    spec = GlmSpec(alpha=0.5, n_lambda=20, penalty_weights=np.arange(1.0, 7.0))
    path = fit_path(data, spec)
    weights = np.arange(1.0, 7.0)[order]
    permuted = fit_path(data.subset(columns=order), replace(spec, penalty_weights=weights))
    assert np.array_equal(permuted.betas, path.betas[:, order])
    assert np.array_equal(permuted.intercepts, path.intercepts)


def test_lambda_max():
    """Test mvstack.learners.glm.lambda_max."""
    xs = np.array([[1.0, 0.0], [-1.0, 0.0]])
    y = np.array([2.0, 0.0])
    active = np.array([True, False])
    assert np.allclose(lambda_max(xs, y, 1.0, np.ones(2), active, 1.0), 1.0)
    assert np.allclose(lambda_max(xs, y, 1.0, np.ones(2), active, 0.5), 2.0)
    assert np.allclose(lambda_max(xs, y, 1.0, np.array([4.0, 1.0]), active, 1.0), 0.25)
    # ridge uses an effective mixing of 1e-3
    assert np.allclose(lambda_max(xs, y, 1.0, np.ones(2), active, 0.0), 1000.0)
    # no usable column
    assert lambda_max(xs, y, 1.0, np.zeros(2), active, 1.0) == 1.0
    assert lambda_max(xs, np.ones(2), 1.0, np.ones(2), active, 1.0) == 1.0


def test_fit_path_orthogonal_lasso():
    """Test mvstack.learners.glm.fit_path against the lasso of an orthogonal design."""
    x = np.array([[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]])
    y = np.array([3.0, 1.0, -1.0, 0.0])
    data = Dataset(x, y, "gaussian")
    path = fit_path(data, GlmSpec(family="gaussian", lambdas=[0.5], tol=1e-12))
    # x^T y / n = (1.25, 0.25), soft-thresholded at 0.5
    assert np.allclose(path.betas[0], [0.75, 0.0])
    assert np.allclose(path.intercepts[0], 0.75)
    assert path.n_solved == 1

    path = fit_path(data, GlmSpec(family="gaussian", lambdas=[0.1], tol=1e-12))
    assert np.allclose(path.betas[0], [1.15, 0.15])

    # nonnegativity
    data = Dataset(x, -y, "gaussian")
    path = fit_path(data, GlmSpec(family="gaussian", lambdas=[0.1], nonneg=True, tol=1e-12))
    assert np.allclose(path.betas[0], 0)
    assert np.allclose(path.intercepts[0], -0.75)


def test_fit_path_orthonormal_oracle():
    """Test mvstack.learners.glm.fit_path against the soft-thresholded least squares."""
    rng = np.random.default_rng(30)
    for _ in range(25):
        n = 50
        p = int(rng.integers(1, 11))
        q, _ = np.linalg.qr(np.column_stack([np.ones(n), rng.standard_normal((n, p))]))
        # centered columns of unit population variance
        x = q[:, 1:] * np.sqrt(n)
        beta = rng.normal(0, 1, p) * (rng.random(p) < 0.7)
        y = 2.0 + x @ beta + rng.standard_normal(n)
        data = Dataset(x, y, "gaussian")
        path = fit_path(data, GlmSpec(family="gaussian"))
        score = x.T @ (y - y.mean()) / n
        expected = np.sign(score) * np.maximum(np.abs(score) - path.lambdas[:, np.newaxis], 0)
        assert np.allclose(path.betas, expected, rtol=0, atol=1e-6)
        assert np.allclose(path.intercepts, y.mean(), rtol=0, atol=1e-6)
        assert np.allclose(path.lambdas[0], np.max(np.abs(score)))


def _grid_minimum(objective, lower, upper, points=41, rounds=8):
    """Return the minimizer of a convex function on a box by repeated grid refinement."""
    lower = np.array(lower, dtype=float)
    upper = np.array(upper, dtype=float)
    floor = lower.copy()
    for _ in range(rounds):
        axes = [np.linspace(low, high, points) for low, high in zip(lower, upper)]
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, lower.size)
        best = grid[np.argmin(objective(grid))]
        width = 3 * (upper - lower) / (points - 1)
        lower = np.maximum(best - width, floor)
        upper = best + width
    return best


def test_fit_path_binomial_oracle():
    """Test penalized logistic fits of mvstack.learners.glm.fit_path against a grid search."""
    rng = np.random.default_rng(31)
    for _ in range(10):
        n = int(rng.integers(4, 9))
        p = int(rng.integers(1, 3))
        x = rng.standard_normal((n, p))
        y = np.r_[0.0, 1.0, rng.integers(0, 2, n - 2)]
        lam = rng.uniform(0.2, 0.5)
        alpha = rng.uniform()
        nonneg = bool(rng.random() < 0.5)

        def objective(grid):
            eta = grid[:, :1] + grid[:, 1:] @ x.T
            mu = np.clip(1 / (1 + np.exp(-eta)), 1e-15, 1 - 1e-15)
            deviance = -2 * np.mean(y * np.log(mu) + (1 - y) * np.log(1 - mu), axis=1)
            beta = grid[:, 1:]
            penalty = np.sum(alpha * np.abs(beta) + 0.5 * (1 - alpha) * beta ** 2, axis=1)
            return 0.5 * deviance + lam * penalty

        lower = np.r_[-10.0, np.full(p, 0.0 if nonneg else -10.0)]
        best = _grid_minimum(objective, lower, np.full(p + 1, 10.0))
        data = Dataset(x, y, "binomial")
        spec = GlmSpec(family="binomial", alpha=alpha, nonneg=nonneg, standardize=False,
                       lambdas=[lam], tol=1e-12, irls_tol=1e-14)
        path = fit_path(data, spec)
        assert np.allclose(path.intercepts[0], best[0], rtol=0, atol=1e-4)
        assert np.allclose(path.betas[0], best[1:], rtol=0, atol=1e-4)


def test_fit_path_ridge():
    """Test mvstack.learners.glm.fit_path against the closed-form ridge solution."""
    data, _ = view_data(40, [3], [1.0, -2.0, 0.5], seed=2)
    lam = 0.3
    spec = GlmSpec(family="gaussian", alpha=0.0, standardize=False, lambdas=[lam], tol=1e-12)
    path = fit_path(data, spec)
    xc = data.x - data.x.mean(axis=0)
    yc = data.y - data.y.mean()
    ref = np.linalg.solve(xc.T @ xc / data.n + lam * np.eye(3), xc.T @ yc / data.n)
    assert np.allclose(path.betas[0], ref, atol=1e-7)
    assert np.allclose(path.intercepts[0], data.y.mean() - data.x.mean(axis=0) @ ref, atol=1e-7)


def test_fit_path_unpenalized():
    """Test mvstack.learners.glm.fit_path with zero penalty weights."""
    data, _ = view_data(60, [3], [1.0, -2.0, 0.5], seed=3)
    spec = GlmSpec(family="gaussian", penalty_weights=np.zeros(3), lambdas=[1.0], tol=1e-12)
    path = fit_path(data, spec)
    design = np.column_stack([np.ones(data.n), data.x])
    ref = np.linalg.lstsq(design, data.y, rcond=None)[0]
    assert np.allclose(path.intercepts[0], ref[0], atol=1e-8)
    assert np.allclose(path.betas[0], ref[1:], atol=1e-8)

    # unpenalized logistic and poisson fits have a zero score
    for family, seed in (("binomial", 4), ("poisson", 5)):
        rng = np.random.default_rng(seed)
        x = rng.standard_normal((2000, 2))
        eta = 0.2 + x @ np.array([0.5, -0.3])
        if family == "binomial":
            y = rng.binomial(1, 1 / (1 + np.exp(-eta))).astype(float)
        else:
            y = rng.poisson(np.exp(eta)).astype(float)
        data = Dataset(x, y, family)
        spec = GlmSpec(family=family, penalty_weights=np.zeros(2), lambdas=[1.0])
        path = fit_path(data, spec)
        assert kkt_violation(data, path.intercepts[0], path.betas[0], 1.0, spec) < 1e-5
        assert np.allclose(path.betas[0], [0.5, -0.3], atol=0.2)


def test_fit_path_kkt():
    """Test the optimality conditions of the solutions of mvstack.learners.glm.fit_path."""
    signal = np.r_[np.full(4, 1.0), np.zeros(6)]
    data, _ = view_data(80, [10], signal, family="binomial", seed=6)
    path = fit_path(data, GlmSpec(family="binomial", n_lambda=20))
    assert path.lambdas.size == 20
    assert np.all(np.diff(path.lambdas) < 0)
    assert np.allclose(path.lambdas[-1] / path.lambdas[0], 1e-2)
    assert np.allclose(path.betas[0], 0, atol=1e-10)
    assert np.count_nonzero(path.betas[-1]) > 0

    rng = np.random.default_rng(32)
    families = ("gaussian", "binomial", "poisson")
    for index in range(100):
        family = families[index % 3]
        alpha = float(rng.uniform())
        nonneg = bool(rng.random() < 0.5)
        x = rng.standard_normal((60, 8))
        eta = x @ (rng.normal(0, 0.5, 8) * (rng.random(8) < 0.5))
        if family == "gaussian":
            y = eta + rng.standard_normal(60)
        elif family == "binomial":
            y = rng.binomial(1, 1 / (1 + np.exp(-eta))).astype(float)
        else:
            y = rng.poisson(np.exp(eta)).astype(float)
        data = Dataset(x, y, family)
        spec = GlmSpec(family=family, alpha=alpha, nonneg=nonneg, n_lambda=10)
        path = fit_path(data, spec)
        if nonneg:
            assert np.all(path.betas >= 0)
        for step in range(path.n_solved):
            violation = kkt_violation(
                data, path.intercepts[step], path.betas[step], path.lambdas[step], spec
            )
            assert violation <= 1e-6


def test_fit_path_warm_start():
    """Test that mvstack.learners.glm.fit_path does not depend on the path before a strength."""
    data, _ = view_data(50, [6], [1.0, 0.5, 0, 0, -1.0, 0], seed=7)
    spec = GlmSpec(family="gaussian", n_lambda=30, tol=1e-12)
    path = fit_path(data, spec)
    single = fit_path(data, replace(spec, lambdas=path.lambdas[[12]]))
    assert np.allclose(single.betas[0], path.betas[12], atol=1e-7)
    assert np.allclose(single.intercepts[0], path.intercepts[12], atol=1e-7)


def test_fit_path_scale_equivariance():
    """Test the equivariance of standardized fits of mvstack.learners.glm.fit_path."""
    data, _ = view_data(50, [4], [1.0, -1.0, 0.5, 0.0], family="binomial", seed=8)
    spec = GlmSpec(family="binomial", n_lambda=10, tol=1e-10)
    path = fit_path(data, spec)
    factors = np.array([10.0, 0.1, 1.0, 3.0])
    scaled = fit_path(Dataset(data.x * factors + 5.0, data.y, "binomial"), spec)
    assert np.allclose(scaled.lambdas, path.lambdas)
    assert np.allclose(scaled.betas * factors, path.betas, atol=1e-6)
    assert np.allclose(
        scaled.link(data.x * factors + 5.0), path.link(data.x), atol=1e-6
    )


def test_fit_path_saturation(caplog):
    """Test the saturation stop of mvstack.learners.glm.fit_path."""
    x = np.array([[-2.0], [-1.0], [1.0], [2.0]])
    data = Dataset(x, np.array([0.0, 0.0, 1.0, 1.0]), "binomial")
    with caplog.at_level("DEBUG", logger="mvstack.learners.glm"):
        path = fit_path(data, GlmSpec(family="binomial", lambda_ratio=1e-6))
    saturated = [record for record in caplog.records if "saturated" in record.getMessage()]
    assert len(saturated) == 1
    assert saturated[0].levelname == "DEBUG"
    assert path.n_solved < path.lambdas.size
    last = path.n_solved - 1
    assert np.all(path.betas[path.n_solved:] == path.betas[last])
    assert np.all(path.intercepts[path.n_solved:] == path.intercepts[last])
    assert np.all(path.deviance[path.n_solved:] == path.deviance[last])
    null = data.family.deviance(data.y, np.full(4, 0.5))
    assert 1 - path.deviance[last] / null > 0.999


def test_fit_path_errors():
    """Test the errors of mvstack.learners.glm.fit_path."""
    x = np.random.default_rng(9).standard_normal((10, 2))
    y = np.array([0.0, 1.0] * 5)
    with pytest.raises(TypeError):
        fit_path(x, GlmSpec())
    with pytest.raises(TypeError):
        fit_path(Dataset(x, y, "binomial"), {"family": "binomial"})
    with pytest.raises(ConfigError):
        fit_path(Dataset(x, y, "gaussian"), GlmSpec(family="binomial"))
    x_missing = x.copy()
    x_missing[0, 0] = np.nan
    with pytest.raises(MissingDataError):
        fit_path(Dataset(x_missing, y, "binomial"), GlmSpec())
    with pytest.raises(DegenerateError):
        fit_path(Dataset(np.ones((10, 2)), y, "binomial"), GlmSpec())
    with pytest.raises(DegenerateError):
        fit_path(Dataset(x, np.zeros(10), "binomial"), GlmSpec())
    with pytest.raises(DegenerateError):
        fit_path(Dataset(x, np.zeros(10), "poisson"), GlmSpec(family="poisson"))
    with pytest.raises(ShapeError):
        fit_path(Dataset(x, y, "binomial"), GlmSpec(penalty_weights=np.ones(3)))


def test_fit_path_convergence_error():
    """Test the convergence failure of mvstack.learners.glm.fit_path."""
    data, _ = view_data(60, [3], [2.0, 0.0, 0.0], family="binomial", seed=10)
    with pytest.raises(ConvergenceError) as error:
        fit_path(data, GlmSpec(max_irls=1, n_lambda=5))
    assert error.value.lambda_index == 1


def test_constant_columns():
    """Test that constant columns get a zero coefficient in mvstack.learners.glm.fit_path."""
    data, _ = view_data(40, [3], [1.0, 1.0, 0.0], seed=11)
    x = data.x.copy()
    x[:, 2] = 4.0
    path = fit_path(Dataset(x, data.y, "gaussian"), GlmSpec(family="gaussian", n_lambda=10))
    assert np.all(path.betas[:, 2] == 0)


def test_cv_select_lambda():
    """Test mvstack.learners.glm.cv_select_lambda."""
    signal = np.r_[np.full(3, 1.0), np.zeros(7)]
    data, _ = view_data(80, [10], signal, family="binomial", seed=12)
    spec = GlmSpec(family="binomial", n_lambda=30)
    cv = CvConfig(k_lambda=5, seed=3)
    fit = cv_select_lambda(data, spec, cv)
    path = fit.path
    assert path.cv_mean.shape == (30,)
    assert path.cv_se.shape == (30,)
    assert fit.lambda_index == int(np.argmin(path.cv_mean))
    assert fit.lambda_selected == path.lambdas[fit.lambda_index]
    assert np.allclose(fit.beta, path.betas[fit.lambda_index])
    assert fit.intercept == path.intercepts[fit.lambda_index]
    assert fit.lambda_rule == "min"
    assert not fit.relaxed
    with pytest.raises(ValueError):
        fit.beta[0] = 1.0

    # identical seeds give identical selections
    again = cv_select_lambda(data, spec, cv)
    assert again.lambda_index == fit.lambda_index
    assert np.allclose(again.path.cv_mean, path.cv_mean)

    loose = cv_select_lambda(data, spec, CvConfig(k_lambda=5, seed=3, lambda_rule="1se"))
    assert loose.lambda_index <= fit.lambda_index
    threshold = path.cv_mean[fit.lambda_index] + path.cv_se[fit.lambda_index]
    assert loose.path.cv_mean[loose.lambda_index] <= threshold
    assert np.all(path.cv_mean[:loose.lambda_index] > threshold)

    with pytest.raises(TypeError):
        cv_select_lambda(data, spec, {"k_lambda": 5})
    with pytest.raises(ConfigError):
        cv_select_lambda(data, spec, CvConfig(k_lambda=81))


def test_cv_select_lambda_relax():
    """Test the relaxed refit of mvstack.learners.glm.cv_select_lambda."""
    data, _ = view_data(60, [5], [2.0, -1.0, 0.0, 0.0, 0.0], seed=13)
    spec = GlmSpec(family="gaussian", relax=True, n_lambda=20, tol=1e-12)
    fit = cv_select_lambda(data, spec, CvConfig(k_lambda=5))
    assert fit.relaxed
    support = np.flatnonzero(fit.beta)
    assert support.size > 0
    design = np.column_stack([np.ones(data.n), data.x[:, support]])
    ref = np.linalg.lstsq(design, data.y, rcond=None)[0]
    assert np.allclose(fit.intercept, ref[0], atol=1e-6)
    assert np.allclose(fit.beta[support], ref[1:], atol=1e-6)

    # an empty support gives the intercept-only model
    spec = GlmSpec(family="binomial", relax=True, lambdas=[1e3])
    data, _ = view_data(40, [2], [1.0, 0.0], family="binomial", seed=14)
    fit = cv_select_lambda(data, spec, CvConfig(k_lambda=4))
    assert fit.relaxed
    assert np.all(fit.beta == 0)
    mean = np.mean(data.y)
    assert np.allclose(fit.intercept, np.log(mean / (1 - mean)))


def test_cv_select_lambda_stratification():
    """Test the single-class folds of mvstack.learners.glm.cv_select_lambda."""
    x = np.random.default_rng(15).standard_normal((10, 2))
    y = np.zeros(10)
    y[3] = 1
    data = Dataset(x, y, "binomial")
    spec = GlmSpec(n_lambda=5, lambda_ratio=0.5)
    with pytest.warns(UserWarning, match="not stratified"):
        with pytest.raises(StratificationError):
            cv_select_lambda(data, spec, CvConfig(k_lambda=2))


def test_reciprocal_weights():
    """Test mvstack.learners.glm.reciprocal_weights."""
    assert np.allclose(reciprocal_weights(np.array([0.0, 0.5, -2.0])), [WEIGHT_CAP, 2.0, 0.5])
    assert np.allclose(reciprocal_weights([1e-20, 4.0], cap=100.0), [100.0, 0.25])
    assert np.allclose(reciprocal_weights([2.0, 0.5]), [0.5, 2.0])


def test_adaptive_weights():
    """Test mvstack.learners.glm.adaptive_weights."""
    data, _ = view_data(60, [4], [2.0, 0.0, -1.0, 0.0], seed=16)
    weights = adaptive_weights(data, "gaussian", CvConfig(k_lambda=5))
    assert weights.shape == (4,)
    assert np.all(weights > 0)
    # strong features are penalized less
    assert weights[0] < weights[1]
    assert weights[2] < weights[3]

    # duplicated features get equal weights
    x = np.column_stack([data.x[:, 0], data.x[:, 0], data.x[:, 2]])
    weights = adaptive_weights(Dataset(x, data.y, "gaussian"), "gaussian", CvConfig(k_lambda=5))
    assert np.allclose(weights[0], weights[1], rtol=1e-5)


def test_glm_predict():
    """Test mvstack.learners.glm.glm_predict."""
    data, _ = view_data(40, [2], [1.0, -1.0], family="binomial", seed=17)
    fit = cv_select_lambda(data, GlmSpec(n_lambda=10), CvConfig(k_lambda=4))
    x_new = np.array([[0.0, 0.0], [1.0, -1.0]])
    eta = glm_predict(fit, x_new, scale="link")
    assert np.allclose(eta, fit.intercept + x_new @ fit.beta)
    assert np.allclose(glm_predict(fit, x_new), 1 / (1 + np.exp(-eta)))
    assert np.allclose(fit.predict(x_new), glm_predict(fit, x_new))
    record = fit.coef(("X1", "X2"))
    assert record.intercept == fit.intercept
    assert np.allclose(record.coefficients, fit.beta)
    assert record.names == ("X1", "X2")
    with pytest.raises(ShapeError):
        glm_predict(fit, np.zeros((2, 3)))
    with pytest.raises(ShapeError):
        glm_predict(fit, np.zeros(2))
    with pytest.raises(MissingDataError):
        glm_predict(fit, np.array([[np.nan, 0.0]]))
    with pytest.raises(ConfigError):
        glm_predict(fit, x_new, scale="class")


def test_glm_learner():
    """Test mvstack.learners.glm.GlmLearner."""
    data, _ = view_data(30, [4], [1.0, 0.0, 0.0, 1.0], seed=18)
    learner = GlmLearner("gaussian", alpha=0.5, nonneg=True, k_lambda=5, n_lambda=15)
    assert learner.kind == "glm"
    assert learner.alpha == 0.5
    assert learner.nonneg
    assert not learner.relax
    assert learner.standardize
    assert repr(learner).startswith("GlmLearner(family='gaussian', alpha=0.5")
    first = learner.fit(data, 11)
    second = learner.fit(data, 11)
    assert first.lambda_index == second.lambda_index
    assert np.allclose(first.beta, second.beta)
    assert np.all(first.beta >= 0)
    assert np.allclose(learner.predict(first, data.x), first.intercept + data.x @ first.beta)

    # tuning folds are capped at the number of observations
    fit = GlmLearner("gaussian", k_lambda=10, n_lambda=5).fit(data.subset(np.arange(6)), 0)
    assert fit.path.cv_mean.shape == (5,)

    adaptive = GlmLearner("gaussian", adaptive=True, k_lambda=5, n_lambda=10).fit(data, 1)
    assert adaptive.spec.penalty_weights.shape == (4,)

    with pytest.raises(ConfigError):
        GlmLearner("gaussian", alpha=2.0)
    with pytest.raises(ConfigError):
        GlmLearner("gaussian", k_lambda=1)
    with pytest.raises(ConfigError):
        GlmLearner("gaussian", lambda_rule="max")


def test_glm_predict_null():
    """Test mvstack.learners.glm.glm_predict without coefficients."""
    x_new = np.array([[1.0, 2.0], [-3.0, 0.5]])
    fit = GlmFit(0.0, np.zeros(2), 1.0, 0, None, GlmSpec())
    assert np.allclose(glm_predict(fit, x_new), 0.5)
    for value in (0.0, 1.0):
        fit = GlmFit(value, np.zeros(2), 1.0, 0, None, GlmSpec(family="poisson"))
        assert np.allclose(glm_predict(fit, x_new), np.exp(value))
        assert np.allclose(glm_predict(fit, x_new, scale="link"), value)
