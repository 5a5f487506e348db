"""Growth and evaluation of CART trees stored as flat arrays.

Splits maximize the decrease of the sum of squared errors of the node values. For a 0/1
outcome this decrease is half the decrease of the (size-weighted) Gini impurity, so the same
search serves classification and regression trees.

"""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class Tree:
    """Binary tree of axis-aligned splits.

    Node 0 is the root. An observation goes to the left child if its value of the split feature
    is smaller than or equal to the threshold.

    Attributes
    ----------
    feature : np.ndarray(M,) of int
        Split feature of each node; -1 for leaves.
    threshold : np.ndarray(M,)
        Split threshold of each node; NaN for leaves.
    left : np.ndarray(M,) of int
        Left child of each node; -1 for leaves.
    right : np.ndarray(M,) of int
        Right child of each node; -1 for leaves.
    value : np.ndarray(M,)
        Mean outcome of the training observations in each node.

    """

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray

    @property
    def n_nodes(self):
        """Number of nodes."""
        return self.feature.size

    @property
    def n_leaves(self):
        """Number of leaves."""
        return int(np.sum(self.feature < 0))

    def apply(self, x):
        """Return the leaf reached by every row of `x`."""
        node = np.zeros(x.shape[0], dtype=int)
        while True:
            rows = np.flatnonzero(self.feature[node] >= 0)
            if rows.size == 0:
                return node
            current = node[rows]
            go_left = x[rows, self.feature[current]] <= self.threshold[current]
            node[rows] = np.where(go_left, self.left[current], self.right[current])

    def predict(self, x):
        """Return the leaf value reached by every row of `x`."""
        return self.value[self.apply(x)]


def best_split(x, y, features, min_node):
    """Return the split of a node with the largest decrease of the sum of squared errors.

    Candidate thresholds are the midpoints between consecutive distinct values. Features are
    searched in the given order and a later candidate replaces the current best only if its
    decrease is strictly larger, so ties go to the first feature and the lowest threshold.

    Parameters
    ----------
    x : np.ndarray(N, P)
        Features of the observations in the node.
    y : np.ndarray(N,)
        Outcome of the observations in the node.
    features : np.ndarray of int
        Candidate features, in increasing order.
    min_node : int
        Minimum number of observations in each child.

    Returns
    -------
    gain : float
        Decrease of the sum of squared errors; 0.0 if no admissible split improves the node.
    feature : int
        Split feature; -1 if the node is not split.
    threshold : float
        Split threshold.

    """
    n = y.size
    total = y.sum()
    sse = np.sum((y - total / n) ** 2)
    best = (0.0, -1, np.nan)
    if n < 2 * min_node or sse <= 1e-12 * max(1.0, np.sum(y ** 2)):
        return best
    tol = 1e-12 * max(1.0, sse)
    n_left = np.arange(1, n)
    n_right = n - n_left
    sizes_ok = (n_left >= min_node) & (n_right >= min_node)
    for feature in features:
        order = np.argsort(x[:, feature], kind="stable")
        values = x[order, feature]
        left_sum = np.cumsum(y[order])[:-1]
        valid = sizes_ok & (values[1:] > values[:-1])
        if not valid.any():
            continue
        gain = left_sum ** 2 / n_left + (total - left_sum) ** 2 / n_right - total ** 2 / n
        gain[~valid] = -np.inf
        index = int(np.argmax(gain))
        if gain[index] > best[0] + tol:
            threshold = 0.5 * (values[index] + values[index + 1])
            if threshold >= values[index + 1]:
                threshold = values[index]
            best = (float(gain[index]), int(feature), float(threshold))
    return best


def grow_tree(x, y, rows, mtry, min_node, rng):
    """Grow a CART tree on the given (possibly repeated) rows.

    Parameters
    ----------
    x : np.ndarray(N, P)
        Features.
    y : np.ndarray(N,)
        Outcome.
    rows : np.ndarray of int
        Training rows of the tree, e.g. a bootstrap resample.
    mtry : int
        Number of features drawn (without replacement) as candidates at each node.
    min_node : int
        Minimum number of training rows in each child.
    rng : np.random.Generator
        Generator of the feature draws.

    Returns
    -------
    tree : Tree
        Grown tree.
    decrease : np.ndarray(P,)
        Total decrease of the sum of squared errors attributed to each feature.

    """
    p = x.shape[1]
    feature, threshold, left, right, value = [], [], [], [], []
    decrease = np.zeros(p)

    def new_node(node_rows):
        feature.append(-1)
        threshold.append(np.nan)
        left.append(-1)
        right.append(-1)
        value.append(float(np.mean(y[node_rows])))
        return len(feature) - 1

    stack = [(new_node(rows), rows)]
    while stack:
        node, node_rows = stack.pop()
        candidates = np.sort(rng.choice(p, size=mtry, replace=False))
        gain, split, cut = best_split(x[node_rows], y[node_rows], candidates, min_node)
        if split < 0:
            continue
        goes_left = x[node_rows, split] <= cut
        left_rows = node_rows[goes_left]
        right_rows = node_rows[~goes_left]
        feature[node] = split
        threshold[node] = cut
        decrease[split] += gain
        left[node] = new_node(left_rows)
        right[node] = new_node(right_rows)
        stack.append((right[node], right_rows))
        stack.append((left[node], left_rows))

    tree = Tree(
        feature=np.array(feature, dtype=int),
        threshold=np.array(threshold, dtype=float),
        left=np.array(left, dtype=int),
        right=np.array(right, dtype=int),
        value=np.array(value, dtype=float),
    )
    return tree, decrease
