"""Linear sign classifier: exact margins, minimal perturbations,
certificates, and empirical robust-radius measurement for arbitrary
label pipelines.
"""

from dataclasses import dataclass, field

import numpy as np

from . import certify
from .errors import ParameterError, ShapeError

__all__ = [
    "LinearClassifier",
    "RadiusMeasurement",
    "predict",
    "margin",
    "min_perturbation",
    "linear_certificate",
    "linear_certificate_approx",
    "empirical_robust_radius",
]

DEFAULT_PROBES = 200
DEFAULT_RADIUS_CEILING = 1e6


@dataclass(frozen=True)
class LinearClassifier:
    """f(x) = sign(<w, x>) with sign(0) := +1.

    ``support_mask`` is optional; when present it must be 1 exactly where
    the weight is nonzero (masked inputs then classify identically).
    """

    weights: np.ndarray = field(repr=False)
    support_mask: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if not np.any(w != 0):
            raise ParameterError("weights must not be all zero")
        object.__setattr__(self, "weights", w)
        if self.support_mask is not None:
            m = np.asarray(self.support_mask, dtype=np.float64)
            if m.shape != w.shape:
                raise ShapeError("support mask shape must match weights")
            if not np.array_equal(m != 0, w != 0):
                raise ParameterError("support mask must match weight support")
            object.__setattr__(self, "support_mask", m)

    def __call__(self, x):
        return predict(self, x)


@dataclass(frozen=True)
class RadiusMeasurement:
    """Empirically measured robust radius.

    ``flip_found`` is False for the "no upper bracket" outcome: no probed
    perturbation up to the radius ceiling changed the label, so ``radius``
    is only a lower bound.
    """

    radius: float
    trials: int
    method: str
    flip_found: bool = True

    def __post_init__(self):
        if self.radius < 0:
            raise ParameterError(f"radius must be >= 0, got {self.radius}")


def _inner(clf, x):
    x = np.asarray(x)
    if x.shape != clf.weights.shape:
        raise ShapeError(
            f"expected shape {clf.weights.shape}, got {x.shape}"
        )
    return float(np.sum(clf.weights * np.real(x)))


def predict(clf, x):
    """Label in {-1, +1}; the boundary itself maps to +1."""
    return 1 if _inner(clf, x) >= 0 else -1


def margin(clf, x):
    """Exact L2 distance |<w, x>| / ||w||_2 to the decision boundary."""
    return abs(_inner(clf, x)) / float(np.linalg.norm(clf.weights))


def min_perturbation(clf, x):
    """Closed-form smallest label-flipping direction -<w,x> w / ||w||^2.

    Its norm equals the margin; any strictly longer step along it flips
    the label.
    """
    w = clf.weights
    return -_inner(clf, x) * w / float(np.sum(w * w))


def linear_certificate(clf, x, alpha):
    """Certified radius alpha * margin / 2 for exactly sparse inputs.

    Requires alpha > 2 (otherwise the guaranteed gain alpha/2 is not an
    improvement and no certificate is issued).
    """
    if alpha <= 2:
        raise ParameterError(
            f"certificate requires alpha > 2 (gain alpha/2 <= 1), got {alpha}"
        )
    m = margin(clf, x)
    return certify.Certificate(
        radius=alpha * m / 2.0,
        probability=1.0,
        gain=alpha / 2.0,
        inputs={"alpha": alpha, "margin": m},
    )


def linear_certificate_approx(clf, x, alpha, rho, defect):
    """Certificate for approximately sparse inputs.

    Radius (alpha/2) * (margin - 4*rho*defect); returns None (no
    certificate) when the margin does not exceed 4*rho*defect.
    """
    if alpha <= 2:
        raise ParameterError(
            f"certificate requires alpha > 2 (gain alpha/2 <= 1), got {alpha}"
        )
    if rho <= 0:
        raise ParameterError(f"rho must be positive, got {rho}")
    if defect < 0:
        raise ParameterError(f"defect must be >= 0, got {defect}")
    m = margin(clf, x)
    if defect > 0 and m <= 4.0 * rho * defect:
        return None
    radius = (alpha / 2.0) * (m - 4.0 * rho * defect)
    gain = certify.robustness_gain(certify.kappa(radius, alpha, rho, defect)) if radius > 0 else alpha / 2.0
    return certify.Certificate(
        radius=radius,
        probability=1.0,
        gain=gain,
        inputs={"alpha": alpha, "rho": rho, "defect": defect, "margin": m},
    )


def _any_flip(pipeline, x, label, radius, directions):
    for u in directions:
        if pipeline(x + radius * u) != label:
            return True
    return False


def empirical_robust_radius(
    pipeline,
    x,
    probes=DEFAULT_PROBES,
    tol=1e-3,
    seed=0,
    extra_directions=(),
    radius_ceiling=DEFAULT_RADIUS_CEILING,
):
    """Measure the robust radius of a label pipeline at x by bisection.

    At each candidate radius the pipeline is probed along ``probes``
    random unit directions (fresh per level) plus any caller-supplied
    ``extra_directions`` (e.g. the closed-form minimal perturbation of a
    linear classifier, which makes the measurement exact to ``tol``).  An
    upper bracket is first established by doubling from ``tol``; if none
    is found below ``radius_ceiling`` the measurement is returned with
    ``flip_found=False``.
    """
    if probes < 1:
        raise ParameterError(f"probes must be >= 1, got {probes}")
    if tol <= 0:
        raise ParameterError(f"tol must be positive, got {tol}")
    x = np.asarray(x, dtype=np.float64)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    extra = []
    for u in extra_directions:
        u = np.asarray(u, dtype=np.float64)
        norm = np.linalg.norm(u)
        if norm > 0:
            extra.append(u / norm)
    method = "closed-form" if extra else "bisection+random-probe"

    def directions():
        dirs = rng.standard_normal((probes,) + x.shape)
        norms = np.linalg.norm(dirs.reshape(probes, -1), axis=1)
        dirs /= norms.reshape((probes,) + (1,) * x.ndim)
        return extra + list(dirs)

    label = pipeline(x)
    trials = 1
    hi = tol
    while True:
        dirs = directions()
        trials += len(dirs)
        if _any_flip(pipeline, x, label, hi, dirs):
            break
        hi *= 2.0
        if hi > radius_ceiling:
            return RadiusMeasurement(
                radius=radius_ceiling, trials=trials, method=method, flip_found=False
            )
    lo = 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        dirs = directions()
        trials += len(dirs)
        if _any_flip(pipeline, x, label, mid, dirs):
            hi = mid
        else:
            lo = mid
    return RadiusMeasurement(radius=lo, trials=trials, method=method)
