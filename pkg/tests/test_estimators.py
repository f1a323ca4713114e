"""Composition checks for the sklearn-style estimator wrappers."""

import numpy as np
import pytest
from sklearn import clone
from sklearn.pipeline import Pipeline as SkPipeline

from pedintent import FeatureDiscretizer, Id3Classifier, MovementClass

# (vx, vy, phi) rows covering each sign pattern at default bin edges
X_NUMERIC = np.array(
    [
        [30.0, 0.0, 72.0],
        [-30.0, 0.0, 108.0],
        [0.0, 30.0, 90.0],
        [0.0, -30.0, 90.0],
        [20.0, 20.0, 72.0],
        [-20.0, 20.0, 108.0],
        [20.0, -20.0, 72.0],
        [-20.0, -20.0, 108.0],
        [0.0, 0.0, 90.0],
    ]
)
Y_CLASSES = [
    MovementClass.PERP_RIGHT.value,
    MovementClass.PERP_LEFT.value,
    MovementClass.TOWARD_CAMERA.value,
    MovementClass.AWAY_FROM_CAMERA.value,
    MovementClass.OBLIQUE_RIGHT_WITH.value,
    MovementClass.OBLIQUE_LEFT_WITH.value,
    MovementClass.OBLIQUE_RIGHT_AGAINST.value,
    MovementClass.OBLIQUE_LEFT_AGAINST.value,
    MovementClass.STATIONARY.value,
]


def test_discretizer_then_tree_pipeline():
    model = SkPipeline(
        [("disc", FeatureDiscretizer()), ("tree", Id3Classifier(max_depth=3))]
    )
    model.fit(X_NUMERIC, Y_CLASSES)
    predicted = model.predict(X_NUMERIC)
    assert list(predicted) == Y_CLASSES

    # deadzone keeps small velocities in the stationary cell
    assert model.predict(np.array([[3.0, -4.0, 90.0]]))[0] == (
        MovementClass.STATIONARY.value
    )


def test_pipeline_clone_and_refit():
    model = SkPipeline(
        [("disc", FeatureDiscretizer()), ("tree", Id3Classifier())]
    )
    model.fit(X_NUMERIC, Y_CLASSES)
    fresh = clone(model)
    fresh.fit(X_NUMERIC, Y_CLASSES)
    assert list(fresh.predict(X_NUMERIC)) == list(model.predict(X_NUMERIC))


def test_discretizer_params_flow_through_pipeline():
    model = SkPipeline(
        [("disc", FeatureDiscretizer(speed_deadzone=25.0)), ("tree", Id3Classifier())]
    )
    model.fit(X_NUMERIC, Y_CLASSES)
    # deadzone of 25 swallows the 20 px/s oblique rows: they all discretize
    # as stationary, so prediction collapses to one label for those inputs
    oblique = X_NUMERIC[4:8]
    assert len(set(model.predict(oblique))) == 1


def test_classifier_score_on_perfect_fit():
    model = SkPipeline(
        [("disc", FeatureDiscretizer()), ("tree", Id3Classifier())]
    )
    model.fit(X_NUMERIC, Y_CLASSES)
    assert model.score(X_NUMERIC, Y_CLASSES) == pytest.approx(1.0)
