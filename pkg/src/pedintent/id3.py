"""ID3 decision-tree induction over categorical movement features.

The tree is grown greedily: at each node the attribute with the highest
information gain splits the samples, ties broken by the fixed attribute
order. Growth stops when a node is pure, the attributes are exhausted,
or the depth limit is reached; every internal node keeps a majority-vote
default child for attribute values unseen during training.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from .errors import EmptyDataset, MalformedTreeFile

ATTRIBUTES: tuple[str, ...] = ("vx_bin", "vy_bin", "phi_bin")

FORMAT_VERSION = 1

Sample = Mapping[str, str]


def entropy(labels: Sequence[str]) -> float:
    """Shannon entropy of a label multiset, in bits. Empty input is 0."""
    n = len(labels)
    if n == 0:
        return 0.0
    counts = Counter(labels)
    return -sum((c / n) * math.log2(c / n) for c in counts.values())


def conditional_entropy(
    samples: Sequence[Sample], labels: Sequence[str], attribute: str
) -> float:
    """Expected label entropy after partitioning on ``attribute``."""
    n = len(samples)
    if n == 0:
        return 0.0
    groups: dict[str, list[str]] = {}
    for sample, label in zip(samples, labels):
        groups.setdefault(sample[attribute], []).append(label)
    return sum(len(g) / n * entropy(g) for g in groups.values())


def information_gain(
    samples: Sequence[Sample], labels: Sequence[str], attribute: str
) -> float:
    return entropy(labels) - conditional_entropy(samples, labels, attribute)


@dataclass(frozen=True)
class Leaf:
    label: str
    support: int
    purity: float


@dataclass(frozen=True)
class Internal:
    attribute: str
    children: Mapping[str, "Node"]
    default: Leaf


Node = Union[Leaf, Internal]


def _majority_leaf(labels: Sequence[str]) -> Leaf:
    counts = Counter(labels)
    # most_common ties are insertion-ordered; sort for determinism
    label, count = max(sorted(counts.items()), key=lambda kv: kv[1])
    return Leaf(label=label, support=len(labels), purity=count / len(labels))


def grow_tree(
    samples: Sequence[Sample],
    labels: Sequence[str],
    attributes: Sequence[str] = ATTRIBUTES,
    max_depth: int = 3,
) -> Node:
    """Induce a tree from categorical samples.

    Raises:
        EmptyDataset: no samples were provided.
        ValueError: samples and labels disagree in length, or a sample
            is missing one of ``attributes``.
    """
    if len(samples) != len(labels):
        raise ValueError("samples and labels must have equal length")
    if not samples:
        raise EmptyDataset("cannot grow a tree from zero samples")
    for sample in samples:
        for attr in attributes:
            if attr not in sample:
                raise ValueError(f"sample missing attribute {attr!r}")
    return _grow(list(samples), list(labels), tuple(attributes), max_depth)


def _grow(
    samples: list[Sample],
    labels: list[str],
    attributes: tuple[str, ...],
    depth_left: int,
) -> Node:
    if len(set(labels)) == 1 or not attributes or depth_left <= 0:
        return _majority_leaf(labels)

    gains = [(information_gain(samples, labels, a), a) for a in attributes]
    best_gain = max(g for g, _ in gains)
    # first attribute in declaration order among the ties
    best_attr = next(a for g, a in gains if g == best_gain)
    if best_gain <= 0.0:
        return _majority_leaf(labels)

    remaining = tuple(a for a in attributes if a != best_attr)
    partitions: dict[str, tuple[list[Sample], list[str]]] = {}
    for sample, label in zip(samples, labels):
        bucket = partitions.setdefault(sample[best_attr], ([], []))
        bucket[0].append(sample)
        bucket[1].append(label)

    children = {
        value: _grow(part_s, part_l, remaining, depth_left - 1)
        for value, (part_s, part_l) in sorted(partitions.items())
    }
    return Internal(
        attribute=best_attr,
        children=children,
        default=_majority_leaf(labels),
    )


def classify(node: Node, sample: Sample) -> str:
    """Walk the tree; unseen attribute values fall back to the default."""
    while isinstance(node, Internal):
        child = node.children.get(sample[node.attribute])
        node = child if child is not None else node.default
    return node.label


def tree_depth(node: Node) -> int:
    if isinstance(node, Leaf):
        return 0
    return 1 + max(tree_depth(c) for c in node.children.values())


def _node_to_dict(node: Node) -> dict:
    if isinstance(node, Leaf):
        return {
            "type": "leaf",
            "label": node.label,
            "support": node.support,
            "purity": node.purity,
        }
    return {
        "type": "internal",
        "attribute": node.attribute,
        "children": {v: _node_to_dict(c) for v, c in node.children.items()},
        "default": _node_to_dict(node.default),
    }


def _node_from_dict(obj, path: str) -> Node:
    if not isinstance(obj, dict):
        raise MalformedTreeFile(f"node at {path} is not an object", position=path)
    kind = obj.get("type")
    if kind == "leaf":
        try:
            label = obj["label"]
            support = obj["support"]
            purity = obj["purity"]
        except KeyError as exc:
            raise MalformedTreeFile(
                f"leaf at {path} missing field {exc.args[0]!r}", position=path
            ) from exc
        if not isinstance(label, str) or not isinstance(support, int):
            raise MalformedTreeFile(f"leaf at {path} has wrong field types", position=path)
        if not isinstance(purity, (int, float)) or not 0.0 <= purity <= 1.0:
            raise MalformedTreeFile(f"leaf at {path} purity out of range", position=path)
        return Leaf(label=label, support=support, purity=float(purity))
    if kind == "internal":
        attribute = obj.get("attribute")
        if attribute not in ATTRIBUTES:
            raise MalformedTreeFile(
                f"internal node at {path} has unknown attribute {attribute!r}",
                position=path,
            )
        children = obj.get("children")
        if not isinstance(children, dict) or not children:
            raise MalformedTreeFile(
                f"internal node at {path} needs a non-empty children object",
                position=path,
            )
        default = obj.get("default")
        if default is None:
            raise MalformedTreeFile(
                f"internal node at {path} missing default child", position=path
            )
        default_node = _node_from_dict(default, f"{path}.default")
        if not isinstance(default_node, Leaf):
            raise MalformedTreeFile(
                f"default child at {path} must be a leaf", position=path
            )
        return Internal(
            attribute=attribute,
            children={
                v: _node_from_dict(c, f"{path}.children[{v}]")
                for v, c in children.items()
            },
            default=default_node,
        )
    raise MalformedTreeFile(f"node at {path} has unknown type {kind!r}", position=path)


def dump_tree(node: Node) -> str:
    """Serialize a tree to a JSON document string."""
    return json.dumps(
        {"format_version": FORMAT_VERSION, "tree": _node_to_dict(node)},
        indent=2,
        sort_keys=True,
    )


def load_tree(text: str) -> Node:
    """Parse a serialized tree.

    Raises:
        MalformedTreeFile: the text is not valid JSON, carries the wrong
            format version, or violates the node schema. The offending
            location is reported via ``position``.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedTreeFile(
            f"invalid JSON: {exc.msg}", position=f"char {exc.pos}"
        ) from exc
    if not isinstance(doc, dict):
        raise MalformedTreeFile("document root must be an object", position="$")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise MalformedTreeFile(
            f"unsupported format_version {version!r}", position="$.format_version"
        )
    if "tree" not in doc:
        raise MalformedTreeFile("missing tree field", position="$.tree")
    return _node_from_dict(doc["tree"], "$.tree")


def save_tree(node: Node, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_tree(node))
        fh.write("\n")


def read_tree(path) -> Node:
    with open(path, "r", encoding="utf-8") as fh:
        return load_tree(fh.read())


class Id3Classifier(ClassifierMixin, BaseEstimator):
    """Estimator facade over the functional tree inducer.

    ``X`` is an (n_samples, 3) array of bin names ordered as
    ``(vx_bin, vy_bin, phi_bin)``; ``y`` is a vector of class names.
    """

    def __init__(self, max_depth: int = 3):
        self.max_depth = max_depth

    @staticmethod
    def _to_samples(X) -> list[dict[str, str]]:
        X = np.asarray(X, dtype=object)
        if X.ndim != 2 or X.shape[1] != len(ATTRIBUTES):
            raise ValueError(
                f"expected an array of shape (n_samples, {len(ATTRIBUTES)})"
            )
        return [dict(zip(ATTRIBUTES, map(str, row))) for row in X]

    def fit(self, X, y):
        samples = self._to_samples(X)
        y = np.asarray(y, dtype=object)
        if y.ndim != 1 or len(y) != len(samples):
            raise ValueError("y must be one label per sample")
        labels = [str(v) for v in y]
        self.tree_ = grow_tree(samples, labels, max_depth=self.max_depth)
        self.classes_ = np.array(sorted(set(labels)), dtype=object)
        self.n_features_in_ = len(ATTRIBUTES)
        return self

    def predict(self, X) -> np.ndarray:
        if not hasattr(self, "tree_"):
            raise ValueError("classifier is not fitted; call fit first")
        samples = self._to_samples(X)
        return np.array([classify(self.tree_, s) for s in samples], dtype=object)
