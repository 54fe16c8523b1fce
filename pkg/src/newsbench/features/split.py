"""Seeded train/test splitting and minority-class upsampling."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from newsbench.errors import InputError


@dataclass
class SplitSpec:
    train_fraction: float = 0.8
    seed: int = 0
    stratified: bool = True

    def __post_init__(self):
        if not (0.0 < self.train_fraction < 1.0):
            raise InputError(f"train_fraction must be in (0, 1), got {self.train_fraction}")


def split(labels: Sequence[int], spec: SplitSpec) -> tuple[list[int], list[int]]:
    """Partition row indices 0..n-1 into (train, test), both sorted.

    Train size is round(train_fraction * n). Stratified splits keep per-class
    proportions within one item, allocating by largest remainder.
    """
    n = len(labels)
    if n < 5:
        raise InputError(f"need at least 5 rows to split, got {n}")
    rng = random.Random(spec.seed)
    target_train = round(spec.train_fraction * n)

    if not spec.stratified:
        order = list(range(n))
        rng.shuffle(order)
        train = sorted(order[:target_train])
        test = sorted(order[target_train:])
        return train, test

    by_class: dict[int, list[int]] = {}
    for i, label in enumerate(labels):
        by_class.setdefault(label, []).append(i)
    for label, members in sorted(by_class.items()):
        if len(members) < 2:
            raise InputError(f"class {label} has {len(members)} member(s); stratified split needs >= 2")

    # per-class train counts by largest remainder, summing exactly to target_train
    classes = sorted(by_class)
    ideal = {c: spec.train_fraction * len(by_class[c]) for c in classes}
    counts = {c: min(math.floor(ideal[c]), len(by_class[c])) for c in classes}
    leftover = target_train - sum(counts.values())
    by_remainder = sorted(classes, key=lambda c: (-(ideal[c] - math.floor(ideal[c])), c))
    while leftover > 0:
        progressed = False
        for c in by_remainder:
            if leftover == 0:
                break
            if counts[c] < len(by_class[c]):
                counts[c] += 1
                leftover -= 1
                progressed = True
        if not progressed:
            raise InputError("cannot reach the requested train size")
    while leftover < 0:
        for c in reversed(by_remainder):
            if leftover == 0:
                break
            if counts[c] > 0:
                counts[c] -= 1
                leftover += 1

    train: list[int] = []
    test: list[int] = []
    for c in classes:
        members = list(by_class[c])
        rng.shuffle(members)
        train.extend(members[: counts[c]])
        test.extend(members[counts[c] :])
    return sorted(train), sorted(test)


def upsample(train_indices: Sequence[int], labels: Sequence[int], seed: int) -> list[int]:
    """Append resampled minority rows until both classes have equal counts.

    Majority rows are untouched; the distinct-row set never changes. An
    already balanced input is returned unchanged.
    """
    by_class: dict[int, list[int]] = {0: [], 1: []}
    for i in train_indices:
        label = labels[i]
        if label not in (0, 1):
            raise InputError(f"label at row {i} must be 0 or 1, got {label!r}")
        by_class[label].append(i)
    if not by_class[0] or not by_class[1]:
        raise InputError("both classes must be present in the training split")

    n0, n1 = len(by_class[0]), len(by_class[1])
    if n0 == n1:
        return list(train_indices)
    minority = 0 if n0 < n1 else 1
    deficit = abs(n0 - n1)
    rng = random.Random(seed)
    additions = [rng.choice(by_class[minority]) for _ in range(deficit)]
    return list(train_indices) + additions
