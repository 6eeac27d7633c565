import logging
from typing import Dict, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from core_model.instance_schema import Instance
from .mandatory import diverse_subset

logger = logging.getLogger(__name__)


class ClusterAssignment(BaseModel):
    model_config = ConfigDict(frozen=True)

    labels: Dict[int, int]
    centroids: List[Tuple[float, float]]
    iterations: int

    @property
    def count(self) -> int:
        return len(self.centroids)

    def members(self, cluster: int) -> List[int]:
        return sorted(k for k, c in self.labels.items() if c == cluster)


def kmeans(points: np.ndarray, count: int, max_iterations: int) -> Tuple[np.ndarray, np.ndarray, int]:
    """
    Lloyd iterations seeded with the scattered (max-diversity) choice of
    `count` points. An empty cluster takes the point farthest from its own
    centroid, provided that distance is positive; otherwise it stays empty.
    Returns (labels, centroids, iterations).
    """
    points = np.asarray(points, dtype=float)
    size = len(points)
    count = min(count, size)
    diff = points[:, None, :] - points[None, :, :]
    pairwise = np.sqrt((diff ** 2).sum(axis=2))
    seeds = diverse_subset(pairwise, range(size), count, maximize=True)
    centroids = points[seeds].copy()

    labels = np.full(size, -1)
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        dist = np.sqrt(((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2))
        new_labels = np.argmin(dist, axis=1)
        own = dist[np.arange(size), new_labels]
        for c in range(count):
            if np.any(new_labels == c):
                continue
            far = int(np.argmax(own))
            if own[far] > 0:
                new_labels[far] = c
                own[far] = 0.0
        for c in range(count):
            mask = new_labels == c
            if np.any(mask):
                centroids[c] = points[mask].mean(axis=0)
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
    return labels, centroids, iterations


def cluster_customers(instance: Instance, count: int, max_iterations: int) -> ClusterAssignment:
    customers = instance.customers
    if instance.coordinates is None:
        raise ValueError("clustering needs node coordinates")
    points = np.asarray([instance.coordinates[k - 1] for k in customers], dtype=float)
    labels, centroids, iterations = kmeans(points, count, max_iterations)
    logger.debug(f"k-means converged after {iterations} iterations")
    return ClusterAssignment(
        labels={k: int(labels[pos]) for pos, k in enumerate(customers)},
        centroids=[(float(x), float(y)) for x, y in centroids],
        iterations=iterations,
    )


def draw_cluster_incompatibility(count: int, probability: float, rng: np.random.Generator) -> np.ndarray:
    """Symmetric boolean matrix; distinct clusters conflict with the given probability."""
    conflict = np.zeros((count, count), dtype=bool)
    for a in range(count):
        for b in range(a + 1, count):
            conflict[a, b] = conflict[b, a] = bool(rng.random() < probability)
    return conflict
