"""
Seeded random matrices and gauges with controlled conditioning.

Singular values / eigenvalues are drawn from [0.5, 2], so every block has
condition number at most 4.
"""

from typing import Literal

import numpy as np
from scipy import linalg

from .gauge import Gauge, NatIso, compose_gauges, coboundary_gauge
from .ring import FusionRing

GaugeKind = Literal["unitary", "positive", "general"]

SPECTRUM = (0.5, 2.0)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_positive(n: int, rng: np.random.Generator) -> np.ndarray:
    u = random_unitary(n, rng)
    spectrum = rng.uniform(*SPECTRUM, size=n)
    p = (u * spectrum) @ u.conj().T
    return (p + p.conj().T) / 2


def random_invertible(n: int, rng: np.random.Generator) -> np.ndarray:
    return (random_unitary(n, rng) * rng.uniform(*SPECTRUM, size=n)) @ random_unitary(n, rng)


_SAMPLERS = {
    "unitary": random_unitary,
    "positive": random_positive,
    "general": random_invertible,
}


def random_gauge(ring: FusionRing, rng: np.random.Generator, kind: GaugeKind = "general") -> Gauge:
    """Random gauge with identity blocks on every unit-touching vertex."""
    sample = _SAMPLERS[kind]
    blocks = {}
    for a, b, c in ring.vertices():
        n = int(ring.N[a, b, c])
        blocks[(a, b, c)] = np.eye(n) if a == 0 or b == 0 else sample(n, rng)
    return Gauge(ring=ring, blocks=blocks)


def random_positive_nat_iso(ring: FusionRing, rng: np.random.Generator) -> NatIso:
    """Positive scalars in [0.5, 2] with the unit component fixed to 1."""
    components = rng.uniform(*SPECTRUM, size=ring.rank)
    components[0] = 1.0
    return NatIso(ring=ring, components=components)


def coboundary_twisted_gauge(ring: FusionRing, rng: np.random.Generator) -> Gauge:
    """
    A positive coboundary composed with a random unitary gauge.

    Gauging a unitary F-symbol set by it gives another unitary presentation,
    while the tensorator itself is neither unitary nor positive.
    """
    positive = coboundary_gauge(random_positive_nat_iso(ring, rng))
    return compose_gauges(positive, random_gauge(ring, rng, "unitary"))
