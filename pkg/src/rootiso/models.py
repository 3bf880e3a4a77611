"""Random integer-polynomial ensembles with deterministic sampling.

Five coefficient distributions are supported: uniform over
[-2^tau, 2^tau], uniform restricted to a support set, fixed coefficient
signs, exact coefficient bitsize, and a smoothed ensemble (a fixed
polynomial plus sigma times a random one).  Each carries its bitsize
bound tau and a uniformity value u = ln(w (1 + 2^(tau+1))), where w is
the largest point mass among the coefficients of 1, X, X^(d-1), X^d;
u = 0 is the plain uniform ensemble.

Sampling is counter-based: every coefficient is a pure function of
(seed, trial index, coefficient position), so trials can be drawn in any
order, on any number of workers, with bit-identical results.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

from .polynomial import IntPolynomial, int_bitsize


class _CoefficientStream:
    """Deterministic bit source keyed by (seed, index, position)."""

    def __init__(self, seed: int, index: int, position: int):
        self._prefix = f"{seed}:{index}:{position}:".encode()
        self._counter = 0
        self._pool = 0
        self._pool_bits = 0

    def take_bits(self, k: int) -> int:
        while self._pool_bits < k:
            block = hashlib.sha256(self._prefix + str(self._counter).encode()).digest()
            self._counter += 1
            self._pool = (self._pool << 256) | int.from_bytes(block, "big")
            self._pool_bits += 256
        value = self._pool & ((1 << k) - 1)
        self._pool >>= k
        self._pool_bits -= k
        return value

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection (no modulo bias)."""
        k = (bound - 1).bit_length()
        while True:
            v = self.take_bits(k)
            if v < bound:
                return v


@dataclass(frozen=True)
class RandomModel:
    """A coefficient distribution for degree-d integer polynomials.

    Use the factory functions below; they validate the per-kind fields.
    """

    kind: str  # uniform | support | signs | exactbits | smoothed
    degree: int
    bitsize: int
    support: frozenset | None = None
    signs: tuple | None = None
    base: "RandomModel | None" = None
    shift: IntPolynomial | None = None
    sigma: int = 0

    # -- sampling -----------------------------------------------------------

    def sample(self, seed: int, index: int) -> IntPolynomial:
        """Draw one polynomial; a pure function of (seed, index)."""
        if self.kind == "smoothed":
            noise = self.base.sample(seed, index)
            return self.shift + noise.scale(self.sigma)
        coeffs = [self._draw(seed, index, i) for i in range(self.degree + 1)]
        return IntPolynomial(coeffs)

    def _draw(self, seed: int, index: int, position: int) -> int:
        tau = self.bitsize
        if self.kind == "support" and position not in self.support:
            return 0
        stream = _CoefficientStream(seed, index, position)
        if self.kind in ("uniform", "support"):
            return stream.below((1 << (tau + 1)) + 1) - (1 << tau)
        if self.kind == "signs":
            return self.signs[position] * (stream.take_bits(tau) + 1)
        if self.kind == "exactbits":
            sign = 1 if stream.take_bits(1) else -1
            magnitude = (1 << (tau - 1)) + stream.take_bits(tau - 1)
            return sign * magnitude
        raise ValueError(f"unknown model kind {self.kind!r}")

    # -- ensemble parameters ---------------------------------------------------

    def tau_bound(self) -> int:
        """Smallest tau with every |coefficient| <= 2^tau, surely."""
        if self.kind == "smoothed":
            tau_shift = self.shift.bitsize_tau() if not self.shift.is_zero else 0
            tau_sigma = int_bitsize(self.sigma)
            return max(tau_shift, self.base.tau_bound() + tau_sigma) + 1
        return self.bitsize

    def uniformity(self) -> float:
        """u = ln(w (1 + 2^(tau+1))); 0 exactly for the uniform ensembles."""
        tau = self.bitsize
        if self.kind in ("uniform", "support"):
            return 0.0
        if self.kind in ("signs", "exactbits"):
            # w = 2^-tau over 2^tau equiprobable values, so
            # u = ln((1 + 2^(tau+1)) / 2^tau) = ln(2 + 2^-tau) <= ln 3
            return math.log(2.0 + 2.0**-tau)
        if self.kind == "smoothed":
            tau_shift = self.shift.bitsize_tau() if not self.shift.is_zero else 0
            tau_sigma = int_bitsize(self.sigma)
            return 1.0 + max(tau_shift - self.base.tau_bound(), tau_sigma) + self.base.uniformity()
        raise ValueError(f"unknown model kind {self.kind!r}")

    @property
    def uniformity_is_bound(self) -> bool:
        """True when ``uniformity`` reports an upper bound, not the exact
        value (the smoothed ensemble's point masses depend on the base)."""
        return self.kind == "smoothed"

    def describe(self) -> str:
        if self.kind == "support":
            sup = ",".join(str(i) for i in sorted(self.support))
            return f"support(d={self.degree},tau={self.bitsize},A={{{sup}}})"
        if self.kind == "signs":
            pattern = "".join("+" if s > 0 else "-" for s in self.signs)
            return f"signs(d={self.degree},tau={self.bitsize},s={pattern})"
        if self.kind == "smoothed":
            return f"smoothed(sigma={self.sigma},base={self.base.describe()})"
        return f"{self.kind}(d={self.degree},tau={self.bitsize})"


def uniform_model(degree: int, bitsize: int) -> RandomModel:
    """Coefficients independent and uniform over [-2^tau, 2^tau]."""
    _check_degree_bitsize(degree, bitsize)
    return RandomModel(kind="uniform", degree=degree, bitsize=bitsize)


def support_model(degree: int, bitsize: int, support) -> RandomModel:
    """Uniform coefficients on the support set, zero elsewhere.

    The support must contain 0, 1, d-1 and d (the positions whose
    distributions control the ensemble's uniformity)."""
    _check_degree_bitsize(degree, bitsize)
    sup = frozenset(int(i) for i in support)
    required = {0, 1, degree - 1, degree}
    if not required <= sup:
        raise ValueError(f"support must contain {sorted(required)}")
    if not all(0 <= i <= degree for i in sup):
        raise ValueError("support indices must lie in [0, degree]")
    return RandomModel(kind="support", degree=degree, bitsize=bitsize, support=sup)


def signs_model(degree: int, bitsize: int, signs) -> RandomModel:
    """Coefficient i uniform over s_i * {1, ..., 2^tau}; never zero."""
    _check_degree_bitsize(degree, bitsize)
    sv = tuple(int(s) for s in signs)
    if len(sv) != degree + 1 or any(s not in (-1, 1) for s in sv):
        raise ValueError("signs must be a vector of +-1 of length degree + 1")
    return RandomModel(kind="signs", degree=degree, bitsize=bitsize, signs=sv)


def exact_bitsize_model(degree: int, bitsize: int) -> RandomModel:
    """Coefficients uniform over the integers of exact bitsize tau,
    i.e. [-2^tau + 1, -2^(tau-1)] union [2^(tau-1), 2^tau - 1]."""
    _check_degree_bitsize(degree, bitsize)
    return RandomModel(kind="exactbits", degree=degree, bitsize=bitsize)


def smoothed_model(shift: IntPolynomial, sigma: int, base: RandomModel) -> RandomModel:
    """The fixed polynomial plus sigma times a draw from the base model."""
    if sigma == 0:
        raise ValueError("sigma must be a nonzero integer")
    if shift.degree > base.degree:
        raise ValueError("fixed polynomial degree exceeds the base model degree")
    return RandomModel(
        kind="smoothed",
        degree=base.degree,
        bitsize=base.bitsize,
        base=base,
        shift=shift,
        sigma=int(sigma),
    )


def _check_degree_bitsize(degree: int, bitsize: int) -> None:
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if bitsize < 1:
        raise ValueError("bitsize must be >= 1")
