"""Free-group words and hyperbolic length spectra of once-holed tori.

Words in the rank-two free group on the handle generators are strings
over u, U, v, V, a capital letter denoting the inverse of its lowercase
partner.  Conjugacy classes (simple or not) get a canonical
representative: cyclically reduced and minimal, in the letter order
u < U < v < V, over all rotations of the word and of its inverse.

A Fenchel-Nielsen point (l, lp, theta) is realized by a pair of
unit-determinant matrices

    A = [[exp(l/2), 0], [0, exp(-l/2)]],
    B = T_theta * B0,   T_theta = [[exp(theta/2), 0], [0, exp(-theta/2)]],
    B0 = [[cosh(m/2), sinh(m/2)], [sinh(m/2), cosh(m/2)]],

with m >= 0 chosen so the commutator A B A^-1 B^-1 has trace
-2 cosh(lp/2).  Writing x = tr A and y = tr B0, the required value is
y^2 = 2 (cosh l + cosh(lp/2)) / sinh(l/2)^2, always >= 4, so the chart is
realized for every l > 0, lp >= 0.  The geodesic length of a class of
trace t is 2 arccosh(|t|/2); traces in [2 - tol, 2 + tol] count as
parabolic (length zero) and traces below that window are reported as an
elliptic anomaly, which a faithful discrete realization never produces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .charts import FNChartPoint

__all__ = [
    "EllipticTraceError",
    "Representation",
    "SpectrumEntry",
    "canonical_class",
    "enumerate_classes",
    "fn_to_rep",
    "geodesic_length",
    "inverse_word",
    "length_spectrum",
    "reduce_word",
    "twist_substitute",
    "word_trace",
]

#: Letter order used for canonical representatives.
LETTERS = "uUvV"

_RANK = {ch: k for k, ch in enumerate(LETTERS)}
_INVERSE = str.maketrans("uUvV", "UuVv")
_TWIST = {"u": "u", "U": "U", "v": "vu", "V": "UV"}

#: Largest class length enumerate_classes accepts by default; the number
#: of reduced strings grows like 3^n.
MAX_CLASS_LENGTH = 10

#: Half-width of the trace window around 2 treated as parabolic.
TRACE_TOL = 1e-9


class EllipticTraceError(RuntimeError):
    """A word trace fell strictly inside (-2, 2): no geodesic exists."""

    def __init__(self, word: str, trace: float):
        super().__init__(f"elliptic trace {trace!r} for word {word!r}")
        self.word = word
        self.trace = trace


def _check_letters(word: str):
    for ch in word:
        if ch not in _RANK:
            raise ValueError(f"invalid letter {ch!r}; words use u, U, v, V")


def reduce_word(word: str) -> str:
    """Cancel adjacent inverse pairs until none remain."""
    _check_letters(word)
    out: list[str] = []
    for ch in word:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def inverse_word(word: str) -> str:
    _check_letters(word)
    return word[::-1].translate(_INVERSE)


def _rank_key(word: str) -> tuple[int, ...]:
    return tuple(_RANK[ch] for ch in word)


def canonical_class(word: str) -> str:
    """Canonical representative of the conjugacy class of word.

    The representative is cyclically reduced and minimal over all
    rotations of the word and of its inverse, comparing letterwise in the
    order u < U < v < V.  The trivial class is rejected.
    """
    w = reduce_word(word)
    while len(w) >= 2 and w[0] == w[-1].swapcase():
        w = w[1:-1]
    if not w:
        raise ValueError("the trivial class has no canonical representative")
    doubled = w + w
    candidates = [doubled[k : k + len(w)] for k in range(len(w))]
    wi = inverse_word(w)
    doubled = wi + wi
    candidates += [doubled[k : k + len(w)] for k in range(len(w))]
    return min(candidates, key=_rank_key)


def enumerate_classes(max_len: int, cap: int = MAX_CLASS_LENGTH) -> list[str]:
    """All conjugacy classes of cyclically reduced length <= max_len.

    Classes are returned as canonical representatives sorted by length,
    then letterwise.  max_len beyond cap is refused: the search walks
    every cyclically reduced string of each length.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    if max_len > cap:
        raise ValueError(
            f"max_len {max_len} exceeds the cap {cap}; "
            "raise cap explicitly if the 3^n walk is intended"
        )
    found: set[str] = set()
    for n in range(1, max_len + 1):
        _walk_cyclically_reduced("", n, found)
    return sorted(found, key=lambda w: (len(w), _rank_key(w)))


def _walk_cyclically_reduced(prefix: str, n: int, found: set[str]):
    if len(prefix) == n:
        found.add(canonical_class(prefix))
        return
    for ch in LETTERS:
        if prefix and prefix[-1] == ch.swapcase():
            continue
        if len(prefix) == n - 1 and prefix and ch == prefix[0].swapcase():
            continue
        _walk_cyclically_reduced(prefix + ch, n, found)


def twist_substitute(word: str) -> str:
    """Image of a word under the Dehn twist u -> u, v -> v u, reduced."""
    _check_letters(word)
    return reduce_word("".join(_TWIST[ch] for ch in word))


class SpectrumEntry(NamedTuple):
    word: str
    trace: float
    length: float


@dataclass(frozen=True)
class Representation:
    """Matrix pair realizing a Fenchel-Nielsen point.

    Invariants: det A = det B = 1, tr A = 2 cosh(l/2), and the commutator
    trace is -2 cosh(lp/2) (so always <= -2).
    """

    A: np.ndarray
    B: np.ndarray
    source: FNChartPoint

    @cached_property
    def _letter_matrices(self) -> dict[str, tuple[float, float, float, float]]:
        a = tuple(np.asarray(self.A, dtype=float).ravel())
        b = tuple(np.asarray(self.B, dtype=float).ravel())
        return {
            "u": a,
            "v": b,
            # adjugate inverse: determinants are exactly 1
            "U": (a[3], -a[1], -a[2], a[0]),
            "V": (b[3], -b[1], -b[2], b[0]),
        }


def fn_to_rep(point: FNChartPoint) -> Representation:
    """Realize a Fenchel-Nielsen point as a matrix pair."""
    l, lp, theta = point.l, point.lp, point.theta
    if not (l > 0.0 and math.isfinite(l)):
        raise ValueError("l must be positive and finite")
    if not (lp >= 0.0 and math.isfinite(lp)):
        raise ValueError("lp must be nonnegative and finite")
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    y2 = 2.0 * (math.cosh(l) + math.cosh(lp / 2.0)) / math.sinh(l / 2.0) ** 2
    c = math.sqrt(y2) / 2.0  # cosh(m/2)
    s = math.sqrt(y2 / 4.0 - 1.0)  # sinh(m/2)
    el = math.exp(l / 2.0)
    et = math.exp(theta / 2.0)
    A = np.array([[el, 0.0], [0.0, 1.0 / el]])
    B = np.array([[et * c, et * s], [s / et, c / et]])
    return Representation(A=A, B=B, source=point)


def _product_trace(rep: Representation, word: str) -> float:
    mats = rep._letter_matrices
    a, b, c, d = mats[word[0]]
    for ch in word[1:]:
        e, f, g, h = mats[ch]
        a, b, c, d = (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    return a + d


def word_trace(rep: Representation, word: str, tol: float = TRACE_TOL) -> float:
    """Trace of the matrix product spelled by the (reduced) word.

    Rejects the trivial word, and reports an elliptic anomaly if the
    trace lands strictly inside the interval (-(2 - tol), 2 - tol).
    """
    w = reduce_word(word)
    if not w:
        raise ValueError("the trivial word has no geodesic class")
    trace = _product_trace(rep, w)
    if abs(trace) < 2.0 - tol:
        raise EllipticTraceError(w, trace)
    return trace


def geodesic_length(rep: Representation, word: str, tol: float = TRACE_TOL) -> float:
    """Geodesic length 2 arccosh(|trace|/2) of the class of word.

    Traces within tol of +/-2 give length 0 (parabolic window).
    """
    t = abs(word_trace(rep, word, tol))
    if t <= 2.0 + tol:
        return 0.0
    return 2.0 * math.acosh(t / 2.0)


def length_spectrum(
    rep: Representation, max_len: int, cap: int = MAX_CLASS_LENGTH
) -> list[SpectrumEntry]:
    """Spectrum over all classes of length <= max_len.

    Entries are sorted by geodesic length, ties broken by word order, so
    the output is deterministic.
    """
    entries = []
    for w in enumerate_classes(max_len, cap):
        trace = word_trace(rep, w)
        t = abs(trace)
        length = 0.0 if t <= 2.0 + TRACE_TOL else 2.0 * math.acosh(t / 2.0)
        entries.append(SpectrumEntry(word=w, trace=trace, length=length))
    entries.sort(key=lambda e: (e.length, _rank_key(e.word)))
    return entries
