"""Domain types: alphabets, samples, histograms, weights, and the pairing form.

Everything here is immutable and pure. Rational mode keeps exact
``fractions.Fraction`` values; float mode keeps IEEE doubles and tolerates
``FLOAT_EPS`` of slack in every normalization and comparison check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Sequence, Union

from .errors import AlphabetMismatch, EmptySet, UnknownSymbol, ValidationError

ArithmeticMode = Literal["rational", "float"]
ProblemMode = Literal["supporting", "covering"]
Number = Union[int, Fraction, float]

RATIONAL: ArithmeticMode = "rational"
FLOAT: ArithmeticMode = "float"
SUPPORTING: ProblemMode = "supporting"
COVERING: ProblemMode = "covering"

#: Absolute tolerance for all float-mode normalization and comparison checks.
FLOAT_EPS = 1e-9


def _as_tuple(values) -> tuple:
    return values if isinstance(values, tuple) else tuple(values)


def require_problem_mode(problem: str) -> None:
    if problem not in (SUPPORTING, COVERING):
        raise ValidationError(f"unknown problem mode {problem!r}")


def require_arithmetic(arithmetic: str) -> None:
    if arithmetic not in (RATIONAL, FLOAT):
        raise ValidationError(f"unknown arithmetic mode {arithmetic!r}")


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of distinct value labels.

    The construction order is canonical: histograms and weights index and
    serialize in this order everywhere.
    """

    symbols: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", _as_tuple(self.symbols))
        if not self.symbols:
            raise ValidationError("alphabet must be nonempty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValidationError("alphabet labels must be distinct")

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, label: str) -> bool:
        return label in self.symbols

    def index(self, label: str) -> int:
        try:
            return self.symbols.index(label)
        except ValueError:
            raise UnknownSymbol(label) from None

    def position_map(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.symbols)}


@dataclass(frozen=True)
class Sample:
    """A finite sequence of labels; positions are reported 1-based."""

    entries: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", _as_tuple(self.entries))
        if not self.entries:
            raise ValidationError("sample must contain at least one entry")

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Histogram:
    """Per-symbol occurrence counts of one sample.

    The counts always sum to the originating sample length.
    """

    alphabet: Alphabet
    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", _as_tuple(self.counts))
        if len(self.counts) != len(self.alphabet):
            raise ValidationError(
                f"histogram has {len(self.counts)} counts for {len(self.alphabet)} symbols"
            )
        for c in self.counts:
            if not isinstance(c, int) or c < 0:
                raise ValidationError(f"histogram counts must be nonnegative integers, got {c!r}")
        if sum(self.counts) < 1:
            raise ValidationError("histogram total must be at least 1")

    @property
    def total(self) -> int:
        return sum(self.counts)

    def count(self, label: str) -> int:
        return self.counts[self.alphabet.index(label)]


@dataclass(frozen=True)
class HistogramSet:
    """A nonempty family of equal-length histograms over one alphabet."""

    alphabet: Alphabet
    sample_length: int
    members: tuple[Histogram, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", _as_tuple(self.members))
        if not self.members:
            raise EmptySet("histogram set has no members")
        if self.sample_length < 1:
            raise ValidationError("sample length must be at least 1")
        for i, member in enumerate(self.members):
            if member.alphabet != self.alphabet:
                raise AlphabetMismatch(f"member {i} is defined on a different alphabet")
            if member.total != self.sample_length:
                raise ValidationError(
                    f"member {i} sums to {member.total}, expected {self.sample_length}"
                )

    @classmethod
    def from_counts(
        cls,
        alphabet: Alphabet,
        rows: Iterable[Sequence[int]],
        sample_length: int | None = None,
    ) -> "HistogramSet":
        members = tuple(Histogram(alphabet, tuple(row)) for row in rows)
        if not members:
            raise EmptySet("histogram set has no members")
        if sample_length is None:
            sample_length = members[0].total
        return cls(alphabet, sample_length, members)

    def count_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(m.counts for m in self.members)


def distinct_rows(rows: Sequence[Sequence]) -> tuple[tuple[tuple, ...], tuple[int, ...]]:
    """Collapse duplicate rows, keeping first-occurrence order.

    Returns ``(unique, origins)`` where ``origins[u]`` is the index of the
    first original row equal to ``unique[u]``.
    """
    seen: dict[tuple, int] = {}
    unique: list[tuple] = []
    origins: list[int] = []
    for i, row in enumerate(rows):
        key = tuple(row)
        if key not in seen:
            seen[key] = len(unique)
            unique.append(key)
            origins.append(i)
    return tuple(unique), tuple(origins)


@dataclass(frozen=True)
class Weight:
    """A probability vector over an alphabet.

    Rational mode stores exact fractions summing to one; float mode stores
    doubles with components above ``-FLOAT_EPS`` and total within
    ``FLOAT_EPS`` of one.
    """

    alphabet: Alphabet
    values: tuple[Number, ...]
    mode: ArithmeticMode = RATIONAL

    def __post_init__(self):
        require_arithmetic(self.mode)
        values = tuple(self.values)
        if len(values) != len(self.alphabet):
            raise ValidationError(
                f"weight has {len(values)} components for {len(self.alphabet)} symbols"
            )
        if self.mode == RATIONAL:
            values = tuple(Fraction(v) for v in values)
            if any(v < 0 for v in values):
                raise ValidationError("weight components must be nonnegative")
            if sum(values) != 1:
                raise ValidationError(f"weight components sum to {sum(values)}, expected 1")
        else:
            values = tuple(float(v) for v in values)
            if any(v < -FLOAT_EPS for v in values):
                raise ValidationError("weight components must be nonnegative")
            if abs(sum(values) - 1.0) > FLOAT_EPS:
                raise ValidationError(f"weight components sum to {sum(values)}, expected 1")
        object.__setattr__(self, "values", values)

    @classmethod
    def uniform(cls, alphabet: Alphabet, mode: ArithmeticMode = RATIONAL) -> "Weight":
        n = len(alphabet)
        if mode == RATIONAL:
            return cls(alphabet, (Fraction(1, n),) * n, mode)
        return cls(alphabet, (1.0 / n,) * n, mode)

    @classmethod
    def point_mass(cls, alphabet: Alphabet, position: int, mode: ArithmeticMode = RATIONAL) -> "Weight":
        one, zero = (Fraction(1), Fraction(0)) if mode == RATIONAL else (1.0, 0.0)
        values = [zero] * len(alphabet)
        values[position] = one
        return cls(alphabet, tuple(values), mode)

    def value(self, label: str) -> Number:
        return self.values[self.alphabet.index(label)]


def _vector_over_alphabet(obj) -> tuple[tuple, Alphabet | None]:
    if isinstance(obj, Weight):
        return obj.values, obj.alphabet
    if isinstance(obj, Histogram):
        return obj.counts, obj.alphabet
    return tuple(obj), None


def pairing(x, m) -> Number:
    """Componentwise inner product of two functions on a shared alphabet.

    Accepts ``Weight``, ``Histogram``, or any plain number sequence; the
    result is exact whenever both sides are exact.
    """
    xv, xa = _vector_over_alphabet(x)
    mv, ma = _vector_over_alphabet(m)
    if xa is not None and ma is not None and xa != ma:
        raise AlphabetMismatch("pairing arguments use different alphabets")
    if len(xv) != len(mv):
        raise AlphabetMismatch(f"pairing arguments have lengths {len(xv)} and {len(mv)}")
    return sum(a * b for a, b in zip(xv, mv))


def _require_same_alphabet(a: Alphabet, b: Alphabet) -> None:
    if a != b:
        raise AlphabetMismatch("histogram and weight use different alphabets")


def relevance_score(histogram: Histogram, supporting_weight: Weight) -> Number:
    """Pairing of a test histogram with the supporting weight; higher means
    the sample sits closer to the set."""
    _require_same_alphabet(histogram.alphabet, supporting_weight.alphabet)
    return pairing(supporting_weight, histogram)


def irrelevance_score(histogram: Histogram, covering_weight: Weight) -> Number:
    """Pairing of a test histogram with the covering weight; lower means the
    sample sits closer to the set."""
    _require_same_alphabet(histogram.alphabet, covering_weight.alphabet)
    return pairing(covering_weight, histogram)


def build_histogram(sample: Sample, alphabet: Alphabet) -> Histogram:
    """Count the sample's entries per alphabet symbol.

    Raises ``UnknownSymbol`` with the 1-based position of the first entry
    outside the alphabet.
    """
    positions = alphabet.position_map()
    counts = [0] * len(alphabet)
    for pos, label in enumerate(sample.entries, start=1):
        j = positions.get(label)
        if j is None:
            raise UnknownSymbol(label, position=pos)
        counts[j] += 1
    return Histogram(alphabet, tuple(counts))
