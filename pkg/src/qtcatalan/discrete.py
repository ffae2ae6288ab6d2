"""m-Dyck paths and their integer statistics.

An m-Dyck path of height n runs from (0,0) to (m*n, n) in unit north/east
steps and never goes strictly below the line y = x/m.  Paths are represented
canonically by their area vector (a_0, ..., a_{n-1}), where a_i counts the
complete lattice boxes between the path and the diagonal in row i.  The
north step in row i then sits at x-coordinate i*m - a_i, which is how the
lattice picture is reconstructed whenever a simulation needs it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

__all__ = [
    "MDyckPath",
    "BouncePathM",
    "BudgetExceededError",
    "InvalidPathError",
    "catalan_number_m",
    "enumerate_m_dyck",
    "area_m",
    "sc_m",
    "dinv_m",
    "bounce_path_m",
    "bounce_m",
    "phi_m",
]


class InvalidPathError(ValueError):
    """Raised when an area vector violates the m-Dyck path constraints."""


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration would exceed the caller's path budget."""


@dataclass(frozen=True)
class MDyckPath:
    """An m-Dyck path of height n, encoded by its integer area vector."""

    n: int
    m: int
    area_vector: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "area_vector", tuple(self.area_vector))
        _validate_area_vector(self.n, self.m, self.area_vector)

    def north_step_columns(self) -> tuple[int, ...]:
        """x-coordinates of the north steps, row by row."""
        return tuple(self.m * i - a for i, a in enumerate(self.area_vector))


@dataclass(frozen=True)
class BouncePathM:
    """Vertical/horizontal run lengths of the bounce path of an m-Dyck path."""

    v: tuple[int, ...]
    h: tuple[int, ...]


def _validate_area_vector(n: int, m: int, av: Sequence[int]) -> None:
    if n < 1 or m < 1:
        raise InvalidPathError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    if len(av) != n:
        raise InvalidPathError(f"area vector has length {len(av)}, expected {n}")
    if av[0] != 0:
        raise InvalidPathError(f"a_0 = {av[0]}, must be 0")
    for i in range(n - 1):
        if not 0 <= av[i + 1] <= av[i] + m:
            raise InvalidPathError(
                f"0 <= a_{i + 1} <= a_{i} + m violated: a_{i + 1} = {av[i + 1]}, "
                f"a_{i} = {av[i]}, m = {m}"
            )


def catalan_number_m(n: int, m: int) -> int:
    """Higher Catalan number binom((m+1)n, n) / (mn + 1), exactly."""
    num = math.comb((m + 1) * n, n)
    q, r = divmod(num, m * n + 1)
    assert r == 0, "higher Catalan formula must divide exactly"
    return q


def enumerate_m_dyck(n: int, m: int, budget: int | None = None) -> Iterator[MDyckPath]:
    """Yield every m-Dyck path of height n, lexicographically by area vector.

    Raises BudgetExceededError up front when the total count exceeds
    ``budget``.
    """
    if budget is not None:
        total = catalan_number_m(n, m)
        if total > budget:
            raise BudgetExceededError(
                f"enumeration of (n={n}, m={m}) needs {total} paths, budget is {budget}"
            )
    for av in _enumerate_area_vectors(n, m):
        path = MDyckPath.__new__(MDyckPath)
        object.__setattr__(path, "n", n)
        object.__setattr__(path, "m", m)
        object.__setattr__(path, "area_vector", av)
        yield path


def _enumerate_area_vectors(n: int, m: int) -> Iterator[tuple[int, ...]]:
    prefix = [0] * n
    # iterative DFS; ascending children give lexicographic order
    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(prefix)
            return
        for a in range(prefix[i - 1] + m + 1):
            prefix[i] = a
            yield from rec(i + 1)
    if n == 1:
        yield (0,)
    else:
        yield from rec(1)


def area_m(p: MDyckPath) -> int:
    return sum(p.area_vector)


def sc_m(p: int, m: int) -> int:
    """Scoring kernel for the discrete dinv statistic."""
    if 1 <= p <= m:
        return m + 1 - p
    if -m <= p <= 0:
        return m + p
    return 0


def dinv_m(p: MDyckPath) -> int:
    return _dinv_vector(p.area_vector, p.m)


def _dinv_vector(av: Sequence[int], m: int) -> int:
    total = 0
    n = len(av)
    for i in range(n):
        ai = av[i]
        for j in range(i + 1, n):
            d = ai - av[j]
            if 1 <= d <= m:
                total += m + 1 - d
            elif -m <= d <= 0:
                total += m + d
    return total


def bounce_path_m(p: MDyckPath) -> BouncePathM:
    """Simulate the bounce path of p on the integer lattice.

    From (0,0) the bounce path runs north until it hits an east step of p
    (the top edge y = n also terminates a run), then east by the sum of its
    last m vertical runs, and repeats until it reaches (m*n, n).
    """
    v, h = _bounce_runs(p.area_vector, p.m)
    return BouncePathM(v=tuple(v), h=tuple(h))


def _bounce_runs(av: Sequence[int], m: int) -> tuple[list[int], list[int]]:
    n = len(av)
    cols = sorted(m * i - a for i, a in enumerate(av))
    v: list[int] = []
    h: list[int] = []
    r = 0  # horizontal position
    y = 0  # height
    import bisect

    while r < m * n:
        height = bisect.bisect_right(cols, r)
        v.append(height - y)
        y = height
        step = sum(v[-m:])
        if step == 0:
            raise InvalidPathError("bounce path stalled; area vector is invalid")
        h.append(step)
        r += step
    return v, h


def bounce_m(p: MDyckPath) -> int:
    v, _ = _bounce_runs(p.area_vector, p.m)
    return sum(i * vi for i, vi in enumerate(v))


def phi_m(p: MDyckPath) -> MDyckPath:
    """The dinv-to-area bijection on m-Dyck paths.

    The image path is read off the area vector of p: in phase i, scanning the
    vector left to right, each symbol equal to i contributes a north step and
    each symbol in {i-m, ..., i-1} contributes an east step.  Concatenating
    the phases (trailing east steps implicit) gives the north-step columns of
    the image, whose bounce path has vertical runs v_i = #occurrences of i.

    Satisfies dinv_m(p) = area_m(phi_m(p)) and area_m(p) = bounce_m(phi_m(p)).
    """
    av = p.area_vector
    n, m = p.n, p.m
    top = max(av)
    cols: list[int] = []
    east = 0
    for i in range(top + 1):
        for a in av:
            if a == i:
                cols.append(east)
            elif i - m <= a <= i - 1:
                east += 1
    image = tuple(m * r - cols[r] for r in range(n))
    try:
        return MDyckPath(n=n, m=m, area_vector=image)
    except InvalidPathError as exc:  # pragma: no cover - indicates a bug
        raise AssertionError(f"phi_m produced an invalid path: {exc}") from exc
