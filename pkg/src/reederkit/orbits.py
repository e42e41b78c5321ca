"""Nilpotent orbit labels, dimensions, closure order and weighted Dynkin diagrams.

Classical orbits are partitions of the natural representation's dimension
(``n+1`` for A_n, ``2n+1`` for B_n, ``2n`` for C_n and D_n). Exceptional
orbits are Bala-Carter strings in plain ASCII: ``A2+A1``, ``(3A1)''``,
``~A1`` for the orbit usually written with a tilde, ``G2(a1)``, and ``1``
for the zero orbit. Only exceptional orbits listed in the embedded tables
are known.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import total_ordering
from typing import Sequence

from .rootsystem import Coweight, LieType, RootSystemError


class OrbitError(ValueError):
    pass


@total_ordering
@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise OrbitError(f"negative part in {parts}")
        object.__setattr__(self, "parts", tuple(sorted((p for p in parts if p), reverse=True)))

    @property
    def total(self) -> int:
        return sum(self.parts)

    def multiplicity(self, k: int) -> int:
        return self.parts.count(k)

    def dual(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0])))

    def dominates(self, other: "Partition") -> bool:
        """Dominance order on partitions of the same total."""
        if self.total != other.total:
            return False
        a = b = 0
        for i in range(max(len(self.parts), len(other.parts))):
            a += self.parts[i] if i < len(self.parts) else 0
            b += other.parts[i] if i < len(other.parts) else 0
            if a < b:
                return False
        return True

    def __lt__(self, other):
        return self.parts < other.parts

    def __str__(self):
        if not self.parts:
            return "[]"
        groups = []
        for part, mult in sorted(Counter(self.parts).items(), reverse=True):
            if mult == 1:
                groups.append(str(part))
            elif mult < 10:
                groups.append(f"{part}^{mult}")
            else:
                groups.append(f"{part}^{{{mult}}}")
        return "[" + " ".join(groups) + "]"


_CHUNK = re.compile(r"(\d)(?:\^(\{\d+\}|\d))?")
_WHOLE = re.compile(r"(\d+)(?:\^(\{\d+\}|\d+))?")


def parse_partition(text: str) -> Partition:
    """Parse ``'[3^2 1^3]'``, ``'3^21^3'``, ``'[1^{12}]'``, ``'[10 2]'`` or ``'3,2,2,1,1'``.

    An unbracketed digit string such as ``'3221'`` is read one digit per part;
    inside brackets a bare number is a single part.
    """
    raw = text.strip()
    bracketed = raw.startswith("[")
    body = raw.strip("[]").strip()
    if not body:
        return Partition(())
    if "," in body:
        return Partition(tuple(int(x) for x in body.split(",")))
    parts = []
    chunks = body.split()
    for chunk in chunks:
        if not bracketed and len(chunks) == 1 and chunk.isdigit():
            parts.extend(int(ch) for ch in chunk)
            continue
        m = _WHOLE.fullmatch(chunk)
        if m and (bracketed or len(chunks) > 1 or "^" in chunk):
            mult = int(m.group(2).strip("{}")) if m.group(2) else 1
            parts.extend([int(m.group(1))] * mult)
            continue
        pos = 0
        for m in _CHUNK.finditer(chunk):
            if m.start() != pos:
                break
            pos = m.end()
            exp = m.group(2)
            parts.extend([int(m.group(1))] * (int(exp.strip("{}")) if exp else 1))
        if pos != len(chunk):
            raise OrbitError(f"cannot parse partition {text!r}")
    return Partition(tuple(parts))


def partitions(n: int, max_part: int | None = None):
    """All partitions of n in reverse lexicographic order."""
    max_part = n if max_part is None else min(max_part, n)
    if n == 0:
        yield ()
        return
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


_BC_REPLACE = [
    ("\\widetilde{A}", "~A"), ("\\tilde{A}", "~A"), ("Ã", "~A"),
    ("″", "''"), ("′", "'"), ("_", ""), ("{", ""), ("}", ""), (" ", ""),
]


def canonical_bala_carter(text: str) -> str:
    s = text.strip()
    for a, b in _BC_REPLACE:
        s = s.replace(a, b)
    s = s.translate(str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789"))
    return "1" if s in ("0", "1") else s


@dataclass(frozen=True)
class OrbitLabel:
    lie_type: LieType
    partition: Partition | None = None
    tag: str | None = None
    bala_carter: str | None = None

    def __post_init__(self):
        lt = self.lie_type
        if lt.is_classical:
            if self.partition is None or self.bala_carter is not None:
                raise OrbitError(f"classical orbit in {lt} needs a partition")
            if not is_valid_orbit_partition(lt, self.partition):
                raise OrbitError(f"{self.partition} is not an orbit of {lt}")
            very_even = lt.family == "D" and all(p % 2 == 0 for p in self.partition.parts)
            if very_even and self.tag not in ("I", "II"):
                raise OrbitError(f"very even orbit {self.partition} in {lt} needs tag I or II")
            if not very_even and self.tag is not None:
                raise OrbitError(f"tag only allowed on very even orbits, got {self.tag!r}")
        else:
            if self.bala_carter is None or self.partition is not None:
                raise OrbitError(f"exceptional orbit in {lt} needs a Bala-Carter label")
            object.__setattr__(self, "bala_carter", canonical_bala_carter(self.bala_carter))

    @property
    def is_zero(self) -> bool:
        if self.lie_type.is_classical:
            return all(p == 1 for p in self.partition.parts)
        return self.bala_carter == "1"

    def __str__(self):
        if self.lie_type.is_classical:
            return str(self.partition) + (f"_{self.tag}" if self.tag else "")
        return self.bala_carter

    def sort_key(self):
        return (-orbit_dimension(self), str(self))


def classical_orbit(lt: LieType, parts: Sequence[int] | Partition | str, tag: str | None = None) -> OrbitLabel:
    if isinstance(parts, str):
        return parse_orbit(lt, parts)
    p = parts if isinstance(parts, Partition) else Partition(tuple(parts))
    return OrbitLabel(lt, partition=p, tag=tag)


def parse_orbit(lt: LieType, text: str) -> OrbitLabel:
    """Parse a label for type ``lt``: ``'[2^6]_II'`` or ``'(3A1)'''``."""
    if not lt.is_classical:
        return OrbitLabel(lt, bala_carter=text)
    s = text.strip()
    tag = None
    m = re.search(r"_\{?(II|I)\}?$", s)
    if m:
        tag = m.group(1)
        s = s[: m.start()]
    return OrbitLabel(lt, partition=parse_partition(s), tag=tag)


def zero_orbit(lt: LieType) -> OrbitLabel:
    if lt.is_classical:
        return OrbitLabel(lt, partition=Partition((1,) * lt.matrix_size))
    return OrbitLabel(lt, bala_carter="1")


def is_valid_orbit_partition(lt: LieType, p: Partition) -> bool:
    if not lt.is_classical:
        raise OrbitError(f"partition labels are only defined for classical types, not {lt}")
    if p.total != lt.matrix_size:
        return False
    counts = Counter(p.parts)
    if lt.family == "A":
        return True
    if lt.family == "C":
        return all(m % 2 == 0 for part, m in counts.items() if part % 2 == 1)
    return all(m % 2 == 0 for part, m in counts.items() if part % 2 == 0)


def classical_orbits(lt: LieType) -> list[OrbitLabel]:
    """All nilpotent orbits of a classical type, sorted by dimension descending."""
    out = []
    for parts in partitions(lt.matrix_size):
        p = Partition(parts)
        if not is_valid_orbit_partition(lt, p):
            continue
        if lt.family == "D" and all(x % 2 == 0 for x in parts):
            out.extend(OrbitLabel(lt, p, tag) for tag in ("I", "II"))
        else:
            out.append(OrbitLabel(lt, p))
    return sorted(out, key=OrbitLabel.sort_key)


def orbit_dimension(label: OrbitLabel) -> int:
    lt = label.lie_type
    if not lt.is_classical:
        from .paperdata import catalog

        return catalog().orbit_dimension(label)
    p = label.partition
    n = lt.matrix_size
    dual_sq = sum(x * x for x in p.dual().parts)
    odd = sum(1 for x in p.parts if x % 2)
    if lt.family == "A":
        return n * n - dual_sq
    if lt.family in "BD":
        return n * (n - 1) // 2 - (dual_sq - odd) // 2
    return n * (n + 1) // 2 - (dual_sq + odd) // 2


def closure_leq(a: OrbitLabel, b: OrbitLabel) -> bool:
    """True iff orbit ``a`` lies in the closure of orbit ``b``."""
    if a.lie_type != b.lie_type:
        raise OrbitError(f"labels of different types: {a.lie_type} vs {b.lie_type}")
    if a == b:
        return True
    lt = a.lie_type
    if not lt.is_classical:
        from .paperdata import catalog

        return catalog().exceptional_closure_leq(a, b)
    if a.tag and b.tag and a.partition == b.partition:
        return False
    return b.partition.dominates(a.partition)


def weighted_dynkin_classical(lt: LieType, p, tag: str | None = None) -> Coweight:
    """Weighted Dynkin diagram as a dominant coweight in classical coordinates.

    For the two very even classes in type D, tag ``II`` negates the last
    coordinate; ``p`` may also be an ``OrbitLabel`` carrying the tag.
    """
    if isinstance(p, OrbitLabel):
        tag = p.tag if tag is None else tag
        p = p.partition
    label = OrbitLabel(lt, partition=p, tag=tag)
    eig = sorted((b - 1 - 2 * k for b in p.parts for k in range(b)), reverse=True)
    if lt.family == "A":
        coords = eig
    else:
        coords = eig[: lt.rank]
        if label.tag == "II":
            coords[-1] = -coords[-1]
    return Coweight(tuple(coords), "classical", lt)


def hasse_edges(labels: Sequence[OrbitLabel]) -> list[tuple[OrbitLabel, OrbitLabel]]:
    """Covering relations (upper, lower) among the given orbits under closure order."""
    edges = []
    for hi in labels:
        for lo in labels:
            if hi == lo or not closure_leq(lo, hi):
                continue
            if any(mid not in (hi, lo) and closure_leq(lo, mid) and closure_leq(mid, hi) for mid in labels):
                continue
            edges.append((hi, lo))
    return edges


__all__ = [
    "Partition",
    "OrbitLabel",
    "OrbitError",
    "parse_partition",
    "parse_orbit",
    "classical_orbit",
    "classical_orbits",
    "zero_orbit",
    "is_valid_orbit_partition",
    "orbit_dimension",
    "closure_leq",
    "weighted_dynkin_classical",
    "canonical_bala_carter",
    "hasse_edges",
    "partitions",
    "RootSystemError",
]
