"""Brute-force dimensions of multigraded components.

A component K[SRep](n) has a monomial basis; the sl and gl actions are
assembled column by column from the derivations and the kernels are computed
exactly. Generator spans come from products of supertraces and det-like
components that land in the same multidegree.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, combinations_with_replacement, product
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from core.conf import setting
from core.exceptions import ResourceCapExceeded
from invariants.detlike import detlike_families, symbolic_detlike_components
from invariants.services import closed_path_invariants, reduce_normalized
from lie.basis import LieBasis, Weight, gl_basis, sl_basis
from lie.services import derivation_for
from quivers.graph import MultiDegree
from quivers.services import normalize_extremal
from quivers.textformat import format_multidegree, format_quiver, parse_quiver
from superalgebra.polynomial import CoordinateRing, Monomial, Polynomial
from .linalg import nullity, nullspace, sparse_rank

logger = logging.getLogger(__name__)

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"
NOT_COMPARED = "-"


def _cap(cap: Optional[int]) -> int:
    return setting("SUPERQUIVER_MONOMIAL_CAP") if cap is None else cap


# -- component basis -----------------------------------------------------


@dataclass(frozen=True)
class ComponentBasis:
    degree: MultiDegree
    monomials: Tuple[Monomial, ...]

    def __len__(self):
        return len(self.monomials)

    @cached_property
    def index(self) -> Dict[Monomial, int]:
        return {monomial: position for position, monomial in enumerate(self.monomials)}

    def coordinates(self, f: Polynomial) -> Dict[int, object]:
        return {self.index[monomial]: coeff for monomial, coeff in f.terms.items()}


def expected_basis_size(ring: CoordinateRing, degree: MultiDegree) -> int:
    total = 1
    for edge_id, count in zip(degree.edges, degree.values):
        variables = ring.edge_variables(edge_id)
        odd = sum(1 for var in variables if var.parity)
        even = len(variables) - odd
        size = 0
        for k in range(min(odd, count) + 1):
            rest = count - k
            size += comb(odd, k) * (1 if rest == 0 else comb(even + rest - 1, rest) if even else 0)
        total *= size
    return total


def _edge_words(ring: CoordinateRing, edge_id: str, count: int) -> List[Tuple]:
    variables = ring.edge_variables(edge_id)
    odd = [var for var in variables if var.parity]
    even = [var for var in variables if not var.parity]
    words = []
    for k in range(min(len(odd), count) + 1):
        for odd_part in combinations(odd, k):
            for even_part in combinations_with_replacement(even, count - k):
                words.append(odd_part + even_part)
    return words


def component_basis(ring: CoordinateRing, degree: MultiDegree, cap: Optional[int] = None) -> ComponentBasis:
    size = expected_basis_size(ring, degree)
    limit = _cap(cap)
    if size > limit:
        logger.warning("Component %s has %s monomials, over the cap of %s", degree, size, limit)
        raise ResourceCapExceeded(f"Component {degree} has {size} monomials (cap {limit}).")
    per_edge = [_edge_words(ring, edge_id, count) for edge_id, count in zip(degree.edges, degree.values)]
    monomials = []
    for choice in product(*per_edge):
        counts = Counter(var for word in choice for var in word)
        monomials.append(Monomial(sorted(counts.items())))
    monomials.sort()
    return ComponentBasis(degree, tuple(monomials))


# -- kernels -------------------------------------------------------------


def action_rows(ring: CoordinateRing, basis: ComponentBasis, generators: LieBasis) -> List[Dict[int, object]]:
    """Rows of the stacked derivation matrices, built one basis column at a time."""
    size = len(basis)
    rows: Dict[int, Dict[int, object]] = {}
    for offset, generator in enumerate(generators):
        derivation = derivation_for(ring, generator)
        for column, monomial in enumerate(basis.monomials):
            image = derivation(ring.monomial(monomial))
            for row, coeff in basis.coordinates(image).items():
                rows.setdefault(offset * size + row, {})[column] = coeff
    return list(rows.values())


def kernel_dim(ring: CoordinateRing, basis: ComponentBasis, generators: LieBasis) -> int:
    return len(basis) - sparse_rank(action_rows(ring, basis, generators), len(basis))


def semi_invariant_dim(
    ring: CoordinateRing,
    degree: MultiDegree,
    cap: Optional[int] = None,
    basis: Optional[ComponentBasis] = None,
) -> int:
    basis = basis or component_basis(ring, degree, cap)
    return kernel_dim(ring, basis, sl_basis(ring))


def invariant_dim(
    ring: CoordinateRing,
    degree: MultiDegree,
    cap: Optional[int] = None,
    basis: Optional[ComponentBasis] = None,
) -> int:
    basis = basis or component_basis(ring, degree, cap)
    return kernel_dim(ring, basis, gl_basis(ring))


def weighted_action_rows(ring: CoordinateRing, basis: ComponentBasis, weight: Weight) -> List[Dict[int, object]]:
    """Rows of D - w(a) str(D) over the gl basis; the kernel is the weight-w space."""
    size = len(basis)
    rows: Dict[int, Dict[int, object]] = {}
    for offset, generator in enumerate(gl_basis(ring)):
        derivation = derivation_for(ring, generator)
        shift = weight[generator.vertex] * generator.supertrace
        for column, monomial in enumerate(basis.monomials):
            f = ring.monomial(monomial)
            image = derivation(f) - f * shift if shift else derivation(f)
            for row, coeff in basis.coordinates(image).items():
                rows.setdefault(offset * size + row, {})[column] = coeff
    return list(rows.values())


def weight_space_dim(
    ring: CoordinateRing,
    degree: MultiDegree,
    weight: Weight,
    cap: Optional[int] = None,
    basis: Optional[ComponentBasis] = None,
) -> int:
    basis = basis or component_basis(ring, degree, cap)
    return nullity(weighted_action_rows(ring, basis, weight), len(basis))


def weight_space_basis(
    ring: CoordinateRing,
    degree: MultiDegree,
    weight: Weight,
    cap: Optional[int] = None,
    basis: Optional[ComponentBasis] = None,
) -> List[Polynomial]:
    """Explicit semi-invariants of the given weight spanning the component."""
    basis = basis or component_basis(ring, degree, cap)
    vectors = nullspace(weighted_action_rows(ring, basis, weight), len(basis))
    return [
        Polynomial(ring, {basis.monomials[column]: coeff for column, coeff in vector.items()})
        for vector in vectors
    ]


# -- generator span ------------------------------------------------------


def generator_pool(ring: CoordinateRing, max_len: int, max_size: int) -> List[Polynomial]:
    """Supertraces and det-like components, pulled back through the normalizations."""
    steps = normalize_extremal(ring.quiver, ring.alpha, ring.parity)
    rings = [ring] + [CoordinateRing(step.quiver, step.alpha, step.parity) for step in steps]
    work = rings[-1]
    reach = max_len + len(steps)
    pool: List[Polynomial] = []
    if reach >= 1 and work.quiver.edges:
        pool.extend(f for _, f in closed_path_invariants(work, reach))
    for sink_counts, source_counts in detlike_families(work, max_size):
        pool.extend(symbolic_detlike_components(work, sink_counts, source_counts, reach))
    for index in reversed(range(len(steps))):
        step, target = steps[index], rings[index]
        size = target.alpha.total(step.vertex)
        pool = [reduce_normalized(f, step.edge, size, target) for f in pool]
    unique: List[Polynomial] = []
    for f in pool:
        if f and not f.is_constant() and f.multidegree() is not None and f not in unique:
            unique.append(f)
    logger.debug("Generator pool on %s has %s elements", ring.quiver.vertices, len(unique))
    return unique


def products_in_degree(pool: Sequence[Polynomial], degree: MultiDegree, cap: Optional[int] = None) -> List[Polynomial]:
    """All products of pool elements (with repetition) of multidegree exactly ``degree``."""
    target = degree.values
    degrees = [f.multidegree().values for f in pool]
    limit = _cap(cap)
    found: List[Polynomial] = []

    def extend(start: int, current: Tuple[int, ...], value: Optional[Polynomial]) -> None:
        if current == target:
            found.append(value)
            if len(found) > limit:
                raise ResourceCapExceeded(f"More than {limit} generator products in {degree}.")
            return
        for index in range(start, len(pool)):
            grown = tuple(a + b for a, b in zip(current, degrees[index]))
            if all(a <= b for a, b in zip(grown, target)):
                extend(index, grown, pool[index] if value is None else value * pool[index])

    extend(0, tuple(0 for _ in target), None)
    return [f for f in found if f]


def generator_span_dim(
    ring: CoordinateRing,
    degree: MultiDegree,
    max_len: int,
    cap: Optional[int] = None,
    basis: Optional[ComponentBasis] = None,
) -> int:
    if not degree.total:
        return 1
    basis = basis or component_basis(ring, degree, cap)
    pool = [f for f in generator_pool(ring, max_len, degree.total) if f.multidegree().fits_in(degree)]
    products = products_in_degree(pool, degree, cap)
    return sparse_rank([basis.coordinates(f) for f in products], len(basis))


# -- reports -------------------------------------------------------------


@dataclass
class ComponentReport:
    degree: MultiDegree
    basis_size: Optional[int] = None
    ssi_dim: Optional[int] = None
    si_dim: Optional[int] = None
    span_dim: Optional[int] = None
    verdict: str = NOT_COMPARED
    note: str = field(default="", compare=False)

    CSV_COLUMNS = ("multidegree", "basis_size", "ssi_dim", "si_dim", "span_dim", "verdict")

    def as_row(self) -> Dict[str, object]:
        values = (format_multidegree(self.degree), self.basis_size, self.ssi_dim, self.si_dim, self.span_dim, self.verdict)
        return {column: "-" if value is None else value for column, value in zip(self.CSV_COLUMNS, values)}

    def line(self) -> str:
        row = self.as_row()
        text = (
            f"oracle {row['multidegree']}: basis={row['basis_size']} ssi={row['ssi_dim']} "
            f"si={row['si_dim']} span={row['span_dim']} {self.verdict}"
        )
        return f"{text} ({self.note})" if self.note else text

    def to_payload(self) -> Dict[str, object]:
        return {
            "edges": list(self.degree.edges),
            "values": list(self.degree.values),
            "basis_size": self.basis_size,
            "ssi_dim": self.ssi_dim,
            "si_dim": self.si_dim,
            "span_dim": self.span_dim,
            "verdict": self.verdict,
            "note": self.note,
        }

    @classmethod
    def from_payload(cls, payload: Dict[str, object]) -> "ComponentReport":
        degree = MultiDegree(tuple(payload["edges"]), tuple(payload["values"]))
        return cls(
            degree,
            payload["basis_size"],
            payload["ssi_dim"],
            payload["si_dim"],
            payload["span_dim"],
            payload["verdict"],
            payload.get("note", ""),
        )


def analyse_component(
    ring: CoordinateRing,
    degree: MultiDegree,
    compare_maxlen: Optional[int] = None,
    cap: Optional[int] = None,
) -> ComponentReport:
    report = ComponentReport(degree)
    logger.info("Oracle component %s started", degree)
    try:
        basis = component_basis(ring, degree, cap)
        report.basis_size = len(basis)
        report.ssi_dim = semi_invariant_dim(ring, degree, basis=basis)
        report.si_dim = invariant_dim(ring, degree, basis=basis)
        if compare_maxlen is not None:
            report.span_dim = generator_span_dim(ring, degree, compare_maxlen, cap, basis)
    except ResourceCapExceeded as exc:
        report.verdict = INCONCLUSIVE
        report.note = str(exc)
        return report
    if report.si_dim > report.ssi_dim:
        report.verdict, report.note = FAIL, "invariants exceed semi-invariants"
    elif report.span_dim is not None:
        report.verdict = PASS if report.span_dim == report.ssi_dim else FAIL
        if report.span_dim > report.ssi_dim:
            report.note = "generators leave the kernel"
    logger.info("Oracle component %s finished: %s", degree, report.verdict)
    return report


def component_payload(ring: CoordinateRing, degree: MultiDegree, compare_maxlen: Optional[int], cap: Optional[int]) -> Dict:
    return {
        "quiver": format_quiver(ring.quiver, ring.alpha, ring.parity),
        "values": list(degree.values),
        "compare_maxlen": compare_maxlen,
        "cap": cap,
    }


def analyse_payload(payload: Dict) -> Dict:
    quiver, alpha, parity = parse_quiver(payload["quiver"])
    ring = CoordinateRing(quiver, alpha, parity)
    degree = ring.multidegree(tuple(payload["values"]))
    return analyse_component(ring, degree, payload["compare_maxlen"], payload["cap"]).to_payload()


def run_components(
    ring: CoordinateRing,
    degrees: Iterable[MultiDegree],
    compare_maxlen: Optional[int] = None,
    cap: Optional[int] = None,
) -> List[ComponentReport]:
    """One pure task per multidegree; reports come back in multidegree order."""
    degrees = sorted(set(degrees), key=lambda degree: degree.values)
    if setting("SUPERQUIVER_ORACLE_DISPATCH") == "celery":
        from celery import group

        from .tasks import analyse_component_task

        payloads = [component_payload(ring, degree, compare_maxlen, cap) for degree in degrees]
        result = group(analyse_component_task.s(payload) for payload in payloads).apply_async()
        reports = [ComponentReport.from_payload(child.get()) for child in result.results]
    else:
        reports = [analyse_component(ring, degree, compare_maxlen, cap) for degree in degrees]
    return sorted(reports, key=lambda report: report.degree.values)
