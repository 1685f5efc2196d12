from __future__ import annotations

import logging
import random
from itertools import product
from typing import Callable, Iterable, List, NamedTuple, Set, Tuple

from django.utils import timezone

from core.exceptions import ResourceCapExceeded, SuperquiverError
from core.models import VerificationResult
from invariants.detlike import DetLikeBlock, DetLikeSpec, detlike_semi_invariant
from invariants.polarization import linearize_and_restitute_check
from invariants.services import closed_path_invariants, reduce_normalized
from lie.basis import Weight, gl_basis, sl_basis
from lie.services import check_weight, find_violation, group_point_test, is_sl_invariant, random_group_point
from oracle.homext import hom_ext_dims, random_rep
from oracle.services import component_basis, generator_span_dim, invariant_dim, semi_invariant_dim
from quivers.graph import Edge, MultiDegree, ParityVector, Quiver, SuperDimVector
from quivers.services import enumerate_closed_paths, normalize_at
from superalgebra.grassmann import GrassmannElement
from superalgebra.localization import EvenFraction
from superalgebra.polynomial import CoordinateRing, Derivation
from superalgebra.sampling import random_homogeneous_polynomial
from supermatrices.services import (
    berezinian,
    determinant,
    generic_matrix,
    grassmann_berezinian,
    path_product,
    random_invertible_supermatrix,
    supertrace,
)
from supermatrices.supermatrix import SuperFormat

logger = logging.getLogger(__name__)

LOOP = Quiver(("a",), (Edge("e", "a", "a"),))
KRONECKER = Quiver(("a", "b"), (Edge("e1", "a", "b"), Edge("e2", "a", "b")))
TWO_CYCLE = Quiver(("a", "b"), (Edge("e1", "a", "b"), Edge("e2", "b", "a")))
THREE_CYCLE = Quiver(("a", "b", "c"), (Edge("f", "a", "b"), Edge("g", "b", "c"), Edge("h", "c", "a")))
A3 = Quiver(("a", "b", "c"), (Edge("f", "a", "b"), Edge("g", "b", "c")))

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"

Outcome = Tuple[str, str]


class TheoremCheck(NamedTuple):
    code: str
    category: str
    run: Callable[[bool], Outcome]


def make_ring(quiver: Quiver, dims, bits=None) -> CoordinateRing:
    alpha = SuperDimVector.build(quiver, dims)
    parity = ParityVector.build(quiver, bits or {v: 0 for v in quiver.vertices})
    return CoordinateRing(quiver, alpha, parity)


def parity_vectors(quiver: Quiver):
    for bits in product((0, 1), repeat=len(quiver.vertices)):
        yield dict(zip(quiver.vertices, bits))


def degrees_up_to(quiver: Quiver, total: int) -> List[MultiDegree]:
    found = []
    for values in product(range(total + 1), repeat=len(quiver.edges)):
        if 0 < sum(values) <= total:
            found.append(MultiDegree.build(quiver, dict(zip((edge.id for edge in quiver.edges), values))))
    return sorted(found, key=lambda degree: (degree.total, degree.values))


# -- properties ----------------------------------------------------------


def check_sign_conventions(quick: bool) -> Outcome:
    cases = [
        (LOOP, {"a": (1, 1)}),
        (TWO_CYCLE, {"a": (1, 1), "b": (2, 1)}),
    ]
    if not quick:
        cases += [
            (LOOP, {"a": (2, 1)}),
            (THREE_CYCLE, {"a": (1, 1), "b": (2, 0), "c": (0, 2)}),
        ]
    checked = 0
    for quiver, dims in cases:
        for bits in parity_vectors(quiver):
            ring = make_ring(quiver, dims, bits)
            basis = gl_basis(ring)
            for path in enumerate_closed_paths(quiver, 3):
                f = supertrace(path_product(ring, path))
                if find_violation(f, basis) is not None:
                    return FAIL, f"str({path}) is not annihilated on {ring.alpha} with twist {bits}."
                checked += 1
    return PASS, f"{checked} supertraces annihilated by every gl generator."


def _compare_components(ring: CoordinateRing, total: int) -> Outcome:
    for degree in degrees_up_to(ring.quiver, total):
        basis = component_basis(ring, degree)
        ssi = semi_invariant_dim(ring, degree, basis=basis)
        span = generator_span_dim(ring, degree, degree.total, basis=basis)
        if ssi != span:
            return FAIL, f"{ring.alpha} at {degree}: semi-invariants {ssi}, generators span {span}."
    return PASS, ""


def _compare_weight_zero(ring: CoordinateRing, total: int) -> Tuple[Outcome, List[str]]:
    """Generators span SI; semi-invariants beyond SI are collected, not failed."""
    excess = []
    for degree in degrees_up_to(ring.quiver, total):
        basis = component_basis(ring, degree)
        ssi = semi_invariant_dim(ring, degree, basis=basis)
        si = invariant_dim(ring, degree, basis=basis)
        span = generator_span_dim(ring, degree, degree.total, basis=basis)
        if span != si or si > ssi:
            return (FAIL, f"{ring.alpha} at {degree}: invariants {si}, semi-invariants {ssi}, generators span {span}."), excess
        if ssi > si:
            excess.append(f"{degree} (+{ssi - si})")
    return (PASS, ""), excess


def check_generator_completeness(quick: bool) -> Outcome:
    total = 2 if quick else 4
    verdict, message = _compare_components(make_ring(LOOP, {"a": (1, 1)}), total)
    if verdict != PASS:
        return verdict, message
    # sl(1|1) contains the identity, so 1|1 vertices carry weighted semi-invariants no generator reaches.
    (verdict, message), excess = _compare_weight_zero(make_ring(TWO_CYCLE, {"a": (1, 1), "b": (1, 1)}), total)
    if verdict != PASS:
        return verdict, message
    note = f" Weighted 2-cycle semi-invariants outside the span at {', '.join(excess)}." if excess else ""
    return PASS, f"Generators span every invariant component up to total degree {total}.{note}"


def check_acyclic_kronecker(quick: bool) -> Outcome:
    total = 2 if quick else 4
    for dims in ({"a": (1, 1), "b": (1, 1)}, {"a": (2, 1), "b": (1, 2)}):
        for bits in parity_vectors(KRONECKER):
            ring = make_ring(KRONECKER, dims, bits)
            for degree in degrees_up_to(KRONECKER, total):
                dimension = semi_invariant_dim(ring, degree)
                if dimension:
                    return FAIL, f"{ring.alpha} twist {bits} at {degree}: {dimension} semi-invariants."
    return PASS, f"No nonconstant semi-invariants up to total degree {total}."


def check_classical_kronecker(quick: bool) -> Outcome:
    ring = make_ring(KRONECKER, {"a": (2, 0), "b": (2, 0)})
    degree = MultiDegree.build(KRONECKER, {"e1": 1, "e2": 1})
    ssi = semi_invariant_dim(ring, degree)
    span = generator_span_dim(ring, degree, 1)
    if (ssi, span) != (1, 1):
        return FAIL, f"Expected one semi-invariant at {degree}, got ssi={ssi} span={span}."
    block = DetLikeBlock("b", None, "a", None, ((1, ("e1",)), (1, ("e2",))))
    result = detlike_semi_invariant(ring, DetLikeSpec((("b", 1),), (("a", 1),), (block,)))
    mixed = dict(result.components)[degree]
    weight = Weight.build(KRONECKER, {"a": -1, "b": 1})
    if result.weight != weight or not check_weight(mixed, weight):
        return FAIL, f"Mixed determinant component fails the weight check for {weight}."
    rng = random.Random(11)
    for _ in range(2 if quick else 5):
        point = {var: GrassmannElement.scalar(2, rng.randint(-3, 3)) for var in ring.variables}
        if not group_point_test(mixed, weight, random_group_point(ring, 2, rng), point, 2):
            return FAIL, "Mixed determinant component fails at a group point."
    return PASS, f"Mixed component of det(X(e1)+X(e2)) spans {degree} with weight {weight}."


def check_berezinian(quick: bool) -> Outcome:
    rng = random.Random(42)
    samples = 5 if quick else 20
    for fmt in (SuperFormat((1, 1), (1, 1)), SuperFormat((2, 1), (2, 1))):
        for _ in range(samples):
            g = random_invertible_supermatrix(fmt, 4, rng)
            h = random_invertible_supermatrix(fmt, 4, rng)
            if grassmann_berezinian(g @ h) != grassmann_berezinian(g) * grassmann_berezinian(h):
                return FAIL, f"Ber is not multiplicative at format {fmt}."
    even = make_ring(LOOP, {"a": (2, 0)})
    X = generic_matrix(even, "e")
    if berezinian(X) != EvenFraction.from_polynomial(determinant(X)):
        return FAIL, "Ber differs from det on a purely even matrix."
    odd = make_ring(LOOP, {"a": (0, 2)})
    Y = generic_matrix(odd, "e")
    if berezinian(Y) != EvenFraction.from_polynomial(odd.one).divide(determinant(Y)):
        return FAIL, "Ber differs from 1/det on a purely odd matrix."
    return PASS, f"Multiplicative on {2 * samples} point pairs; degenerations hold."


def check_ringel_formula(quick: bool) -> Outcome:
    rng = random.Random(5)
    samples = 5 if quick else 20
    for quiver in (KRONECKER, LOOP, A3):
        for _ in range(samples):
            dims = [
                SuperDimVector.build(quiver, {v: (rng.randint(0, 2), rng.randint(0, 2)) for v in quiver.vertices})
                for _ in range(2)
            ]
            v, w = (random_rep(quiver, alpha, rng) for alpha in dims)
            hom_ext_dims(v, w, check_doubled=True)
    return PASS, f"hom - ext matched the form on {3 * samples} pairs."


def check_polarization(quick: bool) -> Outcome:
    rng = random.Random(7)
    rings = [
        make_ring(LOOP, {"a": (1, 1)}),
        make_ring(KRONECKER, {"a": (1, 1), "b": (1, 0)}, {"a": 0, "b": 1}),
    ]
    wanted = 4 if quick else 10
    checked = 0
    while checked < wanted:
        ring = rings[checked % 2]
        values = {edge: rng.randint(0, 2) for edge in ring.edge_ids}
        if not 0 < sum(values.values()) <= 3:
            continue
        f = random_homogeneous_polynomial(ring, MultiDegree.build(ring.quiver, values), rng)
        if not f:
            continue
        linearized = [edge for edge in ring.edge_ids if rng.random() < 0.6]
        if not linearize_and_restitute_check(f, linearized):
            return FAIL, f"Restitution of {f} along {linearized} lost the factorial factor."
        checked += 1
    return PASS, f"{checked} random polynomials restituted exactly."


def check_reduction(quick: bool) -> Outcome:
    ring = make_ring(TWO_CYCLE, {"a": (0, 2), "b": (1, 1)})
    step = normalize_at(TWO_CYCLE, ring.alpha, ring.parity, "a")
    normalized = CoordinateRing(step.quiver, step.alpha, step.parity)
    det = determinant(generic_matrix(normalized, step.edge))
    if reduce_normalized(det, step.edge, 2, ring) != ring.one:
        return FAIL, f"det X({step.edge}) does not reduce to 1."
    basis = sl_basis(ring)
    invariants = closed_path_invariants(normalized, 2 if quick else 3)
    for path, f in invariants:
        if not is_sl_invariant(reduce_normalized(f, step.edge, 2, ring), basis):
            return FAIL, f"Reduced str({path}) is not a semi-invariant."
    return PASS, f"{len(invariants)} reduced supertraces are semi-invariants."


def _random_derivation(ring: CoordinateRing, parity: int, rng: random.Random) -> Derivation:
    images = {}
    for var in ring.variables:
        wanted = (var.parity + parity) % 2
        candidates = [other for other in ring.variables if other.parity == wanted]
        image = ring.zero
        for other in rng.sample(candidates, min(2, len(candidates))):
            image = image + ring.gen(other) * rng.randint(-2, 2)
        images[var] = image
    return Derivation(images, parity)


def check_ring_axioms(quick: bool) -> Outcome:
    rng = random.Random(2024)
    ring = make_ring(KRONECKER, {"a": (2, 1), "b": (1, 1)}, {"a": 0, "b": 1})
    cases = 100 if quick else 1000

    def sample(parity=None):
        values = ring.multidegree(tuple(rng.randint(0, 2) for _ in ring.edge_ids))
        return random_homogeneous_polynomial(ring, values, rng, terms=2, parity=parity)

    for _ in range(cases):
        pf, pg, pd = rng.randint(0, 1), rng.randint(0, 1), rng.randint(0, 1)
        f, g, h = sample(pf), sample(pg), sample()
        if f * g != g * f * (-1 if pf * pg else 1):
            return FAIL, f"Supercommutativity fails for {f} and {g}."
        if (f * g) * h != f * (g * h):
            return FAIL, f"Associativity fails for {f}, {g}, {h}."
        product_ = f * g
        if product_ and product_.multidegree().values != tuple(
            a + b for a, b in zip(f.multidegree().values, g.multidegree().values)
        ):
            return FAIL, f"Grading fails for {f} and {g}."
        D = _random_derivation(ring, pd, rng)
        if D(f * g) != D(f) * g + f * D(g) * (-1 if pd * pf else 1):
            return FAIL, f"Leibniz rule fails for {f} and {g}."
    return PASS, f"{cases} random cases of each ring axiom."


THEOREM_CHECKS: Tuple[TheoremCheck, ...] = (
    TheoremCheck("sign-conventions", "Lie action", check_sign_conventions),
    TheoremCheck("generator-completeness", "Generators", check_generator_completeness),
    TheoremCheck("acyclic-kronecker", "Generators", check_acyclic_kronecker),
    TheoremCheck("classical-kronecker", "Det-like", check_classical_kronecker),
    TheoremCheck("berezinian", "Supermatrices", check_berezinian),
    TheoremCheck("ringel-formula", "Representations", check_ringel_formula),
    TheoremCheck("polarization", "Polarization", check_polarization),
    TheoremCheck("reduction", "Normalization", check_reduction),
    TheoremCheck("ring-axioms", "Ring", check_ring_axioms),
)


# -- persistence ---------------------------------------------------------


def run_theorem_checks(quick: bool = False, codes: Iterable[str] = ()) -> Iterable[VerificationResult]:
    """Run the acceptance properties and persist one result per property."""
    selected = set(codes)
    active_codes: Set[str] = set()
    for check in THEOREM_CHECKS:
        if selected and check.code not in selected:
            continue
        logger.info("Verifying %s%s", check.code, " (quick)" if quick else "")
        try:
            verdict, message = check.run(quick)
        except ResourceCapExceeded as exc:
            verdict, message = INCONCLUSIVE, str(exc)
        except SuperquiverError as exc:
            verdict, message = FAIL, str(exc)
        if verdict != PASS:
            logger.warning("%s: %s %s", check.code, verdict, message)
        _upsert_result(check.code, category=check.category, message=message, verdict=verdict)
        active_codes.add(check.code)

    if not selected:
        _resolve_retired_results({check.code for check in THEOREM_CHECKS})
    return VerificationResult.objects.filter(code__in=active_codes).order_by("code")


def _upsert_result(code: str, *, category: str, message: str, verdict: str) -> VerificationResult:
    defaults = {"category": category, "message": message, "verdict": verdict}
    result, created = VerificationResult.objects.get_or_create(code=code, defaults=defaults)
    if not created:
        updated_fields = []
        for field, value in defaults.items():
            if getattr(result, field) != value:
                setattr(result, field, value)
                updated_fields.append(field)
        if verdict == PASS and result.resolved_at is None and "verdict" in updated_fields:
            result.resolved_at = timezone.now()
            updated_fields.append("resolved_at")
        elif verdict != PASS and result.resolved_at is not None:
            result.resolved_at = None
            updated_fields.append("resolved_at")
        if updated_fields:
            result.save(update_fields=updated_fields)
    return result


def _resolve_retired_results(known_codes: Set[str]) -> None:
    retired_qs = VerificationResult.objects.filter(resolved_at__isnull=True).exclude(code__in=known_codes)
    if retired_qs.exists():
        retired_qs.update(resolved_at=timezone.now())
