import random

from django.test import SimpleTestCase
from sympy.polys.domains import QQ

from core.exceptions import DetLikeSpecError, FormatError, PathError, PolarizationError, ReductionError, ZeroPolynomialError
from lie.basis import Weight, sl_basis
from lie.services import check_weight, group_point_test, is_sl_invariant, random_group_point
from quivers.graph import Edge, MultiDegree, ParityVector, Path, Quiver, SuperDimVector
from quivers.services import normalize_at
from superalgebra.grassmann import GrassmannElement
from superalgebra.polynomial import CoordinateRing
from superalgebra.sampling import random_grassmann_element, random_homogeneous_polynomial
from supermatrices.services import determinant, generic_matrix
from .detlike import DetLikeBlock, DetLikeSpec, detlike_semi_invariant, symbolic_detlike_components
from .polarization import linearize_and_restitute_check, partial_linearization, polarize, polarized_ring
from .services import (
    closed_path_invariants,
    kronecker_berezinian,
    random_kronecker_coefficients,
    reduce_normalized,
    strace_invariant,
    weight_of,
)

KRONECKER = Quiver(("a", "b"), (Edge("e1", "a", "b"), Edge("e2", "a", "b")))
LOOP = Quiver(("a",), (Edge("e", "a", "a"),))
TWO_CYCLE = Quiver(("a", "b"), (Edge("e1", "a", "b"), Edge("e2", "b", "a")))


def make_ring(quiver, dims, bits=None):
    alpha = SuperDimVector.build(quiver, dims)
    parity = ParityVector.build(quiver, bits or {v: 0 for v in quiver.vertices})
    return CoordinateRing(quiver, alpha, parity)


def det_x(ring, edge):
    return ring.x(edge, 1, 1) * ring.x(edge, 2, 2) - ring.x(edge, 1, 2) * ring.x(edge, 2, 1)


class StraceTests(SimpleTestCase):
    def test_one_by_one_loop(self):
        ring = make_ring(LOOP, {"a": (1, 0)})
        self.assertEqual(strace_invariant(ring, Path.build(LOOP, ["e"])), ring.x("e", 1, 1))

    def test_loop_one_one(self):
        ring = make_ring(LOOP, {"a": (1, 1)})
        x = ring.x
        self.assertEqual(strace_invariant(ring, Path.build(LOOP, ["e"])), x("e", 1, 1) - x("e", 2, 2))
        expected = x("e", 1, 1) ** 2 - x("e", 2, 2) ** 2 + x("e", 1, 2) * x("e", 2, 1) * 2
        self.assertEqual(strace_invariant(ring, Path.build(LOOP, ["e", "e"])), expected)

    def test_open_path(self):
        ring = make_ring(KRONECKER, {"a": (1, 0), "b": (1, 0)})
        with self.assertRaises(PathError):
            strace_invariant(ring, Path.build(KRONECKER, ["e1"]))

    def test_closed_path_family(self):
        ring = make_ring(TWO_CYCLE, {"a": (1, 1), "b": (1, 0)})
        found = closed_path_invariants(ring, 4)
        self.assertEqual([str(path) for path, _ in found], ["e1,e2", "e1,e2,e1,e2"])
        for _, f in found:
            self.assertEqual(weight_of(f), Weight.zero(TWO_CYCLE))


class DetLikeTests(SimpleTestCase):
    def setUp(self):
        self.ring = make_ring(KRONECKER, {"a": (2, 0), "b": (2, 0)})

    def test_single_block(self):
        spec = DetLikeSpec((("b", 1),), (("a", 1),), (DetLikeBlock("b", None, "a", None, ((1, ("e1",)),)),))
        result = detlike_semi_invariant(self.ring, spec)
        self.assertEqual(result.determinant, det_x(self.ring, "e1"))
        self.assertEqual(str(result.weight), "a=-1 b=+1")
        self.assertTrue(check_weight(result.determinant, result.weight))

    def test_sum_of_blocks_splits_by_multidegree(self):
        block = DetLikeBlock("b", None, "a", None, ((1, ("e1",)), (1, ("e2",))))
        result = detlike_semi_invariant(self.ring, DetLikeSpec((("b", 1),), (("a", 1),), (block,)))
        degrees = [str(degree) for degree, _ in result.components]
        self.assertEqual(degrees, ["e1=0,e2=2", "e1=1,e2=1", "e1=2,e2=0"])
        self.assertEqual(result.components[0][1], det_x(self.ring, "e2"))
        self.assertEqual(result.components[2][1], det_x(self.ring, "e1"))
        for _, component in result.components:
            self.assertEqual(weight_of(component), result.weight)

    def test_unbalanced(self):
        with self.assertRaises(DetLikeSpecError):
            detlike_semi_invariant(self.ring, DetLikeSpec((("b", 2),), (("a", 1),)))

    def test_symbolic_components(self):
        components = symbolic_detlike_components(self.ring, (("b", 1),), (("a", 1),), 1)
        self.assertEqual(len(components), 3)
        self.assertIn(det_x(self.ring, "e1"), components)

    def test_group_point_orientation(self):
        f = det_x(self.ring, "e1")
        rng = random.Random(11)
        point = {var: GrassmannElement.scalar(2, rng.randint(-3, 3)) for var in self.ring.variables}
        g = random_group_point(self.ring, 2, rng)
        weight = Weight.build(KRONECKER, {"a": -1, "b": 1})
        self.assertTrue(group_point_test(f, weight, g, point, 2))


class WeightOfTests(SimpleTestCase):
    def test_determinant(self):
        ring = make_ring(KRONECKER, {"a": (2, 0), "b": (2, 0)})
        self.assertEqual(weight_of(det_x(ring, "e1")).as_dict(), {"a": -1, "b": 1})

    def test_not_semi_invariant(self):
        ring = make_ring(KRONECKER, {"a": (2, 0), "b": (2, 0)})
        self.assertIsNone(weight_of(ring.x("e1", 1, 1) + 1))
        self.assertIsNone(weight_of(ring.x("e1", 1, 1)))

    def test_zero(self):
        ring = make_ring(LOOP, {"a": (1, 1)})
        with self.assertRaises(ZeroPolynomialError):
            weight_of(ring.zero)


class PolarizationTests(SimpleTestCase):
    def setUp(self):
        self.ring = make_ring(LOOP, {"a": (1, 0)})
        self.square = self.ring.x("e", 1, 1) ** 2
        self.degree = MultiDegree.build(LOOP, {"e": 2})
        self.base = polarized_ring(self.ring, self.degree)

    def refined(self, first, second):
        return MultiDegree.build(self.base.quiver, {"e_1": first, "e_2": second})

    def test_full_linearization(self):
        expected = self.base.x("e_1", 1, 1) * self.base.x("e_2", 1, 1) * 2
        self.assertEqual(polarize(self.square, self.degree, self.refined(1, 1)), expected)

    def test_single_slot(self):
        self.assertEqual(polarize(self.square, self.degree, self.refined(2, 0)), self.base.x("e_1", 1, 1) ** 2)

    def test_linear_relabels(self):
        f = self.ring.x("e", 1, 1) * 3
        degree = MultiDegree.build(LOOP, {"e": 1})
        base = polarized_ring(self.ring, degree)
        refined = MultiDegree.build(base.quiver, {"e_1": 1})
        self.assertEqual(polarize(f, degree, refined), base.x("e_1", 1, 1) * 3)

    def test_incompatible_refinement(self):
        with self.assertRaises(PolarizationError):
            polarize(self.square, self.degree, self.refined(1, 0))
        with self.assertRaises(PolarizationError):
            polarize(self.square + self.ring.x("e", 1, 1), self.degree, self.refined(1, 1))

    def test_factorial_factor(self):
        self.assertEqual(partial_linearization(self.square, ["e"])[1], 2)
        self.assertTrue(linearize_and_restitute_check(self.square, ["e"]))
        self.assertTrue(linearize_and_restitute_check(self.ring.x("e", 1, 1), ["e"]))

    def test_supertrace_square(self):
        ring = make_ring(LOOP, {"a": (1, 1)})
        f = strace_invariant(ring, Path.build(LOOP, ["e", "e"]))
        self.assertEqual(partial_linearization(f, ["e"])[1], 2)
        self.assertTrue(linearize_and_restitute_check(f, ["e"]))

    def test_random_polynomials(self):
        rng = random.Random(7)
        rings = [
            make_ring(LOOP, {"a": (1, 1)}),
            make_ring(KRONECKER, {"a": (1, 1), "b": (1, 0)}, {"a": 0, "b": 1}),
        ]
        checked = 0
        while checked < 12:
            ring = rings[checked % 2]
            values = {edge: rng.randint(0, 2) for edge in ring.edge_ids}
            if not 0 < sum(values.values()) <= 3:
                continue
            f = random_homogeneous_polynomial(ring, MultiDegree.build(ring.quiver, values), rng)
            if not f:
                continue
            linearized = [edge for edge in ring.edge_ids if rng.random() < 0.6]
            self.assertTrue(linearize_and_restitute_check(f, linearized), str(f))
            checked += 1


class ReductionTests(SimpleTestCase):
    def setUp(self):
        self.ring = make_ring(TWO_CYCLE, {"a": (0, 2), "b": (1, 1)})
        step = normalize_at(TWO_CYCLE, self.ring.alpha, self.ring.parity, "a")
        self.edge = step.edge
        self.normalized = CoordinateRing(step.quiver, step.alpha, step.parity)

    def test_det_goes_to_one(self):
        det = determinant(generic_matrix(self.normalized, self.edge))
        self.assertEqual(reduce_normalized(det, self.edge, 2, self.ring), self.ring.one)

    def test_straces_reduce_to_semi_invariants(self):
        basis = sl_basis(self.ring)
        for path, f in closed_path_invariants(self.normalized, 3):
            reduced = reduce_normalized(f, self.edge, 2, self.ring)
            self.assertTrue(is_sl_invariant(reduced, basis), str(path))

    def test_cycle_through_new_edge(self):
        path = Path.build(self.normalized.quiver, ["e1", self.edge, "e2"])
        reduced = reduce_normalized(strace_invariant(self.normalized, path), self.edge, 2, self.ring)
        self.assertEqual(reduced, strace_invariant(self.ring, Path.build(TWO_CYCLE, ["e1", "e2"])))

    def test_independent_polynomial_unchanged(self):
        f = self.normalized.x("e1", 1, 1) * self.normalized.x("e2", 1, 2)
        self.assertEqual(reduce_normalized(f, self.edge, 2, self.ring), self.ring.x("e1", 1, 1) * self.ring.x("e2", 1, 2))

    def test_homomorphism(self):
        rng = random.Random(3)
        for _ in range(10):
            values = {edge: rng.randint(0, 1) for edge in self.normalized.edge_ids}
            f = random_homogeneous_polynomial(self.normalized, MultiDegree.build(self.normalized.quiver, values), rng)
            g = random_homogeneous_polynomial(self.normalized, MultiDegree.build(self.normalized.quiver, values), rng)
            self.assertEqual(
                reduce_normalized(f * g, self.edge, 2, self.ring),
                reduce_normalized(f, self.edge, 2, self.ring) * reduce_normalized(g, self.edge, 2, self.ring),
            )

    def test_size_mismatch(self):
        with self.assertRaises(ReductionError):
            reduce_normalized(self.normalized.one, self.edge, 3, self.ring)

    def test_ordinary_vertex(self):
        step = normalize_at(TWO_CYCLE, self.ring.alpha, self.ring.parity, "b")
        normalized = CoordinateRing(step.quiver, step.alpha, step.parity)
        with self.assertRaises(ReductionError):
            reduce_normalized(normalized.one, step.edge, 2, self.ring)


class KroneckerBerezinianTests(SimpleTestCase):
    def test_classical_case_is_a_determinant(self):
        ring = make_ring(KRONECKER, {"a": (1, 0), "b": (2, 0)})
        coefficients = {(1, 1): (QQ(1), QQ(0)), (1, 2): (QQ(0), QQ(1))}
        value, weight = kronecker_berezinian(ring, 1, 2, coefficients)
        expected = ring.x("e1", 1, 1) * ring.x("e2", 2, 1) - ring.x("e2", 1, 1) * ring.x("e1", 2, 1)
        self.assertEqual(value.to_polynomial(), expected)
        self.assertEqual(weight.as_dict(), {"a": -2, "b": 1})
        self.assertTrue(check_weight(expected, weight))

    def test_unbalanced_blocks(self):
        ring = make_ring(KRONECKER, {"a": (1, 0), "b": (2, 0)})
        with self.assertRaises(FormatError):
            kronecker_berezinian(ring, 1, 1, random_kronecker_coefficients(1, 1, random.Random(0)))

    def test_rational_weight_at_group_points(self):
        ring = make_ring(KRONECKER, {"a": (1, 1), "b": (1, 1)})
        value, weight = kronecker_berezinian(ring, 1, 1, {(1, 1): (QQ(1), QQ(2))})
        self.assertEqual(str(weight), "a=-1 b=+1")
        rng = random.Random(5)
        k = 4
        for _ in range(3):
            point = {}
            for var in ring.variables:
                element = random_grassmann_element(k, rng, var.parity)
                # unit body on the diagonal keeps the odd-odd block invertible
                point[var] = element if var.parity else element - element.body + 1
            g = random_group_point(ring, k, rng)
            self.assertTrue(group_point_test(value, weight, g, point, k))
