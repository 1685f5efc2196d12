import itertools
import random

from django.test import SimpleTestCase

from core.exceptions import ZeroPolynomialError
from quivers.graph import Edge, MultiDegree, ParityVector, Quiver, SuperDimVector
from quivers.services import enumerate_closed_paths
from superalgebra.grassmann import GrassmannElement
from superalgebra.polynomial import CoordinateRing
from superalgebra.sampling import random_grassmann_point, random_homogeneous_polynomial
from supermatrices.services import determinant, generic_matrix, grassmann_matrix, path_product, supertrace
from supermatrices.supermatrix import SuperFormat
from .basis import LieBasisElement, Weight, gl_basis, sl_basis
from .services import (
    action_images,
    bracket,
    check_weight,
    combination_images,
    commutator_images,
    derivation_for,
    group_point_test,
    invariance_report,
    is_sl_invariant,
    random_group_point,
    vertex_format,
    weight_report,
)

KRONECKER = Quiver(("a", "b"), (Edge("e1", "a", "b"), Edge("e2", "a", "b")))
LOOP = Quiver(("a",), (Edge("e", "a", "a"),))
TWO_CYCLE = Quiver(("a", "b"), (Edge("e1", "a", "b"), Edge("e2", "b", "a")))
THREE_CYCLE = Quiver(("a", "b", "c"), (Edge("f", "a", "b"), Edge("g", "b", "c"), Edge("h", "c", "a")))


def make_ring(quiver, dims, bits=None):
    alpha = SuperDimVector.build(quiver, dims)
    parity = ParityVector.build(quiver, bits or {v: 0 for v in quiver.vertices})
    return CoordinateRing(quiver, alpha, parity)


def all_parity_vectors(quiver):
    for bits in itertools.product((0, 1), repeat=len(quiver.vertices)):
        yield dict(zip(quiver.vertices, bits))


class BasisTests(SimpleTestCase):
    def test_sizes(self):
        ring = make_ring(KRONECKER, {"a": (1, 1), "b": (2, 1)})
        self.assertEqual(len(gl_basis(ring)), 4 + 9)
        self.assertEqual(len(sl_basis(ring)), 3 + 8)

    def test_sl_elements_are_traceless(self):
        ring = make_ring(LOOP, {"a": (2, 2)})
        self.assertTrue(all(element.supertrace == 0 for element in sl_basis(ring)))
        labels = [str(element) for element in sl_basis(ring).at("a")]
        self.assertIn("E[1,1]-E[2,2]@a", labels)
        self.assertIn("E[2,2]+E[3,3]@a", labels)

    def test_element_parity(self):
        ring = make_ring(LOOP, {"a": (1, 1)})
        odd = LieBasisElement.build(ring.alpha, "a", 1, 2)
        self.assertEqual((odd.parity, odd.supertrace), (1, 0))
        self.assertEqual(LieBasisElement.build(ring.alpha, "a", 2, 2).supertrace, -1)


class ActionTests(SimpleTestCase):
    def test_head_side_row_scaling(self):
        ring = make_ring(KRONECKER, {"a": (2, 0), "b": (2, 0)})
        images = action_images(ring, LieBasisElement.build(ring.alpha, "b", 1, 1))
        for j in (1, 2):
            for edge in ("e1", "e2"):
                self.assertEqual(images[ring.variable(edge, 1, j)], ring.x(edge, 1, j))
                self.assertNotIn(ring.variable(edge, 2, j), images)

    def test_loop_diagonal_cancels(self):
        ring = make_ring(LOOP, {"a": (1, 1)})
        images = action_images(ring, LieBasisElement.build(ring.alpha, "a", 1, 1))
        self.assertNotIn(ring.variable("e", 1, 1), images)

    def test_isolated_vertex(self):
        quiver = Quiver(("a", "z"), (Edge("e", "a", "a"),))
        ring = make_ring(quiver, {"a": (1, 0), "z": (1, 1)})
        self.assertEqual(action_images(ring, LieBasisElement.build(ring.alpha, "z", 1, 2)), {})

    def test_commutator_is_reversed_bracket(self):
        rng = random.Random(12)
        ring = make_ring(TWO_CYCLE, {"a": (2, 1), "b": (1, 1)})
        even = [element for element in gl_basis(ring) if element.parity == 0]
        for _ in range(30):
            first, second = rng.choice(even), rng.choice(even)
            if first.vertex != second.vertex:
                continue
            e1, e2 = first.terms[0][0], second.terms[0][0]
            images = commutator_images(derivation_for(ring, first), derivation_for(ring, second), ring)
            expected = bracket(e2, e1, ring.alpha)
            self.assertEqual(images, combination_images(ring, expected) if expected else {})

    def test_derivations_keep_multidegree(self):
        rng = random.Random(4)
        ring = make_ring(TWO_CYCLE, {"a": (1, 1), "b": (2, 0)})
        degree = MultiDegree(ring.edge_ids, (1, 2))
        for generator in gl_basis(ring):
            f = random_homogeneous_polynomial(ring, degree, rng)
            image = derivation_for(ring, generator)(f)
            if image:
                self.assertEqual(image.multidegree(), degree)


class SignConventionTests(SimpleTestCase):
    CASES = (
        (LOOP, {"a": (1, 1)}),
        (LOOP, {"a": (2, 1)}),
        (TWO_CYCLE, {"a": (1, 1), "b": (2, 1)}),
        (THREE_CYCLE, {"a": (1, 1), "b": (2, 0), "c": (0, 2)}),
    )

    def test_supertraces_are_annihilated(self):
        for quiver, dims in self.CASES:
            for bits in all_parity_vectors(quiver):
                ring = make_ring(quiver, dims, bits)
                basis = gl_basis(ring)
                for path in enumerate_closed_paths(quiver, 3):
                    f = supertrace(path_product(ring, path))
                    with self.subTest(quiver=quiver.vertices, bits=bits, path=str(path)):
                        self.assertEqual(invariance_report(f, basis), "INVARIANT")


class WeightTests(SimpleTestCase):
    def setUp(self):
        self.ring = make_ring(KRONECKER, {"a": (2, 0), "b": (2, 0)})
        self.det = determinant(generic_matrix(self.ring, "e1"))
        self.weight = Weight.build(KRONECKER, {"a": -1, "b": 1})

    def test_det_weight(self):
        self.assertTrue(check_weight(self.det, self.weight))
        self.assertFalse(check_weight(self.det, Weight.zero(KRONECKER)))
        self.assertEqual(weight_report(self.det, self.weight), "WEIGHT a=-1 b=+1")

    def test_single_variable_not_invariant(self):
        f = self.ring.x("e1", 1, 1)
        self.assertFalse(is_sl_invariant(f, sl_basis(self.ring)))
        self.assertTrue(invariance_report(f).startswith("FAIL gen=E["))

    def test_constant(self):
        self.assertTrue(is_sl_invariant(self.ring.constant(5), sl_basis(self.ring)))

    def test_zero_rejected(self):
        with self.assertRaises(ZeroPolynomialError):
            check_weight(self.ring.zero, self.weight)

    def test_supertrace_weight_zero(self):
        ring = make_ring(LOOP, {"a": (1, 1)})
        f = supertrace(path_product(ring, LOOP.path(["e", "e"])))
        self.assertTrue(check_weight(f, Weight.zero(LOOP)))


class GroupPointTests(SimpleTestCase):
    def test_row_scaling(self):
        ring = make_ring(KRONECKER, {"a": (2, 0), "b": (2, 0)})
        det = determinant(generic_matrix(ring, "e1"))
        k = 2
        g = {
            "a": grassmann_matrix(vertex_format(ring, "a"), [[1, 0], [0, 1]], k),
            "b": grassmann_matrix(vertex_format(ring, "b"), [[2, 0], [0, 1]], k),
        }
        point = {var: GrassmannElement.scalar(k, 1 if var.i == var.j else 0) for var in ring.variables}
        self.assertTrue(group_point_test(det, Weight.build(KRONECKER, {"a": -1, "b": 1}), g, point, k))
        self.assertFalse(group_point_test(det, Weight.zero(KRONECKER), g, point, k))

    def test_identity_group_point(self):
        ring = make_ring(LOOP, {"a": (1, 1)})
        f = ring.x("e", 1, 1)
        g = {"a": grassmann_matrix(SuperFormat((1, 1), (1, 1)), [[1, 0], [0, 1]], 2)}
        point = random_grassmann_point(ring, 2, random.Random(1))
        self.assertTrue(group_point_test(f, Weight.zero(LOOP), g, point, 2))

    def test_agrees_with_infinitesimal_check(self):
        rng = random.Random(21)
        ring = make_ring(TWO_CYCLE, {"a": (1, 1), "b": (1, 0)}, {"a": 1, "b": 0})
        f = supertrace(path_product(ring, TWO_CYCLE.path(["e1", "e2"])))
        zero = Weight.zero(TWO_CYCLE)
        self.assertTrue(check_weight(f, zero))
        for _ in range(5):
            g = random_group_point(ring, 3, rng)
            point = random_grassmann_point(ring, 3, rng)
            self.assertTrue(group_point_test(f, zero, g, point, 3))
