import itertools
import random

from django.test import SimpleTestCase, override_settings

from core.exceptions import FormatError, OddEntryError
from quivers.graph import Edge, ParityVector, Quiver, SuperDimVector
from quivers.textformat import parse_quiver
from superalgebra.grassmann import GrassmannElement, evaluate_grassmann
from superalgebra.localization import EvenFraction
from superalgebra.polynomial import CoordinateRing
from superalgebra.sampling import random_grassmann_element, random_invertible_even
from .services import (
    berezinian,
    determinant,
    evaluate_matrix,
    generic_matrix,
    grassmann_berezinian,
    grassmann_inverse,
    grassmann_matrix,
    path_product,
    random_invertible_supermatrix,
    supertrace,
)
from .supermatrix import SuperFormat, SuperMatrix


def loop_ring(even, odd, parity=0):
    quiver = Quiver(("a",), (Edge("e", "a", "a"),))
    return CoordinateRing(
        quiver,
        SuperDimVector.build(quiver, {"a": (even, odd)}),
        ParityVector.build(quiver, {"a": parity}),
    )


class GenericMatrixTests(SimpleTestCase):
    def test_loop_block_parities(self):
        ring = loop_ring(1, 1)
        matrix = generic_matrix(ring, "e")
        parities = [[entry.parity for entry in row] for row in matrix.entries]
        self.assertEqual(parities, [[0, 1], [1, 0]])

    def test_twisted_kronecker(self):
        quiver, alpha, _ = parse_quiver(
            "vertex a sdim 1|1 parity 1\nvertex b sdim 1|1 parity 0\nedge e1 a -> b\nedge e2 a -> b\n"
        )
        twisted = generic_matrix(CoordinateRing(quiver, alpha, ParityVector.build(quiver, {"a": 1, "b": 0})), "e1")
        plain = generic_matrix(CoordinateRing(quiver, alpha, ParityVector.zero(quiver)), "e1")
        for left, right in zip(twisted.entries, plain.entries):
            self.assertEqual([e.parity for e in left], [1 - e.parity for e in right])

    def test_empty_format(self):
        quiver = Quiver(("a", "b"), (Edge("e", "a", "b"),))
        ring = CoordinateRing(
            quiver, SuperDimVector.build(quiver, {"a": (0, 0), "b": (1, 1)}), ParityVector.zero(quiver)
        )
        self.assertEqual(generic_matrix(ring, "e").shape, (2, 0))


class PathProductTests(SimpleTestCase):
    def test_single_edge(self):
        ring = loop_ring(1, 1)
        self.assertEqual(path_product(ring, ring.quiver.path(["e"])), generic_matrix(ring, "e"))

    def test_loop_twice(self):
        ring = loop_ring(1, 0)
        product = path_product(ring, ring.quiver.path(["e", "e"]))
        self.assertEqual(product[0, 0], ring.x("e", 1, 1) ** 2)

    def test_two_step_path(self):
        quiver = Quiver(("a", "b", "c"), (Edge("f", "a", "b"), Edge("g", "b", "c")))
        ring = CoordinateRing(
            quiver, SuperDimVector.build(quiver, {v: (1, 0) for v in "abc"}), ParityVector.zero(quiver)
        )
        product = path_product(ring, quiver.path(["g", "f"]))
        self.assertEqual(product[0, 0], ring.x("g", 1, 1) * ring.x("f", 1, 1))


class SupertraceTests(SimpleTestCase):
    def setUp(self):
        self.ring = loop_ring(1, 1)
        self.X = generic_matrix(self.ring, "e")
        self.x = {(i, j): self.ring.x("e", i, j) for i in (1, 2) for j in (1, 2)}

    def test_identity(self):
        identity = SuperMatrix.identity(SuperFormat((1, 1), (1, 1)), self.ring.one, self.ring.zero)
        self.assertEqual(supertrace(identity), 0)

    def test_generic(self):
        self.assertEqual(supertrace(self.X), self.x[1, 1] - self.x[2, 2])

    def test_square(self):
        x = self.x
        expected = x[1, 1] ** 2 - x[2, 2] ** 2 + x[1, 2] * x[2, 1] * 2
        self.assertEqual(supertrace(self.X @ self.X), expected)

    def test_non_square(self):
        matrix = SuperMatrix.build(SuperFormat((1, 0), (2, 0)), [[self.ring.one, self.ring.one]], self.ring.zero)
        with self.assertRaises(FormatError):
            supertrace(matrix)

    def test_rotation_sign_on_mixed_three_cycle(self):
        quiver = Quiver(("a", "b", "c"), (Edge("f", "a", "b"), Edge("g", "b", "c"), Edge("h", "c", "a")))
        alpha = SuperDimVector.build(quiver, {"a": (1, 1), "b": (2, 0), "c": (0, 2)})
        edges = ("f", "h", "g")
        for bits in itertools.product((0, 1), repeat=3):
            ring = CoordinateRing(quiver, alpha, ParityVector.build(quiver, dict(zip("abc", bits))))
            for shift in range(3):
                current = edges[shift:] + edges[:shift]
                rotated = current[1:] + current[:1]
                first = quiver.edge(current[0])
                # X(e) has parity b(h(e)) + b(t(e)); the rest of a closed path has the same parity
                sign = -1 if (ring.parity[first.head] + ring.parity[first.tail]) % 2 else 1
                with self.subTest(bits=bits, path=current):
                    self.assertEqual(
                        supertrace(path_product(ring, quiver.path(current))),
                        supertrace(path_product(ring, quiver.path(rotated))) * sign,
                    )

    def test_rotation_invariant_without_twist(self):
        quiver = Quiver(("a", "b"), (Edge("e1", "a", "b"), Edge("e2", "b", "a")))
        ring = CoordinateRing(
            quiver,
            SuperDimVector.build(quiver, {"a": (1, 1), "b": (2, 1)}),
            ParityVector.build(quiver, {"a": 0, "b": 0}),
        )
        self.assertEqual(
            supertrace(path_product(ring, quiver.path(["e2", "e1"]))),
            supertrace(path_product(ring, quiver.path(["e1", "e2"]))),
        )


class DeterminantTests(SimpleTestCase):
    def test_small_cases(self):
        ring = loop_ring(2, 0)
        X = generic_matrix(ring, "e")
        x11, x12, x21, x22 = (ring.x("e", i, j) for i, j in ((1, 1), (1, 2), (2, 1), (2, 2)))
        self.assertEqual(determinant(X), x11 * x22 - x12 * x21)
        one = loop_ring(1, 0)
        self.assertEqual(determinant(generic_matrix(one, "e")), one.x("e", 1, 1))

    def test_nilpotent_entries(self):
        ring = loop_ring(1, 1)
        uv = ring.x("e", 1, 2) * ring.x("e", 2, 1)
        matrix = SuperMatrix.build(SuperFormat((2, 0), (2, 0)), [[uv, ring.zero], [ring.zero, uv]], ring.zero)
        self.assertEqual(determinant(matrix), 0)

    def test_odd_entry_rejected(self):
        with self.assertRaises(OddEntryError):
            determinant(generic_matrix(loop_ring(1, 1), "e"))

    def test_bareiss_matches_cofactors(self):
        ring = loop_ring(5, 0)
        X = generic_matrix(ring, "e")
        fraction_free = determinant(X)
        with override_settings(SUPERQUIVER_BAREISS_THRESHOLD=10):
            cofactor = determinant(X)
        self.assertEqual(fraction_free, cofactor)
        self.assertEqual(len(cofactor), 120)

    def test_commutes_with_evaluation(self):
        rng = random.Random(1)
        ring = loop_ring(2, 0)
        X = generic_matrix(ring, "e")
        for _ in range(10):
            point = {var: random_grassmann_element(3, rng, 0) for var in ring.variables}
            self.assertEqual(
                determinant(evaluate_matrix(X, point, 3)),
                evaluate_grassmann(determinant(X), point, 3),
            )


class BerezinianTests(SimpleTestCase):
    def test_one_one(self):
        ring = loop_ring(1, 1)
        a, beta, gamma, d = (ring.x("e", i, j) for i, j in ((1, 1), (1, 2), (2, 1), (2, 2)))
        expected = EvenFraction.from_polynomial(a).divide(d) - EvenFraction.from_polynomial(beta * gamma).divide(d, 2)
        self.assertEqual(berezinian(generic_matrix(ring, "e")), expected)

    def test_degenerations(self):
        even = loop_ring(2, 0)
        X = generic_matrix(even, "e")
        self.assertEqual(berezinian(X), EvenFraction.from_polynomial(determinant(X)))
        odd = loop_ring(0, 2)
        Y = generic_matrix(odd, "e")
        self.assertEqual(berezinian(Y), EvenFraction.from_polynomial(odd.one).divide(determinant(Y)))

    def test_empty_is_one(self):
        ring = loop_ring(0, 0)
        self.assertEqual(berezinian(generic_matrix(ring, "e")), EvenFraction.from_polynomial(ring.one))

    def test_lambda_two_point(self):
        t1, t2 = GrassmannElement.generator(2, 1), GrassmannElement.generator(2, 2)
        g = grassmann_matrix(SuperFormat((1, 1), (1, 1)), [[1, t1], [t2, 1]], 2)
        self.assertEqual(grassmann_berezinian(g), 1 - t1 * t2)

    def test_multiplicative(self):
        rng = random.Random(42)
        for fmt in (SuperFormat((1, 1), (1, 1)), SuperFormat((2, 1), (2, 1))):
            for _ in range(20):
                g = random_invertible_supermatrix(fmt, 4, rng)
                h = random_invertible_supermatrix(fmt, 4, rng)
                self.assertEqual(grassmann_berezinian(g @ h), grassmann_berezinian(g) * grassmann_berezinian(h))

    def test_inverse(self):
        rng = random.Random(8)
        fmt = SuperFormat((2, 1), (2, 1))
        g = random_invertible_supermatrix(fmt, 4, rng)
        identity = SuperMatrix.identity(fmt, GrassmannElement.one(4), GrassmannElement.zero(4))
        self.assertEqual(g @ grassmann_inverse(g), identity)
        self.assertEqual(grassmann_inverse(g) @ g, identity)

    def test_symbolic_matches_point(self):
        rng = random.Random(17)
        ring = loop_ring(1, 1)
        X = generic_matrix(ring, "e")
        for _ in range(10):
            point = {
                var: random_invertible_even(3, rng) if var.parity == 0 else random_grassmann_element(3, rng, 1)
                for var in ring.variables
            }
            self.assertEqual(berezinian(X).evaluate(point, 3), grassmann_berezinian(evaluate_matrix(X, point, 3)))
