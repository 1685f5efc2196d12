import random

from django.test import SimpleTestCase, override_settings
from sympy.polys.domains import QQ

from core.exceptions import (
    JobReferenceError,
    JobSyntaxError,
    NonInvertibleError,
    OddDenominatorError,
    ParityError,
    ResourceCapExceeded,
    ZeroPolynomialError,
)
from quivers.graph import MultiDegree, ParityVector
from quivers.textformat import parse_quiver
from .grassmann import GrassmannElement, evaluate_grassmann
from .localization import EvenFraction, fraction_arith
from .polynomial import CoordinateRing, Derivation, derivation_apply, substitute
from .sampling import random_grassmann_point, random_homogeneous_polynomial
from .textformat import format_polynomial, parse_polynomial

LOOP = """
vertex a sdim 1|1 parity 0
edge e a -> a
"""

KRONECKER = """
vertex a sdim 2|1 parity 0
vertex b sdim 1|1 parity 1
edge e1 a -> b
edge e2 a -> b
"""


def loop_ring():
    return CoordinateRing(*parse_quiver(LOOP))


def random_derivation(ring, parity, rng):
    images = {}
    for var in ring.variables:
        wanted = (var.parity + parity) % 2
        candidates = [other for other in ring.variables if other.parity == wanted]
        image = ring.zero
        for other in rng.sample(candidates, min(2, len(candidates))):
            image = image + ring.gen(other) * rng.randint(-2, 2)
        images[var] = image
    return Derivation(images, parity)


def random_polynomial(ring, rng, parity=None):
    values = tuple(rng.randint(0, 2) for _ in ring.edge_ids)
    return random_homogeneous_polynomial(ring, ring.multidegree(values), rng, terms=2, parity=parity)


class VariableTests(SimpleTestCase):
    def test_loop_parities(self):
        ring = loop_ring()
        parities = {(v.i, v.j): v.parity for v in ring.variables}
        self.assertEqual(parities, {(1, 1): 0, (1, 2): 1, (2, 1): 1, (2, 2): 0})

    def test_parity_twist_flips_kronecker(self):
        quiver, alpha, parity = parse_quiver(KRONECKER)
        twisted = CoordinateRing(quiver, alpha, parity)
        plain = CoordinateRing(quiver, alpha, ParityVector.zero(quiver))
        for left, right in zip(twisted.variables, plain.variables):
            self.assertEqual(left.parity, 1 - right.parity)


class MultiplicationTests(SimpleTestCase):
    def setUp(self):
        self.ring = loop_ring()
        self.x = self.ring.x("e", 1, 1)
        self.u = self.ring.x("e", 1, 2)
        self.v = self.ring.x("e", 2, 1)

    def test_odd_anticommute(self):
        self.assertEqual(self.u * self.v, -(self.v * self.u))
        self.assertFalse(self.u * self.u)

    def test_square_of_sum(self):
        self.assertEqual((self.x + self.u) * (self.x - self.u), self.x ** 2)

    def test_parse_applies_koszul_sign(self):
        parsed = parse_polynomial(self.ring, "x[e,2,1] * x[e,1,2]")
        self.assertEqual(parsed, -(self.u * self.v))
        self.assertEqual(format_polynomial(parsed), "-x[e,1,2] * x[e,2,1]")

    def test_format_round_trip(self):
        f = parse_polynomial(self.ring, "1/2 * x[e,1,1]^2 - 3 + 2*x[e,1,2]*x[e,2,1]")
        self.assertEqual(parse_polynomial(self.ring, format_polynomial(f)), f)

    def test_parse_errors_carry_position(self):
        with self.assertRaises(JobReferenceError) as ctx:
            parse_polynomial(self.ring, "x[e,1,1] + x[e,3,1]", line=4, column=10)
        self.assertEqual((ctx.exception.line, ctx.exception.column), (4, 21))
        with self.assertRaises(JobSyntaxError):
            parse_polynomial(self.ring, "x[e,1,1] x[e,2,2]")

    def test_random_ring_axioms(self):
        rng = random.Random(2024)
        quiver, alpha, parity = parse_quiver(KRONECKER)
        ring = CoordinateRing(quiver, alpha, parity)
        for _ in range(1000):
            pf, pg = rng.randint(0, 1), rng.randint(0, 1)
            f = random_polynomial(ring, rng, pf)
            g = random_polynomial(ring, rng, pg)
            h = random_polynomial(ring, rng)
            sign = -1 if pf * pg else 1
            self.assertEqual(f * g, g * f * sign)
            self.assertEqual((f * g) * h, f * (g * h))
            self.assertEqual(f * (g + h), f * g + f * h)
            product = f * g
            if product:
                self.assertEqual(
                    product.multidegree().values,
                    tuple(a + b for a, b in zip(f.multidegree().values, g.multidegree().values)),
                )


class DerivationTests(SimpleTestCase):
    def setUp(self):
        self.ring = loop_ring()
        self.x = self.ring.x("e", 1, 1)
        self.u = self.ring.x("e", 1, 2)
        self.v = self.ring.x("e", 2, 1)

    def test_even_partial(self):
        var = self.ring.variable("e", 1, 1)
        self.assertEqual(derivation_apply({var: self.ring.one}, 0, self.x ** 2), self.x * 2)

    def test_odd_derivation_signs(self):
        images = {self.ring.variable("e", 1, 2): self.x}
        self.assertEqual(derivation_apply(images, 1, self.u * self.v), self.x * self.v)
        self.assertEqual(derivation_apply(images, 1, self.v * self.u), -(self.x * self.v))

    def test_wrong_image_parity(self):
        with self.assertRaises(ParityError):
            Derivation({self.ring.variable("e", 1, 2): self.x}, 0)

    def test_random_leibniz(self):
        rng = random.Random(99)
        quiver, alpha, parity = parse_quiver(KRONECKER)
        ring = CoordinateRing(quiver, alpha, parity)
        for _ in range(1000):
            d_parity = rng.randint(0, 1)
            D = random_derivation(ring, d_parity, rng)
            pf = rng.randint(0, 1)
            f = random_polynomial(ring, rng, pf)
            g = random_polynomial(ring, rng)
            sign = -1 if d_parity * pf else 1
            self.assertEqual(D(f * g), D(f) * g + f * D(g) * sign)


class GrassmannTests(SimpleTestCase):
    def setUp(self):
        self.ring = loop_ring()
        self.u = self.ring.x("e", 1, 2)
        self.v = self.ring.x("e", 2, 1)
        self.u_var = self.ring.variable("e", 1, 2)
        self.v_var = self.ring.variable("e", 2, 1)
        self.t1 = GrassmannElement.generator(2, 1)
        self.t2 = GrassmannElement.generator(2, 2)

    def test_product_of_odd_values(self):
        f = self.u * self.v
        self.assertEqual(evaluate_grassmann(f, {self.u_var: self.t1, self.v_var: self.t2}, 2), self.t1 * self.t2)
        self.assertEqual(evaluate_grassmann(f, {self.u_var: self.t2, self.v_var: self.t1}, 2), -(self.t1 * self.t2))

    def test_square_with_nilpotent(self):
        var = self.ring.variable("e", 1, 1)
        value = evaluate_grassmann(self.ring.x("e", 1, 1) ** 2, {var: 1 + self.t1 * self.t2}, 2)
        self.assertEqual(value, 1 + self.t1 * self.t2 * 2)

    def test_parity_mismatch(self):
        with self.assertRaises(ParityError):
            evaluate_grassmann(self.u, {self.u_var: GrassmannElement.one(2)}, 2)

    def test_inverse(self):
        element = 3 + self.t1 * self.t2
        self.assertEqual(element * element.inverse(), 1)
        with self.assertRaises(NonInvertibleError):
            (self.t1 * self.t2).inverse()

    @override_settings(SUPERQUIVER_GRASSMANN_MAX_GENERATORS=3)
    def test_generator_cap(self):
        with self.assertRaises(ResourceCapExceeded):
            GrassmannElement.zero(4)

    def test_evaluation_is_homomorphism(self):
        rng = random.Random(5)
        quiver, alpha, parity = parse_quiver(KRONECKER)
        ring = CoordinateRing(quiver, alpha, parity)
        for _ in range(100):
            k = rng.randint(1, 4)
            point = random_grassmann_point(ring, k, rng)
            pf = rng.randint(0, 1)
            f = random_polynomial(ring, rng, pf)
            g = random_polynomial(ring, rng)
            left = evaluate_grassmann(f * g, point, k)
            self.assertEqual(left, evaluate_grassmann(f, point, k) * evaluate_grassmann(g, point, k))
            self.assertEqual(
                evaluate_grassmann(f + g, point, k),
                evaluate_grassmann(f, point, k) + evaluate_grassmann(g, point, k),
            )
            if f:
                self.assertIn(evaluate_grassmann(f, point, k).parity, (pf, 0))


class FractionTests(SimpleTestCase):
    def setUp(self):
        self.ring = loop_ring()
        self.x = self.ring.x("e", 1, 1)
        self.y = self.ring.x("e", 2, 2)
        self.u = self.ring.x("e", 1, 2)

    def test_common_denominator(self):
        a = EvenFraction.from_polynomial(self.x).divide(self.y)
        b = EvenFraction.from_polynomial(self.x ** 2).divide(self.y)
        total = fraction_arith(a, b, "+")
        self.assertEqual(total, EvenFraction.from_polynomial(self.x + self.x ** 2).divide(self.y))
        self.assertEqual(len(total.denominator_factors), 1)

    def test_product_and_cancellation(self):
        a = EvenFraction.from_polynomial(self.x).divide(self.y)
        product = fraction_arith(a, EvenFraction.from_polynomial(self.y), "*")
        self.assertTrue(product.is_polynomial())
        self.assertEqual(product.to_polynomial(), self.x)

    def test_odd_denominator_rejected(self):
        with self.assertRaises(OddDenominatorError):
            EvenFraction.from_polynomial(self.x).divide(self.u * self.ring.x("e", 2, 1))

    def test_constructor_checks_denominators(self):
        with self.assertRaises(OddDenominatorError):
            EvenFraction(self.ring, ((self.x, 1),), ((self.u * self.ring.x("e", 2, 1), 1),))
        with self.assertRaises(ZeroPolynomialError):
            EvenFraction(self.ring, ((self.x, 1),), ((self.ring.zero, 1),))
        self.assertEqual(EvenFraction(self.ring, ((self.x, 1),), ((self.y, 1),)).denominator, self.y)

    def test_evaluate(self):
        x_var, y_var = self.ring.variable("e", 1, 1), self.ring.variable("e", 2, 2)
        fraction = EvenFraction.from_polynomial(self.x).divide(self.y, 2)
        value = fraction.evaluate({x_var: GrassmannElement.scalar(1, 6), y_var: GrassmannElement.scalar(1, 2)}, 1)
        self.assertEqual(value, QQ(3, 2))


class SubstitutionTests(SimpleTestCase):
    def test_homomorphism(self):
        rng = random.Random(3)
        ring = loop_ring()
        x, y = ring.variable("e", 1, 1), ring.variable("e", 2, 2)
        images = {x: ring.x("e", 1, 1) + 1, y: ring.x("e", 1, 1) * 2}
        for _ in range(50):
            f, g = random_polynomial(ring, rng), random_polynomial(ring, rng)
            self.assertEqual(
                substitute(f * g, images, ring),
                substitute(f, images, ring) * substitute(g, images, ring),
            )

    def test_components_and_parameters(self):
        ring = loop_ring().with_parameters(["s"])
        x = ring.x("e", 1, 1)
        f = x * ring.par("s") + x ** 2 + 1
        components = f.homogeneous_components()
        self.assertEqual([degree.values for degree in components], [(0,), (1,), (2,)])
        split = f.coefficient_in_parameters()
        self.assertEqual(len(split), 2)
        self.assertEqual(f.multidegree(), None)
        self.assertEqual(MultiDegree(("e",), (1,)), (x * ring.par("s")).multidegree())
