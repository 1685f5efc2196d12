import random

from django.test import SimpleTestCase

from core.exceptions import JobReferenceError, JobSyntaxError, NormalizationError, PathError
from .graph import Edge, MultiDegree, ParityVector, Quiver, SuperDimVector
from .services import (
    classify_vertex,
    double_all,
    double_edges,
    double_representation,
    enumerate_closed_paths,
    euler_form,
    is_acyclic,
    kirchhoff_ok,
    normalize_at,
    normalize_extremal,
    parity_shift,
    polarize_quiver,
    ringel_form,
)
from .textformat import format_quiver, parse_dim_vector, parse_multidegree, parse_quiver

LOOP = """
vertex a sdim 1|1 parity 0
edge e a -> a
"""

KRONECKER = """
vertex a sdim 1|1 parity 0   # source
vertex b sdim 2|0 parity 0
edge e1 a -> b
edge e2 a -> b
"""

TWO_CYCLE = """
vertex a sdim 1|1 parity 0
vertex b sdim 1|1 parity 0
edge e1 a -> b
edge e2 b -> a
"""


def random_vector(quiver, rng):
    return SuperDimVector.build(quiver, {v: (rng.randint(0, 3), rng.randint(0, 3)) for v in quiver.vertices})


class ClosedPathTests(SimpleTestCase):
    def test_loop_paths(self):
        quiver, _, _ = parse_quiver(LOOP)
        paths = enumerate_closed_paths(quiver, 2)
        self.assertEqual([p.edges for p in paths], [("e",), ("e", "e")])
        self.assertTrue(all(p.closed for p in paths))

    def test_kronecker_is_acyclic(self):
        quiver, _, _ = parse_quiver(KRONECKER)
        self.assertEqual(enumerate_closed_paths(quiver, 4), [])
        self.assertTrue(is_acyclic(quiver))

    def test_two_cycle_reported_once(self):
        quiver, _, _ = parse_quiver(TWO_CYCLE)
        paths = enumerate_closed_paths(quiver, 2)
        self.assertEqual([p.edges for p in paths], [("e1", "e2")])
        self.assertEqual(len(enumerate_closed_paths(quiver, 4)), 2)
        self.assertFalse(is_acyclic(quiver))

    def test_incompatible_edges_rejected(self):
        quiver, _, _ = parse_quiver(KRONECKER)
        with self.assertRaises(PathError):
            quiver.path(["e1", "e2"])


class RingelFormTests(SimpleTestCase):
    def test_edgeless(self):
        quiver = Quiver(("a",))
        alpha = SuperDimVector.build(quiver, {"a": (1, 0)})
        self.assertEqual(ringel_form(quiver, alpha, alpha), 1)

    def test_kronecker(self):
        quiver, _, _ = parse_quiver(KRONECKER)
        alpha = parse_dim_vector(quiver, "a=1|1,b=1|1")
        self.assertEqual(ringel_form(quiver, alpha, alpha), -4)
        self.assertEqual(ringel_form(quiver, SuperDimVector.zero(quiver), alpha), 0)

    def test_bilinear_and_shift_invariant(self):
        rng = random.Random(7)
        quiver, _, _ = parse_quiver(TWO_CYCLE)
        for _ in range(50):
            alpha, other, beta = (random_vector(quiver, rng) for _ in range(3))
            parity = ParityVector.build(quiver, {v: rng.randint(0, 1) for v in quiver.vertices})
            self.assertEqual(
                ringel_form(quiver, alpha + other, beta),
                ringel_form(quiver, alpha, beta) + ringel_form(quiver, other, beta),
            )
            self.assertEqual(
                ringel_form(quiver, parity_shift(alpha, parity), parity_shift(beta, parity)),
                ringel_form(quiver, alpha, beta),
            )

    def test_doubled_quiver_euler_form(self):
        rng = random.Random(11)
        quiver, _, _ = parse_quiver(KRONECKER)
        for _ in range(20):
            alpha, beta = random_vector(quiver, rng), random_vector(quiver, rng)
            doubled, dims_a = double_all(quiver, alpha)
            _, dims_b = double_all(quiver, beta)
            self.assertEqual(euler_form(doubled, dims_a, dims_b), ringel_form(quiver, alpha, beta))


class VertexTests(SimpleTestCase):
    def test_classify_kronecker(self):
        quiver, alpha, _ = parse_quiver(KRONECKER)
        source = classify_vertex(quiver, alpha, "a")
        self.assertTrue(source.source)
        self.assertFalse(source.sink)
        self.assertFalse(source.extremal)
        sink = classify_vertex(quiver, alpha, "b")
        self.assertTrue(sink.sink and sink.extremal)

    def test_loop_vertex(self):
        quiver, alpha, _ = parse_quiver(LOOP)
        info = classify_vertex(quiver, alpha, "a")
        self.assertFalse(info.source or info.sink)
        self.assertTrue(kirchhoff_ok(quiver, "a"))

    def test_kirchhoff(self):
        kronecker, _, _ = parse_quiver(KRONECKER)
        cycle, _, _ = parse_quiver(TWO_CYCLE)
        self.assertFalse(kirchhoff_ok(kronecker, "a"))
        self.assertTrue(kirchhoff_ok(cycle, "b"))


class DoublingTests(SimpleTestCase):
    def test_double_edges(self):
        quiver, _, _ = parse_quiver(LOOP)
        doubled = double_edges(quiver)
        self.assertEqual([(e.id, e.label) for e in doubled.edges], [("e_0", 0), ("e_1", 1)])
        kronecker, _, _ = parse_quiver(KRONECKER)
        self.assertEqual(len(double_edges(kronecker).edges), 4)
        edgeless = Quiver(("a",))
        self.assertEqual(double_edges(edgeless), edgeless)

    def test_double_all(self):
        quiver = Quiver(("a",))
        doubled, dims = double_all(quiver, SuperDimVector.build(quiver, {"a": (2, 1)}))
        self.assertEqual(doubled.vertices, ("a_0", "a_1"))
        self.assertEqual(dims, {"a_0": 2, "a_1": 1})
        kronecker, alpha, _ = parse_quiver(KRONECKER)
        doubled, _ = double_all(kronecker, alpha)
        self.assertEqual((len(doubled.vertices), len(doubled.edges)), (4, 8))

    def test_double_representation_blocks(self):
        quiver, alpha, _ = parse_quiver(LOOP)
        blocks = double_representation(quiver, alpha, {"e": [[1, 2], [3, 4]]})
        self.assertEqual(blocks["e_00"], [[1]])
        self.assertEqual(blocks["e_01"], [[3]])
        self.assertEqual(blocks["e_10"], [[2]])
        self.assertEqual(blocks["e_11"], [[4]])

    def test_polarize_quiver(self):
        quiver, _, _ = parse_quiver(KRONECKER)
        polarized = polarize_quiver(quiver, MultiDegree.build(quiver, {"e1": 3}))
        self.assertEqual([e.id for e in polarized.edges], ["e1_1", "e1_2", "e1_3"])
        self.assertTrue(all(e.origin == "e1" for e in polarized.edges))
        loop, _, _ = parse_quiver(LOOP)
        self.assertEqual(len(polarize_quiver(loop, MultiDegree.build(loop, {"e": 2})).edges), 2)


class NormalizationTests(SimpleTestCase):
    def setUp(self):
        self.quiver = Quiver(("a", "b", "c"), (Edge("f", "a", "b"), Edge("g", "b", "c")))
        self.alpha = SuperDimVector.build(self.quiver, {"a": (1, 0), "b": (0, 2), "c": (1, 0)})
        self.parity = ParityVector.zero(self.quiver)

    def test_normalize_middle_vertex(self):
        step = normalize_at(self.quiver, self.alpha, self.parity, "b")
        self.assertEqual(step.quiver.vertices, ("a", "b", "b'", "c"))
        self.assertEqual(
            [str(e) for e in step.quiver.edges],
            ["f: a -> b'", "g: b -> c", "e(b): b' -> b"],
        )
        self.assertEqual(step.alpha["b'"], (0, 2))
        self.assertEqual(len(step.quiver.in_edges("b")), 1)

    def test_normalize_loop(self):
        quiver, alpha, parity = parse_quiver(LOOP)
        step = normalize_at(quiver, alpha, parity, "a")
        self.assertEqual([str(e) for e in step.quiver.edges], ["e: a -> a'", "e(a): a' -> a"])
        self.assertEqual(len(enumerate_closed_paths(step.quiver, 2)), 1)

    def test_source_rejected(self):
        with self.assertRaises(NormalizationError):
            normalize_at(self.quiver, self.alpha, self.parity, "a")

    def test_normalize_extremal_skips_ordinary(self):
        steps = normalize_extremal(self.quiver, self.alpha, self.parity)
        self.assertEqual([s.vertex for s in steps], ["b"])
        ordinary = SuperDimVector.build(self.quiver, {"a": (1, 0), "b": (1, 1), "c": (1, 0)})
        self.assertEqual(normalize_extremal(self.quiver, ordinary, self.parity), [])


class TextFormatTests(SimpleTestCase):
    def test_round_trip(self):
        quiver, alpha, parity = parse_quiver(KRONECKER)
        self.assertEqual(parse_quiver(format_quiver(quiver, alpha, parity)), (quiver, alpha, parity))

    def test_unknown_vertex_located(self):
        with self.assertRaises(JobReferenceError) as ctx:
            parse_quiver("vertex a sdim 1|0 parity 0\nedge e a -> z\n")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (2, 13))

    def test_bad_parity(self):
        with self.assertRaises(JobSyntaxError) as ctx:
            parse_quiver("vertex a sdim 1|1 parity 2\n")
        self.assertEqual(ctx.exception.line, 1)

    def test_multidegree(self):
        quiver, _, _ = parse_quiver(KRONECKER)
        degree = parse_multidegree(quiver, "e2=2")
        self.assertEqual(degree.values, (0, 2))
        self.assertEqual(str(degree), "e1=0,e2=2")
        with self.assertRaises(JobReferenceError):
            parse_multidegree(quiver, "e3=1")
