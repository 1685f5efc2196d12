import csv
import itertools
import os
import random
import tempfile

from django.test import SimpleTestCase, TestCase, override_settings
from sympy.polys.domains import QQ

from core.exceptions import DimensionMismatchError, JobReferenceError, JobSyntaxError
from lie.basis import Weight
from lie.services import check_weight, group_point_test, random_group_point
from quivers.graph import Edge, MultiDegree, ParityVector, Quiver, SuperDimVector
from superalgebra.polynomial import CoordinateRing
from superalgebra.sampling import random_grassmann_point
from .exports import export_csv, export_xlsx
from .homext import ConcreteSuperRep, doubled_hom_dim, hom_dim, hom_ext_dims, parse_rep, random_rep
from .linalg import dense_rank, nullity, nullspace
from .models import ComponentRecord, OracleRun
from .services import (
    INCONCLUSIVE,
    PASS,
    ComponentReport,
    analyse_component,
    component_basis,
    expected_basis_size,
    generator_span_dim,
    invariant_dim,
    run_components,
    semi_invariant_dim,
    weight_space_basis,
    weight_space_dim,
)

KRONECKER = Quiver(("a", "b"), (Edge("e1", "a", "b"), Edge("e2", "a", "b")))
LOOP = Quiver(("a",), (Edge("e", "a", "a"),))
TWO_CYCLE = Quiver(("a", "b"), (Edge("e1", "a", "b"), Edge("e2", "b", "a")))
A3 = Quiver(("a", "b", "c"), (Edge("f", "a", "b"), Edge("g", "b", "c")))
POINT = Quiver(("a",), ())


def make_ring(quiver, dims, bits=None):
    alpha = SuperDimVector.build(quiver, dims)
    parity = ParityVector.build(quiver, bits or {v: 0 for v in quiver.vertices})
    return CoordinateRing(quiver, alpha, parity)


def degree(ring, **values):
    return MultiDegree.build(ring.quiver, values)


class LinalgTests(SimpleTestCase):
    def test_dense_rank(self):
        self.assertEqual(dense_rank([[1, 2], [2, 4]]), 1)
        self.assertEqual(dense_rank([[1, 2], [1, 5]]), 2)
        self.assertEqual(dense_rank([]), 0)

    def test_nullity_with_fractions(self):
        rows = [{0: QQ(1, 2), 1: QQ(1, 3)}, {0: QQ(3), 1: QQ(2)}]
        self.assertEqual(nullity(rows, 3), 2)

    def test_nullspace_vectors(self):
        rows = [{0: QQ(1), 1: QQ(-1)}]
        vectors = nullspace(rows, 3)
        self.assertEqual(len(vectors), 2)
        for vector in vectors:
            self.assertEqual(vector.get(0, QQ(0)) - vector.get(1, QQ(0)), 0)
        self.assertEqual(nullspace([], 2), [{0: QQ(1)}, {1: QQ(1)}])


class ComponentBasisTests(SimpleTestCase):
    def test_examples(self):
        loop = make_ring(LOOP, {"a": (1, 0)})
        self.assertEqual(len(component_basis(loop, degree(loop, e=2))), 1)
        loop = make_ring(LOOP, {"a": (1, 1)})
        self.assertEqual(len(component_basis(loop, degree(loop, e=1))), 4)
        loop = make_ring(LOOP, {"a": (0, 2)})
        self.assertEqual(len(component_basis(loop, degree(loop, e=2))), 10)

    def test_size_formula(self):
        for dims, bits in (({"a": (1, 1), "b": (2, 1)}, {"a": 0, "b": 1}), ({"a": (0, 2), "b": (1, 0)}, None)):
            ring = make_ring(KRONECKER, dims, bits)
            for values in itertools.product(range(3), repeat=2):
                n = ring.multidegree(values)
                basis = component_basis(ring, n)
                self.assertEqual(len(basis), expected_basis_size(ring, n))
                self.assertEqual(list(basis.monomials), sorted(set(basis.monomials)))

    def test_odd_variables_cap_the_degree(self):
        ring = make_ring(LOOP, {"a": (1, 0)}, {"a": 0})
        odd_edge = CoordinateRing(KRONECKER, SuperDimVector.build(KRONECKER, {"a": (1, 0), "b": (0, 1)}), ParityVector.zero(KRONECKER))
        self.assertEqual(len(component_basis(odd_edge, degree(odd_edge, e1=2))), 0)
        self.assertEqual(len(component_basis(ring, degree(ring, e=3))), 1)

    @override_settings(SUPERQUIVER_MONOMIAL_CAP=3)
    def test_cap_reports_inconclusive(self):
        ring = make_ring(LOOP, {"a": (1, 1)})
        report = analyse_component(ring, degree(ring, e=1), compare_maxlen=1)
        self.assertEqual(report.verdict, INCONCLUSIVE)
        self.assertIsNone(report.ssi_dim)


class KernelTests(SimpleTestCase):
    def test_constants(self):
        ring = make_ring(KRONECKER, {"a": (1, 1), "b": (1, 1)})
        zero = MultiDegree.zero(KRONECKER)
        self.assertEqual(semi_invariant_dim(ring, zero), 1)
        self.assertEqual(invariant_dim(ring, zero), 1)
        self.assertEqual(generator_span_dim(ring, zero, 1), 1)

    def test_ordinary_kronecker_has_only_constants(self):
        ring = make_ring(KRONECKER, {"a": (1, 1), "b": (1, 1)})
        self.assertEqual(semi_invariant_dim(ring, degree(ring, e1=1, e2=1)), 0)
        self.assertEqual(generator_span_dim(ring, degree(ring, e1=1, e2=1), 2), 0)

    def test_classical_kronecker(self):
        ring = make_ring(KRONECKER, {"a": (2, 0), "b": (2, 0)})
        n = degree(ring, e1=1, e2=1)
        self.assertEqual(semi_invariant_dim(ring, n), 1)
        self.assertEqual(invariant_dim(ring, n), 0)
        self.assertEqual(generator_span_dim(ring, n, 2), 1)

    def test_loop_supertrace(self):
        ring = make_ring(LOOP, {"a": (1, 1)})
        self.assertEqual(invariant_dim(ring, degree(ring, e=1)), 1)
        n = degree(ring, e=2)
        self.assertEqual(semi_invariant_dim(ring, n), 2)
        self.assertEqual(generator_span_dim(ring, n, 2), 2)

    def test_loop_completeness(self):
        ring = make_ring(LOOP, {"a": (1, 1)})
        for total in range(1, 5):
            n = degree(ring, e=total)
            ssi = semi_invariant_dim(ring, n)
            self.assertEqual(generator_span_dim(ring, n, total), ssi, total)
            self.assertLessEqual(invariant_dim(ring, n), ssi)

    def test_two_cycle_completeness(self):
        ring = make_ring(TWO_CYCLE, {"a": (1, 1), "b": (1, 1)})
        for values in ((1, 0), (1, 1), (2, 1), (1, 2)):
            n = ring.multidegree(values)
            self.assertEqual(generator_span_dim(ring, n, sum(values)), semi_invariant_dim(ring, n), values)

    def test_two_cycle_weighted_semi_invariants(self):
        ring = make_ring(TWO_CYCLE, {"a": (1, 1), "b": (1, 1)})
        n = ring.multidegree((2, 2))
        basis = component_basis(ring, n)
        self.assertEqual(semi_invariant_dim(ring, n, basis=basis), 4)
        self.assertEqual(invariant_dim(ring, n, basis=basis), 2)
        self.assertEqual(generator_span_dim(ring, n, 4, basis=basis), 2)
        weights = [Weight.build(TWO_CYCLE, {"a": a, "b": b}) for a, b in ((0, 0), (-1, 1), (1, -1))]
        self.assertEqual([weight_space_dim(ring, n, weight, basis=basis) for weight in weights], [2, 1, 1])
        rng = random.Random(8)
        for weight in weights[1:]:
            (f,) = weight_space_basis(ring, n, weight, basis=basis)
            self.assertTrue(check_weight(f, weight))
            for _ in range(3):
                g = random_group_point(ring, 3, rng)
                self.assertTrue(group_point_test(f, weight, g, random_grassmann_point(ring, 3, rng), 3))

    def test_classical_weight_space(self):
        ring = make_ring(KRONECKER, {"a": (2, 0), "b": (2, 0)})
        n = degree(ring, e1=1, e2=1)
        self.assertEqual(weight_space_dim(ring, n, Weight.build(KRONECKER, {"a": -1, "b": 1})), 1)
        self.assertEqual(weight_space_dim(ring, n, Weight.zero(KRONECKER)), 0)

    def test_acyclic_without_extremal_vertices(self):
        for dims in ({"a": (1, 1), "b": (1, 1)}, {"a": (2, 1), "b": (1, 2)}):
            for bits in itertools.product((0, 1), repeat=2):
                ring = make_ring(KRONECKER, dims, dict(zip("ab", bits)))
                for values in ((1, 0), (1, 1), (0, 2)):
                    self.assertEqual(semi_invariant_dim(ring, ring.multidegree(values)), 0, (dims, bits, values))

    def test_parity_vector_does_not_change_loop_dimensions(self):
        dims = []
        for bit in (0, 1):
            ring = make_ring(LOOP, {"a": (1, 1)}, {"a": bit})
            dims.append([semi_invariant_dim(ring, degree(ring, e=total)) for total in (1, 2)])
        self.assertEqual(dims[0], dims[1])

    def test_normalized_extremal_vertex(self):
        ring = make_ring(LOOP, {"a": (1, 0)})
        n = degree(ring, e=2)
        self.assertEqual(semi_invariant_dim(ring, n), 1)
        self.assertEqual(generator_span_dim(ring, n, 2), 1)


class RunComponentsTests(SimpleTestCase):
    def setUp(self):
        self.ring = make_ring(LOOP, {"a": (1, 1)})
        self.degrees = [degree(self.ring, e=2), degree(self.ring, e=1)]

    def test_inline_order(self):
        reports = run_components(self.ring, self.degrees, compare_maxlen=2)
        self.assertEqual([report.degree.values for report in reports], [(1,), (2,)])
        self.assertEqual(reports[1].line(), "oracle e=2: basis=8 ssi=2 si=2 span=2 PASS")

    @override_settings(SUPERQUIVER_ORACLE_DISPATCH="celery")
    def test_celery_dispatch_matches_inline(self):
        eager = run_components(self.ring, self.degrees, compare_maxlen=2)
        with self.settings(SUPERQUIVER_ORACLE_DISPATCH="inline"):
            inline = run_components(self.ring, self.degrees, compare_maxlen=2)
        self.assertEqual([r.as_row() for r in eager], [r.as_row() for r in inline])

    def test_payload_round_trip(self):
        report = analyse_component(self.ring, degree(self.ring, e=1))
        self.assertEqual(ComponentReport.from_payload(report.to_payload()), report)
        self.assertEqual(report.verdict, "-")


class HomExtTests(SimpleTestCase):
    def test_simple_on_edgeless_quiver(self):
        alpha = SuperDimVector.build(POINT, {"a": (1, 0)})
        simple = ConcreteSuperRep.build(POINT, alpha, {})
        self.assertEqual(tuple(hom_ext_dims(simple, simple)), (1, 0, 1))

    def test_kronecker_identity_maps(self):
        alpha = SuperDimVector.build(KRONECKER, {"a": (1, 0), "b": (1, 0)})
        rep = ConcreteSuperRep.build(KRONECKER, alpha, {"e1": [[1]], "e2": [[1]]})
        result = hom_ext_dims(rep, rep)
        self.assertEqual((result.hom, result.ext), (1, 1))

    def test_loop_zero_maps(self):
        alpha = SuperDimVector.build(LOOP, {"a": (1, 1)})
        rep = ConcreteSuperRep.build(LOOP, alpha, {})
        result = hom_ext_dims(rep, rep)
        self.assertEqual((result.hom, result.ext), (2, 4))

    def test_ringel_formula_on_random_reps(self):
        rng = random.Random(2024)
        checked = 0
        for quiver in (KRONECKER, LOOP, A3):
            for _ in range(8):
                alpha = SuperDimVector.build(quiver, {v: (rng.randint(0, 2), rng.randint(0, 2)) for v in quiver.vertices})
                beta = SuperDimVector.build(quiver, {v: (rng.randint(0, 2), rng.randint(0, 2)) for v in quiver.vertices})
                v, w = random_rep(quiver, alpha, rng), random_rep(quiver, beta, rng)
                result = hom_ext_dims(v, w)
                self.assertEqual(result.hom - result.ext, result.form)
                self.assertGreaterEqual(result.ext, 0)
                self.assertEqual(doubled_hom_dim(v, w), hom_dim(v, w))
                checked += 1
        self.assertGreaterEqual(checked, 20)

    def test_edgeless_ext_vanishes(self):
        rng = random.Random(9)
        for _ in range(5):
            alpha = SuperDimVector.build(POINT, {"a": (rng.randint(0, 2), rng.randint(0, 2))})
            beta = SuperDimVector.build(POINT, {"a": (rng.randint(0, 2), rng.randint(0, 2))})
            self.assertEqual(hom_ext_dims(random_rep(POINT, alpha, rng), random_rep(POINT, beta, rng)).ext, 0)

    def test_shape_mismatch(self):
        alpha = SuperDimVector.build(LOOP, {"a": (1, 1)})
        with self.assertRaises(DimensionMismatchError):
            ConcreteSuperRep.build(LOOP, alpha, {"e": [[1]]})


class RepFileTests(SimpleTestCase):
    def test_parse(self):
        rep = parse_rep("dim a 1|0\ndim b 1|0  # target\nmap e1 1\nmap e2 1/2\n", KRONECKER)
        self.assertEqual(rep.alpha.as_dict(), {"a": (1, 0), "b": (1, 0)})
        self.assertEqual(str(rep.maps["e2"][0][0]), "1/2")

    def test_rows(self):
        rep = parse_rep("dim a 1|1\nmap e 1 0 ; 0 -1\n", LOOP)
        self.assertEqual(rep.maps["e"], ((QQ(1), QQ(0)), (QQ(0), QQ(-1))))

    def test_errors(self):
        with self.assertRaises(JobReferenceError):
            parse_rep("map f 1\n", LOOP)
        with self.assertRaises(JobSyntaxError) as caught:
            parse_rep("dim a 1|1\nmap e 1 0\n", LOOP)
        self.assertEqual(caught.exception.line, 2)
        with self.assertRaises(JobSyntaxError):
            parse_rep("dim a 1|x\n", LOOP)


class ExportTests(TestCase):
    def setUp(self):
        ring = make_ring(LOOP, {"a": (1, 1)})
        self.reports = run_components(ring, [degree(ring, e=1)], compare_maxlen=1)
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def test_csv(self):
        path = os.path.join(self.tmp.name, "oracle.csv")
        export_csv(self.reports, path)
        with open(path, newline="", encoding="utf-8") as handle:
            rows = list(csv.reader(handle))
        self.assertEqual(rows[0], ["multidegree", "basis_size", "ssi_dim", "si_dim", "span_dim", "verdict"])
        self.assertEqual(rows[1][0], "e=1")
        self.assertEqual(rows[1][-1], PASS)

    def test_xlsx(self):
        from openpyxl import load_workbook

        path = os.path.join(self.tmp.name, "oracle.xlsx")
        export_xlsx(self.reports, path)
        sheet = load_workbook(path).active
        self.assertEqual(sheet["A1"].value, "multidegree")
        self.assertEqual(sheet["F2"].value, PASS)

    def test_records(self):
        run = OracleRun.objects.create(label="loop", quiver_text="vertex a sdim 1|1 parity 0")
        record = ComponentRecord.from_report(run, self.reports[0])
        self.assertEqual(record.multidegree, "e=1")
        self.assertEqual(run.components.get().verdict, PASS)
