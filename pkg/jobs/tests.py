import csv
import os
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from core.exceptions import JobReferenceError, JobSyntaxError
from oracle.models import ComponentRecord, OracleRun
from .parser import format_job, parse_job
from .runner import EXIT_CAP, EXIT_FAIL, EXIT_OK, run

KRONECKER = """\
# Kronecker quiver
vertex a sdim 2|0 parity 0
vertex b sdim 2|0 parity 0
edge e1 a -> b
edge e2 a -> b
"""

LOOP = """\
vertex a sdim 1|1 parity 0
edge e a -> a
"""

DET_E1 = "poly detE1 = x[e1,1,1] * x[e1,2,2] - x[e1,1,2] * x[e1,2,1]\n"


def write(directory, name, text):
    path = os.path.join(directory, name)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
    return path


class ParseJobTests(SimpleTestCase):
    def test_kronecker_file(self):
        job = parse_job(KRONECKER)
        self.assertEqual(job.quiver.vertices, ("a", "b"))
        self.assertEqual(len(job.quiver.edges), 2)
        self.assertEqual(job.commands, [])

    def test_sample_files_are_canonical_after_one_pass(self):
        for sample in sorted((Path(__file__).parent / "samples").glob("*.job")):
            with self.subTest(sample=sample.name):
                job = parse_job(sample.read_text(encoding="utf-8"))
                self.assertEqual(parse_job(format_job(job)), job)

    def test_unknown_vertex_has_location(self):
        text = "vertex a sdim 1|0 parity 0\nvertex b sdim 1|0 parity 0\nedge e1 a -> c\n"
        with self.assertRaises(JobReferenceError) as caught:
            parse_job(text)
        self.assertEqual((caught.exception.line, caught.exception.column), (3, 14))
        self.assertIn("line 3, column 14", str(caught.exception))

    def test_parity_two_is_rejected(self):
        with self.assertRaises(JobSyntaxError) as caught:
            parse_job("vertex a sdim 1|1 parity 2\n")
        self.assertEqual(caught.exception.line, 1)

    def test_polynomial_must_be_declared_first(self):
        with self.assertRaises(JobReferenceError) as caught:
            parse_job(KRONECKER + "check invariant f\n" + "poly f = x[e1,1,1]\n")
        self.assertEqual(caught.exception.line, 6)

    def test_undeclared_edge_in_polynomial(self):
        with self.assertRaises(JobReferenceError):
            parse_job(KRONECKER + "poly f = x[e3,1,1]\n")

    def test_unknown_directive(self):
        with self.assertRaises(JobSyntaxError) as caught:
            parse_job(LOOP + "plot e\n")
        self.assertEqual(caught.exception.column, 1)

    def test_bad_arguments(self):
        for line in ("paths maxlen x", "straces 3", "oracle degree e=2 compare 2", "berezinian kronecker s=0 l=1"):
            with self.subTest(line=line), self.assertRaises(JobSyntaxError):
                parse_job(LOOP + line + "\n")

    def test_detlike_block(self):
        job = parse_job(KRONECKER + "detlike sink b:q=1 source a:r=1 block b a : 1*path(e1) + 2*path(e2)\n")
        spec = job.commands[0].args["spec"]
        self.assertEqual(spec.sinks, (("b", 1),))
        self.assertEqual(spec.sources, (("a", 1),))
        self.assertEqual([edges for _, edges in spec.blocks[0].terms], [("e1",), ("e2",)])

    def test_unbalanced_detlike_is_a_parse_error(self):
        text = "vertex a sdim 1|0 parity 0\nvertex b sdim 2|0 parity 0\nedge e1 a -> b\n"
        with self.assertRaises(JobSyntaxError) as caught:
            parse_job(text + "detlike sink b:q=1 source a:r=1 block b a : 1*path(e1)\n")
        self.assertEqual(caught.exception.line, 4)

    def test_round_trip(self):
        text = (
            KRONECKER
            + DET_E1
            + "poly g = 1/2 * x[e2,1,1]  -x[e1,2,1]\n"
            + "paths maxlen 2\n"
            + "ringel a=1|0,b=0|1 a=2|0,b=2|0\n"
            + "classify a\n"
            + "detlike sink b:q=1 source a:r=1 block b a : path(e1) - 3/2*path(e2)\n"
            + "polarize g linearize e1,e2\n"
            + "check invariant g\n"
            + "check weight a=-1 b=1 poly detE1\n"
            + "oracle degree e1=1,e2=1 compare maxlen 2\n"
            + "homext left.rep right.rep\n"
            + "berezinian path e1\n"
            + "berezinian kronecker s=1 l=1\n"
        )
        job = parse_job(text)
        canonical = format_job(job)
        self.assertEqual(parse_job(canonical), job)
        self.assertEqual(format_job(parse_job(canonical)), canonical)
        self.assertIn("detlike sink b:q=1 source a:r=1 block b a : 1*path(e1) - 3/2*path(e2)", canonical)
        self.assertIn("check weight a=-1 b=+1 poly detE1", canonical)
        self.assertIn("berezinian kronecker s=1 l=1 seed 0", canonical)


class RunJobTests(SimpleTestCase):
    def test_straces_on_loop(self):
        result = run(parse_job(LOOP + "straces maxlen 3\n"))
        traces = [line for line in result.lines if line.startswith("str(")]
        self.assertEqual(len(traces), 3)
        self.assertTrue(traces[0].startswith("str(e) = "))
        self.assertEqual(result.exit_code, EXIT_OK)

    def test_oracle_compare_passes(self):
        result = run(parse_job(LOOP + "oracle degree e=2 compare maxlen 2\n"))
        self.assertEqual(result.reports[0].verdict, "PASS")
        self.assertIn("oracle e=2: basis=8 ssi=2 si=2 span=2 PASS", result.lines)
        self.assertEqual(result.exit_code, EXIT_OK)

    def test_weight_check_on_determinant(self):
        result = run(parse_job(KRONECKER + DET_E1 + "check weight a=-1 b=+1 poly detE1\n"))
        self.assertTrue(any("WEIGHT OK" in line for line in result.lines))
        self.assertEqual(result.exit_code, EXIT_OK)

    def test_wrong_weight_fails(self):
        result = run(parse_job(KRONECKER + DET_E1 + "check weight a=1 b=-1 poly detE1\n"))
        self.assertTrue(any(line.startswith("FAIL gen=") for line in result.lines))
        self.assertEqual(result.exit_code, EXIT_FAIL)

    def test_non_invariant_fails(self):
        result = run(parse_job(LOOP + "poly f = x[e,1,1]\ncheck invariant f\n"))
        self.assertEqual(result.failures, 1)

    def test_cap_is_inconclusive(self):
        job = parse_job(LOOP + "oracle degree e=2\n")
        self.assertEqual(run(job, cap=1).exit_code, EXIT_OK)
        self.assertEqual(run(job, cap=1, strict=True).exit_code, EXIT_CAP)

    def test_paths_and_classify(self):
        result = run(parse_job(KRONECKER + "paths maxlen 3\nclassify a\n"))
        self.assertIn("0 closed path(s) up to length 3", result.lines)
        self.assertIn("vertex a: source extremal in=0 out=2 kirchhoff=broken", result.lines)

    def test_detlike_output(self):
        text = "vertex a sdim 1|0 parity 0\nvertex b sdim 1|0 parity 0\nedge e1 a -> b\nedge e2 a -> b\n"
        result = run(parse_job(text + "detlike sink b:q=1 source a:r=1 block b a : 1*path(e1) + 2*path(e2)\n"))
        self.assertIn("weight a=-1 b=+1", result.lines)
        components = [line for line in result.lines if line.startswith("component ")]
        self.assertEqual(len(components), 2)

    def test_polarize_restitutes(self):
        text = "vertex a sdim 1|0 parity 0\nedge e a -> a\npoly f = x[e,1,1]^2\npolarize f linearize e\n"
        result = run(parse_job(text))
        self.assertIn("RESTITUTION OK factor=2", result.lines)

    def test_kronecker_berezinian(self):
        text = "vertex a sdim 1|0 parity 0\nvertex b sdim 2|0 parity 0\nedge e1 a -> b\nedge e2 a -> b\n"
        result = run(parse_job(text + "berezinian kronecker s=1 l=2 seed 3\n"))
        self.assertIn("weight a=-2 b=+1", result.lines)

    def test_path_berezinian_with_odd_denominator_fails(self):
        result = run(parse_job(LOOP + "berezinian path e,e\n"))
        self.assertTrue(any(line.startswith("FAIL ") for line in result.lines))
        self.assertEqual(result.exit_code, EXIT_FAIL)

    def test_path_berezinian(self):
        result = run(parse_job(LOOP + "berezinian edge e\n"))
        self.assertTrue(any(line.startswith("Ber = ") for line in result.lines))
        self.assertEqual(result.exit_code, EXIT_OK)

    def test_homext_reads_rep_files(self):
        text = "vertex a sdim 1|0 parity 0\nvertex b sdim 1|0 parity 0\nedge e1 a -> b\nedge e2 a -> b\n"
        with tempfile.TemporaryDirectory() as directory:
            write(directory, "v.rep", "dim a 1|0\ndim b 1|0\nmap e1 1\n")
            result = run(parse_job(text + "homext v.rep v.rep\n"), base_dir=directory)
        self.assertIn("hom=1 ext=1 form=0", result.lines)


class RunJobCommandTests(TestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def test_pass_records_run(self):
        path = write(self.directory.name, "loop.job", LOOP + "oracle degree e=2 compare maxlen 2\n")
        csv_path = os.path.join(self.directory.name, "out.csv")
        out = StringIO()
        call_command("runjob", path, "--record", "--csv", csv_path, stdout=out)
        self.assertIn("PASS", out.getvalue())
        run_row = OracleRun.objects.get()
        self.assertEqual(run_row.label, "loop.job")
        self.assertIsNotNone(run_row.finished_at)
        self.assertEqual(ComponentRecord.objects.get(run=run_row).verdict, "PASS")
        with open(csv_path, newline="", encoding="utf-8") as handle:
            rows = list(csv.DictReader(handle))
        self.assertEqual(rows[0]["span_dim"], "2")

    def test_failure_exit_code(self):
        path = write(self.directory.name, "bad.job", LOOP + "poly f = x[e,1,1]\ncheck invariant f\n")
        with self.assertRaises(CommandError) as caught:
            call_command("runjob", path, stdout=StringIO())
        self.assertEqual(caught.exception.returncode, EXIT_FAIL)

    def test_parse_error_exit_code(self):
        path = write(self.directory.name, "broken.job", "vertex a sdim 1|1 parity 2\n")
        with self.assertRaises(CommandError) as caught:
            call_command("runjob", path, stdout=StringIO())
        self.assertEqual(caught.exception.returncode, 2)
        self.assertIn("line 1", str(caught.exception))

    def test_strict_cap_exit_code(self):
        path = write(self.directory.name, "capped.job", LOOP + "oracle degree e=2\n")
        with self.assertRaises(CommandError) as caught:
            call_command("runjob", path, "--strict", "--cap", "1", stdout=StringIO())
        self.assertEqual(caught.exception.returncode, EXIT_CAP)

    def test_formatjob_prints_canonical_text(self):
        path = write(self.directory.name, "k.job", KRONECKER + DET_E1)
        out = StringIO()
        call_command("formatjob", path, stdout=out)
        self.assertEqual(out.getvalue(), format_job(parse_job(KRONECKER + DET_E1)))
