from io import StringIO

from django.conf import settings
from django.core.management import call_command
from django.test import SimpleTestCase, TestCase, override_settings

from .conf import DEFAULTS, setting
from .exceptions import JobReferenceError, JobSyntaxError, SuperquiverError, UnknownVertexError
from .models import VerificationResult
from .services import THEOREM_CHECKS, run_theorem_checks
from .services.verification import _resolve_retired_results, _upsert_result


class SettingTests(SimpleTestCase):
    def test_default(self):
        with self.settings():
            del settings.SUPERQUIVER_MONOMIAL_CAP
            self.assertEqual(setting("SUPERQUIVER_MONOMIAL_CAP"), DEFAULTS["SUPERQUIVER_MONOMIAL_CAP"])

    @override_settings(SUPERQUIVER_MONOMIAL_CAP=7)
    def test_override(self):
        self.assertEqual(setting("SUPERQUIVER_MONOMIAL_CAP"), 7)


class ExceptionTests(SimpleTestCase):
    def test_location_in_message(self):
        error = JobSyntaxError("bad token", 3, 9)
        self.assertEqual((error.line, error.column), (3, 9))
        self.assertEqual(str(error), "line 3, column 9: bad token")

    def test_without_location(self):
        self.assertEqual(str(JobReferenceError("undeclared vertex c")), "undeclared vertex c")

    def test_codes(self):
        self.assertEqual(UnknownVertexError("x").code, "unknown_vertex")
        self.assertIsInstance(JobReferenceError("x"), SuperquiverError)


class VerificationResultTests(TestCase):
    def test_upsert_updates_in_place(self):
        _upsert_result("ring-axioms", category="Ring", message="ok", verdict="PASS")
        _upsert_result("ring-axioms", category="Ring", message="still ok", verdict="PASS")
        result = VerificationResult.objects.get()
        self.assertEqual(result.message, "still ok")
        self.assertIsNone(result.resolved_at)

    def test_failure_then_pass_resolves(self):
        _upsert_result("berezinian", category="Supermatrices", message="broken", verdict="FAIL")
        result = _upsert_result("berezinian", category="Supermatrices", message="fixed", verdict="PASS")
        result.refresh_from_db()
        self.assertIsNotNone(result.resolved_at)
        _upsert_result("berezinian", category="Supermatrices", message="broken again", verdict="FAIL")
        result.refresh_from_db()
        self.assertIsNone(result.resolved_at)

    def test_retired_codes_resolved(self):
        VerificationResult.objects.create(code="old-check", category="Ring", message="", verdict="FAIL")
        _resolve_retired_results({check.code for check in THEOREM_CHECKS})
        self.assertIsNotNone(VerificationResult.objects.get(code="old-check").resolved_at)

    def test_quick_subset(self):
        results = list(run_theorem_checks(quick=True, codes=["berezinian", "reduction", "polarization"]))
        self.assertEqual([result.code for result in results], ["berezinian", "polarization", "reduction"])
        self.assertTrue(all(result.verdict == "PASS" for result in results))

    def test_command(self):
        out = StringIO()
        call_command("verify_theorems", "--quick", "--only", "ring-axioms", stdout=out)
        self.assertIn("[PASS] Ring: ring-axioms", out.getvalue())
        self.assertEqual(VerificationResult.objects.get().verdict, "PASS")
