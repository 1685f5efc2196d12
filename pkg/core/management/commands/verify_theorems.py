from django.core.management.base import BaseCommand, CommandError

from core.services import THEOREM_CHECKS, run_theorem_checks


class Command(BaseCommand):
    help = "Run the acceptance properties and store one verification result per property."

    def add_arguments(self, parser):
        parser.add_argument(
            "--quick",
            action="store_true",
            help="Use smaller degrees and fewer random samples.",
        )
        parser.add_argument(
            "--only",
            action="append",
            default=[],
            choices=[check.code for check in THEOREM_CHECKS],
            help="Run a single property; may be repeated.",
        )

    def handle(self, *args, **options):
        results = list(run_theorem_checks(quick=options["quick"], codes=options["only"]))
        failing = [result for result in results if result.verdict == "FAIL"]
        for result in results:
            line = f"- [{result.verdict}] {result.category}: {result.code} {result.message}"
            if result.verdict == "PASS":
                self.stdout.write(line)
            else:
                self.stdout.write(self.style.WARNING(line))

        if failing:
            raise CommandError(f"{len(failing)} property check(s) failed.", returncode=1)
        self.stdout.write(self.style.SUCCESS(f"Verified {len(results)} property check(s)."))
