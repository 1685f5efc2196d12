"""Run a job file and print its report lines."""
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from core.exceptions import SuperquiverError
from jobs.parser import parse_job
from jobs.runner import EXIT_CAP, EXIT_FAIL, EXIT_USAGE, run


class Command(BaseCommand):
    help = "Parse a job file, execute its commands in order and report verdicts."

    def add_arguments(self, parser):
        parser.add_argument("file", help="Job file with a quiver block and commands.")
        parser.add_argument("--strict", action="store_true", help="Exit with status 3 when a resource cap is hit.")
        parser.add_argument("--cap", type=int, default=None, help="Monomial cap for oracle components.")
        parser.add_argument("--csv", dest="csv_path", default=None, help="Write oracle reports as CSV.")
        parser.add_argument("--xlsx", dest="xlsx_path", default=None, help="Write oracle reports as an Excel workbook.")
        parser.add_argument("--record", action="store_true", help="Store the oracle reports in the database.")

    def handle(self, *args, **options):
        path = Path(options["file"])
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise CommandError(f"Cannot read {path}: {exc}", returncode=EXIT_USAGE)

        try:
            job = parse_job(text)
            result = run(
                job,
                strict=options["strict"],
                cap=options["cap"],
                base_dir=path.parent,
                csv_path=options["csv_path"],
                xlsx_path=options["xlsx_path"],
                record=options["record"],
                label=path.name,
            )
        except SuperquiverError as exc:
            raise CommandError(f"{path.name}: {exc}", returncode=EXIT_USAGE)
        except OSError as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE)

        for line in result.lines:
            self.stdout.write(line)

        if result.exit_code == EXIT_FAIL:
            raise CommandError(f"{result.failures} check(s) failed.", returncode=EXIT_FAIL)
        if result.exit_code == EXIT_CAP:
            raise CommandError(f"{result.capped} check(s) hit the resource cap.", returncode=EXIT_CAP)
        if result.capped:
            self.stdout.write(self.style.WARNING(f"{result.capped} check(s) were inconclusive."))
        else:
            self.stdout.write(self.style.SUCCESS("All checks passed."))
