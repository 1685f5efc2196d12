from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from core.exceptions import SuperquiverError
from jobs.parser import format_job, parse_job
from jobs.runner import EXIT_USAGE


class Command(BaseCommand):
    help = "Print a job file in canonical form."

    def add_arguments(self, parser):
        parser.add_argument("file")

    def handle(self, *args, **options):
        path = Path(options["file"])
        try:
            job = parse_job(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise CommandError(f"Cannot read {path}: {exc}", returncode=EXIT_USAGE)
        except SuperquiverError as exc:
            raise CommandError(f"{path.name}: {exc}", returncode=EXIT_USAGE)
        self.stdout.write(format_job(job), ending="")
