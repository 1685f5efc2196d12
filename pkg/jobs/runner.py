"""Executes a parsed job command by command."""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from pathlib import Path as FilePath
from typing import Callable, Dict, List, Optional

from django.db import transaction
from django.utils import timezone

from core.exceptions import (
    HomConsistencyError,
    NegativeExtError,
    OddDenominatorError,
    ResourceCapExceeded,
    SingularBlockError,
)
from invariants.detlike import detlike_semi_invariant
from invariants.polarization import partial_linearization, restitute
from invariants.services import closed_path_invariants, kronecker_berezinian, random_kronecker_coefficients
from lie.basis import gl_basis
from lie.services import find_violation, format_failure
from oracle.exports import export_csv, export_xlsx
from oracle.homext import hom_ext_dims, parse_rep
from oracle.models import ComponentRecord, OracleRun
from oracle.services import FAIL, INCONCLUSIVE, ComponentReport, run_components
from quivers.services import (
    classify_vertex,
    enumerate_closed_paths,
    kirchhoff_ok,
    normalize_at,
    ringel_form,
)
from quivers.textformat import format_dim_vector, format_quiver
from superalgebra.polynomial import CoordinateRing
from superalgebra.textformat import format_polynomial
from supermatrices.services import berezinian, path_product
from .parser import Command, JobFile, format_command

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3


@dataclass
class RunResult:
    lines: List[str] = field(default_factory=list)
    reports: List[ComponentReport] = field(default_factory=list)
    failures: int = 0
    capped: int = 0
    strict: bool = False

    @property
    def exit_code(self) -> int:
        if self.failures:
            return EXIT_FAIL
        if self.strict and self.capped:
            return EXIT_CAP
        return EXIT_OK


class JobRunner:
    def __init__(
        self,
        job: JobFile,
        strict: bool = False,
        cap: Optional[int] = None,
        base_dir: Optional[FilePath] = None,
    ):
        self.job = job
        self.ring: CoordinateRing = job.ring
        self.cap = cap
        self.base_dir = FilePath(base_dir) if base_dir else FilePath.cwd()
        self.result = RunResult(strict=strict)
        self.handlers: Dict[str, Callable[[Command], None]] = {
            "paths": self._paths,
            "ringel": self._ringel,
            "classify": self._classify,
            "normalize": self._normalize,
            "straces": self._straces,
            "detlike": self._detlike,
            "polarize": self._polarize,
            "check_invariant": self._check_invariant,
            "check_weight": self._check_weight,
            "oracle": self._oracle,
            "homext": self._homext,
            "berezinian": self._berezinian,
        }

    def emit(self, text: str) -> None:
        self.result.lines.append(text)

    def fail(self, text: str) -> None:
        self.result.failures += 1
        self.emit(text)

    def run(self) -> RunResult:
        for command in self.job.runnable():
            logger.info("Job line %s: %s", command.line, command.kind)
            self.emit(f"> {format_command(command, self.job.polys)}")
            try:
                self.handlers[command.kind](command)
            except ResourceCapExceeded as exc:
                self.result.capped += 1
                self.emit(f"{INCONCLUSIVE} {exc}")
        return self.result

    # -- commands --------------------------------------------------------

    def _paths(self, command):
        found = enumerate_closed_paths(self.ring.quiver, command.args["maxlen"])
        for path in found:
            self.emit(f"path {path}")
        self.emit(f"{len(found)} closed path(s) up to length {command.args['maxlen']}")

    def _ringel(self, command):
        alpha = command.args["alpha"] or self.ring.alpha
        beta = command.args["beta"] or self.ring.alpha
        value = ringel_form(self.ring.quiver, alpha, beta)
        self.emit(f"<{format_dim_vector(alpha)}, {format_dim_vector(beta)}> = {value}")

    def _classify(self, command):
        quiver = self.ring.quiver
        vertices = [command.args["vertex"]] if command.args["vertex"] else quiver.vertices
        for vertex in vertices:
            info = classify_vertex(quiver, self.ring.alpha, vertex)
            kinds = [name for name, flag in (("source", info.source), ("sink", info.sink)) if flag]
            kinds.append("extremal" if info.extremal else "ordinary")
            kirchhoff = "ok" if kirchhoff_ok(quiver, vertex) else "broken"
            self.emit(
                f"vertex {vertex}: {' '.join(kinds)} in={info.in_degree} out={info.out_degree} kirchhoff={kirchhoff}"
            )

    def _normalize(self, command):
        step = normalize_at(self.ring.quiver, self.ring.alpha, self.ring.parity, command.args["vertex"])
        self.result.lines.extend(format_quiver(step.quiver, step.alpha, step.parity).splitlines())

    def _straces(self, command):
        for path, f in closed_path_invariants(self.ring, command.args["maxlen"]):
            self.emit(f"str({path}) = {format_polynomial(f)}")

    def _detlike(self, command):
        outcome = detlike_semi_invariant(self.ring, command.args["spec"])
        self.emit(f"weight {outcome.weight}")
        if not outcome.components:
            self.emit("det = 0")
        for degree, component in outcome.components:
            self.emit(f"component {degree}: {format_polynomial(component)}")

    def _polarize(self, command):
        f = self.job.polys[command.args["poly"]]
        linear, factor = partial_linearization(f, command.args["edges"])
        self.emit(f"linearized = {format_polynomial(linear)}")
        if restitute(linear, self.ring) == f * factor:
            self.emit(f"RESTITUTION OK factor={factor}")
        else:
            self.fail(f"{FAIL} restitution differs from {factor} * {command.args['poly']}")

    def _check_invariant(self, command):
        f = self.job.polys[command.args["poly"]]
        violation = find_violation(f, gl_basis(self.ring))
        if violation is None:
            self.emit(f"{command.args['poly']}: INVARIANT")
        else:
            self.fail(format_failure(*violation))

    def _check_weight(self, command):
        f = self.job.polys[command.args["poly"]]
        weight = command.args["weight"]
        violation = find_violation(f, gl_basis(self.ring), weight) if f else None
        if not f:
            self.fail(f"{FAIL} {command.args['poly']} is zero")
        elif violation is None:
            self.emit(f"{command.args['poly']}: WEIGHT OK {weight}")
        else:
            self.fail(format_failure(*violation))

    def _oracle(self, command):
        reports = run_components(self.ring, [command.args["degree"]], command.args["maxlen"], self.cap)
        for report in reports:
            self.result.reports.append(report)
            self.emit(report.line())
            if report.verdict == FAIL:
                self.result.failures += 1
            elif report.verdict == INCONCLUSIVE:
                self.result.capped += 1

    def _homext(self, command):
        reps = [
            parse_rep((self.base_dir / command.args[side]).read_text(encoding="utf-8"), self.ring.quiver)
            for side in ("left", "right")
        ]
        try:
            dims = hom_ext_dims(*reps)
        except (HomConsistencyError, NegativeExtError) as exc:
            self.fail(f"{FAIL} {exc}")
            return
        self.emit(f"hom={dims.hom} ext={dims.ext} form={dims.form}")

    def _berezinian(self, command):
        args = command.args
        if args["mode"] == "kronecker":
            rng = random.Random(args["seed"])
            coefficients = random_kronecker_coefficients(args["s"], args["l"], rng)
            value, weight = kronecker_berezinian(self.ring, args["s"], args["l"], coefficients)
            self.emit(f"Ber = {value}")
            self.emit(f"weight {weight}")
            return
        matrix = path_product(self.ring, self.ring.quiver.path(args["edges"]))
        try:
            value = berezinian(matrix)
        except (OddDenominatorError, SingularBlockError) as exc:
            self.fail(f"{FAIL} {exc}")
            return
        self.emit(f"Ber = {value}")


def record_run(job: JobFile, result: RunResult, label: str) -> OracleRun:
    with transaction.atomic():
        run = OracleRun.objects.create(
            label=label,
            quiver_text=format_quiver(job.quiver, job.alpha, job.parity),
            strict=result.strict,
        )
        for report in result.reports:
            ComponentRecord.from_report(run, report)
        run.finished_at = timezone.now()
        run.save(update_fields=["finished_at"])
    return run


def run(
    job: JobFile,
    strict: bool = False,
    cap: Optional[int] = None,
    base_dir=None,
    csv_path=None,
    xlsx_path=None,
    record: bool = False,
    label: str = "job",
) -> RunResult:
    result = JobRunner(job, strict=strict, cap=cap, base_dir=base_dir).run()
    if csv_path:
        export_csv(result.reports, csv_path)
    if xlsx_path:
        export_xlsx(result.reports, xlsx_path, title=label)
    if record:
        record_run(job, result, label)
    logger.info("Job %s finished with %s failure(s), %s capped", label, result.failures, result.capped)
    return result
