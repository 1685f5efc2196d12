from django.db import models


class OracleRun(models.Model):
    label = models.CharField(max_length=200)
    quiver_text = models.TextField()
    strict = models.BooleanField(default=False)
    started_at = models.DateTimeField(auto_now_add=True)
    finished_at = models.DateTimeField(null=True, blank=True)

    class Meta:
        ordering = ["-started_at"]

    def __str__(self):
        return f"{self.label} ({self.started_at:%Y-%m-%d %H:%M})"


class ComponentRecord(models.Model):
    VERDICT_CHOICES = [
        ("PASS", "Pass"),
        ("FAIL", "Fail"),
        ("INCONCLUSIVE", "Inconclusive"),
        ("-", "Not compared"),
    ]

    run = models.ForeignKey(OracleRun, on_delete=models.CASCADE, related_name="components")
    multidegree = models.CharField(max_length=200)
    basis_size = models.PositiveIntegerField(null=True, blank=True)
    ssi_dim = models.PositiveIntegerField(null=True, blank=True)
    si_dim = models.PositiveIntegerField(null=True, blank=True)
    span_dim = models.PositiveIntegerField(null=True, blank=True)
    verdict = models.CharField(max_length=20, choices=VERDICT_CHOICES, default="-")
    note = models.TextField(blank=True)

    class Meta:
        ordering = ["run", "id"]

    def __str__(self):
        return f"{self.multidegree}: {self.verdict}"

    @classmethod
    def from_report(cls, run, report):
        return cls.objects.create(
            run=run,
            multidegree=report.as_row()["multidegree"],
            basis_size=report.basis_size,
            ssi_dim=report.ssi_dim,
            si_dim=report.si_dim,
            span_dim=report.span_dim,
            verdict=report.verdict,
            note=report.note,
        )
