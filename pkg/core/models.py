from django.db import models


class VerificationResult(models.Model):
    VERDICT_CHOICES = [
        ("PASS", "Pass"),
        ("FAIL", "Fail"),
        ("INCONCLUSIVE", "Inconclusive"),
    ]

    code = models.CharField(max_length=120, unique=True)
    category = models.CharField(max_length=60)
    message = models.TextField()
    verdict = models.CharField(max_length=20, choices=VERDICT_CHOICES, default="PASS")
    detected_at = models.DateTimeField(auto_now_add=True)
    checked_at = models.DateTimeField(auto_now=True)
    # set when a failing property passes again, or when it is retired
    resolved_at = models.DateTimeField(null=True, blank=True)

    class Meta:
        ordering = ["-detected_at"]

    def __str__(self):
        return f"{self.code}: {self.verdict}"
