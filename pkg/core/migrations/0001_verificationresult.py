from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="VerificationResult",
            fields=[
                ("id", models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name="ID")),
                ("code", models.CharField(max_length=120, unique=True)),
                ("category", models.CharField(max_length=60)),
                ("message", models.TextField()),
                (
                    "verdict",
                    models.CharField(
                        choices=[("PASS", "Pass"), ("FAIL", "Fail"), ("INCONCLUSIVE", "Inconclusive")],
                        default="PASS",
                        max_length=20,
                    ),
                ),
                ("detected_at", models.DateTimeField(auto_now_add=True)),
                ("checked_at", models.DateTimeField(auto_now=True)),
                ("resolved_at", models.DateTimeField(blank=True, null=True)),
            ],
            options={"ordering": ["-detected_at"]},
        ),
    ]
