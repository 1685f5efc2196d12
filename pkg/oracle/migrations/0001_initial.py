from django.db import migrations, models
import django.db.models.deletion


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="OracleRun",
            fields=[
                ("id", models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name="ID")),
                ("label", models.CharField(max_length=200)),
                ("quiver_text", models.TextField()),
                ("strict", models.BooleanField(default=False)),
                ("started_at", models.DateTimeField(auto_now_add=True)),
                ("finished_at", models.DateTimeField(blank=True, null=True)),
            ],
            options={"ordering": ["-started_at"]},
        ),
        migrations.CreateModel(
            name="ComponentRecord",
            fields=[
                ("id", models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name="ID")),
                ("multidegree", models.CharField(max_length=200)),
                ("basis_size", models.PositiveIntegerField(blank=True, null=True)),
                ("ssi_dim", models.PositiveIntegerField(blank=True, null=True)),
                ("si_dim", models.PositiveIntegerField(blank=True, null=True)),
                ("span_dim", models.PositiveIntegerField(blank=True, null=True)),
                (
                    "verdict",
                    models.CharField(
                        choices=[
                            ("PASS", "Pass"),
                            ("FAIL", "Fail"),
                            ("INCONCLUSIVE", "Inconclusive"),
                            ("-", "Not compared"),
                        ],
                        default="-",
                        max_length=20,
                    ),
                ),
                ("note", models.TextField(blank=True)),
                (
                    "run",
                    models.ForeignKey(
                        on_delete=django.db.models.deletion.CASCADE,
                        related_name="components",
                        to="oracle.oraclerun",
                    ),
                ),
            ],
            options={"ordering": ["run", "id"]},
        ),
    ]
