from django.apps import AppConfig


class SuperalgebraConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'superalgebra'
    verbose_name = 'Supercommutative rings'
