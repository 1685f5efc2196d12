from django.apps import AppConfig


class SupermatricesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'supermatrices'
    verbose_name = 'Supermatrices'
