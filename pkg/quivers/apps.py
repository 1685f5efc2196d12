from django.apps import AppConfig


class QuiversConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'quivers'
    verbose_name = 'Quivers'
