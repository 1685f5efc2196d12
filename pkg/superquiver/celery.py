"""Celery application instance for the superquiver project."""
import os

from celery import Celery

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "superquiver.settings")

app = Celery("superquiver")
app.config_from_object("django.conf:settings", namespace="CELERY")
app.autodiscover_tasks()
