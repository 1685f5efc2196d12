from celery import shared_task
from celery.utils.log import get_task_logger

from .services import analyse_payload

logger = get_task_logger(__name__)


@shared_task(name="oracle.analyse_component")
def analyse_component_task(payload):
    """Compute one component report; payload and result are JSON dictionaries."""
    logger.info("Analysing component %s", payload["values"])
    return analyse_payload(payload)
