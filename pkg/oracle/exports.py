"""CSV and Excel tables of oracle reports."""
from __future__ import annotations

import csv
from typing import Iterable

from django.core.exceptions import ImproperlyConfigured

from .services import ComponentReport


def export_csv(reports: Iterable[ComponentReport], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(ComponentReport.CSV_COLUMNS)
        for report in reports:
            row = report.as_row()
            writer.writerow([row[column] for column in ComponentReport.CSV_COLUMNS])


def export_xlsx(reports: Iterable[ComponentReport], path, title: str = "Oracle") -> None:
    try:
        from openpyxl import Workbook
        from openpyxl.utils import get_column_letter
    except ImportError as exc:
        raise ImproperlyConfigured("openpyxl is required for Excel exports. Install it via pip install openpyxl.") from exc

    workbook = Workbook()
    worksheet = workbook.active
    worksheet.title = title[:31]
    worksheet.append(list(ComponentReport.CSV_COLUMNS))
    for report in reports:
        row = report.as_row()
        worksheet.append([row[column] for column in ComponentReport.CSV_COLUMNS])
    for index, column in enumerate(ComponentReport.CSV_COLUMNS, start=1):
        worksheet.column_dimensions[get_column_letter(index)].width = max(12, len(column) + 2)
    workbook.save(path)
