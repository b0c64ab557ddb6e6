"""
FocalFront Demo - Verdicts for Every Registered Fixture

Runs each fixture through run_report and prints one line per surface,
flagging any verdict that differs from the registry's expectation.
"""

import logging
import sys

from focalfront.config import get_settings
from focalfront.services.fixtures import fixture_entry, get_fixture, list_fixtures
from focalfront.services.reports import AnalysisRequest, run_report, verdict_line


def run_demo() -> int:
    settings = get_settings()
    logging.basicConfig(level=logging.WARNING)
    print(f"--- {settings.app_name} fixture verdicts (jet order {settings.jet_order}) ---")

    mismatches = 0
    for name in list_fixtures():
        entry = fixture_entry(name)
        document = run_report(AnalysisRequest(surface=get_fixture(name)), settings)

        flags = []
        got = document.singularity.singularity_class if document.singularity else None
        if entry.expected_class and got != entry.expected_class:
            flags.append(f"expected f={entry.expected_class.value}")
        focal = document.focal.focal_class if document.focal else None
        if entry.expected_focal_class and focal != entry.expected_focal_class:
            flags.append(f"expected focal={entry.expected_focal_class.value}")
        mismatches += bool(flags)

        suffix = f"  <-- {', '.join(flags)}" if flags else ""
        print(f"{verdict_line(document)}  exit={document.exit_status}{suffix}")

    print(f"--- {len(list_fixtures())} fixtures, {mismatches} mismatches ---")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(run_demo())
