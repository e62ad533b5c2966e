"""Suite-wide instrumentation: Betti-check every diagram ever computed.

The checker registered here runs on every extended_pd call anywhere in
the suite (library calls, pipeline, lab, acceptance tests). A violation
raises immediately inside the offending test and is also recorded so the
acceptance gate can assert the running totals.
"""

import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from _betti import CRITERION_LINES, betti_checker  # noqa: E402
from loctopo.persistence import DIAGRAM_OBSERVERS  # noqa: E402

if betti_checker not in DIAGRAM_OBSERVERS:
    DIAGRAM_OBSERVERS.append(betti_checker)


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERION_LINES):
            terminalreporter.write_line(line)
