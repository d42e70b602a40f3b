"""Structured verification reports, as the CLI emits them.

The same report object backs both the text and the JSON output of

    twistedops verify --algebra spin:3 --suite all --format json

Exit code 0 means every check passed; 1 flags a failed check; 2 a
usage error.  This script drives the library directly.
"""

import json

from twistedops import verify
from twistedops.jordan import from_selector
from twistedops.report import validate_report_dict

J = from_selector("spin:3")
report = verify.run_suite(J, selection="brackets,critical,innw,delta,ft")

print(report.to_text())

data = json.loads(report.to_json())
problems = validate_report_dict(data)
print("JSON schema violations:", problems if problems else "none")
print("check names:", [c["name"] for c in data["checks"]])
