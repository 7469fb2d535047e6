"""Write the job-spec JSON schema to docs/jobspec.schema.json."""
import json
from pathlib import Path

from lyndonreg.jobspec import JOB_SCHEMA

out = Path(__file__).resolve().parents[1] / "docs" / "jobspec.schema.json"
out.write_text(json.dumps(JOB_SCHEMA, indent=2, sort_keys=True) + "\n")
print(out)
