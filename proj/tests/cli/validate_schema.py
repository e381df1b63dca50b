"""Validate every stored manifest against data/hadamard_form.schema.json."""
import glob
import json
import sys

import jsonschema

schema = json.load(open("data/hadamard_form.schema.json"))
for path in sorted(glob.glob("data/*.json")):
    if path.endswith(".schema.json"):
        continue
    jsonschema.validate(json.load(open(path)), schema)
    print("valid", path)
sys.exit(0)
