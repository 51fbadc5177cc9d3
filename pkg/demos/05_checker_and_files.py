"""
Certificates on disk
====================

Write a certificate, tamper with it, and watch the checker catch it.
"""

import json
import tempfile
from pathlib import Path

from partcolor import build_complete, find_partition_t1
from partcolor.io import certificate_document, read_certificate, reverify, write_certificate

k5 = build_complete(5)
doc = certificate_document(k5, find_partition_t1(k5, (2, 2), 4), "partition")

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "k5.json"
    write_certificate(doc, path)
    print("stored:", reverify(k5, read_certificate(path))[0])

    data = json.loads(path.read_text())
    dropped = data["sets"]["F"][0].pop()
    data["sets"]["Q"].remove(dropped)
    path.write_text(json.dumps(data))
    ok, clauses = reverify(k5, read_certificate(path))
    print("tampered:", ok, [c.name for c in clauses if not c.passed])
