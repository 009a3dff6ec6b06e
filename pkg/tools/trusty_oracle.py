#!/usr/bin/env python3
"""Independent artifact-code oracle.

Computes the trusty artifact code of a pre-trusty nanopublication straight
from its N-Quads lines, without importing the library: replace the temp base
with the placeholder, sort the lines, hash, encode.

Usage: trusty_oracle.py FILE.nq [TEMP_BASE]
"""

import base64
import hashlib
import sys

PLACEHOLDER = "urn:trusty:placeholder"


def artifact_code(nquads: str, temp_base: str) -> str:
    lines = [line for line in nquads.split("\n") if line.strip()]
    pinned = [line.replace(temp_base, PLACEHOLDER) for line in lines]
    canonical = "".join(line + "\n" for line in sorted(pinned))
    digest = hashlib.sha256(canonical.encode("utf-8")).digest()
    return "RA" + base64.urlsafe_b64encode(digest).decode("ascii").rstrip("=")


def main() -> int:
    if len(sys.argv) not in (2, 3):
        print(__doc__, file=sys.stderr)
        return 2
    path = sys.argv[1]
    temp_base = sys.argv[2] if len(sys.argv) == 3 else "urn:temp:np1"
    with open(path, encoding="utf-8") as handle:
        print(artifact_code(handle.read(), temp_base))
    return 0


if __name__ == "__main__":
    sys.exit(main())
