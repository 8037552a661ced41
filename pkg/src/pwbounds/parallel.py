"""Worker-count policy. PW_BOUNDS_THREADS caps parallelism; the default is serial."""

from __future__ import annotations

import os

ENV_VAR = "PW_BOUNDS_THREADS"


def worker_count() -> int:
    raw = os.environ.get(ENV_VAR, "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, min(n, os.cpu_count() or 1))
