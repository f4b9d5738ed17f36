#!/usr/bin/env python3
"""Run the closed-form-vs-oracle verification over the bundled config corpus
and print one line per config.  Exits nonzero if any config mismatches."""

import sys
from pathlib import Path

from latrec import load_config, spec_hash
from latrec.cli import run_verify

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


def main() -> int:
    worst = 0
    configs = sorted(CONFIG_DIR.glob("*.json"))
    if not configs:
        print(f"no configs found under {CONFIG_DIR}", file=sys.stderr)
        return 2
    width = max(len(c.name) for c in configs)
    for config in configs:
        cfg = load_config(str(config))
        status, text = run_verify(cfg, "auto")
        summary = text.splitlines()[1]
        print(f"{config.name:<{width}}  spec={spec_hash(cfg.spec)}  {summary}")
        worst = max(worst, status)
    print(f"{len(configs)} configs checked")
    return worst


if __name__ == "__main__":
    sys.exit(main())
