"""Rewrite tests/golden/ from the current code.

Only run this after a deliberate output-format or algorithm change, and
review the diff before committing it.
"""

import shutil
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from golden_run import GOLDEN_DIR, run_pipeline  # noqa: E402


def main():
    with tempfile.TemporaryDirectory() as tmp:
        produced = run_pipeline(Path(tmp))
        if GOLDEN_DIR.exists():
            shutil.rmtree(GOLDEN_DIR)
        for rel, path in produced.items():
            dest = GOLDEN_DIR / rel
            dest.parent.mkdir(parents=True, exist_ok=True)
            shutil.copyfile(path, dest)
    print(f"wrote {len(produced)} files under {GOLDEN_DIR}")


if __name__ == "__main__":
    main()
