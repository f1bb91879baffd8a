"""Rewrite tests/fixtures/cli/*.json from the current CLI. Review the diff before committing."""
import io
import os
import sys
from pathlib import Path

TESTS = Path(__file__).resolve().parent.parent / "tests"
sys.path.insert(0, str(TESTS))

from cli_cases import CASES  # noqa: E402
from selfref.cli import main  # noqa: E402


def run():
    os.chdir(TESTS)
    out_dir = TESTS / "fixtures" / "cli"
    out_dir.mkdir(exist_ok=True)
    for stem, argv in CASES:
        buf = io.StringIO()
        code = main(argv + ["--format", "structured"], out=buf)
        if code != 0:
            raise SystemExit(f"{stem}: exit {code}")
        (out_dir / f"{stem}.json").write_text(buf.getvalue())
        print(f"wrote {stem}.json")


if __name__ == "__main__":
    run()
