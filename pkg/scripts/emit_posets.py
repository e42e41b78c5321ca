"""Write DOT and JSON renderings of the small coweight posets.

    python3 scripts/emit_posets.py --out tests/golden
"""

import argparse
import json
from pathlib import Path

from reederkit.cli import small_dot, small_json
from reederkit.rootsystem import LieType

DEFAULT_TYPES = ["A3", "C4", "B4", "D4", "E6", "E7", "E8", "F4", "G2"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("posets"))
    ap.add_argument("types", nargs="*", default=DEFAULT_TYPES)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name in args.types:
        lt = LieType.parse(name)
        (args.out / f"small_{lt}.dot").write_text(small_dot(lt))
        (args.out / f"small_{lt}.json").write_text(json.dumps(small_json(lt), indent=2, sort_keys=True) + "\n")
        print(f"wrote small_{lt}.dot and small_{lt}.json")


if __name__ == "__main__":
    main()
