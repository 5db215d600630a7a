#!/usr/bin/env python3
"""Build the predict --keywords TSV from explicit `Keywords:` header lines.

Some arXiv .abs files carry a `Keywords:` (or `Key words:`) line in the header
block. This collects those, one `paper_id<TAB>kw;kw;...` line per paper, and
leaves every other paper un-annotated. No text mining is done.
"""

import argparse
import pathlib
import re
import sys

HEADER = re.compile(r"^\s*key\s*words?\s*:\s*(.*)$", re.IGNORECASE)


def header_keywords(text):
    blocks = re.split(r"^\\\\\s*$", text, flags=re.MULTILINE)
    header = blocks[1] if len(blocks) > 2 else ""
    lines = header.splitlines()
    for i, line in enumerate(lines):
        m = HEADER.match(line)
        if not m:
            continue
        value = m.group(1)
        for cont in lines[i + 1:]:
            if not cont[:1].isspace():
                break
            value += " " + cont.strip()
        parts = re.split(r"[;,]", value)
        return [p.strip() for p in parts if p.strip()]
    return []


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("abstracts", type=pathlib.Path, help="directory searched recursively for .abs files")
    ap.add_argument("-o", "--out", type=pathlib.Path, help="output TSV (default stdout)")
    args = ap.parse_args()

    rows = []
    for path in sorted(args.abstracts.rglob("*.abs")):
        kws = header_keywords(path.read_text(encoding="utf-8", errors="replace"))
        if kws:
            rows.append(f"{path.stem}\t{';'.join(kws)}")
    text = "".join(r + "\n" for r in rows)
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(f"{len(rows)} annotated papers", file=sys.stderr)


if __name__ == "__main__":
    main()
