"""Turn a 10x10 LaTeX matrix (two column halves) into a gram fixture.

Usage: python3 tools/transcribe_table.py SOURCE.md START END > out.gram
"""

import re
import sys

from heckemod.formats import format_gram
from heckemod.rings.laurent import LaurentPoly


def parse_poly(s: str) -> LaurentPoly:
    s = s.replace("{", "").replace("}", "").replace(" ", "").replace("\n", "")
    terms = {}
    for sign, coef, var, exp in re.findall(r"([+-]?)(\d*)(v?)(?:\^(\d+))?", s):
        if not coef and not var:
            continue
        c = int(coef) if coef else 1
        e = (int(exp) if exp else 1) if var else 0
        terms[e] = terms.get(e, 0) + (-c if sign == "-" else c)
    return LaurentPoly.from_terms(terms)


def halves(text: str):
    blocks = re.findall(r"\\begin\{array\}\{c+\}(.*?)\\end\{array\}", text, re.S)
    out = []
    for b in blocks:
        rows = [r for r in b.split("\\\\") if r.strip()]
        out.append([[parse_poly(x) for x in r.split("&")] for r in rows])
    return out


def main():
    path, start, end = sys.argv[1], int(sys.argv[2]), int(sys.argv[3])
    lines = open(path).read().splitlines()[start - 1 : end]
    left, right = halves("\n".join(lines))
    Q = [l + r for l, r in zip(left, right)]
    assert len(Q) == 10 and all(len(row) == 10 for row in Q)
    sys.stdout.write(format_gram(Q, "E6", "10_s"))


if __name__ == "__main__":
    main()
