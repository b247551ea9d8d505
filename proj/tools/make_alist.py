#!/usr/bin/env python3
"""Writes the alist files shipped under data/.

hamming74.alist  H = [1110100; 0111010; 1101001]
tanner155.alist  [155,64] quasi-cyclic Tanner code, 3x5 array of 31x31
                 circulants with shifts (1,2,4,8,16), (5,10,20,9,18),
                 (25,19,7,14,28).
"""
import sys
from pathlib import Path


def write_alist(path, n, rows):
    cols = [[] for _ in range(n)]
    for j, r in enumerate(rows):
        for i in r:
            cols[i].append(j)
    max_col = max(len(c) for c in cols)
    max_row = max(len(r) for r in rows)
    lines = [f"{n} {len(rows)}", f"{max_col} {max_row}",
             " ".join(str(len(c)) for c in cols),
             " ".join(str(len(r)) for r in rows)]
    for c in cols:
        lines.append(" ".join(str(j + 1) for j in sorted(c)) + " 0" * (max_col - len(c)))
    for r in rows:
        lines.append(" ".join(str(i + 1) for i in sorted(r)) + " 0" * (max_row - len(r)))
    Path(path).write_text("\n".join(lines) + "\n")


def hamming():
    h = ["1110100", "0111010", "1101001"]
    return 7, [[i for i, b in enumerate(row) if b == "1"] for row in h]


def tanner():
    p = 31
    shifts = [[1, 2, 4, 8, 16], [5, 10, 20, 9, 18], [25, 19, 7, 14, 28]]
    rows = []
    for br, srow in enumerate(shifts):
        for r in range(p):
            # circulant identity shifted by s: row r has a one at column (r + s) mod p
            rows.append(sorted(bc * p + (r + s) % p for bc, s in enumerate(srow)))
    return 5 * p, rows


if __name__ == "__main__":
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "data")
    out.mkdir(exist_ok=True)
    write_alist(out / "hamming74.alist", *hamming())
    write_alist(out / "tanner155.alist", *tanner())
