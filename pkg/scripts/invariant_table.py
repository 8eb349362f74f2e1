#!/usr/bin/env python3
"""Print the invariant values of the standard surfaces and small sums.

Usage:  python3 scripts/invariant_table.py [expression ...]
Without arguments, tabulates the seven standards and a demo set of sums.
"""

import sys
import time

from ktsurf.invariants import kt_bounds, verify_certificate
from ktsurf.trisection import spine_of_expression

DEMO = ["U", "P+", "P-", "K20", "K11", "K02", "T",
        "U + U", "P+ + K11", "T + P+", "T + T", "T + K20 + T",
        "T + T + T"]


def main():
    exprs = sys.argv[1:] or DEMO
    print(f"{'surface':18s} {'b':>3s} {'c':9s} {'L':>3s} {'L*':>3s} "
          f"{'lower':>5s} exact verified  time")
    for expr in exprs:
        t0 = time.time()
        spine = spine_of_expression(expr)
        cert = kt_bounds(spine)
        ok = verify_certificate(cert).ok
        c = ",".join(str(x) for x in spine.c)
        print(f"{expr:18s} {spine.b:3d} ({c:7s}) "
              f"{cert.l_upper if cert.l_upper is not None else '?':>3} "
              f"{cert.lstar_upper if cert.lstar_upper is not None else '?':>3} "
              f"{cert.lower:5d} {str(cert.exact):5s} {str(ok):8s} "
              f"{time.time() - t0:5.1f}s")


if __name__ == "__main__":
    main()
