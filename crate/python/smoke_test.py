#!/usr/bin/env python3
"""Smoke test for the qrank Python extension.

Builds nothing itself: expects `cargo build --release -p qrank-py` to have
produced target/release/libqrank.so, which is exposed to Python under the
module name `qrank` via a symlink in a scratch directory.
"""

import os
import shutil
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load_module():
    candidates = [
        os.path.join(ROOT, "target", "release", "libqrank.so"),
        os.path.join(ROOT, "target", "debug", "libqrank.so"),
    ]
    lib = next((p for p in candidates if os.path.exists(p)), None)
    if lib is None:
        sys.exit("build the extension first: cargo build --release -p qrank-py")
    scratch = tempfile.mkdtemp(prefix="qrank_py_")
    target = os.path.join(scratch, "qrank.so")
    try:
        os.symlink(lib, target)
    except OSError:
        shutil.copyfile(lib, target)
    sys.path.insert(0, scratch)
    import qrank

    return qrank


def main():
    qrank = load_module()
    failures = []

    def check(name, ok):
        print(f"{'PASS' if ok else 'FAIL'} | {name}")
        if not ok:
            failures.append(name)

    # overpartition counts and rank coefficients
    check("pbar(3) = 8", qrank.overpartition_count(3) == 8)
    check("M_1(1,2) = 2 and symmetric", qrank.rank_coeff(1, 1, 2) == 2
          and qrank.rank_coeff(1, -1, 2) == 2)
    check("rows of M_3(r,3,3) sum to 8",
          sum(qrank.rank_coeff_mod(3, r, 3, 3) for r in range(3)) == 8)

    # exact series arithmetic through the class
    ov = qrank.Series.from_name("overpartition", 20)
    check("series coefficient pbar(5) = 24", ov.coeff_int(5) == 24)
    euler = qrank.Series.from_name("euler", 20)
    p_gen = euler.inv()
    check("p(4) = 5 from 1/(q;q)", p_gen.coeff_int(4) == 5)
    prod = euler * p_gen
    check("euler * inverse = 1", prod.coeff_int(0) == 1 and prod.coeff_int(7) == 0)
    o3 = qrank.Series.from_name("o_3_3_1", 13)
    class0 = o3.dissect(3, 0)
    check("dissection extracts the 0 class", class0.coeff_int(1) == o3.coeff_int(3))

    # round trip of the text format
    again = qrank.Series.from_text(ov.text())
    check("text round trip", again.text() == ov.text())

    # an exact identity at a small window
    ok, report = qrank.verify("chan-r0s1", 25)
    check("chan-r0s1 verifies", ok)
    ok2, _ = qrank.verify("prop3.3", 12)
    check("prop3.3 verifies at a small window", ok2)

    # cusp machinery
    table = qrank.cusps(4, 1)
    check("Gamma_0(4) has 3 cusps of widths 1,1,4",
          sorted(w for _, w in table) == [1, 1, 4])

    # one numeric transformation check
    reports = qrank.numcheck("R-shift", 1e-8, (0.13, 0.77))
    check("R-shift numeric suite passes",
          len(reports) == 3 and all(ok for _, _, _, ok in reports))

    print(f"smoke test: {len(failures)} failures")
    if failures:
        sys.exit(1)


if __name__ == "__main__":
    main()
