#!/usr/bin/env python3
"""Regenerate the frozen Bessel oracle table used by the acceptance suite.

Values are computed with mpmath at 60 significant digits, independently of
the scipy backends the library itself uses, then rounded to double precision
and written to tests/oracle_values.json.  Rerunning must reproduce the file
bit for bit; the table is committed so the test suite never depends on
mpmath at run time.
"""

import json
import os

import mpmath

NUS = ["0", "0.3", "0.5", "1", "2.7", "5", "10.5", "30"]
ZS = ["0.1", "1", "10", "50", "200"]


def main() -> None:
    mpmath.mp.dps = 60
    table = []
    for nu_s in NUS:
        for z_s in ZS:
            nu, z = mpmath.mpf(nu_s), mpmath.mpf(z_s)
            table.append(
                {
                    "nu": float(nu),
                    "z": float(z),
                    "J": float(mpmath.besselj(nu, z)),
                    "Y": float(mpmath.bessely(nu, z)),
                    "J_deriv": float(mpmath.besselj(nu, z, derivative=1)),
                    "Y_deriv": float(mpmath.bessely(nu, z, derivative=1)),
                }
            )
    out = os.path.join(os.path.dirname(__file__), "..", "tests", "oracle_values.json")
    with open(out, "w") as fh:
        json.dump(table, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print(f"wrote {len(table)} oracle entries to {os.path.normpath(out)}")


if __name__ == "__main__":
    main()
