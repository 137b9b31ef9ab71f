#!/usr/bin/env python3
"""Competition-style front end for the Glucose 4 solver bundled with python-sat.

    glucose_pysat.py [--proof FILE] CNF

Prints `s SATISFIABLE` plus `v` lines (exit 10) or `s UNSATISFIABLE`
(exit 20). With --proof, a DRUP certificate is written for UNSAT runs.
"""

import argparse
import sys

from pysat.formula import CNF
from pysat.solvers import Glucose4


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--proof", help="write a DRUP certificate here")
    ap.add_argument("cnf")
    args = ap.parse_args()

    formula = CNF(from_file=args.cnf)
    with Glucose4(bootstrap_with=formula.clauses, with_proof=bool(args.proof)) as solver:
        sat = solver.solve()
        if sat:
            model = solver.get_model() or []
            # pysat omits variables that never occur; pad them as false
            seen = {abs(l) for l in model}
            model += [-v for v in range(1, formula.nv + 1) if v not in seen]
            model.sort(key=abs)
            print("s SATISFIABLE")
            for i in range(0, len(model), 20):
                print("v " + " ".join(map(str, model[i:i + 20])))
            print("v 0")
            return 10
        if args.proof:
            with open(args.proof, "w") as f:
                for line in solver.get_proof():
                    f.write(line + "\n")
                f.write("0\n")
        print("s UNSATISFIABLE")
        return 20


if __name__ == "__main__":
    sys.exit(main())
