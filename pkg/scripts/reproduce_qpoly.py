"""Q-polynomial Shilla arrays for a given b, with and without exclusion rules."""

import argparse

from drgfeas.arrays import format_array
from drgfeas.feasibility import NO_RULES, feasibility_check, load_rules
from drgfeas.shilla import qpoly_candidates, qpoly_raw_candidates, shilla_array


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--b", type=int, default=3)
    args = parser.parse_args()

    rules = load_rules()
    kept = set(qpoly_candidates(args.b, rules))
    unruled = set(qpoly_candidates(args.b, NO_RULES))
    for p in qpoly_raw_candidates(args.b):
        arr = shilla_array(p)
        if p in kept:
            status = "kept"
        elif p in unruled:
            status = "excluded by rule: " + feasibility_check(arr, rules).known_result
        else:
            status = "; ".join(feasibility_check(arr, NO_RULES).reasons)
        print(f"{format_array(arr):28} {p}  {status}")


if __name__ == "__main__":
    main()
