"""Build H(3,3), J(9,3) and Odd-4 and check them against their arrays."""

import argparse

from drgfeas.graphs import WITNESSES, check_witness


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--only", choices=sorted(WITNESSES))
    args = parser.parse_args()

    for name in [args.only] if args.only else sorted(WITNESSES):
        rep = check_witness(name)
        w = WITNESSES[name]
        print(f"{w.title}: array {rep.distance.array}, "
              f"max co-cliques {sorted(set(rep.coclique.max_sizes))}, "
              f"theta1 {rep.interlacing.theta1:.6f}")
        spec = ", ".join(f"{round(t, 6) + 0:g}^{m}" for t, m in rep.spectrum.observed)
        print(f"  spectrum {spec}")
        for f in rep.failures:
            print("  FAIL", f)
        print("  ok" if rep.ok else "  not ok")


if __name__ == "__main__":
    main()
