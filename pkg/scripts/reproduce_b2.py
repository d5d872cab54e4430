"""Shilla arrays with b = 2: the five known arrays and any further survivors."""

import argparse

from drgfeas.arrays import format_array
from drgfeas.enumeration import EnumerationQuery, enumerate_shilla

KNOWN = {"{4,3,3;1,1,2}", "{6,4,4;1,1,3}", "{6,4,2;1,2,3}",
         "{10,6,4;1,2,5}", "{18,10,4;1,4,9}"}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--a3-max", type=int, default=143)
    args = parser.parse_args()

    result = enumerate_shilla(EnumerationQuery(2, 2, args.a3_max))
    found = set()
    for s in result.survivors:
        text = format_array(s.array)
        found.add(text)
        print(f"{text}  {s.params}  {'known' if text in KNOWN else 'extra'}")
    print(f"# missing: {sorted(KNOWN - found) or 'none'}")


if __name__ == "__main__":
    main()
