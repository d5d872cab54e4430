"""Enumerate Shilla arrays with b = 3 and compare with the 12 published arrays."""

import argparse
import sys

from drgfeas.arrays import parse_array
from drgfeas.enumeration import EnumerationQuery, enumerate_shilla, verify_list

EXPECTED = [
    "{12,10,5;1,1,8}", "{12,10,2;1,2,8}", "{12,10,3;1,3,8}", "{15,12,6;1,2,10}",
    "{24,18,9;1,1,16}", "{27,20,10;1,2,18}", "{30,22,9;1,3,20}", "{42,30,12;1,6,28}",
    "{60,42,18;1,6,40}", "{69,48,24;1,4,46}", "{93,64,24;1,6,62}", "{105,72,24;1,12,70}",
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--a3-max", type=int, default=1295)
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    result = enumerate_shilla(EnumerationQuery(3, 3, args.a3_max, jobs=args.jobs))
    for s in result.survivors:
        print(f"{s.array}  {s.params}  {s.feasibility.overall}")
    print(f"# {len(result.survivors)} survivors, {result.visited} candidates, "
          f"{result.wall_time:.1f}s")
    diff = verify_list(result, [parse_array(t) for t in EXPECTED])
    for line in diff.lines():
        print(line)
    print("# matches the 12-array list" if diff.empty else "# differs from the 12-array list")
    return 0 if diff.empty else 1


if __name__ == "__main__":
    sys.exit(main())
