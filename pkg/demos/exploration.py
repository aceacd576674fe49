"""Probing beyond the proven ranges.

Out-of-range shape parameters, the relaxed overlay family, and a
conjectured wide-tree family that turns out not to survive.
"""

from nestrec import cli
from nestrec import families as fam
from nestrec import pruning


def main() -> None:
    print("order-one family with m pushed outside 0..j (s=0, j=2):")
    points = [{"s": 0, "j": 2, "m": m} for m in (-1, 0, 1, 2, 3)]
    for row in cli.explore_rows("order_one", points, 1000):
        fate = row["dead_reason"] or f"alive at 1000, slow={row['slow']}"
        print(f"  m={row['m']:>2}  valid={row['valid']:<4} survived_to={row['survived_to']:<5} {fate}")

    print("\nrelaxed overlay family with m < 0 still prunes, but the identity breaks:")
    family = fam.Superposed(0, 4, -2, 9)
    spec = fam.tree_of(family)
    report = pruning.prune_family(family, pruning.build_prefix(spec, 168))
    print(f"  removed {report.removed} labels; anomalies: {report.anomalies[:2]}")
    same = pruning.trees_equal(report.result, pruning.build_prefix(spec, 168 - report.removed))
    print(f"  result equals fresh prefix: {same}")

    print("\nconjectured wide-tree family with a negative shape parameter:")
    for row in cli.explore_rows("neg_gamma", [{"k": 3, "gamma": -1, "delta": 4}], 1000):
        print(f"  k=3 gamma=-1 delta=4: valid={row['valid']}, "
              f"survived_to={row['survived_to']}, dead={row['dead_reason']}")
        print(f"  frequency along the slow prefix: {row['freq_match']}")
    print("  the conjectured shape matches only a short prefix; the full")
    print("  sequence dies early at every initial-condition length we tried.")


if __name__ == "__main__":
    main()
