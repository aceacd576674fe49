"""Wider trees: k-ary families whose slow solutions are ceiling functions."""

import math

from nestrec import families as fam
from nestrec import frequency as freq
from nestrec import recursion


def main() -> None:
    for k in (3, 4):
        family = fam.kary_conolly(k)
        spec = fam.tree_of(family)
        values = recursion.evaluate(fam.recursion_of(family), fam.standard_ics(family), 40).values
        print(f"{k}-ary conolly analogue: {list(values)}")
        phis = [freq.closed_form(spec, v) for v in range(1, 13)]
        nus = [freq.nu(k, v) + 1 for v in range(1, 13)]
        print(f"  frequencies {phis} = valuation+1 {nus}: {phis == nus}")

    print()
    for k, q in ((3, 1), (3, 2), (4, 2)):
        family = fam.kary_ceiling(k, q)
        values = recursion.evaluate(fam.recursion_of(family), fam.standard_ics(family), 5000).values
        ok = all(v == math.ceil(n / (k * q)) for n, v in enumerate(values, 1))
        print(f"ceiling of n/{k * q} from the (k={k}, q={q}) family, checked to 5000: {ok}")


if __name__ == "__main__":
    main()
