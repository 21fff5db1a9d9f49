"""Print the Hefuv fusion table computed from a truncation and compare it to
the closed-form rules C_i C_j = C_|i-j| + C_{i+j}, C_i^2 = 1 + g + C_{2i}."""
import argparse

from corep.fusion import fusion_ring_from_coalgebra, natural_key
from corep.hopf import build_Hefuv, truncate_coalgebra


def closed_form(a, b):
    i, j = (0 if x in ("1", "g") else int(x[1:]) for x in (a, b))
    if not i and not j:
        return {"1": 1} if a == b else {"g": 1}
    if not i or not j:
        return {f"C{i or j}": 1}
    if i == j:
        return {"1": 1, "g": 1, f"C{2 * i}": 1}
    return {f"C{abs(i - j)}": 1, f"C{i + j}": 1}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-N", type=int, default=4, help="truncation degree")
    args = ap.parse_args()
    R = fusion_ring_from_coalgebra(truncate_coalgebra(build_Hefuv(), args.N))
    mismatches = 0
    for a in R.basis:
        for b in R.basis:
            if not R.complete(a, b):
                continue
            got = R.alpha[a, b]
            ok = got == closed_form(a, b)
            mismatches += not ok
            terms = " + ".join(sorted(got, key=natural_key))
            print(f"{a} * {b} = {terms}" + ("" if ok else "   <-- differs from closed form"))
    print(f"complete products checked: {sum(R.complete(a, b) for a in R.basis for b in R.basis)}, "
          f"mismatches: {mismatches}")


if __name__ == "__main__":
    main()
