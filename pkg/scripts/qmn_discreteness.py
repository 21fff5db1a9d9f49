"""Tabulate the window classification of Q^{m,n} against the rule
"discrete iff m != n or m = n = 0"."""
import argparse

from corep.quiver import build_Qmn, classify_quiver


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=3)
    ap.add_argument("--radius", type=int, default=6)
    args = ap.parse_args()
    agree = total = 0
    for m in range(-args.bound, args.bound + 1):
        for n in range(-args.bound, args.bound + 1):
            if (m + n) % 2 or (m, n) in ((1, 1), (-1, -1)):
                continue
            res = classify_quiver(build_Qmn(m, n, args.radius), "infinite")
            predicted = m != n or m == n == 0
            found = res.verdict.startswith("candidate case")
            total += 1
            agree += predicted == found
            print(f"m={m:+d} n={n:+d}  {'discrete' if predicted else 'not discrete':>12}  {res.verdict}")
    print(f"{agree}/{total} windows agree with the rule")


if __name__ == "__main__":
    main()
