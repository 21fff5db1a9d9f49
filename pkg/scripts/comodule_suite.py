"""Run the comodule analyses on the Hefuv family: verification, socle series,
endomorphism algebras and the W(k) isomorphism witnesses."""
import argparse

from corep import comodule as com
from corep.coalgebra import coradical
from corep.hopf import build_Hefuv, truncate_coalgebra


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, action="append", default=None, help="W(k) parameters")
    args = ap.parse_args()
    ks = tuple(args.k or (1, 2, 5))
    h = build_Hefuv()
    C = truncate_coalgebra(h, 2)
    cor = coradical(C)
    mods = com.build_paper_comodules(C, ks)
    mods["V0"] = com.hefuv_v0(C)
    for name, M in mods.items():
        ok = com.verify_comodule(M).ok
        dv = com.format_multiset(com.dimension_vector(M, cor))
        print(f"{name:6} dim {M.dim}  comodule {ok}  Loewy {com.loewy_length(M)}  [{dv}]  "
              f"{com.indecomposability_verdict(M)}")
    first = mods[f"W({ks[0]})"]
    for k in ks[1:]:
        F = com.are_isomorphic(first, mods[f"W({k})"])
        shown = "; ".join(" ".join(str(x) for x in row) for row in F) if F else "none"
        print(f"W({ks[0]}) ~ W({k}): witness [{shown}]")


if __name__ == "__main__":
    main()
