"""Write DOT files for the link quivers of a few standard instances."""
import argparse
import pathlib

from corep.hopf import parse_descriptor, truncate_coalgebra
from corep.quiver import build_Qmn, classify_quiver, link_quiver_from_coalgebra

INSTANCES = {
    "hefuv_N3": ("Hefuv", 3),
    "A_n4_d2": ("A:n=4,d=2,mu=1,q=-1", None),
    "A_n4_d4": ("A:n=4,d=4,mu=0,q=zeta4", None),
    "B_m2_n0": ("B:m=2,n=0,lambda=-1,s=1", 1),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="quivers", help="output directory")
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, (desc, N) in INSTANCES.items():
        h = parse_descriptor(desc)
        Q = link_quiver_from_coalgebra(truncate_coalgebra(h, N))
        (out / f"{name}.dot").write_text(Q.to_dot())
        regime = "finite" if h.finite else "infinite"
        print(f"{name}: {len(Q.vertices)} vertices, {sum(Q.arrows.values())} arrows; "
              f"{classify_quiver(Q, regime).verdict}")
    Q = build_Qmn(0, 0, 2)
    (out / "Qmn_0_0.dot").write_text(Q.to_dot())
    print(f"Qmn_0_0: {len(Q.vertices)} vertices, {sum(Q.arrows.values())} arrows")


if __name__ == "__main__":
    main()
