"""Length-42 quaternary Hermitian example: weights, hull, and Construction X bounds."""
import json
import pathlib
import time

from qtx.codes import dual, intersect_codes, sum_codes
from qtx.constrx import WeightOptions, extend_hermitian
from qtx.qt import QTCodeSpec, expand_generator_matrix, shift_symmetry
from qtx.wdist import min_weight, weight_enumerator_prefix

SPEC = pathlib.Path(__file__).resolve().parents[1] / "specs" / "hermitian42.json"


def series(counts):
    return " + ".join(("1" if i == 0 else f"{c}y^{i}") for i, c in enumerate(counts) if c)


def main():
    spec = QTCodeSpec.from_json(json.loads(SPEC.read_text()))
    sym = shift_symmetry(spec)
    C = expand_generator_matrix(spec)
    D = dual(C, "hermitian")
    H, S = intersect_codes(C, D), sum_codes(C, D)
    t0 = time.perf_counter()
    for name, A, upto in [("C", C, 11), ("hull", H, 18), ("dual", D, 13), ("C+dual", S, 9)]:
        d = min_weight(A, symmetry=sym)
        print(f"{name:7s} [{A.n},{A.k},{d}]_4   {series(weight_enumerator_prefix(A, upto, symmetry=sym))}")
    print("wgt((C+dual) \\ C) =", min_weight(S, exclude=C, symmetry=sym))
    w, p = extend_hermitian(C, opts=WeightOptions(symmetry=sym))
    print("Construction X:", p.bounds_line(), "| pure-distance bound", p.bounds.get("d_pure"))
    print(f"({time.perf_counter() - t0:.1f} s)")


if __name__ == "__main__":
    main()
