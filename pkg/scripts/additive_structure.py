"""Structure of the binary [188,73] QC code behind an additive ((48,2^23))_4 code.

Only dimensions and self-orthogonality are computed; the distance needs a
search far beyond desk scale.
"""
import json
import pathlib

from qtx.codes import dual, intersect_codes, sum_codes
from qtx.constrx import check_extension, extend_symplectic, extend_trace_symplectic
from qtx.galois import field
from qtx.qt import QTCodeSpec, decompose, expand_generator_matrix, hull_profile

SPEC = pathlib.Path(__file__).resolve().parents[1] / "specs" / "additive_gf16.json"


def main():
    spec = QTCodeSpec.from_json(json.loads(SPEC.read_text()))
    C = expand_generator_matrix(spec)
    D = dual(C, "symplectic")
    hp = hull_profile(decompose(spec))
    print(f"C {C!r}  hull {intersect_codes(C, D).k} (constituents: {hp.hull_dim})  "
          f"dual {D!r}  sum {sum_codes(C, D)!r}  e = {hp.e}")
    w, _ = extend_symplectic(C, compute_bounds=False)
    print(f"extension {w.extended!r}, self-orthogonal: {check_extension(w)}")
    wt, p, rows = extend_trace_symplectic(C, field(4), basis=(2, 3), compute_bounds=False)
    print(f"compressed over F_4: {p.head()}, {rows.shape[0]} additive generators")


if __name__ == "__main__":
    main()
