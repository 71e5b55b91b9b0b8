"""[[22,6,6]]_2 from two constituents of a quaternary QC code of index 3."""
from qtx.codes import dual, sum_codes
from qtx.constrx import dumps_certificate, extend_hermitian, propagate, prune_dominated
from qtx.galois import field
from qtx.qt import compose, empty_constituents, expand_generator_matrix, hull_profile, place
from qtx.wdist import min_weight


def main():
    F = field(4)
    cs = empty_constituents(F, 7, 3, 1, "hermitian")
    K = cs.K
    xi = lambda e: int(K.pow(K.prim, e))  # noqa: E731
    place(cs, 0, [[1, 0, F.prim], [0, 1, 0]])
    place(cs, 1, [[1, xi(7), xi(8)]], [[1, xi(13), xi(56)]], at=xi(9), partner_at=xi(45))
    spec = compose(cs)
    C = expand_generator_matrix(spec)
    hp = hull_profile(cs)
    D = dual(C, "hermitian")
    print(f"code [{C.n},{C.k},{min_weight(C)}]_4, hull dim {hp.hull_dim}, e = {hp.e}")
    print(f"dual [{D.n},{D.k},{min_weight(D)}]_4, d(C + dual) = {min_weight(sum_codes(C, D))}")
    w, p = extend_hermitian(C)
    print("quantum:", p.line(), "| pure:", p.pure)
    print("propagated:", ", ".join(x.line() for x in prune_dominated(propagate(p))))
    print("certificate bytes:", len(dumps_certificate(w, p)))


if __name__ == "__main__":
    main()
