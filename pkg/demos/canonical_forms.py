"""Classify 2x2 bilinear forms up to congruence and read a form off an algebra."""

from leibkit.catalogue import instantiate, parse_catalogue
from leibkit.forms import (
    BilinearForm2,
    congruence_canonical,
    congruent,
    extract_v_form,
    section_two_eligible,
)
from leibkit.linalg import Matrix


def classify(rows):
    res = congruence_canonical(BilinearForm2(Matrix(rows)))
    ext = f", adjoining sqrt({res.extension_d})" if res.extension_d is not None else ""
    print(f"  {rows!r:24s} -> {res.kind}{ext}")
    return res


def main():
    print("five congruence classes:")
    classify([[0, 3], [-3, 0]])
    classify([[1, 2], [2, 4]])
    classify([[2, 0], [0, 3]])
    classify([[0, 1], [-1, 1]])
    classify([[0, 2], [4, 0]])

    # kind (v) parameters pair up as c and 1/c; the canonical pick is fixed
    a = BilinearForm2(Matrix([[0, 1], [2, 0]]))
    b = BilinearForm2(Matrix([[0, 2], [1, 0]]))
    print(f"\n[[0,1],[2,0]] congruent to [[0,2],[1,0]]: {congruent(a, b)}")
    print(f"both canonicalize to {congruence_canonical(a).kind}")

    # the form attached to an algebra with dim A^2 = 3 and dim Leib = 1
    cat = parse_catalogue()
    alg = instantiate(cat.entry("A_1"))
    print(f"\nA_1 eligible for form extraction: {section_two_eligible(alg)}")
    form, basis = extract_v_form(alg)
    res = congruence_canonical(form)
    print(f"extracted matrix {form.matrix.rows} -> {res.kind}")
    print(f"adapted complement spans {basis.complement}")


if __name__ == "__main__":
    main()
