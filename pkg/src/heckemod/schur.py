"""Characters of Hecke algebra modules, Schur elements and cyclotomic defects."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rings import linalg
from .rings.laurent import LaurentPoly, cyclotomic_polynomial, poly_valuation
from .weyl import WeylType, enumerate_elements, poincare_polynomial
from .wgraph import GenMatrices, _LaurentRing, trace, word_matrix


class IncompleteRepSet(ValueError):
    pass


class OrthogonalityViolation(ArithmeticError):
    pass


@dataclass(frozen=True)
class SchurElement:
    label: str
    c: LaurentPoly  # Laurent polynomial in u
    a: int
    f: int | Fraction
    monic_part: LaurentPoly  # polynomial in u with constant term 1

    @classmethod
    def from_poly(cls, label: str, c: LaurentPoly) -> "SchurElement":
        if not c:
            raise ArithmeticError(f"zero Schur element for {label}")
        a = -c.low
        f = c.trailing_coeff()
        monic = c.shift(a).scale(Fraction(1) / Fraction(f))
        f = int(f) if Fraction(f).denominator == 1 else Fraction(f)
        return cls(label, c, a, f, monic)


def character_value(m: GenMatrices, word) -> LaurentPoly:
    """Trace of ``T_w`` on the module, as a Laurent polynomial in ``v``."""
    return trace(word_matrix(m, tuple(word)))


def _v_to_u(p: LaurentPoly) -> LaurentPoly:
    terms = p.terms()
    if any(e % 2 for e in terms):
        raise ArithmeticError("expected a polynomial in u = v^2")
    return LaurentPoly.from_terms({e // 2: c for e, c in terms.items()})


def _character_tables(reps: dict, t: WeylType):
    """Per label, the traces of ``T_w`` and ``T_{w^-1}`` over all elements."""
    elems = enumerate_elements(t)
    out = {}
    for lab, m in reps.items():
        fwd = {(): linalg.identity(m.dim, _LaurentRing)}
        rev = {(): fwd[()]}
        chi, chi_inv = [], []
        for w in elems.words:
            if w:
                prefix, s = w[:-1], w[-1]
                fwd[w] = linalg.matmul(fwd[prefix], m.mats[s])
                rev[w] = linalg.matmul(m.mats[s], rev[prefix])
            chi.append(trace(fwd[w]))
            chi_inv.append(trace(rev[w]))
        out[lab] = (chi, chi_inv)
    return elems, out


def schur_elements(reps: dict, t: WeylType, check_orthogonality: bool = True) -> dict:
    """Schur elements of all irreducible modules, keyed by label.

    ``reps`` maps every label to its generator matrices; the dimensions must
    satisfy ``sum d^2 = |W|``.
    """
    total = sum(m.dim**2 for m in reps.values())
    if total != t.order:
        raise IncompleteRepSet(f"sum of squared dimensions is {total}, expected {t.order}")
    elems, chars = _character_tables(reps, t)
    weights = [LaurentPoly.monomial(-2 * l) for l in elems.lengths]

    def pairing(lam, mu):
        acc = LaurentPoly()
        chi_l = chars[lam][0]
        chi_m_inv = chars[mu][1]
        for wt, a, b in zip(weights, chi_l, chi_m_inv):
            if a and b:
                acc = acc + wt * a * b
        return acc

    labels = list(reps)
    if check_orthogonality:
        for i, lam in enumerate(labels):
            for mu in labels[i + 1 :]:
                if pairing(lam, mu):
                    raise OrthogonalityViolation(f"characters of {lam} and {mu} are not orthogonal")
    out = {}
    for lam in labels:
        s = pairing(lam, lam)
        c = _v_to_u(s).scale(Fraction(1, reps[lam].dim))
        out[lam] = SchurElement.from_poly(lam, c)
    return out


def phi_e_defect(c: SchurElement | LaurentPoly, e: int) -> int:
    """Multiplicity of the ``e``-th cyclotomic polynomial in the Schur element (in ``u``)."""
    poly = c.c if isinstance(c, SchurElement) else c
    return poly_valuation(poly, cyclotomic_polynomial(e))


def semisimple_at(t: WeylType, e: int) -> bool:
    """Whether the specialized algebra with ``u`` a primitive ``e``-th root of unity is semisimple."""
    if e < 2:
        raise ValueError("e must be at least 2")
    return phi_e_defect(poincare_polynomial(t), e) == 0


def divides_poincare(s: SchurElement, t: WeylType) -> bool:
    return s.monic_part.divides(poincare_polynomial(t))
