"""Skeletal diagram category with loop parameter t.

Objects are words over a two-letter alphabet: COV is the fundamental object
(printed as a filled dot), CONTRA its dual (open dot). Morphisms are exact
rational-polynomial combinations of admissible matchings: every letter lies
on exactly one edge, edges inside one word join opposite letters, edges
between the two words join equal letters. Composition stacks diagrams and
converts every closed loop into a factor t.
"""

from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .errors import CompositionError, NonIdempotentError
from .precision import DEFAULT_PRECISION, APComplex, as_exact, to_mpc

__all__ = [
    "Letter",
    "Word",
    "TPoly",
    "Matching",
    "DiagMorphism",
    "compose",
    "tensor",
    "identity",
    "swap",
    "evaluation",
    "coevaluation",
    "symmetrizer",
    "antisymmetrizer",
    "enumerate_matchings",
    "categorical_dim",
    "closure_trace",
    "vogel_dimension",
    "all_words",
    "category_law_failures",
]


class Letter(enum.Enum):
    COV = "•"
    CONTRA = "∘"

    @property
    def dual(self) -> "Letter":
        return Letter.CONTRA if self is Letter.COV else Letter.COV

    def __str__(self) -> str:
        return self.value


_LETTER_ALIASES = {
    "•": Letter.COV,
    "*": Letter.COV,
    "v": Letter.COV,
    "∘": Letter.CONTRA,
    "o": Letter.CONTRA,
    "w": Letter.CONTRA,
}


@dataclass(frozen=True)
class Word:
    letters: tuple

    @classmethod
    def parse(cls, text: str) -> "Word":
        letters = []
        for ch in text.strip():
            if ch.isspace():
                continue
            try:
                letters.append(_LETTER_ALIASES[ch.lower() if ch.isascii() else ch])
            except KeyError:
                raise ValueError(f"unknown letter {ch!r}; use • / * for the object, ∘ / o for its dual")
        return cls(tuple(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    @property
    def dual(self) -> "Word":
        return Word(tuple(l.dual for l in reversed(self.letters)))

    def __str__(self) -> str:
        return "".join(str(l) for l in self.letters) if self.letters else "1"


EMPTY_WORD = Word(())


class TPoly:
    """Polynomial in the loop parameter t with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        if isinstance(coeffs, (int, Fraction)):
            coeffs = (coeffs,)
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, *a):
        raise AttributeError("TPoly is immutable")

    @classmethod
    def t_power(cls, k: int, scale=1) -> "TPoly":
        return cls((0,) * k + (Fraction(scale),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = TPoly(other)
        return isinstance(other, TPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TPoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return TPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return TPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, TPoly) else TPoly(other).__neg__())

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TPoly(tuple(x * other for x in self.coeffs))
        if not isinstance(other, TPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return TPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return TPoly(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return TPoly(tuple(x / Fraction(other) for x in self.coeffs))

    def __call__(self, value):
        exact = as_exact(value) if not isinstance(value, Fraction) else value
        if exact is not None or isinstance(value, Fraction):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * (exact if exact is not None else value) + c
            return acc
        prec = value.prec if isinstance(value, APComplex) else DEFAULT_PRECISION
        with mp.workprec(prec):
            z = to_mpc(value)
            acc = to_mpc(0)
            for c in reversed(self.coeffs):
                acc = acc * z + to_mpc(c)
        return APComplex.from_mpc(acc, prec)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "1" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if k == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"TPoly({self})"

    def to_sympy(self):
        import sympy

        t = sympy.Symbol("t")
        return sum(sympy.Rational(c.numerator, c.denominator) * t**k for k, c in enumerate(self.coeffs))

    def factored_str(self) -> str:
        import sympy

        return str(sympy.factor(self.to_sympy()))


ZERO = TPoly()
ONE = TPoly(1)


@dataclass(frozen=True)
class Matching:
    """An admissible perfect matching between the letters of two words.

    Positions 0..len(source)-1 index the source word, the following
    len(target) positions index the target word; ``pairs`` is the sorted
    tuple of sorted index pairs.
    """

    source: Word
    target: Word
    pairs: tuple

    def __post_init__(self):
        m, n = len(self.source), len(self.target)
        pairs = tuple(sorted(tuple(sorted(p)) for p in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        seen = [False] * (m + n)
        for a, b in pairs:
            if not (0 <= a < b < m + n):
                raise ValueError(f"edge ({a}, {b}) out of range")
            if seen[a] or seen[b]:
                raise ValueError("a letter lies on two edges")
            seen[a] = seen[b] = True
            la, lb = self.letter_at(a), self.letter_at(b)
            same_word = (a < m) == (b < m)
            if same_word and la is lb:
                raise ValueError(f"edge ({a}, {b}) joins equal letters inside one word")
            if not same_word and la is not lb:
                raise ValueError(f"edge ({a}, {b}) joins different letters across the words")
        if not all(seen):
            raise ValueError("not a perfect matching: some letter is unmatched")

    def letter_at(self, idx: int) -> Letter:
        m = len(self.source)
        return self.source.letters[idx] if idx < m else self.target.letters[idx - m]

    def partner(self) -> dict:
        out = {}
        for a, b in self.pairs:
            out[a] = b
            out[b] = a
        return out

    def __str__(self) -> str:
        return f"{self.source}->{self.target}:{self.pairs}"


def enumerate_matchings(source: Word, target: Word) -> tuple:
    """All admissible matchings between two words (possibly empty)."""
    m, n = len(source), len(target)
    letters = list(source.letters) + list(target.letters)

    def admissible(a: int, b: int) -> bool:
        same_word = (a < m) == (b < m)
        return (letters[a] is not letters[b]) if same_word else (letters[a] is letters[b])

    total = m + n
    results = []

    def rec(unmatched: tuple, acc: list):
        if not unmatched:
            results.append(Matching(source, target, tuple(acc)))
            return
        a = unmatched[0]
        rest = unmatched[1:]
        for idx, b in enumerate(rest):
            if admissible(a, b):
                acc.append((a, b))
                rec(rest[:idx] + rest[idx + 1 :], acc)
                acc.pop()

    if total % 2 == 0:
        rec(tuple(range(total)), [])
    return tuple(results)


class DiagMorphism:
    """Formal combination of admissible matchings with TPoly coefficients."""

    __slots__ = ("source", "target", "terms")

    def __init__(self, source: Word, target: Word, terms: dict):
        clean = {}
        for matching, coeff in terms.items():
            if not isinstance(coeff, TPoly):
                coeff = TPoly(coeff)
            if not coeff:
                continue
            if matching.source != source or matching.target != target:
                raise ValueError("matching words disagree with the morphism words")
            clean[matching] = clean.get(matching, ZERO) + coeff if matching in clean else coeff
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "terms", dict(clean))

    def __setattr__(self, *a):
        raise AttributeError("DiagMorphism is immutable")

    @classmethod
    def basis(cls, matching: Matching, coeff=1) -> "DiagMorphism":
        return cls(matching.source, matching.target, {matching: TPoly(coeff)})

    @classmethod
    def zero(cls, source: Word, target: Word) -> "DiagMorphism":
        return cls(source, target, {})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DiagMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.terms == other.terms
        )

    __hash__ = None

    def __add__(self, other: "DiagMorphism") -> "DiagMorphism":
        if self.source != other.source or self.target != other.target:
            raise CompositionError("cannot add morphisms between different words")
        terms = dict(self.terms)
        for matching, coeff in other.terms.items():
            terms[matching] = terms.get(matching, ZERO) + coeff
        return DiagMorphism(self.source, self.target, terms)

    def __sub__(self, other: "DiagMorphism") -> "DiagMorphism":
        return self + (-other)

    def __neg__(self) -> "DiagMorphism":
        return DiagMorphism(self.source, self.target, {m: -c for m, c in self.terms.items()})

    def scaled(self, factor) -> "DiagMorphism":
        if not isinstance(factor, TPoly):
            factor = TPoly(factor)
        return DiagMorphism(self.source, self.target, {m: c * factor for m, c in self.terms.items()})

    def __truediv__(self, number):
        return self.scaled(Fraction(1, 1) / Fraction(number))

    def __mul__(self, other: "DiagMorphism") -> "DiagMorphism":
        """Composition self after other (other is applied first)."""
        if not isinstance(other, DiagMorphism):
            return NotImplemented
        return compose(self, other)

    def __matmul__(self, other: "DiagMorphism") -> "DiagMorphism":
        return tensor(self, other)

    def is_idempotent(self) -> bool:
        return self.source == self.target and compose(self, self) == self

    def __str__(self) -> str:
        if not self.terms:
            return f"0: {self.source} -> {self.target}"
        body = " + ".join(f"({c}) {m.pairs}" for m, c in sorted(self.terms.items(), key=lambda kv: kv[0].pairs))
        return f"{self.source} -> {self.target}: {body}"


def _compose_pair(f: Matching, g: Matching) -> tuple:
    """Stack matchings g then f over the shared middle word; count loops.

    Returns (pairs of the composed matching, number of closed loops). Paths
    alternate g-edges and f-edges through the middle word B; paths with both
    ends on the A/C boundary become edges of the composite, cycles confined
    to B are the loops.
    """
    nA, nB = len(g.source), len(g.target)
    nC = len(f.target)
    gp = g.partner()  # index space: A is 0..nA-1, B is nA..nA+nB-1
    fp = f.partner()  # index space: B is 0..nB-1, C is nB..nB+nC-1
    visited_b: set = set()

    def walk_from_a(a: int) -> tuple:
        p = gp[a]
        while True:
            if p < nA:
                return ("A", p)
            b = p - nA
            visited_b.add(b)
            q = fp[b]
            if q >= nB:
                return ("C", q - nB)
            visited_b.add(q)
            p = gp[nA + q]

    def walk_from_c(c: int) -> tuple:
        q = fp[nB + c]
        while True:
            if q >= nB:
                return ("C", q - nB)
            visited_b.add(q)
            p = gp[nA + q]
            if p < nA:
                return ("A", p)
            b = p - nA
            visited_b.add(b)
            q = fp[b]

    pairs = []
    done_a: set = set()
    done_c: set = set()
    for a in range(nA):
        if a in done_a:
            continue
        kind, end = walk_from_a(a)
        done_a.add(a)
        if kind == "A":
            done_a.add(end)
            pairs.append((a, end))
        else:
            done_c.add(end)
            pairs.append((a, nA + end))
    for c in range(nC):
        if c in done_c:
            continue
        kind, end = walk_from_c(c)
        if kind != "C":  # pragma: no cover - A-ended paths were found above
            raise AssertionError("path bookkeeping error in composition")
        done_c.add(c)
        done_c.add(end)
        pairs.append((nA + min(c, end), nA + max(c, end)))
    loops = 0
    for b in range(nB):
        if b in visited_b:
            continue
        loops += 1
        cur, use_f = b, True
        while True:
            visited_b.add(cur)
            cur = fp[cur] if use_f else gp[nA + cur] - nA
            if not 0 <= cur < nB:  # pragma: no cover - loops stay inside B
                raise AssertionError("loop left the middle word")
            use_f = not use_f
            if cur == b and use_f:
                break
    return tuple(pairs), loops


@functools.lru_cache(maxsize=None)
def _compose_basis(mf: Matching, mg: Matching) -> tuple:
    pairs, loops = _compose_pair(mf, mg)
    return Matching(mg.source, mf.target, pairs), loops


def compose(f: DiagMorphism, g: DiagMorphism) -> DiagMorphism:
    """The composite f . g (g first). Loop elimination contributes t per loop."""
    if g.target != f.source:
        raise CompositionError(f"cannot compose: middle words differ ({g.target} vs {f.source})")
    terms: dict = {}
    for mg, cg in g.terms.items():
        for mf, cf in f.terms.items():
            matching, loops = _compose_basis(mf, mg)
            coeff = cf * cg * TPoly.t_power(loops)
            terms[matching] = terms.get(matching, ZERO) + coeff
    return DiagMorphism(g.source, f.target, terms)


def tensor(f: DiagMorphism, g: DiagMorphism) -> DiagMorphism:
    """Side-by-side juxtaposition: words concatenate, matchings take disjoint union."""
    source = f.source + g.source
    target = f.target + g.target
    fA, fB = len(f.source), len(f.target)
    gA, gB = len(g.source), len(g.target)

    def relabel_f(idx: int) -> int:
        return idx if idx < fA else idx + gA

    def relabel_g(idx: int) -> int:
        return idx + fA if idx < gA else idx + fA + fB

    terms: dict = {}
    for mf, cf in f.terms.items():
        for mg, cg in g.terms.items():
            pairs = tuple((relabel_f(a), relabel_f(b)) for a, b in mf.pairs) + tuple(
                (relabel_g(a), relabel_g(b)) for a, b in mg.pairs
            )
            matching = Matching(source, target, pairs)
            terms[matching] = terms.get(matching, ZERO) + cf * cg
    if not f.terms or not g.terms:
        return DiagMorphism.zero(source, target)
    return DiagMorphism(source, target, terms)


def identity(word: Word) -> DiagMorphism:
    pairs = tuple((i, len(word) + i) for i in range(len(word)))
    return DiagMorphism.basis(Matching(word, word, pairs))


def swap(word: Word) -> DiagMorphism:
    """The transposition of a two-letter word."""
    if len(word) != 2:
        raise ValueError("swap is defined for two-letter words")
    flipped = Word((word.letters[1], word.letters[0]))
    return DiagMorphism.basis(Matching(word, flipped, ((0, 3), (1, 2))))


def symmetrizer(word: Word) -> DiagMorphism:
    """(Id + Swap)/2 on a two-letter word with equal letters."""
    return (identity(word) + swap(word)) / 2


def antisymmetrizer(word: Word) -> DiagMorphism:
    """(Id - Swap)/2 on a two-letter word with equal letters."""
    return (identity(word) - swap(word)) / 2


def coevaluation(word: Word) -> DiagMorphism:
    """1 -> word . word* with nested arcs."""
    L = len(word)
    target = word + word.dual
    pairs = tuple((i, 2 * L - 1 - i) for i in range(L))
    return DiagMorphism.basis(Matching(EMPTY_WORD, target, pairs))


def evaluation(word: Word) -> DiagMorphism:
    """word . word* -> 1 with nested arcs."""
    L = len(word)
    source = word + word.dual
    pairs = tuple((i, 2 * L - 1 - i) for i in range(L))
    return DiagMorphism.basis(Matching(source, EMPTY_WORD, pairs))


def _scalar_of(m: DiagMorphism) -> TPoly:
    if m.source != EMPTY_WORD or m.target != EMPTY_WORD:
        raise ValueError("not an endomorphism of the unit object")
    if not m.terms:
        return ZERO
    (coeff,) = m.terms.values()
    return coeff


def closure_trace(e: DiagMorphism) -> TPoly:
    """Trace by direct cylinder closure: join source letter i to target letter i."""
    if e.source != e.target:
        raise ValueError("trace needs an endomorphism")
    L = len(e.source)
    total = ZERO
    for matching, coeff in e.terms.items():
        partner = matching.partner()
        seen = set()
        loops = 0
        for start in range(2 * L):
            if start in seen:
                continue
            loops += 1
            idx = start
            while idx not in seen:
                seen.add(idx)
                other = partner[idx]
                seen.add(other)
                # closure edge: source i <-> target i
                idx = other + L if other < L else other - L
        total = total + coeff * TPoly.t_power(loops)
    return total


def categorical_dim(e: DiagMorphism, convention: str = "right") -> TPoly:
    """Categorical trace of an idempotent endomorphism, a polynomial in t.

    The idempotent is closed with nested coevaluation/evaluation arcs; the
    two nesting conventions ("right": e tensor id on the dual, "left":
    id on the dual tensor e) give the same scalar.
    """
    if e.source != e.target:
        raise NonIdempotentError("categorical dimension needs an endomorphism")
    if not e.is_idempotent():
        raise NonIdempotentError("the endomorphism is not idempotent")
    word = e.source
    if convention == "right":
        lo = coevaluation(word)
        mid = tensor(e, identity(word.dual))
        hi = evaluation(word)
    elif convention == "left":
        dual = word.dual
        lo_m = Matching(EMPTY_WORD, dual + word, tuple((i, 2 * len(word) - 1 - i) for i in range(len(word))))
        hi_m = Matching(dual + word, EMPTY_WORD, tuple((i, 2 * len(word) - 1 - i) for i in range(len(word))))
        lo = DiagMorphism.basis(lo_m)
        mid = tensor(identity(dual), e)
        hi = DiagMorphism.basis(hi_m)
    else:
        raise ValueError("convention must be 'right' or 'left'")
    return _scalar_of(compose(hi, compose(mid, lo)))


def vogel_dimension(a, b, c, prec: int | None = None):
    """Universal rational expression (a-2t)(b-2t)(c-2t)/(abc), t = a+b+c.

    Exact for rational inputs, precision-tracked complex otherwise.
    """
    ea, eb, ec = as_exact(a), as_exact(b), as_exact(c)
    if ea is not None and eb is not None and ec is not None:
        if ea * eb * ec == 0:
            raise ZeroDivisionError("vogel dimension needs a*b*c != 0")
        t = ea + eb + ec
        return (ea - 2 * t) * (eb - 2 * t) * (ec - 2 * t) / (ea * eb * ec)
    if prec is None:
        precs = [x.prec for x in (a, b, c) if isinstance(x, APComplex)]
        prec = min(precs) if precs else DEFAULT_PRECISION
    with mp.workprec(prec):
        av, bv, cv = to_mpc(a), to_mpc(b), to_mpc(c)
        if av * bv * cv == 0:
            raise ZeroDivisionError("vogel dimension needs a*b*c != 0")
        t = av + bv + cv
        val = (av - 2 * t) * (bv - 2 * t) * (cv - 2 * t) / (av * bv * cv)
    return APComplex.from_mpc(val, prec)


def all_words(max_len: int) -> list:
    """Every word of length <= max_len."""
    out = [EMPTY_WORD]
    for n in range(1, max_len + 1):
        for combo in itertools.product((Letter.COV, Letter.CONTRA), repeat=n):
            out.append(Word(combo))
    return out


def category_law_failures(max_len: int = 3) -> list:
    """Exhaustively check unit and associativity laws on short words.

    Returns human-readable descriptions of failures (empty list = all laws
    hold). A composite of two single matchings is again a single matching
    times a power of t, so the laws are checked on those pairs directly;
    bilinearity extends them to all morphisms.
    """
    failures = []
    words = all_words(max_len)
    homs = {}
    for u in words:
        for v in words:
            basis = enumerate_matchings(u, v)
            if basis:
                homs[(u, v)] = basis
    id_matching = {w: next(iter(identity(w).terms)) for w in words}
    for (u, v), basis in homs.items():
        for m in basis:
            if _compose_basis(m, id_matching[u]) != (m, 0):
                failures.append(f"right unit law fails for {m}")
            if _compose_basis(id_matching[v], m) != (m, 0):
                failures.append(f"left unit law fails for {m}")
    for (a, b) in list(homs):
        for c in words:
            if (b, c) not in homs:
                continue
            for d in words:
                if (c, d) not in homs:
                    continue
                for mf in homs[(b, c)]:
                    for mg in homs[(a, b)]:
                        m_fg, l_fg = _compose_basis(mf, mg)
                        for mh in homs[(c, d)]:
                            m_left, l_left = _compose_basis(mh, m_fg)
                            m_hf, l_hf = _compose_basis(mh, mf)
                            m_right, l_right = _compose_basis(m_hf, mg)
                            if m_left != m_right or l_fg + l_left != l_hf + l_right:
                                failures.append(f"associativity fails for {mh} . {mf} . {mg}")
    return failures
