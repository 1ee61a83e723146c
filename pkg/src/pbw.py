# Universal enveloping algebra arithmetic in a Poincaré-Birkhoff-Witt basis
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.polys.fields import FracElement

from .config import DEFAULT_SETTINGS, Settings
from .errors import AlgebraMismatch, LocalizationError, ReductionError, UnknownGenerator
from .scalars import ParamContext, Scalar, ScalarLike, divide, render_scalar

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
Terms = Dict[Monomial, Scalar]
LinearForm = Mapping[Optional[str], ScalarLike]

INVERSE_SUFFIX = "^-1"


def _accumulate(target: Terms, monomial: Monomial, coeff: Scalar) -> None:
    value = target.get(monomial)
    value = coeff if value is None else value + coeff
    if value:
        target[monomial] = value
    else:
        target.pop(monomial, None)


class Element:
    """Noncommutative polynomial: PBW monomial -> nonzero Scalar."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "UEA", terms: Optional[Mapping[Monomial, Scalar]] = None):
        self.algebra = algebra
        self.terms: Terms = {m: c for m, c in (terms or {}).items() if c}

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.algebra is not self.algebra:
                raise AlgebraMismatch(f"{other.algebra.name} element used in {self.algebra.name}")
            return other
        return self.algebra.scalar(other)

    def __add__(self, other) -> "Element":
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(terms, m, c)
        return Element(self.algebra, terms)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Element":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Element":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Element":
        if isinstance(other, Element):
            return self.algebra.multiply(self, self._coerce(other))
        return self.scale(other)

    def __rmul__(self, other) -> "Element":
        return self.scale(other)

    def __truediv__(self, other) -> "Element":
        if isinstance(other, Element):
            if not other.is_scalar:
                raise AlgebraMismatch("division only by scalar elements")
            other = other.scalar_value
        scalars = self.algebra.scalars
        return self.scale(divide(scalars.one, scalars.scalar(other)))

    def __pow__(self, exponent: int) -> "Element":
        if exponent < 0:
            raise ValueError("negative powers need a localized generator")
        result = self.algebra.one
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, factor: ScalarLike) -> "Element":
        factor = self.algebra.scalars.scalar(factor)
        return Element(self.algebra, {m: c * factor for m, c in self.terms.items()})

    def map_coefficients(self, fn) -> "Element":
        return Element(self.algebra, {m: fn(c) for m, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.algebra is other.algebra and self.terms == other.terms
        try:
            return self == self.algebra.scalar(other)
        except Exception:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_scalar(self) -> bool:
        return all(not any(m) for m in self.terms)

    @property
    def scalar_value(self) -> Scalar:
        if not self.is_scalar:
            raise AlgebraMismatch(f"{self} is not a scalar")
        return self.terms.get(self.algebra.unit_monomial, self.algebra.scalars.zero)

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def coefficient(self, monomial: Monomial) -> Scalar:
        return self.terms.get(monomial, self.algebra.scalars.zero)

    def __str__(self) -> str:
        return self.algebra.render(self)

    def __repr__(self) -> str:
        return f"Element({self.algebra.name}: {self})"


@dataclass
class Reduction:
    """Outcome of central reduction: r = sum(q_t (C_t - c_t)) + reduced."""
    reduced: Element
    cofactors: Tuple[Element, ...]
    complete: bool = True


class UEA:
    """Enveloping algebra of a Lie algebra given by a degree <= 1 bracket table.

    Generators are stored in PBW order; a formal inverse sits right after its
    base generator and commutes with everything through the derivation rule
    [X, g^-1] = -g^-1 [X, g] g^-1.
    """

    def __init__(self, generators: Sequence[str], scalars: ParamContext,
                 brackets: Mapping[Tuple[str, str], LinearForm], *, name: str = "algebra",
                 significance: Optional[Sequence[str]] = None,
                 inverses: Optional[Mapping[str, str]] = None,
                 settings: Settings = DEFAULT_SETTINGS):
        if len(set(generators)) != len(generators):
            raise UnknownGenerator(f"duplicate generator names in {name}")
        self.name = name
        self.generators: Tuple[str, ...] = tuple(generators)
        self.index = {g: i for i, g in enumerate(self.generators)}
        self.scalars = scalars
        self.settings = settings
        self.unit_monomial: Monomial = (0,) * len(self.generators)
        self.inverses: Dict[str, str] = dict(inverses or {})
        self._partner: Dict[int, int] = {}
        for inverse, base in self.inverses.items():
            self._partner[self.index[inverse]] = self.index[base]
            self._partner[self.index[base]] = self.index[inverse]
        self._raw_brackets = {pair: dict(form) for pair, form in brackets.items()}
        self._table: Dict[Tuple[int, int], "Element"] = {}
        for (left, right), form in brackets.items():
            i, j = self._require(left), self._require(right)
            value = self._linear(form)
            if i == j:
                if value:
                    raise AlgebraMismatch(f"[{left},{left}] must vanish")
                continue
            self._table[(i, j)] = value
            self._table[(j, i)] = -value
        bases = [g for g in self.generators if g not in self.inverses]
        order = list(significance) if significance else list(reversed(bases))
        order += [g for g in reversed(bases) if g not in order]
        order += list(self.inverses)
        self.significance: Tuple[int, ...] = tuple(self._require(g) for g in order)
        self._weights = tuple(-1 if g in self.inverses else 1 for g in self.generators)
        self._gen_cache: Dict[Tuple[Monomial, int], Terms] = {}
        self._mono_cache: Dict[Tuple[Monomial, Monomial], Terms] = {}
        self._pending: List[Tuple[int, int]] = []
        self._twin: Optional["UEA"] = None

    def __repr__(self) -> str:
        return f"UEA({self.name}: {', '.join(self.generators)})"

    def _require(self, name: str) -> int:
        index = self.index.get(name)
        if index is None:
            raise UnknownGenerator(f"{name!r} is not a generator of {self.name}")
        return index

    def _linear(self, form: LinearForm) -> "Element":
        terms: Terms = {}
        for gen, coeff in form.items():
            monomial = self.unit_monomial if gen is None else self._unit(self._require(gen))
            _accumulate(terms, monomial, self.scalars.scalar(coeff))
        return Element(self, terms)

    def _unit(self, index: int) -> Monomial:
        exps = [0] * len(self.generators)
        exps[index] = 1
        return tuple(exps)

    # construction helpers

    @property
    def one(self) -> Element:
        return Element(self, {self.unit_monomial: self.scalars.one})

    @property
    def zero(self) -> Element:
        return Element(self)

    def scalar(self, value: ScalarLike) -> Element:
        return Element(self, {self.unit_monomial: self.scalars.scalar(value)})

    def gen(self, name: str) -> Element:
        return Element(self, {self._unit(self._require(name)): self.scalars.one})

    def monomial(self, exponents: Mapping[str, int], coeff: ScalarLike = 1) -> Element:
        exps = [0] * len(self.generators)
        for name, exp in exponents.items():
            exps[self._require(name)] = exp
        return Element(self, {tuple(exps): self.scalars.scalar(coeff)})

    def word(self, names: Sequence[str], coeff: ScalarLike = 1) -> Element:
        """Normal-ordered product of the named generators, left to right."""
        terms: Terms = {self.unit_monomial: self.scalars.scalar(coeff)}
        for name in names:
            g = self._require(name)
            step: Terms = {}
            for mono, c in terms.items():
                for mono2, c2 in self._mono_times_gen(mono, g).items():
                    _accumulate(step, mono2, c * c2)
            terms = step
        return Element(self, terms)

    def normal_order(self, raw: Iterable[Tuple[ScalarLike, Sequence[str]]]) -> Element:
        result = self.zero
        for coeff, names in raw:
            result = result + self.word(names, coeff)
        return result

    def bracket_table(self) -> Dict[Tuple[str, str], Element]:
        return {(self.generators[i], self.generators[j]): value
                for (i, j), value in self._table.items() if i < j}

    # products

    def multiply(self, a: Element, b: Element) -> Element:
        if a.algebra is not self or b.algebra is not self:
            raise AlgebraMismatch("multiply needs elements of the same algebra")
        terms: Terms = {}
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                factor = ca * cb
                for m, c in self._mono_times_mono(ma, mb).items():
                    _accumulate(terms, m, factor * c)
        return Element(self, terms)

    def commutator(self, a: Element, b: Element) -> Element:
        return self.multiply(a, b) - self.multiply(b, a)

    def _last(self, monomial: Monomial) -> int:
        for i in range(len(monomial) - 1, -1, -1):
            if monomial[i]:
                return i
        return -1

    def _shift(self, monomial: Monomial, index: int, delta: int) -> Monomial:
        exps = list(monomial)
        exps[index] += delta
        return tuple(exps)

    def _mono_times_gen(self, monomial: Monomial, g: int) -> Terms:
        key = (monomial, g)
        cached = self._gen_cache.get(key)
        if cached is not None:
            return cached
        last = self._last(monomial)
        partner = self._partner.get(g)
        if partner is not None and last == partner:
            result = {self._shift(monomial, partner, -1): self.scalars.one}
        elif last <= g:
            result = {self._shift(monomial, g, 1): self.scalars.one}
        else:
            # m' x g = (m' g) x + m' [x, g]
            head = self._shift(monomial, last, -1)
            result = {}
            for mono, c in self._mono_times_gen(head, g).items():
                for mono2, c2 in self._mono_times_gen(mono, last).items():
                    _accumulate(result, mono2, c * c2)
            for t, c in self._bracket(last, g).terms.items():
                for mono2, c2 in self._mono_times_mono(head, t).items():
                    _accumulate(result, mono2, c * c2)
        self._gen_cache[key] = result
        return result

    def _mono_times_mono(self, a: Monomial, b: Monomial) -> Terms:
        key = (a, b)
        cached = self._mono_cache.get(key)
        if cached is not None:
            return cached
        terms: Terms = {a: self.scalars.one}
        for g, exp in enumerate(b):
            for _ in range(exp):
                step: Terms = {}
                for mono, c in terms.items():
                    for mono2, c2 in self._mono_times_gen(mono, g).items():
                        _accumulate(step, mono2, c * c2)
                terms = step
        self._mono_cache[key] = terms
        return terms

    def _bracket(self, x: int, g: int) -> Element:
        value = self._table.get((x, g))
        if value is not None:
            return value
        inverse_base = self._partner.get(g) if self.generators[g] in self.inverses else None
        if inverse_base is not None and x != inverse_base:
            value = self._derive_inverse(x, g, inverse_base)
        elif self.generators[x] in self.inverses and g != self._partner[x]:
            value = -self._derive_inverse(g, x, self._partner[x])
        else:
            value = self.zero
        self._table[(x, g)] = value
        self._table[(g, x)] = -value
        return value

    def _derive_inverse(self, x: int, inverse: int, base: int) -> Element:
        """[x, b^-1] = -b^-1 [x, b] b^-1."""
        pair = (x, inverse)
        if pair in self._pending or len(self._pending) >= self.settings.localization_depth:
            chain = " -> ".join(f"[{self.generators[a]},{self.generators[b]}]" for a, b in self._pending + [pair])
            raise LocalizationError(f"derivation rule does not terminate: {chain}")
        self._pending.append(pair)
        try:
            inv = Element(self, {self._unit(inverse): self.scalars.one})
            return -(inv * self._bracket(x, base) * inv)
        finally:
            self._pending.pop()

    # localization and context changes

    def adjoin_inverse(self, name: str) -> "UEA":
        """Algebra with a formal inverse of ``name`` adjacent to it in PBW order."""
        base = self._require(name)
        inverse = name + INVERSE_SUFFIX
        gens = list(self.generators)
        gens.insert(base + 1, inverse)
        significance = [self.generators[i] for i in self.significance if self.generators[i] not in self.inverses]
        extended = UEA(gens, self.scalars, self._raw_brackets, name=f"{self.name}[{inverse}]",
                       significance=significance, inverses={**self.inverses, inverse: name},
                       settings=self.settings)
        inv_index = extended.index[inverse]
        for g in extended.generators:
            if g not in (name, inverse):
                extended._bracket(extended.index[g], inv_index)
        logger.debug("adjoined %s to %s", inverse, self.name)
        return extended

    def inverse(self, name: str) -> Element:
        return self.gen(name + INVERSE_SUFFIX)

    def with_scalars(self, scalars: ParamContext) -> "UEA":
        raw = {pair: {g: scalars.convert(self.scalars.scalar(c)) for g, c in form.items()}
               for pair, form in self._raw_brackets.items()}
        bases = [g for g in self.generators if g not in self.inverses]
        significance = [self.generators[i] for i in self.significance if self.generators[i] not in self.inverses]
        algebra = UEA(bases, scalars, raw, name=self.name, significance=significance, settings=self.settings)
        for inverse, base in self.inverses.items():
            algebra = algebra.adjoin_inverse(base)
        algebra.name = self.name
        return algebra

    def gaussian_twin(self) -> "UEA":
        if self.scalars.gaussian:
            return self
        if self._twin is None:
            self._twin = self.with_scalars(self.scalars.gaussian_twin())
        return self._twin

    def lift(self, element: Element) -> Element:
        """Re-express an element of another algebra here, matching generators by name."""
        if element.algebra is self:
            return element
        source = element.algebra
        result = self.zero
        for monomial, coeff in element.terms.items():
            names: List[str] = []
            for index, exp in enumerate(monomial):
                names.extend([source.generators[index]] * exp)
            result = result + self.word(names, self.scalars.convert(coeff))
        return result

    # ordering and reduction

    def weight(self, monomial: Monomial) -> int:
        return sum(w * e for w, e in zip(self._weights, monomial))

    def order_key(self, monomial: Monomial) -> Tuple:
        return (self.weight(monomial), tuple(monomial[i] for i in self.significance))

    def leading(self, element: Element) -> Tuple[Monomial, Scalar]:
        if element.is_zero:
            raise ReductionError("zero element has no leading term")
        monomial = max(element.terms, key=self.order_key)
        return monomial, element.terms[monomial]

    def reduce_mod_center(self, r: Element, relations: Sequence[Tuple[Element, ScalarLike]],
                          degree_bound: Optional[int] = None) -> Reduction:
        """Divide ``r`` by the central relations C_t = c_t.

        Leading monomials are taken in the graded order with generator
        significance ``self.significance``; a term is reduced by the first
        relation whose leading monomial divides it.  Cofactors above
        ``degree_bound`` are not used; if that leaves a remainder the bound
        is raised once before giving up.
        """
        if degree_bound is None:
            degree_bound = max((self.weight(m) for m in r.terms), default=0)
        result = self._divide(r, relations, degree_bound)
        if not result.complete:
            result = self._divide(r, relations, degree_bound + 1)
        if not result.complete and not result.reduced.is_zero:
            return Reduction(r, tuple(self.zero for _ in relations), complete=False)
        return result

    def _divide(self, r: Element, relations: Sequence[Tuple[Element, ScalarLike]], bound: int) -> Reduction:
        prepared = []
        for casimir, value in relations:
            poly = casimir - self.scalar(value)
            lm, lc = self.leading(casimir)
            prepared.append((poly, lm, lc))
        cofactors: List[Terms] = [{} for _ in relations]
        work: Terms = dict(r.terms)
        remainder: Terms = {}
        complete = True
        steps = 0
        while work:
            steps += 1
            if steps > self.settings.reduction_step_limit:
                raise ReductionError(f"central reduction in {self.name} exceeded {self.settings.reduction_step_limit} steps")
            monomial = max(work, key=self.order_key)
            coeff = work[monomial]
            for t, (poly, lm, lc) in enumerate(prepared):
                if all(a >= b for a, b in zip(monomial, lm)):
                    quotient = tuple(a - b for a, b in zip(monomial, lm))
                    if self.weight(quotient) > bound:
                        complete = False
                        continue
                    factor = coeff / lc
                    _accumulate(cofactors[t], quotient, factor)
                    for m, c in poly.terms.items():
                        for m2, c2 in self._mono_times_mono(quotient, m).items():
                            _accumulate(work, m2, -factor * c * c2)
                    break
            else:
                remainder[monomial] = coeff
                del work[monomial]
        return Reduction(Element(self, remainder), tuple(Element(self, q) for q in cofactors), complete)

    # rendering

    def render_monomial(self, monomial: Monomial) -> str:
        parts = []
        for index, exp in enumerate(monomial):
            if not exp:
                continue
            name = self.generators[index]
            if name in self.inverses:
                parts.append(f"{self.inverses[name]}^-{exp}")
            else:
                parts.append(name if exp == 1 else f"{name}^{exp}")
        return "*".join(parts)

    def render(self, element: Element) -> str:
        if element.is_zero:
            return "0"
        pieces = []
        for monomial in sorted(element.terms, key=self.order_key, reverse=True):
            coeff = element.terms[monomial]
            body = self.render_monomial(monomial)
            text = render_scalar(coeff)
            if not body:
                piece = text
            elif coeff == 1:
                piece = body
            elif coeff == -1:
                piece = "-" + body
            else:
                expr = coeff.as_expr()
                if expr.is_Add:
                    text = f"({text})"
                piece = f"{text}*{body}"
            pieces.append(piece)
        out = pieces[0]
        for piece in pieces[1:]:
            out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return out


def check_central(element: Element) -> List[Tuple[str, Element]]:
    """Generators that fail to commute with ``element``, with the commutator as witness."""
    algebra = element.algebra
    witnesses = []
    for name in algebra.generators:
        if name in algebra.inverses:
            continue
        value = algebra.commutator(element, algebra.gen(name))
        if not value.is_zero:
            witnesses.append((name, value))
    return witnesses


def is_scalar_like(value) -> bool:
    return isinstance(value, (int, FracElement)) and not isinstance(value, bool)
