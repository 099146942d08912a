"""Formulas, consequents, the text syntax, and a checker for Hilbert-style derivations.

Surface syntax (ASCII, Unicode aliases accepted)::

    T  F  p  ~a  a & b  a | b  (a)        ⊤ ⊥ ∼ ¬ ∧ ∨
    consequent:  a |- b                   ⊢

``~`` binds tightest, then ``&``, then ``|``; binary operators associate to
the left. ``T`` and ``F`` are the constants and cannot be variable names.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


@dataclass(frozen=True)
class Top:
    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Bot:
    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Neg:
    child: "Formula"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return to_text(self)


Formula = Union[Top, Bot, Var, Neg, And, Or]


@dataclass(frozen=True)
class Consequent:
    lhs: Formula
    rhs: Formula

    def __str__(self):
        return f"{to_text(self.lhs)} |- {to_text(self.rhs)}"

    @property
    def variables(self) -> list[str]:
        return sorted(variables(self.lhs) | variables(self.rhs))


def variables(phi: Formula) -> set[str]:
    if isinstance(phi, Var):
        return {phi.name}
    if isinstance(phi, Neg):
        return variables(phi.child)
    if isinstance(phi, (And, Or)):
        return variables(phi.left) | variables(phi.right)
    return set()


def subformulas(phi: Formula) -> Iterator[Formula]:
    yield phi
    if isinstance(phi, Neg):
        yield from subformulas(phi.child)
    elif isinstance(phi, (And, Or)):
        yield from subformulas(phi.left)
        yield from subformulas(phi.right)


def depth(phi: Formula) -> int:
    if isinstance(phi, Neg):
        return 1 + depth(phi.child)
    if isinstance(phi, (And, Or)):
        return 1 + max(depth(phi.left), depth(phi.right))
    return 0


def substitute(phi: Formula, mapping: dict) -> Formula:
    """Replace variables by formulas (keys are variable names)."""
    if isinstance(phi, Var):
        return mapping.get(phi.name, phi)
    if isinstance(phi, Neg):
        return Neg(substitute(phi.child, mapping))
    if isinstance(phi, And):
        return And(substitute(phi.left, mapping), substitute(phi.right, mapping))
    if isinstance(phi, Or):
        return Or(substitute(phi.left, mapping), substitute(phi.right, mapping))
    return phi


# --------------------------------------------------------------------------
# printing

_PREC = {Or: 1, And: 2}


def to_text(phi: Formula) -> str:
    """Render with the fewest parentheses that still parse back to ``phi``."""
    if isinstance(phi, Top):
        return "T"
    if isinstance(phi, Bot):
        return "F"
    if isinstance(phi, Var):
        return phi.name
    if isinstance(phi, Neg):
        inner = to_text(phi.child)
        if isinstance(phi.child, (And, Or)):
            inner = f"({inner})"
        return "~" + inner
    op = " & " if isinstance(phi, And) else " | "
    prec = _PREC[type(phi)]
    left, right = to_text(phi.left), to_text(phi.right)
    if isinstance(phi.left, (And, Or)) and _PREC[type(phi.left)] < prec:
        left = f"({left})"
    if isinstance(phi.right, (And, Or)) and _PREC[type(phi.right)] <= prec:
        right = f"({right})"
    return left + op + right


def to_unicode(phi: Formula) -> str:
    return to_text(phi).replace("~", "∼").replace("&", "∧").replace("|", "∨")


# --------------------------------------------------------------------------
# parsing

_ALIASES = {"∼": "~", "¬": "~", "∧": "&", "∨": "|", "⊤": "T", "⊥": "F", "⊢": "|-"}
_TOKEN = re.compile(r"\s*(?:(\|-)|([~&|()])|([A-Za-z_][A-Za-z0-9_]*)|(\S))")
_IDENT = re.compile(r"[a-z][a-z0-9_]*\Z")


def _tokens(text: str) -> list[tuple[str, str, int]]:
    for k, v in _ALIASES.items():
        text = text.replace(k, v)
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1):
            out.append(("TURNSTILE", m.group(1), start))
        elif m.group(2):
            out.append((m.group(2), m.group(2), start))
        elif m.group(3):
            word = m.group(3)
            if word == "T":
                out.append(("TOP", word, start))
            elif word == "F":
                out.append(("BOT", word, start))
            elif _IDENT.match(word):
                out.append(("VAR", word, start))
            else:
                raise ParseError(f"invalid variable name {word!r}", start, text)
        elif m.group(4):
            raise ParseError(f"unexpected character {m.group(4)!r}", start, text)
        pos = m.end()
    out.append(("EOF", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    @property
    def peek(self):
        return self.toks[self.i]

    def take(self, kind: str):
        tok = self.peek
        if tok[0] != kind:
            found = "end of input" if tok[0] == "EOF" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {found}", tok[2], self.text)
        self.i += 1
        return tok

    def formula(self) -> Formula:
        node = self.conj()
        while self.peek[0] == "|":
            self.i += 1
            node = Or(node, self.conj())
        return node

    def conj(self) -> Formula:
        node = self.unary()
        while self.peek[0] == "&":
            self.i += 1
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        kind, value, pos = self.peek
        if kind == "~":
            self.i += 1
            return Neg(self.unary())
        if kind == "TOP":
            self.i += 1
            return Top()
        if kind == "BOT":
            self.i += 1
            return Bot()
        if kind == "VAR":
            self.i += 1
            return Var(value)
        if kind == "(":
            self.i += 1
            node = self.formula()
            self.take(")")
            return node
        found = "end of input" if kind == "EOF" else repr(value)
        raise ParseError(f"expected a formula, found {found}", pos, self.text)


def parse(text: str) -> Formula:
    p = _Parser(text)
    phi = p.formula()
    p.take("EOF")
    return phi


def parse_consequent(text: str) -> Consequent:
    p = _Parser(text)
    lhs = p.formula()
    p.take("TURNSTILE")
    rhs = p.formula()
    p.take("EOF")
    return Consequent(lhs, rhs)


# --------------------------------------------------------------------------
# postulates and derivations

A, B, C = Var("α"), Var("β"), Var("γ")

# schema id -> alternative (lhs, rhs) patterns; Greek variables are metavariables.
AXIOMS: dict[int, list[tuple[Formula, Formula]]] = {
    1: [(A, A)],
    3: [(And(A, B), A), (And(A, B), B)],
    6: [(A, Or(A, B)), (B, Or(A, B))],
    # transcribed as printed, right-hand side included
    7: [(And(A, Or(B, C)), And(Or(A, B), Or(A, C)))],
    9: [(And(Neg(A), Neg(B)), Neg(Or(A, B)))],
    10: [(A, Top())],
    11: [(Bot(), A)],
    12: [(Top(), Neg(Bot()))],
    13: [(A, Neg(Neg(A)))],
    14: [(Neg(Neg(A)), A)],
    15: [(And(A, Neg(A)), Or(B, Neg(B)))],
}

RULE_ARITY = {2: 2, 4: 2, 5: 2, 8: 1}

NAMES = {
    1: "reflexivity", 2: "transitivity", 3: "and-elimination", 4: "and-introduction",
    5: "or-elimination", 6: "or-introduction", 7: "distributivity", 8: "contraposition",
    9: "or-linearity", 10: "top", 11: "bottom", 12: "nor", 13: "double negation introduction",
    14: "double negation elimination", 15: "Kleene",
}


def _match(pattern: Formula, phi: Formula, binding: dict) -> bool:
    if isinstance(pattern, Var) and pattern.name in ("α", "β", "γ"):
        bound = binding.get(pattern.name)
        if bound is None:
            binding[pattern.name] = phi
            return True
        return bound == phi
    if type(pattern) is not type(phi):
        return False
    if isinstance(pattern, Neg):
        return _match(pattern.child, phi.child, binding)
    if isinstance(pattern, (And, Or)):
        return _match(pattern.left, phi.left, binding) and _match(pattern.right, phi.right, binding)
    return pattern == phi


def axiom_instance(k: int, c: Consequent) -> dict | None:
    """The metavariable binding under which ``c`` instantiates postulate ``k``, or None."""
    for lhs, rhs in AXIOMS.get(k, []):
        binding: dict = {}
        if _match(lhs, c.lhs, binding) and _match(rhs, c.rhs, binding):
            return binding
    return None


def instantiate(k: int, variant: int = 0, **binding: Formula) -> Consequent:
    """Build an instance of axiom ``k``; keyword names are ``alpha``, ``beta``, ``gamma``."""
    greek = {"alpha": "α", "beta": "β", "gamma": "γ"}
    mapping = {greek[key]: val for key, val in binding.items()}
    lhs, rhs = AXIOMS[k][variant]
    return Consequent(substitute(lhs, mapping), substitute(rhs, mapping))


def rule_conclusions(k: int, premises: list[Consequent]) -> Consequent | None:
    """What rule ``k`` yields from the premises (in citation order), or None if it does not apply."""
    if k == 2:
        p, q = premises
        return Consequent(p.lhs, q.rhs) if p.rhs == q.lhs else None
    if k == 4:
        p, q = premises
        return Consequent(p.lhs, And(p.rhs, q.rhs)) if p.lhs == q.lhs else None
    if k == 5:
        p, q = premises
        return Consequent(Or(p.lhs, q.lhs), p.rhs) if p.rhs == q.rhs else None
    if k == 8:
        (p,) = premises
        return Consequent(Neg(p.rhs), Neg(p.lhs))
    return None


@dataclass(frozen=True)
class Justification:
    kind: str                  # "ax" or "rule"
    number: int
    cites: tuple[int, ...] = ()

    def __str__(self):
        if self.kind == "ax":
            return f"ax{self.number}"
        return f"rule{self.number}(" + ",".join(str(c) for c in self.cites) + ")"


@dataclass(frozen=True)
class Step:
    consequent: Consequent
    justification: Justification


@dataclass
class Derivation:
    steps: list[Step]

    @property
    def conclusion(self) -> Consequent | None:
        return self.steps[-1].consequent if self.steps else None

    def to_text(self) -> str:
        return "".join(f"{i}: {s.consequent} ; {s.justification}\n" for i, s in enumerate(self.steps, 1))

    def add_axiom(self, k: int, c: Consequent) -> int:
        self.steps.append(Step(c, Justification("ax", k)))
        return len(self.steps)

    def add_rule(self, k: int, c: Consequent, *cites: int) -> int:
        self.steps.append(Step(c, Justification("rule", k, tuple(cites))))
        return len(self.steps)


@dataclass
class ProofCheck:
    ok: bool
    step: int | None = None          # 1-based
    reason: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "valid" if self.ok else f"step {self.step}: {self.reason}"


def check_derivation(d: Derivation) -> ProofCheck:
    """Validate each step against the postulate schemes and the four rules.

    Steps are numbered from 1; a rule may only cite strictly earlier steps.
    """
    if not d.steps:
        return ProofCheck(False, None, "empty derivation")
    for i, step in enumerate(d.steps, 1):
        j = step.justification
        if j.kind == "ax":
            if j.number not in AXIOMS:
                return ProofCheck(False, i, f"ax{j.number} is not an axiom scheme")
            if axiom_instance(j.number, step.consequent) is None:
                return ProofCheck(False, i, f"not an instance of postulate {j.number} ({NAMES[j.number]})")
        elif j.kind == "rule":
            if j.number not in RULE_ARITY:
                return ProofCheck(False, i, f"rule{j.number} is not a rule")
            if len(j.cites) != RULE_ARITY[j.number]:
                return ProofCheck(False, i, f"rule{j.number} takes {RULE_ARITY[j.number]} premise(s)")
            for c in j.cites:
                if not 1 <= c < i:
                    return ProofCheck(False, i, f"cites step {c}, which does not precede it")
            premises = [d.steps[c - 1].consequent for c in j.cites]
            got = rule_conclusions(j.number, premises)
            if got is None:
                return ProofCheck(False, i, f"premises do not fit rule {j.number} ({NAMES[j.number]})")
            if got != step.consequent:
                return ProofCheck(False, i, f"rule {j.number} yields {got}, not {step.consequent}")
        else:
            return ProofCheck(False, i, f"unknown justification {j}")
    return ProofCheck(True)


_LINE = re.compile(r"^\s*(\d+)\s*:\s*(.*?)\s*;\s*(ax(\d+)|rule(\d+)\s*\(([\d\s,]*)\))\s*$")


class DerivationSyntaxError(ValueError):
    pass


def parse_derivation(text: str) -> Derivation:
    """Read ``N: <lhs> |- <rhs> ; ax<k>`` / ``rule<k>(i,j)`` lines; ``#`` starts a comment."""
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE.match(line)
        if m is None:
            raise DerivationSyntaxError(f"line {lineno}: expected 'N: <lhs> |- <rhs> ; justification'")
        number = int(m.group(1))
        if number != len(steps) + 1:
            raise DerivationSyntaxError(f"line {lineno}: step numbered {number}, expected {len(steps) + 1}")
        try:
            c = parse_consequent(m.group(2))
        except ParseError as e:
            raise DerivationSyntaxError(f"line {lineno}: {e}") from e
        if m.group(4):
            j = Justification("ax", int(m.group(4)))
        else:
            cites = tuple(int(x) for x in m.group(6).replace(" ", "").split(",") if x)
            j = Justification("rule", int(m.group(5)), cites)
        steps.append(Step(c, j))
    return Derivation(steps)


def derive_de_morgan_dual(alpha: Formula, beta: Formula) -> Derivation:
    """A derivation of ``~(alpha & beta) |- ~alpha | ~beta``.

    Route: each of ``alpha``, ``beta`` follows from ``~(~alpha | ~beta)`` by
    contraposing or-introduction and stripping the double negation; combine,
    contrapose again, and strip the outer double negation.
    """
    d = Derivation([])
    na, nb = Neg(alpha), Neg(beta)
    disj = Or(na, nb)
    ndisj = Neg(disj)
    s1 = d.add_axiom(6, Consequent(na, disj))
    s2 = d.add_rule(8, Consequent(ndisj, Neg(na)), s1)
    s3 = d.add_axiom(14, Consequent(Neg(na), alpha))
    s4 = d.add_rule(2, Consequent(ndisj, alpha), s2, s3)
    s5 = d.add_axiom(6, Consequent(nb, disj))
    s6 = d.add_rule(8, Consequent(ndisj, Neg(nb)), s5)
    s7 = d.add_axiom(14, Consequent(Neg(nb), beta))
    s8 = d.add_rule(2, Consequent(ndisj, beta), s6, s7)
    s9 = d.add_rule(4, Consequent(ndisj, And(alpha, beta)), s4, s8)
    s10 = d.add_rule(8, Consequent(Neg(And(alpha, beta)), Neg(ndisj)), s9)
    s11 = d.add_axiom(14, Consequent(Neg(ndisj), disj))
    d.add_rule(2, Consequent(Neg(And(alpha, beta)), disj), s10, s11)
    return d
