"""Line-oriented definition files for algebras and algebroids.

Grammar (one directive per line, ``#`` starts a comment)::

    algebra <name>
    basis <label> <label> ...
    unit <combination>
    mul <a> <b> = <combination>        # also sets <b> <a>
    form <a> <b> = <rational>          # also sets <b> <a>

    algebroid <name>
    base <algebra-name>                # optional, defaults to Q
    basis <v> <w> ...
    op1 <v> <w> = <v2-combination>     # also sets <w> <v>
    op0t <v> <w> = <v2-combination>    # ordered, no symmetric fill
    form <v> <w> = <a-combination>     # also sets <w> <v>

A combination is a sum of terms ``[coeff] label`` joined by ``+``/``-``; the
coefficient defaults to 1 and an empty right-hand side means 0.  Rationals
are written ``p/q`` or as integers.  In ``v2-combination`` a term is
``[coeff] [a*]v`` with ``a`` a basis label of the base algebra (default: its
unit); in ``a-combination`` a bare coefficient multiplies the unit of the
base.  Entries that are not given are 0.

A file holds either one ``algebra`` block, or any number of ``algebra``
blocks (usable as bases) followed by exactly one ``algebroid`` block.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebroid import VirasoroAlgebroid, rational_base
from .frobenius import FrobeniusAlgebra

_TOKEN = re.compile(r"\S+")
_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?$")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.message, self.line, self.column = message, line, column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass
class AlgebraSpec:
    name: str
    labels: list[str]
    products: dict[tuple[str, str], dict[str, Fraction]] = field(default_factory=dict)
    unit: dict[str, Fraction] = field(default_factory=dict)
    form: dict[tuple[str, str], Fraction] = field(default_factory=dict)

    def to_algebra(self) -> FrobeniusAlgebra:
        d = len(self.labels)
        idx = {l: k for k, l in enumerate(self.labels)}
        mult = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
        for (a, b), out in self.products.items():
            for c, v in out.items():
                mult[idx[a]][idx[b]][idx[c]] = v
                mult[idx[b]][idx[a]][idx[c]] = v
        form = [[Fraction(0)] * d for _ in range(d)]
        for (a, b), v in self.form.items():
            form[idx[a]][idx[b]] = form[idx[b]][idx[a]] = v
        unit = [self.unit.get(l, Fraction(0)) for l in self.labels]
        return FrobeniusAlgebra(tuple(self.labels), mult, unit, form, name=self.name)


@dataclass
class AlgebroidSpec:
    name: str
    base: AlgebraSpec | None
    labels: list[str]
    op1: dict[tuple[str, str], dict[tuple[str, str], Fraction]] = field(default_factory=dict)
    op0t: dict[tuple[str, str], dict[tuple[str, str], Fraction]] = field(default_factory=dict)
    form: dict[tuple[str, str], dict[str, Fraction]] = field(default_factory=dict)

    def to_algebroid(self) -> VirasoroAlgebroid:
        base = self.base.to_algebra() if self.base else rational_base()
        r, da = len(self.labels), base.dim
        vidx = {l: k for k, l in enumerate(self.labels)}
        aidx = {l: k for k, l in enumerate(base.labels)}

        def v2(terms):
            out = [[Fraction(0)] * da for _ in range(r)]
            for (a, v), c in terms.items():
                out[vidx[v]][aidx[a]] += c
            return out

        def aelem(terms):
            out = [Fraction(0)] * da
            for a, c in terms.items():
                out[aidx[a]] += c
            return out

        def table(entries, conv, symmetric):
            zero = conv({})
            t = [[zero] * r for _ in range(r)]
            for (x, y), terms in entries.items():
                t[vidx[x]][vidx[y]] = conv(terms)
                if symmetric:
                    t[vidx[y]][vidx[x]] = conv(terms)
            return t

        return VirasoroAlgebroid(base, tuple(self.labels),
                                 table(self.op1, v2, True), table(self.op0t, v2, False),
                                 table(self.form, aelem, True), name=self.name)


def parse_rational(tok: str) -> Fraction:
    if not _RATIONAL.match(tok):
        raise ValueError(f"malformed rational {tok!r}")
    return Fraction(tok)


class _Line:
    def __init__(self, lineno: int, text: str):
        self.lineno = lineno
        self.tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(text)]

    def error(self, msg: str, tok: int = 0) -> ParseError:
        col = self.tokens[tok][1] if tok < len(self.tokens) else (
            self.tokens[-1][1] + len(self.tokens[-1][0]) if self.tokens else 1)
        return ParseError(msg, self.lineno, col)


def _split_terms(line: _Line, start: int):
    """Yield (sign, [(token, index)...]) for each term after ``start``."""
    term, sign = [], 1
    for k in range(start, len(line.tokens)):
        tok = line.tokens[k][0]
        if tok in ("+", "-"):
            if not term and k != start:
                raise line.error(f"dangling {tok!r}", k)
            if term:
                yield sign, term
            term, sign = [], (-1 if tok == "-" else 1)
        else:
            term.append((tok, k))
    if term:
        yield sign, term
    elif len(line.tokens) > start and line.tokens[-1][0] in ("+", "-"):
        raise line.error("expression ends with an operator", len(line.tokens) - 1)


def _coeff(line: _Line, tok: str, k: int) -> Fraction:
    try:
        return parse_rational(tok)
    except (ValueError, ZeroDivisionError):
        raise line.error(f"malformed rational {tok!r}", k) from None


def _combination(line, start, labels, *, bare_label=None):
    """Parse ``[coeff] label`` terms; a bare coefficient maps to ``bare_label``."""
    out: dict[str, Fraction] = {}
    for sign, term in _split_terms(line, start):
        if len(term) == 1:
            tok, k = term[0]
            if tok in labels:
                coeff, lab = Fraction(1), tok
            elif bare_label is not None:
                coeff, lab = _coeff(line, tok, k), bare_label
            elif _RATIONAL.match(tok):
                raise line.error(f"coefficient {tok} is missing a basis label", k)
            else:
                raise line.error(f"undeclared label {tok!r}", k)
        elif len(term) == 2:
            (ctok, ck), (tok, k) = term
            coeff = _coeff(line, ctok, ck)
            if tok not in labels:
                raise line.error(f"undeclared label {tok!r}", k)
            lab = tok
        else:
            raise line.error("a term is [coefficient] label", term[2][1])
        out[lab] = out.get(lab, Fraction(0)) + sign * coeff
    return {k: v for k, v in out.items() if v}


def _v2_combination(line, start, vlabels, alabels, unit_label):
    out: dict[tuple[str, str], Fraction] = {}
    for sign, term in _split_terms(line, start):
        if len(term) == 1:
            coeff, (tok, k) = Fraction(1), term[0]
        elif len(term) == 2:
            coeff, (tok, k) = _coeff(line, *term[0]), term[1]
        else:
            raise line.error("a term is [coefficient] [a*]v", term[2][1])
        a, _, v = tok.rpartition("*")
        if not a and unit_label is None:
            raise line.error("the base unit is not a basis label; write a*v explicitly", k)
        a = a or unit_label
        if a not in alabels:
            raise line.error(f"undeclared base label {a!r}", k)
        if v not in vlabels:
            raise line.error(f"undeclared label {v!r}", k)
        out[(a, v)] = out.get((a, v), Fraction(0)) + sign * coeff
    return {k: v for k, v in out.items() if v}


class _Block:
    def __init__(self, kind: str, name: str, line: _Line):
        self.kind, self.name, self.line = kind, name, line
        self.labels: list[str] | None = None
        self.seen: set = set()
        self.base: AlgebraSpec | None = None
        self.spec = None


def _expect_pair(line: _Line, labels, n_before=1):
    if len(line.tokens) < n_before + 3 or line.tokens[n_before + 2][0] != "=":
        raise line.error(f"expected '{line.tokens[0][0]} <a> <b> = ...'", min(len(line.tokens), n_before + 2))
    a, b = line.tokens[n_before][0], line.tokens[n_before + 1][0]
    for k, lab in ((n_before, a), (n_before + 1, b)):
        if lab not in labels:
            raise line.error(f"undeclared label {lab!r}", k)
    return a, b


def _canonical(labels, a, b):
    return (a, b) if labels.index(a) <= labels.index(b) else (b, a)


def parse(source: str) -> AlgebraSpec | AlgebroidSpec:
    algebras: dict[str, AlgebraSpec] = {}
    block: _Block | None = None
    blocks: list[_Block] = []

    def finish(b: _Block | None):
        if b is None:
            return
        if b.labels is None:
            raise b.line.error(f"{b.kind} {b.name!r} has no basis")
        if b.kind == "algebra":
            if not b.spec.unit:
                raise b.line.error(f"algebra {b.name!r} has no unit")
            algebras[b.name] = b.spec

    for lineno, raw in enumerate(source.splitlines(), 1):
        text = raw.split("#", 1)[0]
        line = _Line(lineno, text)
        if not line.tokens:
            continue
        head = line.tokens[0][0]
        if head in ("algebra", "algebroid"):
            if len(line.tokens) != 2:
                raise line.error(f"expected '{head} <name>'")
            finish(block)
            if block and block.kind == "algebroid":
                raise line.error("the algebroid block must be the last block")
            name = line.tokens[1][0]
            if name in algebras or any(b.name == name for b in blocks):
                raise line.error(f"duplicate block name {name!r}", 1)
            block = _Block(head, name, line)
            blocks.append(block)
            continue
        if block is None:
            raise line.error(f"directive {head!r} outside of a block")
        if head == "basis":
            if block.labels is not None:
                raise line.error("duplicate basis declaration")
            labels = [t for t, _ in line.tokens[1:]]
            if not labels:
                raise line.error("empty basis", 1)
            for k, lab in enumerate(labels, 1):
                if labels.index(lab) != k - 1:
                    raise line.error(f"duplicate label {lab!r}", k)
                if "*" in lab or lab in ("+", "-", "="):
                    raise line.error(f"invalid label {lab!r}", k)
            block.labels = labels
            if block.kind == "algebra":
                block.spec = AlgebraSpec(block.name, labels)
            else:
                block.spec = AlgebroidSpec(block.name, block.base, labels)
            continue
        if head == "base" and block.kind == "algebroid":
            if block.labels is not None or block.base is not None:
                raise line.error("'base' must come once, before 'basis'")
            if len(line.tokens) != 2:
                raise line.error("expected 'base <algebra-name>'")
            name = line.tokens[1][0]
            if name not in algebras:
                raise line.error(f"undeclared algebra {name!r}", 1)
            block.base = algebras[name]
            continue
        if block.labels is None:
            raise line.error(f"{head!r} before 'basis'")
        labels = block.labels
        if block.kind == "algebra":
            spec: AlgebraSpec = block.spec
            if head == "unit":
                if spec.unit or "unit" in block.seen:
                    raise line.error("duplicate unit")
                block.seen.add("unit")
                spec.unit = _combination(line, 1, labels)
            elif head == "mul":
                a, b = _expect_pair(line, labels)
                key = ("mul",) + _canonical(labels, a, b)
                if key in block.seen:
                    raise line.error(f"duplicate entry 'mul {a} {b}'")
                block.seen.add(key)
                terms = _combination(line, 4, labels)
                if terms:
                    spec.products[key[1:]] = terms
            elif head == "form":
                a, b = _expect_pair(line, labels)
                key = ("form",) + _canonical(labels, a, b)
                if key in block.seen:
                    raise line.error(f"duplicate entry 'form {a} {b}'")
                block.seen.add(key)
                if len(line.tokens) != 5:
                    raise line.error("expected a single rational after '='", 5)
                value = _coeff(line, line.tokens[4][0], 4)
                if value:
                    spec.form[key[1:]] = value
            else:
                raise line.error(f"unknown directive {head!r}")
        else:
            spec: AlgebroidSpec = block.spec
            base = block.base
            alabels = base.labels if base else ["1"]
            unit_label = _unit_label(base)
            if head in ("op1", "op0t", "form"):
                a, b = _expect_pair(line, labels)
                key = (a, b) if head == "op0t" else _canonical(labels, a, b)
                if (head,) + key in block.seen:
                    raise line.error(f"duplicate entry '{head} {a} {b}'")
                block.seen.add((head,) + key)
                if head == "form":
                    terms = _combination(line, 4, alabels, bare_label=unit_label)
                else:
                    terms = _v2_combination(line, 4, labels, alabels, unit_label)
                if terms:
                    getattr(spec, head)[key] = terms
            else:
                raise line.error(f"unknown directive {head!r}")

    finish(block)
    if not blocks:
        raise ParseError("no algebra or algebroid block found", 1)
    last = blocks[-1]
    if last.kind == "algebroid":
        return last.spec
    if len(blocks) > 1:
        raise ParseError("several algebra blocks but no algebroid using them", last.line.lineno)
    return last.spec


def _unit_label(base: AlgebraSpec | None) -> str | None:
    """Base label that an omitted ``a*`` stands for, if the unit is a basis vector."""
    if base is None:
        return "1"
    if len(base.unit) == 1:
        ((lab, c),) = base.unit.items()
        if c == 1:
            return lab
    return None


def _fmt_terms(terms: dict, fmt) -> str:
    parts = []
    for key, c in terms.items():
        parts.append(f"{c} {fmt(key)}")
    return " + ".join(parts)


def format_algebra(spec: AlgebraSpec) -> str:
    lines = [f"algebra {spec.name}", "basis " + " ".join(spec.labels),
             "unit " + _fmt_terms(spec.unit, str)]
    for (a, b), out in spec.products.items():
        lines.append(f"mul {a} {b} = " + _fmt_terms(out, str))
    for (a, b), v in spec.form.items():
        lines.append(f"form {a} {b} = {v}")
    return "\n".join(lines) + "\n"


def format_spec(spec: AlgebraSpec | AlgebroidSpec) -> str:
    if isinstance(spec, AlgebraSpec):
        return format_algebra(spec)
    text = format_algebra(spec.base) + "\n" if spec.base else ""
    lines = [f"algebroid {spec.name}"]
    if spec.base:
        lines.append(f"base {spec.base.name}")
    lines.append("basis " + " ".join(spec.labels))
    for head in ("op1", "op0t"):
        for (a, b), terms in getattr(spec, head).items():
            lines.append(f"{head} {a} {b} = " + _fmt_terms(terms, lambda k: f"{k[0]}*{k[1]}"))
    for (a, b), terms in spec.form.items():
        lines.append(f"form {a} {b} = " + _fmt_terms(terms, str))
    return text + "\n".join(lines) + "\n"


def spec_from_algebra(F: FrobeniusAlgebra) -> AlgebraSpec:
    labels = list(F.labels)
    d = F.dim
    spec = AlgebraSpec(_safe_name(F.name), labels)
    spec.unit = {labels[i]: c for i, c in enumerate(F.unit) if c}
    for i in range(d):
        for j in range(i, d):
            out = {labels[k]: c for k, c in enumerate(F.mult[i][j]) if c}
            if out:
                spec.products[(labels[i], labels[j])] = out
            if F.form[i][j]:
                spec.form[(labels[i], labels[j])] = F.form[i][j]
    return spec


def _safe_name(name: str) -> str:
    return re.sub(r"\s+", "", name) or "F"
