"""Line-oriented problem files: `key = value`, JSON-style lists, # comments.

    p = 32003
    vars = [x, y]
    gamma = []
    J = ["x", "y"]
    I = [["x^2", "y^3"]]
    base0 = 4
    window = 3
    seed = 7

Strings may be quoted or bare identifiers; polynomial strings use the
generator text syntax.  `parse_problem` builds the validated instance;
`format_problem` prints the canonical form (parse o print is the identity
on canonicalized files).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    HomogeneityError,
    InputError,
    MMError,
    ProblemSyntaxError,
)
from .ideals import IdealHandle
from .localmodel import LocalRingModel
from .mixed import InstanceOptions, ProblemInstance
from .ring import GREVLEX, RingContext, parse_poly, poly_to_text

_INT_KEYS = ("p", "base0", "window", "seed", "retries")
_KNOWN_KEYS = _INT_KEYS + ("vars", "gamma", "J", "I")


@dataclass
class ProblemFile:
    p: int = 32003
    vars: tuple = ()
    gamma: tuple = ()
    J: tuple = ()
    I: tuple = ()
    options: dict = field(default_factory=dict)


class _ListParser:
    """Tiny recursive parser for the bracketed list values."""

    def __init__(self, text, line):
        self.text = text
        self.pos = 0
        self.line = line

    def error(self, message):
        raise ProblemSyntaxError(message, line=self.line, col=self.pos + 1)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def parse_value(self):
        self.skip_ws()
        if self.pos >= len(self.text):
            self.error("unexpected end of value")
        ch = self.text[self.pos]
        if ch == "[":
            return self.parse_list()
        if ch == '"':
            return self.parse_string()
        return self.parse_bare()

    def parse_list(self):
        assert self.text[self.pos] == "["
        self.pos += 1
        items = []
        while True:
            self.skip_ws()
            if self.pos >= len(self.text):
                self.error("unterminated list")
            if self.text[self.pos] == "]":
                self.pos += 1
                return items
            items.append(self.parse_value())
            self.skip_ws()
            if self.pos < len(self.text) and self.text[self.pos] == ",":
                self.pos += 1
            elif self.pos < len(self.text) and self.text[self.pos] == "]":
                continue
            elif self.pos >= len(self.text):
                self.error("unterminated list")
            else:
                self.error(f"expected ',' or ']', found {self.text[self.pos]!r}")

    def parse_string(self):
        end = self.text.find('"', self.pos + 1)
        if end < 0:
            self.error("unterminated string")
        out = self.text[self.pos + 1 : end]
        self.pos = end + 1
        return out

    def parse_bare(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in " \t,]":
            self.pos += 1
        if self.pos == start:
            self.error("empty value")
        return self.text[start : self.pos]

    def expect_end(self):
        self.skip_ws()
        if self.pos < len(self.text):
            self.error(f"trailing text {self.text[self.pos:]!r}")


def parse_problem_file(text):
    """Parse the raw key/value structure without semantic validation."""
    pf = ProblemFile()
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if "=" not in line:
            raise ProblemSyntaxError("expected 'key = value'", line=lineno, col=1)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KNOWN_KEYS:
            raise ProblemSyntaxError(f"unknown key {key!r}", line=lineno, col=1)
        if key in seen:
            raise ProblemSyntaxError(f"duplicate key {key!r}", line=lineno, col=1)
        seen.add(key)
        if key in _INT_KEYS:
            try:
                number = int(value)
            except ValueError:
                raise ProblemSyntaxError(
                    f"key {key!r} needs an integer", line=lineno, col=len(key) + 2
                ) from None
            if key == "p":
                pf.p = number
            else:
                pf.options[key] = number
            continue
        parser = _ListParser(value, lineno)
        items = parser.parse_value()
        parser.expect_end()
        if key == "vars":
            if not isinstance(items, list) or any(isinstance(x, list) for x in items):
                raise ProblemSyntaxError("vars must be a flat list", line=lineno)
            pf.vars = tuple(items)
        elif key in ("gamma", "J"):
            if not isinstance(items, list) or any(isinstance(x, list) for x in items):
                raise ProblemSyntaxError(f"{key} must be a flat list", line=lineno)
            setattr(pf, key, tuple(items))
        else:  # I
            if not isinstance(items, list) or not all(
                isinstance(x, list) for x in items
            ):
                raise ProblemSyntaxError("I must be a list of lists", line=lineno)
            pf.I = tuple(tuple(sub) for sub in items)
    for required in ("vars", "J", "I"):
        if required not in seen:
            raise ProblemSyntaxError(f"missing required key {required!r}")
    return pf


def _parse_gens(ctx, strings, what):
    gens = []
    for s in strings:
        try:
            f = parse_poly(ctx, s)
        except MMError as exc:
            raise ProblemSyntaxError(f"in {what} generator {s!r}: {exc}") from None
        if not f.is_homogeneous():
            raise HomogeneityError(f"{what} generator {s!r} is not homogeneous")
        gens.append(f)
    return gens


def instantiate(pf):
    """Build the validated ProblemInstance from a parsed file."""
    try:
        ctx = RingContext(tuple(pf.vars), pf.p, GREVLEX)
    except MMError as exc:
        raise ProblemSyntaxError(str(exc)) from None
    gamma = IdealHandle(ctx, _parse_gens(ctx, pf.gamma, "gamma"))
    if gamma.is_unit():
        raise InputError("gamma must be a proper ideal")
    model = LocalRingModel(ctx, gamma)
    J = IdealHandle(ctx, _parse_gens(ctx, pf.J, "J"))
    ideals = [
        IdealHandle(ctx, _parse_gens(ctx, gens, f"I[{i + 1}]"))
        for i, gens in enumerate(pf.I)
    ]
    options = InstanceOptions(
        base0=pf.options.get("base0"),
        window=pf.options.get("window"),
        seed=pf.options.get("seed", 1),
        retries=pf.options.get("retries", 8),
    )
    return ProblemInstance(model, J, ideals, options)


def parse_problem(text):
    """Text -> validated ProblemInstance (m-primary and nilpotence checks)."""
    return instantiate(parse_problem_file(text))


def format_problem(pf_or_instance):
    """Canonical problem-file text."""
    if isinstance(pf_or_instance, ProblemInstance):
        inst = pf_or_instance
        ctx = inst.model.ctx
        pf = ProblemFile(
            p=ctx.p,
            vars=ctx.variables,
            gamma=tuple(poly_to_text(g) for g in inst.model.gamma.gens),
            J=tuple(poly_to_text(g) for g in inst.J.gens),
            I=tuple(
                tuple(poly_to_text(g) for g in ideal.gens) for ideal in inst.ideals
            ),
            options={
                key: value
                for key, value in (
                    ("base0", inst.options.base0),
                    ("window", inst.options.window),
                    ("seed", inst.options.seed),
                    ("retries", inst.options.retries),
                )
                if value is not None
            },
        )
    else:
        pf = pf_or_instance
    lines = [f"p = {pf.p}"]
    lines.append("vars = [" + ", ".join(pf.vars) + "]")
    lines.append("gamma = [" + ", ".join(f'"{g}"' for g in pf.gamma) + "]")
    lines.append("J = [" + ", ".join(f'"{g}"' for g in pf.J) + "]")
    lines.append(
        "I = ["
        + ", ".join("[" + ", ".join(f'"{g}"' for g in sub) + "]" for sub in pf.I)
        + "]"
    )
    for key in ("base0", "window", "seed", "retries"):
        if key in pf.options:
            lines.append(f"{key} = {pf.options[key]}")
    return "\n".join(lines) + "\n"
