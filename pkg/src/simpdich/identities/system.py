"""Height-one identity systems for a single operation symbol."""

from __future__ import annotations

import re
from dataclasses import dataclass


class IdentityParseError(ValueError):
    pass


@dataclass(frozen=True)
class Identity:
    lhs: tuple
    rhs: tuple

    def variables(self) -> tuple:
        return tuple(dict.fromkeys(self.lhs + self.rhs))


@dataclass(frozen=True)
class IdentitySystem:
    """Identities f(lhs) = f(rhs) for one symbol of fixed arity."""

    arity: int
    identities: tuple
    idempotent: bool = False
    symbol: str = "f"
    name: str = ""

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("arity must be positive")
        for idn in self.identities:
            if len(idn.lhs) != self.arity or len(idn.rhs) != self.arity:
                raise ValueError("identity arity does not match the system")

    def normalized(self) -> "IdentitySystem":
        """Rename variables by first occurrence and drop trivial or repeated identities."""
        out = []
        for idn in self.identities:
            ren = {v: f"x{i}" for i, v in enumerate(idn.variables())}
            a = tuple(ren[v] for v in idn.lhs)
            b = tuple(ren[v] for v in idn.rhs)
            if a != b and Identity(a, b) not in out:
                out.append(Identity(a, b))
        return IdentitySystem(self.arity, tuple(out), self.idempotent, self.symbol, self.name)

    def __str__(self):
        lines = ["idempotent;"] if self.idempotent else []
        s = self.symbol
        for idn in self.identities:
            lines.append(f"{s}({','.join(idn.lhs)}) = {s}({','.join(idn.rhs)})")
        return "\n".join(lines)


def _ident(lhs, rhs):
    return Identity(tuple(lhs), tuple(rhs))


def majority() -> IdentitySystem:
    ids = (_ident("xxy", "xxx"), _ident("xyx", "xxx"), _ident("yxx", "xxx"))
    return IdentitySystem(3, ids, True, "M", "majority")


def cyclic(n: int) -> IdentitySystem:
    if n < 2:
        raise ValueError("cyclic identities need arity >= 2")
    xs = tuple(f"x{i}" for i in range(n))
    return IdentitySystem(n, (Identity(xs, xs[1:] + xs[:1]),), True, "c", f"cyclic({n})")


def fully_symmetric(n: int) -> IdentitySystem:
    """Invariance under all permutations, via one transposition and one rotation."""
    if n < 2:
        raise ValueError("fully symmetric identities need arity >= 2")
    xs = tuple(f"x{i}" for i in range(n))
    ids = [Identity(xs, (xs[1], xs[0]) + xs[2:])]
    if n > 2:
        ids.append(Identity(xs, xs[1:] + xs[:1]))
    return IdentitySystem(n, tuple(ids), True, "f", f"fully_symmetric({n})")


def near_unanimity(n: int) -> IdentitySystem:
    if n < 3:
        raise ValueError("near-unanimity needs arity >= 3")
    ids = []
    for i in range(n):
        lhs = ["x"] * n
        lhs[i] = "y"
        ids.append(Identity(tuple(lhs), ("x",) * n))
    return IdentitySystem(n, tuple(ids), True, "w", f"near_unanimity({n})")


def siggers6() -> IdentitySystem:
    return IdentitySystem(6, (_ident("xxyyzz", "zyxzyx"),), True, "s", "siggers6")


def siggers4() -> IdentitySystem:
    return IdentitySystem(4, (_ident("xyzz", "zxxy"),), True, "s", "siggers4")


BUILTINS = {
    "majority": majority,
    "siggers6": siggers6,
    "siggers4": siggers4,
    "cyclic2": lambda: cyclic(2),
    "cyclic3": lambda: cyclic(3),
    "fs2": lambda: fully_symmetric(2),
    "fs3": lambda: fully_symmetric(3),
    "nu3": lambda: near_unanimity(3),
}


def builtin(name: str) -> IdentitySystem:
    """Look up a named system such as 'majority', 'cyclic5' or 'nu4'."""
    if name in BUILTINS:
        return BUILTINS[name]()
    m = re.fullmatch(r"(cyclic|fs|nu)(\d+)", name)
    if m:
        n = int(m.group(2))
        return {"cyclic": cyclic, "fs": fully_symmetric, "nu": near_unanimity}[m.group(1)](n)
    raise KeyError(f"unknown identity system {name!r}")


def builtin_system(name: str, n: int | None = None) -> IdentitySystem:
    """Named system; cyclic, fully_symmetric and near_unanimity need ``n``."""
    makers = {"cyclic": cyclic, "fully_symmetric": fully_symmetric, "near_unanimity": near_unanimity}
    if name in makers:
        if n is None:
            raise ValueError(f"{name} needs an arity")
        return makers[name](n)
    if n is not None:
        raise ValueError(f"{name} takes no arity")
    return builtin(name)


# -- text format --------------------------------------------------------------

_TERM = re.compile(r"\s*([A-Za-z_]\w*)\s*")


class _Reader:
    def __init__(self, text, line):
        self.text = text
        self.pos = 0
        self.line = line

    def error(self, msg):
        raise IdentityParseError(f"line {self.line}, column {self.pos + 1}: {msg}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def name(self):
        m = _TERM.match(self.text, self.pos)
        if not m:
            self.error("expected a name")
        self.pos = m.end()
        return m.group(1)

    def expect(self, ch):
        self.skip()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def side(self):
        head = self.name()
        if self.peek() != "(":
            return None, (head,)
        self.expect("(")
        args = [self.name()]
        while self.peek() == ",":
            self.pos += 1
            args.append(self.name())
        self.expect(")")
        return head, tuple(args)


def parse_identity_system(text: str) -> IdentitySystem:
    """Parse lines like ``s(x,y,z,z) = s(z,x,x,y)``; a bare variable on the
    right stands for the constant term f(x,...,x)."""
    idempotent = False
    symbol = None
    arity = None
    ids = []
    stmts = []
    for ln, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        for part in line.split(";"):
            if part.strip():
                stmts.append((ln, part))
    for ln, part in stmts:
        if part.strip() == "idempotent":
            idempotent = True
            continue
        r = _Reader(part, ln)
        lsym, lhs = r.side()
        if lsym is None:
            r.error("left side must be a term")
        r.expect("=")
        rsym, rhs = r.side()
        if r.peek():
            r.error("unexpected trailing input")
        if symbol is None:
            symbol, arity = lsym, len(lhs)
        if lsym != symbol or (rsym is not None and rsym != symbol):
            r.error("only one operation symbol is allowed")
        if rsym is None:
            rhs = rhs * arity
        if len(lhs) != arity or len(rhs) != arity:
            r.error(f"arity mismatch, expected {arity}")
        ids.append(Identity(lhs, rhs))
    if symbol is None:
        raise IdentityParseError("no identities given")
    return IdentitySystem(arity, tuple(ids), idempotent, symbol)


parse_identities = parse_identity_system
