"""Finite group presentations and the line-oriented ``.grp`` text format.

Grammar (one directive per line, ``#`` starts a comment)::

    group NAME
    gens g1 g2 ...
    rel WORD                      (repeatable)
    mark meridian WORD
    mark longitude WORD
    epi TARGET : g1 -> WORD|1 , g2 -> WORD|1 , ...
    map TARGET : g1 -> WORD|1 , ...   (a homomorphism, not necessarily onto)

    WORD := term+
    term := gen | gen^INT | [WORD,WORD] | (WORD) | (WORD)^INT | [WORD,WORD]^INT | 1

Juxtaposition is multiplication and ``[a,b] = a^-1 b^-1 a b``.  A file may
hold several ``group`` blocks; ``epi`` image words are read in the target
group's generators, which may be declared later in the file.  The epi
target ``1`` denotes the trivial group.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from . import words as W
from .errors import PresentationError

ROLES = ("meridian", "longitude")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


@dataclass(frozen=True)
class GroupPresentation:
    name: str
    generators: tuple[str, ...]
    relators: tuple[W.Word, ...] = ()
    marked: tuple[tuple[str, W.Word], ...] = ()

    def __post_init__(self):
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise PresentationError(f"duplicate generator names in {self.name}")
        object.__setattr__(self, "generators", tuple(self.generators))
        rels = tuple(W.free_reduce(r) for r in self.relators)
        object.__setattr__(self, "relators", rels)
        marks = tuple((role, W.free_reduce(w)) for role, w in
                      (self.marked.items() if isinstance(self.marked, dict) else self.marked))
        object.__setattr__(self, "marked", marks)
        for w in rels + tuple(m for _, m in marks):
            for g, _ in w:
                if not 0 <= g < n:
                    raise PresentationError(f"word uses undeclared generator index {g} in {self.name}")
        for role, _ in marks:
            if role not in ROLES:
                raise PresentationError(f"unknown marked role {role!r}")

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def marks(self) -> dict[str, W.Word]:
        return dict(self.marked)

    @property
    def meridian(self):
        return self.marks.get("meridian")

    @property
    def longitude(self):
        return self.marks.get("longitude")

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise PresentationError(f"undeclared generator {name!r} in group {self.name}") from None

    def word(self, text: str) -> W.Word:
        return parse_word(text, self.generators)

    def fmt(self, w: W.Word) -> str:
        return W.format_word(w, self.generators)

    def replace(self, **changes) -> "GroupPresentation":
        data = dict(name=self.name, generators=self.generators, relators=self.relators,
                    marked=self.marked)
        data.update(changes)
        return GroupPresentation(**data)

    def to_text(self) -> str:
        lines = [f"group {self.name}", "gens " + " ".join(self.generators)]
        lines += [f"rel {self.fmt(r)}" for r in self.relators]
        lines += [f"mark {role} {self.fmt(w)}" for role, w in self.marked]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "generators": list(self.generators),
            "relators": [self.fmt(r) for r in self.relators],
            "marked": {role: self.fmt(w) for role, w in self.marked},
        }


# ---------------------------------------------------------------------------
# word parsing

_TOKEN = re.compile(r"\s*(?:(?P<id>[A-Za-z_][A-Za-z0-9_']*)|(?P<int>[+-]?\d+)|(?P<op>[\^\[\]\(\),]))")


def _tokenize(text: str, line: int | None, col0: int):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PresentationError(f"unexpected character {text[bad]!r}", line, col0 + bad + 1)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), col0 + start + 1))
        pos = m.end()
    return toks


class _WordParser:
    def __init__(self, toks, generators, line):
        self.toks = toks
        self.i = 0
        self.gens = {g: k for k, g in enumerate(generators)}
        self.line = line

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        col = tok[2] if tok else (self.toks[-1][2] + len(self.toks[-1][1]) if self.toks else 1)
        raise PresentationError(msg, self.line, col)

    def expect(self, value):
        tok = self.peek()
        if tok is None or tok[1] != value:
            self.error(f"expected {value!r}")
        self.i += 1

    def word(self, stop=()):
        parts = []
        while True:
            tok = self.peek()
            if tok is None or (tok[0] == "op" and tok[1] in stop):
                break
            parts.append(self.term())
        if not parts:
            self.error("empty word")
        return W.mul(*parts)

    def exponent(self, base):
        tok = self.peek()
        if tok and tok[1] == "^":
            self.i += 1
            nt = self.peek()
            if nt is None or nt[0] != "int":
                self.error("expected integer exponent")
            self.i += 1
            return W.power(base, int(nt[1]))
        return base

    def term(self):
        tok = self.peek()
        kind, val, _ = tok
        if kind == "id":
            if val not in self.gens:
                self.error(f"undeclared generator {val!r}", tok)
            self.i += 1
            return self.exponent(W.gen(self.gens[val]))
        if kind == "int":
            if val != "1":
                self.error(f"unexpected integer {val!r}", tok)
            self.i += 1
            return W.EMPTY
        if val == "(":
            self.i += 1
            inner = self.word(stop=(")",))
            self.expect(")")
            return self.exponent(inner)
        if val == "[":
            self.i += 1
            a = self.word(stop=(",",))
            self.expect(",")
            b = self.word(stop=("]",))
            self.expect("]")
            return self.exponent(W.commutator(a, b))
        self.error(f"unexpected {val!r}", tok)


def parse_word(text: str, generators: Sequence[str], line: int | None = None, col0: int = 0) -> W.Word:
    toks = _tokenize(text, line, col0)
    p = _WordParser(toks, generators, line)
    w = p.word()
    if p.peek() is not None:
        p.error(f"unexpected {p.peek()[1]!r}")
    return w


# ---------------------------------------------------------------------------
# documents


@dataclass
class Document:
    groups: dict[str, GroupPresentation] = field(default_factory=dict)
    # source group name -> (target name, {generator: image text}, line)
    epi_specs: dict[str, tuple] = field(default_factory=dict)
    # (source, target) -> ({generator: image text}, line)
    map_specs: dict[tuple, tuple] = field(default_factory=dict)

    def group(self, name: str | None = None) -> GroupPresentation:
        if name is None:
            if not self.groups:
                raise PresentationError("no group defined")
            return next(iter(self.groups.values()))
        if name not in self.groups:
            raise PresentationError(f"no group named {name!r}")
        return self.groups[name]

    def epi(self, source: str):
        """Build the EpiOverG declared by the ``epi`` line of ``source``."""
        from .groups import EpiOverG

        if source not in self.epi_specs:
            raise PresentationError(f"group {source!r} declares no epi")
        target_name, images, line = self.epi_specs[source]
        src = self.group(source)
        if target_name == "1":
            tgt = GroupPresentation("1", ())
        elif target_name not in self.groups:
            raise PresentationError(f"epi target {target_name!r} is not defined", line, 1)
        else:
            tgt = self.groups[target_name]
        return EpiOverG(src, tgt, self._images(src, tgt, images, line, "epi"))

    def hom(self, source: str, target: str) -> tuple:
        """Image words of the ``map`` from source to target."""
        if (source, target) not in self.map_specs:
            raise PresentationError(f"group {source!r} declares no map to {target!r}")
        images, line = self.map_specs[(source, target)]
        return self._images(self.group(source), self.group(target), images, line, "map")

    @staticmethod
    def _images(src, tgt, images, line, what) -> tuple:
        words = []
        for g in src.generators:
            if g not in images:
                raise PresentationError(f"{what} of {src.name} gives no image for {g!r}", line, 1)
            text, col = images[g]
            words.append(parse_word(text, tgt.generators, line, col))
        return tuple(words)


def _split_top(text: str) -> list[str]:
    """Split at commas that are not inside brackets or parentheses."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def parse_document(text: str) -> Document:
    doc = Document()
    cur = None  # dict with fields of the group being read

    def finish():
        if cur is None:
            return
        if not cur["gens"]:
            raise PresentationError(f"group {cur['name']} has an empty generator list", cur["line"], 1)
        doc.groups[cur["name"]] = GroupPresentation(cur["name"], tuple(cur["gens"]),
                                                    tuple(cur["rels"]), tuple(cur["marks"]))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        head, _, rest = stripped.partition(" ")
        rest_col = indent + len(head) + 1
        if head == "group":
            finish()
            name = rest.strip()
            if not _IDENT.fullmatch(name):
                raise PresentationError(f"bad group name {name!r}", lineno, rest_col + 1)
            if name in doc.groups:
                raise PresentationError(f"group {name!r} defined twice", lineno, rest_col + 1)
            cur = {"name": name, "gens": [], "rels": [], "marks": [], "line": lineno}
            continue
        if cur is None:
            raise PresentationError(f"{head!r} before any 'group' line", lineno, indent + 1)
        if head == "gens":
            if cur["gens"]:
                raise PresentationError("generators declared twice", lineno, indent + 1)
            names = rest.split()
            col = rest_col
            for nm in names:
                col = line.index(nm, col)
                if not _IDENT.fullmatch(nm):
                    raise PresentationError(f"bad generator name {nm!r}", lineno, col + 1)
                col += len(nm)
            if not names:
                raise PresentationError("empty generator list", lineno, indent + 1)
            if len(set(names)) != len(names):
                raise PresentationError("duplicate generator name", lineno, indent + 1)
            cur["gens"] = names
        elif head == "rel":
            if not cur["gens"]:
                raise PresentationError("'rel' before 'gens'", lineno, indent + 1)
            cur["rels"].append(parse_word(rest, cur["gens"], lineno, rest_col))
        elif head == "mark":
            role, _, wtext = rest.strip().partition(" ")
            if role not in ROLES:
                raise PresentationError(f"unknown mark role {role!r}", lineno, rest_col + 1)
            col = line.index(role, rest_col) + len(role) + 1
            cur["marks"].append((role, parse_word(wtext, cur["gens"], lineno, col)))
        elif head in ("epi", "map"):
            target, colon, maps = rest.partition(":")
            if not colon:
                raise PresentationError(f"expected ':' in {head} line", lineno, rest_col + 1)
            images = {}
            col = rest_col + len(target) + 1
            for item in _split_top(maps):
                src, arrow, img = item.partition("->")
                if not arrow:
                    raise PresentationError("expected '->' in epi item", lineno, col + 1)
                g = src.strip()
                if g not in cur["gens"]:
                    raise PresentationError(f"undeclared generator {g!r}", lineno, col + 1)
                images[g] = (img, col + len(src) + 2)
                col += len(item) + 1
            if head == "epi":
                doc.epi_specs[cur["name"]] = (target.strip(), images, lineno)
            else:
                doc.map_specs[(cur["name"], target.strip())] = (images, lineno)
        else:
            raise PresentationError(f"unknown directive {head!r}", lineno, indent + 1)
    finish()
    if not doc.groups:
        raise PresentationError("no group defined", 1, 1)
    return doc


def parse_presentation(text: str) -> GroupPresentation:
    """Parse the first group of a ``.grp`` text."""
    return parse_document(text).group()


def free_group(name: str, gens: Sequence[str]) -> GroupPresentation:
    return GroupPresentation(name, tuple(gens))
