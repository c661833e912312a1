"""Line-oriented net format.

::

    # comment
    place <id> [tokens=<n>]
    trans <id> : <place> ... -> <place> ...

Ids match ``[A-Za-z0-9_]+``.  Transitions may name places declared
further down the file.
"""

from __future__ import annotations

import re

from .errors import ContractError, ParseError
from .net import MAX_TOKENS, Marking, Net

_ID = re.compile(r"[A-Za-z0-9_]+\Z")
_TOKENS = re.compile(r"tokens=([0-9]+)\Z")
_WORD = re.compile(r"\S+")


def _words(line: str) -> list[tuple[int, str]]:
    """Whitespace-separated words with their 1-based columns."""
    return [(m.start() + 1, m.group()) for m in _WORD.finditer(line)]


def parse(text: str | bytes) -> tuple[Net, Marking]:
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as e:
            line = bytes(text)[: e.start].count(b"\n") + 1
            raise ParseError(line, 1, "input is not valid UTF-8") from None

    places: list[str] = []
    tokens: dict[str, int] = {}
    transitions: list[str] = []
    arcs: list[tuple[str, str, bool, int, int]] = []  # place, transition, is_input, line, column
    declared: dict[str, tuple[str, int, int]] = {}

    def declare(name: str, kind: str, ln: int, col: int) -> None:
        if not _ID.match(name):
            raise ParseError(ln, col, f"invalid id {name!r}")
        if name in declared:
            other, oln, _ = declared[name]
            what = "duplicate" if other == kind else "id collision:"
            raise ParseError(ln, col, f"{what} {kind} {name!r} (first declared as {other} on line {oln})")
        declared[name] = (kind, ln, col)

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        words = _words(line)
        if not words:
            continue
        col, kw = words[0]
        if kw == "place":
            if len(words) < 2:
                raise ParseError(ln, col + len(kw), "expected a place id")
            pcol, name = words[1]
            declare(name, "place", ln, pcol)
            count = 0
            if len(words) > 2:
                tcol, tok = words[2]
                m = _TOKENS.match(tok)
                if not m:
                    raise ParseError(ln, tcol, f"expected tokens=<n>, got {tok!r}")
                digits = m.group(1).lstrip("0") or "0"
                if len(digits) > 19 or int(digits) > MAX_TOKENS:
                    raise ParseError(ln, tcol, f"token count exceeds {MAX_TOKENS}")
                count = int(digits)
            if len(words) > 3:
                raise ParseError(ln, words[3][0], f"unexpected {words[3][1]!r}")
            places.append(name)
            tokens[name] = count
        elif kw == "trans":
            if len(words) < 2:
                raise ParseError(ln, col + len(kw), "expected a transition id")
            tcol, name = words[1]
            declare(name, "transition", ln, tcol)
            rest = words[2:]
            if not rest or rest[0][1] != ":":
                where = rest[0][0] if rest else len(line) + 1
                raise ParseError(ln, where, "expected ':' after transition id")
            rest = rest[1:]
            arrows = [i for i, (_, w) in enumerate(rest) if w == "->"]
            if len(arrows) != 1:
                where = rest[arrows[1]][0] if len(arrows) > 1 else len(line) + 1
                raise ParseError(ln, where, "expected exactly one '->'")
            ins, outs = rest[: arrows[0]], rest[arrows[0] + 1 :]
            seen = set()
            for side, group in (("in", ins), ("out", outs)):
                for c, p in group:
                    if not _ID.match(p):
                        raise ParseError(ln, c, f"invalid id {p!r}")
                    if (side, p) in seen:
                        raise ParseError(ln, c, f"duplicate arc between {name!r} and {p!r}")
                    seen.add((side, p))
                    arcs.append((p, name, side == "in", ln, c))
            transitions.append(name)
        else:
            raise ParseError(ln, col, f"expected 'place' or 'trans', got {kw!r}")

    for p, _, _, ln, c in arcs:
        kind = declared.get(p, (None,))[0]
        if kind != "place":
            msg = f"undeclared place {p!r}" if kind is None else f"{p!r} is a transition, not a place"
            raise ParseError(ln, c, msg)
    try:
        net = Net(places, transitions, [(p, t) if is_in else (t, p) for p, t, is_in, _, _ in arcs])
    except ContractError as e:  # pragma: no cover - checked above
        raise ParseError(1, 1, str(e)) from None
    return net, tuple(tokens[p] for p in places)


def format_net(net: Net, m0: Marking | None = None) -> str:
    """Canonical text for ``net``: places, then transitions, arcs in declaration order."""
    out = []
    for i, p in enumerate(net.places):
        tok = m0[i] if m0 is not None else 0
        out.append(f"place {p} tokens={tok}" if tok else f"place {p}")
    for t in net.transitions:
        ins = " ".join(net.place_order(net.pre(t)))
        outs = " ".join(net.place_order(net.post(t)))
        out.append(f"trans {t} : {ins} -> {outs}".replace("  ", " ").rstrip())
    return "\n".join(out) + "\n"
