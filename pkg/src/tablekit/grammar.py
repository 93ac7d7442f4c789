"""HTML table-structure grammar: the 32-token corpus, tokenizer, and tree parser.

The corpus covers structure only (no cell text): paired tags for
thead/tbody/tr/td, the spanning pair ``<td`` ... ``>`` with rowspan/colspan
attribute tokens for span values 2..10, and the four specials
<sos>/<eos>/<pad>/<unk>.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .errors import MalformedStructure, UnknownToken

SOS, EOS, PAD, UNK = 0, 1, 2, 3

_SPECIALS = ["<sos>", "<eos>", "<pad>", "<unk>"]
_PAIRED = ["<thead>", "</thead>", "<tbody>", "</tbody>", "<tr>", "</tr>", "<td>", "</td>"]
_SPANNING = ["<td", ">"]
SPAN_VALUES = range(2, 11)
# Attribute tokens keep their leading space so greedy matching is unambiguous
# and detokenization is plain concatenation.
_ATTRS = [f' rowspan="{k}"' for k in SPAN_VALUES] + [f' colspan="{k}"' for k in SPAN_VALUES]


class Vocabulary:
    """Bijective token-string <-> id map over the 32-entry structural corpus."""

    def __init__(self, entries: Sequence[str]):
        self.tokens = list(entries)
        self._ids = {tok: i for i, tok in enumerate(self.tokens)}
        if len(self._ids) != len(self.tokens):
            raise ValueError("duplicate token strings")

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self._ids

    def id(self, token: str) -> int:
        return self._ids[token]

    def token(self, token_id: int) -> str:
        return self.tokens[token_id]

    def encode(self, tokens: Sequence[str]) -> list[int]:
        """Map token strings to ids; out-of-corpus strings become <unk>."""
        return [self._ids.get(t, UNK) for t in tokens]

    def decode(self, ids: Sequence[int]) -> list[str]:
        return [self.tokens[i] for i in ids]


def build_vocab() -> Vocabulary:
    """Canonical 32-token vocabulary.

    Order: specials (<sos>=0, <eos>=1, <pad>=2, <unk>=3), the eight paired
    tags, the spanning pair, then rowspan 2..10 and colspan 2..10.
    """
    return Vocabulary(_SPECIALS + _PAIRED + _SPANNING + _ATTRS)


VOCAB = build_vocab()
VOCAB_SIZE = len(VOCAB.tokens)

# Longest-first ordering makes "<td>" win over "<td".
_BY_LENGTH = sorted(VOCAB.tokens[4:], key=len, reverse=True)


def _match(html: str, i: int) -> Optional[str]:
    for tok in _BY_LENGTH:
        if html.startswith(tok, i):
            return tok
    return None


def tokenize(html: str) -> list[int]:
    """Greedy longest-match tokenization of a structure string.

    A maximal unrecognized span becomes a single <unk>; matching resumes at
    the next token-boundary character ('<' or the attribute-leading space)
    where a corpus token matches, so e.g. "<div>" is one <unk>, not
    garbage plus a stray ">". No framing tokens are added.
    """
    ids: list[int] = []
    i, n = 0, len(html)
    while i < n:
        tok = _match(html, i)
        if tok is not None:
            ids.append(VOCAB.id(tok))
            i += len(tok)
            continue
        j = i + 1
        while j < n and not (html[j] in "< " and _match(html, j)):
            j += 1
        ids.append(UNK)
        i = j
    return ids


def detokenize(ids: Sequence[int]) -> str:
    """Concatenate token strings, dropping <sos>/<eos>/<pad>.

    Raises UnknownToken if the sequence contains <unk>.
    """
    if UNK in ids:
        raise UnknownToken("cannot detokenize a sequence containing <unk>")
    return "".join(VOCAB.token(i) for i in ids if i not in (SOS, EOS, PAD))


def frame(ids: Sequence[int]) -> list[int]:
    """Wrap a bare sequence in <sos> ... <eos>."""
    return [SOS, *ids, EOS]


def unframe(ids: Sequence[int]) -> list[int]:
    """Strip <sos>, trailing <pad>, and everything from the first <eos> on."""
    out = list(ids)
    if out and out[0] == SOS:
        out = out[1:]
    if EOS in out:
        out = out[: out.index(EOS)]
    while out and out[-1] == PAD:
        out.pop()
    return out


@dataclass
class TableNode:
    """Node of a parsed table tree.

    Labels are table/thead/tbody/tr/td; rowspan/colspan (2..10) appear only
    on td nodes.
    """

    label: str
    rowspan: Optional[int] = None
    colspan: Optional[int] = None
    children: list["TableNode"] = field(default_factory=list)

    def identity(self) -> tuple:
        return (self.label, self.rowspan, self.colspan)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def walk(self) -> Iterator["TableNode"]:
        yield self
        for c in self.children:
            yield from c.walk()

    def __eq__(self, other) -> bool:
        if not isinstance(other, TableNode):
            return NotImplemented
        return self.identity() == other.identity() and self.children == other.children


# Which child labels each container admits.
_ALLOWED = {
    "table": {"thead", "tbody", "tr", "td"},
    "thead": {"tr"},
    "tbody": {"tr"},
    "tr": {"td"},
}

_OPEN = {"<thead>": "thead", "<tbody>": "tbody", "<tr>": "tr", "<td>": "td"}
_CLOSE = {"</thead>": "thead", "</tbody>": "tbody", "</tr>": "tr", "</td>": "td"}


def parse_tree(ids: Sequence[int]) -> TableNode:
    """Parse a token sequence into a table tree under a synthetic `table` root.

    Framing and padding tokens are ignored. A spanning group is ``<td``
    followed by one or more attribute tokens and a closing ``>``; it opens a
    td cell exactly like ``<td>`` does. Raises MalformedStructure on <unk>,
    unbalanced tags, nesting violations, or broken spanning groups.
    """
    root = TableNode("table")
    stack = [root]
    pos = 0
    seq = [i for i in ids if i not in (SOS, EOS, PAD)]

    def fail(reason: str):
        raise MalformedStructure(pos, reason)

    def open_node(label: str, rowspan=None, colspan=None) -> None:
        parent = stack[-1]
        if label not in _ALLOWED.get(parent.label, ()):
            fail(f"<{label}> not allowed inside <{parent.label}>")
        node = TableNode(label, rowspan, colspan)
        parent.children.append(node)
        stack.append(node)

    n = len(seq)
    while pos < n:
        tid = seq[pos]
        if not 0 <= tid < VOCAB_SIZE or tid == UNK:
            fail("unknown token")
        tok = VOCAB.token(tid)
        if tok in _OPEN:
            open_node(_OPEN[tok])
            pos += 1
        elif tok in _CLOSE:
            label = _CLOSE[tok]
            if len(stack) == 1 or stack[-1].label != label:
                fail(f"unmatched </{label}>")
            if label == "td" and stack[-1].children:
                fail("td must be a leaf")
            stack.pop()
            pos += 1
        elif tok == "<td":
            rowspan = colspan = None
            pos += 1
            while pos < n and seq[pos] >= 14:  # attribute token ids
                attr = VOCAB.token(seq[pos])
                value = int(attr.split('"')[1])
                if attr.startswith(" rowspan"):
                    if rowspan is not None:
                        fail("duplicate rowspan attribute")
                    rowspan = value
                else:
                    if colspan is not None:
                        fail("duplicate colspan attribute")
                    colspan = value
                pos += 1
            if rowspan is None and colspan is None:
                fail("spanning cell must carry at least one attribute")
            if pos >= n or VOCAB.token(seq[pos]) != ">":
                fail("spanning cell not closed by >")
            open_node("td", rowspan, colspan)
            pos += 1
        elif tok == ">":
            fail("> outside a spanning cell")
        else:  # attribute token outside a <td ... > group
            fail(f"attribute token {tok!r} outside a spanning cell")

    if len(stack) != 1:
        fail(f"unclosed <{stack[-1].label}>")
    return root


SIMPLE = "Simple"
COMPLEX = "Complex"


def classify(tree: TableNode) -> str:
    """Complex iff any node carries a rowspan or colspan attribute."""
    for node in tree.walk():
        if node.rowspan is not None or node.colspan is not None:
            return COMPLEX
    return SIMPLE


def cell_tokens(rowspan: Optional[int] = None, colspan: Optional[int] = None) -> list[int]:
    """Token ids for one cell: plain <td></td> or a spanning group."""
    if rowspan is None and colspan is None:
        return [VOCAB.id("<td>"), VOCAB.id("</td>")]
    ids = [VOCAB.id("<td")]
    if rowspan is not None:
        ids.append(VOCAB.id(f' rowspan="{rowspan}"'))
    if colspan is not None:
        ids.append(VOCAB.id(f' colspan="{colspan}"'))
    ids.append(VOCAB.id(">"))
    ids.append(VOCAB.id("</td>"))
    return ids
