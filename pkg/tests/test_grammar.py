import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tablekit.errors import MalformedStructure, UnknownToken
from tablekit.grammar import (
    COMPLEX,
    EOS,
    PAD,
    SIMPLE,
    SOS,
    UNK,
    VOCAB,
    TableNode,
    build_vocab,
    cell_tokens,
    classify,
    detokenize,
    frame,
    parse_tree,
    tokenize,
    unframe,
)


class TestVocabulary:
    def test_has_32_entries(self):
        assert len(build_vocab()) == 32

    def test_special_ids_fixed(self):
        v = build_vocab()
        assert v.id("<sos>") == SOS == 0
        assert v.id("<eos>") == EOS == 1
        assert v.id("<pad>") == PAD == 2
        assert v.id("<unk>") == UNK == 3

    def test_roundtrip_bijection(self):
        v = build_vocab()
        for i, tok in enumerate(v.tokens):
            assert v.id(tok) == i
            assert v.token(i) == tok
        assert sorted(v.id(t) for t in v.tokens) == list(range(32))

    def test_composition(self):
        v = build_vocab()
        paired = [t for t in v.tokens if t.startswith("<") and t.endswith(">") and "=" not in t]
        specials = [t for t in paired if t in ("<sos>", "<eos>", "<pad>", "<unk>")]
        structural = [t for t in paired if t not in specials]
        rowspans = [t for t in v.tokens if t.startswith(" rowspan=")]
        colspans = [t for t in v.tokens if t.startswith(" colspan=")]
        assert len(specials) == 4
        assert len(structural) == 8
        assert "<td" in v.tokens and ">" in v.tokens
        assert len(rowspans) == len(colspans) == 9  # span values 2..10
        assert 4 + 8 + 2 + 9 + 9 == 32

    def test_span_values_cover_2_to_10(self):
        v = build_vocab()
        for k in range(2, 11):
            assert f' rowspan="{k}"' in v
            assert f' colspan="{k}"' in v
        assert ' rowspan="11"' not in v
        assert ' rowspan="1"' not in v


class TestTokenize:
    def test_simple_row(self):
        assert VOCAB.decode(tokenize("<tr><td></td></tr>")) == [
            "<tr>", "<td>", "</td>", "</tr>",
        ]

    def test_spanning_cell_prefix(self):
        ids = tokenize('<td rowspan="2">')
        assert VOCAB.decode(ids) == ["<td", ' rowspan="2"', ">"]

    def test_longest_match_prefers_plain_td(self):
        assert VOCAB.decode(tokenize("<td>")) == ["<td>"]

    def test_out_of_corpus_is_single_unk(self):
        assert tokenize("<div>") == [UNK]

    def test_unk_resumes_at_next_match(self):
        assert VOCAB.decode(tokenize("<tr><div>junk</div></tr>")) == [
            "<tr>", "<unk>", "</tr>",
        ]

    def test_oversized_span_value_is_unk(self):
        ids = tokenize('<td rowspan="11"></td>')
        assert VOCAB.token(ids[0]) == "<td"
        assert UNK in ids

    def test_empty_string(self):
        assert tokenize("") == []


class TestDetokenize:
    def test_inverse_of_tokenize(self):
        html = '<thead><tr><td colspan="3"></td></tr></thead>'
        assert detokenize(tokenize(html)) == html

    def test_strips_specials(self):
        seq = frame(tokenize("<td></td>")) + [PAD, PAD]
        assert detokenize(seq) == "<td></td>"

    def test_unknown_token_raises(self):
        with pytest.raises(UnknownToken):
            detokenize([UNK])


class TestParseTree:
    def test_single_row(self):
        tree = parse_tree(tokenize("<tr><td></td></tr>"))
        assert tree.label == "table"
        assert [c.label for c in tree.children] == ["tr"]
        assert [c.label for c in tree.children[0].children] == ["td"]
        assert tree.size() == 3

    def test_spanning_cell_attributes(self):
        tree = parse_tree(tokenize('<td colspan="3"></td>'))
        td = tree.children[0]
        assert (td.label, td.rowspan, td.colspan) == ("td", None, 3)

    def test_both_attributes_either_order(self):
        a = parse_tree(tokenize('<td rowspan="2" colspan="3"></td>'))
        b = parse_tree(tokenize('<td colspan="3" rowspan="2"></td>'))
        assert a.children[0].identity() == b.children[0].identity() == ("td", 2, 3)

    def test_framing_ignored(self):
        assert parse_tree(frame(tokenize("<td></td>"))) == parse_tree(tokenize("<td></td>"))

    def test_thead_tbody_wrappers_optional(self):
        wrapped = parse_tree(tokenize("<thead><tr><td></td></tr></thead>"))
        assert [c.label for c in wrapped.children] == ["thead"]
        bare = parse_tree(tokenize("<tr><td></td></tr>"))
        assert [c.label for c in bare.children] == ["tr"]

    @pytest.mark.parametrize(
        "html",
        [
            "<tr></td>",  # unbalanced
            "<tr><td></td>",  # unclosed tr
            "</tr>",  # close without open
            "<td><tr></tr></td>",  # tr inside td
            "<thead><td></td></thead>",  # td directly in thead
            "<tbody><tbody></tbody></tbody>",  # nested tbody
            '<tr> rowspan="2"</tr>',  # attribute outside spanning group
            "<tr>><td></td></tr>",  # stray >
            '<td rowspan="2" rowspan="3"></td>',  # duplicate attribute
            '<td rowspan="2"</td>',  # spanning group not closed by >
        ],
    )
    def test_malformed(self, html):
        with pytest.raises(MalformedStructure):
            parse_tree(tokenize(html))

    def test_bare_spanning_group_invalid(self):
        # <td + > with no attribute detokenizes to "<td>", which re-tokenizes
        # as the plain tag; the grammar therefore rejects the bare group.
        with pytest.raises(MalformedStructure):
            parse_tree([VOCAB.id("<td"), VOCAB.id(">"), VOCAB.id("</td>")])

    def test_unk_rejected(self):
        with pytest.raises(MalformedStructure):
            parse_tree([UNK])

    def test_position_reported(self):
        try:
            parse_tree(tokenize("<tr><td></td></td></tr>"))
        except MalformedStructure as exc:
            assert exc.position == 3
        else:
            pytest.fail("expected MalformedStructure")


class TestClassify:
    def test_simple(self):
        assert classify(parse_tree(tokenize("<tr><td></td><td></td></tr>"))) == SIMPLE

    def test_rowspan_is_complex(self):
        assert classify(parse_tree(tokenize('<tr><td rowspan="2"></td></tr>'))) == COMPLEX

    def test_empty_table_is_simple(self):
        assert classify(TableNode("table")) == SIMPLE


# -- grammar-directed random sequences -------------------------------------

def _cell(draw) -> list[int]:
    kind = draw(st.integers(0, 3))
    if kind == 0:
        return cell_tokens()
    rowspan = draw(st.integers(2, 10)) if kind in (1, 3) else None
    colspan = draw(st.integers(2, 10)) if kind in (2, 3) else None
    return cell_tokens(rowspan, colspan)


@st.composite
def valid_sequences(draw) -> list[int]:
    """Random derivations of the table grammar (without framing tokens)."""
    ids: list[int] = []

    def row() -> list[int]:
        out = [VOCAB.id("<tr>")]
        for _ in range(draw(st.integers(0, 3))):
            out.extend(_cell(draw))
        out.append(VOCAB.id("</tr>"))
        return out

    if draw(st.booleans()):
        ids.append(VOCAB.id("<thead>"))
        for _ in range(draw(st.integers(0, 2))):
            ids.extend(row())
        ids.append(VOCAB.id("</thead>"))
    if draw(st.booleans()):
        ids.append(VOCAB.id("<tbody>"))
        for _ in range(draw(st.integers(0, 3))):
            ids.extend(row())
        ids.append(VOCAB.id("</tbody>"))
    for _ in range(draw(st.integers(0, 3))):
        ids.extend(row())
    for _ in range(draw(st.integers(0, 2))):
        ids.extend(_cell(draw))
    return ids


class TestProperties:
    @given(valid_sequences())
    @settings(max_examples=300, deadline=None)
    def test_valid_derivations_parse_and_roundtrip(self, ids):
        tree = parse_tree(ids)
        assert tree.label == "table"
        assert detokenize(ids) == "".join(VOCAB.token(i) for i in ids)
        assert tokenize(detokenize(ids)) == ids

    @given(valid_sequences(), st.data())
    @settings(max_examples=300, deadline=None)
    def test_single_token_corruption_never_crashes(self, ids, data):
        if not ids:
            return
        pos = data.draw(st.integers(0, len(ids) - 1))
        corrupted = list(ids)
        corrupted[pos] = data.draw(st.integers(0, 31))
        try:
            parse_tree(corrupted)
        except MalformedStructure:
            pass  # rejection is fine; anything else is a bug

    @given(valid_sequences())
    @settings(max_examples=300, deadline=None)
    def test_complex_iff_attribute_token_present(self, ids):
        has_attr = any(i >= 14 for i in ids)
        tree = parse_tree(ids)
        assert (classify(tree) == COMPLEX) == has_attr

    @given(valid_sequences())
    @settings(max_examples=100, deadline=None)
    def test_frame_unframe_roundtrip(self, ids):
        assert unframe(frame(ids) + [PAD, PAD]) == ids
