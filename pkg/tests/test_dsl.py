import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apodeixis.catalog import FIXTURE_NAMES, MOODS, ModalPattern, fixture
from apodeixis.dsl import (
    ModelFormatError,
    ParseError,
    decode_model,
    encode_model,
    parse_mood,
    parse_statement,
    print_statement,
)
from apodeixis.semantics import ALLOWED_RELATIONS, Statement, Term


# --- statement grammar --------------------------------------------------------


@pytest.mark.parametrize(
    "text,relation,modality,subject,predicate",
    [
        ("BaA", "a", "X", Term("B"), Term("A")),
        ("N(BeA)", "e", "N", Term("B"), Term("A")),
        ("K(BaA)", "a", "Ktwo", Term("B"), Term("A")),
        ("Kamp(CeB)", "e", "Kamp", Term("C"), Term("B")),
        ("Ma2(CaA)", "a", "Ma2", Term("C"), Term("A")),
        ("Mo2(CaA)", "a", "Mo2", Term("C"), Term("A")),
        ("Mo3(CaB)", "a", "Mo3", Term("C"), Term("B")),
        ("N(Ba~A)", "a", "N", Term("B"), Term("A", True)),
        ("~BoA", "o", "X", Term("B", True), Term("A")),
    ],
)
def test_parse_statement_forms(text, relation, modality, subject, predicate):
    s = parse_statement(text)
    assert s == Statement(relation, modality, subject, predicate)
    assert print_statement(s) == text


def test_negation_sign_is_an_input_alias():
    assert parse_statement("N(Ba¬A)") == parse_statement("N(Ba~A)")
    assert print_statement(parse_statement("N(Ba¬A)")) == "N(Ba~A)"


def test_single_letters_are_terms_not_modalities():
    # "N" and "K" bind as modalities only when a parenthesis follows
    s = parse_statement("NaB")
    assert s.subject == Term("N") and s.modality == "X"
    s = parse_statement("KeA")
    assert s.subject == Term("K")


_CASES = [
    ("", "empty"),
    ("BqA", "relation"),
    ("N(BaA", "closing"),
    ("BaA)", "trailing"),
    ("N(BaA)x", "trailing"),
    ("K(BiA)", "relation"),
    ("Ma2(BeA)", "relation"),
    ("N(~aA)", "term"),
    ("N()", "term"),
    ("baA", "term"),
]


@pytest.mark.parametrize("text,_label", _CASES)
def test_parse_errors_carry_spans_inside_input(text, _label):
    with pytest.raises(ParseError) as info:
        parse_statement(text)
    span = info.value.span
    assert 0 <= span.begin <= span.end <= len(text.encode())


def test_unsupported_modality_relation_pair_points_at_relation():
    with pytest.raises(ParseError) as info:
        parse_statement("K(BiA)")
    assert info.value.span.begin == 3
    assert info.value.span.end == 4


@given(
    modality=st.sampled_from(sorted(ALLOWED_RELATIONS)),
    data=st.data(),
    sb=st.sampled_from("ABCDKNZ"),
    sc=st.booleans(),
    pb=st.sampled_from("ABCDKNZ"),
    pc=st.booleans(),
)
@settings(max_examples=300)
def test_print_parse_round_trip(modality, data, sb, sc, pb, pc):
    relation = data.draw(st.sampled_from(ALLOWED_RELATIONS[modality]))
    s = Statement(relation, modality, Term(sb, sc), Term(pb, pc))
    assert parse_statement(print_statement(s)) == s


# --- mood names -----------------------------------------------------------------


def test_parse_mood_forms():
    mood, pattern = parse_mood("Barbara NXN")
    assert mood is MOODS["Barbara"]
    assert pattern == ModalPattern(("N", "X"), "N")
    mood, pattern = parse_mood("baroco nx?")
    assert mood is MOODS["Baroco"]
    assert pattern == ModalPattern(("N", "X"), None)
    mood, pattern = parse_mood("CELARENT nkx")
    assert pattern == ModalPattern(("N", "K"), "X")
    mood, pattern = parse_mood("Camestres XK")
    assert pattern == ModalPattern(("X", "K"), None)
    mood, pattern = parse_mood("Barbara xkm")
    assert pattern == ModalPattern(("X", "K"), "M")


@pytest.mark.parametrize(
    "text",
    ["Foo NXN", "Barbara", "Barbara NXNX", "Barbara QXN", "Barbara NXQ", "Barbara N?X"],
)
def test_parse_mood_errors(text):
    with pytest.raises(ParseError) as info:
        parse_mood(text)
    span = info.value.span
    assert 0 <= span.begin <= span.end <= len(text.encode())


# --- model files ------------------------------------------------------------------


def test_fixture_files_round_trip_byte_identically():
    for name in FIXTURE_NAMES:
        m = fixture(name).model
        data = encode_model(m)
        assert decode_model(data) == m
        assert encode_model(decode_model(data)) == data


def _valid_payload() -> dict:
    return json.loads(encode_model(fixture("celarent_xn").model))


@pytest.mark.parametrize(
    "mutate,path",
    [
        (lambda o: o.update(extra=1), "$"),
        (lambda o: o.pop("concepts"), "$"),
        (lambda o: o.update(t_count=True), "t_count"),
        (lambda o: o.update(world_sizes=[2]), "world_sizes"),
        (lambda o: o.update(world_sizes=[2, 0]), "world_sizes[1]"),
        (lambda o: o["individuals"].append([9, 0]), "individuals[2]"),
        (lambda o: o.update(individuals=[[0, 0], [0, 0]]), "individuals[1]"),
        (lambda o: o.update(individuals=[[1, 0], [0, 0]]), "individuals[1]"),
        (lambda o: o["concepts"].update(d=[[0], [0]]), "concepts.d"),
        (lambda o: o["concepts"].update(A=[[1, 0], [0]]), "concepts.A[0]"),
        (lambda o: o["concepts"].update(A=[[0, 0], [0]]), "concepts.A[0]"),
        (lambda o: o["concepts"].update(A=[[7], [0]]), "concepts.A[0]"),
        (lambda o: o["concepts"].update(A=[[0]]), "concepts.A"),
    ],
)
def test_decode_model_rejections(mutate, path):
    payload = _valid_payload()
    mutate(payload)
    with pytest.raises(ModelFormatError) as info:
        decode_model(json.dumps(payload))
    assert info.value.path == path


def test_decode_model_rejects_bad_json():
    with pytest.raises(ModelFormatError):
        decode_model(b"{not json")


def test_encode_model_refuses_invalid_models():
    from apodeixis.model_core import make_model

    bad = make_model((2, 1), [(5, 0)], {"A": [{0}, set()]})
    with pytest.raises(ValueError):
        encode_model(bad)
