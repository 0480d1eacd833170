import itertools

import pytest

from oracles import ANAFUNC_ORDER, ANATYPE_ORDER, tc_key
from textellipsis import (
    AnaphorKind,
    FunctionalCategory,
    GrammFunction,
    Kind,
    Order,
    Phrase,
    Utterance,
    compare_tc,
    rank_cf,
)
from textellipsis.centering import word_class_isa
from textellipsis.errors import DiscourseError

A = FunctionalCategory.anaphor
HR = FunctionalCategory(Kind.HEAD_RHEME)
UNMARKED = FunctionalCategory(Kind.UNMARKED_HEAD)

_BASE_LABEL = {
    Kind.HEAD_RHEME: "head rheme",
    Kind.RIGHT_EDGE_RHEME: "right edge rheme",
    Kind.HEAD_THEME: "head theme",
    Kind.UNMARKED_HEAD: "head unmarked",
}
ALL_CATEGORIES = [FunctionalCategory(k) for k in _BASE_LABEL] + [
    A(ak, gf) for ak in AnaphorKind for gf in GrammFunction
]


def labels(cat):
    if cat.is_anaphor:
        return ("anaphora", ANATYPE_ORDER[cat.anaphor_kind], ANAFUNC_ORDER[cat.gramm_function])
    return (_BASE_LABEL[cat.kind], None, None)


def expected(a, b):
    ka, kb = tc_key(labels(a)), tc_key(labels(b))
    return Order.A_FIRST if ka < kb else Order.B_FIRST if ka > kb else Order.EQUAL


def test_examples():
    assert compare_tc(A(AnaphorKind.PRONOMINAL, GrammFunction.ADJUNCT), HR) is Order.A_FIRST
    assert compare_tc(
        A(AnaphorKind.PRONOMINAL, GrammFunction.SUBJECT), A(AnaphorKind.NOMINAL_ANAPHOR, GrammFunction.SUBJECT)
    ) is Order.A_FIRST
    assert compare_tc(
        A(AnaphorKind.NOMINAL_ANAPHOR, GrammFunction.SUBJECT), A(AnaphorKind.NOMINAL_ANAPHOR, GrammFunction.ADJUNCT)
    ) is Order.A_FIRST
    assert compare_tc(HR, HR) is Order.EQUAL


def test_different_anaphor_types_ignore_function():
    # a textual ellipsis subject still loses to a possessive adjunct
    assert compare_tc(
        A(AnaphorKind.TEXTUAL_ELLIPSIS, GrammFunction.SUBJECT), A(AnaphorKind.POSSESSIVE_PRONOUN, GrammFunction.ADJUNCT)
    ) is Order.B_FIRST


@pytest.mark.parametrize("a", ALL_CATEGORIES, ids=lambda c: c.token)
def test_dispatch_matches_table_ranking(a):
    for b in ALL_CATEGORIES:
        assert compare_tc(a, b) is expected(a, b)


def test_category_validation():
    with pytest.raises(ValueError):
        FunctionalCategory(Kind.ANAPHOR)
    with pytest.raises(ValueError):
        FunctionalCategory(Kind.HEAD_THEME, AnaphorKind.PRONOMINAL, GrammFunction.SUBJECT)


@pytest.mark.parametrize("cat", ALL_CATEGORIES, ids=lambda c: c.token)
def test_category_tokens_round_trip(cat):
    assert FunctionalCategory.parse(cat.token) == cat


@pytest.mark.parametrize("token", ["anaphor", "anaphor:nominal", "anaphor:foo:subject", "theme", ""])
def test_bad_tokens(token):
    with pytest.raises(ValueError):
        FunctionalCategory.parse(token)


def test_word_class_hierarchy():
    assert word_class_isa("ProperName", "Noun")
    assert word_class_isa("Noun", "Word")
    assert word_class_isa("DetDefinite", "Nominal")
    assert not word_class_isa("Pronoun", "Noun")
    assert not word_class_isa("Verb", "Nominal")


def _phrase(pid, func, word_class="Noun", head=None):
    return Phrase(pid, pid, word_class, func, head=head, binding=pid.upper())


def test_rank_motherboard_sentence(board_doc):
    state = rank_cf(board_doc.utterances[0])
    assert [p.binding for p in state.cf] == ["PCI-MOTHERBOARD-0004", "COMPAQ", "LTE-LITE-25"]
    assert state.cb is None
    assert state.utterance == 1


def test_rank_second_sentence_has_cb(board_doc):
    state = rank_cf(board_doc.utterances[1])
    assert state.cb.binding == "CPU-0005"
    # Taktfrequenz (head rheme) then the right-edge modifier Mhz
    assert [p.surface for p in state.cf] == ["CPU", "Taktfrequenz", "Mhz"]


def test_single_phrase():
    u = Utterance(1, (_phrase("x", A(AnaphorKind.PRONOMINAL, GrammFunction.SUBJECT), "Pronoun"),))
    state = rank_cf(u)
    assert [p.id for p in state.cf] == ["x"]
    assert state.cb.id == "x"
    u = Utterance(1, (_phrase("y", HR),))
    assert rank_cf(u).cb is None


def test_modifiers_only_at_right_edge_of_rheme():
    u = Utterance(
        1,
        (
            _phrase("head", HR),
            _phrase("of", UNMARKED, "Preposition", head="head"),
            _phrase("mod", UNMARKED, head="of"),
            _phrase("edge", FunctionalCategory(Kind.RIGHT_EDGE_RHEME), head="head"),
            _phrase("verb", UNMARKED, "Verb"),
        ),
    )
    assert [p.id for p in rank_cf(u).cf] == ["head", "edge"]


def test_only_nouns_and_pronouns_are_centers():
    u = Utterance(1, (_phrase("v", HR, "Verb"), _phrase("adj", HR, "Adjective"), _phrase("pro", UNMARKED, "Pronoun")))
    assert [p.id for p in rank_cf(u).cf] == ["pro"]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_stable_sort_against_brute_force(n):
    # oracle: for every assignment of categories and every surface order, the
    # expected C_f is the unique permutation that is sorted by the table key
    # and keeps equal-key phrases in surface order
    pool = [HR, UNMARKED, A(AnaphorKind.NOMINAL_ANAPHOR, GrammFunction.SUBJECT), UNMARKED]
    for cats in itertools.product(pool, repeat=n):
        phrases = tuple(_phrase(f"p{i}", c) for i, c in enumerate(cats))
        got = [p.id for p in rank_cf(Utterance(1, phrases)).cf]
        ok = [
            [p.id for p in perm]
            for perm in itertools.permutations(phrases)
            if all(
                tc_key(labels(a.func)) < tc_key(labels(b.func))
                or (tc_key(labels(a.func)) == tc_key(labels(b.func)) and a.id < b.id)
                for a, b in zip(perm, perm[1:])
            )
        ]
        assert ok == [got]


def test_cf_is_permutation_of_eligible():
    phrases = tuple(_phrase(f"p{i}", c) for i, c in enumerate(ALL_CATEGORIES))
    cf = rank_cf(Utterance(1, phrases)).cf
    assert sorted(p.id for p in cf) == sorted(p.id for p in phrases)
    first_plain = next(i for i, p in enumerate(cf) if not p.func.is_anaphor)
    assert all(p.func.is_anaphor for p in cf[:first_plain])
    assert not any(p.func.is_anaphor for p in cf[first_plain:])


def test_utterance_validation():
    with pytest.raises(DiscourseError):
        Utterance(1, (_phrase("a", HR), _phrase("a", HR)))
    with pytest.raises(DiscourseError):
        Utterance(1, (_phrase("a", HR, head="zz"),))
    with pytest.raises(DiscourseError):
        Utterance(1, (_phrase("a", HR, head="b"), _phrase("b", HR, head="a")))
    with pytest.raises(DiscourseError):
        Utterance(1, (_phrase("a", HR, "Gerund"),))


def test_definite_derived_from_determiner_dependent():
    u = Utterance(2, (_phrase("det", UNMARKED, "DetDefinite", head="n"), _phrase("n", HR)))
    n = u.phrase("n")
    assert n.definite and n.utterance == 2 and n.position == 2
    assert not u.phrase("det").definite
