import random

from hypothesis import given, settings
from hypothesis import strategies as st

from acc.interface import (
    EMPTY,
    IElem,
    INeg,
    ISum,
    IZero,
    Interface,
    combine,
    invert,
    is_empty,
    mult,
    normalize,
    permits,
    sg,
)
from acc.terms import Kind, active, neutral, passive
from generators import LOCI3, METHODS2, iface_terms

FMG = active("f", "m", "g")
GMF_P = passive("g", "m", "f")
KEYS = [(f, m, g) for f in LOCI3 for m in METHODS2 for g in LOCI3]


def test_sg_examples():
    assert sg(0) == 0
    assert sg(-1) == -1
    assert sg(5) == 1


def test_sg_matches_sign_on_small_range():
    for k in range(-10, 11):
        assert sg(k) == (0 if k == 0 else (1 if k > 0 else -1))


def test_sg_axioms():
    for k in range(-20, 21):
        # sg(k + sg(k)) = sg(k)
        assert sg(k + sg(k)) == sg(k)
    assert sg(1) == 1


def test_reflection_cancels():
    assert normalize(ISum(IElem(FMG), IElem(GMF_P))) == EMPTY


def test_normalize_zero():
    assert normalize(IZero()) == EMPTY


def test_normalize_residual():
    t = ISum(ISum(IElem(FMG), IElem(FMG)), IElem(GMF_P))
    assert normalize(t) == Interface({("f", "m", "g"): 1})


def test_mult_examples():
    assert mult(("f", "m", "g"), normalize(IElem(FMG))) == 1
    assert mult(("g", "m", "f"), normalize(IElem(passive("f", "m", "g")))) == -1
    assert mult(("f", "m", "g"), normalize(IElem(active("h", "m", "g")))) == 0
    assert mult(FMG, normalize(IElem(FMG))) == 1


def test_combine_examples():
    assert combine(Interface({("f", "m", "g"): 1}), Interface({("f", "m", "g"): -1})) == EMPTY
    i = Interface({("f", "m", "g"): 3})
    assert combine(EMPTY, i) == i
    assert combine(Interface({("f", "m", "g"): 2}), Interface({("h", "m", "g"): 1})) == Interface(
        {("f", "m", "g"): 2, ("h", "m", "g"): 1}
    )


def test_invert_examples():
    assert invert(EMPTY) == EMPTY
    assert invert(Interface({("f", "m", "g"): 1})) == Interface({("f", "m", "g"): -1})
    assert invert(Interface({("f", "m", "g"): -3, ("g", "m", "f"): 2})) == Interface(
        {("f", "m", "g"): 3, ("g", "m", "f"): -2}
    )


def test_is_empty_examples():
    assert is_empty(normalize(IZero()))
    assert is_empty(normalize(ISum(IElem(FMG), IElem(GMF_P))))
    assert not is_empty(normalize(ISum(ISum(IElem(FMG), IElem(FMG)), IElem(GMF_P))))


def test_zero_entries_are_absent():
    i = Interface({("f", "m", "g"): 0, ("g", "m", "f"): 2})
    assert list(i.keys()) == [("g", "m", "f")]


def test_canonical_string_order():
    i = normalize(ISum(IElem(active("h", "m", "g")), ISum(IElem(passive("g", "m", "f")), IElem(FMG))))
    assert str(i) == "h.m@g"
    j = Interface({("g", "m", "f"): 2, ("f", "m", "g"): -1})
    assert str(j) == "~g.m@f + 2 * g.m@f"
    assert str(EMPTY) == "0"


def test_combination_is_not_idempotent():
    i = Interface({("f", "m", "g"): 1})
    assert combine(i, i) != i


def test_permits_sign_table():
    for k in (-2, -1, 0, 1, 2):
        i = Interface({("f", "m", "g"): k})
        assert permits(i, FMG) == (k > 0)
        assert permits(i, GMF_P) == (k < 0)
        assert permits(i, neutral("f", "m", "g"))


def test_arbitrary_precision():
    big = 10**40
    i = Interface({("f", "m", "g"): big})
    assert mult(("f", "m", "g"), combine(i, i)) == 2 * big


@settings(max_examples=200, deadline=None)
@given(iface_terms(), iface_terms(), iface_terms())
def test_group_laws(s, t, u):
    a, b, c = normalize(s), normalize(t), normalize(u)
    assert combine(a, b) == combine(b, a)
    assert combine(combine(a, b), c) == combine(a, combine(b, c))
    assert combine(EMPTY, a) == a
    assert combine(a, invert(a)) == EMPTY


@settings(max_examples=200, deadline=None)
@given(iface_terms(), iface_terms(), st.sampled_from(KEYS))
def test_homomorphism_and_mult_axioms(s, t, key):
    assert normalize(ISum(s, t)) == combine(normalize(s), normalize(t))
    assert normalize(INeg(t)) == invert(normalize(t))
    assert mult(key, normalize(INeg(t))) == -mult(key, normalize(t))
    assert mult(key, normalize(ISum(s, t))) == mult(key, normalize(s)) + mult(key, normalize(t))


def test_reflection_law_everywhere():
    for f, m, g in KEYS:
        assert is_empty(normalize(ISum(IElem(active(f, m, g)), IElem(passive(g, m, f)))))


def test_normalize_is_a_function_of_the_term():
    rng = random.Random(7)
    from generators import random_iface_term

    for _ in range(100):
        t = random_iface_term(rng)
        assert normalize(t) == normalize(t)
        assert all(v != 0 for _, v in normalize(t).items)


def test_interface_element_rejects_neutral():
    import pytest

    with pytest.raises(ValueError):
        IElem(neutral("f", "m", "g"))
    assert Kind.NEUTRAL is neutral("f", "m", "g").kind
