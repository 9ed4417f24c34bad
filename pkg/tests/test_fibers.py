"""Fiber patterns, retraction, gluing and the covering homotopies."""

from fractions import Fraction as F

import pytest

from pamscan import (
    BMElement,
    CLOSED,
    DomainError,
    Interval,
    OPEN,
    base_homotopy,
    bm_canon,
    cap_project,
    classify_fiber,
    contract,
    cover_homotopy,
    glue_g,
    is_in_O,
    labeled_normalize,
    path_eval_at_zero,
    positive_part,
    push_homotopy,
    retract_r,
    standard_lift,
)


def I(u, v, p, q):
    return Interval(F(u), F(v), p, q)


HO = (OPEN, CLOSED)

# standard pattern over {1/2: c}: central a, near cut pair b
ETA_H = (
    (I("-7/2", "-1/4", *HO), "b"),
    (I("-1/4", "1/4", *HO), "a"),
    (I("1/4", "7/2", *HO), "b"),
)
# same value, strands too short for the wide window
ETA_F_NEAR = (
    (I("-3/2", "-1/4", *HO), "b"),
    (I("-1/4", "1/4", *HO), "a"),
    (I("1/4", "3/2", *HO), "b"),
)
# far cut pair: contributes only to the narrow pattern, not the value
ETA_F_FAR = (
    (I(-3, "-5/8", *HO), "b"),
    (I("-1/4", "1/4", *HO), "a"),
    (I("5/8", 3, *HO), "b"),
)
Z_C = BMElement(None, ((F(1, 2), "c"),))
Z_A = BMElement(None, ((F(1, 2), "a"),))


def test_classify_standard(m3):
    assert path_eval_at_zero(ETA_H, m3) == Z_C
    cls = classify_fiber(ETA_H, Z_C, m3)
    assert cls.verdict == "in-H"
    assert cls.alpha == (("a", "b"),)
    assert cls.far == ()
    assert cls.matched


def test_classify_near(m3):
    assert path_eval_at_zero(ETA_F_NEAR, m3) == Z_C
    cls = classify_fiber(ETA_F_NEAR, Z_C, m3)
    assert cls.verdict == "in-F"
    assert cls.alpha == (("a", "b"),)


def test_classify_far(m3):
    assert path_eval_at_zero(ETA_F_FAR, m3) == Z_A
    cls = classify_fiber(ETA_F_FAR, Z_A, m3)
    assert cls.verdict == "in-F"
    assert cls.alpha == (("a", "0"),)
    assert cls.far == ((F(5, 4), "b"),)


def test_classify_neither(m3):
    cls = classify_fiber(((I(0, 1, CLOSED, OPEN), "c"),), Z_C, m3)
    assert cls.verdict == "neither"
    assert not cls.matched
    assert "unpaired" in cls.reason


def test_classify_wrong_value(m3):
    cls = classify_fiber(ETA_F_FAR, Z_C, m3)
    assert cls.verdict == "neither"
    assert "not a partition of c" in cls.reason


def test_retract_fixes_standard(m3):
    assert retract_r(ETA_H, Z_C, m3) == labeled_normalize(ETA_H, m3)


def test_retract_near_frozen(m3):
    out = retract_r(ETA_F_NEAR, Z_C, m3)
    assert out == labeled_normalize(ETA_H, m3)
    assert classify_fiber(out, Z_C, m3).verdict == "in-H"


def test_retract_far_frozen(m3):
    # three outward rounds push the far pair beyond the wide window
    out = retract_r(ETA_F_FAR, Z_A, m3)
    assert out == (
        (I(-68, "-49/8", *HO), "b"),
        (I("-1/4", "1/4", *HO), "a"),
        (I("49/8", 68, *HO), "b"),
    )
    cls = classify_fiber(out, Z_A, m3)
    assert cls.verdict == "in-H"
    assert cls.alpha == (("a", "0"),)


def test_retract_rejects_non_member(m3):
    with pytest.raises(DomainError, match="not a fiber member"):
        retract_r(((I(0, 1, CLOSED, OPEN), "c"),), Z_C, m3)


def test_glue_frozen(m3):
    out = glue_g(ETA_H, (("a", "b"),), Z_C, m3)
    assert out == (
        (I("-11/2", "-9/4", *HO), "b"),
        (I("-9/4", -2, *HO), "a"),
        (I(-2, "-1/4", *HO), "b"),
        (I("-1/4", "1/4", *HO), "a"),
        (I("1/4", 2, *HO), "b"),
        (I(2, "9/4", *HO), "a"),
        (I("9/4", "11/2", *HO), "b"),
    )
    assert path_eval_at_zero(out, m3) == Z_C
    cls = classify_fiber(out, Z_C, m3)
    assert cls.verdict == "in-F"
    assert cls.alpha == (("a", "b"),)


def test_glue_guards(m3):
    with pytest.raises(DomainError, match="one partition per base point"):
        glue_g(ETA_H, (), Z_C, m3)
    with pytest.raises(DomainError, match="not a partition"):
        glue_g(ETA_H, (("a", "a"),), Z_C, m3)
    # alpha must agree with what the member already shows at 1/2
    with pytest.raises(DomainError, match="disagrees"):
        glue_g(ETA_H, (("b", "a"),), Z_C, m3)
    # gluing onto a narrow-pattern member is refused
    with pytest.raises(DomainError, match="standard pattern"):
        glue_g(ETA_F_NEAR, (("a", "b"),), Z_C, m3)


def test_glue_with_m0(m3):
    # standard members over a 0-labeled base span the whole wide window
    eta = ((I(-4, 4, CLOSED, OPEN), "c"),)
    z = path_eval_at_zero(eta, m3)
    assert z == BMElement("c", ())
    assert classify_fiber(eta, z, m3).verdict == "in-H"
    out = glue_g(eta, (), z, m3)
    # the fresh content contributes the half-open seam piece at 0
    assert (I(-1, 1, CLOSED, OPEN), "c") in out
    assert path_eval_at_zero(out, m3) == z


def test_contract_frozen(m3):
    nf = labeled_normalize(ETA_H, m3)
    assert contract(ETA_H, F(0), F(7, 2), m3) == nf
    assert contract(ETA_H, F(1, 2), F(7, 2), m3) == ((I("-7/4", "7/4", *HO), "b"),)
    assert contract(ETA_H, F(1), F(7, 2), m3) == ()
    with pytest.raises(DomainError):
        contract(ETA_H, F(2), F(7, 2), m3)


def test_contract_is_monotone_membership(m3):
    # clamped mirror strands paste through 0 and stay a configuration
    for k in range(9):
        out = contract(ETA_H, F(k, 8), F(7, 2), m3)
        assert out == labeled_normalize(out, m3)


def test_cap_project_frozen(m3):
    z, cap, s2 = cap_project(ETA_H, F(7, 2), m3)
    assert z == Z_C
    assert s2 == F(11, 2)
    assert cap == (
        (I("3/4", "7/4", *HO), "b"),
        (I(1, 2, OPEN, OPEN), "a"),
        (I(2, "9/4", CLOSED, CLOSED), "a"),
        (I("9/4", "11/2", *HO), "b"),
    )


def test_standard_lift_frozen(m3):
    z, cap, s2 = cap_project(ETA_H, F(7, 2), m3)
    lift, s3 = standard_lift(z, (), s2 - 2, m3)
    assert s3 == F(11, 2)
    assert lift == (
        (I("-5/4", "-1/4", *HO), "c"),
        (I("1/4", "5/4", *HO), "c"),
    )
    assert path_eval_at_zero(lift, m3) == z


def test_standard_lift_rejects_m0(m3):
    with pytest.raises(DomainError, match="no label at coordinate 0"):
        standard_lift(BMElement("a", ()), (), F(1), m3)


def test_standard_lift_with_payload(m3):
    z = BMElement(None, ((F(-1, 2), "a"),))
    xi = ((I(1, 2, *HO), "b"),)
    lift, s2 = standard_lift(z, xi, F(2), m3)
    # the payload lands at +2 with its mirror on the left
    assert (I(3, 4, *HO), "b") in lift
    assert (I(-4, -3, *HO), "b") in lift
    assert path_eval_at_zero(lift, m3) == z


def test_push_homotopy(m3):
    pos = positive_part(labeled_normalize(ETA_H, m3), m3)
    assert push_homotopy(pos, F(0), m3) == labeled_normalize(pos, m3)
    assert push_homotopy(pos, F(1), m3) == ()
    mid = push_homotopy(pos, F(1, 2), m3)
    assert all(j.u >= 1 for j, _ in mid)


def test_base_homotopy_spots(m3):
    za = bm_canon(m3, [(F(1, 4), "a")])
    assert base_homotopy(za, F(1), m3) == BMElement(None, ((F(1, 2), "a"),))
    zb = bm_canon(m3, [(F(3, 4), "a")])
    assert base_homotopy(zb, F(1), m3).is_empty
    assert base_homotopy(zb, F(0), m3) == zb
    zm = bm_canon(m3, [(F(0), "c")])
    assert base_homotopy(zm, F(1), m3) == zm


def test_is_in_O_strict(m3):
    assert not is_in_O(BMElement(None, ((F(1, 2), "a"),)))
    assert is_in_O(BMElement(None, ((F(5, 8), "a"),)))
    assert not is_in_O(BMElement("c", ()))


COVER_ETA = (
    (I(-3, -1, *HO), "b"),
    (I("-1/8", "1/8", *HO), "a"),
    (I(1, 3, *HO), "b"),
)


def test_cover_homotopy_frozen(m3):
    z = path_eval_at_zero(COVER_ETA, m3)
    assert z == BMElement(None, ((F(3, 4), "a"),))
    out0, s0 = cover_homotopy(COVER_ETA, F(0), F(3), m3)
    assert s0 == F(3)
    assert out0 == labeled_normalize(COVER_ETA, m3)
    out1, s1 = cover_homotopy(COVER_ETA, F(1), F(3), m3)
    assert s1 == F(9, 2)
    # the thin central piece collapses; strands shift out by 3/2
    assert out1 == (
        (I("-9/2", "-5/2", *HO), "b"),
        (I("5/2", "9/2", *HO), "b"),
    )


def test_cover_homotopy_covers_base(m3):
    z = path_eval_at_zero(COVER_ETA, m3)
    for t in (F(1, 4), F(1, 2), F(3, 4)):
        out, _ = cover_homotopy(COVER_ETA, t, F(3), m3)
        assert path_eval_at_zero(out, m3) == base_homotopy(z, t, m3)


def test_cover_homotopy_guards(m3):
    # value {1/2: a} sits on the closed half-ball: not in O
    eta = ((I("-1/4", "1/4", *HO), "a"),)
    with pytest.raises(DomainError, match="beyond 1/2"):
        cover_homotopy(eta, F(1, 2), F(1), m3)
    lop = ((I("-1/8", "1/8", *HO), "a"), (I(1, 3, *HO), "b"))
    with pytest.raises(DomainError, match="mirror-invariant"):
        cover_homotopy(lop, F(1, 2), F(3), m3)
