"""Builtin presentations and the text descriptor format."""

import pytest

from qdual.algebra import EVEN, ODD, PresentationError, render_element
from qdual.presentations import (
    derive_inverse_rules,
    dual_algebra,
    dual_superplane,
    gl_algebra,
    load_presentation,
    load_presentation_file,
    superplane,
    tensor,
)
from qdual.qfield import Q, q_power


def test_builtin_shapes():
    d = dual_algebra()
    assert [g.name for g in d.generators] == ["alpha", "delta", "b", "c"]
    assert [g.parity for g in d.generators] == [ODD, ODD, EVEN, EVEN]
    assert [g.invertible for g in d.generators] == [False, False, True, True]
    g = gl_algebra()
    assert [g.name for g in g.generators] == ["beta", "gamma", "a", "d"]
    assert [s.parity for s in g.generators] == [ODD, ODD, EVEN, EVEN]
    assert [g.name for g in superplane().generators] == ["x", "xi"]
    assert [g.name for g in dual_superplane().generators] == ["eta", "y"]


def test_builtins_are_cached():
    assert dual_algebra() is dual_algebra()
    assert gl_algebra() is gl_algebra()


def test_derive_inverse_rules_is_idempotent():
    d = derive_inverse_rules(dual_algebra())
    assert d.derived
    assert derive_inverse_rules(d) is d
    assert not dual_algebra().derived


def test_tensor_default_name():
    t = tensor(gl_algebra(), superplane())
    assert t.name == "glxplane"
    assert [g.name for g in t.generators] == [
        "beta", "gamma", "a", "d", "x", "xi",
    ]


DESCRIPTOR = """
# a two-generator quantum plane with an invertible even coordinate
generator u even invertible
generator theta odd

rule theta*u = q^2 * u*theta   # exchange with a scalar only
"""


def test_descriptor_round_trip():
    pres = load_presentation(DESCRIPTOR, name="twist")
    assert pres.name == "twist"
    assert [g.name for g in pres.generators] == ["u", "theta"]
    got = pres.normal_form([("theta", 1), ("u", 1)])
    assert got == pres.normal_form([("u", 1), ("theta", 1)], Q * Q)
    derived = derive_inverse_rules(pres)
    th = derived.gen("theta")
    ui = derived.gen("u", -1)
    assert th * ui == q_power(-2) * (ui * th)


def test_descriptor_with_correction_term():
    text = """
    generator alpha odd
    generator delta odd
    generator b even invertible
    generator c even invertible
    rule delta*alpha = -alpha*delta
    rule b*alpha = q*alpha*b
    rule b*delta = q*delta*b
    rule c*alpha = q*alpha*c
    rule c*delta = q*delta*c
    rule c*b = b*c - (q - q^-1)*delta*alpha
    """
    pres = load_presentation(text)
    got = pres.normal_form([("c", 1), ("b", 1)])
    assert render_element(got) == "b*c + (q^2 - 1)/(q)*alpha*delta"


def test_descriptor_file(tmp_path):
    path = tmp_path / "twist.txt"
    path.write_text(DESCRIPTOR, encoding="utf-8")
    pres = load_presentation_file(path)
    assert [g.name for g in pres.generators] == ["u", "theta"]


@pytest.mark.parametrize("text, fragment", [
    ("generator q even\n", "'q' is the scalar indeterminate"),
    ("generator u even\ngenerator v even\nrule u*v = q*v*u\nfoo bar\n",
     "unknown directive"),
    ("generator u even\ngenerator v even\nrule v*u q*u*v\n", "rule needs '='"),
    ("generator u even maybe\n", "unknown flag"),
    ("generator u sideways\n", "expected 'generator"),
    ("generator theta odd invertible\n", "cannot be invertible"),
    ("rule v*u = q*u*v\n", "declares no generators"),
    ("generator u even\ngenerator v even\nrule w*u = q*u*w\n",
     "known generators"),
    ("generator u even\ngenerator v even\nrule v*u = q*u*u\n",
     "nonzero coefficient"),
    ("generator u even\ngenerator v even\nrule v*u = 0*u*v\n",
     "nonzero coefficient"),
    ("generator u even\ngenerator v even\n"
     "rule v*u = q*u*v\nrule v*u = u*v\n", "duplicate rule"),
    ("generator u even\ngenerator v even\nrule v*u = q*(u*v\n", "line 3"),
    ("generator u even\ngenerator v even\n", "missing exchange rule"),
    ("generator u even\ngenerator u odd\nrule u*u = q*u*u\n", "duplicate"),
])
def test_descriptor_rejections(text, fragment):
    with pytest.raises(PresentationError) as err:
        load_presentation(text)
    assert fragment in str(err.value)
