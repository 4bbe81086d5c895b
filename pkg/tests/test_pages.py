import pytest
from streamlit.testing.v1 import AppTest

TIMEOUT = 60


def load(path: str) -> AppTest:
    at = AppTest.from_file(path, default_timeout=TIMEOUT)
    at.run()
    assert not at.exception
    return at


def codes(at: AppTest):
    return [c.value for c in at.code]


def test_home_quick_evaluate():
    at = load("../Home.py")
    assert codes(at) == ["SxS(2,4) # 2*SxS(3,3)"]
    at.text_input(key="home_expr").set_value("SxS(2,3").run()
    assert at.error and "Syntax error" in at.error[0].value


def test_applications_page_lists_tools():
    at = load("../pages/Application.py")
    labels = [b.label for b in at.button]
    for tool in ["Manifold Calculator", "Suspensions", "Circle Bundles", "Torus Bundles", "Self-test"]:
        assert f"Open {tool}" in labels
    assert "python cli.py qk --k 4 --oracle --tower" in codes(at)


def test_manifold_calculator():
    at = load("../pages/Manifold_Calculator.py")
    assert codes(at) == ["SxS(2,3) # M(3) # Sig1(SxS(2,2))", "5*SxS(3,4)"]
    at.text_input[0].set_value("S(3) # SxS(2,3)").run()
    assert "dimension mismatch 3 vs 5" in at.error[0].value
    at.text_input[0].set_value("Sig1(Surf(2))").run()
    assert not at.exception and not at.error
    assert codes(at)[0] == "Sig1(Surf(2))"
    assert at.metric[2].value == "unavailable"


def test_suspension_page():
    at = load("../pages/Suspensions.py")
    assert codes(at)[0] == "Sig0(SxS(2,2) # CP(2)) = 2*SxS(2,3) # Sig0(CP(2))"
    at.text_input(key="susp_expr").set_value("SxS(2,3)").run()
    at.radio(key="susp_index").set_value(1).run()
    assert codes(at)[0] == "Sig1(SxS(2,3)) = SxS(2,4) # SxS(3,3)"


def test_circle_bundles_page():
    at = load("../pages/Circle_Bundles.py")
    values = codes(at)
    assert "SxS(2,4) # CP(3)  <-  SxS(2,5) # SxS(3,4)" in values
    assert "SxS(3,4) # Sig0(CP(3))" in values
    assert "SxS(2,4) # 2*SxS(3,3) # Sig1(M(3))" in values


def test_torus_page_checks():
    at = load("../pages/Torus_Bundles.py")
    assert codes(at) == ["Q_3 = 5*SxS(3,4)"]
    at.checkbox[0].check().run()
    at.checkbox[1].check().run()
    messages = [s.value for s in at.success]
    assert any(m.startswith("Oracle PASS") for m in messages)
    assert "Tower PASS" in messages


@pytest.mark.slow
def test_selftest_page_runs():
    at = load("../pages/Self_Test.py")
    at.slider[0].set_value(2).run()
    next(b for b in at.button if b.label == "Run self-test").click().run()
    assert not at.exception
    assert at.success and at.success[0].value.startswith("All ")
