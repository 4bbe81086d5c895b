from __future__ import annotations

import streamlit as st
from pydantic import ValidationError

from widgets.cli import parse_expr
from widgets.errors import CalculatorError, DslSyntaxError
from widgets.manifold import euler_characteristic, poincare_poly
from widgets.ui import TOOL_BLURBS, TOOLS, inject_css, sidebar

# =======================
# ❖ Config / Constants  |
# =======================
APP_TITLE = "Suspension Calculator – Home"
APP_ICON = "🧮"

st.set_page_config(page_title=APP_TITLE, page_icon=APP_ICON, initial_sidebar_state="expanded")


# ==========================
# ❖ UI: Quick evaluate     |
# ==========================
def quick_eval() -> None:
    text = st.text_input("Quick evaluate", value="Sig1(SxS(2,3)) # SxS(3,3)", key="home_expr")
    if not text.strip():
        return
    try:
        m = parse_expr(text)
    except DslSyntaxError as e:
        st.error(f"Syntax error: {e}")
        return
    except (CalculatorError, ValidationError) as e:
        st.error(f"Error: {e}")
        return
    st.code(m.to_dsl(), language="text")
    st.caption(f"dim {m.dim} · P_t = {poincare_poly(m)} · χ = {euler_characteristic(m)}")


def tool_list() -> None:
    for label, page_path in TOOLS.items():
        cols = st.columns([2, 5])
        with cols[0]:
            try:
                st.page_link(page_path, label=label)
            except Exception:
                if st.button(label, key=f"home_open_{label}"):
                    st.switch_page(page_path)
        cols[1].caption(TOOL_BLURBS[label])


# ==========================
# ❖ App Entry              |
# ==========================
def main() -> None:
    inject_css()
    sidebar("__tool_search_sidebar__")
    st.title(APP_TITLE)
    st.markdown(
        "Exact computations with connected sums of spheres, sphere products, projective spaces "
        "and Smale–Barden manifolds: suspensions, circle bundles and torus bundles."
    )
    st.markdown("---")
    quick_eval()
    st.markdown("---")
    st.header("Tools")
    tool_list()


if __name__ == "__main__":
    main()
