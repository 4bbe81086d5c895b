# widgets/suspension/app.py
from __future__ import annotations

import pandas as pd
import streamlit as st
from pydantic import ValidationError

from widgets.cli import parse_expr
from widgets.errors import CalculatorError, DslSyntaxError
from widgets.suspension import (
    abelianize,
    is_homology_sphere,
    suspend_traced,
    suspension_cohomology,
    suspension_homology,
    surface_pi1,
)


def _suspend_section() -> None:
    text = st.text_input("Manifold N", value="SxS(2,2) # CP(2)", key="susp_expr")
    index = st.radio("Framing", options=[0, 1], format_func=lambda i: f"Sig{i}", horizontal=True, key="susp_index")
    if not text.strip():
        return
    try:
        n = parse_expr(text)
        result = suspend_traced(n, index)
        h, c = suspension_homology(n, index), suspension_cohomology(n, index)
    except DslSyntaxError as e:
        st.error(f"Syntax error: {e}")
        return
    except (CalculatorError, ValidationError) as e:
        st.error(f"Error: {e}")
        return

    st.code(f"Sig{index}({n.to_dsl()}) = {result.expr.to_dsl()}", language="text")
    if is_homology_sphere(result.expr):
        st.caption("The result is a homology sphere.")
    with st.expander("Rewrite trace", expanded=False):
        for rule in result.rules:
            st.text(rule)

    table = pd.DataFrame(
        [{"degree": d, "H_d": str(h.at(d)), "H^d": str(c.at(d))} for d in range(n.dim + 2)]
    )
    st.markdown("#### Homology of the suspension")
    st.dataframe(table, hide_index=True, use_container_width=True)


def _surface_section() -> None:
    cols = st.columns(2)
    g = cols[0].number_input("Genus g", min_value=0, max_value=20, value=2, step=1)
    index = cols[1].radio("Framing", options=[0, 1], format_func=lambda i: f"Sig{i}", horizontal=True, key="pi1_index")
    try:
        presentation = surface_pi1(int(g), index)
    except CalculatorError as e:
        st.error(f"Error: {e}")
        return
    st.code(presentation.to_text(), language="text")
    st.write(f"Abelianization: `{abelianize(presentation)}`")


def render() -> None:
    """Suspension calculator and fundamental groups of suspended surfaces."""
    st.markdown("#### Suspend")
    _suspend_section()
    st.markdown("---")
    st.markdown("#### π₁ of a suspended surface")
    _surface_section()
