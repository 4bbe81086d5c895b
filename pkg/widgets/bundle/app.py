# widgets/bundle/app.py
from __future__ import annotations

import pandas as pd
import streamlit as st
from pydantic import ValidationError

from widgets.abelian import FgAbGroup
from widgets.bundle import (
    FramingBit,
    classify_6mfd,
    in_circle_action_grammar,
    known_circle_bundles,
    pullback_bundle,
    pullback_index,
    smale_barden_decompose,
    tunnel_index,
    tunnel_sum,
)
from widgets.cli import parse_expr
from widgets.errors import CalculatorError, DslSyntaxError
from widgets.manifold import euler_characteristic


def _show_error(e: Exception) -> None:
    if isinstance(e, DslSyntaxError):
        st.error(f"Syntax error: {e}")
    else:
        st.error(f"Error: {e}")


def _pullback_tab() -> None:
    n = st.selectbox("Base dimension", options=[4, 6, 8, 10], index=1)
    bundles = known_circle_bundles(n)
    frame = pd.DataFrame(
        [
            {
                "bundle": b.name,
                "base": b.base.to_dsl(),
                "total": b.total.to_dsl(),
                "e ≡ w2 mod 2": b.euler_equals_w2_mod2,
            }
            for b in bundles
        ]
    )
    st.dataframe(frame, hide_index=True, use_container_width=True)
    name = st.selectbox("Bundle", options=[b.name for b in bundles])
    fibre_text = st.text_input("Summand N of the new base", value=f"SxS(2,{n - 2})")
    bundle = next(b for b in bundles if b.name == name)
    try:
        fibre = parse_expr(fibre_text)
        pulled = pullback_bundle(bundle, fibre)
        index, reason = pullback_index(bundle.total, bundle.base)
    except (CalculatorError, ValidationError) as e:
        _show_error(e)
        return
    st.code(f"{pulled.base.to_dsl()}  <-  {pulled.total.to_dsl()}", language="text")
    st.caption(f"Sig{int(index)}: {reason}")


def _tunnel_tab() -> None:
    cols = st.columns(2)
    m_text = cols[0].text_input("M", value="SxS(3,4)")
    n_text = cols[1].text_input("N (dim M - 1)", value="CP(3)")
    eps = cols[0].radio("ε", options=[0, 1], horizontal=True)
    delta = cols[1].radio("δ", options=[0, 1], horizontal=True)
    try:
        m, n = parse_expr(m_text), parse_expr(n_text)
        result = tunnel_sum(m, FramingBit(eps), n, FramingBit(delta))
        index, reason = tunnel_index(m, FramingBit(eps), FramingBit(delta))
    except (CalculatorError, ValidationError) as e:
        _show_error(e)
        return
    st.code(result.to_dsl(), language="text")
    st.caption(f"Sig{int(index)}: {reason}")


def _classify_tab() -> None:
    h2_text = st.text_input("H₂ of the quotient 5-manifold", value="Z^2 + Z/3 + Z/3")
    cols = st.columns(2)
    w2 = cols[0].checkbox("w₂ ≠ 0")
    euler_eq = cols[1].checkbox("Euler class ≡ w₂ mod 2")
    try:
        h2 = FgAbGroup.from_text(h2_text)
        quotient = smale_barden_decompose(h2, w2)
        result = classify_6mfd(h2, w2, euler_eq)
    except (CalculatorError, ValidationError) as e:
        _show_error(e)
        return
    st.write(f"Quotient: `{quotient.to_dsl()}`")
    st.code(result.to_dsl(), language="text")
    st.caption(
        f"χ = {euler_characteristic(result)} · normal form {'ok' if in_circle_action_grammar(result) else 'unexpected'}"
    )


def render() -> None:
    """Circle bundles: pullbacks, tunnel sums and the 6-manifold classifier."""
    pull, tunnel, classify = st.tabs(["Pullback", "Tunnel sum", "6-manifolds"])
    with pull:
        _pullback_tab()
    with tunnel:
        _tunnel_tab()
    with classify:
        _classify_tab()
