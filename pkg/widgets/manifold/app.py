# widgets/manifold/app.py
from __future__ import annotations

import streamlit as st
from pydantic import ValidationError

from widgets.abelian import IntPolynomial
from widgets.cli import homology_frame, parse_expr
from widgets.errors import CalculatorError, DslSyntaxError
from widgets.manifold import (
    euler_characteristic,
    from_poincare,
    is_simply_connected,
    is_torsion_free,
    poincare_poly,
    w2_status,
)

DEFAULT_EXPR = "SxS(2,3) # M(3) # Sig1(SxS(2,2))"
GRAMMAR_HELP = (
    "Atoms: S(n), SxS(p,q), TwS(q), CP(n), HP(n), W, M(k), X(i), Surf(g), Sig0(expr), Sig1(expr). "
    "Join with '#', repeat with 'k*A'."
)


def _coefficients(text: str) -> IntPolynomial:
    try:
        values = [int(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError as e:
        raise CalculatorError(f"coefficients must be integers: {e}") from e
    return IntPolynomial(coefficients=values)


def render() -> None:
    """Evaluate an expression and show its invariants."""
    text = st.text_input("Expression", value=DEFAULT_EXPR, help=GRAMMAR_HELP)
    if not text.strip():
        st.info("Enter an expression to evaluate.")
        return

    try:
        m = parse_expr(text)
    except DslSyntaxError as e:
        st.error(f"Syntax error: {e}")
        return
    except (CalculatorError, ValidationError) as e:
        st.error(f"Error: {e}")
        return

    st.markdown("#### Canonical form")
    st.code(m.to_dsl(), language="text")

    cols = st.columns(4)
    cols[0].metric("dimension", m.dim)
    cols[1].metric("χ", euler_characteristic(m))
    w2, w2_reason = w2_status(m)
    cols[2].metric("w₂", "unavailable" if w2 is None else ("≠ 0" if w2 else "0"))
    cols[3].metric("π₁", "trivial" if is_simply_connected(m) else "nontrivial")

    if w2_reason:
        st.caption(f"w₂ unavailable: {w2_reason}")

    st.markdown("#### Homology and cohomology")
    st.dataframe(homology_frame(m), hide_index=True, use_container_width=True)
    st.write(f"Poincaré polynomial: `{poincare_poly(m)}`" + ("" if is_torsion_free(m) else " (torsion present)"))

    with st.expander("JSON"):
        st.json(m.to_json_dict())

    st.markdown("---")
    st.markdown("#### Sphere products from a Poincaré polynomial")
    st.caption("Coefficients of 1, t, t², … separated by commas.")
    coeffs = st.text_input("Coefficients", value="1,0,0,5,5,0,0,1")
    if coeffs.strip():
        try:
            poly = _coefficients(coeffs)
            st.code(from_poincare(poly, poly.degree).to_dsl(), language="text")
        except (CalculatorError, ValidationError) as e:
            st.error(f"Error: {e}")
