# widgets/torus/app.py
from __future__ import annotations

import pandas as pd
import streamlit as st

from widgets.errors import CalculatorError
from widgets.manifold import poincare_poly
from widgets.torus import b_coefficients, q_manifold, q_multiplicities, spectral_e3_report, tower_stages
from widgets.ui import get_settings


@st.cache_data(show_spinner=False)
def _report_frame(k: int, workers: int):
    report = spectral_e3_report(k, workers)
    return report.to_frame(), report.to_json_dict(), report.passed


def render() -> None:
    """Torus bundles over 1-connected 4-manifolds with b₂ = k."""
    k = int(st.number_input("k = b₂ of the base", min_value=1, max_value=12, value=3, step=1))
    try:
        m = q_manifold(k)
        b, c = b_coefficients(k), q_multiplicities(k)
    except CalculatorError as e:
        st.error(f"Error: {e}")
        return

    st.code(f"Q_{k} = {m.to_dsl()}", language="text")
    poly = poincare_poly(m)
    st.write(f"Poincaré polynomial: `{poly}`")
    if b:
        st.dataframe(
            pd.DataFrame(
                [
                    {"i": i, "summand": f"S^{i + 2} x S^{k - i + 2}", "b_i": bi, "c_i": ci}
                    for i, (bi, ci) in enumerate(zip(b, c), start=1)
                ]
            ),
            hide_index=True,
            use_container_width=True,
        )

    cols = st.columns(2)
    run_oracle = cols[0].checkbox("E3-page oracle", value=False, disabled=k < 2)
    run_tower = cols[1].checkbox("Circle-by-circle tower", value=False)

    if run_oracle and k >= 2:
        with st.spinner("Computing d2 ranks…"):
            try:
                frame, summary, passed = _report_frame(k, get_settings().oracle.workers)
            except CalculatorError as e:
                st.error(f"Error: {e}")
                return
        agrees = passed and summary["poincare"] == str(poly)
        (st.success if agrees else st.error)(f"Oracle {'PASS' if agrees else 'FAIL'}: E3 P_t = {summary['poincare']}")
        st.dataframe(frame, hide_index=True, use_container_width=True)

    if run_tower:
        try:
            stages = tower_stages(k)
        except CalculatorError as e:
            st.error(f"Error: {e}")
            return
        ok = stages[-1] == m
        (st.success if ok else st.error)(f"Tower {'PASS' if ok else 'FAIL'}")
        st.dataframe(
            pd.DataFrame([{"circles": j, "total space": s.to_dsl()} for j, s in enumerate(stages, start=1)]),
            hide_index=True,
            use_container_width=True,
        )
