# widgets/selftest/app.py
from __future__ import annotations

import streamlit as st

from widgets.selftest.suites import SUITES, run_selftest
from widgets.ui import get_settings


def render() -> None:
    """Run the acceptance suites from the browser."""
    settings = get_settings()
    st.caption(f"{len(SUITES)} suites · seed {settings.selftest.seed} · {settings.selftest.random_samples} random samples")
    max_k = st.slider("Largest k for the torus-bundle suites", min_value=2, max_value=12, value=min(6, settings.selftest.max_k))

    if st.button("Run self-test"):
        with st.spinner("Running suites…"):
            table = run_selftest(max_k, settings)
        failed = table[table["status"] != "PASS"]
        if failed.empty:
            st.success(f"All {int(table['cases'].sum())} cases passed.")
        else:
            st.error(f"{len(failed)} suite(s) failed.")
        st.dataframe(table, hide_index=True, use_container_width=True)
        st.download_button(
            label="Download table as CSV",
            data=table.to_csv(index=False).encode("utf-8"),
            file_name="selftest.csv",
            mime="text/csv",
        )
