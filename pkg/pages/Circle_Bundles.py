# pages/Circle_Bundles.py
from __future__ import annotations

from widgets.bundle.app import render
from widgets.ui import tool_page

tool_page("Circle Bundles", "⭕", "__tool_search_sidebar_bundle__")
render()
