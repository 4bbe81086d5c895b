# pages/Torus_Bundles.py
from __future__ import annotations

from widgets.torus.app import render
from widgets.ui import tool_page

tool_page("Torus Bundles", "🍩", "__tool_search_sidebar_torus__")
render()
