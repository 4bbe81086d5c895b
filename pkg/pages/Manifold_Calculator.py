# pages/Manifold_Calculator.py
from __future__ import annotations

from widgets.manifold.app import render
from widgets.ui import tool_page

tool_page("Manifold Calculator", "🧮", "__tool_search_sidebar_manifold__")
render()
