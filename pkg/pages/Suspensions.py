# pages/Suspensions.py
from __future__ import annotations

from widgets.suspension.app import render
from widgets.ui import tool_page

tool_page("Suspensions", "🌀", "__tool_search_sidebar_suspension__")
render()
