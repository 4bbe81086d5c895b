from widgets.selftest.suites import SUITES, SelfTestContext, run_selftest

__all__ = ["SUITES", "SelfTestContext", "run_selftest"]
