def test_repo_imports():
    import src.main
    import src.runner
    import src.suites.common


def test_every_registered_suite_resolves():
    from src.runner import _resolve_suite_module
    from src.suites import SUITES

    for name in SUITES:
        mod = _resolve_suite_module(name)
        assert callable(mod.run)
        assert mod.DEFAULT_TARGETS
