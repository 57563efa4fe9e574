import argparse
from pathlib import Path

import pytest

from src.config import load_config
from src.errors import UsageError


def test_environment_defaults(monkeypatch):
    monkeypatch.setenv("WORKBENCH_THREADS", "3")
    monkeypatch.setenv("WORKBENCH_GROUP_CAP", "500")
    monkeypatch.setenv("WORKBENCH_OUT_DIR", "reports")
    monkeypatch.setenv("WORKBENCH_QUIET", "yes")
    cfg = load_config()
    assert (cfg.threads, cfg.group_cap, cfg.out_dir, cfg.quiet) == (3, 500, Path("reports"), True)


def test_flags_override_environment(monkeypatch):
    monkeypatch.setenv("WORKBENCH_THREADS", "3")
    args = argparse.Namespace(threads=1, group_cap=None, quiet=False, timings=True, seed=7)
    cfg = load_config(args)
    assert cfg.threads == 1
    assert cfg.timings and cfg.seed == 7
    assert cfg.describe() == {"groupCap": cfg.group_cap, "seed": 7}


@pytest.mark.parametrize("raw", ["many", "0"])
def test_bad_environment(monkeypatch, raw):
    monkeypatch.setenv("WORKBENCH_THREADS", raw)
    with pytest.raises(UsageError, match="WORKBENCH_THREADS"):
        load_config()
