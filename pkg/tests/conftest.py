import dataclasses
import time

import pytest

from discordyn.analysis import measure_series, run_config
from discordyn.figures import PRESETS


class FigRunner:
    """Session cache: each preset is integrated at most once."""

    def __init__(self):
        self._runs = {}
        self._audited = {}
        self.seconds = {}

    def run(self, preset_id):
        if preset_id not in self._runs:
            cfg = dataclasses.replace(PRESETS[preset_id].config, oracle_audit_stride=0)
            start = time.perf_counter()
            self._runs[preset_id] = run_config(cfg)
            self.seconds[preset_id] = time.perf_counter() - start
        return self._runs[preset_id]

    def audited_series(self, preset_id, stride=100):
        key = (preset_id, stride)
        if key not in self._audited:
            res = self.run(preset_id)
            self._audited[key] = measure_series(res.trajectory, audit_stride=stride)
        return self._audited[key]


@pytest.fixture(scope="session")
def fig_runs():
    return FigRunner()
