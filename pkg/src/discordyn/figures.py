"""Built-in parameter presets spanning the standard regime grid.

Six families (fig1 .. fig6) cover broad/narrow spectra, zero and unit
detuning, large detuning, and both temperatures, each in four variants:
(a) psi state at theta = 0, (b) phi state at theta = 0, (c) psi at
theta = 1, (d) phi at theta = 1.  Where a family has established crossover
or sudden-death times, they are attached as regression targets with a
tolerance of max(0.05, 10%) in units of 1/gamma0.
"""

from dataclasses import dataclass

from .config import ConfigError, RunConfig


@dataclass(frozen=True)
class FigurePreset:
    id: str
    config: RunConfig
    expected_events: dict = None


def event_tolerance(value):
    """Reference event times carry roughly two significant figures."""
    return max(0.05, 0.10 * abs(value))


_FAMILIES = {
    # family: (lam, delta, t_max, sample_stride)
    "fig1": (5.0, 0.0, 5.0, None),
    "fig2": (0.1, 0.0, 10.0, None),
    "fig3": (5.0, 1.0, 5.0, None),
    "fig4": (0.1, 1.0, 60.0, None),
    "fig5": (0.1, 4.0, 200.0, 10),
    "fig6": (0.01, 1.0, 200.0, 10),
}

_VARIANTS = {
    # variant: (initial_state, theta)
    "a": ("psi", 0.0),
    "b": ("phi", 0.0),
    "c": ("psi", 1.0),
    "d": ("phi", 1.0),
}

_EXPECTED = {
    "fig1a": {"t_cri": 0.32},
    "fig1b": {"t_cri": 0.60},
    "fig1c": {"t_cri": 0.22, "t_esd": 0.73},
    "fig1d": {"t_cri": 0.22, "t_esd": 0.78},
    "fig2a": {"t_cri": 1.84},
    "fig2b": {"t_cri": 3.0},
    "fig2c": {"t_cri": 1.2, "t_esd": 3.0},
    "fig2d": {"t_esd": 3.1},
    "fig4a": {"t_cri": 7.7},
    "fig4b": {"t_cri": 31.0},
    "fig4c": {"t_cri": 1.2, "t_esd": 33.0},
    "fig4d": {"t_esd": 34.0},
}


def _build_presets():
    presets = {}
    for family, (lam, delta, t_max, stride) in _FAMILIES.items():
        for variant, (state, theta) in _VARIANTS.items():
            pid = family + variant
            presets[pid] = FigurePreset(
                id=pid,
                config=RunConfig(
                    lam=lam,
                    t_max=t_max,
                    initial_state=state,
                    delta=delta,
                    theta=theta,
                    sample_stride=stride,
                ),
                expected_events=_EXPECTED.get(pid),
            )
    return presets


PRESETS = _build_presets()


def get_preset(preset_id):
    try:
        return PRESETS[preset_id]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise ConfigError(f"unknown preset {preset_id!r}; known: {known}") from None
