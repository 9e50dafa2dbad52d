"""Tests for the built-in scenario presets."""

import pytest

from harness.presets import FIGURE_PRESETS, PRESETS, preset, preset_names, resolve_preset


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_every_preset_validates_scaled(name):
    variants = preset(name, scale=0.01, seeds=(0,))
    assert variants
    for config in variants:
        assert config.scenario.startswith(f"{name}/")
        assert config.seeds == (0,)
        assert config.horizon < 20_000


def test_variant_names():
    names = [c.scenario for c in preset("static-bpsk")]
    assert names == ["static-bpsk/jb-ucb1", "static-bpsk/epsilon-greedy-m5", "static-bpsk/epsilon-greedy-m10",
                     "static-bpsk/epsilon-greedy-m20", "static-bpsk/fixed-awgn"]


def test_full_scale_defaults():
    config = preset("adaptive-victim")[0]
    assert config.horizon == 2 ** 20
    assert len(config.seeds) == 30
    assert config.algorithm.window_w == 25_000
    assert config.victims[0].adapt_window == 50_000


def test_scale_shrinks_windows():
    config = preset("adaptive-victim", scale=0.1)[0]
    assert config.algorithm.window_w == 2_500
    assert config.victims[0].adapt_window == 5_000
    assert config.victims[0].n_symbols == 1_000


def test_unknown_preset():
    with pytest.raises(ValueError):
        preset("nope")


@pytest.mark.parametrize("figure, name", sorted(FIGURE_PRESETS.items()))
def test_figure_numbers_resolve(figure, name):
    assert resolve_preset(figure) == name
    assert [c.scenario for c in preset(figure, scale=0.01, seeds=(0,))] == \
        [c.scenario for c in preset(name, scale=0.01, seeds=(0,))]


def test_preset_names_lead_with_figures():
    names = preset_names()
    assert names[:8] == ["fig3", "fig4", "fig5", "fig6", "fig9", "fig11", "fig12", "fig13"]
    assert set(PRESETS) <= set(names)
