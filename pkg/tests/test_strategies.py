import pytest

from src.CoreOperations.Network import TerminalConfig
from src.CoreOperations.PhysarumSolver.Strategies import StrategyMode, available_modes, get_strategy, make_terminals
from src.Utils.Exceptions import InvalidParameterError, TooFewTerminalsError


def test_modes_follow_priority_order():
    assert available_modes() == ["siso", "miso", "simo", "mimo"]


def test_siso():
    config = make_terminals(StrategyMode("siso", (4, 7)), 0, inflow=2.)
    assert config == TerminalConfig([(4, 2.)], [(7, 2.)])
    with pytest.raises(InvalidParameterError):
        make_terminals(StrategyMode("siso", (1, 2, 3)), 0)


def test_miso_defaults_to_last_terminal_as_sink():
    config = make_terminals(StrategyMode("miso", (0, 1, 2, 3)), 0)
    assert [vertex for vertex, _ in config.sources] == [0, 1, 2]
    assert config.sinks == ((3, 1.),)
    assert config.total_inflow() == pytest.approx(1., abs=1e-15)


def test_simo_designated_source_and_weights():
    mode = StrategyMode("simo", (0, 1, 2), designated=1, weights=(1., 1., 3.))
    config = make_terminals(mode, 0)
    assert config.sources == ((1, 1.),)
    assert [vertex for vertex, _ in config.sinks] == [0, 2]
    assert [amount for _, amount in config.sinks] == pytest.approx([0.25, 0.75])


def test_designated_must_be_a_terminal():
    with pytest.raises(InvalidParameterError):
        make_terminals(StrategyMode("miso", (0, 1, 2), designated=5), 0)


def test_mimo_random_pairs_are_reproducible():
    mode = StrategyMode("mimo", (0, 3, 5, 9), seed=7)
    first = [make_terminals(mode, i) for i in range(20)]
    second = [make_terminals(mode, i) for i in range(20)]
    assert first == second
    for config in first:
        (source, _), = config.sources
        (sink, _), = config.sinks
        assert source != sink
        assert {source, sink} <= {0, 3, 5, 9}
    assert len({(c.sources[0][0], c.sinks[0][0]) for c in first}) > 1


def test_mimo_sweep_uses_every_pair():
    strategy = get_strategy(StrategyMode("mimo", (0, 1, 2), schedule="sweep"))
    configs = strategy.schedule(0)
    assert len(configs) == 3
    assert strategy.ground() == 0


def test_mimo_partition():
    mode = StrategyMode("mimo", (0, 1, 2, 3), designated=(0, 2), schedule="partition")
    config = make_terminals(mode, 3)
    assert config == TerminalConfig([(0, 0.5), (2, 0.5)], [(1, 0.5), (3, 0.5)])
    with pytest.raises(InvalidParameterError):
        make_terminals(StrategyMode("mimo", (0, 1), designated=(0, 1), schedule="partition"), 0)


def test_rejected_modes():
    with pytest.raises(InvalidParameterError):
        get_strategy(StrategyMode("mesh", (0, 1)))
    with pytest.raises(InvalidParameterError):
        get_strategy(StrategyMode("mimo", (0, 1), schedule="ring"))
    with pytest.raises(TooFewTerminalsError):
        get_strategy(StrategyMode("miso", (0,)))
    with pytest.raises(InvalidParameterError):
        StrategyMode("mimo", (0, 1), seed=-1)
    with pytest.raises(InvalidParameterError):
        StrategyMode("mimo", (0, 1), weights=(1.,))
