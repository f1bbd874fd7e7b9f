import pytest

from trainkit import GRID, TrainConfig, grid


def test_full_grid_is_72_configs_per_seed():
    # 3 learning rates x 3 batch sizes x 2 weight decays x 2 schedulers x 2 warmups
    assert 3 * 3 * 2 * 2 * 2 == 72
    configs = grid(TrainConfig(seed=0))
    assert len(configs) == 72
    assert len(set(configs)) == 72


def test_restricting_learning_rate_leaves_24():
    configs = [c for c in grid(TrainConfig()) if c.learning_rate == 2e-5]
    assert len(configs) == 24


def test_five_seeds_give_360_runs():
    total = sum(len(grid(TrainConfig(seed=seed))) for seed in range(5))
    assert total == 360


def test_grid_values_match_search_space():
    configs = grid(TrainConfig())
    for name, values in GRID.items():
        assert {getattr(c, name) for c in configs} == set(values)


def test_grid_points_are_on_grid():
    for config in grid(TrainConfig()):
        assert config.off_grid_fields() == []


def test_off_grid_values_are_marked():
    config = TrainConfig(learning_rate=1e-3, batch_size=64)
    assert config.off_grid_fields() == ["batch_size", "learning_rate"]
    assert config.to_dict()["off_grid_fields"] == ["batch_size", "learning_rate"]


def test_grid_preserves_seed_and_epochs():
    configs = grid(TrainConfig(seed=7, epochs=5))
    assert all(c.seed == 7 and c.epochs == 5 for c in configs)


def test_invalid_config_rejected():
    with pytest.raises(ValueError):
        TrainConfig(base_model="enormous")
    with pytest.raises(ValueError):
        TrainConfig(scheduler="polynomial")
