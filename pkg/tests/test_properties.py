"""The seeded property registry: every property passes, reports add up."""

import pytest

from nclp.properties import PROPERTIES, SuiteConfig, run_suite
from nclp.sampling import spawn_rng


@pytest.fixture(scope="module")
def report():
    return run_suite(SuiteConfig(seed=42, trials=6))


def test_all_properties_pass(report):
    failing = {name: r for name, r in report.properties.items() if r["failed"]}
    assert not failing, f"failing properties: {failing}"
    assert report.all_passed


def test_counts_sum_to_trials(report):
    for name, r in report.properties.items():
        assert r["passed"] + r["failed"] == report.trials, name


def test_registry_covers_every_module():
    prefixes = {name.split(".")[0] for name in PROPERTIES}
    assert prefixes == {"matcore", "weights", "decomp", "lpspace", "cli"}


@pytest.mark.parametrize("name", sorted(PROPERTIES))
def test_property_is_deterministic(name):
    cfg = SuiteConfig(seed=7, trials=2)
    runs = []
    for _ in range(2):
        rng = spawn_rng(cfg.seed, name)
        runs.append([PROPERTIES[name](rng, cfg) for _ in range(cfg.trials)])
    assert runs[0] == runs[1]


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(trials=0)
    with pytest.raises(ValueError):
        SuiteConfig(gradings=(((-0.5 + 0j), 0.5 + 0j),))


def test_config_obj_roundtrip():
    cfg = SuiteConfig(seed=9, trials=3)
    again = SuiteConfig.from_obj(cfg.to_obj())
    assert again == cfg
