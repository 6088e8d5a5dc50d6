import random

import pytest

from gaussoids.config import config


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False,
                     help='run the long Table rows')


def pytest_configure(config):  # pylint: disable=redefined-outer-name
    config.addinivalue_line('markers', 'slow: long-running exhaustive counts')


def pytest_collection_modifyitems(config, items):  # pylint: disable=redefined-outer-name
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def isolated_config(tmp_path):
    """No cache file and default limits for every test."""
    saved = {section: dict(values) for section, values in config.config.items()}
    config.set('cache', 'use_cache', False)
    config.set('cache', 'database_path', str(tmp_path / 'counts.db'))
    yield config
    config.config = saved


@pytest.fixture
def rng():
    return random.Random(20240611)
