# Copyright (c) Microsoft Corporation. All rights reserved.
# Licensed under the MIT License.
"""
Puts the bundled tool on the import path and isolates settings between tests.
"""
import os
import sys

import pytest

from .groth_test_client.constants import TOOL_ROOT

if os.fspath(TOOL_ROOT) not in sys.path:
    sys.path.insert(0, os.fspath(TOOL_ROOT))

# pylint: disable=wrong-import-position,import-error
import groth_utils


@pytest.fixture(autouse=True)
def _reset_settings():
    groth_utils.reset_global_settings()
    yield
    groth_utils.reset_global_settings()


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: wide sweeps; deselect with -m 'not slow'")
