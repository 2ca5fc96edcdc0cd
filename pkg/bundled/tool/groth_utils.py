# Copyright (c) Microsoft Corporation. All rights reserved.
# Licensed under the MIT License.
"""Settings, logging and threading helpers shared by the groth modules."""
from __future__ import annotations

import os
import threading
import traceback
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Iterable, List, TypeVar

import click

# Guards the module-level straightening memo.
MEMO_LOCK = threading.Lock()

_T = TypeVar("_T")
_R = TypeVar("_R")

SHOW_LOG_LEVELS = ("off", "onError", "onWarning", "always")

GLOBAL_SETTINGS = {}


# **********************************************************
# Settings.
# **********************************************************
_ENV_DEFAULTS = {
    "straightenBudget": ("GROTH_STRAIGHTEN_BUDGET", 10_000_000),
    "expansionBudget": ("GROTH_EXPANSION_BUDGET", 5_000_000),
    "maxWorkers": ("GROTH_MAX_WORKERS", 5),
}

# Names already reported as malformed, so each is reported once.
_REPORTED_ENV = set()


def _raw_show_log() -> str:
    if "showLog" in GLOBAL_SETTINGS:
        return GLOBAL_SETTINGS["showLog"]
    return os.getenv("GROTH_SHOW_LOG", "onError")


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or not value.strip():
        return default
    try:
        return int(value)
    except ValueError:
        # Reported directly: the log helpers read settings themselves.
        if name not in _REPORTED_ENV and _raw_show_log() in ("onWarning", "always"):
            _REPORTED_ENV.add(name)
            click.echo(f"Ignoring non-integer {name}={value!r}, using {default}.", err=True)
        return default


def _lookup(key: str) -> Any:
    if key in GLOBAL_SETTINGS:
        return GLOBAL_SETTINGS[key]
    if key == "showLog":
        return _raw_show_log()
    return _env_int(*_ENV_DEFAULTS[key])


def get_global_defaults() -> dict:
    """Returns the effective settings: defaults, then environment, then updates."""
    return {key: _lookup(key) for key in (*_ENV_DEFAULTS, "showLog")}


def get_setting(name: str) -> Any:
    """Returns a single effective setting."""
    return _lookup(name)


def update_global_settings(**values: Any) -> None:
    """Merges explicit settings, ignoring `None` values."""
    GLOBAL_SETTINGS.update({k: v for k, v in values.items() if v is not None})


def reset_global_settings() -> None:
    """Drops every explicit setting."""
    GLOBAL_SETTINGS.clear()
    _REPORTED_ENV.clear()


# **********************************************************
# Parallel batches.
# **********************************************************
def run_parallel(
    func: Callable[[_T], _R], jobs: Iterable[_T], max_workers: int | None = None
) -> List[_R]:
    """Maps `func` over `jobs` on a thread pool, keeping job order."""
    jobs = list(jobs)
    if not jobs:
        return []
    workers = max_workers or get_setting("maxWorkers")
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        return list(pool.map(func, jobs))


# *****************************************************
# Logging and notification.
# *****************************************************
def _show_log_level() -> str:
    level = _raw_show_log()
    return level if level in SHOW_LOG_LEVELS else "onError"


def log_to_output(message: str) -> None:
    if _show_log_level() in ["always"]:
        click.echo(message, err=True)


def log_error(message: str) -> None:
    if _show_log_level() in ["onError", "onWarning", "always"]:
        click.echo(message, err=True)


def log_warning(message: str) -> None:
    if _show_log_level() in ["onWarning", "always"]:
        click.echo(message, err=True)


def log_always(message: str) -> None:
    click.echo(message, err=True)


def log_exception() -> None:
    """Logs the traceback of the exception being handled, with its full chain."""
    log_warning(traceback.format_exc(chain=True))
