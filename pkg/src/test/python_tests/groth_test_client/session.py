# Copyright (c) Microsoft Corporation. All rights reserved.
# Licensed under the MIT License.
"""
Command-line session client for testing.
"""

import json
import os
import subprocess
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import List, NamedTuple, Optional, Sequence

from .constants import CLI_SCRIPT, PROJECT_ROOT

CLI_TIMEOUT = 120


class CliResult(NamedTuple):
    """Exit code and captured streams of one invocation."""

    returncode: int
    stdout: str
    stderr: str

    def json(self):
        """Parses stdout as the JSON output envelope."""
        return json.loads(self.stdout)


class CliSession:
    """Runs the groth command line in subprocesses as a test client."""

    def __init__(self, cwd=None, script=None, env=None):
        self.cwd = cwd if cwd else os.fspath(PROJECT_ROOT)
        self.script = script if script else CLI_SCRIPT
        self.env = dict(os.environ)
        self.env.setdefault("PYTHONIOENCODING", "utf-8")
        self.env.update(env or {})
        self._thread_pool: Optional[ThreadPoolExecutor] = None

    def __enter__(self):
        # pylint: disable=consider-using-with
        self._thread_pool = ThreadPoolExecutor()
        return self

    def __exit__(self, typ, value, _tb):
        self._thread_pool.shutdown()
        self._thread_pool = None

    def invoke(self, *args: str, show_log: Optional[str] = None) -> CliResult:
        """Runs one command line and waits for it."""
        argv = [sys.executable, os.fspath(self.script)]
        if show_log is not None:
            argv.extend(["--show-log", show_log])
        argv.extend(args)
        completed = subprocess.run(
            argv,
            capture_output=True,
            cwd=self.cwd,
            env=self.env,
            encoding="utf-8",
            timeout=CLI_TIMEOUT,
            check=False,
        )
        return CliResult(completed.returncode, completed.stdout, completed.stderr)

    def invoke_many(self, commands: Sequence[Sequence[str]]) -> List[CliResult]:
        """Runs several command lines concurrently, results in input order."""
        futures = [self._thread_pool.submit(self.invoke, *command) for command in commands]
        return [future.result() for future in futures]
