"""
Reports Module
Run configuration, verdicts, and machine-readable report envelopes
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Iterable

import pandas as pd
from sympy import isprime

from errors import UsageError
from exact_poly import BiDegree
from linalg import EXACT, Field

SCHEMA = 'alternant-lab/1'


class Verdict(str, Enum):
    PASS = 'pass'
    FAIL = 'fail'
    INCONCLUSIVE = 'inconclusive'


EXIT_CODES = {
    Verdict.PASS: 0,
    Verdict.FAIL: 1,
    Verdict.INCONCLUSIVE: 3
}
USAGE_EXIT_CODE = 2


def combine(verdicts: Iterable[Verdict]) -> Verdict:
    """Any failure fails; otherwise any inconclusive result is inconclusive"""
    verdicts = [Verdict(v) for v in verdicts]
    if Verdict.FAIL in verdicts:
        return Verdict.FAIL
    if Verdict.INCONCLUSIVE in verdicts:
        return Verdict.INCONCLUSIVE
    return Verdict.PASS


def from_bool(ok: bool) -> Verdict:
    return Verdict.PASS if ok else Verdict.FAIL


def certify(verdict: Verdict, field_: Field) -> Verdict:
    """Ranks over GF(p) only bound ranks over Q: prime-field verdicts are never final"""
    return verdict if field_.is_exact else Verdict.INCONCLUSIVE


@dataclass
class RunConfig:
    """Validated parameters of one command run"""

    command: str
    n: int = 2
    k: int = 1
    cutoff: BiDegree = field(default_factory=lambda: BiDegree(3, 3))
    seed: int = 0
    samples: int = 20
    tuples: int = 100
    points: int = 50
    translates: int = 20
    max_word_len: int = 3
    mode: str = 'exact'
    prime: int = 2147483647
    output: str = 'json'
    force: bool = False
    stratum: int | None = None
    planted_torsion: bool = False
    lift_rule: str = 'canonical'

    @property
    def ground_field(self) -> Field:
        return EXACT if self.mode == 'exact' else Field(self.prime)

    def validate(self, cost_guard: dict) -> RunConfig:
        """
        Check ranges and the cost guard

        Args:
            cost_guard (dict): max_n, max_n_for_k_ge_2, max_window_cells

        Returns:
            RunConfig: self, for chaining
        """
        if self.n < 1:
            raise UsageError(f"n must be at least 1, got {self.n}")
        if self.k < 0:
            raise UsageError(f"k must be nonnegative, got {self.k}")
        if self.mode not in ('exact', 'prime'):
            raise UsageError(f"mode must be 'exact' or 'prime', got '{self.mode}'")
        if self.mode == 'prime' and not isprime(self.prime):
            raise UsageError(f"prime must be a prime number, got {self.prime}")
        if self.seed < 0:
            raise UsageError(f"seed must be nonnegative, got {self.seed}")
        if self.output not in ('json', 'csv'):
            raise UsageError(f"output must be 'json' or 'csv', got '{self.output}'")
        if self.lift_rule not in ('canonical', 'reverse'):
            raise UsageError(f"lift rule must be 'canonical' or 'reverse', got '{self.lift_rule}'")
        if self.stratum is not None and not 0 <= self.stratum <= self.n:
            raise UsageError(f"stratum must be in 0..{self.n}, got {self.stratum}")
        for name in ('samples', 'tuples', 'points', 'translates', 'max_word_len'):
            if getattr(self, name) < 0:
                raise UsageError(f"{name} must be nonnegative")
        if not self.force:
            if self.n > cost_guard['max_n']:
                raise UsageError(f"n={self.n} exceeds the cost guard ({cost_guard['max_n']}); use --force")
            if self.k >= 2 and self.n > cost_guard['max_n_for_k_ge_2']:
                raise UsageError(f"n={self.n} with k={self.k} exceeds the cost guard "
                                 f"({cost_guard['max_n_for_k_ge_2']}); use --force")
            cells = (self.cutoff.dx + 1) * (self.cutoff.dy + 1)
            if cells > cost_guard['max_window_cells']:
                raise UsageError(f"window {self.cutoff} has {cells} cells, above the cost guard "
                                 f"({cost_guard['max_window_cells']}); use --force")
        return self

    def echo(self) -> dict:
        out = asdict(self)
        out['cutoff'] = [self.cutoff.dx, self.cutoff.dy]
        if self.mode == 'exact':
            out.pop('prime')
        return out


@dataclass
class ReportEnvelope:
    """Versioned report: everything except wall_clock_seconds is deterministic"""

    command: str
    config: dict
    body: dict
    verdict: Verdict
    command_line: list[str] = field(default_factory=list)
    tool_version: str = ''
    wall_clock_seconds: float = 0.0
    tables: dict[str, pd.DataFrame] = field(default_factory=dict, repr=False)

    def body_json(self) -> str:
        return json.dumps(self.body, sort_keys=True, indent=2)

    def body_sha256(self) -> str:
        return sha256_text(self.body_json())

    def to_dict(self) -> dict:
        return {
            'schema': SCHEMA,
            'tool_version': self.tool_version,
            'command': self.command,
            'command_line': self.command_line,
            'config': self.config,
            'verdict': Verdict(self.verdict).value,
            'body': self.body,
            'body_sha256': self.body_sha256(),
            'wall_clock_seconds': round(self.wall_clock_seconds, 3)
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[Verdict(self.verdict)]


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def table_frame(table: dict[BiDegree, int], cutoff: BiDegree) -> pd.DataFrame:
    """
    Bigraded table as a DataFrame

    Args:
        table (dict): BiDegree -> value
        cutoff (BiDegree): window corner

    Returns:
        pd.DataFrame: rows a (x-degree), columns b (y-degree); missing cells are None
    """
    frame = pd.DataFrame(
        [[table.get(BiDegree(a, b)) for b in range(cutoff.dy + 1)] for a in range(cutoff.dx + 1)],
        index=pd.Index(range(cutoff.dx + 1), name='a'),
        columns=pd.Index(range(cutoff.dy + 1), name='b')
    )
    return frame


def frame_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(lineterminator='\n')


def table_json(table: dict[BiDegree, int]) -> dict[str, int]:
    return {bd.key(): value for bd, value in sorted(table.items())}


def attach_table(body: dict, tables: dict[str, pd.DataFrame], name: str,
                 table: dict[BiDegree, int], cutoff: BiDegree) -> pd.DataFrame:
    """Register a bigraded table for CSV emission and record its hash in the body"""
    frame = table_frame(table, cutoff)
    tables[name] = frame
    body.setdefault('tables', {})[name] = {'sha256': sha256_text(frame_csv(frame))}
    return frame


def write_report(envelope: ReportEnvelope, directory: str) -> list[str]:
    """Write <command>.json and one CSV per table into directory"""
    os.makedirs(directory, exist_ok=True)
    paths = [os.path.join(directory, f'{envelope.command}.json')]
    with open(paths[0], 'w') as f:
        f.write(envelope.to_json() + '\n')
    for name, frame in envelope.tables.items():
        path = os.path.join(directory, f'{name}.csv')
        with open(path, 'w') as f:
            f.write(frame_csv(frame))
        paths.append(path)
    return paths
