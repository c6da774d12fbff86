"""Compliance checking with a goal-directed answer set programming engine."""

import json
from pathlib import Path

from ._flightgate import (
    AnswerError,
    Error,
    OddLoopError,
    ParseError,
    PreconditionError,
    QueryError,
    _KnowledgeBase,
    format_program,
)
from . import _flightgate as _core

__all__ = [
    "AnswerError",
    "Error",
    "KnowledgeBase",
    "OddLoopError",
    "ParseError",
    "PreconditionError",
    "QueryError",
    "format_program",
    "query",
    "stable_models",
    "validate",
]


def validate(program):
    """Odd-loop report for program text: {"ok", "odd_loop_atoms", "warnings"}."""
    return json.loads(_core._validate(program))


def query(program, goal, max_models=1):
    """Partial models of `goal`, each with literals, abduced literals and justifications."""
    return json.loads(_core._query(program, goal, max_models))


def stable_models(program):
    """Every stable model of a small program, by exhaustive enumeration."""
    return [set(m) for m in json.loads(_core._stable_models(program))]


class KnowledgeBase:
    """A compliance rule base together with its questionnaire."""

    def __init__(self, kb, questionnaire, rules=None):
        self._kb = _KnowledgeBase(Path(kb), Path(questionnaire), Path(rules) if rules else Path())

    @property
    def conditions(self):
        return self._kb.conditions()

    @property
    def violation_ids(self):
        return self._kb.violation_ids()

    def questionnaire(self):
        return json.loads(self._kb.questionnaire())

    def check(self, answers):
        return json.loads(self._kb.check(dict(answers)))

    def minimal_fix(self, violation_id, answers):
        return json.loads(self._kb.minimal_fix(violation_id, dict(answers)))

    def full_compliance_fix(self, answers):
        return json.loads(self._kb.full_compliance_fix(dict(answers)))

    def fix_oracle(self, violation_id, answers):
        return json.loads(self._kb.fix_oracle(violation_id, dict(answers)))
