"""Python bindings for the NQGL workbench.

Results that carry proofs or models are returned as plain dicts in the same
JSON formats the command-line tool reads and writes.
"""

import json as _json
import os as _os

from . import _core
from ._core import Formula, ParseError, diamond_tower, normalize_sequent, parse

__all__ = [
    "Formula",
    "ParseError",
    "check_proof",
    "countermodel",
    "decide",
    "diamond_tower",
    "frame_check",
    "gallery",
    "model_check",
    "normalize_sequent",
    "parse",
    "search",
    "validity_oracle",
]


def _as_text(doc):
    return doc if isinstance(doc, str) else _json.dumps(doc)


def decide(goal):
    """Decide a propositional formula or sequent in GL.

    Returns a dict with ``verdict`` ("provable" or "refuted"), ``certified``
    and either ``proof`` or ``model`` plus ``designated``.
    """
    return _json.loads(_core._decide(str(goal)))


def check_proof(proof, no_cut=False, K=None):
    """Check an NQGL or GL proof document given as a dict, JSON text or path."""
    if isinstance(proof, (str, _os.PathLike)) and _os.path.exists(proof):
        with open(proof) as f:
            proof = f.read()
    return _json.loads(_core._check_proof(_as_text(proof), no_cut, K))


def search(goal, depth=8, max_nodes=2_000_000):
    """Bounded cut-free proof search; returns a proof document or None."""
    found = _core._search(str(goal), depth, max_nodes)
    return None if found is None else _json.loads(found)


def gallery(directory=None):
    """The generated proof gallery; also written to ``directory`` when given."""
    return _json.loads(_core._gallery(None if directory is None else str(directory)))


def countermodel(goal, depth=4, height=8):
    """Canonical countermodel by saturation, or None when none is found."""
    found = _core._countermodel(str(goal), depth, height)
    return None if found is None else _json.loads(found)


def model_check(model, formula):
    """Truth of the universal closure of ``formula`` at every world of ``model``."""
    return _json.loads(_core._model_check(_as_text(model), str(formula)))


def frame_check(model):
    """Frame properties and per-world heights of ``model``."""
    return _json.loads(_core._frame_check(_as_text(model)))


def validity_oracle(formula, max_worlds=4):
    """Brute-force countermodel search over small frames; None if valid there."""
    if not isinstance(formula, Formula):
        formula = parse(formula)
    found = _core.validity_oracle(formula, max_worlds)
    return None if found is None else _json.loads(found)
