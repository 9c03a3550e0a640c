r"""Named object store for the CLI: one JSON document per workspace.

Schema (all sections optional, names unique within a section):

    {
      "states":       {name: {"dim": d, "amplitudes": [[re, im], ...]}},
      "vectors":      {name: {"dim": d, "matrix": [[[re, im], ...], ...]}},
      "measurements": {name: {"dim": d, "projectors": [matrix, ...],
                              "labels": [str, ...]?}},
      "mixtures":     {name: {"components": [{"weight": w,
                                              "vector": vector-name}, ...]}}
    }

Complex numbers are [re, im] pairs and matrices are row-major.  Dumps are
canonical (sorted keys, two-space indent, trailing newline), so a
dump -> load -> dump round trip is byte-exact; individual floats survive
exactly because Python's repr round-trips doubles.

``builtin_workspace`` ships the demo inventory: the |±> and |±i> states,
the classical qubit mixture, the non-separable qubit and signed-qutrit
targets, and the four-measurement qutrit family.
"""

from __future__ import annotations

import json
from functools import lru_cache

import numpy as np

from .core import StateVector, TwoStateVector
from .distinguish import Mixture
from .errors import TwinspaceError, WorkspaceError
from .measurement import Measurement, measurement_from_basis_grouping

_SECTIONS = ("states", "vectors", "measurements", "mixtures")


class Workspace:
    """Named states, two-state vectors, measurements, and mixtures."""

    def __init__(self, states=None, vectors=None, measurements=None,
                 mixture_refs=None):
        self.states: dict[str, StateVector] = dict(states or {})
        self.vectors: dict[str, TwoStateVector] = dict(vectors or {})
        self.measurements: dict[str, Measurement] = dict(measurements or {})
        self.mixture_refs: dict[str, tuple[tuple[float, str], ...]] = {
            name: tuple((float(w), ref) for w, ref in comps)
            for name, comps in dict(mixture_refs or {}).items()
        }
        for name in self.mixture_refs:
            self.mixture(name)  # validates refs, weights, dims

    # -- resolution ---------------------------------------------------------

    def _lookup(self, table: dict, name: str, kind: str):
        try:
            return table[name]
        except KeyError:
            known = ", ".join(sorted(table)) or "(none)"
            raise WorkspaceError(
                f"unknown {kind} '{name}'; workspace has: {known}"
            ) from None

    def state(self, name: str) -> StateVector:
        return self._lookup(self.states, name, "state")

    def vector(self, name: str) -> TwoStateVector:
        return self._lookup(self.vectors, name, "vector")

    def measurement(self, name: str) -> Measurement:
        return self._lookup(self.measurements, name, "measurement")

    def mixture(self, name: str) -> Mixture:
        refs = self._lookup(self.mixture_refs, name, "mixture")
        try:
            return Mixture(tuple((w, self.vector(ref)) for w, ref in refs))
        except TwinspaceError as err:
            raise WorkspaceError(f"mixture '{name}': {err}") from err

    def mixture_or_point(self, name: str) -> Mixture:
        """A named mixture, or a named vector wrapped as a point mixture."""
        if name in self.mixture_refs:
            return self.mixture(name)
        return Mixture.point(self.vector(name))

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        out: dict = {}
        if self.states:
            out["states"] = {n: s.to_json() for n, s in self.states.items()}
        if self.vectors:
            out["vectors"] = {n: v.to_json() for n, v in self.vectors.items()}
        if self.measurements:
            out["measurements"] = {
                n: m.to_json() for n, m in self.measurements.items()
            }
        if self.mixture_refs:
            out["mixtures"] = {
                n: {"components": [{"weight": w, "vector": ref}
                                   for w, ref in comps]}
                for n, comps in self.mixture_refs.items()
            }
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    def dump(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Workspace":
        if not isinstance(obj, dict):
            raise WorkspaceError("workspace document must be a JSON object")
        unknown = set(obj) - set(_SECTIONS)
        if unknown:
            raise WorkspaceError(
                f"unknown workspace sections: {sorted(unknown)}"
            )
        states, vectors, measurements, refs = {}, {}, {}, {}
        for name, entry in obj.get("states", {}).items():
            states[name] = _build(StateVector.from_json, entry, "state", name)
        for name, entry in obj.get("vectors", {}).items():
            vectors[name] = _build(TwoStateVector.from_json, entry,
                                   "vector", name)
        for name, entry in obj.get("measurements", {}).items():
            measurements[name] = _build(Measurement.from_json, entry,
                                        "measurement", name)
        for name, entry in obj.get("mixtures", {}).items():
            try:
                refs[name] = tuple(
                    (float(c["weight"]), str(c["vector"]))
                    for c in entry["components"]
                )
            except (KeyError, TypeError) as err:
                raise WorkspaceError(f"mixture '{name}': {err}") from err
        return cls(states, vectors, measurements, refs)

    @classmethod
    def loads(cls, text: str) -> "Workspace":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as err:
            raise WorkspaceError(f"invalid JSON: {err}") from err
        return cls.from_json_dict(obj)

    @classmethod
    def load(cls, path) -> "Workspace":
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as err:
            raise WorkspaceError(f"cannot read workspace: {err}") from err
        return cls.loads(text)


def _build(factory, entry, kind, name):
    try:
        return factory(entry)
    except (TwinspaceError, KeyError, TypeError, ValueError) as err:
        raise WorkspaceError(f"{kind} '{name}': {err}") from err


def validate_workspace_file(path) -> list[tuple[str, str, bool, str]]:
    """Per-entry validation report: (section, name, ok, message)."""
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as err:
        return [("workspace", str(path), False, str(err))]
    if not isinstance(obj, dict):
        return [("workspace", str(path), False, "document must be an object")]
    report = []
    for section in sorted(set(obj) - set(_SECTIONS)):
        report.append((section, "", False, "unknown section"))
    factories = {
        "states": StateVector.from_json,
        "vectors": TwoStateVector.from_json,
        "measurements": Measurement.from_json,
    }
    valid: dict[str, dict] = {section: {} for section in factories}
    for section, factory in factories.items():
        for name, entry in sorted(obj.get(section, {}).items()):
            try:
                valid[section][name] = factory(entry)
                report.append((section, name, True, "ok"))
            except (TwinspaceError, KeyError, TypeError, ValueError) as err:
                report.append((section, name, False,
                               f"{type(err).__name__}: {err}"))
    # mixtures resolve against whatever vectors validated above, so one
    # broken entry elsewhere does not obscure their own verdicts
    resolver = Workspace(vectors=valid["vectors"])
    for name, entry in sorted(obj.get("mixtures", {}).items()):
        try:
            Mixture(tuple(
                (float(c["weight"]), resolver.vector(str(c["vector"])))
                for c in entry["components"]
            ))
            report.append(("mixtures", name, True, "ok"))
        except (TwinspaceError, KeyError, TypeError, ValueError) as err:
            report.append(("mixtures", name, False, str(err)))
    return report


# ---------------------------------------------------------------------------
# Bundled inventory
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def builtin_workspace() -> Workspace:
    """The read-only demo workspace bundled with the CLI."""
    s = 2.0 ** -0.5
    ket0 = StateVector.basis_state(2, 0)
    ket1 = StateVector.basis_state(2, 1)
    plus = StateVector([s, s])
    minus = StateVector([s, -s])
    plus_i = StateVector([s, s * 1j])
    minus_i = StateVector([s, -s * 1j])
    q0, q1, q2 = (StateVector.basis_state(3, i) for i in range(3))
    q_plus = StateVector([s, s, 0.0])
    q_minus = StateVector([s, -s, 0.0])
    q_plus_i = StateVector([s, s * 1j, 0.0])
    q_minus_i = StateVector([s, -s * 1j, 0.0])

    states = {
        "ket0": ket0, "ket1": ket1,
        "plus": plus, "minus": minus,
        "plus_i": plus_i, "minus_i": minus_i,
        "qutrit0": q0, "qutrit1": q1, "qutrit2": q2,
        "qutrit_plus": q_plus, "qutrit_minus": q_minus,
        "qutrit_plus_i": q_plus_i, "qutrit_minus_i": q_minus_i,
    }
    vectors = {
        "ket0_bra0": TwoStateVector.separable(ket0, ket0),
        "ket1_bra1": TwoStateVector.separable(ket1, ket1),
        "ket0_bra1": TwoStateVector.separable(ket0, ket1),
        "qubit_identity": TwoStateVector(np.eye(2) / np.sqrt(2.0)),
        "qutrit_signed": TwoStateVector(
            np.diag([1.0, 1.0, -1.0]) / np.sqrt(3.0)
        ),
    }
    measurements = {
        "computational": measurement_from_basis_grouping(
            [ket0, ket1], [[0], [1]], labels=["0", "1"]
        ),
        "diagonal": measurement_from_basis_grouping(
            [plus, minus], [[0], [1]], labels=["+", "-"]
        ),
        "circular": measurement_from_basis_grouping(
            [plus_i, minus_i], [[0], [1]], labels=["+i", "-i"]
        ),
        "identity_qubit": Measurement.trivial(2),
        "identity_qutrit": Measurement.trivial(3),
        "qutrit_family_1": measurement_from_basis_grouping(
            [q0, q1, q2], [[0], [1, 2]]
        ),
        "qutrit_family_2": measurement_from_basis_grouping(
            [q0, q1, q2], [[1], [0, 2]]
        ),
        "qutrit_family_3": measurement_from_basis_grouping(
            [q_plus, q_minus, q2], [[0], [1, 2]]
        ),
        "qutrit_family_4": measurement_from_basis_grouping(
            [q_plus_i, q_minus_i, q2], [[0], [1, 2]]
        ),
    }
    mixtures = {
        "classical_qubit": ((0.5, "ket0_bra0"), (0.5, "ket1_bra1")),
    }
    return Workspace(states, vectors, measurements, mixtures)


#: Names of the four bundled qutrit measurements, in pipeline order.
QUTRIT_FAMILY = ("qutrit_family_1", "qutrit_family_2",
                 "qutrit_family_3", "qutrit_family_4")
