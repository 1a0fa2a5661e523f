"""The JSON instance file format: one envelope for all three problem
classes, so reductions are closed under the format.

Top level::

    { "class": "obs" | "dx" | "con",
      "alphabet": ["a", "b", ...],
      "agents": [ { "observed": [...], "controllable": [...]? }, ... ],
      "fusion": "unrestricted" | "conjunctive" | "disjunctive",
      "plant": <language>,
      "spec": <language>,          # obs and con only
      "fault": "name",             # dx only
      "delay": 0 }                 # dx only

A ``<language>`` is either an explicit word list ``{"words": [["a","b"],
...]}`` (the empty word is the empty array, never a sentinel) or an automaton
``{"states": [...], "initial": "...", "accepting": [...], "transitions":
[[src, symbol, dst], ...]}``.  ``controllable`` keys are only legal in class
``con``.  Serialization is deterministic: key order is fixed, states appear
in the automaton's canonical order.
"""

from __future__ import annotations

import json
from typing import Union

from .automata import Alphabet, Automaton, FiniteLanguage, from_words
from .errors import FormatError, InputError
from .problems import ConInstance, DxInstance, FusionRule, ObsInstance

Instance = Union[ObsInstance, DxInstance, ConInstance]


def _expect(obj, key, kind, where):
    if key not in obj:
        raise FormatError(f"{where}: missing key {key!r}")
    value = obj[key]
    if not isinstance(value, kind):
        raise FormatError(f"{where}: key {key!r} must be a {kind.__name__}")
    return value


def _parse_alphabet(names, where) -> Alphabet:
    if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
        raise FormatError(f"{where}: must be an array of symbol names")
    try:
        return Alphabet(names)
    except InputError as exc:
        raise FormatError(f"{where}: {exc}") from exc


def _parse_language(obj, alphabet: Alphabet, where) -> Automaton:
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: a language must be an object")
    if "words" in obj and "states" in obj:
        raise FormatError(f"{where}: give either 'words' or 'states', not both")
    if "words" in obj:
        words = obj["words"]
        if not isinstance(words, list) or not all(
            isinstance(w, list) and all(isinstance(s, str) for s in w) for w in words
        ):
            raise FormatError(f"{where}.words: must be an array of symbol-name arrays")
        try:
            return from_words(FiniteLanguage(alphabet, [tuple(w) for w in words]))
        except InputError as exc:
            raise FormatError(f"{where}.words: {exc}") from exc
    if "states" in obj:
        states = _expect(obj, "states", list, where)
        initial = _expect(obj, "initial", str, where)
        accepting = _expect(obj, "accepting", list, where)
        transitions = _expect(obj, "transitions", list, where)
        for t in transitions:
            if not (isinstance(t, list) and len(t) == 3 and all(isinstance(x, str) for x in t)):
                raise FormatError(f"{where}.transitions: entries must be [src, symbol, dst]")
        try:
            return Automaton.build(
                states, alphabet, initial, [tuple(t) for t in transitions], accepting
            )
        except InputError as exc:
            raise FormatError(f"{where}: {exc}") from exc
    raise FormatError(f"{where}: a language needs either 'words' or 'states'")


_TOP_KEYS = {"class", "alphabet", "agents", "fusion", "plant", "spec", "fault", "delay"}


def parse_instance(obj: dict) -> Instance:
    """Instance from a decoded JSON object; structural problems raise
    FormatError, semantic ones are left to the validators."""
    if not isinstance(obj, dict):
        raise FormatError("top level: must be an object")
    unknown = set(obj) - _TOP_KEYS
    if unknown:
        raise FormatError(f"top level: unknown keys {sorted(unknown)}")
    cls = _expect(obj, "class", str, "top level")
    if cls not in ("obs", "dx", "con"):
        raise FormatError(f"top level: class must be 'obs', 'dx' or 'con', not {cls!r}")
    alphabet = _parse_alphabet(_expect(obj, "alphabet", list, "top level"), "alphabet")
    fusion_name = _expect(obj, "fusion", str, "top level")
    try:
        fusion = FusionRule.from_name(fusion_name)
    except InputError as exc:
        raise FormatError(f"fusion: {exc}") from exc

    agents = _expect(obj, "agents", list, "top level")
    observed: list[Alphabet] = []
    controllable: list[Alphabet] = []
    for i, agent in enumerate(agents):
        where = f"agents[{i}]"
        if not isinstance(agent, dict):
            raise FormatError(f"{where}: must be an object")
        allowed = {"observed"} | ({"controllable"} if cls == "con" else set())
        unknown = set(agent) - allowed
        if unknown:
            raise FormatError(f"{where}: unknown keys {sorted(unknown)} for class {cls!r}")
        observed.append(_parse_alphabet(_expect(agent, "observed", list, where), f"{where}.observed"))
        if cls == "con":
            controllable.append(
                _parse_alphabet(agent.get("controllable", []), f"{where}.controllable")
            )

    plant = _parse_language(_expect(obj, "plant", dict, "top level"), alphabet, "plant")
    if cls == "obs":
        _forbid(obj, ("fault", "delay"), "obs")
        spec = _parse_language(_expect(obj, "spec", dict, "top level"), alphabet, "spec")
        return ObsInstance(plant, spec, tuple(observed), fusion)
    if cls == "dx":
        _forbid(obj, ("spec",), "dx")
        fault = _expect(obj, "fault", str, "top level")
        delay = _expect(obj, "delay", int, "top level")
        if isinstance(delay, bool) or delay < 0:
            raise FormatError("delay: must be a non-negative integer")
        return DxInstance(plant, tuple(observed), fault, delay, fusion)
    _forbid(obj, ("fault", "delay"), "con")
    spec = _parse_language(_expect(obj, "spec", dict, "top level"), alphabet, "spec")
    return ConInstance(plant, spec, tuple(observed), tuple(controllable), fusion)


def _forbid(obj, keys, cls):
    for key in keys:
        if key in obj:
            raise FormatError(f"top level: key {key!r} is not allowed for class {cls!r}")


def parse_instance_text(text: str) -> Instance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_instance(obj)


def parse_instance_file(path) -> Instance:
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    return parse_instance_text(text)


def automaton_to_jsonable(a: Automaton) -> dict:
    return {
        "states": list(a.names),
        "initial": a.names[a.initial],
        "accepting": [a.names[q] for q in sorted(a.accepting)],
        "transitions": [list(t) for t in a.transitions()],
    }


def instance_to_jsonable(instance: Instance) -> dict:
    if isinstance(instance, ObsInstance):
        cls = "obs"
    elif isinstance(instance, DxInstance):
        cls = "dx"
    else:
        cls = "con"
    out: dict = {
        "class": cls,
        "alphabet": list(instance.plant.alphabet),
        "agents": [],
        "fusion": instance.fusion.value,
    }
    for i, alph in enumerate(instance.observed):
        agent: dict = {"observed": list(alph)}
        if cls == "con":
            agent["controllable"] = list(instance.controllable[i])
        out["agents"].append(agent)
    out["plant"] = automaton_to_jsonable(instance.plant)
    if cls == "dx":
        out["fault"] = instance.fault
        out["delay"] = instance.delay
    else:
        out["spec"] = automaton_to_jsonable(instance.spec)
    return out


def dumps(obj) -> str:
    """Canonical serialization: fixed key order, two-space indent, trailing
    newline; identical inputs give identical bytes."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
