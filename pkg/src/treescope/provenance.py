"""Command log, exportable scripts and bit-exact replay.

Every session mutation is a Command appended to an ordered log. A script
is the minimal command subsequence that rebuilds one panel's payload:
the load, the data-producing commands the panel's parameters reference,
the panel's own add/set commands (only those whose effect survives), and
the latest selection per restricting source. Replay against the same
bundle bytes must reproduce the payload's canonical bytes exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .canonical import canonical_dumps
from .errors import DigestMismatch, SchemaViolation

ENGINE_VERSION = "0.1.0"
SCRIPT_EXTENSION = ".tsescript"

VERBS = ("load_bundle", "transform", "ordinate", "agglomerate", "subset",
         "add_panel", "set_params", "select")


@dataclass(frozen=True)
class Command:
    seq: int
    verb: str
    args: dict

    def to_canonical(self):
        return {"seq": self.seq, "verb": self.verb, "args": self.args}


@dataclass(frozen=True)
class Script:
    header: dict  # engine_version, bundle_digest, target_panel
    commands: tuple[Command, ...]

    def to_canonical(self):
        return {"header": self.header,
                "commands": [c.to_canonical() for c in self.commands]}

    def dumps(self) -> str:
        return canonical_dumps(self.to_canonical())

    @classmethod
    def loads(cls, text: str) -> "Script":
        raw = json.loads(text)
        return cls(header=raw["header"],
                   commands=tuple(Command(**c) for c in raw["commands"]))


def _require(args, key, types, what):
    if key not in args or not isinstance(args[key], types):
        raise SchemaViolation(f"{what}: missing or ill-typed {key!r}")
    return args[key]


def validate_command(verb: str, args: dict):
    """Structural checks only; referential validity is the executor's job."""
    if verb not in VERBS:
        raise SchemaViolation(f"unknown verb {verb!r}")
    if not isinstance(args, dict):
        raise SchemaViolation(f"{verb}: args must be an object")
    if verb == "load_bundle":
        _require(args, "digest", str, verb)
    elif verb == "transform":
        _require(args, "assay", str, verb)
        kind = _require(args, "kind", str, verb)
        if kind not in ("relative_abundance", "log", "clr"):
            raise SchemaViolation(f"transform: unknown kind {kind!r}")
        if "pseudocount" in args and not isinstance(args["pseudocount"], (int, float)):
            raise SchemaViolation("transform: pseudocount must be numeric")
    elif verb == "ordinate":
        method = _require(args, "method", str, verb)
        if method not in ("pca", "pcoa", "rda"):
            raise SchemaViolation(f"ordinate: unknown method {method!r}")
        _require(args, "name", str, verb)
        _require(args, "assay", str, verb)
        _require(args, "k", int, verb)
        if method == "rda":
            _require(args, "covariates", list, verb)
        if method == "pcoa" and args.get("metric") not in (None, "bray_curtis", "euclidean"):
            raise SchemaViolation(f"ordinate: unknown metric {args.get('metric')!r}")
    elif verb == "agglomerate":
        _require(args, "rank_column", str, verb)
    elif verb == "subset":
        for key in ("features", "samples"):
            if key in args and args[key] is not None and not isinstance(args[key], list):
                raise SchemaViolation(f"subset: {key} must be a list")
    elif verb == "add_panel":
        _require(args, "type", str, verb)
    elif verb == "set_params":
        _require(args, "panel", str, verb)
        for key in ("data_params", "visual_params", "selection_params"):
            if key in args and not isinstance(args[key], dict):
                raise SchemaViolation(f"set_params: {key} must be an object")
    elif verb == "select":
        _require(args, "origin", str, verb)
        axis = _require(args, "axis", str, verb)
        if axis not in ("rows", "columns"):
            raise SchemaViolation(f"select: bad axis {axis!r}")
        _require(args, "ids", list, verb)


def _derived_name(args: dict) -> str:
    return f"{args['assay']}_{args['kind']}"


def _final_params(panel_cmds: list[Command]) -> dict:
    """Merge add_panel + set_params the way the session does."""
    merged = {"data_params": {}, "visual_params": {}, "selection_params": {}}
    for cmd in panel_cmds:
        for group in merged:
            merged[group].update(cmd.args.get(group) or {})
    return merged


def export_script(session, panel_id: str) -> Script:
    """Minimal replayable command subsequence for one panel."""
    layout = session.layout
    state = layout.panel(panel_id)  # raises UnknownPanel
    log = session.log
    needed: set[int] = set()

    for cmd in log:
        if cmd.verb in ("load_bundle", "agglomerate", "subset"):
            needed.add(cmd.seq)

    # the panel's own commands, dropping set_params whose effect was overridden
    own = [c for c in log
           if (c.verb == "add_panel" and c.args.get("id") == panel_id)
           or (c.verb == "set_params" and c.args.get("panel") == panel_id)]
    final = _final_params(own)
    for cmd in own:
        if cmd.verb == "add_panel":
            needed.add(cmd.seq)
        elif _final_params([c for c in own if c.seq != cmd.seq]) != final:
            needed.add(cmd.seq)

    # data-producing commands the panel's final parameters reference
    want_assays: list[str] = []
    data = final["data_params"]
    if isinstance(data.get("assay"), str):
        want_assays.append(data["assay"])
    if isinstance(data.get("reduced_dim"), str):
        for cmd in reversed(log):
            if cmd.verb == "ordinate" and cmd.args["name"] == data["reduced_dim"]:
                needed.add(cmd.seq)
                want_assays.append(cmd.args["assay"])
                break
    while want_assays:
        name = want_assays.pop()
        for cmd in reversed(log):
            if cmd.verb == "transform" and _derived_name(cmd.args) == name:
                if cmd.seq not in needed:
                    needed.add(cmd.seq)
                    want_assays.append(cmd.args["assay"])
                break

    # the latest selection per restricting source of the panel
    if state.selection_params.get("restrict"):
        for key, axis in (("row_source", "rows"), ("col_source", "columns")):
            src = state.selection_params.get(key)
            if not src:
                continue
            for cmd in reversed(log):
                if cmd.verb == "select" and cmd.args["origin"] == src \
                        and cmd.args["axis"] == axis:
                    needed.add(cmd.seq)
                    break

    # selection-source panels must exist on replay: pull in their add_panel
    # commands transitively (add-time wiring only; their payloads are never
    # computed, so their later set_params stay out)
    want_panels = [s for s in (state.selection_params.get("row_source"),
                               state.selection_params.get("col_source")) if s]
    for cmd in own:  # add-time wiring may reference panels replaced later
        if cmd.seq in needed:
            sel = cmd.args.get("selection_params") or {}
            want_panels.extend(s for s in (sel.get("row_source"),
                                           sel.get("col_source")) if s)
    seen_panels = {panel_id}
    while want_panels:
        pid = want_panels.pop()
        if pid in seen_panels:
            continue
        seen_panels.add(pid)
        for cmd in log:
            if cmd.verb == "add_panel" and cmd.args.get("id") == pid:
                needed.add(cmd.seq)
                sel = cmd.args.get("selection_params") or {}
                want_panels.extend(s for s in (sel.get("row_source"),
                                               sel.get("col_source")) if s)
                break

    commands = tuple(c for c in log if c.seq in needed)
    header = {"engine_version": ENGINE_VERSION,
              "bundle_digest": session.bundle.digest(),
              "target_panel": panel_id}
    return Script(header=header, commands=commands)


def replay(script: Script, bundle):
    """Execute a script against bundle bytes; returns the target payload."""
    from .session import Session  # session imports this module

    if script.header.get("engine_version") != ENGINE_VERSION:
        raise DigestMismatch(
            f"script was written by engine {script.header.get('engine_version')!r}, "
            f"this is {ENGINE_VERSION}")
    if script.header.get("bundle_digest") != bundle.digest():
        raise DigestMismatch("bundle bytes do not match the script digest")
    commands = list(script.commands)
    if not commands or commands[0].verb != "load_bundle":
        raise SchemaViolation("script must start with load_bundle")
    session = Session(bundle, record_defaults=False)
    for cmd in commands[1:]:
        session.execute(cmd.verb, cmd.args)
    return session.payload(script.header["target_panel"])
