"""Command-line interface.

Subcommands: check-ns, classify, compose, leakage, amplify, game,
search, protocol-eval.  Reports are deterministic (fixed key order, 12
significant digits) and written atomically; exit codes are 0 success,
2 validation error, 3 domain error, 4 resource error.
"""

from __future__ import annotations

import argparse
import re
import sys

import numpy as np

from . import protocols
from .boxes import (
    AnyBox,
    TripartiteBcBox,
    TripartiteMacBox,
    check_ns,
    check_ns_via_mi,
    classify_triviality_bc,
    classify_triviality_mac,
    lift_sender_box_mac,
    make_pr_box,
)
from .channels import (
    Channel,
    binary_adder_mac,
    binary_symmetric_channel,
    bsc_pair_mac,
    erasure_channel,
)
from .composition import (
    amplification_analysis,
    bob_view_mac,
    compose_bc,
    compose_mac,
    encoder_secrecy_violation,
    receiver_views_bc,
)
from .errors import DomainError, ResourceLimitError, ToolkitError, ValidationError
from .polytope import (
    GameSpec,
    PartyShape,
    local_game_value,
    max_distinguishability,
    ns_game_value,
)
from .probability import Alphabet, JointPmf
from .sampling import deterministic_part
from .serialization import (
    box_from_dict,
    box_to_dict,
    canonical_csv,
    canonical_json,
    channel_from_dict,
    load_json_file,
    tensor_from_dict,
    write_atomically,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_DOMAIN = 3
EXIT_RESOURCE = 4


# ----------------------------------------------------------------------
# argument resolution
# ----------------------------------------------------------------------

def _load_box(spec: str, tolerance: float) -> AnyBox:
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        if name == "pr":
            return make_pr_box(tolerance)
        if name == "pr_lift":
            return lift_sender_box_mac(
                make_pr_box(tolerance),
                deterministic_part("j", "y", 3, (0, 1, 2)),
                tolerance,
            )
        raise ValidationError(f"unknown builtin box {name!r}")
    return box_from_dict(load_json_file(spec), tolerance)


def _load_channel(spec: str, tolerance: float) -> Channel:
    name = spec.split(":", 1)[1] if spec.startswith("builtin:") else spec
    if name == "adder":
        return binary_adder_mac(tolerance)
    m = re.fullmatch(r"erasure:([0-9.eE+-]+)", name)
    if m:
        return erasure_channel(float(m.group(1)), tolerance)
    m = re.fullmatch(r"bsc:([0-9.eE+-]+)", name)
    if m:
        return binary_symmetric_channel(float(m.group(1)), tolerance)
    m = re.fullmatch(r"bsc-mac:([0-9.eE+-]+)", name)
    if m:
        return bsc_pair_mac(float(m.group(1)), tolerance)
    return channel_from_dict(load_json_file(spec), tolerance)


def _parse_shape(text: str) -> PartyShape:
    m = re.fullmatch(r"(bipartite|mac|bc):([0-9,]+)", text)
    if not m:
        raise ValidationError(
            f"shape must look like 'mac:2,2,2,2,2,3' (outputs then inputs), got {text!r}"
        )
    structure = {"bipartite": "bipartite", "mac": "tripartite_mac", "bc": "tripartite_bc"}[
        m.group(1)
    ]
    sizes = [int(v) for v in m.group(2).split(",") if v]
    n_out = {"bipartite": 2, "tripartite_mac": 3, "tripartite_bc": 3}[structure]
    if len(sizes) != 2 * n_out:
        raise ValidationError(
            f"shape {text!r} needs {2 * n_out} sizes (outputs then inputs)"
        )
    return PartyShape(structure, tuple(sizes[:n_out]), tuple(sizes[n_out:]))


def _parse_pair(text: str) -> tuple[tuple[int, int], tuple[int, int]]:
    m = re.fullmatch(r"\((\d+),(\d+)\)\|\((\d+),(\d+)\)", text.replace(" ", ""))
    if not m:
        raise ValidationError(f"pair must look like '(0,0)|(1,1)', got {text!r}")
    vals = [int(g) for g in m.groups()]
    return (vals[0], vals[1]), (vals[2], vals[3])


def _load_game(path: str, shape: PartyShape, tolerance: float) -> GameSpec:
    data = load_json_file(path)
    try:
        dist_flat = np.asarray(data["input_dist"], dtype=np.float64)
        payoff_map = data["payoff"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"game file needs input_dist and payoff: {exc}") from exc
    in_sizes, out_sizes = shape.in_sizes, shape.out_sizes
    if dist_flat.size != int(np.prod(in_sizes)):
        raise ValidationError(
            f"input_dist has {dist_flat.size} entries, shape implies {int(np.prod(in_sizes))}"
        )
    axes = tuple(Alphabet(f"in{k}", s) for k, s in enumerate(in_sizes))
    dist = JointPmf(axes, dist_flat.reshape(in_sizes), tolerance)
    payoff = np.zeros(in_sizes + out_sizes)
    key_re = re.compile(r"\(([0-9,]+)\)->\(([0-9,]+)\)")
    for key, value in payoff_map.items():
        m = key_re.fullmatch(key.replace(" ", ""))
        if not m:
            raise ValidationError(f"payoff key {key!r} must look like '(i,..)->(x,..)'")
        ins = tuple(int(v) for v in m.group(1).split(","))
        outs = tuple(int(v) for v in m.group(2).split(","))
        if len(ins) != len(in_sizes) or len(outs) != len(out_sizes):
            raise ValidationError(f"payoff key {key!r} arity does not match shape")
        payoff[ins + outs] = float(value)
    return GameSpec(dist, payoff)


def _load_scenario(spec: str, tolerance: float):
    if spec.startswith("builtin:"):
        name = spec.split(":", 1)[1]
        if name == "pr_ot":
            return protocols.pr_ot_scenario()
        if name == "rabin_ot":
            return protocols.rabin_ot_scenario()
        raise ValidationError(f"unknown builtin scenario {name!r}")
    data = load_json_file(spec)
    try:
        inst = protocols.OtInstance(int(data["instance"]["k1"]), int(data["instance"]["k2"]))
        encoders = tuple(np.asarray(t, dtype=np.int64) for t in data["encoders"])
        box_spec = data["box"]
        channel_spec = data["channel"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"scenario file is missing field {exc}") from exc
    box = _load_box(box_spec, tolerance)
    if not isinstance(box, TripartiteMacBox):
        raise ValidationError("scenario box must have tripartite_mac structure")
    channel = _load_channel(channel_spec, tolerance)
    transcript = []
    for entry in data.get("transcript", ()):
        try:
            table = np.asarray(entry["table"], dtype=np.int64)
            transcript.append(
                protocols.TranscriptSpec(
                    entry["from"],
                    tuple(entry["reads"]),
                    table,
                    int(entry.get("size", int(table.max()) + 1)),
                )
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed transcript entry: {exc}") from exc
    decoder = data.get("decoder", "ml")
    if decoder != "ml":
        decoder = tuple(np.asarray(t, dtype=np.int64) for t in decoder)
    return protocols.build_mac_scenario(
        inst, encoders, box, channel, transcript, decoder, label=spec
    )


# ----------------------------------------------------------------------
# report builders (JSON dicts with fixed insertion order, plus CSV rows)
# ----------------------------------------------------------------------

def _report_check_ns(args) -> tuple[dict, list]:
    box = _load_box(args.box, args.tolerance)
    report = check_ns(box, args.tolerance)
    mi_report = check_ns_via_mi(box, tolerance=args.tolerance)
    data = {
        "passed": report.passed,
        "family_gaps": {k: report.family_gaps[k] for k in sorted(report.family_gaps)},
        "violations": [
            {"constraint": v.constraint, "at": v.at, "gap": v.gap}
            for v in report.violations
        ],
        "mi_check": {
            "passed": mi_report.passed,
            "family_gaps": {
                k: mi_report.family_gaps[k] for k in sorted(mi_report.family_gaps)
            },
        },
    }
    rows = [["constraint", "gap", "violated"]]
    for k in sorted(report.family_gaps):
        rows.append([k, report.family_gaps[k], report.family_gaps[k] > args.tolerance])
    return data, rows


def _report_classify(args) -> tuple[dict, list]:
    box = _load_box(args.box, args.tolerance)
    if isinstance(box, TripartiteMacBox):
        classify = classify_triviality_mac
    elif isinstance(box, TripartiteBcBox):
        classify = classify_triviality_bc
    else:
        raise ValidationError("classify needs a tripartite box")
    if args.inputs == "uniform":
        input_dist = None
    else:
        kernel = tensor_from_dict(load_json_file(args.inputs), args.tolerance)
        if kernel.input_axes:
            raise ValidationError("input distribution file must be unconditional")
        input_dist = kernel.given()
    verdict = classify(box, input_dist, args.tolerance)
    witness = None
    if verdict.witness is not None:
        w = verdict.witness
        witness = {
            "sender_inputs": list(w.sender_inputs),
            "sender_inputs_alt": list(w.sender_inputs_alt),
            "receiver_inputs": list(w.receiver_inputs),
            "output": list(w.output),
            "gap": w.gap,
        }
    data = {"trivial": verdict.trivial, "mi_value": verdict.mi_value, "witness": witness}
    rows = [["key", "value"], ["trivial", verdict.trivial], ["mi_value", verdict.mi_value]]
    return data, rows


def _compose(args):
    box = _load_box(args.box, args.tolerance)
    channel = _load_channel(args.channel, args.tolerance)
    if isinstance(box, TripartiteMacBox):
        return compose_mac(box, channel)
    if isinstance(box, TripartiteBcBox):
        return compose_bc(box, channel)
    raise ValidationError("compose needs a tripartite box")


def _report_compose(args) -> tuple[dict, list]:
    system = _compose(args)
    entries = []
    rows = [["inputs", "receiver", "outcome", "probability"]]
    if system.structure == "mac":
        views = {(None): bob_view_mac(system)}
    else:
        views = {1: receiver_views_bc(system, 1), 2: receiver_views_bc(system, 2)}
    for receiver, view_map in views.items():
        for inputs in sorted(view_map):
            view = view_map[inputs]
            flat = [float(v) for v in view.values.ravel()]
            entries.append(
                {
                    "inputs": list(inputs),
                    "receiver": receiver,
                    "axes": [{"name": a.name, "size": a.size} for a in view.axes],
                    "values": flat,
                }
            )
            for outcome, p in enumerate(flat):
                rows.append(
                    [",".join(str(v) for v in inputs), receiver if receiver else 0,
                     outcome, p]
                )
    data = {"structure": system.structure, "views": entries}
    return data, rows


def _report_leakage(args) -> tuple[dict, list]:
    system = _compose(args)
    report = encoder_secrecy_violation(system, args.tolerance)
    data = {
        "epsilon": report.epsilon,
        "argmax_pair": [list(t) for t in report.argmax_pair] if report.argmax_pair else None,
        "universal_secrecy": report.universal_secrecy,
        "per_pair": [
            {
                "inputs_a": list(r.inputs_a),
                "inputs_b": list(r.inputs_b),
                "receiver": r.receiver,
                "tv": r.tv,
            }
            for r in report.per_pair
        ],
    }
    rows = [["inputs_a", "inputs_b", "receiver", "tv"]]
    for r in report.per_pair:
        rows.append(
            [
                ";".join(str(v) for v in r.inputs_a),
                ";".join(str(v) for v in r.inputs_b),
                r.receiver if r.receiver else 0,
                r.tv,
            ]
        )
    return data, rows


def _report_amplify(args) -> tuple[dict, list]:
    curve = amplification_analysis(args.epsilon, args.n_max)
    data = {
        "epsilon": args.epsilon,
        "rows": [
            {"n": r.n, "tv": r.tv, "pe": r.pe, "correct": r.correct, "mi_bits": r.mi_bits}
            for r in curve.rows
        ],
    }
    rows = [["n", "tv", "pe", "correct", "mi_bits"]]
    for r in curve.rows:
        rows.append([r.n, r.tv, r.pe, r.correct, r.mi_bits])
    return data, rows


def _report_game(args) -> tuple[dict, list]:
    shape = _parse_shape(args.shape)
    game = _load_game(args.game, shape, args.tolerance)
    local = local_game_value(game, shape) if shape.structure == "bipartite" else None
    value, box = ns_game_value(game, shape)
    data = {
        "local_value": local,
        "ns_value": value,
        "ns_box": box_to_dict(box),
    }
    rows = [["key", "value"]]
    if local is not None:
        rows.append(["local_value", local])
    rows.append(["ns_value", value])
    return data, rows


def _report_search(args) -> tuple[dict, list]:
    shape = _parse_shape(args.shape)
    channel = _load_channel(args.channel, args.tolerance)
    pair = _parse_pair(args.pair)
    value, box = max_distinguishability(shape, channel, pair)
    data = {
        "pair": [list(pair[0]), list(pair[1])],
        "value": value,
        "box": box_to_dict(box),
    }
    rows = [["key", "value"], ["value", value]]
    return data, rows


def _report_protocol_eval(args) -> tuple[dict, list]:
    scenario = _load_scenario(args.scenario, args.tolerance)
    if not scenario.senders:
        rep = protocols.rabin_ot_report(scenario)
        data = {
            "scenario": scenario.label,
            "receive_probability": rep.receive_probability,
            "sender_erasure_mi_bits": rep.sender_erasure_mi_bits,
            "decode_error_given_receipt": rep.decode_error_given_receipt,
        }
    else:
        ev = protocols.evaluate_scenario(scenario, tolerance=args.tolerance)
        data = {
            "scenario": scenario.label,
            "correctness_error": ev.correctness_error,
            "sfa_leakage_bits": ev.sfa_leakage_bits,
            "sfb_leakage_bits": ev.sfb_leakage_bits,
            "sfb_per_sender": list(ev.sfb_per_sender),
            "perfect_correctness": ev.perfect_correctness,
            "perfect_sfa": ev.perfect_sfa,
            "perfect_sfb": ev.perfect_sfb,
            "selected_entropy_given_view": ev.selected_entropy_given_view,
            "selected_entropy_without_choice": ev.selected_entropy_without_choice,
            "selected_bits": ev.selected_bits,
        }
    rows = [["key", "value"]] + [[k, v] for k, v in data.items() if not isinstance(v, list)]
    return data, rows


# ----------------------------------------------------------------------
# driver
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nsotkit",
        description="Exact certificates for non-signaling boxes, channels, and OT security.",
    )
    parser.add_argument("--tolerance", type=float, default=1e-9)
    parser.add_argument("--output", default=None, help="write the report to this path (atomic)")
    parser.add_argument("--format", choices=("json", "csv"), default="json")

    # the same globals are accepted after the subcommand; SUPPRESS keeps a
    # post-command omission from clobbering a pre-command value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, default=argparse.SUPPRESS)
    common.add_argument("--output", default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)

    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, help_text):
        return sub.add_parser(name, help=help_text, parents=[common])

    p = add_parser("check-ns", "non-signaling constraint check")
    p.add_argument("--box", required=True, help="PATH or builtin:NAME")
    p.set_defaults(handler=_report_check_ns)

    p = add_parser("classify", "triviality classification")
    p.add_argument("--box", required=True)
    p.add_argument("--inputs", default="uniform", help="'uniform' or a distribution file")
    p.set_defaults(handler=_report_classify)

    p = add_parser("compose", "box-channel composition views")
    p.add_argument("--box", required=True)
    p.add_argument("--channel", required=True)
    p.set_defaults(handler=_report_compose)

    p = add_parser("leakage", "encoder distinguishability report")
    p.add_argument("--box", required=True)
    p.add_argument("--channel", required=True)
    p.set_defaults(handler=_report_leakage)

    p = add_parser("amplify", "repetition amplification curve")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.set_defaults(handler=_report_amplify)

    p = add_parser("game", "local and NS game values")
    p.add_argument("--game", required=True)
    p.add_argument("--shape", required=True)
    p.set_defaults(handler=_report_game)

    p = add_parser("search", "LP search for the most distinguishing box")
    p.add_argument("--shape", required=True)
    p.add_argument("--channel", required=True)
    p.add_argument("--pair", required=True, help="e.g. '(0,0)|(1,1)'")
    p.set_defaults(handler=_report_search)

    p = add_parser("protocol-eval", "exact OT security evaluation")
    p.add_argument("--scenario", required=True, help="PATH or builtin:NAME")
    p.set_defaults(handler=_report_protocol_eval)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_VALIDATION if exc.code not in (0, None) else 0
    try:
        data, rows = args.handler(args)
        content = canonical_json(data) if args.format == "json" else canonical_csv(rows)
        if args.output:
            write_atomically(args.output, content)
        else:
            sys.stdout.write(content)
        return EXIT_OK
    except ResourceLimitError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ToolkitError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
