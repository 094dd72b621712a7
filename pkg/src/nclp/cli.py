"""Command-line harness: seeded verification suite and one-shot demos.

Exit codes: 0 success, 1 property failure or domain error (a report or a
machine-readable error object is still emitted), 2 malformed config or
input.  All I/O is JSON on files and stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import decomp, lpspace, serialize, weights
from .errors import AlgebraMismatchError, NclpError, ShapeError
from .matcore import BlockAlgebra, distance, operator_norm
from .oracle import oracle_commutative
from .properties import SuiteConfig, run_suite


def _emit(obj: dict) -> None:
    sys.stdout.write(serialize.dumps(obj))


def _fail(kind: str, exc: Exception, code: int) -> int:
    err = {"error": {"type": kind, "message": str(exc)}}
    residual = getattr(exc, "residual", None)
    if residual is not None:
        err["error"]["residual"] = float(residual)
    _emit(err)
    return code


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def cmd_verify(args) -> int:
    try:
        obj = _load_json(args.config) if args.config else {}
        if args.seed is not None:
            obj["seed"] = args.seed
        elif "seed" not in obj and os.environ.get("NCLP_SEED"):
            obj["seed"] = int(os.environ["NCLP_SEED"])
        if args.trials is not None:
            obj["trials"] = args.trials
        cfg = SuiteConfig.from_obj(obj)
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        return _fail("config", exc, 2)
    report = run_suite(cfg)
    _emit(report.to_obj())
    return 0 if report.all_passed else 1


def _demo_holder(obj: dict) -> dict:
    x = serialize.graded_from_obj(obj["x"])
    y = serialize.graded_from_obj(obj["y"])
    nx, ny = lpspace.lnorm(x), lpspace.lnorm(y)
    nprod = lpspace.lnorm(lpspace.gmul(x, y))
    return {
        "inputs": {"x": obj["x"], "y": obj["y"]},
        "norm_x": nx,
        "norm_y": ny,
        "norm_product": nprod,
        "margin": nx * ny - nprod,
    }


def _demo_polar(obj: dict) -> dict:
    x = serialize.element_from_obj(obj["x"])
    right = decomp.polar_right(x)
    left = decomp.polar_left(x)
    return {
        "inputs": {"x": obj["x"]},
        "isometry": serialize.element_to_obj(right.isometry),
        "positive_right": serialize.element_to_obj(right.positive),
        "positive_left": serialize.element_to_obj(left.positive),
        "right_support": serialize.element_to_obj(decomp.right_support(x)),
        "left_support": serialize.element_to_obj(decomp.left_support(x)),
        "residual_right": distance(right.reconstruct(), x),
        "residual_left": distance(left.reconstruct(), x),
    }


def _demo_douglas(obj: dict) -> dict:
    x = serialize.element_from_obj(obj["x"])
    y = serialize.element_from_obj(obj["y"])
    result = decomp.douglas_divide(x, y)
    return {
        "inputs": {"x": obj["x"], "y": obj["y"]},
        "quotient": serialize.element_to_obj(result.quotient),
        "minimal_c": result.minimal_c,
        "residual": result.residual,
    }


def _demo_comultiply(obj: dict) -> dict:
    zeta = serialize.graded_from_obj(obj["zeta"])
    a, b = (complex(s[0], s[1]) for s in obj["split"])
    first, second = lpspace.comultiply(zeta, (a, b))
    rebuilt = lpspace.gmul(first, second)
    return {
        "inputs": {"zeta": obj["zeta"], "split": obj["split"]},
        "first": serialize.graded_to_obj(first),
        "second": serialize.graded_to_obj(second),
        "norm": lpspace.lnorm(zeta),
        "norm_product": lpspace.lnorm(first) * lpspace.lnorm(second),
        "residual": distance(rebuilt.data, zeta.data),
    }


def _demo_cocycle(obj: dict) -> dict:
    mu = serialize.weight_from_obj(obj["mu"])
    nu = serialize.weight_from_obj(obj["nu"])
    a = complex(obj["a"][0], obj["a"][1])
    b = complex(obj["b"][0], obj["b"][1]) if "b" in obj else complex(0.0, 1.0)
    u = weights.connes_cocycle(mu, nu, a)
    report = weights.cocycle_identity_check(mu, nu, a, b)
    return {
        "inputs": {"mu": obj["mu"], "nu": obj["nu"], "a": obj["a"]},
        "cocycle": serialize.element_to_obj(u),
        "operator_norm": operator_norm(u),
        "identity_residual": report.max_residual,
        "identity_passed": report.passed,
    }


def _demo_pushforward(obj: dict) -> dict:
    mu = serialize.weight_from_obj(obj["mu"])
    emb = obj["embedding"]
    embedding = weights.BlockEmbedding(
        BlockAlgebra(tuple(emb["source_dims"])),
        BlockAlgebra(tuple(emb["target_dims"])),
        tuple(tuple(row) for row in emb["assignment"]))
    ovw = weights.OperatorValuedWeight.from_compression(
        embedding, obj.get("slot_weights"))
    push = weights.pushforward_weight(mu, ovw)
    agreement = max(abs(weights.evaluate(push, q) - weights.evaluate(mu, ovw.apply(q)))
                    for q in ovw.source.basis())
    return {
        "inputs": {"mu": obj["mu"], "embedding": emb},
        "pushforward": serialize.weight_to_obj(push),
        "agreement_residual": agreement,
        "faithful": push.faithful,
    }


_DEMOS = {
    "holder": _demo_holder,
    "polar": _demo_polar,
    "douglas": _demo_douglas,
    "comultiply": _demo_comultiply,
    "cocycle": _demo_cocycle,
    "pushforward": _demo_pushforward,
}


def cmd_demo(args) -> int:
    try:
        obj = _load_json(args.input)
        handler = _DEMOS[args.subcommand]
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        return _fail("parse", exc, 2)
    try:
        out = handler(obj)
    except (ShapeError, AlgebraMismatchError) as exc:
        # structurally invalid input data, not a failed computation
        return _fail("parse", exc, 2)
    except NclpError as exc:
        return _fail(type(exc).__name__, exc, 1)
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        return _fail("parse", exc, 2)
    _emit(out)
    return 0


def cmd_oracle(args) -> int:
    try:
        obj = _load_json(args.input)
        f = [complex(v[0], v[1]) if isinstance(v, list) else complex(v)
             for v in obj["f"]]
        a = complex(obj["a"][0], obj["a"][1]) if isinstance(obj["a"], list) \
            else complex(obj["a"])
        mu = [float(m) for m in obj.get("mu", [1.0] * len(f))]
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        return _fail("parse", exc, 2)
    try:
        value = oracle_commutative(f, a, mu)
    except ValueError as exc:
        return _fail("domain", exc, 1)
    _emit({"value": value})
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="nclp",
        description="verification harness for graded L-spaces of block algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run the seeded property suite")
    verify.add_argument("--config", help="JSON suite configuration file")
    verify.add_argument("--seed", type=int, help="overrides config and NCLP_SEED")
    verify.add_argument("--trials", type=int, help="trials per property")
    verify.set_defaults(func=cmd_verify)

    demo = sub.add_parser("demo", help="one-shot computation on a JSON input")
    demo.add_argument("subcommand", choices=sorted(_DEMOS))
    demo.add_argument("--input", required=True, help="JSON input file")
    demo.set_defaults(func=cmd_demo)

    oracle = sub.add_parser("oracle", help="scalar-path commutative norm")
    oracle.add_argument("--input", required=True, help="JSON input file")
    oracle.set_defaults(func=cmd_oracle)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
