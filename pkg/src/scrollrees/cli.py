"""Command-line front end.

Reads a presentation document (JSON) from a file or stdin, runs one
computation and prints either JSON or a plain-text table rendered from the
same JSON.  Exit codes: 0 success, 2 invalid input, 3 a verification check
failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

import numpy as np

from . import invariants as inv
from .algebra import AlgebraError, Field, default_prime
from .oracle import verify
from .presentation import (PresentationData, build_from_pair, canonicalize,
                           field_to_json, from_matrix, binary_ring,
                           example_pair)
from .rees import canonical_frame, fiber_equations, rees_ideal
from .scroll import build_scroll

EXIT_OK, EXIT_INVALID, EXIT_VERIFY = 0, 2, 3


class InputError(ValueError):
    pass


def parse_field(value) -> Field:
    if value is None:
        return Field(default_prime())
    if isinstance(value, dict):
        if "prime" not in value:
            raise InputError("field object must have a 'prime' key")
        return Field(int(value["prime"]))
    text = str(value).strip()
    if text.lower() in ("q", "qq", "rational", "rationals"):
        return Field.rational()
    try:
        return Field(int(text))
    except ValueError as err:
        raise InputError(f"bad field {value!r}") from err


def load_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(f"invalid JSON at line {err.lineno}, column {err.colno}: {err.msg}") from err
    if not isinstance(doc, dict) or "input" not in doc:
        raise InputError("document must be an object with an 'input' key")
    return doc


def presentation_from_document(doc: dict, field_override: Field | None = None) -> PresentationData:
    F = field_override or parse_field(doc.get("field"))
    body = doc["input"]
    if not isinstance(body, dict):
        raise InputError("'input' must be an object")
    if "matrix" in body:
        matrix = body["matrix"]
        if not isinstance(matrix, list) or not all(isinstance(r, list) for r in matrix):
            raise InputError("'matrix' must be a list of rows")
        return from_matrix(F, matrix)
    if "pair" in body:
        pair = body["pair"]
        try:
            sigma, tau = int(pair["sigma"]), int(pair["tau"])
            texts = str(pair["F1"]), str(pair["F2"])
        except KeyError as err:
            raise InputError(f"pair input is missing {err}") from err
        except (TypeError, ValueError) as err:
            raise InputError(f"bad pair input: {err}") from err
        R = binary_ring(F)
        F1, F2 = R.parse(texts[0]), R.parse(texts[1])
        return build_from_pair(sigma, tau, F1, F2)
    raise InputError("'input' needs a 'matrix' or a 'pair'")


def reduce_mod_prime(pd: PresentationData, p: int) -> PresentationData:
    F = Field(p)
    return from_matrix(F, [[str(e) for e in row] for row in pd.matrix()])


# -- commands -------------------------------------------------------------------

def cmd_canonicalize(pd: PresentationData, args) -> dict:
    cf, frame = canonical_frame(pd)
    out = cf.to_json()
    out["m"], out["n"], out["d"] = pd.m, pd.n, pd.d
    out["matrix"] = [[str(e) for e in row] + [str(c)]
                     for row, c in zip(frame.linear, frame.nonlinear)]
    return out


def cmd_rees(pd, args) -> dict:
    return rees_ideal(pd).to_json()


def cmd_fiber(pd, args) -> dict:
    rg = rees_ideal(pd)
    eqs = []
    for gen in fiber_equations(rg):
        eqs.append({"name": gen.name(), "label": gen.label, "degree": gen.bidegree[1],
                    "poly": str(gen.poly)})
    return {"m": pd.m, "n": pd.n, "d": pd.d, "rho": rg.st.rho, "equations": eqs}


def cmd_betti(pd, args) -> dict:
    cf = canonicalize(pd.linear)
    table = inv.betti_table(args.s, cf, pd.n)
    out = table.to_json()
    out["regularity"] = inv.regularity_power(args.s, cf.sigma, cf.tau, pd.n)
    return out


def cmd_hilbert(pd, args) -> dict:
    cf = canonicalize(pd.linear)
    st = build_scroll(cf, pd.m, pd.n, pd.field)
    return {"s": args.s, "z": args.z, "value": inv.hilbert_power(args.s, args.z, st)}


def cmd_invariants(pd, args) -> dict:
    cf = canonicalize(pd.linear)
    st = build_scroll(cf, pd.m, pd.n, pd.field)
    return inv.invariant_report(cf, pd.n, args.max_s, st).to_json()


def cmd_verify(pd, args) -> dict:
    work = pd if pd.field.p else reduce_mod_prime(pd, default_prime())
    rg = rees_ideal(work)
    window = None
    if args.window:
        try:
            u, s = (int(v) for v in args.window.split(","))
        except ValueError as err:
            raise InputError("--window expects two integers 'u,s'") from err
        window = (u, s)
    report = verify(work, rg, window, np.random.default_rng(args.seed))
    report["field"] = field_to_json(work.field)
    return report


def cmd_example(args, F: Field) -> dict:
    F1, F2 = example_pair(args.n, args.sigma, args.tau, F)
    build_from_pair(args.sigma, args.tau, F1, F2)  # validates the parameters
    return {"field": field_to_json(F),
            "input": {"pair": {"sigma": args.sigma, "tau": args.tau,
                               "F1": str(F1), "F2": str(F2)}}}


# -- rendering --------------------------------------------------------------------

def render(command: str, data: dict) -> str:
    lines = []
    if command == "canonicalize":
        lines.append(f"rho={data['rho']}  sigma={data['partition']}  m={data['m']}  n={data['n']}  d={data['d']}")
        lines.append("canonical presentation:")
        lines += ["  [" + ", ".join(row) + "]" for row in data["matrix"]]
    elif command == "rees":
        lines.append(f"rho={data['rho']}  sigma={data['sigma']}  m={data['m']}  n={data['n']}  d={data['d']}")
        lines.append(f"g = {data['g']}")
        for gen in data["generators"]:
            lines.append(f"  {gen['name']:<14} {str(tuple(gen['bidegree'])):<8} {gen['poly']}")
    elif command == "fiber":
        lines.append(f"implicit equations (m={data['m']}, d={data['d']}):")
        for eq in data["equations"]:
            lines.append(f"  {eq['name']:<14} deg {eq['degree']:<3} {eq['poly']}")
    elif command == "betti":
        lines.append(f"I^{data['s']}: generators {data['b0']} in degree {data['degree']}")
        lines.append(f"  linear syzygies b = {data['b']} (twist {data['linear_twist']})")
        lines.append(f"  non-linear syzygies a = {data['a']} twists {data['twists']}")
        lines.append(f"  regularity {data['regularity']}")
    elif command == "hilbert":
        lines.append(f"dim I^{data['s']} in degree {data['z']} = {data['value']}")
    elif command == "invariants":
        lines.append(f"rho={data['rho']}  sigma={data['sigma']}  n={data['n']}  d={data['d']}")
        lines.append(f"reduction number r(I) = {data['r_I']}")
        lines.append(f"postulation number = {data['postulation']}")
        dp = data["depths"]
        lines.append(f"depth R(I) = {dp['depth_rees']}, depth F(I) = {dp['depth_fiber']}, "
                     f"depth gr = {dp['depth_gr']}, reg F(I) = {dp['reg_fiber']}, "
                     f"F(I) Cohen-Macaulay: {dp['fiber_cohen_macaulay']}")
        for s, t in data["betti"].items():
            lines.append(f"  s={s}: b0={t['b0']} b={t['b']} a={t['a']} twists={t['twists']} "
                         f"reg={data['reg']['values'][s]}")
    elif command == "verify":
        for c in data["checks"]:
            mark = "PASS" if c["pass"] else "FAIL"
            extra = f"  counterexample {c['counterexample']}" if "counterexample" in c else ""
            lines.append(f"{mark}  {c['name']}{extra}")
        lines.append("all checks passed" if data["ok"] else "some checks failed")
    else:
        lines.append(json.dumps(data, indent=2, sort_keys=True))
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="scroll-rees",
                                 description="Rees algebra equations and invariants for almost "
                                             "linearly presented height-two ideals in k[x,y].")
    ap.add_argument("--field", help="prime p or Q (overrides the document's field)")
    ap.add_argument("--json", action="store_true", help="print JSON instead of tables")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_input(p):
        p.add_argument("input", nargs="?", default="-", help="JSON document (default: stdin)")
        return p

    with_input(sub.add_parser("canonicalize", help="normal form of the linear part"))
    with_input(sub.add_parser("rees", help="generators of the Rees ideal"))
    with_input(sub.add_parser("fiber", help="implicit equations of the curve"))
    p = with_input(sub.add_parser("betti", help="Betti table of I^s"))
    p.add_argument("--s", type=int, required=True)
    p = with_input(sub.add_parser("hilbert", help="dim of I^s in degree z"))
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--z", type=int, required=True)
    p = with_input(sub.add_parser("invariants", help="regularity, Betti tables, r(I), depths"))
    p.add_argument("--max-s", type=int, default=3)
    p = with_input(sub.add_parser("verify", help="brute-force checks of every formula"))
    p.add_argument("--window", help="u,s bounds for the bidegree windows (default 2n,3)")
    p = sub.add_parser("example", help="emit the monomial example as an input document")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", type=int, required=True)
    p.add_argument("--tau", type=int, required=True)
    return ap


COMMANDS = {"canonicalize": cmd_canonicalize, "rees": cmd_rees, "fiber": cmd_fiber,
            "betti": cmd_betti, "hilbert": cmd_hilbert, "invariants": cmd_invariants,
            "verify": cmd_verify}


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        override = parse_field(args.field) if args.field else None
        if args.command == "example":
            data: Any = cmd_example(args, override or Field(default_prime()))
            stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
            return EXIT_OK
        if args.input == "-":
            text = stdin.read()
        else:
            with open(args.input) as fh:
                text = fh.read()
        pd = presentation_from_document(load_document(text), override)
        data = COMMANDS[args.command](pd, args)
    except (InputError, AlgebraError, OSError) as err:
        kind = type(err).__name__
        stderr.write(f"error: {kind}: {err}\n")
        return EXIT_INVALID
    if args.json:
        stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        stdout.write(render(args.command, data) + "\n")
    if args.command == "verify" and not data["ok"]:
        return EXIT_VERIFY
    return EXIT_OK


def main() -> None:
    sys.exit(run())
