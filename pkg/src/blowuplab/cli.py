"""Input-language parser, command dispatch, JSON reports, golden corpus.

Session grammar (statements separated by ';'):

    ring  R = poly(x, y) [cm]
    ring  S = semigroup(4, 6, 7)
    ring  E = quotient(x, y, z; x^3+y^5+z^2) [gorenstein]
    ideal I = x^6, x^4*y^2, x^3*y^3, y^6        # binds to the latest ring
    module M = cyclic(K)                        # M = R/K; cyclic(0) is R
    compute reg(I) horizon 30 seed 1 window 12

Each compute emits one JSON object on stdout (newline-delimited); --pretty
renders a small table instead.  Exit codes: 0 ok, 1 parse error,
2 hypothesis violation, 3 horizon exhausted.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import asdict, is_dataclass
from fractions import Fraction

from . import blowup, engines, hilbert, rees, regularity, ulrich
from .engines import Ideal, RingSpec, Session
from .errors import BlowupError, HorizonExhausted, HypothesisError
from .kernel import Polynomial, parse_polynomial, poly_str

FLAG_NAMES = {"cm": "cohen-macaulay", "cohen-macaulay": "cohen-macaulay",
              "gorenstein": "gorenstein", "buchsbaum": "buchsbaum"}


class ParseError(BlowupError):
    def __init__(self, message, line=None):
        super().__init__(message if line is None
                         else f"line {line}: {message}")
        self.line = line


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _split_statements(text):
    """Split on ';' at paren depth 0 (quotient models carry inner ';')."""
    parts = []
    depth = 0
    buf = []
    line = 1
    start_line = 1
    for ch in text:
        if ch == "\n":
            line += 1
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == ";" and depth == 0:
            stmt = "".join(buf).strip()
            if stmt:
                parts.append((stmt, start_line))
            buf = []
            start_line = line
        else:
            buf.append(ch)
    tail = "".join(buf).strip()
    if tail:
        parts.append((tail, start_line))
    return parts


_RING_RE = re.compile(
    r"^ring\s+(\w+)\s*=\s*(poly|semigroup|quotient)\s*\((.*)\)\s*"
    r"(?:\[\s*([\w\s,+-]+)\s*\])?$", re.S)
_IDEAL_RE = re.compile(r"^ideal\s+(\w+)\s*=\s*(.+)$", re.S)
_MODULE_RE = re.compile(r"^module\s+(\w+)\s*=\s*cyclic\s*\((\w+|0)\)$", re.S)
_CMD_RE = re.compile(
    r"^compute\s+(\w+)\s*\((.*?)\)\s*((?:(?:horizon|seed|window)\s+\d+\s*)*)$",
    re.S)


class SessionState:
    """Parsed declarations plus options and the engine cache."""

    def __init__(self, horizon=None, seed=0, window=None):
        self.names = {}
        self.last_ring = None
        self.horizon = horizon
        self.seed = seed
        self.window = window
        self.cache = Session()

    def declare(self, name, obj, line=None):
        if name in self.names:
            raise ParseError(f"name {name!r} already declared", line)
        self.names[name] = obj
        if isinstance(obj, RingSpec):
            self.last_ring = obj

    def lookup(self, name, line=None):
        if name not in self.names:
            raise ParseError(f"undeclared name {name!r}", line)
        return self.names[name]


def _parse_flags(text, line):
    if not text:
        return ()
    flags = []
    for word in re.split(r"[\s,+]+", text.strip()):
        if not word:
            continue
        if word not in FLAG_NAMES:
            raise ParseError(f"unknown flag {word!r}", line)
        flags.append(FLAG_NAMES[word])
    return tuple(flags)


def _parse_ring(m, line):
    name, kind, body, flags = m.group(1), m.group(2), m.group(3), m.group(4)
    asserted = _parse_flags(flags, line)
    if kind == "poly":
        vars_ = [v.strip() for v in body.split(",") if v.strip()]
        return name, RingSpec.poly(*vars_, asserted=asserted)
    if kind == "semigroup":
        try:
            gens = [int(v) for v in body.split(",")]
        except ValueError as e:
            raise ParseError(f"semigroup generators must be integers: {e}",
                             line)
        return name, RingSpec.semigroup(*gens, asserted=asserted)
    if ";" not in body:
        raise ParseError("quotient(vars; relations) needs a ';'", line)
    varpart, relpart = body.split(";", 1)
    vars_ = [v.strip() for v in varpart.split(",") if v.strip()]
    rels = [r.strip() for r in relpart.split(",") if r.strip()]
    return name, RingSpec.quotient(vars_, rels, asserted=asserted)


def _parse_ideal(state, m, line):
    name, body = m.group(1), m.group(2)
    ring = state.last_ring
    if ring is None:
        raise ParseError("ideal declared before any ring", line)
    gens = [g.strip() for g in body.split(",") if g.strip()]
    if ring.kind == "semigroup":
        expos = []
        for g in gens:
            p = parse_polynomial(g, ("t",))
            if not p.is_monomial():
                raise ParseError(f"semigroup generator {g!r} must be a "
                                 "monomial t^e", line)
            expos.append(next(iter(p.terms))[0])
        return name, Ideal(ring, expos)
    try:
        return name, Ideal(ring, gens)
    except ValueError as e:
        raise ParseError(str(e), line)


def parse_session(text, horizon=None, seed=0, window=None):
    """Parse a full session; returns (state, commands) without running."""
    state = SessionState(horizon=horizon, seed=seed, window=window)
    commands = []
    for stmt, line in _split_statements(text):
        if m := _RING_RE.match(stmt):
            name, ring = _parse_ring(m, line)
            state.declare(name, ring, line)
        elif m := _MODULE_RE.match(stmt):
            name, kname = m.group(1), m.group(2)
            ring = state.last_ring
            if ring is None:
                raise ParseError("module declared before any ring", line)
            if kname == "0":
                K = ring.zero_ideal()
            else:
                K = state.lookup(kname, line)
                if not isinstance(K, Ideal):
                    raise ParseError(f"{kname!r} is not an ideal", line)
            state.declare(name, blowup.CyclicModule(
                ring, K, asserted=("cohen-macaulay",)), line)
        elif m := _IDEAL_RE.match(stmt):
            name, ideal = _parse_ideal(state, m, line)
            state.declare(name, ideal, line)
        elif m := _CMD_RE.match(stmt):
            op, argpart, optpart = m.group(1), m.group(2), m.group(3)
            args = [a.strip() for a in argpart.split(",") if a.strip()]
            opts = dict(re.findall(r"(horizon|seed|window)\s+(\d+)",
                                   optpart or ""))
            commands.append((op, args, {k: int(v) for k, v in opts.items()},
                             line))
        else:
            raise ParseError(f"cannot parse statement: {stmt!r}", line)
    return state, commands


def render_session(state, commands):
    """Pretty-print declarations and commands; reparsing round-trips."""
    out = []
    for name, obj in state.names.items():
        if isinstance(obj, RingSpec):
            flags = ""
            extra = sorted(obj.asserted - {"cohen-macaulay"}) \
                if obj.kind in ("poly", "semigroup") else sorted(obj.asserted)
            if extra:
                flags = " [" + ", ".join(
                    "cm" if f == "cohen-macaulay" else f for f in extra) + "]"
            if obj.kind == "poly":
                body = f"poly({', '.join(obj.varnames)})"
            elif obj.kind == "semigroup":
                body = f"semigroup({', '.join(map(str, obj.sg_gens))})"
            else:
                rels = ", ".join(poly_str(r, obj.varnames)
                                 for r in obj.relations)
                body = f"quotient({', '.join(obj.varnames)}; {rels})"
            out.append(f"ring {name} = {body}{flags}")
        elif isinstance(obj, Ideal):
            if obj.ring.kind == "semigroup":
                body = ", ".join(f"t^{e}" for e in obj.gens)
            else:
                body = ", ".join(poly_str(g, obj.ring.varnames)
                                 for g in obj.gens)
            out.append(f"ideal {name} = {body}")
        else:
            kn = "0" if obj.K.is_zero() else _name_of(state, obj.K)
            out.append(f"module {name} = cyclic({kn})")
    for op, args, opts, _ in commands:
        extra = "".join(f" {k} {v}" for k, v in sorted(opts.items()))
        out.append(f"compute {op}({', '.join(args)}){extra}")
    return ";\n".join(out) + (";" if out else "")


def _name_of(state, obj):
    for name, o in state.names.items():
        if o is obj:
            return name
    return "?"


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def jsonable(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, Polynomial):
        return repr(x)
    if isinstance(x, Ideal):
        if x.ring.kind == "semigroup":
            return [f"t^{e}" for e in x.gens]
        return [poly_str(g, x.ring.varnames) for g in x.gens]
    if isinstance(x, RingSpec):
        return repr(x)
    if isinstance(x, blowup.CyclicModule):
        return repr(x)
    if is_dataclass(x):
        return {k: jsonable(v) for k, v in x.__dict__.items()} \
            if hasattr(x, "__dict__") else \
            {f: jsonable(getattr(x, f)) for f in x.__dataclass_fields__}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        seq = sorted(x, key=repr) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in seq]
    return repr(x)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def _as_module(args, ring):
    """Pop a trailing module argument if present; default M = R."""
    if args and isinstance(args[-1], blowup.CyclicModule):
        return args[:-1], args[-1]
    return args, blowup.CyclicModule.free(ring)


def _resolve_args(state, raw_args, line=None):
    vals = []
    for a in raw_args:
        if a in state.names:
            vals.append(state.names[a])
        elif re.fullmatch(r"\d+", a):
            vals.append(int(a))
        else:
            ring = state.last_ring
            if ring is None:
                raise ParseError(f"unknown argument {a!r}", line)
            try:
                if ring.kind == "semigroup":
                    p = parse_polynomial(a, ("t",))
                    vals.append(next(iter(p.terms))[0])
                else:
                    vals.append(parse_polynomial(a, ring.varnames))
            except ValueError:
                raise ParseError(f"cannot interpret argument {a!r}", line)
    return vals


def _first_ideal(args, op):
    for a in args:
        if isinstance(a, Ideal):
            return a
    raise HypothesisError(f"{op} needs an ideal argument")


def run_command(state, op, raw_args, opts, line=None):
    """Execute one compute command; returns the Report dict."""
    ses = state.cache
    horizon = opts.get("horizon", state.horizon)
    seed = opts.get("seed", state.seed)
    window = opts.get("window", state.window)
    args = _resolve_args(state, raw_args, line)
    I = _first_ideal(args, op) if op != "dim" else None
    ring = I.ring if I is not None else args[0]
    args, M = _as_module(state, args, ring if I is None else I.ring, ses)

    def ideal_args(n):
        got = [a for a in args if isinstance(a, Ideal)]
        if len(got) != n:
            raise HypothesisError(f"{op} expects {n} ideal argument(s)")
        return got

    status = "certified"
    witnesses = []
    if op == "dim":
        result = {"dimension": engines.krull_dimension(ring)}
    elif op == "member":
        f = next(a for a in args if not isinstance(a, Ideal))
        result = {"member": engines.member(f, I, session=ses)}
    elif op == "colength":
        result = {"colength": engines.colength(I, session=ses)}
    elif op == "mingens":
        gens, nu, st = engines.minimal_generators(I, session=ses)
        result = {"nu": nu, "generators": gens, "minimality": st}
        status = "certified" if st == "exact" else "horizon-verified"
    elif op == "equals":
        a, b = ideal_args(2)
        result = {"equal": engines.equals(a, b, session=ses)}
    elif op == "rr":
        n = next((a for a in args if isinstance(a, int)), 1)
        rr = blowup.ratliff_rush(I, M, n=n, horizon=horizon, session=ses)
        status = rr.status
        result = {"power": n, "closure": rr.closure,
                  "stabilization_index": rr.stabilization_index,
                  "proper": rr.proper(session=ses)}
    elif op == "sstar":
        ss = blowup.sstar(I, M, horizon=horizon, session=ses)
        status = ss.status
        witnesses = list(ss.failure_witnesses)
        result = {"sstar": ss.value, "cross_checked": ss.cross_checked}
    elif op == "rednum":
        J, I2 = ideal_args(2)
        res = blowup.reduction_number(J, I2, M, horizon=horizon, session=ses)
        result = {"r": res.r, "witness": res.witness, "minimal": res.minimal}
    elif op == "minreduction":
        res = blowup.find_minimal_reduction(I, M, seed=seed, horizon=horizon,
                                            session=ses)
        result = {"J": res.J, "r": res.r, "seed": res.seed,
                  "coefficients": res.coefficients}
    elif op == "superficial":
        x = next(a for a in args if not isinstance(a, Ideal))
        chk = blowup.check_superficial(x, I, M, horizon=horizon, session=ses)
        status = chk.status
        witnesses = list(chk.failures)
        result = {"superficial": chk.ok, "stable_from": chk.start}
    elif op == "independence":
        pr = blowup.independence_probe(I, M, trials=5, seed=seed,
                                       horizon=horizon, session=ses)
        status = "certified" if pr.certification != "none" \
            else "horizon-verified"
        result = {"r_values": list(pr.r_values), "independent": pr.independent,
                  "certification": pr.certification}
    elif op == "reg":
        rep = regularity.regularity(I, M, horizon=horizon, seed=seed,
                                    session=ses)
        statuses = {rt.status for rt in rep.routes}
        status = "certified" if statuses == {"certified"} \
            else "horizon-verified"
        result = {"reg": rep.reg, "r_J": rep.r_j,
                  "routes": [(rt.name, rt.value, rt.status)
                             for rt in rep.routes],
                  "skipped": rep.skipped}
    elif op == "rtt":
        pr = regularity.rtt_probe(I, horizon=horizon, seed=seed, session=ses)
        status = pr["status"]
        result = pr
    elif op == "section":
        x = next(a for a in args if isinstance(a, Polynomial))
        result = regularity.section_compare(I, x, M, horizon=horizon,
                                            seed=seed, session=ses)
        status = "horizon-verified"
    elif op == "hilbert":
        n = next(a for a in args if isinstance(a, int))
        result = {"n": n, "value": hilbert.hilbert_function(I, n, session=ses)}
    elif op == "fit":
        summ = hilbert.fit_hilbert_polynomial(I, window=window, session=ses)
        status = summ.status
        result = {"coefficients": list(summ.coefficients),
                  "window": summ.window, "values": summ.values}
    elif op == "postulation":
        rho, st = hilbert.postulation_number(I, window=window, session=ses)
        status = st
        result = {"rho": rho}
    elif op == "marley":
        result = hilbert.marley_check(I, session=ses, seed=seed)
        status = "certified" if result["equal"] else "failed"
    elif op == "ulrich":
        rep = ulrich.is_ulrich(I, seed=seed, horizon=horizon, session=ses)
        status = "certified"
        result = {"verdict": rep.verdict, "reason": rep.reason, "r": rep.r,
                  "nu": rep.nu, "lambda": rep.lam,
                  "lambda_I_I2": rep.lam_i_i2, "free": rep.free,
                  "is_parameter": rep.is_parameter}
    elif op == "genitoh":
        result = ulrich.genitoh_check(I, seed=seed, horizon=horizon,
                                      session=ses)
        status = "certified" if result["constant"] else "failed"
    elif op == "rees":
        pres = rees.rees_presentation(I, session=ses)
        result = {"ambient": pres.ambient, "defining": pres.defining,
                  "t_degrees": list(pres.t_degrees),
                  "linear_part": pres.linear_part}
    elif op == "lintype":
        result = rees.lintype_from_rednum(I, seed=seed, horizon=horizon,
                                          session=ses)
        status = "certified" if result["certification"] != "none" \
            else "horizon-verified"
    else:
        raise ParseError(f"unknown operation {op!r}", line)
    return {
        "op": op,
        "inputs": list(raw_args),
        "options": {"horizon": horizon, "seed": seed, "window": window},
        "result": jsonable(result),
        "status": status,
        "witnesses": jsonable(witnesses),
    }


def run_session(text, horizon=None, seed=0, window=None):
    """Parse and execute; returns (reports, exit_code)."""
    state, commands = parse_session(text, horizon=horizon, seed=seed,
                                    window=window)
    reports = []
    code = 0
    for op, args, opts, line in commands:
        try:
            reports.append(run_command(state, op, args, opts, line))
        except ParseError as e:
            reports.append({"op": op, "inputs": args, "status": "failed",
                            "reason": str(e), "kind": "parse"})
            code = max(code, 1)
        except HorizonExhausted as e:
            reports.append({"op": op, "inputs": args, "status": "failed",
                            "reason": str(e), "kind": "horizon"})
            code = max(code, 3)
        except (HypothesisError, BlowupError) as e:
            reports.append({"op": op, "inputs": args, "status": "failed",
                            "reason": str(e), "kind": "hypothesis"})
            code = max(code, 2)
    return reports, code


# ---------------------------------------------------------------------------
# golden corpus
# ---------------------------------------------------------------------------

def golden_corpus(fast=False):
    """Run the named checks that pin the worked examples; returns reports."""
    from .corpus import CORPUS, run_corpus
    return run_corpus(fast=fast)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _emit(reports, pretty):
    for rep in reports:
        if pretty:
            print(f"== {rep.get('op', rep.get('name'))} "
                  f"[{rep.get('status', '')}]")
            for k, v in rep.items():
                if k in ("op", "name", "status"):
                    continue
                print(f"  {k}: {v}")
        else:
            print(json.dumps(rep))


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="blowup-lab",
        description="blowup-algebra invariants of zero-dimensional ideals")
    parser.add_argument("--horizon", type=int, default=None)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--window", type=int, default=None)
    parser.add_argument("--pretty", action="store_true")
    parser.add_argument("--json", action="store_true",
                        help="force JSON output (default)")
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run a session file")
    p_run.add_argument("file")
    p_eval = sub.add_parser("eval", help="run statements from the argument")
    p_eval.add_argument("text")
    p_corpus = sub.add_parser("corpus", help="run the golden example corpus")
    p_corpus.add_argument("--fast", action="store_true",
                          help="skip the slowest entries")
    args = parser.parse_args(argv)

    if args.command == "corpus":
        reports = golden_corpus(fast=args.fast)
        _emit(reports, args.pretty)
        return 0 if all(r["pass"] for r in reports) else 2

    if args.command == "run":
        try:
            with open(args.file, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            print(json.dumps({"status": "failed", "reason": str(e),
                              "kind": "parse"}))
            return 1
    else:
        text = args.text
    try:
        reports, code = run_session(text, horizon=args.horizon,
                                    seed=args.seed, window=args.window)
    except ParseError as e:
        print(json.dumps({"status": "failed", "reason": str(e),
                          "kind": "parse"}))
        return 1
    _emit(reports, args.pretty)
    return code


if __name__ == "__main__":
    sys.exit(main())
