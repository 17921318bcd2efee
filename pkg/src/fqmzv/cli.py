"""Command line entry point: ``fqmzv powersum|zeta|classify|verify|search``.

Records are printed as JSON lines (or a plain table with ``--format table``).
Exit status: 0 on success, 1 when a verification suite has failures, 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .digits import is_q_even, l_value
from .field import FieldError, PrimeModulus, field_for_q, make_field, primes_of_degree
from .harness import SUITES, GridSpec, HarnessError, replay, run_suite, search_conjecture
from .mzv import (
    MZVDomainError,
    is_trivial_zero_all_primes,
    is_trivial_zero_inf,
    is_trivial_zero_v,
    zeta_inf,
    zeta_v,
)
from .powersum import CostGuardError, s_enumerate, s_formula, s_twisted

# flags whose values routinely start with "-"
_NEGATIVE_VALUED = {"--tuple", "--s"}


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_field_args(p):
    p.add_argument("--q", type=int, help="field size q = p^f")
    p.add_argument("--p", type=int, help="characteristic (with --f)")
    p.add_argument("--f", type=int, default=1, help="extension degree (with --p)")


def _add_output_args(p):
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--out", help="also write JSON lines to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fqmzv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("powersum", help="S_d(s), or the v-coprime sum with --prime")
    _add_field_args(ps)
    ps.add_argument("--d", type=int, required=True)
    ps.add_argument("--s", type=int, required=True)
    ps.add_argument("--prime")
    ps.add_argument("--method", choices=("direct", "formula", "both"), default="formula")
    _add_output_args(ps)

    z = sub.add_parser("zeta", help="evaluate and classify a zeta value")
    _add_field_args(z)
    z.add_argument("--tuple", type=_int_list, required=True)
    z.add_argument("--prime")
    z.add_argument("--prime-degree", type=int)
    z.add_argument("--literal", action="store_true",
                   help="trivial-zero conditions use only entries s_i < 0")
    _add_output_args(z)

    c = sub.add_parser("classify", help="trivial-zero classification without evaluating")
    _add_field_args(c)
    c.add_argument("--tuple", type=_int_list, required=True)
    c.add_argument("--prime")
    c.add_argument("--prime-degree", type=int)
    c.add_argument("--literal", action="store_true")
    _add_output_args(c)

    for name, helptext in (("verify", "run a verification suite"), ("search", "conjecture counterexample search")):
        v = sub.add_parser(name, help=helptext)
        v.add_argument("--q", type=_int_list, help="comma-separated field sizes")
        v.add_argument("--max-s", type=int)
        v.add_argument("--min-s", type=int)
        v.add_argument("--max-d", type=int)
        v.add_argument("--max-depth", type=int)
        v.add_argument("--prime-degree", type=_int_list)
        v.add_argument("--jobs", type=int, default=1)
        v.add_argument("--resume", action="store_true")
        _add_output_args(v)
        if name == "verify":
            v.add_argument("--suite", choices=SUITES + ("all",))
            v.add_argument("--replay", help="JSON-lines file of records to re-run")
    return parser


def _field(args):
    if args.q is not None:
        return field_for_q(args.q)
    if args.p is not None:
        return make_field(args.p, args.f)
    raise UsageError("give --q, or --p with --f")


def _primes(args, fp):
    if args.prime and args.prime_degree:
        raise UsageError("--prime and --prime-degree are mutually exclusive")
    if args.prime:
        return [PrimeModulus.from_text(fp, args.prime)]
    if args.prime_degree:
        return list(primes_of_degree(fp, args.prime_degree))
    return []


class _Emitter:
    def __init__(self, fmt: str, out: str | None = None):
        self.fmt = fmt
        self.fh = open(out, "w") if out else None

    def __call__(self, rec: dict):
        line = json.dumps(rec)
        if self.fmt == "json":
            print(line)
        else:
            print("  ".join(f"{k}={_short(v)}" for k, v in rec.items()))
        if self.fh:
            self.fh.write(line + "\n")

    def close(self):
        if self.fh:
            self.fh.close()


def _short(v):
    return v if isinstance(v, (str, int, bool)) or v is None else json.dumps(v)


def _cmd_powersum(args, emit):
    fp = _field(args)
    v = PrimeModulus.from_text(fp, args.prime) if args.prime else None
    results = []
    if args.method in ("direct", "both"):
        results.append(s_enumerate(args.d, args.s, fp, v))
    if args.method in ("formula", "both"):
        results.append(s_formula(args.d, args.s, fp) if v is None else s_twisted(args.d, args.s, fp, v))
    agree = len({r.value for r in results}) == 1
    for r in results:
        rec = r.to_json()
        if args.method == "both":
            rec["agree"] = agree
        emit(rec)
    return 0


def _cmd_zeta(args, emit):
    fp = _field(args)
    include = not args.literal
    primes = _primes(args, fp)
    if not primes:
        emit(zeta_inf(args.tuple, fp, include).to_json())
    for v in primes:
        emit(zeta_v(args.tuple, fp, v, include).to_json())
    return 0


def _check_json(chk):
    return {"trivial": chk.holds, "witness": None if chk.witness is None else list(chk.witness),
            "condition": chk.condition}


def _cmd_classify(args, emit):
    fp = _field(args)
    s = args.tuple
    include = not args.literal
    base = {"q": fp.q, "s": s, "L": [str(l_value(-x, fp)) if x <= 0 else None for x in s]}
    if len(s) == 1:
        emit({**base, "q_even": is_q_even(s[0], fp)})
        return 0
    primes = _primes(args, fp)
    if primes:
        for v in primes:
            emit({**base, "v": str(v), **_check_json(is_trivial_zero_v(s, fp, v, include))})
        return 0
    allp = is_trivial_zero_all_primes(s, fp, include)
    emit({**base, "v": None, "inf": _check_json(is_trivial_zero_inf(s, fp, include)),
          "all_primes": allp.holds,
          "per_degree": {str(e): _check_json(c) for e, c in allp.per_degree.items()}})
    return 0


def _grid(args, suite):
    defaults = {
        "twisted-vanishing": {"prime_degrees": (1, 2)},
        "trivial-sufficiency": {"prime_degrees": (1, 2)},
        "conjecture": {"prime_degrees": (2,), "min_s": 1, "max_s": 8, "depths": (2, 3)},
    }.get(suite, {})
    kw = dict(defaults)
    if args.q:
        kw["q_list"] = tuple(args.q)
    if args.max_s is not None:
        kw["max_s"] = args.max_s
    if args.min_s is not None:
        kw["min_s"] = args.min_s
    if args.max_d is not None:
        kw["max_d"] = args.max_d
    if args.max_depth is not None:
        lo = 2 if suite == "conjecture" else 1
        kw["depths"] = tuple(range(lo, args.max_depth + 1))
    if args.prime_degree:
        kw["prime_degrees"] = tuple(args.prime_degree)
    return GridSpec(**kw)


def _cmd_verify(args, emit):
    if args.replay:
        status = 0
        with open(args.replay) as fh:
            for line in fh:
                rec = json.loads(line)
                if "cell" not in rec:
                    continue
                again = replay(rec)
                emit(again)
                if again != rec or not again["ok"]:
                    status = 1
        return status
    if not args.suite:
        raise UsageError("--suite is required (or --replay)")
    names = SUITES if args.suite == "all" else (args.suite,)
    status = 0
    for name in names:
        out = args.out if len(names) == 1 else (f"{args.out}.{name}" if args.out else None)
        report = run_suite(name, _grid(args, name), jobs=args.jobs, out=out, resume=args.resume, emit=emit)
        emit({"summary": report.summary()})
        if not report.passed:
            status = 1
    return status


def _cmd_search(args, emit):
    report = search_conjecture(_grid(args, "conjecture"), jobs=args.jobs, out=args.out,
                               resume=args.resume, emit=emit)
    emit({"summary": report.summary()})
    return 0 if report.passed else 1


def _join_negative_values(argv):
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _NEGATIVE_VALUED:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(_join_negative_values(argv))
    file_out = args.out if args.command in ("powersum", "zeta", "classify") else None
    emit = _Emitter(args.format, file_out)
    try:
        handler = {
            "powersum": _cmd_powersum,
            "zeta": _cmd_zeta,
            "classify": _cmd_classify,
            "verify": _cmd_verify,
            "search": _cmd_search,
        }[args.command]
        return handler(args, emit)
    except BrokenPipeError:
        # downstream reader (e.g. head) closed the pipe
        sys.stdout = open(os.devnull, "w")
        return 0
    except (UsageError, FieldError, MZVDomainError, HarnessError, CostGuardError, ValueError) as exc:
        print(f"fqmzv {args.command}: error: {exc}", file=sys.stderr)
        return 2
    finally:
        emit.close()


if __name__ == "__main__":
    sys.exit(main())
