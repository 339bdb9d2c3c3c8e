"""Command-line front end.

    lagwords carlitz --counts 1,4,4,2
    lagwords avoid --k 3 --pattern 2-2 --order 5 --json
    lagwords verify cyclic-avoid --k 2 --m 2 --blocks 2 --order 10 --oracle-max-len 8

Exit codes: 0 success, 1 internal invariant failure or verification
mismatch, 2 usage error, 3 oracle budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from . import oracle, patterns
from .errors import BudgetExceeded, DivisionByTFailure, WordsError
from .model import MultisetSpec, VincularPattern

DEFAULT_ORDER = 12

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    pass


@dataclass
class QueryResult:
    command: str
    params: Dict[str, str]
    kind: str  # "integer" or "series"
    values: List[str]
    order: Optional[int] = None
    verified_to: Optional[int] = None
    notes: List[str] = field(default_factory=list, compare=False)

    def __post_init__(self):
        if self.kind not in ("integer", "series"):
            raise ValueError(f"unknown result kind {self.kind!r}")
        for v in self.values:
            int(v)
        if self.kind == "series" and len(self.values) != self.order + 1:
            raise ValueError("series values must have length order + 1")

    @property
    def status(self) -> str:
        return "unverified" if self.verified_to is None else f"verified-to-length-{self.verified_to}"

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "params": dict(self.params),
            "kind": self.kind,
            "values": list(self.values),
        }
        if self.order is not None:
            out["order"] = self.order
        if self.verified_to is not None:
            out["verified_to"] = self.verified_to
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "QueryResult":
        d = json.loads(text)
        return cls(
            command=d["command"],
            params={k: str(v) for k, v in d["params"].items()},
            kind=d["kind"],
            values=[str(v) for v in d["values"]],
            order=d.get("order"),
            verified_to=d.get("verified_to"),
        )

    def to_text(self) -> str:
        lines = list(self.notes)
        lines.append(",".join(self.values))
        return "\n".join(lines)


# --- argument parsing -------------------------------------------------------------


def _int_list(text: str) -> List[int]:
    try:
        out = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not out or any(n < 0 for n in out):
        raise argparse.ArgumentTypeError("expected nonnegative integers")
    return out


def _pattern(text: str) -> VincularPattern:
    try:
        return VincularPattern.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _pairs(text: str) -> MultisetSpec:
    try:
        return MultisetSpec.parse_pairs(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad --spec {text!r}: {exc}")


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return n


def _nonneg(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return n


def _add_commands(sub, verify: bool):
    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        if verify:
            p.add_argument("--oracle-max-len", type=_nonneg, default=8)
        return p

    p = add("carlitz", "arrangements of a multiset with no equal neighbours")
    p.add_argument("--counts", type=_int_list, required=True)

    p = add("run-limited", "arrangements with capped run lengths")
    p.add_argument("--spec", type=_pairs, required=True, help="n1:m1,n2:m2,... (count:cap)")

    p = add("avoid", "k-ary words avoiding a vincular pattern of ones")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--pattern", type=_pattern, required=True, help="block lengths, e.g. 2-2")
    p.add_argument("--order", type=_nonneg, default=DEFAULT_ORDER)

    p = add("cyclic-avoid", "k-ary words cyclically avoiding 1^m-...-1^m")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--blocks", type=_positive, default=1)
    p.add_argument("--order", type=_nonneg, default=DEFAULT_ORDER)

    p = add("cyclic-run-limited", "arrangements with no cyclic run of m equal letters")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--counts", type=_int_list, required=True)

    p = add("subword-avoid", "words from a letter multiset avoiding a subword")
    p.add_argument("--letters", required=True)
    p.add_argument("--forbidden", required=True)

    p = add("cyclic-carlitz-compositions", "compositions with cyclically distinct neighbours")
    p.add_argument("--order", type=_nonneg, default=DEFAULT_ORDER)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lagwords", description="Count restricted words with Laguerre series."
    )
    parser.add_argument("--json", action="store_true", default=False, help="structured output")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_commands(sub, verify=False)
    vp = sub.add_parser("verify", help="recompute a query by brute force and compare")
    vp.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    vsub = vp.add_subparsers(dest="target", required=True)
    _add_commands(vsub, verify=True)
    return parser


# --- commands --------------------------------------------------------------------------


def _params(args) -> Dict[str, str]:
    skip = {"command", "target", "json", "oracle_max_len"}
    out = {}
    for k, v in vars(args).items():
        if k in skip:
            continue
        if isinstance(v, list):
            v = ",".join(map(str, v))
        elif isinstance(v, MultisetSpec):
            v = ",".join(f"{n}:{m}" if m is not None else str(n) for _, n, m in v.entries)
        out[k] = str(v)
    return out


def _series_result(name, args, series) -> QueryResult:
    return QueryResult(name, _params(args), "series", [str(c) for c in series.integers()], order=series.order)


def _int_result(name, args, value: int) -> QueryResult:
    return QueryResult(name, _params(args), "integer", [str(value)])


def _compute(name: str, args) -> QueryResult:
    if name == "carlitz":
        return _int_result(name, args, patterns.carlitz_arrangements(args.counts))
    if name == "run-limited":
        for _, _, m in args.spec.entries:
            if m is None:
                raise UsageError("every --spec entry needs a cap (count:cap)")
        return _int_result(name, args, patterns.run_limited_arrangements(args.spec))
    if name == "avoid":
        return _series_result(name, args, patterns.vincular_avoiders_gf(args.k, args.pattern, args.order))
    if name == "cyclic-avoid":
        return _series_result(
            name, args, patterns.cyclic_avoiders_gf(args.k, args.m, args.blocks, args.order)
        )
    if name == "cyclic-run-limited":
        if args.m < 2:
            raise UsageError("--m must be at least 2")
        if 0 in args.counts:
            raise UsageError("--counts entries must be positive")
        return _int_result(
            name, args, patterns.cyclic_run_limited_arrangements(args.m, args.counts)
        )
    if name == "subword-avoid":
        if not args.forbidden:
            raise UsageError("--forbidden must be nonempty")
        return _int_result(name, args, patterns.subword_avoid_count(args.letters, args.forbidden))
    if name == "cyclic-carlitz-compositions":
        return _series_result(name, args, patterns.cyclic_carlitz_compositions_gf(args.order))
    raise UsageError(f"unknown command {name!r}")


def _oracle_series(name: str, args, length: int) -> List[int]:
    if name == "avoid":
        return [oracle.count_avoiding_words(args.k, args.pattern, n) for n in range(length + 1)]
    if name == "cyclic-avoid":
        pat = VincularPattern.uniform_pattern(args.m, args.blocks)
        return [oracle.count_cyclic_avoiding_words(args.k, pat, n) for n in range(length + 1)]
    if name == "cyclic-carlitz-compositions":
        def ok(c):
            return len(c) == 1 or (oracle.is_carlitz(c) and c[0] != c[-1])

        return [sum(1 for c in oracle.compositions(n) if c and ok(c)) for n in range(length + 1)]
    raise AssertionError(name)


def _oracle_integer(name: str, args, max_len: int) -> int:
    if name == "subword-avoid":
        spec = MultisetSpec.from_word(args.letters)
        size = spec.total
    elif name == "run-limited":
        spec = args.spec
        size = spec.total
    else:
        spec = MultisetSpec.from_counts(args.counts)
        size = spec.total
    if size > max_len:
        raise BudgetExceeded(f"query uses {size} letters, above --oracle-max-len {max_len}")
    if name == "carlitz":
        return oracle.count_arrangements(spec, oracle.is_carlitz)
    if name == "run-limited":
        return oracle.count_arrangements(spec, oracle.runs_below_caps(spec))
    if name == "cyclic-run-limited":
        pat = VincularPattern((args.m,))
        return oracle.count_arrangements(spec, lambda w: oracle.cyclically_avoids(w, pat))
    if name == "subword-avoid":
        forbidden = tuple(args.forbidden)
        return oracle.count_bounded_words(spec, lambda w: not oracle.contains_subword(w, forbidden))
    raise AssertionError(name)


def _verify(name: str, args) -> QueryResult:
    result = _compute(name, args)
    result.command = f"verify {name}"
    max_len = args.oracle_max_len
    if result.kind == "series":
        length = min(result.order, max_len)
        expected = _oracle_series(name, args, length)
        bad = []
        for n, want in enumerate(expected):
            got = int(result.values[n])
            mark = "ok" if got == want else "MISMATCH"
            result.notes.append(f"x^{n}: formula={got} oracle={want} {mark}")
            if got != want:
                bad.append(n)
        result.verified_to = length
        if bad:
            raise VerificationFailed(result, f"coefficients {bad} disagree with the oracle")
    else:
        want = _oracle_integer(name, args, max_len)
        got = int(result.values[0])
        result.notes.append(f"formula={got} oracle={want} {'ok' if got == want else 'MISMATCH'}")
        if got != want:
            raise VerificationFailed(result, "count disagrees with the oracle")
        result.verified_to = _integer_size(name, args)
    return result


def _integer_size(name: str, args) -> int:
    if name == "subword-avoid":
        return len(args.letters)
    if name == "run-limited":
        return args.spec.total
    return sum(args.counts)


def _emit(result: QueryResult, as_json: bool, stream):
    if as_json:
        print(result.to_json(), file=stream)
    else:
        print(result.to_text(), file=stream)


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    as_json = getattr(args, "json", False)
    try:
        if args.command == "verify":
            result = _verify(args.target, args)
        else:
            result = _compute(args.command, args)
    except VerificationFailed as exc:
        result, message = exc.args
        _emit(result, as_json, stdout)
        print(f"lagwords: verification failed: {message}", file=stderr)
        return EXIT_INTERNAL
    except BudgetExceeded as exc:
        print(f"lagwords: budget exceeded: {exc}", file=stderr)
        return EXIT_BUDGET
    except (DivisionByTFailure, ArithmeticError) as exc:
        print(f"lagwords: internal invariant failure: {exc}", file=stderr)
        return EXIT_INTERNAL
    except (UsageError, WordsError, ValueError) as exc:
        print(f"lagwords: {exc}", file=stderr)
        return EXIT_USAGE
    _emit(result, as_json, stdout)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
