"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 a mathematical check failed,
3 a computation budget was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from . import cyclotomic, grid_count, quasipoly, series
from .cache import ResultCache, default_path
from .cyclotomic import BudgetExceededError, IdentityCheckError

EXIT_OK, EXIT_USAGE, EXIT_CHECK, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    def __init__(self, failures: Sequence[str]) -> None:
        super().__init__("; ".join(failures))
        self.failures = list(failures)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: error: {message}")


def _trunc(t) -> dict:
    return {"residue": str(t.residue), "precision": t.precision}


def _failed_checks(record: dict) -> list[str]:
    return [f"n={record.get('n')}: {name}" for name, ok in record.get("checks", {}).items() if not ok]


# -- record builders (module level so a process pool can pickle them) --------


def count_record(n: int, kernel: Optional[str] = None) -> dict:
    fac = grid_count.factor_square_count(n, kernel=kernel)
    return {
        "n": n,
        "count": str(fac.count),
        "two_exponent": fac.two_exponent,
        "odd_root": str(fac.odd_root),
        "checks": {
            "two_exponent_equals_n": fac.two_exponent == n,
            "odd_root_is_odd": fac.odd_root % 2 == 1,
        },
    }


def f_record(n: int, method: Optional[str]) -> dict:
    values: dict[str, int] = {}
    budget_errors: list[str] = []
    for name in (method,) if method else ("dp", "cyclo"):
        try:
            if name == "dp":
                values[name] = grid_count.factor_square_count(n).odd_root
            else:
                values[name] = cyclotomic.f_exact(n)
        except BudgetExceededError as exc:
            budget_errors.append(f"{name}: {exc}")
    if not values:
        raise BudgetExceededError("; ".join(budget_errors))
    first = next(iter(values.values()))
    record = {"n": n, "f": str(first), "methods": sorted(values)}
    if len(values) > 1:
        record["checks"] = {"dp_equals_cyclo": values["dp"] == values["cyclo"]}
    return record


def fmod_record(n: int, bits: int, path: str = "auto") -> dict:
    return {"n": n, "f_mod": _trunc(quasipoly.f_mod_any(n, bits, path=path))}


def _run_check(fn: Callable[[int], object], n: int) -> tuple[bool, object]:
    try:
        return True, fn(n)
    except IdentityCheckError as exc:
        return False, str(exc)


def lemma_record(n: int) -> dict:
    ok_unit, unit = _run_check(cyclotomic.unit_product, n)
    ok_pair, pair = _run_check(cyclotomic.pair_product_sign, n)
    ok_cos, cos = _run_check(cyclotomic.cos_product_sign, n)
    ok_full, full = _run_check(cyclotomic.full_product_check, n)
    ok_f, f = _run_check(cyclotomic.f_exact, n)
    expected_sign = cyclotomic.floor_sign(n)
    return {
        "n": n,
        "pair_sign": pair if ok_pair else None,
        "cos_sign": cos if ok_cos else None,
        "checks": {
            "unit_product": ok_unit and unit == 1,
            "pair_product_sign": ok_pair and pair == cyclotomic.expected_pair_sign(n),
            "cos_product_sign": ok_cos and cos == expected_sign,
            "full_product_check": ok_full and full == (n, expected_sign),
            "f_congruent_pair_sign_mod4": ok_f and ok_pair and (f - pair) % 4 == 0,
        },
    }


def functional_record(n: int, bits: int) -> dict:
    rep = quasipoly.functional_check(n, bits)
    return {
        "n": n,
        "bits": bits,
        "sign": rep.sign,
        "lhs": _trunc(rep.lhs),
        "rhs": _trunc(rep.rhs),
        "checks": {"functional_equation": rep.passed},
    }


def continuity_record(n_max: int, bits: int) -> dict:
    rep = quasipoly.continuity_scan(n_max, bits)
    return {
        "n_max": n_max,
        "bits": bits,
        "ell": rep.ell,
        "witness": list(rep.witness) if rep.witness else None,
        "vacuous": rep.vacuous,
    }


def uk_record(k: int, n: int) -> dict:
    if n >= 0:
        value = series.u_values(n, k)[k - 1]
    else:
        value = quasipoly.evaluate(quasipoly.fit_u(k), n)
    return {"n": n, "k": k, "u": str(value)}


def quasi_record(k: int) -> dict:
    fitted = quasipoly.fit_u_full(k)
    return {
        "k": k,
        "degree": fitted.quasi.degree,
        **fitted.quasi.to_json(),
        "window": [0, fitted.window],
        "held_out": list(fitted.held_out),
        "checks": {"reflection": quasipoly.check_reflection(fitted.quasi)},
    }


# -- output ------------------------------------------------------------------


def _flatten(record: dict, prefix: str = "") -> dict:
    out = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(_flatten(value, name + "."))
        elif isinstance(value, list):
            out[name] = " ".join(str(v) for v in value)
        else:
            out[name] = "" if value is None else value
    return out


def render(records: Sequence[dict], fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(r, separators=(",", ":")) + "\n" for r in records)
    rows = [_flatten(r) for r in records]
    columns: list[str] = []
    for row in rows:
        columns.extend(c for c in row if c not in columns)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    if len(rows) == 1:
        width = max(len(c) for c in columns)
        return "".join(f"{c.ljust(width)}  {rows[0][c]}\n" for c in columns)
    cells = [[str(row.get(c, "")) for c in columns] for row in rows]
    widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


# -- sweeps ------------------------------------------------------------------


def _sweep(
    cache: ResultCache,
    command: str,
    ns: Iterable[int],
    bits: Optional[int],
    build: Callable,
    args: tuple,
    jobs: int,
) -> list[dict]:
    results: dict[int, dict] = {}
    todo = []
    for n in ns:
        hit = cache.get(command, n, bits)
        if hit is not None:
            results[n] = hit
        else:
            todo.append(n)
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            computed = list(pool.map(build, todo, *[[a] * len(todo) for a in args]))
    else:
        computed = [build(n, *args) for n in todo]
    for n, record in zip(todo, computed):
        cache.put(command, n, bits, record)
        results[n] = record
    return [results[n] for n in sorted(results)]


def _cached(cache: ResultCache, command: str, n: int, bits: Optional[int], build: Callable[[], dict]) -> dict:
    hit = cache.get(command, n, bits)
    if hit is not None:
        return hit
    record = build()
    cache.put(command, n, bits, record)
    return record


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--cache", default=None, help="JSON-lines cache file (default: $DOMINO2ADIC_CACHE)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")

    parser = _Parser(prog="domino2adic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", parents=[common], help="tiling count of the 2n x 2n board")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kernel", choices=sorted(grid_count.KERNELS), default=None)

    p = sub.add_parser("f", parents=[common], help="f(n) exactly")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("dp", "cyclo"), default=None)

    p = sub.add_parser("fmod", parents=[common], help="f(n) mod 2^bits (any integer n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--path", choices=("auto", "series", "quasi"), default="auto")

    verify = sub.add_parser("verify", help="identity sweeps")
    vsub = verify.add_subparsers(dest="what", required=True, parser_class=_Parser)
    p = vsub.add_parser("lemmas", parents=[common])
    p.add_argument("--n-max", type=int, required=True)
    p = vsub.add_parser("functional", parents=[common])
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--bits", type=int, required=True)

    scan = sub.add_parser("scan", help="empirical scans")
    ssub = scan.add_subparsers(dest="what", required=True, parser_class=_Parser)
    p = ssub.add_parser("continuity", parents=[common])
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--bits", type=int, required=True)

    p = sub.add_parser("uk", parents=[common], help="U_k(n) as an exact rational")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    quasi = sub.add_parser("quasi", help="quasi-polynomial fits")
    qsub = quasi.add_subparsers(dest="what", required=True, parser_class=_Parser)
    p = qsub.add_parser("fit", parents=[common])
    p.add_argument("--k", type=int, required=True)
    return parser


def _dispatch(args: argparse.Namespace, cache: ResultCache) -> list[dict]:
    cmd = args.command
    if cmd == "count":
        if args.n < 0:
            raise UsageError("--n must be >= 0")
        return [_cached(cache, "count", args.n, None, lambda: count_record(args.n, args.kernel))]
    if cmd == "f":
        if args.n < 0:
            raise UsageError("--n must be >= 0 (use fmod for negative n)")
        key = f"f:{args.method or 'both'}"
        return [_cached(cache, key, args.n, None, lambda: f_record(args.n, args.method))]
    if cmd == "fmod":
        if args.bits < 2:
            raise UsageError("--bits must be >= 2")
        if args.path == "series" and args.n < 0:
            raise UsageError("the series path needs n >= 0")
        return [_cached(cache, "fmod", args.n, args.bits, lambda: fmod_record(args.n, args.bits, args.path))]
    if cmd == "verify" and args.what == "lemmas":
        if args.n_max < 1:
            raise UsageError("--n-max must be >= 1")
        if args.n_max > cyclotomic.DEFAULT_MAX_N:
            raise BudgetExceededError(f"lemma sweep is limited to n <= {cyclotomic.DEFAULT_MAX_N}")
        return _sweep(cache, "verify-lemmas", range(1, args.n_max + 1), None, lemma_record, (), args.jobs)
    if cmd == "verify" and args.what == "functional":
        if args.n_max < 0 or args.bits < 2:
            raise UsageError("need --n-max >= 0 and --bits >= 2")
        return _sweep(
            cache, "verify-functional", range(args.n_max + 1), args.bits,
            functional_record, (args.bits,), args.jobs,
        )
    if cmd == "scan":
        if args.n_max < 1 or args.bits < 1:
            raise UsageError("need --n-max >= 1 and --bits >= 1")
        return [_cached(cache, "scan-continuity", args.n_max, args.bits,
                        lambda: continuity_record(args.n_max, args.bits))]
    if cmd == "uk":
        if args.k < 1:
            raise UsageError("--k must be >= 1")
        return [_cached(cache, f"uk:{args.k}", args.n, None, lambda: uk_record(args.k, args.n))]
    if cmd == "quasi":
        if args.k < 1:
            raise UsageError("--k must be >= 1")
        return [_cached(cache, "quasi-fit", args.k, None, lambda: quasi_record(args.k))]
    raise UsageError(f"unknown command {cmd!r}")


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        cache = ResultCache(args.cache or default_path())
        records = _dispatch(args, cache)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=stderr)
        return EXIT_BUDGET
    except IdentityCheckError as exc:
        print(f"check failed: {exc}", file=stderr)
        return EXIT_CHECK
    stdout.write(render(records, args.format))
    failures = [f for r in records for f in _failed_checks(r)]
    if failures:
        for f in failures:
            print(f"check failed: {f}", file=stderr)
        return EXIT_CHECK
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
