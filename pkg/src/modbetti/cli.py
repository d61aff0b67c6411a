"""``modbetti`` command line.

Exit codes: 0 success, 1 invalid arguments, 2 capacity exceeded,
3 internal invariant violated (non-integral count, non-polynomial Poincare).
"""

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from importlib import resources
from pathlib import Path

from . import __version__
from .cache import ENV_VAR, ResultCache
from .counting import (CapacityError, IntegralityError, ZetaError, load_zeta, s_counts,
                       stable_counts)
from .extract import NonPolynomialError, SlopeRay, semistable_poincare, stable_hodge, stable_poincare
from .hnzagier import CharPair, poincare_r
from .render import csv_rows, decode, encode, latex, plain, to_csv

EXIT_OK, EXIT_USAGE, EXIT_CAPACITY, EXIT_INVARIANT = 0, 1, 2, 3

# symbolic jobs grow like 2^rank; count tables like K * ext extensions
MAX_RANK = 16
MAX_EXTENSIONS = 64

CONJECTURAL_NOTE = ("conjectural: the Hodge extraction rests on an unproven conjecture "
                    "and is reported without a guarantee")

CURVES = "data/curves"


class UsageError(Exception):
    pass


class JobCapacityError(Exception):
    pass


def _parser():
    p = argparse.ArgumentParser(
        prog="modbetti",
        description="Virtual Poincare/Hodge polynomials of moduli of stable bundles on curves "
                    "and counts of stable bundles over finite fields.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", "--rank", type=int, required=True)
    common.add_argument("-d", "--degree", type=int, required=True)
    common.add_argument("--format", choices=("plain", "json", "latex", "csv"), default="plain")
    common.add_argument("--out", type=Path, help="write the result here instead of stdout")
    common.add_argument("--no-cache", action="store_true", help="bypass the on-disk cache")
    common.add_argument("--cache-dir", type=Path,
                        help=f"on-disk cache location (default: ${ENV_VAR}, unset means no disk cache)")
    common.add_argument("--reduce-degree", action="store_true",
                        help="replace the degree by its residue mod the rank first")
    common.add_argument("--threads", type=int, default=1,
                        help="worker processes for independent coefficients")

    symbolic = argparse.ArgumentParser(add_help=False, parents=[common])
    symbolic.add_argument("-g", "--genus", type=int, required=True)

    sub.add_parser("poincare", parents=[symbolic],
                   help="virtual Poincare polynomial of the stable moduli space")
    sub.add_parser("hodge", parents=[symbolic],
                   help="conjectural virtual Hodge polynomial of the stable moduli space")
    sub.add_parser("semistable", parents=[symbolic],
                   help="Poincare function of the semistable moduli (Exp of stable ones)")
    sub.add_parser("zagier-r", parents=[symbolic],
                   help="Poincare function of the stack of semistable bundles")

    zeta = argparse.ArgumentParser(add_help=False, parents=[common])
    zeta.add_argument("--zeta", required=True,
                      help="zeta JSON file, or the name of a shipped curve (e.g. e_f2)")
    c = sub.add_parser("count", parents=[zeta],
                       help="absolutely stable bundle counts along the ray through (rank, degree)")
    c.add_argument("-K", "--order", type=int,
                   help="highest multiple of the primitive character (default: that of the input)")
    c.add_argument("-T", "--ext", type=int, default=1,
                   help="count over F_{q^j} for j = 1..EXT")
    s = sub.add_parser("s-count", parents=[zeta],
                       help="stable bundles over F_q with endomorphism field F_{q^r}")
    s.add_argument("-r", "--field-degree", type=int, default=1)
    return p


def _resolve_zeta(spec):
    path = Path(spec)
    if path.exists():
        return load_zeta(path), str(spec)
    name = spec[:-5] if spec.endswith(".json") else spec
    shipped = resources.files("modbetti").joinpath(f"{CURVES}/{Path(name).name}.json")
    if shipped.is_file():
        return load_zeta(json.loads(shipped.read_text())), Path(name).name
    raise UsageError(f"no zeta file or shipped curve named {spec!r}")


def _validate(args):
    if args.rank < 1:
        raise UsageError("--rank must be >= 1")
    if args.rank > MAX_RANK:
        raise JobCapacityError(f"rank {args.rank} exceeds the cap {MAX_RANK}")
    if getattr(args, "genus", 0) < 0:
        raise UsageError("--genus must be >= 0")
    if args.threads < 1:
        raise UsageError("--threads must be >= 1")
    if args.reduce_degree:
        args.degree %= args.rank


@contextmanager
def _mapper(threads):
    if threads == 1:
        yield None
        return
    with ProcessPoolExecutor(threads) as pool:
        yield pool.map


def _symbolic(args, mapper):
    alpha = CharPair(args.rank, args.degree)
    ray, k = SlopeRay.through(alpha, args.genus)
    if args.command == "poincare":
        return encode(stable_poincare(ray, k, mapper=mapper))
    if args.command == "hodge":
        res = stable_hodge(ray, k, mapper=mapper)
        return encode(res.value)
    if args.command == "semistable":
        return encode(semistable_poincare(ray, k, mapper=mapper))
    return encode(poincare_r(alpha, args.genus))


def _count(args, z, mapper):
    alpha = CharPair(args.rank, args.degree)
    ray, k = SlopeRay.through(alpha, z.g)
    K = args.order if args.order is not None else k
    if K < 1:
        raise UsageError("--order must be >= 1")
    if args.ext < 1:
        raise UsageError("--ext must be >= 1")
    T = K * args.ext
    if T > MAX_EXTENSIONS:
        raise JobCapacityError(f"order {K} times ext {args.ext} needs {T} extensions, "
                               f"more than the cap {MAX_EXTENSIONS}")
    table = stable_counts(ray, z, K, T, **({"mapper": mapper} if mapper else {}))
    return [{"k": kk, "ext": j, "a": table[(kk, j)]}
            for kk in range(1, K + 1) for j in range(1, args.ext + 1)]


def _s_count(args, z):
    r = args.field_degree
    if r < 1:
        raise UsageError("--field-degree must be >= 1")
    alpha = CharPair(args.rank, args.degree)
    if alpha.n % r == 0 and alpha.d % r == 0:
        need = CharPair(alpha.n // r, alpha.d // r).primitive()[1] * r
        if need > MAX_EXTENSIONS:
            raise JobCapacityError(f"needs {need} extensions, more than the cap {MAX_EXTENSIONS}")
    return s_counts(alpha, r, z)


def compute(args, cache):
    """The JSON payload of a job."""
    _validate(args)
    meta = {"command": args.command, "rank": args.rank, "degree": args.degree,
            "version": __version__}
    if args.command in ("count", "s-count"):
        z, source = _resolve_zeta(args.zeta)
        params = {"rank": args.rank, "degree": args.degree, "q": z.q, "genus": z.g,
                  "numerator": list(z.numerator)}
        meta.update(genus=z.g, q=z.q, zeta=source)
        if args.command == "count":
            params.update(order=args.order, ext=args.ext)
            with _mapper(args.threads) as mapper:
                counts = cache.fetch("count", params, lambda: _count(args, z, mapper))
            g = CharPair(args.rank, args.degree).primitive()[0]
            return {**meta, "ray": [g.n, g.d], "counts": counts}
        params.update(r=args.field_degree)
        s = cache.fetch("s-count", params, lambda: _s_count(args, z))
        return {**meta, "r": args.field_degree, "s": s}
    params = {"rank": args.rank, "degree": args.degree, "genus": args.genus}
    meta["genus"] = args.genus
    with _mapper(args.threads) as mapper:
        result = cache.fetch(args.command, params, lambda: _symbolic(args, mapper))
    out = {**meta, "result": result}
    if args.command == "hodge":
        out["conjectural"] = True
        out["polynomial"] = result["type"] == "polynomial2"
    return out


def _count_table(payload, fmt):
    rows = [(c["k"], c["ext"], c["a"]) for c in payload["counts"]]
    n, d = payload["ray"]
    if fmt == "csv":
        return to_csv([["k", "ext", "a"]] + [list(r) for r in rows])
    if fmt == "latex":
        body = "\n".join(rf"{k}\cdot({n},{d}) & {j} & {a} \\" for k, j, a in rows)
        return ("\\begin{tabular}{rrr}\n"
                rf"$\alpha$ & $j$ & $a_\alpha(\mathbb{{F}}_{{{payload['q']}^j}})$ \\" "\n"
                "\\hline\n" + body + "\n\\end{tabular}\n")
    lines = [f"{'k':>3} {'ext':>4}  a"]
    lines += [f"{k:>3} {j:>4}  {a}" for k, j, a in rows]
    return "\n".join(lines) + "\n"


def render(payload, fmt):
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    cmd = payload["command"]
    if cmd == "count":
        return _count_table(payload, fmt)
    if cmd == "s-count":
        s = payload["s"]
        return to_csv([["s"], [s]]) if fmt == "csv" else f"{s}\n"
    obj = decode(payload["result"])
    if fmt == "csv":
        return to_csv(csv_rows(obj))
    if fmt == "latex":
        text = latex(obj)
        if payload.get("conjectural"):
            text += rf"\footnote{{{CONJECTURAL_NOTE}.}}"
        return text + "\n"
    text = plain(obj)
    if payload.get("conjectural"):
        text += f"\n* {CONJECTURAL_NOTE}"
    return text + "\n"


def main(argv=None):
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    root = None if args.no_cache else (args.cache_dir or ResultCache.from_env().root)
    cache = ResultCache(root)
    try:
        payload = compute(args, cache)
        text = render(payload, args.format)
    except (JobCapacityError, CapacityError) as exc:
        print(f"modbetti: capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (UsageError, ZetaError, ValueError) as exc:
        print(f"modbetti: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonPolynomialError, IntegralityError, ArithmeticError, AssertionError) as exc:
        print(f"modbetti: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
