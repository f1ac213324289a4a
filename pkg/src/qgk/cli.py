r"""
Command-line front end.

Every command reads a quiver from a JSON file ({"vertices": [...],
"arrows": [[s, t], ...]}), computes one table, and prints it sorted by
(|d|, lex) either as TSV (dimension vector, tab, value columns) or as a
JSON document.  Both formats carry the same data; the JSON form is also
what the on-disk cache stores, keyed by (schema version, quiver hash,
command line essentials, bound, flavour), written atomically.

Exit codes: 0 success, 1 invalid input or exceeded size budgets, 2 a
violated internal invariant (positivity, integrality, reconstruction),
reported with the offending dimension vector.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile

from ._burnside import BudgetError, CountingError
from .cuspidal import (
    CuspidalError,
    absolutely_cuspidal,
    cuspidal_from_abs,
    ip_table,
)
from .gkm import (
    AmbiguousDecompositionError,
    GkmError,
    WeightFunction,
    gkm_character,
    gkm_dims,
    uea_character,
)
from .kac import DEFAULT_FIELDS, FLAVOURS, hua_kac, oracle_kac_full
from .nakajima import NakajimaError, lw_decompose
from .qpoly import QPoly, QPolyError
from .quiver import DimVector, Quiver, QuiverError
from .roots import (
    CartanDatum,
    RootError,
    canonical_decomposition,
    phi_plus,
    positive_roots,
    weyl_reflect,
)
from .series import PlethMode, SeriesError, pleth_exp, pleth_log, vectors_up_to

CACHE_SCHEMA = 1

IP_CONVENTION = (
    "coefficients of v^j count IH^j classes, shifted so a smooth n-dimensional "
    "component contributes v^-n; the printed variable q stands for v"
)

_COMMANDS = (
    "roots",
    "kac",
    "cuspidal",
    "ip",
    "canonical-decomp",
    "gkm-dims",
    "nakajima-decomp",
    "verify",
)


class InputError(ValueError):
    pass


# -- plumbing ---------------------------------------------------------------------


def _load_quiver(path: str) -> Quiver:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read quiver file: {exc}") from None
    return Quiver.from_json(text)


def _parse_dim(quiver: Quiver, text: str) -> DimVector:
    parts = text.split(",")
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise InputError(f"bad dimension vector {text!r}") from None
    return DimVector(quiver, values)


def _parse_fields(text: str) -> tuple[int, ...]:
    try:
        fields = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise InputError(f"bad prime-power list {text!r}") from None
    if len(set(fields)) != len(fields) or any(v < 2 or v > 16 for v in fields):
        raise InputError("prime powers must be distinct and between 2 and 16")
    return fields


def _csv(d: tuple[int, ...]) -> str:
    return ",".join(str(n) for n in d)


def _sorted_keys(table: dict[tuple[int, ...], QPoly]) -> list[tuple[int, ...]]:
    return sorted(table, key=lambda t: (sum(t), t))


def _poly_rows(table: dict[tuple[int, ...], QPoly]) -> list[list[str]]:
    return [[_csv(d), str(table[d])] for d in _sorted_keys(table)]


def _quiver_hash(quiver: Quiver) -> str:
    blob = json.dumps(quiver.to_json_dict(), separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


# -- cache ------------------------------------------------------------------------


def _cache_dir(cli_value: str | None) -> str | None:
    return os.environ.get("QGK_CACHE_DIR") or cli_value


def _cache_path(directory: str, quiver: Quiver, essence: str, bound: int, flavour: str) -> str:
    key = hashlib.sha256(
        "|".join(
            [str(CACHE_SCHEMA), _quiver_hash(quiver), essence, str(bound), flavour]
        ).encode()
    ).hexdigest()
    return os.path.join(directory, f"qgk-{key}.json")


def _cache_read(path: str) -> dict | None:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None


def _cache_write(path: str, payload: dict) -> None:
    directory = os.path.dirname(path)
    os.makedirs(directory, exist_ok=True)
    fd, temp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1)
        os.replace(temp, path)
    except OSError:
        try:
            os.unlink(temp)
        except OSError:
            pass


# -- command payloads -------------------------------------------------------------


def _cmd_roots(quiver: Quiver, args) -> dict:
    tables = phi_plus(CartanDatum.from_quiver(quiver), args.bound)
    rows = []
    for entry in tables.phi_list():
        rows.append(
            {
                "d": _csv(entry.vector),
                "class": entry.classification,
                "sigma": tables.in_sigma(entry.vector),
                "primitive": _csv(entry.primitive),
                "multiplier": entry.multiplier,
            }
        )
    return {"rows": rows}


def _cmd_kac(quiver: Quiver, args) -> dict:
    if args.method == "hua":
        if args.flavour != "plain":
            raise InputError("nilpotent flavours are oracle-only; use --method oracle")
        table = hua_kac(quiver, args.bound, workers=args.workers)
    else:
        table = oracle_kac_full(quiver, args.bound, args.flavour, args.fields)
    return {"rows": [[_csv(d), str(p)] for d, p in table.items()]}


def _cmd_cuspidal(quiver: Quiver, args) -> dict:
    table = absolutely_cuspidal(quiver, args.bound, args.flavour, args.fields)
    derived = cuspidal_from_abs(table)
    return {
        "cabs": [[_csv(d), str(p)] for d, p in table.items()],
        "c": [[_csv(d), str(p)] for d, p in derived.items()],
    }


def _cmd_ip(quiver: Quiver, args) -> dict:
    if args.dim is not None:
        d = _parse_dim(quiver, args.dim)
        if d.is_zero():
            raise InputError("--dim must be nonzero")
        table = ip_table(quiver, d.total, args.flavour, args.fields)
        rows = [[_csv(d.as_tuple()), str(table[d.as_tuple()])]]
    else:
        rows = _poly_rows(ip_table(quiver, args.bound, args.flavour, args.fields))
    return {"convention": IP_CONVENTION, "rows": rows}


def _cmd_canonical(quiver: Quiver, args) -> dict:
    if args.dim is not None:
        d = _parse_dim(quiver, args.dim)
        if d.is_zero():
            raise InputError("--dim must be nonzero")
        vectors = [d.as_tuple()]
    else:
        vectors = [d for d in vectors_up_to(len(quiver.vertices), args.bound) if any(d)]
    rows = []
    for d in vectors:
        decomposition = canonical_decomposition(quiver, DimVector(quiver, d))
        rows.append(
            [
                _csv(d),
                " ".join(f"{_csv(p.as_tuple())}:{m}" for p, m in decomposition),
            ]
        )
    return {"rows": rows}


def _load_weights(quiver: Quiver, path: str) -> WeightFunction:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read weight file: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("weights"), dict):
        raise InputError('weight file must be {"weights": {"d,e": {half: coeff}}}')
    table = {}
    for key, encoded in data["weights"].items():
        d = _parse_dim(quiver, key).as_tuple()
        if not isinstance(encoded, dict):
            raise InputError(f"bad weight entry at {key!r}")
        try:
            poly = QPoly.from_json_dict(encoded)
        except QPolyError as exc:
            raise InputError(f"bad weight polynomial at {key!r}: {exc}") from None
        bad = not poly.has_integer_coefficients() or not poly.has_nonnegative_coefficients()
        if bad or any(half % 2 for half, _ in poly.items()):
            raise InputError(
                f"weight at {key!r} must have nonnegative integer coefficients "
                "in even half-degrees"
            )
        table[d] = poly
    return WeightFunction(quiver, table)


def _cmd_gkm_dims(quiver: Quiver, args) -> dict:
    if args.from_kac == (args.weights is not None):
        raise InputError("exactly one of --from-kac and --weights is required")
    if args.from_kac:
        table = absolutely_cuspidal(quiver, args.bound, args.flavour, args.fields)
        weights = WeightFunction(quiver, dict(table.table))
    else:
        weights = _load_weights(quiver, args.weights)
    dims = gkm_dims(CartanDatum.from_quiver(quiver), weights, args.bound, args.workers)
    rows = []
    for d in sorted(dims.dims, key=lambda t: (sum(t), t)):
        for j in sorted(dims.dims[d]):
            rows.append([_csv(d), str(j), str(dims.dims[d][j])])
    return {"rows": rows}


def _cmd_nakajima(quiver: Quiver, args) -> dict:
    if args.framing is None:
        raise InputError("nakajima-decomp requires --framing")
    framing = _parse_dim(quiver, args.framing)
    decomposition = lw_decompose(quiver, framing, args.bound)
    blocks = []
    for block in decomposition.blocks:
        character = {_csv(e): str(p) for e, p in block.character.items()}
        blocks.append(
            {
                "d": _csv(block.vector),
                "multiplicity": str(block.multiplicity),
                "weight": list(block.weight),
                "character": character,
            }
        )
    return {"blocks": blocks}


def _cmd_verify(quiver: Quiver, args) -> dict:
    results = []

    def check(name: str, thunk) -> None:
        try:
            ok, detail = thunk()
        except Exception as exc:  # noqa: BLE001 - verification must report, not crash
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append({"property": name, "ok": bool(ok), "detail": detail})

    bound = args.bound
    cartan = CartanDatum.from_quiver(quiver)

    def hua_vs_oracle():
        hua = hua_kac(quiver, bound).to_series()
        small = min(bound, 3 if len(quiver.vertices) == 1 else 2)
        oracle = oracle_kac_full(quiver, small, "plain", args.fields)
        bad = [d for d, p in oracle.items() if hua.coeff(d) != p]
        return not bad, f"mismatch at {bad[:1]}" if bad else f"agree to |d| <= {small}"

    def orientation():
        flipped = Quiver(list(quiver.vertices), [(t, s) for s, t in quiver.arrows])
        same = hua_kac(quiver, bound).table == hua_kac(flipped, bound).table
        return same, "A-table invariant under arrow reversal"

    def weyl():
        table = hua_kac(quiver, bound).to_series()
        free = [v for v in quiver.vertices if quiver.loops_at(v) == 0]
        seen = 0
        for d in vectors_up_to(len(quiver.vertices), bound):
            if not any(d):
                continue
            for length in range(1, 4):
                for word in _words(free, length):
                    image = DimVector(quiver, d)
                    for v in word:
                        image = weyl_reflect(quiver, v, image)
                    tup = image.as_tuple()
                    if any(n < 0 for n in tup) or sum(tup) > bound:
                        continue
                    seen += 1
                    if table.coeff(d) != table.coeff(tup):
                        return False, f"A differs along {word} at {d}"
        return True, f"checked {seen} reflected pairs"

    def kac_support():
        table = hua_kac(quiver, bound)
        roots = {r.as_tuple() for r in positive_roots(quiver, bound)}
        stored = set(table.table)
        return stored == roots, "A_d nonzero exactly on positive roots"

    def cuspidal_shape():
        absolutely_cuspidal(quiver, bound)
        return True, "support, degree, monicity, positivity asserted"

    def gkm_roundtrip():
        kac = hua_kac(quiver, bound).to_series()
        table = absolutely_cuspidal(quiver, bound)
        weights = WeightFunction(quiver, dict(table.table))
        dims = gkm_dims(cartan, weights, bound, args.workers)
        back = gkm_character(dims)
        same = all(
            back.coeff(d) == kac.coeff(d)
            for d in vectors_up_to(len(quiver.vertices), bound)
        )
        return same, "gkm_character(gkm_dims(C^abs)) equals the Kac series"

    def uea_positive():
        kac = hua_kac(quiver, bound).to_series()
        env = uea_character(kac)
        for d in vectors_up_to(len(quiver.vertices), bound):
            p = env.coeff(d)
            if not p.has_integer_coefficients() or not p.has_nonnegative_coefficients():
                return False, f"bad enveloping coefficient at {d}"
        return True, "enveloping character has nonnegative integer coefficients"

    def exp_log():
        kac = hua_kac(quiver, bound).to_series()
        for mode in (PlethMode.Z_ONLY, PlethMode.QZ):
            back = pleth_log(pleth_exp(kac, mode), mode)
            if any(
                back.coeff(d) != kac.coeff(d)
                for d in vectors_up_to(len(quiver.vertices), bound)
            ):
                return False, f"Exp/Log roundtrip failed in {mode.name}"
        return True, "Log(Exp(A)) = A in both modes"

    def c_integer_valued():
        cuspidal_from_abs(absolutely_cuspidal(quiver, bound))
        return True, "C tables integer valued at q = 2..5"

    check("hua-vs-oracle", hua_vs_oracle)
    check("orientation-independence", orientation)
    check("weyl-invariance", weyl)
    check("kac-support-is-positive-roots", kac_support)
    check("cuspidal-shape", cuspidal_shape)
    check("gkm-roundtrip", gkm_roundtrip)
    check("uea-positivity", uea_positive)
    check("exp-log-roundtrip", exp_log)
    check("cuspidal-integer-valued", c_integer_valued)
    return {"results": results}


def _words(letters: list[str], length: int):
    if length == 0:
        yield ()
        return
    for rest in _words(letters, length - 1):
        for letter in letters:
            yield rest + (letter,)


# -- rendering --------------------------------------------------------------------


def _render_json(payload: dict) -> str:
    return json.dumps(payload, indent=1) + "\n"


def _render_tsv(command: str, payload: dict) -> str:
    lines: list[str] = []
    if command == "roots":
        for row in payload["rows"]:
            member = "sigma" if row["sigma"] else "phi"
            lines.append(
                "\t".join(
                    [row["d"], row["class"], member, row["primitive"], str(row["multiplier"])]
                )
            )
    elif command in ("kac", "canonical-decomp"):
        lines += ["\t".join(row) for row in payload["rows"]]
    elif command == "cuspidal":
        lines.append("# C^abs")
        lines += ["\t".join(row) for row in payload["cabs"]]
        lines.append("# C")
        lines += ["\t".join(row) for row in payload["c"]]
    elif command == "ip":
        lines.append(f"# IP convention: {payload['convention']}")
        lines += ["\t".join(row) for row in payload["rows"]]
    elif command == "gkm-dims":
        lines += ["\t".join(row) for row in payload["rows"]]
    elif command == "nakajima-decomp":
        for block in payload["blocks"]:
            weight = ",".join(str(n) for n in block["weight"])
            lines.append(
                f"# block {block['d']}\tmultiplicity {block['multiplicity']}\tweight {weight}"
            )
            for e in sorted(
                block["character"], key=lambda s: (sum(map(int, s.split(","))), s)
            ):
                lines.append("\t".join([block["d"], e, block["character"][e]]))
    elif command == "verify":
        for row in payload["results"]:
            status = "PASS" if row["ok"] else "FAIL"
            lines.append("\t".join([status, row["property"], row["detail"]]))
    else:
        raise InputError(f"unknown command {command!r}")
    return "".join(line + "\n" for line in lines)


# -- entry point ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgk",
        description="Quiver root systems, Kac polynomials, cuspidal inversions, "
        "GKM dimensions, and framed character decompositions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("quiver", help="path to a quiver JSON file")
        p.add_argument("--bound", type=int, default=4, help="total-degree bound N")
        p.add_argument("--flavour", choices=FLAVOURS, default="plain")
        p.add_argument(
            "--fields",
            type=str,
            default=",".join(str(v) for v in DEFAULT_FIELDS),
            help="comma-separated prime powers for counting oracles",
        )
        p.add_argument("--format", choices=("tsv", "json"), default="tsv")
        p.add_argument("--cache-dir", default=None)
        p.add_argument("--workers", type=int, default=1)
        if name == "kac":
            p.add_argument("--method", choices=("hua", "oracle"), default="hua")
        if name in ("ip", "canonical-decomp"):
            p.add_argument("--dim", default=None, help="single dimension vector d1,d2,...")
        if name == "gkm-dims":
            p.add_argument("--from-kac", action="store_true")
            p.add_argument("--weights", default=None, help="weight-function JSON file")
        if name == "nakajima-decomp":
            p.add_argument("--framing", default=None, help="framing vector f1,f2,...")
    return parser


_HANDLERS = {
    "roots": _cmd_roots,
    "kac": _cmd_kac,
    "cuspidal": _cmd_cuspidal,
    "ip": _cmd_ip,
    "canonical-decomp": _cmd_canonical,
    "gkm-dims": _cmd_gkm_dims,
    "nakajima-decomp": _cmd_nakajima,
    "verify": _cmd_verify,
}


def _command_essence(args) -> str:
    parts = [args.command]
    for attr in ("method", "dim", "framing", "fields", "from_kac"):
        value = getattr(args, attr, None)
        if value:
            parts.append(f"{attr}={value}")
    weights = getattr(args, "weights", None)
    if weights:
        with open(weights, "rb") as fh:
            parts.append("weights=" + hashlib.sha256(fh.read()).hexdigest())
    return " ".join(parts)


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        if args.bound < 1:
            raise InputError("--bound must be >= 1")
        if args.workers < 1:
            raise InputError("--workers must be >= 1")
        args.fields = _parse_fields(args.fields)
        quiver = _load_quiver(args.quiver)

        payload = None
        cache_file = None
        directory = _cache_dir(args.cache_dir)
        if directory is not None and args.command != "verify":
            cache_file = _cache_path(
                directory, quiver, _command_essence(args), args.bound, args.flavour
            )
            payload = _cache_read(cache_file)
        if payload is None:
            payload = _HANDLERS[args.command](quiver, args)
            if cache_file is not None:
                _cache_write(cache_file, payload)

        text = _render_json(payload) if args.format == "json" else _render_tsv(args.command, payload)
        sys.stdout.write(text)
        if args.command == "verify" and not all(r["ok"] for r in payload["results"]):
            return 2
        return 0
    except (InputError, QuiverError, BudgetError, AmbiguousDecompositionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (
        CuspidalError,
        GkmError,
        NakajimaError,
        CountingError,
        QPolyError,
        RootError,
        SeriesError,
    ) as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
