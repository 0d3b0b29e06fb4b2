"""Command-line interface: ``torcfg <command> ...``.

JSON goes to stdout (or ``--out``); every integer is written as a decimal
string.  ``--format table`` prints an aligned text table instead.
Exit codes: 0 success, 1 a comparison failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import expected
from .combinatorics import coeff_bruteforce, coeff_closed, partitions
from .complexes import complement_vertex_map, k_ij, k_p, k_pm, l_pm, sd_boundary_simplex
from .cover import polygon_cover_model, simplex_cover_model
from .errors import TorcfgError
from .euler import chi_classical_closed, chi_classical_partition, chi_moment_angle_torus, chi_orbit_config, chi_real_moment_angle
from .homology import SimplicialComplex, betti, homology, oriented_chain_complex, verify_simplicial_iso
from .linalg import Q, Z, Z2, normalize_coeff
from .polytope import builtin, f_vector, h_polynomial, load_polytope
from .spectral import convergence_report, double_complex, pages, row_doubling_check, total_homology


class UsageError(Exception):
    pass


@dataclass
class Output:
    data: object
    rows: list = field(default_factory=list)  # for --format table
    failed: bool = False


def _strs(obj):
    """Recursively turn ints into decimal strings (bools left alone)."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _strs(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_strs(v) for v in obj]
    return obj


def _table(rows: list[dict]) -> str:
    if not rows:
        return ""
    cols = list(rows[0])
    cells = [[str(c) for c in cols]] + [[_cell(r.get(c, "")) for c in cols] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(cols))]
    return "\n".join("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells)


def _cell(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return "(" + ",".join(_cell(x) for x in v) + ")"
    return str(v)


def _polytope(args):
    if getattr(args, "polytope", None):
        return load_polytope(args.polytope)
    if getattr(args, "builtin", None):
        return builtin(args.builtin)
    raise UsageError("give --polytope FILE or --builtin ngon:M|simplex:N|cube:N")


def _homology_json(h) -> list:
    return [{"degree": str(row["degree"]), "betti": str(row["betti"]), "torsion": [str(t) for t in row["torsion"]]}
            for row in h.to_json()]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_hvector(args) -> Output:
    p = _polytope(args)
    f, h = f_vector(p), h_polynomial(p)
    data = {"dim": p.dim, "f": list(f.entries), "h": list(h.coeffs), "h_at_1": h(1)}
    return Output(data, [{"i": i, "f_(i-1)": ([1] + list(f.entries))[i], "h_i": c} for i, c in enumerate(h.coeffs)])


def cmd_euler(args) -> Output:
    if args.kind == "classical":
        if args.chi is None or args.n is None:
            raise UsageError("euler classical needs --chi and --n")
        closed = chi_classical_closed(args.chi, args.n, args.k)
        part = chi_classical_partition(args.chi, args.n, args.k)
        data = {"chi": closed, "partition_sum": part, "match": closed == part}
        return Output(data, [data], failed=closed != part)
    p = _polytope(args)
    if args.kind == "orbit":
        if args.d is None:
            raise UsageError("euler orbit needs --d")
        data = {"chi": chi_orbit_config(p, args.d, args.k)}
    else:
        if args.d == 2:
            data = {"chi": chi_moment_angle_torus(p, args.k)}
        else:
            data = {"chi": chi_real_moment_angle(p, args.k, assume_small_cover=args.assume_small_cover)}
    return Output(data, [data])


def cmd_coeff(args) -> Output:
    brute = coeff_bruteforce(args.k) if args.verify else None
    rows = []
    failed = False
    for part in partitions(args.k):
        row = {"partition": list(part.parts), "closed": coeff_closed(part)}
        if brute is not None:
            row["bruteforce"] = brute[part]
            row["match"] = brute[part] == row["closed"]
            failed |= not row["match"]
        rows.append(row)
    return Output(rows, rows, failed)


def cmd_complex(args) -> Output:
    kind = args.kind
    if kind == "kp":
        k = k_p(_polytope(args))
    elif kind in ("kpm", "lpm"):
        if args.m is None:
            raise UsageError(f"complex {kind} needs --m")
        k = (k_pm if kind == "kpm" else l_pm)(args.m)
    elif kind == "sdbd":
        if args.n is None:
            raise UsageError("complex sdbd needs --n")
        k = sd_boundary_simplex(args.n)
    else:
        if None in (args.n, args.i, args.j):
            raise UsageError("complex kij needs --n, --i and --j")
        k = k_ij(args.n, args.i, args.j)
    data = k.to_json()
    data["f_vector"] = list(k.f_vector())
    return Output(data, [{"dim": d, "simplices": c} for d, c in enumerate(k.f_vector())])


def cmd_homology(args) -> Output:
    text = sys.stdin.read() if args.complex == "-" else Path(args.complex).read_text()
    k = SimplicialComplex.from_json(json.loads(text))
    h = homology(oriented_chain_complex(k, normalize_coeff(args.coeff)))
    rows = _homology_json(h)
    return Output(rows, rows)


def cmd_ss(args) -> Output:
    if args.model == "polygon":
        if args.m is None:
            raise UsageError("ss polygon needs --m")
        coeff = normalize_coeff(args.coeff or Q)
        model = polygon_cover_model(args.m, args.d, Z if coeff == Z else coeff)
    else:
        if args.n is None:
            raise UsageError("ss simplex needs --n")
        default = Z2 if args.d == 1 else Q
        coeff = normalize_coeff(args.coeff or default)
        model = simplex_cover_model(args.n, args.d, Z2 if coeff == Z2 else Z)
    dc = double_complex(model)
    total = total_homology(dc, coeff)
    field_coeff = Q if coeff == Z else coeff
    sp = pages(dc, coeff=field_coeff, r_max=args.r_max)
    conv = convergence_report(sp, total if coeff != Z else total_homology(dc, Q))
    data = {"pages": sp.to_json(), "total": _homology_json(total), "collapse_page": str(sp.stable_page),
            "converged": conv.passed, "coeff": coeff, "page_coeff": field_coeff}
    rows = [{"r": r, "p,q": f"{p},{q}", "dim": v} for r, pg in sorted(sp.pages.items())
            for (p, q), v in sorted(pg.items()) if v]
    return Output(data, rows, failed=not conv.passed)


# ---------------------------------------------------------------------------
# reproduce
# ---------------------------------------------------------------------------

def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _trim(b) -> tuple:
    b = list(b)
    while b and b[-1] == 0:
        b.pop()
    return tuple(b)


def reproduce_polygons(m_max: int) -> list[dict]:
    rows = []
    for m in range(3, m_max + 1):
        for d in (1, 2):
            dc = double_complex(polygon_cover_model(m, d, Z))
            h = total_homology(dc)
            want = expected.polygon_betti(m, d)
            ok = _trim(h.betti) == want and h.torsion_free
            rows.append({"m": m, "d": d, "computed": _trim(h.betti), "expected": want,
                         "torsion_free": h.torsion_free, "verdict": _verdict(ok)})
    return rows


def reproduce_simplices(n_max: int, n_max_d2: int) -> list[dict]:
    rows = []
    for d, top in ((1, n_max), (2, n_max_d2)):
        for n in range(2, top + 1):
            dc = double_complex(simplex_cover_model(n, d))
            h = total_homology(dc)
            want = expected.simplex_betti(n, d)
            ok = _trim(h.betti) == _trim(want) and (d == 1 or h.torsion_free)
            rows.append({"n": n, "d": d, "coeff": h.coeff, "computed": _trim(h.betti), "expected": _trim(want),
                         "verdict": _verdict(ok)})
    return rows


def reproduce_kij(n_max: int) -> list[dict]:
    rows = []
    for n in range(1, n_max + 1):
        cmap = complement_vertex_map(n)
        for i in range(n):
            for j in range(n - i):
                k = k_ij(n, i, j)
                h = homology(oriented_chain_complex(k, Z))
                want = expected.kij_betti(n, i, j)
                iso = verify_simplicial_iso(k, k_ij(n, j, i), cmap)
                ok = tuple(h.betti) == want and h.torsion_free and iso
                rows.append({"n": n, "i": i, "j": j, "computed": h.betti, "expected": want,
                             "torsion_free": h.torsion_free, "swap_iso": iso, "verdict": _verdict(ok)})
    return rows


def reproduce_thm15(m_max: int, n_max: int) -> list[dict]:
    rows = []
    cases = [("polygon", m) for m in range(3, m_max + 1)] + [("simplex", n) for n in range(2, n_max + 1)]
    for context, size in cases:
        rep = row_doubling_check(context, size)
        rows.append({"context": context, "size": size, "entries": rep.compared,
                     "mismatches": len(rep.mismatches), "verdict": _verdict(rep.passed)})
    return rows


def reproduce_annulus(m_max: int) -> list[dict]:
    rows = []
    for m in range(5, m_max + 1):
        f = l_pm(m).f_vector()
        want = expected.annulus_counts(m)
        b = betti(l_pm(m))
        ok = tuple(f) == want and _trim(b) == (1, 1)
        rows.append({"m": m, "faces": f, "expected": want, "betti": b, "verdict": _verdict(ok)})
    return rows


def cmd_reproduce(args) -> Output:
    which = args.which
    if which == "prop-b1":
        rows = reproduce_polygons(args.m_max or 8)
    elif which == "prop-b2":
        rows = reproduce_simplices(args.n_max or 5, args.n_max_d2)
    elif which == "prop-hom":
        rows = reproduce_kij(args.n_max or 6)
    elif which == "thm15":
        rows = reproduce_thm15(args.m_max or 6, args.n_max or 4)
    else:
        rows = reproduce_annulus(args.m_max or 12)
    failed = any(r["verdict"] != "PASS" for r in rows)
    return Output({"rows": rows, "passed": not failed}, rows, failed)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="torcfg", description="Invariants of two-point orbit configuration spaces.")
    ap.add_argument("--format", choices=("json", "table"), default="json")
    ap.add_argument("--out", help="write output to this file instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    def polytope_args(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--polytope", help="polytope JSON file")
        g.add_argument("--builtin", help="ngon:M, simplex:N or cube:N")

    p = sub.add_parser("hvector", help="f- and h-vector of a polytope")
    polytope_args(p)
    p.set_defaults(func=cmd_hvector)

    p = sub.add_parser("euler", help="Euler characteristics")
    p.add_argument("kind", choices=("orbit", "classical", "moment-angle"))
    polytope_args(p)
    p.add_argument("--d", type=int, choices=(1, 2))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--chi", type=int, help="chi(M) for the classical configuration space")
    p.add_argument("--n", type=int, help="dimension of M for the classical configuration space")
    p.add_argument("--assume-small-cover", action="store_true",
                   help="assert that a small cover over the polytope exists (needed for d=1 moment-angle)")
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("coeff", help="signed subgraph counts C_I for all partitions of k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="also count by brute force (k <= 6)")
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("complex", help="emit one of the nerve complexes")
    p.add_argument("kind", choices=("kp", "kpm", "lpm", "sdbd", "kij"))
    polytope_args(p)
    for flag in ("--m", "--n", "--i", "--j"):
        p.add_argument(flag, type=int)
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("homology", help="homology of a simplicial complex JSON file ('-' for stdin)")
    p.add_argument("complex")
    p.add_argument("--coeff", default="z")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("ss", help="spectral pages and total homology of a cover model")
    p.add_argument("model", choices=("polygon", "simplex"))
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int, choices=(1, 2), required=True)
    p.add_argument("--coeff", help="q, z2 or z (z: integral total homology, pages over q)")
    p.add_argument("--r-max", type=int)
    p.set_defaults(func=cmd_ss)

    p = sub.add_parser("reproduce", help="recompute a table and compare with the closed forms")
    p.add_argument("which", choices=("prop-b1", "prop-b2", "prop-hom", "thm15", "lemma-annulus"))
    p.add_argument("--m-max", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--n-max-d2", type=int, default=4, help="largest n for the d=2 simplex rows of prop-b2")
    p.set_defaults(func=cmd_reproduce)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        out = args.func(args)
    except UsageError as e:
        print(f"torcfg: error: {e}", file=sys.stderr)
        return 2
    except (TorcfgError, ValueError, OSError) as e:
        print(f"torcfg: error: {e}", file=sys.stderr)
        return 2
    if args.format == "table":
        text = _table(out.rows) + "\n"
    else:
        text = json.dumps(_strs(out.data), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 1 if out.failed else 0


if __name__ == "__main__":
    sys.exit(main())
