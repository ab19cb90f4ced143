"""``pkorder`` command line: JSON in, canonical JSON out.

Exit codes: 0 success, 1 input error (or an operation that does not apply),
2 budget exceeded. Errors are reported as ``{"error": {"code", "message"}}``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import config, gb
from .arith.parse import parse_fraction, split_top
from .errors import InputError, LimitExceeded, PkError
from .modules import FpModule, Lattice, is_in_X, tf_lattice, x_part
from .rings import PolyRing, divisor, parse_ring, prime_from_label, ring_from_json

# ----------------------------------------------------------------------------
# input helpers


def _load_json(text: str):
    """Inline JSON, ``-`` for standard input, or a file path."""
    try:
        if text == "-":
            return json.load(sys.stdin)
        if text.lstrip().startswith(("{", "[")):
            return json.loads(text)
        with open(text, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {text!r}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e.msg}") from None


def _ring(args):
    return parse_ring(args.ring)


def _module(args, text=None):
    text = text if text is not None else args.module
    if text is None:
        if args.ideal is not None:
            R = _ring(args)
            return FpModule.cyclic(R, _ideal(args))
        raise InputError("this command needs --module (or --ideal for R/ideal)")
    obj = _load_json(text)
    ring = ring_from_json(obj["ring"]) if isinstance(obj, dict) and "ring" in obj else _ring(args)
    return FpModule.from_json(obj, ring)


def _ideal(args):
    if args.ideal is None:
        raise InputError("this command needs --ideal")
    R = _ring(args)
    gens = [R.parse(t) for t in split_top(args.ideal, ",") if t.strip()]
    if not gens:
        raise InputError("empty ideal")
    return gens


def _lattice(args):
    R = _ring(args)
    if args.lattice is not None:
        return Lattice.from_json(R, _load_json(args.lattice))
    return tf_lattice(_module(args))


def _prime(args, R):
    if args.prime is None:
        raise InputError("this command needs --prime")
    return prime_from_label(R, args.prime)


def _matrix(R, rows):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("a matrix is a list of rows")
    return [[R.parse(str(e)) for e in r] for r in rows]


def _fmt_vecs(R, vecs):
    return [[R.fmt(e) for e in v] for v in vecs]


# ----------------------------------------------------------------------------
# commands


def cmd_factor(args):
    R = _ring(args)
    f = R.factor(R.parse(args.element))
    return {"unit": R.fmt(f.unit), "factors": [[R.fmt(g), e] for g, e in f.factors]}


def cmd_divisor(args):
    R = _ring(args)
    n, d = parse_fraction(args.element)
    num, den = R.parse(n), R.parse(d)
    q = num if den == R.one() else R.frac(num, den)
    return {"divisor": divisor(R, q).to_json()}


def cmd_hull(args):
    from .divisorial import divisorial_hull_ideal

    R = _ring(args)
    div, g = divisorial_hull_ideal(R, _ideal(args))
    return {"hull": R.fmt(g), "divisor": div.to_json()}


def cmd_quasidiv(args):
    from .divisorial import is_quasidivisorial

    return {"quasidivisorial": is_quasidivisorial(_ring(args), _ideal(args))}


def cmd_codiv(args):
    from .divisorial import is_codivisorial

    return {"codivisorial": is_codivisorial(_module(args))}


def cmd_inx(args):
    return {"in_X": is_in_X(_module(args))}


def cmd_xpart(args):
    M = _module(args)
    xp = x_part(M)
    R = M.ring
    return {
        "x_part": xp.sub.to_json(),
        "inclusion": _fmt_vecs(R, xp.inclusion),
        "quotient": xp.quotient.to_json(),
        "zero": not xp.inclusion,
    }


def cmd_closure(args):
    from .divisorial import closure

    return closure(_module(args)).to_json()


def cmd_invariants(args):
    from .pseudo_iso import torsion_invariants

    return torsion_invariants(_module(args)).to_json()


def cmd_decompose(args):
    from .pseudo_iso import decompose

    return decompose(_module(args)).to_json()


def cmd_pseudoiso(args):
    from .pseudo_iso import is_pseudo_iso

    M = _module(args)
    if args.target is None or args.map is None:
        raise InputError("pseudoiso-check needs --target and --map")
    N = _module(args, args.target)
    F = _matrix(M.ring, _load_json(args.map))
    ok, cert = is_pseudo_iso(F, M, N)
    return {"pseudo_iso": ok, "certificate": cert.to_json(M.ring)}


def cmd_ext(args):
    from .homology import ext_base, ext_tilde

    M = _module(args)
    if args.base:
        return {"ext": ext_base(M, args.degree).to_json(), "degree": args.degree}
    if args.source is None:
        raise InputError("ext needs --source N (computes Ext^i(N, M)) or --base")
    N = _module(args, args.source)
    return {"ext": ext_tilde(N, M, args.degree).to_json(), "degree": args.degree}


def cmd_injdim(args):
    from .homology import inj_dim_tilde

    return inj_dim_tilde(_module(args)).to_json()


def cmd_gldim(args):
    from .homology import gl_dim_tilde
    from .tiled import TiledOrder

    if args.order is not None:
        A = TiledOrder.from_json(_ring(args), _load_json(args.order))
        return {"gldim": gl_dim_tilde(A).to_json()}
    return {"gldim": gl_dim_tilde(_ring(args))}


def cmd_resolve(args):
    from .homology import min_inj_resolution

    return {"resolution": [E.to_json() for E in min_inj_resolution(_module(args))]}


def cmd_einv(args):
    from .injectives import e_of_QM_mod_M, injective_hull_descriptor

    if args.lattice is not None:
        return {"e_QL_mod_L": e_of_QM_mod_M(_lattice(args)).to_json()}
    return injective_hull_descriptor(_module(args)).to_json()


def cmd_socle(args):
    from .injectives import socle_ranks

    return socle_ranks(_lattice(args)).to_json()


def cmd_order(args):
    from .tiled import (
        TiledOrder,
        check_order,
        is_hereditary_at,
        order_gl_dim_tilde,
        primes_above,
        uniserial,
    )

    R = _ring(args)
    sub = args.sub
    if sub == "check":
        if args.matrix is None:
            raise InputError("order check needs --matrix")
        ok, w = check_order(_load_json(args.matrix))
        return {"ok": ok, "witness": None if w is None else {"kind": w[0], "at": w[1]}}
    if args.order is None:
        raise InputError(f"order {sub} needs --order")
    A = TiledOrder.from_json(R, _load_json(args.order))
    if sub == "gldim":
        return {"gldim": order_gl_dim_tilde(A).to_json()}
    P = _prime(args, R)
    if sub == "primes-above":
        return {"primes_above": [Pa.to_json() for Pa in primes_above(A, P)]}
    if sub == "hereditary":
        return {"hereditary": is_hereditary_at(A, P)}
    # uniserial
    ups = primes_above(A, P)
    if not 1 <= args.cls <= len(ups):
        raise InputError(f"class must be between 1 and {len(ups)}")
    return uniserial(A, ups[args.cls - 1], args.length).to_json()


def cmd_oracle(args):
    from . import oracles

    sub = args.sub
    if sub == "abelian-invariants":
        A = _load_json(args.payload[0])
        ncols = int(args.payload[1]) if len(args.payload) > 1 else None
        return oracles.abelian_invariants(A, ncols)
    if sub == "ext-z":
        if len(args.payload) != 2:
            raise InputError("oracle ext-z needs m and n")
        return oracles.ext_z(int(args.payload[0]), int(args.payload[1]))
    if sub == "factor-check":
        R = PolyRing()
        if args.ring not in ("ZX", "Z[x]"):
            raise InputError("factor-check works over ZX")
        if len(args.payload) != 1:
            raise InputError("oracle factor-check needs one polynomial")
        f = R.parse(args.payload[0])
        fac = R.factor(f)
        out = oracles.factor_check(list(f.c), fac.unit.lc, [(list(g.c), e) for g, e in fac.factors])
        out["factors"] = [[R.fmt(g), e] for g, e in fac.factors]
        return out
    if sub == "hereditary-trunc":
        if len(args.payload) != 1:
            raise InputError("oracle hereditary-trunc needs an exponent matrix")
        return oracles.hereditary_trunc(_load_json(args.payload[0]), args.p)
    raise InputError(f"unknown oracle {sub!r}")


def cmd_gb(args):
    R = _ring(args)
    if args.vectors is None:
        raise InputError("gb needs --vectors")
    vecs = _matrix(R, _load_json(args.vectors))
    if not vecs:
        raise InputError("gb needs at least one vector")
    rank = len(vecs[0])
    if args.sub == "basis":
        return {"basis": _fmt_vecs(R, gb.strong_basis(R, vecs, rank).vectors)}
    if args.sub == "syz":
        return {"syzygies": _fmt_vecs(R, gb.syzygies(R, vecs, rank))}
    if args.vector is None:
        raise InputError("gb member needs --vector")
    v = [R.parse(str(e)) for e in _load_json(args.vector)]
    ok, cert = gb.membership(v, gb.strong_basis(R, vecs, rank))
    return {"member": ok, "certificate": [R.fmt(c) for c in cert] if ok else None}


def cmd_local_snf(args):
    from .local_snf import local_snf

    M = _module(args)
    P = _prime(args, M.ring)
    return local_snf(M.ring, M.relations, P, ncols=M.generators).to_json()


COMMANDS = {
    "factor": cmd_factor,
    "divisor": cmd_divisor,
    "hull": cmd_hull,
    "quasidiv": cmd_quasidiv,
    "codiv": cmd_codiv,
    "inx": cmd_inx,
    "xpart": cmd_xpart,
    "closure": cmd_closure,
    "invariants": cmd_invariants,
    "decompose": cmd_decompose,
    "pseudoiso-check": cmd_pseudoiso,
    "ext": cmd_ext,
    "injdim": cmd_injdim,
    "gldim": cmd_gldim,
    "resolve": cmd_resolve,
    "einv": cmd_einv,
    "socle": cmd_socle,
    "order": cmd_order,
    "oracle": cmd_oracle,
    "gb": cmd_gb,
    "local-snf": cmd_local_snf,
}


# ----------------------------------------------------------------------------
# parser and output


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", default="ZX", help="Z, ZX, FpX:p or a product like Z*ZX (default ZX)")
    common.add_argument("--module", help="module JSON: inline, a file path, or - for stdin")
    common.add_argument("--ideal", help='comma-separated generators, e.g. "2,x"')
    common.add_argument("--lattice", help="lattice JSON {rank, generators}")
    common.add_argument("--prime", help='prime label such as "int:2" or "poly:x^2+1"')
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--report", action="store_true", help="wrap the result with timing and counters")
    common.add_argument("--max-bits", type=int, default=128)
    common.add_argument("--max-degree", type=int, default=24)
    common.add_argument("--gb-steps", type=int, default=100_000)

    p = argparse.ArgumentParser(prog="pkorder", description="Divisor theory and pseudo-isomorphism invariants of modules.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("factor", "divisor"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("element")
    for name in ("hull", "quasidiv", "codiv", "inx", "xpart", "closure", "invariants", "decompose", "injdim", "resolve", "einv", "socle", "local-snf"):
        sub.add_parser(name, parents=[common])
    s = sub.add_parser("pseudoiso-check", parents=[common])
    s.add_argument("--target", help="target module JSON")
    s.add_argument("--map", help="matrix JSON: row j is the image of generator j")
    s = sub.add_parser("ext", parents=[common])
    s.add_argument("--source", help="module N in Ext^i(N, M)")
    s.add_argument("--degree", type=int, default=1)
    s.add_argument("--base", action="store_true", help="Ext^i(M, R) over the base ring")
    s = sub.add_parser("gldim", parents=[common])
    s.add_argument("--order", help="tiled order JSON")
    s = sub.add_parser("order", parents=[common])
    s.add_argument("sub", choices=["check", "primes-above", "hereditary", "gldim", "uniserial"])
    s.add_argument("--order", help='tiled order JSON {"n":2,"assign":{"int:2":[[0,1],[0,0]]}}')
    s.add_argument("--matrix", help="exponent matrix JSON for order check")
    s.add_argument("--class", dest="cls", type=int, default=1, help="1-based class id")
    s.add_argument("--length", type=int, default=1)
    s = sub.add_parser("oracle", parents=[common])
    s.add_argument("sub", choices=["abelian-invariants", "ext-z", "factor-check", "hereditary-trunc"])
    s.add_argument("payload", nargs="*")
    s.add_argument("--p", type=int, default=2, help="residue prime for hereditary-trunc")
    s = sub.add_parser("gb", parents=[common])
    s.add_argument("sub", choices=["basis", "member", "syz"])
    s.add_argument("--vectors", help="matrix JSON of generators")
    s.add_argument("--vector", help="vector JSON for membership")
    return p


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def render(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return pad + "(none)"
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(pad + "- " + (_scalar(v) if _flat(v) else "\n" + render(v, indent + 1)) for v in obj)
    return pad + _scalar(obj)


def _flat(v) -> bool:
    if isinstance(v, dict):
        return not v
    if isinstance(v, list):
        return all(not isinstance(e, dict) for e in v) and all(_flat(e) for e in v if isinstance(e, list))
    return True


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, dict)):
        return dumps(v)
    return str(v)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    b = None
    try:
        with config.budget(max_bits=args.max_bits, max_degree=args.max_degree, gb_steps=args.gb_steps) as b:
            result = COMMANDS[args.command](args)
        code = 0
    except LimitExceeded as e:
        result, code = {"error": {"code": e.code, "message": str(e)}}, 2
    except PkError as e:
        result, code = {"error": {"code": e.code, "message": str(e)}}, 1
    except (ValueError, KeyError, TypeError) as e:
        result, code = {"error": {"code": "input_error", "message": str(e)}}, 1
    if args.report:
        counters = b.counters.as_dict() if b is not None else None
        result = {
            "command": args.command,
            "result": result,
            "seconds": round(time.perf_counter() - start, 6),
            "counters": counters,
        }
    print(render(result) if args.pretty else dumps(result), file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
