"""Batch command line: gen, solve, verify, bench, render."""

import argparse
import sys

from .bench import CSV_HEADER, run_bench, slopes_by_backend
from .errors import ManyFacesError
from .generators import KINDS, generate_instance
from .geom import PERTURB, REJECT
from .instancefile import parse_instance, write_instance, write_instance_text
from .render import render_svg
from .solver import BACKENDS, SolverConfig, solve


def _fmt_key(key):
    return ",".join(f"{li}{'+' if side > 0 else '-'}" for li, side in key) or "plane"


def _fmt_face_line(key, face, witnesses):
    verts = " ".join(f"({v[0]},{v[1]})" for v in face.vertices)
    wits = " ".join(str(w) for w in witnesses)
    return f"{_fmt_key(key)}\tbounded={int(face.bounded)}\t[{verts}]\t{wits}"


def _cfg_from_args(args, backend=None):
    return SolverConfig(
        backend=backend or args.backend,
        policy=PERTURB if args.policy == "perturb" else REJECT,
        r_override=args.r,
        seed=getattr(args, "seed", 0) or 0,
    )


def cmd_gen(args):
    inst = generate_instance(args.kind, args.n, args.m, args.seed)
    if args.out:
        write_instance(inst, args.out)
    else:
        sys.stdout.write(write_instance_text(inst))
    return 0


def cmd_solve(args):
    inst = parse_instance(args.path)
    fs = solve(inst, _cfg_from_args(args))
    for key, face, wits in fs.items():
        print(_fmt_face_line(key, face, wits))
    if args.trace:
        print("# trace:", " -> ".join(fs.trace), file=sys.stderr)
        print(
            f"# stats: merges={fs.stats.merges} maxcross={fs.stats.max_crossings}"
            f" totalK={fs.stats.total_k} faceComplexity={fs.stats.face_complexity}",
            file=sys.stderr,
        )
    return 0


def cmd_verify(args):
    import random

    failures = 0
    runs = 0
    backends = [b for b in BACKENDS if b != "naive"]
    for seed in range(args.seeds):
        for kind in args.kinds.split(","):
            rng = random.Random(f"verify:{kind}:{seed}")
            n = rng.randint(1, args.max_n)
            m = rng.randint(1, args.max_m)
            inst = generate_instance(kind, n, m, seed)
            ref = solve(inst, _cfg_from_args(args, backend="naive"))
            ref_sig = (set(ref.faces), {k: tuple(v) for k, v in ref.witnesses.items()})
            for backend in backends:
                runs += 1
                fs = solve(inst, _cfg_from_args(args, backend=backend))
                sig = (set(fs.faces), {k: tuple(v) for k, v in fs.witnesses.items()})
                if sig != ref_sig:
                    failures += 1
                    print(
                        f"MISMATCH kind={kind} seed={seed} n={n} m={m} "
                        f"backend={backend}"
                    )
                if fs.stats.max_crossings > 4:
                    failures += 1
                    print(
                        f"CROSSING BOUND kind={kind} seed={seed} "
                        f"backend={backend}: {fs.stats.max_crossings}"
                    )
    print(f"verify: {runs} runs, {failures} failures")
    return 0 if failures == 0 else 1


def cmd_bench(args):
    sizes = [int(s) for s in args.sizes.split(",")]
    backends = args.backend.split(",")
    rows = [CSV_HEADER]

    def progress(rec):
        print(rec.csv_row(), file=sys.stderr)

    records = run_bench(
        sizes,
        backends,
        kind=args.kind,
        seed=args.seed,
        numeric=args.numeric,
        r_override=args.r,
        progress=progress if args.verbose else None,
    )
    rows += [rec.csv_row() for rec in records]
    text = "\n".join(rows) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for backend, slope in sorted(slopes_by_backend(records).items()):
        print(f"# slope {backend}: {slope:.3f}", file=sys.stderr)
    return 0


def cmd_render(args):
    inst = parse_instance(args.path)
    fs = solve(inst, _cfg_from_args(args))
    render_svg(inst, fs, args.out)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="manyfaces",
        description="Report the non-empty faces of a line arrangement.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, backend=True):
        if backend:
            p.add_argument("--backend", default="combined", choices=BACKENDS)
        p.add_argument("--policy", default="reject", choices=["reject", "perturb"])
        p.add_argument("--r", type=int, default=None, help="cutting parameter override")

    g = sub.add_parser("gen", help="write a generated instance file")
    g.add_argument("kind", choices=KINDS)
    g.add_argument("n", type=int)
    g.add_argument("m", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="print all non-empty faces")
    s.add_argument("path")
    common(s)
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="cross-backend comparison over a corpus")
    v.add_argument("--seeds", type=int, default=20)
    v.add_argument("--max-n", type=int, default=48)
    v.add_argument("--max-m", type=int, default=48)
    v.add_argument("--kinds", default="uniform,grid,clustered")
    common(v, backend=False)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="CSV of timed runs plus slope fits")
    b.add_argument("--sizes", default="1024,2048,4096")
    b.add_argument("--backend", default="combined,naive")
    b.add_argument("--kind", default="uniform", choices=KINDS)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--numeric", default="float", choices=["float", "exact"])
    b.add_argument("--out", default=None)
    b.add_argument("--verbose", action="store_true")
    b.add_argument("--r", type=int, default=None)
    b.set_defaults(func=cmd_bench)

    r = sub.add_parser("render", help="SVG of the instance and its faces")
    r.add_argument("path")
    common(r)
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_render)

    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ManyFacesError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
