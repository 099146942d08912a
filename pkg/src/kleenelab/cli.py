"""Command-line interface.

Exit status is 0 when every check a command performs passes, 1 when a check
fails (an INVALID verdict, a rejected proof, a failed axiom) and 2 on bad
input.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formats
from .algebra import PreconditionError, SizeError, StructureError, check_kleene_axioms
from .perp import CONDITIONS, SPECIAL_CONSEQUENTS, FrameError, frame_valid, frames_up_to
from .represent import representation_tables, represent, verify_representation
from .roughsets import SpaceError, approximations
from .semantics import analyse
from .syntax import DerivationSyntaxError, ParseError, check_derivation, parse_consequent

OK, FAILED, BAD_INPUT = 0, 1, 2


class Output:
    """Plain text by default; ``key=value`` records with ``--machine``."""

    def __init__(self, machine: bool, stream=None):
        self.machine = machine
        self.stream = stream or sys.stdout

    def line(self, text: str = "", **record) -> None:
        if self.machine:
            if record:
                print(" ".join(f"{k}={_field(v)}" for k, v in record.items()), file=self.stream)
        else:
            print(text, file=self.stream)


def _field(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    text = str(v)
    return f'"{text}"' if any(c.isspace() for c in text) or not text else text


def _yes(b: bool) -> str:
    return "yes" if b else "no"


# --------------------------------------------------------------------------
# commands

def cmd_decide(args, out: Output) -> int:
    c = parse_consequent(args.consequent)
    d = analyse(c)
    out.line(str(d.tf), kind="decide", consequent=str(c), valid=d.valid,
             witness=d.tf.render_witness() or "-")
    out.line(f"  |=_t: {_yes(d.t.valid)}" + ("" if d.t.valid else f"  (witness: {d.t.render_witness()})"),
             kind="truth", valid=d.t.valid, witness=d.t.render_witness() or "-")
    out.line(f"  |=_f: {_yes(d.f.valid)}" + ("" if d.f.valid else f"  (witness: {d.f.render_witness()})"),
             kind="falsity", valid=d.f.valid, witness=d.f.render_witness() or "-")
    return OK if d.valid else FAILED


def cmd_check_proof(args, out: Output) -> int:
    d = formats.load_derivation(args.file)
    result = check_derivation(d)
    if result.ok:
        out.line(f"ACCEPTED {len(d.steps)} steps, conclusion {d.conclusion}",
                 kind="proof", accepted=True, steps=len(d.steps), conclusion=str(d.conclusion))
        return OK
    out.line(f"REJECTED {result}", kind="proof", accepted=False, step=result.step, reason=result.reason)
    return FAILED


def _render_witness(K, witness) -> str:
    return ",".join(K.names[w] if isinstance(w, int) else str(w) for w in witness)


def cmd_algebra_verify(args, out: Output) -> int:
    K = formats.load_algebra(args.file)
    report = check_kleene_axioms(K)
    for axiom, witness in report.results.items():
        if witness is None:
            out.line(f"{axiom}: pass", axiom=axiom, ok=True)
        else:
            shown = _render_witness(K, witness)
            out.line(f"{axiom}: FAIL ({shown})", axiom=axiom, ok=False, witness=shown)
    out.line(f"{K.name or args.file}: {'Kleene algebra' if report.ok else 'not a Kleene algebra'} "
             f"({K.size} elements)", kind="summary", kleene=report.ok, size=K.size)
    return OK if report.ok else FAILED


def cmd_represent(args, out: Output) -> int:
    K = formats.load_algebra(args.file)
    report = check_kleene_axioms(K)
    if not report.ok:
        for axiom, witness in report.failures().items():
            shown = _render_witness(K, witness)
            out.line(f"{axiom}: FAIL ({shown})", axiom=axiom, ok=False, witness=shown)
        return FAILED
    rep = represent(K, max_size=args.max_size)
    tables = representation_tables(rep)
    B = rep.embedding.boolean
    out.line(f"Boolean algebra: 2^{len(B.atoms)} ({B.size} elements)", kind="boolean", atoms=len(B.atoms))
    out.line("embedding into B^[2]:")
    for name, (lo, hi) in tables["embedding"].items():
        out.line(f"  {name} -> ({lo}, {hi})", kind="embedding", element=name, lower=lo, upper=hi)
    space = rep.space
    out.line(f"approximation space: universe {{{','.join(space.universe)}}}, blocks "
             + " ".join("{" + ",".join(b) + "}" for b in space.blocks),
             kind="space", universe=",".join(space.universe),
             blocks="|".join(",".join(b) for b in space.blocks))
    out.line(f"rough sets: {rep.rough_sets.size}; map into RS':")
    for name, pair in rep.table().items():
        out.line(f"  {name} -> {space.render(pair)}", kind="map", element=name,
                 lower=space.render_set(pair.lower), upper=space.render_set(pair.upper))
    if args.out:
        target = Path(args.out)
        target.mkdir(parents=True, exist_ok=True)
        for key, doc in tables.items():
            formats.dump_json(doc, target / f"{key}.json")
        reloaded = verify_representation(formats.load_algebra(target / "algebra.json"),
                                         formats.load_space(target / "space.json"),
                                         formats.json.loads((target / "map.json").read_text()))
        out.line(f"wrote {len(tables)} files to {target}; reload check: {reloaded}",
                 kind="files", dir=target, reload=reloaded.ok)
        if not reloaded.ok:
            return FAILED
    out.line("verified: injective Kleene homomorphism into RS'", kind="verified", ok=True)
    return OK


def cmd_rough_approx(args, out: Output) -> int:
    space = formats.load_space(args.space)
    subset = formats.parse_name_set(args.set)
    pair = approximations(space, subset)
    out.line(f"lower: {space.render_set(pair.lower)}", kind="lower", set=space.render_set(pair.lower))
    out.line(f"upper: {space.render_set(pair.upper)}", kind="upper", set=space.render_set(pair.upper))
    out.line(f"rough set: {space.render(pair)}", kind="rough", pair=space.render(pair),
             definable=pair.lower == pair.upper)
    return OK


def _classify_lines(F, out: Output) -> dict:
    row = {}
    for name, fn in CONDITIONS.items():
        w = fn(F)
        row[name] = w is None
        shown = "" if w is None else f" (witness: {','.join(w) if isinstance(w, tuple) else w})"
        out.line(f"  {name}: {str(w is None).lower()}{shown}", frame=F.name or "-", condition=name,
                 holds=w is None, witness="-" if w is None else (",".join(w) if isinstance(w, tuple) else w))
    row["kleene_frame"] = all(row.values())
    out.line(f"  kleene_frame: {str(row['kleene_frame']).lower()}", frame=F.name or "-",
             condition="kleene_frame", holds=row["kleene_frame"])
    for label, text in SPECIAL_CONSEQUENTS.items():
        v = frame_valid(F, parse_consequent(text))
        row[label] = v.valid
        out.line(f"  {text}: {'valid' if v.valid else str(v)}", frame=F.name or "-", consequent=text, valid=v.valid)
    return row


def cmd_frames(args, out: Output) -> int:
    if args.enumerate is None:
        F = formats.load_frame(args.file)
        F.name = F.name or Path(args.file).stem
        out.line(f"{F.name}: {F.size} world{'' if F.size == 1 else 's'}")
        _classify_lines(F, out)
        return OK
    frames = frames_up_to(args.enumerate)
    header = f"{'frame':<10} {'worlds':>6} {'dni':>5} {'dne':>5} {'kleene':>6} {'kframe':>6}  validates"
    out.line(header)
    mismatches = 0
    quiet = Output(True, stream=_Null())
    counts = {"frames": 0, "kleene_frames": 0}
    for F in frames:
        row = _classify_lines(F, quiet)
        counts["frames"] += 1
        counts["kleene_frames"] += row["kleene_frame"]
        mismatches += row["kleene"] != row["validates_kleene"]
        mismatches += row["dni"] and not row["validates_dni"]
        mismatches += row["dne"] and not row["validates_dne"]
        valid = ",".join(k.split("_")[1] for k in SPECIAL_CONSEQUENTS if row[k]) or "-"
        flags = [row[k] for k in ("dni", "dne", "kleene", "kleene_frame")]
        out.line(f"{F.name:<10} {F.size:>6} " + " ".join(f"{'T' if b else '.':>5}" for b in flags[:2])
                 + f" {'T' if flags[2] else '.':>6} {'T' if flags[3] else '.':>6}  {valid}",
                 frame=F.name, worlds=F.size, dni=flags[0], dne=flags[1], kleene=flags[2],
                 kleene_frame=flags[3], validates=valid)
    out.line(f"{counts['frames']} frames, {counts['kleene_frames']} Kleene frames, "
             f"{mismatches} condition/validity mismatches",
             kind="summary", mismatches=mismatches, **counts)
    return OK if mismatches == 0 else FAILED


class _Null:
    def write(self, _):
        pass

    def flush(self):
        pass


def cmd_fuzz(args, out: Output) -> int:
    from .fuzz import run_fuzz

    report = run_fuzz(args.formulas, seed=args.seed, depth=args.depth, mutant=args.mutant)
    for d in report.disagreements:
        out.line(f"DISAGREEMENT {d}", kind="disagreement", index=d.index, consequent=d.consequent,
                 semantics=d.semantics, expected=d.expected, found=d.found)
    out.line(f"seed={report.seed} depth={report.depth} formulas={report.total} "
             f"decided_valid={report.valid}")
    out.line(report.summary(), kind="fuzz", seed=report.seed, depth=report.depth,
             agreed=report.agreed, total=report.total, decided_valid=report.valid)
    return OK if report.ok else FAILED


# --------------------------------------------------------------------------

def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the flags without defaults so they don't clobber ones given earlier
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--machine", action="store_true", default=default(False),
                       help="line-oriented key=value output")
    flags.add_argument("--max-size", type=int, default=default(10), help="bound on algebra size (default 10)")
    flags.add_argument("--seed", type=int, default=default(0), help="random seed (default 0)")
    return flags


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    parser = argparse.ArgumentParser(prog="kleenelab", parents=[_global_flags(suppress=False)],
                                     description="Kleene algebras, rough sets and the logic of Kleene negation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", parents=[common], help="decide derivability of a consequent")
    p.add_argument("consequent", help="e.g. 'p & ~p |- q | ~q'")
    p.set_defaults(run=cmd_decide)

    p = sub.add_parser("check-proof", parents=[common], help="check a derivation file")
    p.add_argument("file")
    p.set_defaults(run=cmd_check_proof)

    p = sub.add_parser("algebra", parents=[common], help="algebra files")
    asub = p.add_subparsers(dest="algebra_command", required=True)
    v = asub.add_parser("verify", parents=[common], help="check the Kleene algebra axioms")
    v.add_argument("file")
    v.set_defaults(run=cmd_algebra_verify)

    p = sub.add_parser("represent", parents=[common], help="represent an algebra by rough sets")
    p.add_argument("file")
    p.add_argument("--out", help="directory for the JSON tables")
    p.set_defaults(run=cmd_represent)

    p = sub.add_parser("rough", parents=[common], help="approximation spaces")
    rsub = p.add_subparsers(dest="rough_command", required=True)
    a = rsub.add_parser("approx", parents=[common], help="lower and upper approximation of a set")
    a.add_argument("space")
    a.add_argument("set", help="e.g. '{1,2}' or '1,2'")
    a.set_defaults(run=cmd_rough_approx)

    p = sub.add_parser("frames", parents=[common], help="classify compatibility frames")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("file", nargs="?")
    g.add_argument("--enumerate", type=int, metavar="K", help="all frames with at most K worlds")
    p.set_defaults(run=cmd_frames)

    p = sub.add_parser("fuzz", parents=[common], help="cross-check the semantics on random consequents")
    p.add_argument("--formulas", type=int, default=200)
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--mutant", action="store_true", help="corrupt one algebra's negation table")
    p.set_defaults(run=cmd_fuzz)
    return parser


def _validate(args, parser) -> None:
    if args.max_size < 1:
        parser.error("--max-size must be positive")
    if getattr(args, "enumerate", None) is not None and not 1 <= args.enumerate <= 4:
        parser.error("--enumerate takes 1..4")
    if getattr(args, "formulas", 1) < 1 or getattr(args, "depth", 0) < 0:
        parser.error("--formulas must be positive and --depth non-negative")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(args, parser)
    out = Output(args.machine)
    try:
        return args.run(args, out)
    except (ParseError, DerivationSyntaxError, formats.FormatError, StructureError, SpaceError,
            FrameError, PreconditionError, SizeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
