"""Command line front end.

Plain-text line protocol: every word printed re-parses under the word
grammar, and `pipeline --dump` emits a loadable extension file, so
transcripts double as golden files.  Exit status 0 means a decision was
rendered, 1 means a membership query answered no under --exit-status,
and 2 means bad input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .elementary import block_key, mrf
from .hnn import hnn_reduce, validate_extension, words_equal
from .membership import SubmonoidSpec, decide_membership
from .moldavanskii import rho_t
from .oracle import benois_member, bfs_member
from .pipeline import build_pipeline, prefix_member, translate_query, validate_wtw
from .specfile import SpecFile, parse_spec, serialize_spec
from .words import Word, format_word, free_reduce, parse_word


def _load_spec(path: str) -> SpecFile:
    return parse_spec(Path(path).read_text())


def _cmd_reduce(args) -> int:
    w = parse_word(args.word)
    if args.spec:
        sf = _load_spec(args.spec)
        print(format_word(hnn_reduce(w, sf.extension).flatten(sf.extension.stable)))
    else:
        print(format_word(free_reduce(w)))
    return 0


def _cmd_equal(args) -> int:
    sf = _load_spec(args.spec)
    same = words_equal(parse_word(args.left), parse_word(args.right), sf.extension)
    print("equal" if same else "not-equal")
    return 0


def _cmd_mrf(args) -> int:
    sf = _load_spec(args.spec)
    forms = mrf(parse_word(args.word), sf.extension)
    for v in sorted(forms, key=block_key):
        print(format_word(v.flatten(sf.extension.stable)))
    return 0


def _resolve_uq(args, sf: SpecFile) -> SubmonoidSpec:
    if args.uq is not None:
        return SubmonoidSpec(frozenset(parse_word(args.uq)))
    if sf.uq is None:
        raise ValueError("no UQ given: pass --uq or add a UQ line to the spec file")
    return SubmonoidSpec(sf.uq)


def _cmd_member(args) -> int:
    sf = _load_spec(args.spec)
    yes, witness = decide_membership(parse_word(args.word), _resolve_uq(args, sf), sf.extension)
    print(f"yes {format_word(witness)}" if yes else "no")
    return 0 if yes or not args.exit_status else 1


def _cmd_rho(args) -> int:
    data = rho_t(parse_word(args.word), args.t)
    print(f"image: {format_word(data.image)}")
    for name in sorted(data.bounds):
        lo, hi = data.bounds[name]
        print(f"bounds: {name} {lo} {hi}")
    xs = sorted(data.xiw)
    print("xi: " + " ".join(f"{n}[{i}]" for n, i in xs))
    return 0


def _cmd_pipeline(args) -> int:
    p = build_pipeline(validate_wtw(parse_word(args.w), args.t))
    if not args.dump:
        print(f"relator: {format_word(p.relator)}")
        print("ok")
        return 0
    k, sigma = p.spec.k, p.spec.sigma
    header = [f"pipeline for w = {format_word(p.spec.word)} (relator {format_word(p.relator)})"]
    for i in range(k + 1):
        for j in p.offsets:
            header.append(f"gamma: {format_word(p.gamma[(i, j)])}")
    uh_words = [format_word(w) for _, w in p.extension.basis.elements]
    header.append("UH-words: " + " | ".join(uh_words))
    ua_pos = sorted({u.name for u in p.extension.ua})
    ub_pos = sorted({u.name for u in p.extension.ub})
    header.append(
        "UA-words: " + " | ".join(format_word(p.extension.basis.defining_word(n)) for n in ua_pos)
    )
    header.append(
        "UB-words: " + " | ".join(format_word(p.extension.basis.defining_word(n)) for n in ub_pos)
    )
    header.append(
        "UQ-words: " + " | ".join(format_word(w) for w in p.letter_words(sorted(p.uq.uq)))
    )
    for name in sorted(p.translation):
        header.append(f"translate: {name} -> {format_word(p.translation[name])}")
    sys.stdout.write(serialize_spec(SpecFile(p.extension, p.uq.uq), header=header))
    return 0


def _cmd_prefix_member(args) -> int:
    p = build_pipeline(validate_wtw(parse_word(args.w), args.t))
    yes, witness = prefix_member(parse_word(args.query), p)
    if args.show_translation:
        print(f"translated: {format_word(translate_query(parse_word(args.query), p))}")
    print("yes" if yes else "no")
    return 0 if yes or not args.exit_status else 1


def _cmd_validate(args) -> int:
    sf = _load_spec(args.spec)
    problems = validate_extension(sf.extension)
    if problems:
        for msg in problems:
            print(msg)
        return 2
    print("ok")
    return 0


def _cmd_oracle(args) -> int:
    gens = [parse_word(g) for g in args.gens.split(";")]
    w = parse_word(args.word)
    if args.engine == "benois":
        yes = benois_member(w, gens)
        print("yes" if yes else "no")
        return 0 if yes or not args.exit_status else 1
    sf = _load_spec(args.spec)
    yes = bfs_member(w, gens, sf.extension, args.max_len)
    print("yes" if yes else "unknown")
    return 0 if yes or not args.exit_status else 1


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="hnnmem")
    sub = top.add_subparsers(dest="command", required=True)

    def membership_flags(p):
        p.add_argument("--exit-status", action="store_true", help="exit 1 on a negative answer")

    p = sub.add_parser("reduce", help="freely reduce a word, or Britton-reduce it in an extension")
    p.add_argument("--word", required=True)
    p.add_argument("--spec", help="extension file; reduction is free reduction without it")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("equal", help="decide equality of two words in an extension")
    p.add_argument("--spec", required=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(func=_cmd_equal)

    p = sub.add_parser("mrf", help="print the most-reduced-form set, one word per line")
    p.add_argument("--spec", required=True)
    p.add_argument("--word", required=True)
    p.set_defaults(func=_cmd_mrf)

    p = sub.add_parser("member", help="decide membership in Mon<UQ, t, t'>")
    p.add_argument("--spec", required=True)
    p.add_argument("--uq", help="signed basis letters, e.g. \"g1 g2 g3 g2'\"")
    p.add_argument("--word", required=True)
    membership_flags(p)
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("rho", help="layer-rewrite a stable-exponent-sum-zero word")
    p.add_argument("--t", required=True)
    p.add_argument("--word", required=True)
    p.set_defaults(func=_cmd_rho)

    p = sub.add_parser("pipeline", help="build the prefix-membership apparatus for a word")
    p.add_argument("--w", required=True)
    p.add_argument("--t", default="t")
    p.add_argument("--dump", action="store_true", help="emit the extension file with annotations")
    p.set_defaults(func=_cmd_pipeline)

    p = sub.add_parser("prefix-member", help="decide prefix-monoid membership")
    p.add_argument("--w", required=True)
    p.add_argument("--t", default="t")
    p.add_argument("--query", required=True)
    p.add_argument("--show-translation", action="store_true")
    membership_flags(p)
    p.set_defaults(func=_cmd_prefix_member)

    p = sub.add_parser("validate", help="check an extension file's invariants")
    p.add_argument("--spec", required=True)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("oracle", help="independent cross-checking engines")
    p.add_argument("engine", choices=["benois", "bfs"])
    p.add_argument("--gens", required=True, help="generator words separated by ';'")
    p.add_argument("--word", required=True)
    p.add_argument("--spec", help="extension file (bfs only)")
    p.add_argument("--max-len", type=int, default=6)
    membership_flags(p)
    p.set_defaults(func=_cmd_oracle)
    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
