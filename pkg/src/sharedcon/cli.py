"""Command-line interface.

Subcommands: validate, extract, pseudo, analyze, synth, report.  All
failures exit non-zero with one machine-readable JSON error object on
stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analyses import analyze_corpus
from .bundle import BundleFormatError, CorpusValidationError, parse_corpus, write_corpus
from .configfile import ConfigError, as_bool, as_float, as_float_list, as_int, as_int_list, as_int_pair, parse_kv_file
from .corpus import validate
from .pipeline import PipelineConfig, _dump_constructions, _dump_types, run_pipeline
from .pseudo import build_pseudo_corpus, plan_pseudo_pairs
from .report import TEMPLATES, render_report
from .synth import GeneratorConfig, generate, write_ground_truth


def _fail(kind: str, message: str, code: int = 1) -> int:
    print(json.dumps({"error": {"type": kind, "message": message}}), file=sys.stderr)
    return code


def _cmd_validate(args: argparse.Namespace) -> int:
    corpus = parse_corpus(args.bundle, check=False)
    violations = validate(corpus)
    for v in violations:
        print(json.dumps({"code": v.code, "location": v.location, "message": v.message}))
    if violations:
        return _fail("invalid-corpus", f"{len(violations)} violation(s) found")
    print(json.dumps({"ok": True, "dyads": len(corpus.dialogues), "namings": len(corpus.namings)}))
    return 0


def _cmd_extract(args: argparse.Namespace) -> int:
    corpus = parse_corpus(args.bundle)
    per_dialogue = analyze_corpus(corpus)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _dump_constructions(per_dialogue, out / "constructions.ndj")
    _dump_types(per_dialogue, out / "types.ndj")
    print(json.dumps({"ok": True, "out": str(out)}))
    return 0


def _cmd_pseudo(args: argparse.Namespace) -> int:
    corpus = parse_corpus(args.bundle)
    plan = plan_pseudo_pairs([d.dyad for d in corpus.dialogues], args.seed)
    pseudo_corpus = build_pseudo_corpus(corpus, args.seed)
    write_corpus(
        pseudo_corpus,
        args.out,
        manifest_extras={
            "pseudo": True,
            "pseudo_seed": args.seed,
            "pseudo_assignments": [list(a) for a in plan.assignments],
        },
    )
    print(json.dumps({"ok": True, "out": str(args.out), "pairs": len(plan.assignments)}))
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    try:
        which = tuple(int(v) for v in args.which.split(","))
    except ValueError:
        raise ConfigError(f"--which must be comma-separated analysis numbers, got {args.which!r}")
    bad = sorted(set(which) - {1, 2, 3})
    if bad:
        raise ConfigError(f"unknown analyses requested: {bad}")
    config = PipelineConfig(
        corpus=Path(args.bundle),
        out=Path(args.out),
        seed=args.seed,
        analyses=which,
        pseudo=args.pseudo,
    )
    out = run_pipeline(config)
    print(json.dumps({"ok": True, "out": str(out)}))
    return 0


def _generator_config(path: str) -> GeneratorConfig:
    entries = parse_kv_file(path)
    defaults = GeneratorConfig()
    known = {
        "dyads", "fribbles", "rounds", "content_vocab", "function_vocab",
        "reuse_probability", "type_prune_schedule", "name_adoption_probability",
        "seed", "stimulus_probability", "utterances_per_speaker",
        "utterance_length", "disfluency_probability", "private_vocab",
        "cores_jitter", "distractor_overlap", "name_length",
    }
    unknown = sorted(set(entries) - known)
    if unknown:
        raise ConfigError(f"unknown generator config keys: {unknown}")
    rounds = as_int(entries, "rounds", defaults.rounds)
    return GeneratorConfig(
        dyads=as_int(entries, "dyads", defaults.dyads),
        fribbles=as_int(entries, "fribbles", defaults.fribbles),
        rounds=rounds,
        content_vocab=as_int(entries, "content_vocab", defaults.content_vocab),
        function_vocab=as_int(entries, "function_vocab", defaults.function_vocab),
        reuse_probability=as_float_list(
            entries, "reuse_probability",
            defaults.reuse_probability if rounds == defaults.rounds else (0.5,) * rounds,
        ),
        type_prune_schedule=tuple(
            as_int_list(
                entries, "type_prune_schedule",
                defaults.type_prune_schedule if rounds == defaults.rounds else (3,) * rounds,
            )
        ),
        name_adoption_probability=as_float(
            entries, "name_adoption_probability", defaults.name_adoption_probability
        ),
        seed=as_int(entries, "seed", defaults.seed),
        stimulus_probability=as_float(entries, "stimulus_probability", defaults.stimulus_probability),
        utterances_per_speaker=as_int(entries, "utterances_per_speaker", defaults.utterances_per_speaker),
        utterance_length=as_int_pair(entries, "utterance_length", defaults.utterance_length),
        disfluency_probability=as_float(entries, "disfluency_probability", defaults.disfluency_probability),
        private_vocab=as_int(entries, "private_vocab", defaults.private_vocab),
        cores_jitter=as_int(entries, "cores_jitter", defaults.cores_jitter),
        distractor_overlap=as_bool(entries, "distractor_overlap", defaults.distractor_overlap),
        name_length=as_int_pair(entries, "name_length", defaults.name_length),
    )


def _cmd_synth(args: argparse.Namespace) -> int:
    config = _generator_config(args.config) if args.config else GeneratorConfig()
    corpus, cells = generate(config)
    out = Path(args.out)
    write_corpus(corpus, out, manifest_extras={"synthetic": True, "synth_seed": config.seed})
    if out.suffix == ".zip":
        truth_path = out.with_name(out.stem + ".ground_truth.ndj")
    else:
        truth_path = out / "ground_truth.ndj"
    write_ground_truth(cells, truth_path)
    print(json.dumps({"ok": True, "out": str(out), "dyads": config.dyads}))
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    written = render_report(args.dir, template=args.template)
    print(json.dumps({"ok": True, "written": [str(p) for p in written]}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sharedcon",
        description="Detect shared lemmatised constructions in referential-communication "
        "dialogues and analyse their link to naming convergence.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a corpus bundle against all invariants")
    p.add_argument("bundle")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("extract", help="dump shared constructions and types")
    p.add_argument("bundle")
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("pseudo", help="write the pseudo-pair control corpus")
    p.add_argument("bundle")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=_cmd_pseudo)

    p = sub.add_parser("analyze", help="run analyses and write tables")
    p.add_argument("bundle")
    p.add_argument("--which", default="1,2,3", help="comma-separated analyses (default 1,2,3)")
    p.add_argument("--pseudo", action="store_true", help="also run on the pseudo-pair corpus")
    p.add_argument("--seed", type=int, default=0, help="seed for pseudo-pair planning")
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("synth", help="generate a synthetic corpus bundle")
    p.add_argument("config", nargs="?", help="flat key-value config file (defaults used if omitted)")
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("report", help="render figures and a text summary for an analyze directory")
    p.add_argument("dir")
    p.add_argument("--template", choices=TEMPLATES, default=None)
    p.set_defaults(func=_cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BundleFormatError as exc:
        return _fail("bundle-format", str(exc), 2)
    except CorpusValidationError as exc:
        return _fail("invalid-corpus", str(exc), 2)
    except ConfigError as exc:
        return _fail("config", str(exc), 2)
    except (ValueError, FileNotFoundError) as exc:
        return _fail(type(exc).__name__, str(exc), 1)


if __name__ == "__main__":
    sys.exit(main())
