"""Command-line front end.

Subcommands: ``build`` writes a scheme file, ``analyze`` turns one into
scatter/histogram/CDF/aggregate CSVs, ``compare`` emits the four-scheme
comparison table, ``codec`` encodes hex words to amplitude sequences and
back.  Exit codes: 0 success, 1 infeasible or model error, 2 usage error,
3 data error.
"""

from __future__ import annotations

import argparse
import csv
import sys

from .ccdm import build_ccdm
from .codec import SchemeCodec
from .combinatorics import DEFAULT_ALPHABET, AmplitudeAlphabet
from .config import RunConfig, parse_config
from .errors import (
    CalibrationError,
    DecodeError,
    DmShapeError,
    ModelDomainError,
    RateInfeasibleError,
    SchemeFileError,
)
from .ess import build_ess
from .mpdm import build_mpdm
from .nli import NliModel, SnrReport, analyze
from .optimizer import build_opt_mpdm, compare_schemes
from .schemefile import read_scheme, write_scheme
from .schemes import CompositionSet

BUILDERS = {
    "ccdm": build_ccdm,
    "mpdm": build_mpdm,
    "ess": build_ess,
    "opt-mpdm": build_opt_mpdm,
}


def _parse_alphabet(text: str | None) -> AmplitudeAlphabet:
    if text is None:
        return DEFAULT_ALPHABET
    try:
        return AmplitudeAlphabet(tuple(float(x) for x in text.split(",")))
    except ValueError as exc:
        raise SchemeFileError(f"bad alphabet {text!r}: {exc}") from exc


def _resolve_model(cfg: RunConfig, built: CompositionSet) -> NliModel:
    """Model from config; the default second anchor needs the pairwise scheme."""
    if cfg.eta0 is not None or cfg.eta1 is not None \
            or cfg.anchor2_kurtosis is not None:
        return cfg.resolve_model()
    if built.scheme == "mpdm":
        reference = built
    else:
        reference = build_mpdm(built.n, built.k, built.alphabet)
    return cfg.resolve_model(anchor2_kurtosis=reference.kurtosis_range()[0])


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)


def _fmt(x) -> str:
    return repr(float(x)) if isinstance(x, float) else str(x)


def cmd_build(args) -> int:
    alphabet = _parse_alphabet(args.alphabet)
    built = BUILDERS[args.scheme](args.n, args.k, alphabet)
    write_scheme(built, args.out)
    print(f"wrote {args.out}: {built.scheme} n={built.n} k={built.k} "
          f"compositions={built.n_compositions} "
          f"rate_loss={built.rate_loss:.4f}")
    return 0


def _write_report(prefix: str, report: SnrReport) -> None:
    _write_csv(prefix + "_scatter.csv",
               ["composition", "kurtosis", "snr_db", "weight"],
               ((e.composition_id, _fmt(e.kurtosis), _fmt(e.snr_db),
                 _fmt(e.weight)) for e in report.entries))
    _write_csv(prefix + "_histogram.csv", ["bin_center_db", "weight"],
               ((_fmt(c), _fmt(w)) for c, w in report.histogram))
    _write_csv(prefix + "_cdf.csv", ["snr_db", "cumulative_weight"],
               ((_fmt(s), _fmt(w)) for s, w in report.cdf))
    _write_csv(prefix + "_aggregates.csv",
               ["min_snr_db", "max_snr_db", "avg_snr_db", "p2p_db"],
               [(_fmt(report.min_db), _fmt(report.max_db),
                 _fmt(report.avg_db), _fmt(report.p2p_db))])


def cmd_analyze(args) -> int:
    built = read_scheme(args.scheme_file)
    cfg = parse_config(args.config)
    model = _resolve_model(cfg, built)
    report = analyze(built, model, bin_width_db=args.bins)
    _write_report(args.out, report)
    print(f"{built.scheme}: min {report.min_db:.3f} max {report.max_db:.3f} "
          f"p2p {report.p2p_db:.3f} avg {report.avg_db:.3f} dB")
    return 0


def cmd_compare(args) -> int:
    alphabet = _parse_alphabet(args.alphabet)
    cfg = parse_config(args.config)
    mpdm = build_mpdm(args.n, args.k, alphabet)
    if cfg.eta0 is not None or cfg.eta1 is not None \
            or cfg.anchor2_kurtosis is not None:
        model = cfg.resolve_model()
    else:
        model = cfg.resolve_model(anchor2_kurtosis=mpdm.kurtosis_range()[0])
    rows = compare_schemes(args.n, args.k, model, alphabet,
                           built={"mpdm": mpdm})
    header = ["scheme", "n_compositions", "rate_loss", "max_snr_db",
              "min_snr_db", "p2p_db", "avg_snr_db"]
    table = [(r.scheme, r.n_compositions, _fmt(r.rate_loss),
              _fmt(r.max_snr_db), _fmt(r.min_snr_db), _fmt(r.p2p_db),
              _fmt(r.avg_snr_db)) for r in rows]
    if args.out:
        _write_csv(args.out, header, table)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    for row in table:
        writer.writerow(row)
    return 0


def cmd_codec(args) -> int:
    built = read_scheme(args.scheme_file)
    codec = SchemeCodec(built)
    if args.direction == "encode":
        try:
            word = int(args.payload, 16)
        except ValueError:
            print(f"codec encode: {args.payload!r} is not a hex word",
                  file=sys.stderr)
            return 2
        seq = codec.encode(word)
        print(",".join(str(int(x)) if x.is_integer() else repr(x)
                       for x in seq))
    else:
        try:
            seq = [float(x) for x in args.payload.split(",")]
        except ValueError:
            print(f"codec decode: {args.payload!r} is not an amplitude "
                  "sequence", file=sys.stderr)
            return 2
        word = codec.decode(seq)
        width = (built.k + 3) // 4
        print(f"0x{word:0{width}x}")
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dmshape",
        description="Build finite-blocklength distribution matchers and "
                    "evaluate their per-block effective SNR.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build a scheme and write it to a file")
    p_build.add_argument("--scheme", required=True, choices=sorted(BUILDERS))
    p_build.add_argument("--n", type=int, required=True)
    p_build.add_argument("--k", type=int, required=True)
    p_build.add_argument("--alphabet", help="comma-separated amplitude levels")
    p_build.add_argument("--config", help="key-value config file")
    p_build.add_argument("--out", required=True)
    p_build.set_defaults(func=cmd_build)

    p_an = sub.add_parser("analyze", help="per-block SNR CSVs for a scheme file")
    p_an.add_argument("scheme_file")
    p_an.add_argument("--config", help="key-value config file")
    p_an.add_argument("--out", required=True, help="output CSV prefix")
    p_an.add_argument("--bins", type=float, default=0.01,
                      help="histogram bin width in dB")
    p_an.set_defaults(func=cmd_analyze)

    p_cmp = sub.add_parser("compare", help="four-scheme comparison table")
    p_cmp.add_argument("--n", type=int, required=True)
    p_cmp.add_argument("--k", type=int, required=True)
    p_cmp.add_argument("--alphabet")
    p_cmp.add_argument("--config")
    p_cmp.add_argument("--out")
    p_cmp.set_defaults(func=cmd_compare)

    p_cod = sub.add_parser("codec", help="encode/decode against a scheme file")
    p_cod.add_argument("direction", choices=["encode", "decode"])
    p_cod.add_argument("scheme_file")
    p_cod.add_argument("payload",
                       help="hex word (encode) or comma-separated amplitudes "
                            "(decode)")
    p_cod.set_defaults(func=cmd_codec)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RateInfeasibleError, ModelDomainError, CalibrationError) as exc:
        print(f"dmshape: {exc}", file=sys.stderr)
        return 1
    except (SchemeFileError, DecodeError) as exc:
        print(f"dmshape: {exc}", file=sys.stderr)
        return 3
    except DmShapeError as exc:
        print(f"dmshape: internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
