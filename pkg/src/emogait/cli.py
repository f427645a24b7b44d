"""Command-line front end.

Subcommands: extract, train, classify, saliency, aggregate, synth, select.
Exit codes: 0 success, 1 usage error, 2 data error (the message names the
offending file or location). All randomness flows from explicit seeds, so
identical invocations produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import pathlib
import sys

from . import features, lstm, perception, pipeline, synth
from .affect import EMOTION_NAMES, parse_emotion
from .features import WindowTooShortError
from .skeleton import JOINT_NAMES, GaitParseError, load_gait, save_gait
from .synth import NoGaitForEmotionError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="emogait",
                     description="Gait-based perceived-emotion analysis toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("extract", help="compute affective feature CSV from gait files")
    p.add_argument("gaits", nargs="+", metavar="gait")
    p.add_argument("--out", required=True)

    p = sub.add_parser("train", help="train the LSTM + random forest pipeline")
    p.add_argument("--features-dir", required=True,
                   help="directory of gait files (csv/json) keyed by the labels file")
    p.add_argument("--labels", required=True, help="CSV with gait_id,label rows")
    p.add_argument("--config", help="JSON mirroring the training-config fields")
    p.add_argument("--out", required=True, help="output model directory")

    p = sub.add_parser("classify", help="predict emotion and affect for gait files")
    p.add_argument("gaits", nargs="+", metavar="gait")
    p.add_argument("--model", required=True)
    p.add_argument("--out", help="write the prediction CSV here instead of stdout")

    p = sub.add_parser("saliency", help="per-frame per-joint saliency map CSV")
    p.add_argument("gait")
    p.add_argument("--model", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("aggregate", help="aggregate a ratings CSV into labels and reports")
    p.add_argument("ratings")
    p.add_argument("--theta", type=float, default=perception.LABEL_THRESHOLD)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--drop-constant-raters", action="store_true",
                   help="drop participants whose ratings never vary")

    p = sub.add_parser("synth", help="generate a labeled synthetic gait corpus")
    p.add_argument("--emotion", required=True, choices=EMOTION_NAMES)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise", type=float, default=0.0, help="coordinate noise sigma, meters")
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("select", help="pick a gait of the requested emotion from a bank")
    p.add_argument("--bank", required=True)
    p.add_argument("--emotion", required=True, choices=EMOTION_NAMES)
    p.add_argument("--criterion", default="first", choices=["first", "random", "closest_speed"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--speed", type=float, help="target mean foot speed for closest_speed")

    return parser


def _cmd_extract(args) -> int:
    rows = []
    for path in sorted(args.gaits):
        g = load_gait(path)
        rows.append((g.id, features.affective_features(g).vector))
    features.write_features_csv(args.out, rows)
    return 0


def _load_labeled_gaits(features_dir, labels_path):
    d = pathlib.Path(features_dir)
    if not d.is_dir():
        raise FileNotFoundError(f"{d} is not a directory")
    labels = perception.load_labels_csv(labels_path)
    data = []
    for gait_id in sorted(labels):
        label = labels[gait_id]
        if label is None:
            continue
        for suffix in (".csv", ".json"):
            path = d / f"{gait_id}{suffix}"
            if path.exists():
                data.append((load_gait(path), label))
                break
        else:
            raise FileNotFoundError(f"{labels_path}: no gait file for {gait_id!r} in {d}")
    if not data:
        raise ValueError(f"{labels_path}: no labeled gaits to train on")
    return data


def _cmd_train(args) -> int:
    data = _load_labeled_gaits(args.features_dir, args.labels)
    if args.config:
        cfg = lstm.TrainConfig.from_dict(json.loads(pathlib.Path(args.config).read_text()))
    else:
        cfg = lstm.TrainConfig()
    trained, losses = pipeline.train_pipeline(data, cfg)
    out = pathlib.Path(args.out)
    pipeline.save_pipeline(trained, out)
    pipeline.save_loss_curve(losses, out / pipeline.LOSS_CURVE_FILE)
    return 0


def _cmd_classify(args) -> int:
    model = pipeline.load_pipeline(args.model)
    lines = [pipeline.PREDICTIONS_HEADER]
    for path in sorted(args.gaits):
        g = load_gait(path)
        label, probs = pipeline.classify(model, g)
        lines.append(pipeline.prediction_row(g.id, label, probs))
    text = "\n".join(lines) + "\n"
    if args.out:
        pathlib.Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_saliency(args) -> int:
    model = pipeline.load_pipeline(args.model)
    g = load_gait(args.gait)
    activations = lstm.saliency(model.lstm_model, g)
    lines = ["t," + ",".join(JOINT_NAMES)]
    for t in range(activations.shape[0]):
        lines.append(str(t) + "," + ",".join(repr(float(v)) for v in activations[t]))
    pathlib.Path(args.out).write_text("\n".join(lines) + "\n")
    return 0


def _cmd_aggregate(args) -> int:
    matrix = perception.load_ratings_csv(args.ratings)
    if args.drop_constant_raters:
        matrix = perception.filter_constant_raters(matrix)
    ratings = perception.label_ratings(perception.mean_responses(matrix), args.theta)
    correlation = perception.response_correlation(matrix)
    components, ratios = perception.pca(ratings.means[:, :3])

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    perception.write_labels_csv(out / "labels.csv", ratings)
    perception.write_correlation_csv(out / "correlation.csv", correlation)
    perception.write_pca_json(out / "pca.json", EMOTION_NAMES[:3], components, ratios)
    return 0


def _cmd_synth(args) -> int:
    emotion = parse_emotion(args.emotion)
    gaits = synth.synth_corpus(emotion, args.n, args.seed, noise_sigma=args.noise)
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    lines = ["gait_id,label"]
    for g in gaits:
        save_gait(g, out / f"{g.id}.csv")
        lines.append(f"{g.id},{emotion.name.lower()}")
    labels_path = out / "labels.csv"
    if labels_path.exists():
        existing = labels_path.read_text().splitlines()
        lines = existing + lines[1:]
    labels_path.write_text("\n".join(lines) + "\n")
    return 0


def _cmd_select(args) -> int:
    bank_dir = pathlib.Path(args.bank)
    bank = synth.load_bank(bank_dir)
    chosen = synth.gait_bank_select(
        bank,
        parse_emotion(args.emotion),
        criterion=args.criterion,
        seed=args.seed,
        target_speed=args.speed,
    )
    for suffix in (".csv", ".json"):
        path = bank_dir / f"{chosen.id}{suffix}"
        if path.exists():
            print(path)
            return 0
    raise FileNotFoundError(f"selected gait {chosen.id!r} has no file in {bank_dir}")


_COMMANDS = {
    "extract": _cmd_extract,
    "train": _cmd_train,
    "classify": _cmd_classify,
    "saliency": _cmd_saliency,
    "aggregate": _cmd_aggregate,
    "synth": _cmd_synth,
    "select": _cmd_select,
}

_DATA_ERRORS = (
    GaitParseError,
    WindowTooShortError,
    NoGaitForEmotionError,
    FileNotFoundError,
    NotADirectoryError,
    IsADirectoryError,
    json.JSONDecodeError,
    ValueError,
    OSError,
)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except _DATA_ERRORS as e:
        print(f"emogait {args.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
