"""``semiadv`` command line.

Every subcommand takes one YAML config path plus optional --seed and --out
overrides.  Relative paths inside a config resolve against the config's
directory.  Exit status: 0 success, 2 usage or parameter error, 3 parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import bounds, codes, decode, experiment
from .channel import ChannelSpec, apply_semi_adversarial, make_rng
from .errors import ParseError, SemiAdvError

log = logging.getLogger("semiadv")

EXIT_OK, EXIT_USAGE, EXIT_PARSE = 0, 2, 3


class Job:
    """A loaded config plus the command-line overrides."""

    def __init__(self, path, seed=None, out=None):
        self.path = Path(path)
        self.data = experiment.load_yaml(self.path)
        if seed is not None:
            self.data["seed"] = seed
        if out is not None:
            self.data["output"] = str(Path(out).resolve())
        self.seed = int(self.data.get("seed", 0))

    def resolve(self, p):
        p = Path(p)
        return p if p.is_absolute() else self.path.parent / p

    def need(self, key):
        if key not in self.data:
            raise SemiAdvError(f"config is missing '{key}'")
        return self.data[key]

    def spec(self):
        return experiment.build_spec(self.need("code"))

    def read(self, key="input"):
        return self.resolve(self.need(key)).read_text()

    def output(self):
        return self.resolve(self.need("output"))

    def sidecar(self, key, suffix):
        if key in self.data:
            return self.resolve(self.data[key])
        return self.output().with_name(self.output().name + suffix)


def _write(path: Path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    log.info("wrote %s", path)


# --- pipeline stages ---------------------------------------------------------------


def cmd_encode(job: Job):
    spec = job.spec()
    if "input" in job.data:
        msg = codes.parse_message(spec, job.read(), job.resolve(job.data["input"]))
    else:
        msg = codes.random_message(spec, make_rng(job.seed, 0))
        if "message_output" in job.data:
            _write(job.resolve(job.data["message_output"]), codes.format_message(msg))
    _write(job.output(), codes.format_word(codes.encode(spec, msg)))


def cmd_corrupt(job: Job):
    spec = job.spec()
    c = codes.parse_word(spec, job.read(), job.resolve(job.data["input"]))
    ch = dict(job.need("channel"))
    cs = ChannelSpec(int(ch.get("e0", 0)), int(ch["e"]), ch.get("adversary", "randomReplace"),
                     ch.get("params") or {}, job.seed)
    y, pattern = apply_semi_adversarial(c, cs, make_rng(job.seed, 1))
    _write(job.output(), codes.format_word(y))
    logd = {"channel": cs.to_dict(), "pattern": pattern.to_dict(spec.field)}
    _write(job.sidecar("log", ".pattern.json"), json.dumps(logd, indent=2) + "\n")


def cmd_decode(job: Job):
    spec = job.spec()
    dec = job.data.get("decoder") or {}
    y = codes.parse_word(spec, job.read(), job.resolve(job.data["input"]))
    L = dec.get("L")
    e = int(dec.get("e", int(decode.radius(spec, L))))
    res = decode.decode(spec, y, e, L, dec.get("method", "auto"))
    if res.success:
        _write(job.output(), codes.format_message(res.message))
    out = {"status": "Success" if res.success else "Fail",
           "reason": None if res.success else res.reason.value,
           "e": e, "L": L, "locator_degree": res.locator_degree,
           "max_degree": res.max_degree, "distance": res.distance,
           "in_region_radius": str(decode.radius(spec, L))}
    _write(job.sidecar("result", ".result.json"), json.dumps(out, indent=2) + "\n")
    if not res.success:
        log.warning("decoding failed: %s", res.reason.value)


# --- experiments -----------------------------------------------------------------


def cmd_experiment(job: Job):
    d = dict(job.data)
    d.pop("log", None)
    d.pop("json", None)
    out = job.output()
    d["output"] = str(out)
    cfg = experiment.ExperimentConfig.from_dict(d)

    def progress(row):
        log.info("point %s %s (e0=%s, e=%s): %s", row["point"], row["adversary"], row["e0"],
                 row["e"], row["rate"])

    rows, walls = experiment.run_experiment(cfg, progress)
    _write(out, experiment.rows_to_csv(rows))
    _write(job.sidecar("json", ".json"), experiment.rows_to_json(cfg, rows, walls) + "\n")


def cmd_bench(job: Job):
    b = dict(job.data.get("bench") or {})
    sizes = [int(n) for n in b.get("sizes", [1024, 2048, 4096, 8192, 16384])]
    table = experiment.run_bench(sizes, int(b.get("repetitions", 5)), b.get("family", "IRS"),
                                 int(b.get("s", 4)), int(b.get("q", 65537)),
                                 bool(b.get("fast", True)), job.seed, b.get("L"),
                                 progress=lambda n, t: log.info("n=%d %.4fs", n, t))
    _write(job.output(), experiment.bench_to_csv(table))


def cmd_gssb(job: Job):
    spec = job.spec()
    g = job.need("gssb")
    L = int(g.get("L", 1))
    wit = bounds.gssb_witness(spec, int(g["e0"]), int(g["e"]), L, job.seed)
    samples = bounds.sample_witness_balls(spec, wit, int(g.get("samples", 10)), job.seed,
                                          g.get("method", "auto"))
    F = spec.field
    out = {
        "e0": wit.e0, "e": wit.e, "L": L,
        "verified": bool(wit.verify()),
        "agreement_inequalities": [bool(x) for x in wit.agreement_inequalities()],
        "z": [[F.element_str(x) for x in row] for row in wit.z.symbols],
        "K": list(wit.K),
        "blocks": [list(b) for b in wit.blocks],
        "messages": [codes.format_message(m).strip() for m in wit.witnesses],
        "ball_sizes": [size for size, _ in samples],
        "witnesses_in_ball": [bool(ok) for _, ok in samples],
    }
    _write(job.output(), json.dumps(out, indent=2) + "\n")


def cmd_ballcheck(job: Job):
    spec = job.spec()
    b = job.need("ballcheck")
    rate = bounds.check_semi_adv_unique(spec, int(b["e0"]), int(b["e"]), int(b.get("trials", 100)),
                                        job.seed, b.get("adversary", "randomReplace"),
                                        b.get("method", "auto"), int(b.get("L", 1)))
    out = {"e0": int(b["e0"]), "e": int(b["e"]), "trials": int(b.get("trials", 100)),
           "unique_rate": rate, "in_region": decode.in_region(spec, int(b["e0"]), int(b["e"]), b.get("L"))}
    _write(job.output(), json.dumps(out, indent=2) + "\n")


COMMANDS = {
    "encode": cmd_encode,
    "corrupt": cmd_corrupt,
    "decode": cmd_decode,
    "experiment": cmd_experiment,
    "bench": cmd_bench,
    "gssb": cmd_gssb,
    "ballcheck": cmd_ballcheck,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="semiadv", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("config", help="YAML config file")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", default=None, help="override the config's output path")
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(message)s")
    try:
        job = Job(args.config, args.seed, args.out)
        COMMANDS[args.command](job)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SemiAdvError, OSError, KeyError, TypeError) as exc:
        msg = f"missing key {exc}" if isinstance(exc, KeyError) else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
