"""CSV serialization of sweep reports and the sweep config file."""

import csv
import io
import os
import sys
import tempfile
from dataclasses import fields

from .allocation import GaParams, PowerModel
from .quantization import INF
from .simulation import MseReport, ReportRow, SweepConfig

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

COLUMNS = [f.name for f in fields(ReportRow)]
SCHEMA_VERSION = 1


def format_bits(bits):
    return "-".join("inf" if b == INF else str(int(b)) for b in bits)


def parse_bits(text):
    return tuple(INF if p == "inf" else int(p) for p in text.split("-"))


def report_to_csv(report):
    buf = io.StringIO()
    buf.write(f"# schema={SCHEMA_VERSION} n={report.n} "
              f"normalization={report.normalization}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in report.rows:
        w.writerow([r.scheme, repr(r.snr_db), repr(r.mse_closed_form),
                    repr(r.mse_empirical), format_bits(r.b_chosen),
                    r.evaluations, repr(r.channel_kappa), r.seed])
    return buf.getvalue()


def plot_data_to_csv(report):
    """Long-format ``scheme, snr_db, mse`` table for external plotting."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["scheme", "snr_db", "mse"])
    for r in report.rows:
        w.writerow([r.scheme, repr(r.snr_db), repr(r.mse_closed_form)])
    return buf.getvalue()


def csv_to_report(text):
    meta = {}
    lines = text.splitlines()
    while lines and lines[0].startswith("#"):
        for item in lines.pop(0)[1:].split():
            key, _, value = item.partition("=")
            meta[key] = value
    reader = csv.DictReader(lines)
    if reader.fieldnames != COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    rows = [
        ReportRow(
            scheme=d["scheme"],
            snr_db=float(d["snr_db"]),
            mse_closed_form=float(d["mse_closed_form"]),
            mse_empirical=float(d["mse_empirical"]),
            b_chosen=parse_bits(d["b_chosen"]),
            evaluations=int(d["evaluations"]),
            channel_kappa=float(d["channel_kappa"]),
            seed=int(d["seed"]),
        )
        for d in reader
    ]
    n = int(meta["n"]) if "n" in meta else (len(rows[0].b_chosen) if rows else 0)
    seed = rows[0].seed if rows else 0
    return MseReport(rows=rows, n=n, seed=seed,
                     normalization=meta.get("normalization", "per-stream"))


def atomic_write(path, text):
    """Write ``text`` to ``path`` via a temp file and rename."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# Flat config keys and the SweepConfig / GaParams / PowerModel field each feeds.
_SWEEP_KEYS = {"n", "snr_db_grid", "symbols_per_trial", "trials", "channel_model",
               "kappa_target", "fixed_channel", "schemes", "seed"}
_GA_KEYS = {"ga_k": "k", "ga_l": "l", "ga_t": "t", "ga_p_cross": "p_cross",
            "ga_p_mut": "p_mut", "ga_seed": "seed"}
_PM_KEYS = {"c": "c", "f_s": "f_s", "p_adc": "p_adc"}
_RUN_KEYS = {"schema", "out", "plot_out", "workers", "verbose"}
CONFIG_KEYS = _SWEEP_KEYS | set(_GA_KEYS) | set(_PM_KEYS) | _RUN_KEYS


def load_config(path):
    with open(path, "rb") as fh:
        doc = tomllib.load(fh)
    check_config(doc)
    return doc


def check_config(doc):
    unknown = set(doc) - CONFIG_KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
    if doc.get("schema", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise ValueError(f"unsupported config schema {doc.get('schema')!r}")


def sweep_config(doc):
    """Build a :class:`SweepConfig` from a flat key/value mapping."""
    check_config(doc)
    kw = {k: doc[k] for k in _SWEEP_KEYS if doc.get(k) is not None}
    n = kw.get("n", 8)
    ga = {v: doc[k] for k, v in _GA_KEYS.items() if doc.get(k) is not None}
    kw["ga"] = GaParams.defaults(n, **ga)
    pm = {v: doc[k] for k, v in _PM_KEYS.items() if doc.get(k) is not None}
    kw["pm"] = PowerModel(**pm)
    for key in ("snr_db_grid", "schemes"):
        if key in kw:
            kw[key] = tuple(kw[key])
    return SweepConfig(**kw)
