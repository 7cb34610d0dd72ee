"""Command-line front end, batch runner and HilbertFn cache.

    gradedrham --weights 2,2 --f "x1^2+x2^2" koszul-h1 --window 0:8
    gradedrham example01 --n 4 --m 2
    gradedrham batch corpus.jsonl --out results.csv --jobs 4

Reports go to stdout as sorted-key JSON (or a plain table with --table).
Exit status: 0 success, 2 bad input or failed precondition, 1 anything else.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any

from . import figures
from .bounds import NotIsolatedError, example01, filtration_report, theorem2_bound
from .derham import concentration_check, stabilized_homology, truncated_homology
from .koszul import h1_hilbert
from .polyring import NotHomogeneousError, PolySyntaxError, Weights, check_homogeneous, format_poly, parse_poly
from .quotient import HilbertFn, hilbert_function, isolated_singularity_check

COMMANDS = ("hilbert", "koszul-h1", "isolated", "bound", "derham", "concentration", "example01", "filtration")
CSV_HEADER = ("f", "weights", "command", "result", "detail", "ms")


class UsageError(ValueError):
    """Bad flag value; the message names the flag."""

    def __init__(self, flag: str, msg: str):
        super().__init__("%s: %s" % (flag, msg))
        self.flag = flag


class PreconditionError(ValueError):
    pass


# -- flag parsing -------------------------------------------------------------------

def parse_int_list(text: str, flag: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(flag, "expected comma-separated integers, got %r" % text) from None
    if not out:
        raise UsageError(flag, "empty list")
    return out


def parse_window(text: str, flag: str = "--window") -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise UsageError(flag, "expected lo:hi, got %r" % text)
    try:
        lo, hi = int(parts[0]), int(parts[1])
    except ValueError:
        raise UsageError(flag, "expected integers in lo:hi, got %r" % text) from None
    if lo > hi:
        raise UsageError(flag, "lo %d exceeds hi %d" % (lo, hi))
    return lo, hi


def parse_caps(text: str, flag: str = "--caps") -> tuple[int, int, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(flag, "expected cz:cb:cmax, got %r" % text)
    try:
        cz, cb, cmax = (int(p) for p in parts)
    except ValueError:
        raise UsageError(flag, "expected integers in cz:cb:cmax, got %r" % text) from None
    if cz < 1 or cb < cz or cmax < 1:
        raise UsageError(flag, "need 1 <= cz <= cb and cmax >= 1, got %r" % text)
    return cz, cb, cmax


def _weights(job: dict) -> Weights:
    if "weights" not in job or job["weights"] is None:
        raise UsageError("--weights", "required for %s" % job.get("command"))
    w = job["weights"]
    if isinstance(w, str):
        w = parse_int_list(w, "--weights")
    try:
        return Weights(tuple(w))
    except (TypeError, ValueError) as e:
        raise UsageError("--weights", str(e)) from None


def _poly(job: dict, w: Weights):
    if not job.get("f"):
        raise UsageError("--f", "required for %s" % job.get("command"))
    f = parse_poly(job["f"], w.n)
    if not f:
        raise UsageError("--f", "f must be nonzero")
    check_homogeneous(f, w)
    return f


def _window(job: dict, default: tuple[int, int]) -> tuple[int, int]:
    win = job.get("window")
    if win is None:
        return default
    if isinstance(win, str):
        return parse_window(win)
    if len(win) != 2 or win[0] > win[1]:
        raise UsageError("--window", "expected [lo, hi] with lo <= hi, got %r" % (win,))
    return int(win[0]), int(win[1])


def _caps(job: dict) -> tuple[int, int, int]:
    caps = job.get("caps", "1:4:8")
    return parse_caps(caps) if isinstance(caps, str) else parse_caps(":".join(map(str, caps)))


# -- cache ----------------------------------------------------------------------------

class HilbertCache:
    """HilbertFn results on disk, one JSON file per content hash."""

    def __init__(self, directory: str | None):
        self.directory = directory
        self.hits = 0
        self.misses = 0
        if directory:
            os.makedirs(directory, exist_ok=True)

    @staticmethod
    def key(kind: str, w: Weights, f, window: tuple[int, int]) -> str:
        blob = json.dumps({"kind": kind, "weights": list(w.w), "f": format_poly(f), "window": list(window)}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, key + ".json")

    def get(self, key: str) -> HilbertFn | None:
        if not self.directory:
            return None
        try:
            with open(self._path(key)) as fh:
                hf = HilbertFn.from_json(json.load(fh))
        except (OSError, ValueError, KeyError):
            self.misses += 1
            return None
        self.hits += 1
        return hf

    def put(self, key: str, hf: HilbertFn) -> None:
        if not self.directory:
            return
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(hf.to_json(), fh, sort_keys=True)
            os.replace(tmp, self._path(key))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def fetch(self, kind: str, w: Weights, f, window: tuple[int, int], compute) -> HilbertFn:
        key = self.key(kind, w, f, window)
        hf = self.get(key)
        if hf is None:
            hf = compute()
            self.put(key, hf)
        return hf


# -- dispatch -------------------------------------------------------------------------

def run(job: dict, cache: HilbertCache | None = None) -> dict[str, Any]:
    """Run one job spec and return its JSON-ready report."""
    cache = cache or HilbertCache(None)
    cmd = job.get("command")
    if cmd not in COMMANDS:
        raise UsageError("command", "unknown command %r" % cmd)
    if cmd == "example01":
        try:
            n, m = int(job["n"]), int(job["m"])
        except (KeyError, TypeError, ValueError):
            raise UsageError("--n/--m", "example01 needs integers n and m") from None
        if n < 2 or m < 2:
            raise UsageError("--n/--m", "need n >= 2 and m >= 2")
        return dict(example01(n, m, estimate=bool(job.get("estimate", False))), command=cmd)
    w = _weights(job)
    f = _poly(job, w)
    head = {"command": cmd, "f": format_poly(f), "weights": list(w.w)}
    if cmd in ("hilbert", "koszul-h1"):
        deg_f = f.degree(w)
        window = _window(job, (0, 4 * deg_f) if cmd == "hilbert" else (0, 2 * deg_f + w.omega))
        if cmd == "hilbert":
            hf = cache.fetch("A", w, f, window, lambda: hilbert_function(f, window, w))
        else:
            hf = cache.fetch("H1", w, f, window, lambda: h1_hilbert(f, window, w))
        return dict(head, hilbert=hf.to_json(), nonzero={str(d): v for d, v in hf.nonzero().items()})
    if cmd == "isolated":
        chk = isolated_singularity_check(f, w, job.get("d_max"))
        return dict(head, status=chk.status, top_degree=chk.top_degree, d_max=chk.d_max, dims=list(chk.dims))
    cz, cb, cmax = _caps(job)
    slack = cb - cz
    if cmd == "bound":
        try:
            rep = theorem2_bound(f, w, estimate=bool(job.get("estimate", True)), c_max=cmax, slack=max(slack, 1))
        except NotIsolatedError as e:
            raise PreconditionError(str(e)) from None
        return dict(rep.to_json(), command=cmd, label="upper bound as stated, with truncated estimate beside it")
    if cmd == "derham":
        d = int(job.get("degree", -w.omega))
        i = int(job.get("i", 1))
        th = truncated_homology(f, i, d, cz, cb, w)
        st = stabilized_homology(f, d, w, cmax, max(slack, 1), 3, i)
        return dict(
            head,
            degree=d,
            i=i,
            truncated={"c_z": cz, "c_b": cb, "dim": th.dim, "cycle_dim": th.cycle_dim, "cycles": [str(c) for c in th.cycles]},
            stabilized=st.to_json(),
        )
    if cmd == "concentration":
        degrees = job.get("degrees")
        if degrees is None:
            degrees = [d for d in range(-w.omega - 6, -w.omega + 7)]
        elif isinstance(degrees, str):
            degrees = parse_int_list(degrees, "--degrees")
        rep = concentration_check(f, [int(d) for d in degrees], w, cmax, max(slack, 1), 3, int(job.get("i", 1)))
        return dict(head, **rep.to_json())
    if cmd == "filtration":
        try:
            rep = filtration_report(f, w, c_max=cmax, slack=max(slack, 1))
        except NotIsolatedError as e:
            raise PreconditionError(str(e)) from None
        return dict(rep.to_json(), command=cmd)
    raise AssertionError(cmd)


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def render_table(report: dict) -> str:
    """Plain two-column rendering; nested row lists become aligned tables."""
    out = io.StringIO()
    scalars = {k: v for k, v in report.items() if not isinstance(v, (list, dict)) or k in ("weights", "sequence")}
    width = max((len(k) for k in scalars), default=0)
    for k in sorted(scalars):
        out.write("%-*s  %s\n" % (width, k, scalars[k]))
    for k in sorted(report):
        v = report[k]
        if isinstance(v, dict):
            out.write("\n[%s]\n" % k)
            for kk in sorted(v):
                out.write("  %s: %s\n" % (kk, json.dumps(v[kk], sort_keys=True)))
        elif isinstance(v, list) and v and all(isinstance(r, dict) for r in v):
            cols = sorted({c for r in v for c in r if not isinstance(r[c], (list, dict))})
            cells = [[str(r.get(c, "")) for c in cols] for r in v]
            widths = [max(len(c), *(len(row[j]) for row in cells)) for j, c in enumerate(cols)]
            out.write("\n[%s]\n" % k)
            out.write("  " + "  ".join(c.rjust(wd) for c, wd in zip(cols, widths)) + "\n")
            for row in cells:
                out.write("  " + "  ".join(x.rjust(wd) for x, wd in zip(row, widths)) + "\n")
    return out.getvalue()


# -- figures ----------------------------------------------------------------------------

def _figure_name(report: dict) -> str:
    blob = json.dumps({k: report.get(k) for k in ("command", "f", "weights", "n", "m")}, sort_keys=True)
    return "%s-%s.png" % (report.get("command", "report"), hashlib.sha256(blob.encode()).hexdigest()[:10])


def render_figure(report: dict, directory: str) -> str | None:
    cmd = report.get("command")
    path = os.path.join(directory, _figure_name(report))
    if cmd in ("hilbert", "koszul-h1"):
        return figures.hilbert_bars(HilbertFn.from_json(report["hilbert"]), path, "%s  %s" % (cmd, report["f"]))
    if cmd in ("bound", "example01"):
        return figures.bound_rows(report, path)
    if cmd == "concentration":
        from .derham import Stabilized

        stabs = [Stabilized(r["degree"], tuple(r["sequence"]), r.get("dim"), r.get("at_cap"), r["slack"]) for r in report["rows"]]
        return figures.cap_sweep(stabs, path, report["f"])
    return None


# -- batch ----------------------------------------------------------------------------

def summarize(report: dict) -> tuple[str, str]:
    """(result, detail) columns for the CSV summary."""
    cmd = report["command"]
    if cmd in ("hilbert", "koszul-h1"):
        h = report["hilbert"]
        return json.dumps(report["nonzero"], sort_keys=True), "window=%d:%d" % (h["lo"], h["hi"])
    if cmd == "isolated":
        return report["status"], "top=%s;d_max=%d" % (report["top_degree"], report["d_max"])
    if cmd in ("bound", "example01"):
        est = report["truncated_estimate"]
        est_s = "none" if est is None else str(est.get("dim", "unstable"))
        rows = "|".join("%d:%d:%d" % (r["nu"], r["degree"], r["h1dim"]) for r in report["rows"])
        detail = "rows=%s;estimate=%s;divergent=%s" % (rows, est_s, report["divergent"])
        if cmd == "example01":
            detail = "n=%d;m=%d;nu=%s;expected=%s;matches=%s;%s" % (
                report["n"], report["m"], report["contributing_nu"], report["expected"], report["matches_trichotomy"], detail)
            return report["verdict"], detail
        return str(report["bound"]), detail
    if cmd == "derham":
        st = report["stabilized"]
        return str(st.get("dim", "unstable")), "truncated=%d;sequence=%s" % (report["truncated"]["dim"], st["sequence"])
    if cmd == "concentration":
        per = ";".join("%d:%s" % (r["degree"], r.get("dim", "?")) for r in report["rows"])
        return ("concentrated" if report["concentrated"] else "not_concentrated"), per
    if cmd == "filtration":
        return str(sum(s["jump"] for s in report["steps"])), "jumps=%s" % [(s["nu"], s["jump"]) for s in report["steps"]]
    return "", ""


def _job_row(args: tuple[dict, str | None, bool]) -> tuple[list[str], int, int]:
    job, cache_dir, timing = args
    cache = HilbertCache(cache_dir)
    w = job.get("weights")
    w_s = ",".join(map(str, w)) if isinstance(w, list) else str(w or "")
    t0 = time.perf_counter()
    try:
        rep = run(job, cache)
        result, detail = summarize(rep)
        f_s = rep.get("f", job.get("f", ""))
        if job.get("command") == "example01":
            w_s = ",".join(map(str, rep["weights"]))
    except (UsageError, PreconditionError, NotHomogeneousError, PolySyntaxError, ValueError) as e:
        result, detail, f_s = "error", "%s: %s" % (type(e).__name__, e), job.get("f", "")
    except Exception as e:  # noqa: BLE001 - recorded per job, batch continues
        result, detail, f_s = "internal_error", "%s: %s" % (type(e).__name__, e), job.get("f", "")
    ms = "%.1f" % (1000 * (time.perf_counter() - t0)) if timing else ""
    return [f_s, w_s, str(job.get("command", "")), result, detail, ms], cache.hits, cache.misses


def read_corpus(path: str) -> list[dict]:
    jobs = []
    with open(path) as fh:
        for k, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                job = json.loads(line)
            except json.JSONDecodeError as e:
                raise UsageError("corpus", "line %d, column %d: %s" % (k, e.colno, e.msg)) from None
            if not isinstance(job, dict):
                raise UsageError("corpus", "line %d is not a JSON object" % k)
            jobs.append(job)
    return jobs


def batch(corpus_path: str, out_csv: str, cache_dir: str | None = None, jobs: int = 1, timing: bool = False) -> dict[str, int]:
    specs = read_corpus(corpus_path)
    work = [(s, cache_dir, timing) for s in specs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_job_row, work))
    else:
        results = [_job_row(x) for x in work]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row, _, _ in results:
        writer.writerow(row)
    _atomic_write(out_csv, buf.getvalue())
    return {
        "jobs": len(results),
        "errors": sum(1 for row, _, _ in results if row[3] in ("error", "internal_error")),
        "cache_hits": sum(h for _, h, _ in results),
        "cache_misses": sum(m for _, _, m in results),
    }


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    with os.fdopen(fd, "w", newline="") as fh:
        fh.write(text)
    os.replace(tmp, path)


def batch_figures(out_csv: str, directory: str) -> list[str]:
    """Trichotomy grid from the example01 rows of a batch CSV."""
    with open(out_csv, newline="") as fh:
        rows = [r for r in csv.DictReader(fh) if r["command"] == "example01" and r["result"] not in ("error", "internal_error")]
    if not rows:
        return []
    pts = []
    for r in rows:
        kv = dict(p.split("=", 1) for p in r["detail"].split(";") if "=" in p)
        bound = sum(int(x.split(":")[2]) for x in kv["rows"].split("|") if x)
        pts.append({"n": int(kv["n"]), "m": int(kv["m"]), "bound": bound})
    return [figures.trichotomy_grid(pts, os.path.join(directory, "example01-grid.png"))]


# -- argparse ---------------------------------------------------------------------------

def _global_flags(p: argparse.ArgumentParser, default) -> None:
    p.add_argument("--weights", default=default, help="comma list of variable weights, e.g. 2,2")
    p.add_argument("--f", default=default, help='polynomial in x1..xn, e.g. "x1^2+x2^2"')
    p.add_argument("--table", action="store_true", default=default or False, help="print a plain table instead of JSON")
    p.add_argument("--cache-dir", default=default, help="directory for cached Hilbert functions")
    p.add_argument("--jobs", type=int, default=default or 1, help="worker processes for batch")
    p.add_argument("--figures", metavar="DIR", default=default, help="also render a PNG figure into DIR")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gradedrham", description="Exact De Rham and Koszul homology for weighted homogeneous f.")
    _global_flags(p, None)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, argparse.SUPPRESS)  # also accepted after the subcommand
    sub = p.add_subparsers(dest="command", required=True)
    add = lambda name, **kw: sub.add_parser(name, parents=[common], **kw)  # noqa: E731

    s = add("hilbert", help="Hilbert function of R/(f)")
    s.add_argument("--window", help="lo:hi")
    s = add("koszul-h1", help="Hilbert function of H_1 of the partials on R/(f)")
    s.add_argument("--window", help="lo:hi")
    s = add("isolated", help="isolated-singularity check")
    s.add_argument("--d-max", type=int)
    s = add("bound", help="dimension bound with truncated estimate")
    s.add_argument("--caps", default="1:4:8", help="cz:cb:cmax; slack is cb - cz")
    s.add_argument("--no-estimate", dest="estimate", action="store_false")
    s = add("derham", help="truncated De Rham homology in one degree")
    s.add_argument("--degree", type=int)
    s.add_argument("--i", type=int, default=1)
    s.add_argument("--caps", default="1:4:8")
    s = add("concentration", help="vanishing of H_1 away from -omega")
    s.add_argument("--degrees", help="comma list, e.g. --degrees=-2,-6 (default -omega-6 .. -omega+6)")
    s.add_argument("--caps", default="1:4:8")
    s = add("filtration", help="pole-order filtration of the truncated H_1")
    s.add_argument("--caps", default="1:4:8")
    s = add("example01", help="x1^2+...+x_{n-1}^2+x_n^m family")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--estimate", action="store_true")
    s = add("batch", help="run a JSON-lines corpus into a CSV")
    s.add_argument("corpus")
    s.add_argument("--out", required=True)
    s.add_argument("--timing", action="store_true", help="fill the ms column (breaks byte-identical reruns)")
    return p


def _job_from_args(a: argparse.Namespace) -> dict:
    job = {"command": a.command, "f": a.f}
    if a.weights is not None:
        job["weights"] = parse_int_list(a.weights, "--weights")
    for key in ("window", "caps", "degrees", "degree", "n", "m", "estimate", "i", "d_max"):
        val = getattr(a, key, None)
        if val is not None:
            job[key] = val
    return job


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.jobs < 1:
            raise UsageError("--jobs", "must be at least 1")
        if args.command == "batch":
            summary = batch(args.corpus, args.out, args.cache_dir, args.jobs, args.timing)
            if args.figures:
                summary["figures"] = batch_figures(args.out, args.figures)
            print(dumps(summary))
            return 0
        report = run(_job_from_args(args), HilbertCache(args.cache_dir))
        if args.figures:
            render_figure(report, args.figures)
        print(render_table(report) if args.table else dumps(report))
        return 0
    except (UsageError, PreconditionError, NotHomogeneousError, PolySyntaxError, NotIsolatedError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except Exception as e:  # noqa: BLE001
        print("internal error: %s: %s" % (type(e).__name__, e), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
