"""Command-line front end: spectrum, solve, verify-claims, scan.

Configuration comes from flags, optionally backed by a flat
``key = value`` config file (``--config`` or the DIRAC_KEPLER_CONFIG
environment variable); flags override the file.  Energies are printed
in units of m c^2 unless ``--units ev`` is given together with
``--mc2``, the rest energy in eV.

Exit codes: 0 success, 1 numeric or claim failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from dataclasses import dataclass

from .claims import CLAIM_IDS, channel_comparison, full_report
from .params import CouplingParams, PhysicalInputs, SupercriticalCouplingError, derive_couplings
from .solver import RadialGrid, default_grid, find_eigenvalues
from .spectrum import NoRealBranchError, energy_branches
from .params import channel_from_kappa

ENV_CONFIG = "DIRAC_KEPLER_CONFIG"

SOLVE_COLUMNS = ("kappa", "n_r", "E_numeric", "E_analytic", "abs_err",
                 "q_eff", "gamma", "l_star", "N")
SPECTRUM_COLUMNS = ("kappa", "n_r", "branch", "E", "q_eff", "admissible",
                    "gamma", "l_star", "N", "error")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# configuration plumbing
# ---------------------------------------------------------------------------

def _parse_floats(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"not a number list: {text!r}") from exc


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"not an integer list: {text!r}") from exc


def read_config_file(path: str) -> dict[str, str]:
    """Flat ``key = value`` lines; '#' starts a comment; keys match flags."""
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = line.split("=", 1)
            values[key.strip().replace("-", "_").lstrip("_")] = value.strip()
    return values


_FILE_KEYS = ("alpha", "beta_s", "e2", "a", "mass", "input_units", "kappa",
              "nr_max", "window", "grid_points", "format", "out", "claims",
              "reproduce_flaw", "units", "mc2")


def _merge_config(args: argparse.Namespace) -> None:
    path = args.config or os.environ.get(ENV_CONFIG)
    if not path:
        return
    if not os.path.exists(path):
        raise UsageError(f"config file not found: {path}")
    for key, value in read_config_file(path).items():
        if key not in _FILE_KEYS:
            raise UsageError(f"unknown config key {key!r}")
        if getattr(args, key, None) is None:
            setattr(args, key, value)


@dataclass
class RunConfig:
    couplings_list: list[CouplingParams]
    kappas: list[int]
    nr_max: int
    window: tuple[float, float]
    grid_points: int | None
    fmt: str
    out: str | None
    claims: tuple[str, ...]
    reproduce_flaw: bool
    energy_scale: float   # 1 for mc^2 units, the rest energy for eV

    @property
    def couplings(self) -> CouplingParams:
        return self.couplings_list[0]

    def grid(self) -> RadialGrid | None:
        if self.grid_points is None:
            return None
        edge = max(abs(self.window[0]), abs(self.window[1]))
        r_max = 35.0 / math.sqrt(1.0 - edge * edge)
        return RadialGrid(r_min=1e-6, r_max=r_max, n=self.grid_points)


def _resolve(args: argparse.Namespace, *, allow_lists: bool) -> RunConfig:
    _merge_config(args)
    has_couplings = args.alpha is not None or args.beta_s is not None
    has_physical = args.e2 is not None or args.a is not None or args.mass is not None
    if has_couplings and has_physical:
        raise UsageError("give either --alpha/--beta-s or --e2/--a/--mass, not both")
    if has_couplings:
        if args.alpha is None or args.beta_s is None:
            raise UsageError("both --alpha and --beta-s are required")
        alphas = _parse_floats(args.alpha)
        betas = _parse_floats(args.beta_s)
    elif has_physical:
        if args.e2 is None or args.a is None:
            raise UsageError("physical input mode needs --e2 and --a")
        inputs = PhysicalInputs(mass=float(args.mass) if args.mass is not None else 1.0,
                                e2=float(args.e2), a=float(args.a),
                                units=args.input_units or "natural")
        c = derive_couplings(inputs)
        alphas, betas = [c.alpha], [c.beta_s]
    else:
        raise UsageError("no couplings given (--alpha/--beta-s or --e2/--a)")
    if not allow_lists and (len(alphas) != 1 or len(betas) != 1):
        raise UsageError("this command takes a single alpha and beta-s")
    couplings_list = [CouplingParams(alpha=al, beta_s=be)
                      for al in alphas for be in betas]

    kappa_arg = args.kappa  # list from repeated flags, str from a config file
    if kappa_arg is None:
        kappa_arg = ["-1"]
    elif isinstance(kappa_arg, str):
        kappa_arg = [kappa_arg]
    kappas: list[int] = []
    for tok in kappa_arg:
        kappas.extend(_parse_ints(tok))
    if any(k == 0 for k in kappas):
        raise UsageError("kappa = 0 is not a valid channel")

    window_txt = args.window or "-0.999,0.999"
    win = _parse_floats(window_txt)
    if len(win) != 2 or not (-1.0 < win[0] < win[1] < 1.0):
        raise UsageError(f"window must be lo,hi inside (-1, 1), got {window_txt!r}")

    fmt = (args.format or "text").lower()
    if fmt not in ("csv", "json", "text"):
        raise UsageError(f"unknown format {fmt!r}")

    units = (args.units or "mc2").lower()
    if units == "mc2":
        scale = 1.0
    elif units == "ev":
        if args.mc2 is None:
            raise UsageError("--units ev requires --mc2 (rest energy in eV)")
        scale = float(args.mc2)
    else:
        raise UsageError(f"unknown units {units!r}")

    claim_ids = tuple(tok.strip() for tok in (args.claims or ",".join(CLAIM_IDS)).split(",")
                      if tok.strip())
    bad = [cid for cid in claim_ids if cid not in CLAIM_IDS]
    if bad:
        raise UsageError(f"unknown claim id(s): {', '.join(bad)}; "
                         f"valid: {', '.join(CLAIM_IDS)}")

    nr_max = int(args.nr_max) if args.nr_max is not None else 2
    if nr_max < 0:
        raise UsageError("--nr-max must be nonnegative")
    grid_points = int(args.grid_points) if args.grid_points is not None else None
    flaw = args.reproduce_flaw
    if isinstance(flaw, str):
        flaw = flaw.strip().lower() in ("1", "true", "yes", "on")

    return RunConfig(couplings_list=couplings_list, kappas=kappas, nr_max=nr_max,
                     window=(win[0], win[1]), grid_points=grid_points, fmt=fmt,
                     out=args.out, claims=claim_ids, reproduce_flaw=bool(flaw),
                     energy_scale=scale)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _fmt_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def _emit(rows: list[dict], columns: tuple[str, ...], cfg: RunConfig) -> None:
    if cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt_cell(row.get(col)) for col in columns])
        text = buf.getvalue()
    elif cfg.fmt == "json":
        text = json.dumps(rows, indent=2, default=str) + "\n"
    else:
        widths = {c: max(len(c), 12) for c in columns}
        lines = ["  ".join(c.ljust(widths[c]) for c in columns)]
        for row in rows:
            cells = []
            for c in columns:
                v = row.get(c)
                s = "%.12g" % v if isinstance(v, float) else ("" if v is None else str(v))
                cells.append(s.ljust(widths[c]))
            lines.append("  ".join(cells).rstrip())
        text = "\n".join(lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_spectrum(cfg: RunConfig) -> int:
    c = cfg.couplings
    rows = []
    failures = 0
    for kappa in cfg.kappas:
        try:
            channel = channel_from_kappa(kappa, c)
        except SupercriticalCouplingError as exc:
            rows.append({"kappa": kappa, "error": str(exc)})
            failures += 1
            continue
        for n_r in range(cfg.nr_max + 1):
            try:
                lines = energy_branches(n_r, channel, c)
            except NoRealBranchError as exc:
                rows.append({"kappa": kappa, "n_r": n_r, "error": str(exc)})
                continue
            for line in lines:
                rows.append({
                    "kappa": kappa, "n_r": n_r, "branch": line.branch,
                    "E": line.energy * cfg.energy_scale, "q_eff": line.q_eff,
                    "admissible": line.admissible, "gamma": channel.gamma,
                    "l_star": channel.l_star, "N": line.n_eff, "error": None,
                })
    _emit(rows, SPECTRUM_COLUMNS, cfg)
    return 1 if failures == len(cfg.kappas) else 0


def _comparison_rows(kappa: int, c: CouplingParams, cfg: RunConfig) -> tuple[list[dict], bool]:
    rows = []
    trouble = False
    comp, extra = channel_comparison(kappa, c, cfg.window, cfg.nr_max, cfg.grid())
    for row in comp:
        rows.append({
            "kappa": row.channel_kappa, "n_r": row.n_r,
            "E_numeric": None if row.e_numeric is None else row.e_numeric * cfg.energy_scale,
            "E_analytic": row.e_analytic * cfg.energy_scale,
            "abs_err": None if row.abs_err is None else row.abs_err * cfg.energy_scale,
            "q_eff": row.q_eff, "gamma": row.gamma, "l_star": row.l_star,
            "N": row.n_eff,
        })
        trouble = trouble or not row.matched
    for sol in extra:
        rows.append({
            "kappa": kappa, "n_r": sol.node_index,
            "E_numeric": sol.energy * cfg.energy_scale, "E_analytic": None,
            "abs_err": None, "q_eff": None, "gamma": None, "l_star": None,
            "N": None,
        })
        trouble = True
    return rows, trouble


def cmd_solve(cfg: RunConfig) -> int:
    c = cfg.couplings
    rows: list[dict] = []
    trouble = False
    for kappa in cfg.kappas:
        try:
            kappa_rows, kappa_trouble = _comparison_rows(kappa, c, cfg)
        except SupercriticalCouplingError as exc:
            print(f"kappa={kappa}: {exc}", file=sys.stderr)
            trouble = True
            continue
        rows.extend(kappa_rows)
        trouble = trouble or kappa_trouble
    _emit(rows, SOLVE_COLUMNS, cfg)
    return 1 if trouble else 0


def cmd_scan(cfg: RunConfig) -> int:
    rows: list[dict] = []
    trouble = False
    any_ok = False
    for c in cfg.couplings_list:
        for kappa in cfg.kappas:
            try:
                kappa_rows, kappa_trouble = _comparison_rows(kappa, c, cfg)
            except SupercriticalCouplingError as exc:
                rows.append({"alpha": c.alpha, "beta_s": c.beta_s, "kappa": kappa,
                             "error": str(exc)})
                trouble = True
                continue
            any_ok = True
            for row in kappa_rows:
                row_out = {"alpha": c.alpha, "beta_s": c.beta_s, "error": None}
                row_out.update(row)
                rows.append(row_out)
            trouble = trouble or kappa_trouble
    _emit(rows, ("alpha", "beta_s") + SOLVE_COLUMNS + ("error",), cfg)
    if not any_ok:
        return 1
    return 1 if trouble else 0


def cmd_verify_claims(cfg: RunConfig) -> int:
    report = full_report(window=cfg.window, claim_ids=cfg.claims,
                         reproduce_flaw=cfg.reproduce_flaw)
    base = cfg.out or "dirac_kepler_claims"
    with open(base + ".json", "w", encoding="utf-8") as fh:
        json.dump(report.to_dict(), fh, indent=2)
        fh.write("\n")
    text = render_claims_text(report)
    with open(base + ".txt", "w", encoding="utf-8") as fh:
        fh.write(text)
    sys.stdout.write(text)
    return 0 if report.all_supported else 1


def render_claims_text(report) -> str:
    lines = [report.header, ""]
    for claim in report.claims:
        lines.append(f"[{claim.verdict.upper()}] {claim.claim_id}")
        lines.append(f"    {claim.statement}")
        for key, val in claim.tolerances.items():
            lines.append(f"    tolerance {key} = {_fmt_cell(val)}")
        for note in claim.notes:
            lines.append(f"    note: {note}")
        lines.append(f"    evidence rows: {len(claim.evidence)}")
        lines.append("")
    sweep = report.sweep
    lines.append("analytic-vs-numeric sweep:")
    lines.append(f"    lines checked: {sweep['n_lines']}, matched: {sweep['n_matched']}")
    lines.append(f"    max |E_numeric - E_analytic| = {_fmt_cell(sweep['max_abs_err'])}")
    if sweep["missing"]:
        lines.append(f"    MISSING: {sweep['missing']}")
    if sweep["extra"]:
        lines.append(f"    EXTRA: {sweep['extra']}")
    for note in report.notes:
        lines.append(f"note: {note}")
    lines.append("")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--alpha", help="vector coupling e^2/(hbar c); comma list for scan")
    shared.add_argument("--beta-s", dest="beta_s", help="scalar coupling m c a/hbar; comma list for scan")
    shared.add_argument("--e2", help="Coulomb strength e^2 (physical-input mode)")
    shared.add_argument("--a", help="mass-slope length a (physical-input mode)")
    shared.add_argument("--mass", help="rest energy m c^2 (physical-input mode)")
    shared.add_argument("--input-units", dest="input_units",
                        choices=("natural", "si-like"),
                        help="unit system of the physical inputs")
    shared.add_argument("--kappa", action="append",
                        help="channel label (repeatable or comma list)")
    shared.add_argument("--nr-max", dest="nr_max", help="largest radial index")
    shared.add_argument("--window", help="energy window lo,hi in units of m c^2")
    shared.add_argument("--grid-points", dest="grid_points", help="radial grid size")
    shared.add_argument("--format", choices=("csv", "json", "text"), help="output format")
    shared.add_argument("--out", help="output path (basename for verify-claims)")
    shared.add_argument("--config", help="flat key = value config file")
    shared.add_argument("--claims", help="comma list of claim ids to run")
    shared.add_argument("--reproduce-flaw", dest="reproduce_flaw", action="store_true",
                        default=None, help="note the dimensionally inconsistent spin variant")
    shared.add_argument("--units", choices=("mc2", "ev"), help="energy output units")
    shared.add_argument("--mc2", help="rest energy in eV (with --units ev)")

    parser = argparse.ArgumentParser(
        prog="dirac-kepler",
        description=("Bound states of a Dirac particle whose Coulomb potential "
                     "is paired with a 1/r mass slope (equivalently a scalar "
                     "Coulomb coupling)."),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[shared],
                   help="closed-form branch energies with admissibility flags")
    sub.add_parser("solve", parents=[shared],
                   help="numeric eigenvalues with analytic deltas")
    sub.add_parser("verify-claims", parents=[shared],
                   help="run the machine-checked claims report")
    sub.add_parser("scan", parents=[shared],
                   help="solve over a cartesian grid of couplings")
    return parser


_VALUE_FLAGS = ("--alpha", "--beta-s", "--e2", "--a", "--mass", "--kappa",
                "--window", "--mc2", "--nr-max", "--grid-points")
_NUMERIC_ARG = re.compile(r"^-[\d.]")


def _normalize_argv(argv: list[str]) -> list[str]:
    """Join value flags with arguments like "-1,1" that argparse would
    otherwise mistake for options."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and _NUMERIC_ARG.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_normalize_argv(list(argv)))
    try:
        if args.command == "verify-claims":
            # claims run on the built-in grid; couplings flags are not needed
            _merge_config(args)
            claim_ids = tuple(tok.strip() for tok in
                              (args.claims or ",".join(CLAIM_IDS)).split(",") if tok.strip())
            bad = [cid for cid in claim_ids if cid not in CLAIM_IDS]
            if bad:
                raise UsageError(f"unknown claim id(s): {', '.join(bad)}; "
                                 f"valid: {', '.join(CLAIM_IDS)}")
            window_txt = args.window or "-0.999,0.999"
            win = _parse_floats(window_txt)
            if len(win) != 2 or not (-1.0 < win[0] < win[1] < 1.0):
                raise UsageError(f"window must be lo,hi inside (-1, 1), got {window_txt!r}")
            flaw = args.reproduce_flaw
            if isinstance(flaw, str):
                flaw = flaw.strip().lower() in ("1", "true", "yes", "on")
            cfg = RunConfig(couplings_list=[CouplingParams(0.0, 0.0)], kappas=[-1],
                            nr_max=2, window=(win[0], win[1]), grid_points=None,
                            fmt=(args.format or "text"), out=args.out,
                            claims=claim_ids, reproduce_flaw=bool(flaw),
                            energy_scale=1.0)
            return cmd_verify_claims(cfg)
        cfg = _resolve(args, allow_lists=(args.command == "scan"))
        if args.command == "spectrum":
            return cmd_spectrum(cfg)
        if args.command == "solve":
            return cmd_solve(cfg)
        if args.command == "scan":
            return cmd_scan(cfg)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SupercriticalCouplingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
