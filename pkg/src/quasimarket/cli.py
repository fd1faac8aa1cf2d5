"""Command-line front end.

    quasimarket sweep scenario.json [--jobs 4]
    quasimarket limits --kind bose --g 1 --dl 1 --N 100 1000 10000
    quasimarket occupancy --kind bose --x 0.5 1 2 --G 50 --beta 1

Every command writes CSV (header row, comma separated, LF endings, 12
significant digits) to stdout. Exit status: 0 success, 2 bad input,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .deposit import (
    STATISTICS,
    DepositScenario,
    asymptotic_limits,
    critical_betas,
    optimal_k,
)
from .errors import DomainError, QuasimarketError
from .occupancy import (
    LevelSpec,
    gibbs_asymptotic,
    gibbs_occupancy,
    level_occupancy,
    occupancy_asymptotic,
)
from .oracle import brute_force_optimum
from .specfun import inv_digamma

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3

SWEEP_COLUMNS = ("beta", "k_star", "m_star", "income", "phase")


class InputError(Exception):
    pass


def fmt(value: float | None) -> str:
    if value is None:
        return "nan"
    return format(float(value), ".12g")


def _write_csv(header: Sequence[str], rows: Sequence[Sequence[str]], out) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    out.write(buf.getvalue())
    out.flush()


@dataclass(frozen=True)
class ScenarioFile:
    scenario: DepositScenario
    beta_min: float
    beta_max: float
    points: int
    emit_oracle: bool = False
    asymptotics: bool = False

    def betas(self) -> np.ndarray:
        return np.linspace(self.beta_min, self.beta_max, self.points)

    @classmethod
    def from_dict(cls, doc: dict) -> "ScenarioFile":
        try:
            sc = doc["scenario"]
            sw = doc["sweep"]
            opts = doc.get("options", {}) or {}
            N, G = sc["N"], sc["G"]
            if not (isinstance(N, int) and isinstance(G, int)) or isinstance(N, bool) or isinstance(G, bool):
                raise InputError("scenario.N and scenario.G must be integers")
            scenario = DepositScenario(
                N,
                G,
                float(sc["lambda1"]),
                float(sc["lambda2"]),
                sc.get("statistics", "bose"),
            )
            beta_min, beta_max = float(sw["beta_min"]), float(sw["beta_max"])
            points = sw["points"]
        except KeyError as exc:
            raise InputError(f"missing field {exc}") from exc
        except (TypeError, ValueError) as exc:
            raise InputError(str(exc)) from exc
        if not isinstance(points, int) or isinstance(points, bool) or points < 2:
            raise InputError("sweep.points must be an integer >= 2")
        if not (0 < beta_min < beta_max) or not math.isfinite(beta_max):
            raise InputError("sweep needs 0 < beta_min < beta_max")
        return cls(
            scenario,
            beta_min,
            beta_max,
            points,
            bool(opts.get("emit_oracle", False)),
            bool(opts.get("asymptotics", False)),
        )

    @classmethod
    def load(cls, path: str | Path) -> "ScenarioFile":
        try:
            doc = json.loads(Path(path).read_text())
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"{path} is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise InputError("scenario file must hold a JSON object")
        return cls.from_dict(doc)


def asymptotic_k(beta: float, s: DepositScenario) -> float:
    """Large-N estimate of the optimal strong-bank deposit, clipped to [0, N]."""
    g = s.G / s.N
    dl = s.delta_lambda
    if s.statistics == "bose":
        k = s.N * g / math.expm1(beta * dl)
    else:
        m = inv_digamma(beta * dl - math.log(g)) - 1.0
        k = s.N - m
    return min(max(k, 0.0), float(s.N))


def _sweep_row(args: tuple[float, ScenarioFile]) -> list[str]:
    beta, cfg = args
    point = optimal_k(beta, cfg.scenario)
    row = [fmt(point.beta), fmt(point.k_star), fmt(point.m_star), fmt(point.income), point.phase]
    if cfg.emit_oracle:
        row.append(str(brute_force_optimum(beta, cfg.scenario)[0]))
    if cfg.asymptotics:
        row.append(fmt(asymptotic_k(beta, cfg.scenario)))
    return row


def sweep_rows(cfg: ScenarioFile, jobs: int = 1) -> tuple[list[str], list[list[str]]]:
    header = list(SWEEP_COLUMNS)
    if cfg.emit_oracle:
        header.append("oracle_k")
    if cfg.asymptotics:
        header.append("k_asymptotic")
    tasks = [(float(b), cfg) for b in cfg.betas()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_row, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        rows = [_sweep_row(t) for t in tasks]
    return header, rows


def limits_rows(kind: str, g: float, dl: float, Ns: Sequence[int]) -> tuple[list[str], list[list[str]]]:
    if kind not in STATISTICS:
        raise InputError(f"kind must be one of {STATISTICS}")
    if not (g > 0 and dl > 0):
        raise InputError("--g and --dl must be positive")
    if any(N < 10 for N in Ns):
        raise InputError("every N must be >= 10")
    lim = asymptotic_limits(kind, g, dl)
    use_m0 = kind == "boltzmann" and not lim.condition_21
    if use_m0:
        quantity, limit = "m0", lim.m_tilde_0
    else:
        quantity, limit = "beta_c", lim.beta_c_limit
    rows = []
    for N in Ns:
        crit = critical_betas(DepositScenario.from_ratio(N, g, dl, kind))
        finite = crit.m_floor if use_m0 else crit.beta_c
        err = None if finite is None else abs(finite - limit)
        rows.append([quantity, str(N), fmt(finite), fmt(limit), fmt(err)])
    return ["quantity", "N", "finite_value", "limit_value", "abs_error"], rows


def occupancy_rows(
    kind: str,
    x: Sequence[float],
    G: Sequence[float],
    beta: float,
    M: float | None = None,
    orientation: str = "market",
) -> tuple[list[str], list[list[str]]]:
    if len(G) == 1:
        G = list(G) * len(x)
    try:
        levels = LevelSpec(tuple(x), tuple(G))
    except DomainError as exc:
        raise InputError(str(exc)) from exc
    if not beta > 0 and kind != "gibbs":
        raise InputError("--beta must be positive")
    if kind == "gibbs":
        if M is None:
            raise InputError("gibbs occupancy needs --M")
        P = gibbs_occupancy(levels, beta, M, orientation).P
        approx = gibbs_asymptotic(levels, beta, M, orientation).P
    else:
        P = [level_occupancy(kind, xi, Gi, beta) for xi, Gi in zip(levels.x, levels.G)]
        approx = []
        for xi, Gi in zip(levels.x, levels.G):
            try:
                approx.append(occupancy_asymptotic(kind, xi, Gi, beta))
            except DomainError:
                approx.append(None)
    rows = [[fmt(a), fmt(b), fmt(c), fmt(d)] for a, b, c, d in zip(levels.x, levels.G, P, approx)]
    return ["x", "G", "P", "asymptotic_P"], rows


def _int_list(values: Sequence[str]) -> list[int]:
    out = []
    for v in values:
        out.extend(int(part) for part in v.split(",") if part)
    return out


def _float_list(values: Sequence[str]) -> list[float]:
    out = []
    for v in values:
        out.extend(float(part) for part in v.split(",") if part)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quasimarket", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="optimal deposit and phase over a beta grid")
    p.add_argument("scenario", help="scenario JSON file")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("limits", help="finite-N critical values against their N -> inf limits")
    p.add_argument("--kind", choices=STATISTICS, required=True)
    p.add_argument("--g", type=float, required=True, help="limit of G/N")
    p.add_argument("--dl", type=float, default=1.0, help="lambda1 - lambda2")
    p.add_argument("--N", nargs="+", required=True, help="sizes, space or comma separated")

    p = sub.add_parser("occupancy", help="occupation numbers of a level spectrum")
    p.add_argument("--kind", choices=("gibbs", "bose", "fermi"), required=True)
    p.add_argument("--x", nargs="+", required=True, help="level values, increasing")
    p.add_argument("--G", nargs="+", default=["1"], help="multiplicities (one value broadcasts)")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--M", type=float, help="total occupation (gibbs)")
    p.add_argument("--orientation", choices=("market", "thermo"), default="market")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            header, rows = sweep_rows(ScenarioFile.load(args.scenario), max(1, args.jobs))
        elif args.command == "limits":
            try:
                Ns = _int_list(args.N)
            except ValueError as exc:
                raise InputError(f"bad --N list: {exc}") from exc
            header, rows = limits_rows(args.kind, args.g, args.dl, Ns)
        else:
            try:
                x, G = _float_list(args.x), _float_list(args.G)
            except ValueError as exc:
                raise InputError(f"bad number: {exc}") from exc
            header, rows = occupancy_rows(args.kind, x, G, args.beta, args.M, args.orientation)
    except (InputError, DomainError) as exc:
        print(f"quasimarket: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (QuasimarketError, ArithmeticError) as exc:
        print(f"quasimarket: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    _write_csv(header, rows, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
