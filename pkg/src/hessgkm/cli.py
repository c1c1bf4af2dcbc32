"""Command-line front end.

Example::

    hessgkm --type A --rank 2 --theta 1 --ideal full --tasks betti,verify-main --out out/

Writes ``report.json`` (and ``betti.csv`` for the betti task) into the output
directory.  Exit status: 0 when every requested check passes or is skipped,
2 on any failed check, 1 on invalid input.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import linalg as la
from .actions import commute, dot_rep, invariant_dims, star_rep, subgroup_elements
from .cache import DiskCache
from .cohomology import betti_oracle_cells, cohomology
from .errors import HessGKMError, InvalidSpec, TooLarge
from .gkm import FULL, PARTIAL, build_gkm
from .hessenberg import enumerate_theta_ideals, full_ideal, make_ideal, minimal_ideal, simple_ideal
from .rootsys import WeylGroup, build_root_system, parabolic
from .theorems import (
    FAIL,
    PASS,
    SKIPPED,
    regular_cohomology,
    verify_leray_hirsch,
    verify_pd_hl_hr,
    verify_pullback_invariants,
    verify_w_module_decomposition,
)

SCHEMA = 1
TASKS = ("betti", "equivariant", "actions", "verify-main", "verify-lh", "verify-wmod",
         "regular", "pdhlhr", "enumerate")
MODES = ("full", "partial", "both")
IDEAL_KEYWORDS = ("full", "simple", "minimal")

log = logging.getLogger("hessgkm")


@dataclass
class CaseSpec:
    lie_type: str
    rank: int
    theta: list = field(default_factory=list)
    ideal: object = "full"  # keyword or list of coefficient vectors
    xi: list | None = None
    mode: str = "both"
    tasks: list = field(default_factory=lambda: ["betti"])
    seed: int = 0

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "CaseSpec":
        known = {f for f in cls.__dataclass_fields__}
        extra = set(data) - known
        if extra:
            raise InvalidSpec(f"unknown field(s) {sorted(extra)}")
        if "lie_type" not in data or "rank" not in data:
            raise InvalidSpec("lie_type and rank are required")
        spec = cls(**data)
        spec.normalize()
        return spec

    def normalize(self) -> None:
        """Canonicalize field values, raising InvalidSpec naming the bad field."""
        self.lie_type = str(self.lie_type).upper()
        try:
            self.rank = int(self.rank)
        except (TypeError, ValueError):
            raise InvalidSpec(f"rank: expected an integer, got {self.rank!r}") from None
        self.theta = _index_list("theta", self.theta, self.rank)
        if self.xi is not None:
            self.xi = list(range(1, self.rank + 1)) if self.xi == "all" else _index_list("xi", self.xi, self.rank)
        if isinstance(self.ideal, str):
            if self.ideal not in IDEAL_KEYWORDS:
                raise InvalidSpec(f"ideal: expected one of {IDEAL_KEYWORDS} or a list of vectors")
        else:
            try:
                self.ideal = [[int(x) for x in v] for v in self.ideal]
            except (TypeError, ValueError):
                raise InvalidSpec("ideal: entries must be integer coefficient vectors") from None
            if any(len(v) != self.rank for v in self.ideal):
                raise InvalidSpec(f"ideal: every vector needs {self.rank} coefficients")
        if self.mode not in MODES:
            raise InvalidSpec(f"mode: expected one of {MODES}, got {self.mode!r}")
        if isinstance(self.tasks, str):
            self.tasks = [t for t in self.tasks.split(",") if t]
        bad = [t for t in self.tasks if t not in TASKS]
        if bad:
            raise InvalidSpec(f"tasks: unknown task(s) {bad}; choose from {list(TASKS)}")
        self.tasks = [t for t in TASKS if t in self.tasks]
        try:
            self.seed = int(self.seed)
        except (TypeError, ValueError):
            raise InvalidSpec(f"seed: expected an integer, got {self.seed!r}") from None


def _index_list(name: str, value, rank: int) -> list:
    if value is None or value == "":
        return []
    if isinstance(value, str):
        value = [v for v in value.split(",") if v.strip()]
    try:
        out = sorted({int(v) for v in value})
    except (TypeError, ValueError):
        raise InvalidSpec(f"{name}: expected comma-separated indices, got {value!r}") from None
    if any(i < 1 or i > rank for i in out):
        raise InvalidSpec(f"{name}: indices must lie in 1..{rank}, got {out}")
    return out


# ---- execution ------------------------------------------------------------------

class _Case:
    def __init__(self, spec: CaseSpec, store):
        try:
            self.rs = build_root_system(spec.lie_type, spec.rank)
        except HessGKMError as exc:
            raise InvalidSpec(f"type/rank: {exc}") from None
        self.W = WeylGroup(self.rs)
        self.par = parabolic(self.rs, spec.theta, self.W)
        if spec.ideal == "full":
            self.ideal = full_ideal(self.rs, self.par)
        elif spec.ideal == "simple":
            self.ideal = simple_ideal(self.rs, self.par)
        elif spec.ideal == "minimal":
            self.ideal = minimal_ideal(self.rs, self.par)
        else:
            try:
                self.ideal = make_ideal(self.rs, self.par, spec.ideal)
            except HessGKMError as exc:
                raise InvalidSpec(f"ideal: {exc}") from None
        self.spec = spec
        self.store = store
        self.spec_verbose = False

    def graph(self, mode: str):
        return build_gkm(self.rs, self.par, self.ideal, mode)

    def modes(self) -> list:
        return {"full": [FULL], "partial": [PARTIAL], "both": [FULL, PARTIAL]}[self.spec.mode]


def _check(name: str, ok: bool | None, **witness) -> dict:
    return {"name": name, "status": SKIPPED if ok is None else (PASS if ok else FAIL), "witness": witness}


def _task_betti(case: _Case) -> tuple[dict, list]:
    out, checks = {}, []
    for mode in case.modes():
        g = case.graph(mode)
        b = cohomology(g, case.store).betti()
        oracle = betti_oracle_cells(case.rs, case.par, case.ideal, mode)
        connected = g.components() == 1
        out[mode] = {"betti": b, "oracle": oracle, "vertices": len(g.vertices), "components": g.components()}
        checks.append(_check(f"{mode}: betti equals cell oracle", b == oracle, betti=b, oracle=oracle))
        checks.append(_check(f"{mode}: betti sums to vertex count", sum(b) == len(g.vertices)))
        checks.append(_check(f"{mode}: palindromic", b == b[::-1] if connected else None,
                             **({} if connected else {"reason": "disconnected"})))
    return out, checks


def _task_equivariant(case: _Case) -> tuple[dict, list]:
    out = {}
    for mode in case.modes():
        g = case.graph(mode)
        coh = cohomology(g, case.store)
        out[mode] = {"solution_dims": [coh.solution(k).dim for k in range(g.dimension + 1)]}
        if case.spec_verbose:
            out[mode]["generators"] = {
                str(k): [[str(la.to_fraction(x)) for x in row] for row in coh.generators(k).table()]
                for k in range(g.dimension + 1)
            }
    return out, []


def _dot_group(case: _Case):
    xi = case.spec.xi
    return subgroup_elements(case.W, xi) if xi is not None else None


def _task_actions(case: _Case) -> tuple[dict, list]:
    full = case.graph(FULL)
    star = star_rep(full, case.par, store=case.store)
    dot = dot_rep(full, _dot_group(case), store=case.store)
    out = {
        "star_invariant_dims": invariant_dims(star),
        "dot_invariant_dims": invariant_dims(dot),
        "dot_group": "W" if case.spec.xi is None else f"W_xi xi={case.spec.xi}",
    }
    checks = [
        _check("star multiplicative", star.is_multiplicative()),
        _check("dot multiplicative", dot.is_multiplicative()),
        _check("star and dot commute", commute(star, dot)),
    ]
    if PARTIAL in case.modes():
        pdot = dot_rep(case.graph(PARTIAL), _dot_group(case), store=case.store)
        out["partial_dot_invariant_dims"] = invariant_dims(pdot)
    if case.spec_verbose:
        out["star"] = star.to_json()
        out["dot"] = dot.to_json()
    return out, checks


def _verification(fn):
    def task(case: _Case):
        rep = fn(case.rs, case.par, case.ideal, store=case.store)
        return {"seconds": rep.timings.get("seconds")}, rep.to_json(timings=False)
    return task


def _task_regular(case: _Case) -> tuple[dict, list]:
    xi = case.spec.xi or []
    reg = regular_cohomology(case.rs, case.par, case.ideal, xi, store=case.store)
    out = {"xi": xi, "dims": reg.betti, "ambient_dims": reg.ambient_betti, "note": reg.note}
    checks = [_check("invariant dims bounded by ambient", all(x <= y for x, y in zip(reg.betti, reg.ambient_betti)))]
    if reg.peterson is not None:
        out["peterson"] = reg.peterson
        checks.append(_check("binomial Peterson pattern", reg.peterson["match"], **reg.peterson))
    if case.spec_verbose:
        out["ring"] = reg.ring.to_json()
    return out, checks


def _task_pdhlhr(case: _Case):
    xi = case.spec.xi or []
    reg = regular_cohomology(case.rs, case.par, case.ideal, xi, store=case.store)
    rep = verify_pd_hl_hr(reg.ring, seed=case.spec.seed)
    return {"seconds": rep.timings.get("seconds")}, rep.to_json(timings=False)


def _task_enumerate(case: _Case) -> tuple[dict, list]:
    try:
        ideals = enumerate_theta_ideals(case.rs, case.par)
    except TooLarge as exc:
        raise InvalidSpec(f"tasks: enumerate: {exc}") from None
    return {"count": len(ideals), "ideals": [h.serialize() for h in ideals]}, []


def run(spec: CaseSpec, out_dir: str | Path = ".", cache_dir=None, use_cache: bool = True,
        verbose: bool = False) -> int:
    """Run a case and write its report; returns the process exit status."""
    out_dir = Path(out_dir)
    timings: dict = {}
    t_start = time.perf_counter()
    try:
        spec.normalize()
        store = DiskCache(cache_dir) if use_cache else None
        case = _Case(spec, store)
        case.spec_verbose = verbose
    except InvalidSpec as exc:
        log.error("invalid spec: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return 1

    results: dict = {}
    checks: list = []
    simple = {"betti": _task_betti, "equivariant": _task_equivariant, "actions": _task_actions,
              "regular": _task_regular, "enumerate": _task_enumerate}
    verifications = {
        "verify-main": _verification(verify_pullback_invariants),
        "verify-lh": _verification(verify_leray_hirsch),
        "verify-wmod": _verification(verify_w_module_decomposition),
        "pdhlhr": _task_pdhlhr,
    }
    try:
        for task in spec.tasks:
            t0 = time.perf_counter()
            log.info("running %s", task)
            if task in simple:
                data, task_checks = simple[task](case)
                results[task] = {"result": data, "checks": task_checks}
                checks.extend(task_checks)
            else:
                _, report = verifications[task](case)
                results[task] = report
                checks.extend(report["checks"])
            timings[task] = round(time.perf_counter() - t0, 3)
    except InvalidSpec as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if any(c["status"] == FAIL for c in checks):
        status = FAIL
    elif checks and all(c["status"] == SKIPPED for c in checks):
        status = SKIPPED
    else:
        status = PASS
    timings["total"] = round(time.perf_counter() - t_start, 3)
    if store is not None:
        timings["cache"] = store.stats()
    report = {"schema": SCHEMA, "spec": spec.to_json(), "status": status, "results": results,
              "timings": timings}
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    if "betti" in spec.tasks:
        _write_csv(case, out_dir / "betti.csv")
    log.info("status %s", status)
    return 2 if status == FAIL else 0


def _write_csv(case: _Case, path: Path) -> None:
    full = case.graph(FULL)
    part = case.graph(PARTIAL)
    bf = cohomology(full, case.store).betti()
    bp = cohomology(part, case.store).betti()
    star = invariant_dims(star_rep(full, case.par, store=case.store))
    dot = invariant_dims(dot_rep(full, _dot_group(case), store=case.store))
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["degree", "betti_full", "betti_partial", "dim_star_inv", "dim_dot_inv"])
        for k in range(len(bf)):
            w.writerow([k, bf[k], bp[k] if k < len(bp) else 0, star[k], dot[k]])


# ---- argument parsing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hessgkm", description="GKM computations for (partial) Hessenberg varieties")
    p.add_argument("--config", help="JSON file with CaseSpec fields; flags override it")
    p.add_argument("--type", dest="lie_type")
    p.add_argument("--rank", type=str)
    p.add_argument("--theta", help="comma-separated 1-based simple-root indices")
    p.add_argument("--xi", help="comma-separated indices, or 'all'")
    p.add_argument("--ideal", help="full | simple | minimal | JSON list of coefficient vectors")
    p.add_argument("--mode", help="full | partial | both")
    p.add_argument("--tasks", help=f"comma-separated subset of {','.join(TASKS)}")
    p.add_argument("--seed")
    p.add_argument("--out", default=".", help="output directory (default: current)")
    p.add_argument("--cache-dir", help="cache directory (default: $HESSGKM_CACHE_DIR or ~/.cache/hessgkm)")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--verbose", action="store_true", help="include witness matrices; log progress")
    return p


def spec_from_args(args: argparse.Namespace) -> CaseSpec:
    data: dict = {}
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidSpec(f"config: {exc}") from None
        if not isinstance(data, dict):
            raise InvalidSpec("config: expected a JSON object")
    flags = {"lie_type": args.lie_type, "rank": args.rank, "theta": args.theta, "xi": args.xi,
             "mode": args.mode, "tasks": args.tasks, "seed": args.seed}
    for k, v in flags.items():
        if v is not None:
            data[k] = v
    if args.ideal is not None:
        if args.ideal in IDEAL_KEYWORDS:
            data["ideal"] = args.ideal
        else:
            try:
                data["ideal"] = json.loads(args.ideal)
            except json.JSONDecodeError:
                raise InvalidSpec(f"ideal: not a keyword or JSON list: {args.ideal!r}") from None
    return CaseSpec.from_json(data)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        spec = spec_from_args(args)
    except InvalidSpec as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(spec, args.out, cache_dir=args.cache_dir, use_cache=not args.no_cache, verbose=args.verbose)


if __name__ == "__main__":
    sys.exit(main())
