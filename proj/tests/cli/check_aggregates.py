#!/usr/bin/env python3
"""Recompute per-method aggregates of a report.json from its rows and compare."""
import json
import math
import sys

from scipy import stats

FIELDS = ["success", "planning_time_s", "execution_time_s", "percent_open_loop", "e_real_expected",
          "e_nominal_expected"]


def value(row, field):
    v = row[field]
    if v is None:
        return None
    return float(v)


def main(path):
    report = json.load(open(path))
    rows = report["rows"]
    order = []
    for r in rows:
        if r["method"] not in order:
            order.append(r["method"])
    if [a["method"] for a in report["aggregates"]] != order:
        print("method order differs")
        return 1
    failures = 0
    for agg in report["aggregates"]:
        mine = [r for r in rows if r["method"] == agg["method"]]
        if agg["runs"] != len(mine):
            print(agg["method"], "run count", agg["runs"], len(mine))
            failures += 1
        for f in FIELDS:
            xs = [value(r, f) for r in mine]
            xs = [x for x in xs if x is not None and math.isfinite(x)]
            got = agg[f]
            if got["n"] != len(xs):
                print(agg["method"], f, "n", got["n"], len(xs))
                failures += 1
                continue
            if not xs:
                continue
            mean = sum(xs) / len(xs)
            if abs(got["mean"] - mean) > 1e-9:
                print(agg["method"], f, "mean", got["mean"], mean)
                failures += 1
            if len(xs) < 2:
                if got["ci95_half_width"] is not None:
                    print(agg["method"], f, "CI present for n < 2")
                    failures += 1
                continue
            sd = math.sqrt(sum((x - mean) ** 2 for x in xs) / (len(xs) - 1))
            half = stats.t.ppf(0.975, len(xs) - 1) * sd / math.sqrt(len(xs))
            if abs(got["ci95_half_width"] - half) > 1e-9:
                print(agg["method"], f, "ci", got["ci95_half_width"], half)
                failures += 1
    print(f"checked {len(report['aggregates'])} methods over {len(rows)} rows: {failures} mismatches")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1]))
