"""Recompute the trapezoid area of an ROC CSV and compare it with a report's AUC."""
import csv
import json
import sys


def area(path):
    with open(path, newline="") as f:
        pts = [(float(r["fpr"]), float(r["tpr"])) for r in csv.DictReader(f)]
    return sum((x1 - x0) * (y0 + y1) / 2 for (x0, y0), (x1, y1) in zip(pts, pts[1:]))


def reported_auc(path):
    with open(path) as f:
        text = f.read()
    return json.loads(text.split("[machine-readable]\n", 1)[1])["auc"]


def main():
    mine, theirs = area(sys.argv[1]), reported_auc(sys.argv[2])
    print(f"recomputed {mine!r} reported {theirs!r}")
    return 0 if abs(mine - theirs) <= 1e-9 else 1


if __name__ == "__main__":
    sys.exit(main())
