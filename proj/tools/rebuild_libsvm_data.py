#!/usr/bin/env python3
# Copyright 2026 The ipboost Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Rebuilds heart_scale and breast-cancer_scale from the UCI originals.

The LIBSVM copies are min-max scaled versions of the UCI Statlog (Heart) and
Wisconsin Breast Cancer (original) data sets. Both originals ship inside
PyPI packages: Statlog heart in `keel-ds` and the Wisconsin data as MASS
`biopsy` in `pydataset`. Scaling follows svm-scale: every feature mapped to
[-1, 1], zeros omitted, values printed with %.6g.

usage: rebuild_libsvm_data.py KEEL_WHEEL PYDATASET_SDIST OUT_DIR
"""

import csv
import io
import sys
import tarfile
import zipfile
from pathlib import Path


def svm_scale(rows):
    d = len(rows[0])
    lo = [min(r[k] for r in rows) for k in range(d)]
    hi = [max(r[k] for r in rows) for k in range(d)]
    out = []
    for r in rows:
        feats = []
        for k in range(d):
            if hi[k] == lo[k]:
                continue
            v = -1.0 + 2.0 * (r[k] - lo[k]) / (hi[k] - lo[k])
            if v != 0.0:
                feats.append(f"{k + 1}:{v:.6g}")
        out.append(feats)
    return out


def write(path, labels, scaled):
    with open(path, "w") as f:
        for y, feats in zip(labels, scaled):
            f.write(" ".join([y] + feats) + " \n")


def heart(keel_wheel, out_dir):
    raw = zipfile.ZipFile(keel_wheel).read(
        "keel_ds/data/balanced/raw/heart.dat").decode()
    rows, labels = [], []
    for line in raw.splitlines():
        if not line or line.startswith("@"):
            continue
        vals = [float(v) for v in line.split(",")]
        rows.append(vals[:-1])
        labels.append("+1" if vals[-1] == 2 else "-1")
    write(out_dir / "heart_scale", labels, svm_scale(rows))


def breast_cancer(pydataset_sdist, out_dir):
    with tarfile.open(pydataset_sdist) as outer:
        member = next(m for m in outer.getmembers()
                      if m.name.endswith("resources.tar.gz"))
        inner_bytes = outer.extractfile(member).read()
    with tarfile.open(fileobj=io.BytesIO(inner_bytes)) as inner:
        member = next(m for m in inner.getmembers()
                      if m.name.endswith("csv/MASS/biopsy.csv"))
        text = inner.extractfile(member).read().decode()
    rows, labels = [], []
    for rec in csv.DictReader(io.StringIO(text)):
        vals = [rec["ID"]] + [rec[f"V{k}"] for k in range(1, 10)]
        if any(v in ("NA", "") for v in vals):
            continue
        rows.append([float(v) for v in vals])
        labels.append("2" if rec["class"] == "benign" else "4")
    write(out_dir / "breast-cancer_scale", labels, svm_scale(rows))


def main():
    if len(sys.argv) != 4:
        sys.exit(__doc__)
    out_dir = Path(sys.argv[3])
    out_dir.mkdir(parents=True, exist_ok=True)
    heart(sys.argv[1], out_dir)
    breast_cancer(sys.argv[2], out_dir)


if __name__ == "__main__":
    main()
