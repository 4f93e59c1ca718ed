#!/usr/bin/env python3
# Copyright 2026 The Sketchy Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Rebuilds an a9a-format LIBSVM file from the raw UCI Adult training split.

The a9a binarization: each categorical attribute with m values becomes m
indicator features, continuous attributes are discretized into quantile bins
(five for age, fnlwgt, education-num and hours-per-week; zero/nonzero for the
capital columns). Missing values ('?') set no indicator. That gives 123
binary features; the intercept is appended by the parser, not stored here.

Usage:
  make_a9a.py ADULT_DATA_OR_WHEEL OUTPUT

ADULT_DATA_OR_WHEEL is either the plain `adult.data` file or a wheel that
contains it (for example the `responsibly` wheel from PyPI).
"""

import bisect
import io
import sys
import zipfile

CATEGORIES = {
    "workclass": "Private, Self-emp-not-inc, Self-emp-inc, Federal-gov, Local-gov, State-gov, Without-pay, Never-worked",
    "education": "Bachelors, Some-college, 11th, HS-grad, Prof-school, Assoc-acdm, Assoc-voc, 9th, 7th-8th, 12th, Masters, 1st-4th, 10th, Doctorate, 5th-6th, Preschool",
    "marital-status": "Married-civ-spouse, Divorced, Never-married, Separated, Widowed, Married-spouse-absent, Married-AF-spouse",
    "occupation": "Tech-support, Craft-repair, Other-service, Sales, Exec-managerial, Prof-specialty, Handlers-cleaners, Machine-op-inspct, Adm-clerical, Farming-fishing, Transport-moving, Priv-house-serv, Protective-serv, Armed-Forces",
    "relationship": "Wife, Own-child, Husband, Not-in-family, Other-relative, Unmarried",
    "race": "White, Asian-Pac-Islander, Amer-Indian-Eskimo, Other, Black",
    "sex": "Female, Male",
    "native-country": "United-States, Cambodia, England, Puerto-Rico, Canada, Germany, Outlying-US(Guam-USVI-etc), India, Japan, Greece, South, China, Cuba, Iran, Honduras, Philippines, Italy, Poland, Jamaica, Vietnam, Mexico, Portugal, Ireland, France, Dominican-Republic, Laos, Ecuador, Taiwan, Haiti, Columbia, Hungary, Guatemala, Nicaragua, Scotland, Thailand, Yugoslavia, El-Salvador, Trinadad&Tobago, Peru, Hong, Holand-Netherlands",
}

COLUMNS = [
    ("age", 5), ("workclass", None), ("fnlwgt", 5), ("education", None),
    ("education-num", 5), ("marital-status", None), ("occupation", None),
    ("relationship", None), ("race", None), ("sex", None),
    ("capital-gain", 2), ("capital-loss", 2), ("hours-per-week", 5),
    ("native-country", None),
]


def read_rows(path):
    if path.endswith(".whl"):
        with zipfile.ZipFile(path) as z:
            name = next(n for n in z.namelist() if n.endswith("adult/adult.data"))
            text = z.read(name).decode("ascii")
    else:
        with open(path, encoding="ascii") as f:
            text = f.read()
    rows = []
    for line in io.StringIO(text):
        fields = [x.strip() for x in line.strip().split(",")]
        if len(fields) == 15:
            rows.append(fields)
    return rows


def quantile_cuts(values, bins):
    """Lower edges of bins 1..bins-1; a value v lands in bin #(edges <= v)."""
    if bins == 2:
        return [min(v for v in values if v > 0)]  # zero versus nonzero
    ordered = sorted(values)
    distinct = sorted(set(values))
    cuts = []
    for k in range(1, bins):
        cut = ordered[(len(ordered) * k) // bins]
        if cuts and cut <= cuts[-1]:
            # A heavy tie spans several quantiles: give it its own bin.
            cut = distinct[bisect.bisect_right(distinct, cuts[-1])]
        cuts.append(cut)
    return cuts


def main(argv):
    if len(argv) != 3:
        sys.stderr.write(__doc__)
        return 2
    rows = read_rows(argv[1])
    offsets, cuts, next_index = [], [], 1
    for col, (name, bins) in enumerate(COLUMNS):
        offsets.append(next_index)
        if bins is None:
            cuts.append([x.strip() for x in CATEGORIES[name].split(",")])
            next_index += len(cuts[-1])
        else:
            cuts.append(quantile_cuts([float(r[col]) for r in rows], bins))
            next_index += bins
    assert next_index - 1 == 123, next_index

    with open(argv[2], "w", encoding="ascii") as out:
        for r in rows:
            label = "+1" if r[14].startswith(">50K") else "-1"
            features = []
            for col, (name, bins) in enumerate(COLUMNS):
                value = r[col]
                if value == "?":
                    continue
                if bins is None:
                    features.append(offsets[col] + cuts[col].index(value))
                else:
                    features.append(offsets[col] + bisect.bisect_right(cuts[col], float(value)))
            out.write(label + "".join(f" {i}:1" for i in features) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
