"""Regenerate wilcoxon_scipy.json: rank-sum p-values from scipy for random samples."""
import json

import numpy as np
from scipy.stats import mannwhitneyu

rng = np.random.default_rng(20240531)
cases = []
for i in range(100):
    a = rng.normal(0.0, 1.0, 31)
    b = rng.normal(rng.uniform(-1.0, 1.0), rng.uniform(0.5, 2.0), 31)
    if i % 10 == 0:
        # rounded values exercise the tie correction
        a, b = np.round(a, 1), np.round(b, 1)
    p = mannwhitneyu(a, b, use_continuity=False, alternative="two-sided", method="asymptotic").pvalue
    cases.append({"a": a.tolist(), "b": b.tolist(), "p": float(p)})

with open("wilcoxon_scipy.json", "w") as fh:
    json.dump(cases, fh)
