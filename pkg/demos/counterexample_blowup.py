"""Run the counterexample sequences and show the target norms growing
while the source norm stays fixed."""

from geoxform.verify import blowup_probe

CASES = {
    "Hn1": dict(n=3, k=2, p=2),
    "Sn": dict(n=3, k=1, p=1.5, alpha2=1),
    "RnAnnulusK1": dict(n=2, p=1.5),
}

for example_id, params in CASES.items():
    res = blowup_probe(example_id, params)
    tail = ", ".join(f"{v:.3g}" for v in res.values[-4:])
    print(f"{example_id:12s} {res.verdict:10s} source {res.source_norm:.6g}  last values {tail}")
