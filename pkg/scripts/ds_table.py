"""Table of divided symmetrizations <S_w>_n and their q-analogues for length n-1.

    python3 scripts/ds_table.py --max-n 5
"""

import argparse
from dataclasses import dataclass

from qschub.bases import positivity_witness, schubert
from qschub.divsym import ds_factorized, qds_factorized
from qschub.perm import symmetric_group
from qschub.poly import format_poly


@dataclass(frozen=True)
class TableConfig:
    max_n: int = 5
    with_q: bool = True


def rows(cfg: TableConfig):
    for n in range(2, cfg.max_n + 1):
        for w in sorted(symmetric_group(n), key=lambda p: p.window(n)):
            if w.length() != n - 1:
                continue
            f = schubert(w)
            value = ds_factorized(f, n).ct()
            q_value = format_poly(qds_factorized(f, n)) if cfg.with_q else ""
            seq, _ = positivity_witness(w, n)
            yield n, "".join(map(str, w.window(n))), value, q_value, seq


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--no-q", action="store_true")
    args = ap.parse_args()
    cfg = TableConfig(max_n=args.max_n, with_q=not args.no_q)
    print(f"{'n':>2} {'w':<8} {'<S_w>':>6}  witness      q-analogue")
    for n, w, value, q_value, seq in rows(cfg):
        print(f"{n:>2} {w:<8} {value:>6}  {str(seq):<12} {q_value}")


if __name__ == "__main__":
    main()
