"""Head-to-head window comparison on a hard target.

Reconstructs the triangular-spectrum signal delta*sinc^2(delta pi x) at a
bandwidth fraction pushed close to the limit (tau = 0.45), for three
oversampling levels.  The sinh-type window wins on every cell, usually by
orders of magnitude, which is why it is the recommended default.  Writes
the full comparison table as CSV (same format the command-line experiment
runner emits).
"""

import sys

from regusamp import ExperimentPlan, TestFunctionKind, WindowKind, emit_csv, run_approximation

plan_template = dict(
    test_fn=TestFunctionKind.SINC_SQ_BAND,
    N=256,
    m_list=tuple(range(2, 11)),
    tau_list=(9 / 20,),
    windows=(WindowKind.GAUSS, WindowKind.BSPLINE, WindowKind.SINH),
    S=20_001,
    seed=1,
)

out = sys.argv[1] if len(sys.argv) > 1 else "window_comparison.csv"
all_rows = []
for lam in (0.5, 1.0, 2.0):
    plan = ExperimentPlan(lambda_list=(lam,), **plan_template)
    report = run_approximation(plan)
    all_rows.extend(report.rows)
    by_kind = {}
    for r in report.rows:
        by_kind.setdefault(r.window, []).append(r.measured)
    print(f"\nlambda = {lam}: measured max error, N=256, tau=0.45")
    print("m     gauss        bspline      sinh         sinh wins by")
    for i, m in enumerate(plan.m_list):
        g, b, s = (by_kind[k][i] for k in plan.windows)
        print(f"{m:<4d} {g:.3e}    {b:.3e}    {s:.3e}    {min(g, b) / s:8.1f}x")

from regusamp import ErrorReport

emit_csv(ErrorReport(tuple(all_rows)), out)
print(f"\nwrote {len(all_rows)} rows to {out}")
