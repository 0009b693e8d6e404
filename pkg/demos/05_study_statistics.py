"""The study's analysis pipeline on synthetic data.

Builds seven synthetic participants with a perfectly anti-correlated
NARS/PTT pattern and a deliberately unreliable landmark-animacy scale, then
prints the full descriptives / reliability / comparison / correlation report.
"""

from waydirector.dialogue import SessionRecord
from waydirector.stats import (
    analyze_sessions,
    cronbach_alpha,
    p_from_r,
    pearson_r,
    render_markdown,
    wilcoxon_signed_rank,
)

NOISY_ANIMACY = [
    [4, 2, 5, 5, 2, 5], [2, 2, 3, 3, 3, 1], [4, 4, 4, 3, 5, 5],
    [3, 4, 5, 3, 4, 1], [5, 2, 1, 1, 2, 4], [2, 5, 4, 2, 2, 5],
    [2, 1, 5, 4, 1, 5],
]

records = []
base = [1, 2, 3, 2, 4, 3, 5]
for i, a in enumerate(base):
    records.append(SessionRecord(
        participant_id=f"S{i:02d}",
        condition_order=("skeletal", "landmark"),
        complete=True,
        nars=[a] * 14,
        ptt=[6 - a] * 6,
        conditions={
            "skeletal": {
                "animacy": [a] * 6,
                "intelligence": [a] * 5,
                "task_success": [j < (i % 4) for j in range(3)],
                "task_rooms": [5, 3, 7],
            },
            "landmark": {
                "animacy": NOISY_ANIMACY[i],
                "intelligence": [min(5, a + 1)] * 5,
                "task_success": [j < min(3, i % 4 + 1) for j in range(3)],
                "task_rooms": [5, 3, 7],
            },
        },
    ))

report = analyze_sessions(records)
print(render_markdown(report))

print("individual procedures:")
w = wilcoxon_signed_rank([(1, 3), (2, 5), (4, 4), (2, 6), (5, 6), (1, 2), (3, 5)])
print(f"  wilcoxon: n_eff={w.n_effective} W+={w.w_plus} W-={w.w_minus} "
      f"z={w.z:.3f} p_exact={w.p_exact:.4f} p_approx={w.p_approx:.4f}")

r = pearson_r([1, 2, 3, 4, 5, 6, 7], [2.1, 1.8, 3.4, 2.9, 4.8, 4.1, 6.0])
print(f"  pearson:  r={r.r:.3f} t={r.t_stat:.3f} df={r.df} p={r.p_two_tailed:.4f}")

print(f"  p_from_r(-0.912, n=7) = {p_from_r(-0.912, 7):.4f}   (published: 0.004)")
print(f"  p_from_r( 0.692, n=7) = {p_from_r(0.692, 7):.4f}   (published: 0.085)")

alpha = cronbach_alpha(NOISY_ANIMACY)
print(f"  cronbach alpha of the noisy animacy items: {alpha:.3f} "
      f"(below 0.7, excluded from comparisons)")
