"""Generate and freeze low-crossing family coordinates for n = 4, 5, 6."""
import sys, time
sys.path.insert(0, "src")
from gluedknots.families import gen_low_crossing
from gluedknots.config import config_to_text, smooth
from gluedknots.project import project_with_retries
from gluedknots.diagram import simplify
from gluedknots.knot_table import identify

t0 = time.time()
for n in (4, 5, 6):
    cfg = gen_low_crossing(n)   # slow path: data files absent while freezing
    d, _ = project_with_retries(smooth(cfg), seed=3)
    s = simplify(d.copy())
    assert s.crossing_count() == 2 * n - 2 and s.is_alternating() and s.is_reduced(), n
    with open(f"src/gluedknots/data/low_crossing_n{n}.cfg", "w") as f:
        f.write(config_to_text(cfg))
    print(f"n={n}: simp={s.crossing_count()} id={identify(d)} t={time.time()-t0:.0f}s", flush=True)
print("done", flush=True)
