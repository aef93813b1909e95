"""Continue the 3^k coordinate search from previously frozen levels."""
import json, math, random, sys, time
import numpy as np
sys.path.insert(0, "src")
from gluedknots.config import validate, smooth, config_from_text
from gluedknots.project import project_with_retries, ProjectionSpec, directions_for_seed
from gluedknots.invariants import tricolorings
sys.path.insert(0, "scripts")
from search_three_color import candidates, tri_of

T0 = time.time()
BUDGET = float(sys.argv[1])
START = int(sys.argv[2])          # level already available
IN_OUT = sys.argv[3]

frozen = json.load(open(IN_OUT))
beam = [config_from_text("\n".join(e["ellipses"]) + "\n" +
                         "\n".join(f"glue {a} {b}" for a, b in e["edges"]))
        for e in frozen[str(START)]]
specs = [ProjectionSpec.from_direction(d) for d, _ in zip(directions_for_seed(43), range(6))]
rng = random.Random(0)
for klevel in range(START + 1, 7):
    target = 3 ** klevel
    pool, seen, stop = [], set(), False
    for parent in beam:
        for spec in specs:
            for cfg2 in candidates(parent, spec, rng):
                if time.time() - T0 > BUDGET:
                    stop = True; break
                try:
                    tri, d2 = tri_of(cfg2)
                except Exception:
                    continue
                if tri != target:
                    continue
                key = tuple(sorted(np.round(e.center, 4).tobytes() for e in cfg2.ellipses))
                if key in seen: continue
                seen.add(key)
                pool.append(cfg2)
                print(f"k={klevel}: hit #{len(pool)} at {time.time()-T0:.0f}s", flush=True)
                if len(pool) >= 16: stop = True; break
            if stop: break
        if stop: break
    if not pool:
        print(f"k={klevel}: nothing found at {time.time()-T0:.0f}s", flush=True)
        break
    beam = pool[:10]
    frozen[str(klevel)] = [{"ellipses": [e.to_text() for e in c.ellipses],
                            "edges": [list(e) for e in c.glue_edges]} for c in pool[:6]]
    json.dump(frozen, open(IN_OUT, "w"), indent=1)
    if time.time() - T0 > BUDGET: break
print("levels:", sorted(frozen), flush=True)
