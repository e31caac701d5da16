"""
Generalized volcanoes for rank 3 over F_5
=========================================

Build the two preset volcanoes, validate them, break one on purpose and
write DOT files that Graphviz can render.
"""

import random
import sys
from pathlib import Path

from drinfeld_selfisog.volcano import (count_affine_points, count_projective_points, mutate,
                                       preset_volcano, validate_volcano)

out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(".")

###############################################################################
# The crater size is a class number. For y^3 = x^3 + x + 1 over F_5 there
# are 5 affine points plus one at infinity.
print("affine:", count_affine_points(5, 3, "T^3+T+1"))
print("projective:", count_projective_points(5, 3, "T^3+T+1"))

###############################################################################
# Each crater vertex gets b = q^(r-1) = 25 children per level.
for name in ("r3-cycle", "r3-loop"):
    preset, graph = preset_volcano(name, depth=1)
    report = validate_volcano(graph, preset.r, preset.g1, preset.b)
    print(f"{name}: {len(graph.levels)} vertices, valid={report.ok}")
    for note in report.notes:
        print("   note:", note)
    path = out_dir / f"{name}.dot"
    path.write_text(graph.to_dot(name.replace("-", "_")))
    print("   wrote", path)

###############################################################################
# A single random edit is always caught by the validator.
preset, graph = preset_volcano("r3-cycle", depth=1)
bad, what = mutate(graph, random.Random(1))
report = validate_volcano(bad, preset.r, preset.g1, preset.b)
print("mutation:", what)
print("valid after mutation:", report.ok)
print("first violation:", report.violations[0])
