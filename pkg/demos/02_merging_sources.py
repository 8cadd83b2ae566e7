# Merging two consistent sources
#
# Each team's table satisfies Id -> K and Id -> C on its own.  The union
# does not.  This compares per-source truth values with the value in the
# merged database.

from pathlib import Path

from fdchase import Classifier, Delta, Tuple, chase, knowledge_le, merge_sources, merged_truth_report
from fdchase.formats import read_fds, read_schema, read_table, table_csv

data = Path(__file__).parent / "data"
universe = read_schema(data / "objects_schema.txt")
fds = read_fds(data / "objects_fds.txt", universe)
sources = [Delta(universe, read_table(data / name, universe), fds) for name in ("group1.csv", "group2.csv")]

for s in sources:
    r = chase(s)
    print(table_csv(r.dstar, universe), "conflicts:", dict(r.inc.nonempty()) or "none", "\n")

# Folding the source values with the knowledge join gives a lower bound on
# what the merged table says.  Sometimes the bound is exact:

merged = merge_sources(sources)
probes = [Tuple({"Id": "i1", "K": "k", "M": "m", "C": "c"}), Tuple({"Id": "i2", "C": "c"}), Tuple({"Id": "i2"})]
for rep in merged_truth_report(sources, probes):
    print(dict(rep.tuple), [str(v) for v in rep.per_source], "fold:", rep.fold, "merged:", rep.merged)

# i2 alone is true in both sources, yet inc after merging: the teams gave it
# different centuries.  The fold (true) sits strictly below inc in the
# knowledge order, so merging added information no single source had.

fold, got = merged_truth_report(sources, [Tuple({"Id": "i2"})])[0].fold, Classifier(merged)(Tuple({"Id": "i2"}))
print(knowledge_le(fold, got), knowledge_le(got, fold))
