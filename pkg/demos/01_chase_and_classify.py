# Chasing a table with nulls
#
# Two survey teams recorded the same excavated objects.  Their merged table
# has holes (empty cells) and it disagrees with itself on object i2.  This
# script chases it, looks at the recorded conflicts and asks for the truth
# value of a few tuples.

from pathlib import Path

from fdchase import Classifier, Delta, Tuple, chase
from fdchase.formats import format_inc, read_fds, read_schema, read_table, table_csv

data = Path(__file__).parent / "data"
universe = read_schema(data / "objects_schema.txt")
rows = read_table(data / "objects.csv", universe)
fds = read_fds(data / "objects_fds.txt", universe)
delta = Delta(universe, rows, fds)

print(table_csv(rows, universe))

# The chase fills a null whenever an FD pins the value down.  Where two rows
# agree on the left side but not on the right, it keeps both values, grafts
# each onto the other row, and writes the left-side value into the conflict
# ledger instead of failing.

result = chase(delta)
print(table_csv(result.dstar, universe))
print(format_inc(result.inc, universe))

# Eight rows became seven.  The second i1 row picked up kind and century,
# i3 got its kind, and every i2 row now exists in a c and a c' version.

# Truth values come in four flavours.  A tuple is true when it can be
# derived and nothing contradicts it, inc when it can be derived but an FD
# forces a clash, false when adding it would clash, and unkn otherwise.

clf = Classifier(delta, result)
for probe in ({"Id": "i1", "K": "k", "M": "m", "C": "c"}, {"Id": "i2"}, {"Id": "i2", "C": "c'"},
              {"Id": "i1", "K": "k'"}, {"Id": "i3", "C": "c"}):
    t = Tuple(probe)
    print(f"{dict(t)!s:45} {clf(t)}")

# Note (k', m).  Row (i3, k', m) is in the chased table, so the pair is
# derivable, and with nothing contradicting it the classifier calls it true.

print(clf(Tuple({"K": "k'", "M": "m"})))

# The inconsistent tuples are every sub-tuple of the four i2 rows that
# still mentions i2.

print(len(clf.incs), "inconsistent tuples")
