# Query answers that ignore the conflicts
#
# Plain answers read straight off the chased table.  Consistent answers drop
# anything that touches a recorded conflict of an FD inside the selected
# attributes.  Repair-based answers go through the maximal conflict-free
# subsets of the chased table.

from pathlib import Path

from fdchase import Delta, chase, consistent_answer, parse_query, plain_answer, repair_answers, repairs_by_choice
from fdchase.formats import read_fds, read_schema, read_table, table_csv

data = Path(__file__).parent / "data"
universe = read_schema(data / "objects_schema.txt")
delta = Delta(universe, read_table(data / "objects.csv", universe), read_fds(data / "objects_fds.txt", universe))
result = chase(delta)

queries = ["SELECT Id,K,C", "SELECT Id,K,C WHERE C = 'c'''", "SELECT Id,K,M", "SELECT M,C WHERE K = 'k'''"]

for text in queries:
    q = parse_query(text, universe)
    lower, upper = repair_answers(q, result)
    print(text)
    print("  plain     ", sorted(plain_answer(q, result).rows()))
    print("  consistent", sorted(consistent_answer(q, result).rows()))
    print("  lower     ", sorted(lower.rows()))
    print("  upper     ", sorted(upper.rows()))

# The two repairs pick c or c' for every i2 row.

for i, rep in enumerate(sorted(repairs_by_choice(result), key=lambda r: sorted(map(repr, r))), 1):
    print(f"repair {i}")
    print(table_csv(rep, universe))

# SELECT M,C WHERE K = 'k'' shows the gap between the notions.  Id is not
# selected, so Id -> C does not apply inside M,C and all four (material,
# century) pairs of i2 are consistent answers.  No pair survives in every
# repair, so the repair-based answers are empty.

# Conditions can mention numbers on ordered domains:

parts_u = read_schema(data / "parts_schema.txt")
parts = Delta(parts_u, read_table(data / "parts.csv", parts_u), read_fds(data / "parts_fds.txt", parts_u))
q = parse_query("SELECT Part,Supplier,Stock WHERE Stock >= 100", parts_u)
print(sorted(consistent_answer(q, chase(parts)).rows()))
