"""
Perfect codes among non-normal subgroups
========================================

The involution condition characterizes normal subgroups that are perfect
codes.  Whether the same holds without normality is open, so this script
only measures: for each non-normal subgroup it runs the condition and a
direct exhaustive search, and lists any disagreement it finds.
"""

from regsets.groups import family_specs
from regsets.search import question1_probe

specs = [s for s in family_specs(16, products=False) if s.startswith("dihedral")]
specs += ["perm:(0,1,2);(1,2,3)", "perm:(0,1,2,3);(0,1)"]

report = question1_probe(specs, budget=1 << 20)
for e in report.entries:
    mark = "" if e.agrees else "   <-- disagreement"
    print(f"{e.group:24s} {str(e.subgroup):40s} cond={e.condition1!s:5s} pc={e.perfect_code!s:5s}{mark}")
print(f"\n{len(report.entries)} subgroups, {len(report.disagreements)} disagreements")
for s in report.skipped:
    print("skipped:", s)
