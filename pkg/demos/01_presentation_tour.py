"""A walk through the handlebody group presentation at genus 3.

Prints the generators, how many relation instances each family contributes,
and a few relations written out in free-group words.

    python demos/01_presentation_tour.py [genus]
"""
import sys

from hbmcg import build_presentation

g = int(sys.argv[1]) if len(sys.argv) > 1 else 3
P = build_presentation(g)

print(f"genus {g}: {len(P.generators)} generators")
print("  " + " ".join(P.generators))
print()

print("relation instances per family")
for family, n in P.family_counts().items():
    print(f"  {family:8s} {n:4d}")
print(f"  {'total':8s} {len(P.relations):4d}")
print()

# short relations are readable; the long ones expand to hundreds of letters
print("some relations")
for rel in P.relations:
    if rel.label.startswith(("P5", "P6", "P8(c)")):
        print(f"  {rel.label:14s} {rel.lhs}  =  {rel.rhs}")

longest = max(P.relations, key=lambda r: len(r.lhs) + len(r.rhs))
print()
print(f"longest instance: {longest.label}, {len(longest.lhs) + len(longest.rhs)} letters")
