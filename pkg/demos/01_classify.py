"""
Sorting constraint languages by difficulty
==========================================

A constraint language is a handful of Boolean relations. Deleting the fewest
constraints to make an instance satisfiable can be trivial, fixed-parameter
tractable, approximable, or hopeless depending on which closure properties
the relations share. This script walks a few languages through the classifier.
"""

import numpy as np

from mincsp.classifier import classify
from mincsp.relations import (B2, Language, clause_relation, implication, make_relation, nae, nand, or_,
                              relation_properties, unit, xor)

# Relations are stored as membership tables over {0,1}^arity; the leftmost
# coordinate is the most significant bit of the row index.
r = make_relation(3, ["011", "101", "110"], "two_of_three")
print(r.name, r.arity, r.mask.astype(int), np.flatnonzero(r.mask))
print("codes:", r.codes, "tuples:", r.tuples())

# Each relation is tested against five closure operations. The tests are
# cross-checked against a clause-level decomposition internally.
print(relation_properties(r))

# The classifier looks at the whole language and picks the first class that applies.
languages = {
    "x -> y only": Language((implication(),)),
    "2-SAT style": Language((xor(), implication(), unit(1), unit(0))),
    "positive 3-clauses": Language((or_(3), implication(), unit(1), unit(0))),
    "negative 3-clauses": Language((nand(3), implication(), unit(1), unit(0))),
    "parity equations": B2(),
    "horn 3-clauses": Language((clause_relation((0, 0, 1)), unit(1), unit(0))),
    "not-all-equal": Language((nae(),)),
}
for title, lang in languages.items():
    result = classify(lang)
    print(f"{title:20s} {result.label:20s} {result.tier}")

# The narrative explains the decision.
print()
print("\n".join(classify(languages["not-all-equal"]).narrative))

# A quick census: how do the 255 nonempty ternary relations split?
labels = {}
for code in range(1, 256):
    rows = [format(i, "03b") for i in range(8) if code >> i & 1]
    label = classify(Language((make_relation(3, rows, "r"),))).kind
    labels[label] = labels.get(label, 0) + 1
for label, count in sorted(labels.items(), key=lambda kv: -kv[1]):
    print(f"{count:4d}  {label}")

# Most single relations contain 000 or 111 and are solved by a constant assignment.
valid = sum(bool(code & 1) or bool(code & 128) for code in range(1, 256))
print("relations containing a constant tuple:", valid)
