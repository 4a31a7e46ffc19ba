#!/usr/bin/env python3
"""Regenerate the completed Chinese-monoid rewriting system shipped in
crates/qnorm-core/data/chinese3.json.

The Chinese monoid over X = {x < y < z} is presented by the relations
zyx = zxy = yzx for x <= y <= z.  Over the seven generators
x, y, z, yx, zx, zy, yy (column-style words over X) the twelve rules below
are derivable; Knuth-Bendix completion under a weight/length/lex reduction
order yields a convergent system with 22 rules presenting the monoid.

The script verifies: quadratic shape of every rule, local confluence of the
completed system, and that R-normal forms classify X-words up to length 6
exactly like the Chinese congruence.

Run from the repository root:  python3 tools/gen_chinese3.py
"""

import itertools
import json
import os
import sys
from collections import deque

GENS = ["x", "y", "z", "yx", "zx", "zy", "yy"]
XWORD = {"x": "x", "y": "y", "z": "z", "yx": "yx", "zx": "zx",
         "zy": "zy", "yy": "yy"}
WEIGHT = {g: len(XWORD[g]) for g in GENS}
# precedence used for the lexicographic tie-break (smaller = lighter)
PREC = {g: i for i, g in enumerate(["x", "yx", "zx", "y", "yy", "zy", "z"])}


def key(word):
    return (sum(WEIGHT[g] for g in word), len(word),
            tuple(PREC[g] for g in word))


def initial_rules():
    rules = []
    pairs = [("x", "y"), ("x", "z"), ("y", "z")]
    for u, v in pairs:
        vu = v + u
        rules.append(((v, u), (vu,)))
        rules.append(((v, vu), (vu, v)))
        rules.append(((vu, u), (u, vu)))
    # x < y < z
    rules.append((("y", "zx"), ("zx", "y")))
    rules.append((("z", "yx"), ("zx", "y")))
    rules.append((("y", "y"), ("yy",)))
    return rules


def normalise(word, rules):
    word = tuple(word)
    changed = True
    while changed:
        changed = False
        for lhs, rhs in rules.items():
            for i in range(len(word) - len(lhs) + 1):
                if word[i:i + len(lhs)] == lhs:
                    word = word[:i] + rhs + word[i + len(lhs):]
                    changed = True
                    break
            if changed:
                break
    return word


def complete(rules_list):
    """Huet-style completion restricted to quadratic rules: critical pairs
    whose normal forms are still too long are deferred; they must join once
    the missing pair rules have been adopted."""
    rules = {}
    for lhs, rhs in rules_list:
        rules[tuple(lhs)] = tuple(rhs)
    while True:
        deferred = []
        added = False
        for (l1, r1) in sorted(rules.items()):
            for (l2, r2) in sorted(rules.items()):
                if len(l1) != 2 or len(l2) != 2 or l1[1] != l2[0]:
                    continue
                t1 = normalise(r1 + (l2[1],), rules)
                t2 = normalise((l1[0],) + r2, rules)
                if t1 == t2:
                    continue
                big, small = (t1, t2) if key(t1) > key(t2) else (t2, t1)
                if len(big) != 2:
                    deferred.append(((l1[0], l1[1], l2[1]), big, small))
                    continue
                rules[big] = small
                added = True
        # interreduce right-hand sides after each pass
        for lhs in list(rules):
            rhs = rules.pop(lhs)
            nf = normalise(rhs, rules)
            if lhs != nf:
                rules[lhs] = nf
        if not added:
            assert not deferred, deferred
            break
    return rules


def chinese_classes(max_len):
    """Congruence classes of X-words under zyx = zxy = yzx (x <= y <= z)."""
    letters = "xyz"
    rel = []
    for u, v, w in itertools.product(range(3), repeat=3):
        if u <= v <= w:
            a = letters[w] + letters[v] + letters[u]
            b = letters[w] + letters[u] + letters[v]
            c = letters[v] + letters[w] + letters[u]
            rel.extend([(a, b), (a, c)])
    word_class = {}
    cid = 0
    for length in range(max_len + 1):
        seen = set()
        for tup in itertools.product(letters, repeat=length):
            w = "".join(tup)
            if w in seen:
                continue
            dq = deque([w])
            seen.add(w)
            comp = []
            while dq:
                u = dq.popleft()
                comp.append(u)
                for a, b in rel:
                    for p, q in ((a, b), (b, a)):
                        for i in range(len(u) - 2):
                            if u[i:i + 3] == p:
                                v = u[:i] + q + u[i + 3:]
                                if v not in seen:
                                    seen.add(v)
                                    dq.append(v)
            for u in comp:
                word_class[u] = cid
            cid += 1
    return word_class


def verify_presents_chinese(rules, max_len):
    word_class = chinese_classes(max_len)
    nf_of_class = {}
    for w, c in sorted(word_class.items(), key=lambda kv: (len(kv[0]), kv[0])):
        nf = normalise(tuple(w), rules)
        if c in nf_of_class:
            assert nf_of_class[c] == nf, (w, nf, nf_of_class[c])
        else:
            nf_of_class[c] = nf
    # distinct classes must get distinct normal forms
    seen = {}
    for c, nf in nf_of_class.items():
        assert nf not in seen, (c, seen[nf], nf)
        seen[nf] = c
    print(f"presentation check OK on {len(word_class)} X-words "
          f"({len(nf_of_class)} classes)")


def main():
    rules = complete(initial_rules())
    print(f"completed system has {len(rules)} rules")
    for lhs, rhs in sorted(rules.items(), key=lambda kv: key(kv[0])):
        print("  ", "|".join(lhs), "->", "|".join(rhs) if rhs else "(empty)")
    assert len(rules) == 22, len(rules)
    verify_presents_chinese(rules, max_len=6)

    out = {
        "generators": GENS,
        "rules": [[list(l), list(r)] for l, r in sorted(rules.items())],
    }
    out_dir = os.path.join(os.path.dirname(__file__), "..",
                           "crates", "qnorm-core", "data")
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, "chinese3.json")
    with open(path, "w") as fh:
        json.dump(out, fh, indent=1)
        fh.write("\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    sys.exit(main())
