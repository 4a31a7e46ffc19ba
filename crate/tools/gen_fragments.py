#!/usr/bin/env python3
"""Regenerate the Garside fragment tables shipped in crates/qnorm-core/data/.

For each monoid we enumerate words up to a degree bound, compute the
congruence generated by the braid relations (all relations preserve length,
so classes can be computed per degree by closure), and then build the
fragment: the simples, and for every pair of simples the greedy normal
decomposition of their product (head = maximal simple left-divisor,
complement = unique right cofactor).

Outputs:
  crates/qnorm-core/data/braid_b3.json
  crates/qnorm-core/data/artin_a2t.json

Run from the repository root:  python3 tools/gen_fragments.py
"""

import itertools
import json
import os
import sys
from collections import deque


class Monoid:
    """A finitely presented monoid with length-preserving relations,
    materialised as congruence classes of words up to max_len."""

    def __init__(self, gens, relations, max_len):
        self.gens = gens
        self.relations = [(tuple(l), tuple(r)) for l, r in relations]
        self.max_len = max_len
        self.word_class = {}
        self.members = []  # class id -> sorted list of member words
        self._close()

    def _close(self):
        cid = 0
        for length in range(self.max_len + 1):
            seen = set()
            for w in itertools.product(range(len(self.gens)), repeat=length):
                if w in seen:
                    continue
                comp = []
                dq = deque([w])
                seen.add(w)
                while dq:
                    u = dq.popleft()
                    comp.append(u)
                    for l, r in self.relations:
                        for a, b in ((l, r), (r, l)):
                            for i in range(len(u) - len(a) + 1):
                                if u[i:i + len(a)] == a:
                                    v = u[:i] + b + u[i + len(a):]
                                    if v not in seen:
                                        seen.add(v)
                                        dq.append(v)
                comp.sort()
                for u in comp:
                    self.word_class[u] = cid
                self.members.append(comp)
                cid += 1

    def cls(self, word):
        return self.word_class[tuple(word)]

    def rep(self, cid):
        return self.members[cid][0]

    def deg(self, cid):
        return len(self.rep(cid))

    def classes_of_degree(self, d):
        return [c for c in range(len(self.members)) if self.deg(c) == d]

    def mul(self, c1, c2):
        return self.cls(self.rep(c1) + self.rep(c2))

    def left_divides(self, c1, c2):
        d = self.deg(c2) - self.deg(c1)
        if d < 0:
            return False
        r1 = self.rep(c1)
        for h in itertools.product(range(len(self.gens)), repeat=d):
            if self.cls(r1 + h) == c2:
                return True
        return False

    def right_divisor_classes(self, cid):
        out = set()
        for w in self.members[cid]:
            for i in range(len(w) + 1):
                out.add(self.cls(w[i:]))
        return out

    def name(self, cid):
        w = self.rep(cid)
        return "1" if not w else "".join(self.gens[i] for i in w)


def head(monoid, simples, cid):
    """Maximal simple left-divisor of class `cid`."""
    divisors = [s for s in simples if monoid.left_divides(s, cid)]
    for s in divisors:
        if all(monoid.left_divides(t, s) for t in divisors):
            return s
    raise AssertionError(f"no maximal simple divisor for {monoid.name(cid)}")


def complement(monoid, h, g):
    """The unique c with h * c = g."""
    d = monoid.deg(g) - monoid.deg(h)
    assert d >= 0
    found = [c for c in monoid.classes_of_degree(d) if monoid.mul(h, c) == g]
    assert len(found) == 1, (
        f"complement of {monoid.name(h)} in {monoid.name(g)} not unique: "
        f"{[monoid.name(c) for c in found]}")
    return found[0]


def check_left_cancellative(monoid, max_deg):
    for dx in range(max_deg + 1):
        for x in monoid.classes_of_degree(dx):
            for dy in range(max_deg + 1):
                seen = {}
                for y in monoid.classes_of_degree(dy):
                    p = monoid.mul(x, y)
                    if p in seen and seen[p] != y:
                        raise AssertionError(
                            f"not left-cancellative: {monoid.name(x)} * "
                            f"{monoid.name(y)} = {monoid.name(x)} * "
                            f"{monoid.name(seen[p])}")
                    seen[p] = y


def build_fragment(label, gens, relations, tops, max_len):
    monoid = Monoid(gens, relations, max_len)
    unit = monoid.cls(())

    simples = set()
    for top in tops:
        simples |= monoid.right_divisor_classes(monoid.cls(top))
    simples = sorted(simples, key=lambda c: (monoid.deg(c), monoid.name(c)))
    print(f"[{label}] {len(simples)} simples:",
          " ".join(monoid.name(s) for s in simples))

    # sanity: closure under right divisor
    for s in simples:
        assert monoid.right_divisor_classes(s) <= set(simples), \
            f"{monoid.name(s)} has a right divisor outside the family"

    check_left_cancellative(monoid, max_deg=3)

    product = []
    for x in simples:
        for y in simples:
            g = monoid.mul(x, y)
            if g == unit:
                decomp = []
            else:
                h = head(monoid, simples, g)
                c = complement(monoid, h, g)
                if c == unit:
                    decomp = [h]
                else:
                    assert c in simples, (
                        f"decomposition of {monoid.name(x)}*{monoid.name(y)} "
                        f"needs non-simple cofactor {monoid.name(c)}")
                    # (h, c) is greedy because h is the maximal divisor
                    decomp = [h, c]
            product.append([monoid.name(x), monoid.name(y),
                            [monoid.name(d) for d in decomp]])

    return {
        "simples": [monoid.name(s) for s in simples],
        "unit": "1",
        "product": product,
    }


def main():
    out_dir = os.path.join(os.path.dirname(__file__), "..",
                           "crates", "qnorm-core", "data")
    os.makedirs(out_dir, exist_ok=True)

    # Braid monoid B3+ = < a, b | aba = bab >, simples = divisors of aba.
    b3 = build_fragment(
        "braid_b3",
        gens=["a", "b"],
        relations=[([0, 1, 0], [1, 0, 1])],
        tops=[(0, 1, 0)],
        max_len=7,
    )

    # Artin-Tits monoid of affine type A~2:
    # < s1, s2, s3 | s_i s_j s_i = s_j s_i s_j >; the finite Garside family
    # consists of the sixteen right-divisors of the three degree-4 elements
    # below (the images of s1 s2 s3 s2 under the 1->2->3->1 cycle).
    rel = []
    for i, j in [(0, 1), (1, 2), (0, 2)]:
        rel.append(([i, j, i], [j, i, j]))
    a2t = build_fragment(
        "artin_a2t",
        gens=["σ1", "σ2", "σ3"],
        relations=rel,
        tops=[(0, 1, 2, 1), (1, 2, 0, 2), (2, 0, 1, 0)],
        max_len=8,
    )
    assert len(a2t["simples"]) == 16, len(a2t["simples"])

    for name, frag in [("braid_b3.json", b3), ("artin_a2t.json", a2t)]:
        path = os.path.join(out_dir, name)
        with open(path, "w") as fh:
            json.dump(frag, fh, ensure_ascii=False, indent=1)
            fh.write("\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    sys.exit(main())
