#!/usr/bin/env python3
"""Builds the formose transition systems S0.json and S1.json.

Molecules are written with explicit hydrogens: atoms are vertices labeled C, O
or H, bonds are edges labeled 1 (single) or 2 (double). Inputs are every
molecule of the cycle alone plus every unordered pair, repetition allowed.

Transitions follow the core autocatalytic cycle:
    formaldehyde + glycolaldehyde  -> glyceraldehyde      (aldol)
    glyceraldehyde                 -> dihydroxyacetone    (aldose-ketose)
    formaldehyde + dihydroxyacetone -> erythrulose        (aldol)
    erythrulose                    -> aldotetrose         (ketose-aldose)
    aldotetrose                    -> 2 glycolaldehyde    (retroaldol)
each in both directions. S1 adds formaldehyde + glyceraldehyde -> the
branched tetrose 2-(hydroxymethyl)glyceraldehyde and its retroaldol.

Atom maps come from the mechanisms:
    aldol: the alpha carbon of the donor loses one H, bonds to the acceptor's
    carbonyl carbon, the carbonyl C=O becomes C-O and the H lands on that O.
    aldose-ketose (hydride shift): the H on C2 moves to the carbonyl C1, the
    hydroxyl H on C2 moves to O1, C1=O1 becomes single and C2-O2 double.

Molecule structures are built independently of the mechanisms; every product
is checked to be isomorphic to the molecule it is meant to be.

Usage: make_formose.py [output_dir]
"""

import itertools
import json
import pathlib
import sys

import networkx as nx
from networkx.algorithms import isomorphism as iso


class Mol:
    def __init__(self, name):
        self.name = name
        self.labels = []
        self.bonds = {}  # frozenset{u, v} -> order

    def atom(self, label):
        self.labels.append(label)
        return len(self.labels) - 1

    def bond(self, u, v, order=1):
        key = frozenset((u, v))
        assert u != v and key not in self.bonds
        self.bonds[key] = order

    def neighbors(self, v, label=None):
        out = []
        for key in self.bonds:
            if v in key:
                (w,) = key - {v}
                if label is None or self.labels[w] == label:
                    out.append(w)
        return sorted(out)

    def order(self, u, v):
        return self.bonds.get(frozenset((u, v)), 0)

    def copy(self, name=None):
        m = Mol(name or self.name)
        m.labels = list(self.labels)
        m.bonds = dict(self.bonds)
        return m

    def nx(self):
        g = nx.Graph()
        for v, l in enumerate(self.labels):
            g.add_node(v, label=l)
        for key, o in self.bonds.items():
            u, v = sorted(key)
            g.add_edge(u, v, label=o)
        return g

    def check_valence(self):
        valence = {"C": 4, "O": 2, "H": 1}
        for v, l in enumerate(self.labels):
            total = sum(o for key, o in self.bonds.items() if v in key)
            assert total == valence[l], f"{self.name}: atom {v} ({l}) has valence {total}"


def union(a, b):
    m = a.copy(f"{a.name}+{b.name}")
    shift = len(a.labels)
    m.labels += b.labels
    for key, o in b.bonds.items():
        u, v = sorted(key)
        m.bonds[frozenset((u + shift, v + shift))] = o
    return m, shift


def sugar(name, skeleton, carbonyl):
    """Carbon skeleton as a list of C-C bonds over carbons 0..n-1; `carbonyl`
    carries C=O, every other carbon one OH; hydrogens fill the valences."""
    m = Mol(name)
    n = 1 + max([c for b in skeleton for c in b], default=0)
    carbons = [m.atom("C") for _ in range(n)]
    for u, v in skeleton:
        m.bond(carbons[u], carbons[v])
    for c in range(n):
        o = m.atom("O")
        if c == carbonyl:
            m.bond(carbons[c], o, 2)
        else:
            m.bond(carbons[c], o)
            m.bond(o, m.atom("H"))
    for c in carbons:
        used = sum(o for key, o in m.bonds.items() if c in key)
        for _ in range(4 - used):
            m.bond(c, m.atom("H"))
    m.check_valence()
    return m


def chain(n):
    return [(i, i + 1) for i in range(n - 1)]


FORMALDEHYDE = sugar("formaldehyde", [], 0)
GLYCOLALDEHYDE = sugar("glycolaldehyde", chain(2), 0)
GLYCERALDEHYDE = sugar("glyceraldehyde", chain(3), 0)
DIHYDROXYACETONE = sugar("dihydroxyacetone", chain(3), 1)
ERYTHRULOSE = sugar("erythrulose", chain(4), 1)
ALDOTETROSE = sugar("aldotetrose", chain(4), 0)
BRANCHED_TETROSE = sugar("branched tetrose", [(0, 1), (1, 2), (1, 3)], 0)


def carbonyl_carbon(m):
    out = [c for c, l in enumerate(m.labels)
           if l == "C" and any(m.order(c, o) == 2 for o in m.neighbors(c, "O"))]
    assert len(out) == 1, m.name
    return out[0]


def carbonyl_oxygen(m, c):
    (o,) = [o for o in m.neighbors(c, "O") if m.order(c, o) == 2]
    return o


def aldol(m, donor_alpha, acceptor_c):
    """Aldol addition inside m (a union of donor and acceptor)."""
    out = m.copy()
    h = m.neighbors(donor_alpha, "H")[0]
    o = carbonyl_oxygen(m, acceptor_c)
    del out.bonds[frozenset((donor_alpha, h))]
    out.bond(donor_alpha, acceptor_c)
    out.bonds[frozenset((acceptor_c, o))] = 1
    out.bond(o, h)
    out.check_valence()
    return out


def aldose_ketose(m, c1, c2):
    """Hydride shift from c2 to the carbonyl c1, hydroxyl H of c2 to O1."""
    out = m.copy()
    o1 = carbonyl_oxygen(m, c1)
    (o2,) = m.neighbors(c2, "O")
    h2 = m.neighbors(c2, "H")[0]
    (ho,) = m.neighbors(o2, "H")
    del out.bonds[frozenset((c2, h2))]
    out.bond(c1, h2)
    del out.bonds[frozenset((o2, ho))]
    out.bond(o1, ho)
    out.bonds[frozenset((c1, o1))] = 1
    out.bonds[frozenset((c2, o2))] = 2
    out.check_valence()
    return out


def alpha_carbon(m, carbonyl):
    """The lowest numbered carbon next to the carbonyl carrying an H."""
    cands = [c for c in m.neighbors(carbonyl, "C") if m.neighbors(c, "H")]
    assert cands, m.name
    return cands[0]


def matcher(a, b):
    return iso.GraphMatcher(a.nx(), b.nx(), node_match=lambda x, y: x["label"] == y["label"],
                            edge_match=lambda x, y: x["label"] == y["label"])


def isomorphism(a, b):
    gm = matcher(a, b)
    assert gm.is_isomorphic(), f"{a.name} is not isomorphic to {b.name}"
    return gm.mapping


def graph_json(m):
    edges = sorted(tuple(sorted(k)) for k in m.bonds)
    return {
        "vertices": [{"id": v, "label": l} for v, l in enumerate(m.labels)],
        "edges": [{"source": u, "target": v, "label": str(m.bonds[frozenset((u, v))]), "directed": False}
                  for u, v in edges],
    }, edges


class System:
    def __init__(self, molecules):
        self.molecules = molecules
        self.inputs = []
        self.index = {}
        for i, m in enumerate(molecules):
            self.index[(i,)] = len(self.inputs)
            self.inputs.append(m)
        for i, j in itertools.combinations_with_replacement(range(len(molecules)), 2):
            self.index[(i, j)] = len(self.inputs)
            self.inputs.append(union(molecules[i], molecules[j])[0])
        self.transitions = []

    def mol(self, m):
        return self.molecules.index(m)

    def add(self, name, source_key, target, vmap):
        src = self.inputs[self.index[source_key]]
        src_json, src_edges = graph_json(src)
        tgt_json, tgt_edges = graph_json(target)
        tgt_edge_id = {e: k for k, e in enumerate(tgt_edges)}
        emap = []
        for k, (u, v) in enumerate(src_edges):
            img = tuple(sorted((vmap[u], vmap[v])))
            if img in tgt_edge_id:
                emap.append([k, tgt_edge_id[img]])
        self.transitions.append({
            "name": name,
            "source": self.index[source_key],
            "target": tgt_json,
            "vertex_map": [[v, vmap[v]] for v in sorted(vmap)],
            "edge_map": emap,
        })

    def aldol_pair(self, donor, acceptor, product):
        """Aldol on the pair input plus the retroaldol from the product."""
        i, j = self.mol(donor), self.mol(acceptor)
        key = tuple(sorted((i, j)))
        pair = self.inputs[self.index[key]]
        d_shift = 0 if i == key[0] else len(self.molecules[key[0]].labels)
        a_shift = len(self.molecules[key[0]].labels) if i == key[0] else 0
        if i == j:
            d_shift, a_shift = 0, len(donor.labels)
        dc = carbonyl_carbon(donor)
        alpha = alpha_carbon(donor, dc) + d_shift
        ac = carbonyl_carbon(acceptor) + a_shift
        out = aldol(pair, alpha, ac)
        isomorphism(out, product)
        ident = {v: v for v in range(len(pair.labels))}
        self.add(f"aldol {donor.name} + {acceptor.name} -> {product.name}", key, out, ident)
        # Retroaldol: the product molecule as written, mapped onto the pair.
        phi = isomorphism(product, out)
        self.add(f"retroaldol {product.name} -> {donor.name} + {acceptor.name}", (self.mol(product),), pair, phi)

    def isomerisation(self, aldose, ketose):
        c1 = carbonyl_carbon(aldose)
        (c2,) = [c for c in aldose.neighbors(c1, "C")]
        out = aldose_ketose(aldose, c1, c2)
        isomorphism(out, ketose)
        ident = {v: v for v in range(len(aldose.labels))}
        self.add(f"isomerisation {aldose.name} -> {ketose.name}", (self.mol(aldose),), out, ident)
        # Ketose to aldose is the reverse step on the ketose as written.
        phi = isomorphism(ketose, out)
        self.add(f"isomerisation {ketose.name} -> {aldose.name}", (self.mol(ketose),), aldose, phi)

    def json(self):
        return {
            "poset": {"atoms": ["C", "H", "O", "1", "2"]},
            "inputs": [graph_json(m)[0] for m in self.inputs],
            "transitions": self.transitions,
        }


def build(branched):
    mols = [FORMALDEHYDE, GLYCOLALDEHYDE, GLYCERALDEHYDE, DIHYDROXYACETONE, ERYTHRULOSE, ALDOTETROSE]
    if branched:
        mols.append(BRANCHED_TETROSE)
    s = System(mols)
    s.aldol_pair(GLYCOLALDEHYDE, FORMALDEHYDE, GLYCERALDEHYDE)
    s.isomerisation(GLYCERALDEHYDE, DIHYDROXYACETONE)
    s.aldol_pair(DIHYDROXYACETONE, FORMALDEHYDE, ERYTHRULOSE)
    s.isomerisation(ALDOTETROSE, ERYTHRULOSE)
    s.aldol_pair(GLYCOLALDEHYDE, GLYCOLALDEHYDE, ALDOTETROSE)
    if branched:
        s.aldol_pair(GLYCERALDEHYDE, FORMALDEHYDE, BRANCHED_TETROSE)
    return s


def main():
    out = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent
    for name, branched in (("S0.json", False), ("S1.json", True)):
        s = build(branched)
        (out / name).write_text(json.dumps(s.json(), indent=1, ensure_ascii=False) + "\n")
        print(f"{name}: {len(s.inputs)} inputs, {len(s.transitions)} transitions")


if __name__ == "__main__":
    main()
