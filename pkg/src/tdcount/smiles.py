"""Pragmatic SMILES-subset parser producing hydrogen-suppressed graphs.

Only connectivity matters to the counters, so bond orders (``-``, ``=``,
``#``, ``:``) are erased, aromatic lowercase atoms are read as their plain
element, and every bond becomes one unlabeled edge. Supported atoms are the
organic subset B C N O P S F Cl Br I plus bracket atoms ``[X]`` holding a
bare element symbol. Charges, isotopes, stereo markers, wildcards and
explicit hydrogens are rejected with the offending offset.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .errors import ParseError
from .graph import Graph

log = logging.getLogger(__name__)

_ELEMENTS = frozenset(
    """He Li Be B C N O F Ne Na Mg Al Si P S Cl Ar K Ca Sc Ti V Cr Mn Fe Co
    Ni Cu Zn Ga Ge As Se Br Kr Rb Sr Y Zr Nb Mo Tc Ru Rh Pd Ag Cd In Sn Sb
    Te I Xe Cs Ba La Ce Pr Nd Pm Sm Eu Gd Tb Dy Ho Er Tm Yb Lu Hf Ta W Re
    Os Ir Pt Au Hg Tl Pb Bi Po At Rn Fr Ra Ac Th Pa U Np Pu Am Cm Bk Cf Es
    Fm Md No Lr Rf Db Sg Bh Hs Mt Ds Rg Cn Nh Fl Mc Lv Ts Og""".split()
)

_ORGANIC_TWO = ("Cl", "Br")
_ORGANIC_ONE = frozenset("BCNOPSFI")
_AROMATIC_ONE = frozenset("bcnops")
_AROMATIC_BRACKET = frozenset(["b", "c", "n", "o", "p", "s", "as", "se"])
_BOND_CHARS = frozenset("-=#:")


@dataclass
class Molecule:
    """A parsed molecule: heavy-atom graph plus provenance."""

    graph: Graph
    source: str
    name: str | None = None


def _bracket_atom(content, offset):
    if content == "H":
        raise ParseError(
            "explicit hydrogens are not representable in a hydrogen-suppressed graph",
            offset=offset,
        )
    if content in _ELEMENTS:
        return content
    if content in _AROMATIC_BRACKET:
        return content.capitalize()
    raise ParseError(
        f"unsupported bracket atom [{content}] (only bare element symbols are accepted)",
        offset=offset,
    )


def parse_smiles(s, name=None):
    """Parse a SMILES string into a :class:`Molecule`.

    Dot-separated fragments yield a disconnected graph and a logged warning;
    the counters are multiplicative over components, so this is safe.
    """
    if s is None or not s.strip():
        raise ParseError("empty SMILES string", offset=0)
    s = s.strip()

    labels = []
    edges = set()
    prev = None
    branch_stack = []
    open_rings = {}
    bond_pending_at = None
    fragments = 1

    def new_atom(symbol):
        nonlocal prev, bond_pending_at
        labels.append(symbol)
        idx = len(labels) - 1
        if prev is not None:
            add_edge(prev, idx)
        prev = idx
        bond_pending_at = None

    def add_edge(u, v):
        if u == v:
            raise ParseError(f"bond from atom to itself at atom {u}", offset=i)
        edges.add((u, v) if u < v else (v, u))  # duplicates collapse

    def close_or_open_ring(num):
        nonlocal bond_pending_at
        if prev is None:
            raise ParseError("ring-closure digit before any atom", offset=i)
        if num in open_rings:
            partner, _ = open_rings.pop(num)
            add_edge(partner, prev)
        else:
            open_rings[num] = (prev, i)
        bond_pending_at = None

    i = 0
    n = len(s)
    while i < n:
        ch = s[i]
        if ch in _BOND_CHARS:
            bond_pending_at = i
            i += 1
            continue
        if ch == "(":
            if bond_pending_at is not None:
                raise ParseError("bond symbol before '('", offset=bond_pending_at)
            if prev is None:
                raise ParseError("branch opened before any atom", offset=i)
            branch_stack.append(prev)
            i += 1
            continue
        if ch == ")":
            if bond_pending_at is not None:
                raise ParseError("dangling bond before ')'", offset=bond_pending_at)
            if not branch_stack:
                raise ParseError("unmatched ')'", offset=i)
            prev = branch_stack.pop()
            i += 1
            continue
        if ch == ".":
            if bond_pending_at is not None:
                raise ParseError("bond symbol before '.'", offset=bond_pending_at)
            if prev is None and not labels:
                raise ParseError("leading '.'", offset=i)
            prev = None
            fragments += 1
            i += 1
            continue
        if ch == "%":
            digits = s[i + 1 : i + 3]
            if len(digits) != 2 or not digits.isdigit():
                raise ParseError("'%' needs two ring-closure digits", offset=i)
            close_or_open_ring(int(s[i + 1 : i + 3]))
            i += 3
            continue
        if ch.isdigit():
            close_or_open_ring(int(ch))
            i += 1
            continue
        if ch == "[":
            end = s.find("]", i)
            if end < 0:
                raise ParseError("unmatched '['", offset=i)
            new_atom(_bracket_atom(s[i + 1 : end], i))
            i = end + 1
            continue
        if s[i : i + 2] in _ORGANIC_TWO:
            new_atom(s[i : i + 2])
            i += 2
            continue
        if ch in _ORGANIC_ONE:
            new_atom(ch)
            i += 1
            continue
        if ch in _AROMATIC_ONE:
            new_atom(ch.upper())
            i += 1
            continue
        raise ParseError(f"unsupported SMILES token {ch!r}", offset=i)

    if bond_pending_at is not None:
        raise ParseError("dangling bond at end of string", offset=bond_pending_at)
    if branch_stack:
        raise ParseError("unmatched '('", offset=len(s) - 1)
    if open_rings:
        num, (_, at) = next(iter(sorted(open_rings.items())))
        raise ParseError(f"unmatched ring-closure digit {num}", offset=at)
    if prev is None:
        raise ParseError("trailing '.'", offset=len(s) - 1)

    if fragments > 1:
        log.warning("SMILES %r has %d fragments; graph will be disconnected",
                    s, fragments)
    return Molecule(Graph(len(labels), edges, labels), source=s, name=name)


@dataclass
class Reject:
    line: int
    text: str
    reason: str


@dataclass
class Corpus:
    molecules: list
    rejects: list


def load_corpus(path):
    """Load a ``SMILES[\\tNAME]``-per-line corpus file.

    ``#`` comment lines and blank lines are skipped. Unparseable lines land in
    the rejects list instead of aborting the load.
    """
    molecules = []
    rejects = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            smiles, _, molname = line.partition("\t")
            smiles = smiles.strip()
            molname = molname.strip() or None
            try:
                molecules.append(parse_smiles(smiles, name=molname))
            except ParseError as exc:
                rejects.append(Reject(lineno, line, str(exc)))
    return Corpus(molecules, rejects)
