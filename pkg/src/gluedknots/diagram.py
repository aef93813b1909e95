"""Combinatorial planar link diagrams.

A diagram is a 4-valent plane graph with over/under data.  Each crossing has
four ports in counterclockwise order:

    port 0: incoming under-strand     port 2: outgoing under-strand
    ports 1,3: the over-strand; it enters at 3 for a positive crossing
    (sign = det[tangent_over, tangent_under] > 0) and at 1 for a negative one.

Edges are directed along the strand orientation and connect ports.  Crossing
signs, the rotation system, PD and Gauss codes, faces, and the Reidemeister
moves all live here; geometry is only used upstream to build the object.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import GluedKnotError

Port = tuple[int, int]  # (crossing id, port index 0..3)


@dataclass
class Crossing:
    sign: int
    pair: Optional[tuple[int, int]] = None  # source ellipse indices (unordered)
    xy: Optional[tuple[float, float]] = None  # image-plane position, if projected
    thetas: Optional[dict[int, float]] = None  # curve parameters per source ellipse
    over_src: Optional[int] = None  # which source ellipse runs on top

    @property
    def over_in(self) -> int:
        return 3 if self.sign > 0 else 1

    @property
    def over_out(self) -> int:
        return 1 if self.sign > 0 else 3


@dataclass
class Edge:
    tail: Port
    head: Port


class Diagram:
    """Mutable planar diagram; all moves are performed in place."""

    def __init__(self):
        self.crossings: dict[int, Crossing] = {}
        self.edges: dict[int, Edge] = {}
        self.port_map: dict[Port, tuple[int, str]] = {}  # port -> (edge id, 'T'|'H')
        self.free_loops: int = 0
        self._next_c = 0
        self._next_e = 0

    # -- construction -----------------------------------------------------

    def new_crossing(self, sign: int, pair=None, xy=None) -> int:
        cid = self._next_c
        self._next_c += 1
        self.crossings[cid] = Crossing(sign, pair, xy)
        return cid

    def new_edge(self, tail: Port, head: Port) -> int:
        eid = self._next_e
        self._next_e += 1
        self.edges[eid] = Edge(tail, head)
        self.port_map[tail] = (eid, "T")
        self.port_map[head] = (eid, "H")
        return eid

    def copy(self) -> "Diagram":
        d = Diagram()
        d.free_loops = self.free_loops
        d._next_c = self._next_c
        d._next_e = self._next_e
        d.crossings = {
            cid: Crossing(c.sign, c.pair, c.xy, dict(c.thetas) if c.thetas else None, c.over_src)
            for cid, c in self.crossings.items()
        }
        d.edges = {eid: Edge(e.tail, e.head) for eid, e in self.edges.items()}
        d.port_map = dict(self.port_map)
        return d

    def validate(self) -> None:
        """Structural sanity: every port of every crossing is matched once."""
        seen: dict[Port, int] = {}
        for eid, e in self.edges.items():
            for p in (e.tail, e.head):
                seen[p] = seen.get(p, 0) + 1
        for cid in self.crossings:
            for k in range(4):
                if seen.get((cid, k), 0) != 1:
                    raise GluedKnotError(f"port ({cid},{k}) matched {seen.get((cid, k), 0)} times")
        if len(seen) != 4 * len(self.crossings):
            raise GluedKnotError("dangling edge endpoint")
        for p, (eid, role) in self.port_map.items():
            e = self.edges[eid]
            if (role == "T" and e.tail != p) or (role == "H" and e.head != p):
                raise GluedKnotError("port map out of sync")

    # -- traversal ---------------------------------------------------------

    @staticmethod
    def _through(cross: Crossing, in_port: int) -> int:
        if in_port == 0:
            return 2
        if in_port == cross.over_in:
            return cross.over_out
        raise GluedKnotError(f"port {in_port} is not an incoming port")

    def in_ports(self, cid: int) -> tuple[int, int]:
        return (0, self.crossings[cid].over_in)

    def components(self) -> list[list[tuple[int, str]]]:
        """Closed walks as lists of passages (crossing id, 'O'|'U'),
        deterministic order.  Free loops are not included."""
        visited: set[Port] = set()
        walks = []
        for cid in sorted(self.crossings):
            for in_port in self.in_ports(cid):
                if (cid, in_port) in visited:
                    continue
                walk = []
                c, p = cid, in_port
                while (c, p) not in visited:
                    visited.add((c, p))
                    walk.append((c, "U" if p == 0 else "O"))
                    out = self._through(self.crossings[c], p)
                    eid, role = self.port_map[(c, out)]
                    if role != "T":
                        raise GluedKnotError("edge direction inconsistent with traversal")
                    c, p = self.edges[eid].head
                walks.append(walk)
        return walks

    def crossing_count(self) -> int:
        return len(self.crossings)

    def component_count(self) -> int:
        return len(self.components()) + self.free_loops

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings.values())

    def gauss_code(self) -> str:
        comps = self.components()
        ids: dict[int, int] = {}
        parts = []
        for walk in comps:
            bits = []
            for cid, role in walk:
                n = ids.setdefault(cid, len(ids) + 1)
                s = "+" if self.crossings[cid].sign > 0 else "-"
                bits.append(f"{role}{n}{s}")
            parts.append(" ".join(bits))
        return " / ".join(parts)

    def _edge_labels(self) -> dict[int, int]:
        """Sequential edge labels 1..2n along the traversal (PD convention)."""
        labels: dict[int, int] = {}
        nxt = 1
        for walk in self.components():
            c, p = walk[0][0], 0 if walk[0][1] == "U" else self.crossings[walk[0][0]].over_in
            for _ in walk:
                out = self._through(self.crossings[c], p)
                eid, _ = self.port_map[(c, out)]
                labels[eid] = nxt
                nxt += 1
                c, p = self.edges[eid].head
        return labels

    def pd_code(self) -> str:
        labels = self._edge_labels()
        tuples = []
        for cid in sorted(self.crossings):
            t = []
            for k in range(4):
                eid, _ = self.port_map[(cid, k)]
                t.append(labels[eid])
            tuples.append("X({},{},{},{})".format(*t))
        return ",".join(tuples)

    # -- faces ---------------------------------------------------------------

    def faces(self) -> list[list[Port]]:
        """Faces of the embedding as orbits of departure states; the face id
        of the corner between ports p and p+1 of crossing c is the orbit
        containing the departure state (c, p)."""
        out = []
        seen: set[Port] = set()
        for cid in sorted(self.crossings):
            for k in range(4):
                if (cid, k) in seen:
                    continue
                orbit = []
                c, p = cid, k
                while (c, p) not in seen:
                    seen.add((c, p))
                    orbit.append((c, p))
                    eid, role = self.port_map[(c, p)]
                    e = self.edges[eid]
                    oc, op = e.head if role == "T" else e.tail
                    c, p = oc, (op - 1) % 4
                out.append(orbit)
        return out

    def face_of_corner(self) -> dict[Port, int]:
        m = {}
        for fid, orbit in enumerate(self.faces()):
            for dep in orbit:
                m[dep] = fid
        return m

    def euler_ok(self) -> bool:
        """V - E + F == 2 per connected piece (pieces count as separate spheres)."""
        if not self.crossings:
            return True
        pieces = self._connected_pieces()
        v = len(self.crossings)
        e = len(self.edges)
        f = len(self.faces())
        return v - e + f == 2 * len(pieces)

    def _connected_pieces(self) -> list[set[int]]:
        adj: dict[int, set[int]] = {cid: set() for cid in self.crossings}
        for e in self.edges.values():
            adj[e.tail[0]].add(e.head[0])
            adj[e.head[0]].add(e.tail[0])
        pieces = []
        left = set(adj)
        while left:
            root = left.pop()
            comp = {root}
            stack = [root]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
                        left.discard(y)
            pieces.append(comp)
        return pieces

    # -- predicates ------------------------------------------------------------

    def is_alternating(self) -> bool:
        for walk in self.components():
            if len(walk) >= 2:
                for (_, r1), (_, r2) in zip(walk, walk[1:] + walk[:1]):
                    if r1 == r2:
                        return False
        return True

    def is_reduced(self) -> bool:
        """No nugatory crossing: opposite corners of a crossing never share a face."""
        if not self.crossings:
            return True
        corner = self.face_of_corner()
        for cid in self.crossings:
            if corner[(cid, 0)] == corner[(cid, 2)] or corner[(cid, 1)] == corner[(cid, 3)]:
                return False
        return True

    def is_prime_shadow(self) -> bool:
        """No 2-edge cut separating crossings (diagram connected, >= 1 crossing)."""
        if len(self._connected_pieces()) != 1:
            return False
        eids = list(self.edges)
        for e1, e2 in itertools.combinations(eids, 2):
            sides = self._split_by_edges({e1, e2})
            if sides is not None:
                return False
        return True

    def _split_by_edges(self, cut: set[int]):
        adj: dict[int, set[int]] = {cid: set() for cid in self.crossings}
        for eid, e in self.edges.items():
            if eid in cut:
                continue
            adj[e.tail[0]].add(e.head[0])
            adj[e.head[0]].add(e.tail[0])
        cut_ends = set()
        for eid in cut:
            cut_ends.add(self.edges[eid].tail[0])
            cut_ends.add(self.edges[eid].head[0])
        if not self.crossings:
            return None
        root = next(iter(self.crossings))
        comp = {root}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        rest = set(self.crossings) - comp
        if rest:
            return comp, rest
        return None

    # -- canonical key -----------------------------------------------------------

    def canonical_key(self) -> tuple:
        """Canonical serialization used for memoization and search dedup."""
        comps = self.components()
        if not comps:
            return ("loops", self.free_loops)
        orders: Iterable[tuple[int, ...]]
        if len(comps) <= 4:
            orders = itertools.permutations(range(len(comps)))
        else:
            orders = [tuple(range(len(comps)))]
        best = None
        for order in orders:
            rot_choices = [range(len(comps[i])) for i in order]
            # limit rotation search: full for first component, greedy for the rest
            for r0 in rot_choices[0]:
                rots = [r0] + [0] * (len(order) - 1)
                key = self._serialize(comps, order, rots)
                if best is None or key < best:
                    best = key
        return ("d", self.free_loops) + best

    def _serialize(self, comps, order, rots) -> tuple:
        ids: dict[int, int] = {}
        out = []
        for oi, ci in enumerate(order):
            walk = comps[ci]
            r = rots[oi] if oi < len(rots) else 0
            walk = walk[r:] + walk[:r]
            for cid, role in walk:
                n = ids.setdefault(cid, len(ids))
                out.append((n, role, self.crossings[cid].sign))
            out.append((-1, "|", 0))
        return tuple(out)

    # -- surgeries ------------------------------------------------------------

    def _splice(self, head_port: Port, tail_port: Port) -> None:
        """Connect the edge arriving at head_port to the edge leaving tail_port,
        removing the two ports from the diagram."""
        ein_id, role_in = self.port_map.pop(head_port)
        eout_id, role_out = self.port_map.pop(tail_port)
        if role_in != "H" or role_out != "T":
            raise GluedKnotError("splice ports have wrong direction")
        if ein_id == eout_id:
            self.free_loops += 1
            del self.edges[ein_id]
            return
        ein = self.edges[ein_id]
        eout = self.edges[eout_id]
        ein.head = eout.head
        self.port_map[eout.head] = (ein_id, "H")
        del self.edges[eout_id]

    def smooth_oriented(self, cid: int) -> None:
        """Replace the crossing by its orientation-respecting smoothing."""
        c = self.crossings[cid]
        if c.sign > 0:
            pairs = [((cid, 0), (cid, 1)), ((cid, 3), (cid, 2))]
        else:
            pairs = [((cid, 0), (cid, 3)), ((cid, 1), (cid, 2))]
        for head_port, tail_port in pairs:
            self._splice(head_port, tail_port)
        del self.crossings[cid]

    def switch_crossing(self, cid: int) -> None:
        """Swap over and under strands; the sign flips, ports relabel CCW."""
        c = self.crossings[cid]
        shift = 1 if c.sign > 0 else 3  # old port p becomes (p + shift) % 4
        updates = {}
        for k in range(4):
            entry = self.port_map.pop((cid, k))
            updates[(cid, (k + shift) % 4)] = entry
        for p, (eid, role) in updates.items():
            self.port_map[p] = (eid, role)
            e = self.edges[eid]
            if role == "T":
                e.tail = p
            else:
                e.head = p
        c.sign = -c.sign

    def mirror(self) -> "Diagram":
        d = self.copy()
        for cid in list(d.crossings):
            d.switch_crossing(cid)
        return d

    def reverse_all(self) -> "Diagram":
        """Reverse the orientation of every component (signs are unchanged)."""
        d = self.copy()
        new_edges = {eid: Edge(e.head, e.tail) for eid, e in d.edges.items()}
        port_map = {}
        remap = {}
        for cid, c in d.crossings.items():
            # under in/out swap (0<->2) and over in/out swap; CCW order is kept.
            remap[(cid, 0)] = (cid, 2)
            remap[(cid, 2)] = (cid, 0)
            remap[(cid, 1)] = (cid, 3)
            remap[(cid, 3)] = (cid, 1)
        for eid, e in new_edges.items():
            e.tail = remap[e.tail]
            e.head = remap[e.head]
            port_map[e.tail] = (eid, "T")
            port_map[e.head] = (eid, "H")
        d.edges = new_edges
        d.port_map = port_map
        return d

    # -- Reidemeister moves ------------------------------------------------------

    def r1_sites(self) -> list[int]:
        """Crossings carrying a kink (an edge between CCW-adjacent ports)."""
        sites = []
        for eid, e in self.edges.items():
            if e.tail[0] == e.head[0]:
                cid = e.tail[0]
                if (e.tail[1] - e.head[1]) % 4 in (1, 3):
                    sites.append(cid)
        return sorted(set(sites))

    def apply_r1(self, cid: int) -> None:
        kink_eid = None
        for eid, e in self.edges.items():
            if e.tail[0] == cid and e.head[0] == cid and (e.tail[1] - e.head[1]) % 4 in (1, 3):
                kink_eid = eid
                break
        if kink_eid is None:
            raise GluedKnotError(f"no kink at crossing {cid}")
        e = self.edges[kink_eid]
        kink_ports = {e.tail[1], e.head[1]}
        del self.edges[kink_eid]
        self.port_map.pop(e.tail)
        self.port_map.pop(e.head)
        rest = [k for k in range(4) if k not in kink_ports]
        ports = []
        for k in rest:
            eid, role = self.port_map[(cid, k)]
            ports.append((k, role))
        head_port = next(k for k, role in ports if role == "H")
        tail_port = next(k for k, role in ports if role == "T")
        self._splice((cid, head_port), (cid, tail_port))
        del self.crossings[cid]

    def r2_sites(self) -> list[tuple[Port, Port]]:
        """Bigon faces that can be pulled apart (one strand over at both
        crossings); returned as the pair of departure states of the face."""
        sites = []
        for orbit in self.faces():
            if len(orbit) != 2:
                continue
            (x, px), (y, py) = orbit
            if x == y:
                continue
            # edge E1 runs between (x,px) and (y,(py+1)%4)
            role_x = "U" if px % 2 == 0 else "O"
            role_y = "U" if (py + 1) % 2 == 0 else "O"
            if role_x == role_y:
                sites.append(((x, px), (y, py)))
        return sites

    def apply_r2(self, site: tuple[Port, Port]) -> None:
        (x, px), (y, py) = site
        e1 = self._edge_between((x, px), (y, (py + 1) % 4))
        e2 = self._edge_between((y, py), (x, (px + 1) % 4))
        for eid, (ca, pa), (cb, pb) in (e1, e2):
            # strand travels tail crossing -> head crossing through the bigon
            ed = self.edges[eid]
            (tc, tp), (hc, hp) = ed.tail, ed.head
            del self.edges[eid]
            self.port_map.pop(ed.tail)
            self.port_map.pop(ed.head)
            self._splice((tc, (tp + 2) % 4), (hc, (hp + 2) % 4))
        del self.crossings[x]
        del self.crossings[y]

    def _edge_between(self, p1: Port, p2: Port):
        eid, _ = self.port_map[p1]
        e = self.edges[eid]
        if {e.tail, e.head} != {p1, p2}:
            raise GluedKnotError("face structure inconsistent with edges")
        return eid, p1, p2

    def r3_sites(self) -> list[tuple[Port, Port, Port]]:
        """Triangle faces with one strand uniformly over or under its two
        corners; the move slides that strand across the opposite crossing."""
        sites = []
        for orbit in self.faces():
            if len(orbit) != 3:
                continue
            (x, px), (y, py), (z, pz) = orbit
            if len({x, y, z}) != 3:
                continue
            ends = [
                ((x, px), (y, (py + 1) % 4)),
                ((y, py), (z, (pz + 1) % 4)),
                ((z, pz), (x, (px + 1) % 4)),
            ]
            ok = False
            for (c1, p1), (c2, p2) in ends:
                if p1 % 2 == p2 % 2:
                    ok = True
            if ok:
                sites.append(((x, px), (y, py), (z, pz)))
        return sites

    def apply_r3(self, site: tuple[Port, Port, Port]) -> None:
        (x, px), (y, py), (z, pz) = site
        tri = []
        for pa, pb in ((((x, px)), ((y, (py + 1) % 4))),
                       (((y, py)), ((z, (pz + 1) % 4))),
                       (((z, pz)), ((x, (px + 1) % 4)))):
            eid, _ = self.port_map[pa]
            e = self.edges[eid]
            if {e.tail, e.head} != {pa, pb}:
                raise GluedKnotError("triangle face inconsistent with edges")
            tri.append(eid)
        # plan all endpoint moves first, then apply
        plans = []
        for eid in tri:
            e = self.edges[eid]
            (ca, pa) = e.tail
            (cb, pb) = e.head
            outer_in = self.port_map[(ca, (pa + 2) % 4)]
            outer_out = self.port_map[(cb, (pb + 2) % 4)]
            if outer_in[1] != "H" or outer_out[1] != "T":
                raise GluedKnotError("R3 outer edges have unexpected direction")
            plans.append((eid, (ca, pa), (cb, pb), outer_in[0], outer_out[0]))
        moves: list[tuple[int, str, Port]] = []
        for eid, (ca, pa), (cb, pb), ein, eout in plans:
            moves.append((ein, "H", (cb, pb)))
            moves.append((eid, "T", (cb, (pb + 2) % 4)))
            moves.append((eid, "H", (ca, (pa + 2) % 4)))
            moves.append((eout, "T", (ca, pa)))
        for eid, role, port in moves:
            e = self.edges[eid]
            if role == "T":
                e.tail = port
            else:
                e.head = port
        self.port_map = {}
        for eid, e in self.edges.items():
            self.port_map[e.tail] = (eid, "T")
            self.port_map[e.head] = (eid, "H")

    # -- kink insertion (used by tests and unknot-normalization checks) -----------

    def add_kink(self, eid: int, sign: int, over_first: bool = False) -> int:
        """Insert an R1 kink of the given sign into edge eid."""
        e = self.edges[eid]
        old_head = e.head
        cid = self.new_crossing(sign)
        c = self.crossings[cid]
        if not over_first:
            # strand: ...-> under-in; under-out -> kink edge -> over-in; over-out -> old head
            e.head = (cid, 0)
            self.port_map[(cid, 0)] = (eid, "H")
            self.new_edge((cid, 2), (cid, c.over_in))
            out_eid = self.new_edge((cid, c.over_out), old_head)
        else:
            e.head = (cid, c.over_in)
            self.port_map[(cid, c.over_in)] = (eid, "H")
            self.new_edge((cid, c.over_out), (cid, 0))
            out_eid = self.new_edge((cid, 2), old_head)
        self.port_map[old_head] = (out_eid, "H")
        return cid


# ---------------------------------------------------------------------------
# PD code I/O
# ---------------------------------------------------------------------------

def diagram_from_pd(tuples: list[tuple[int, int, int, int]]) -> Diagram:
    """Build a knot diagram from PD tuples (a,b,c,d): counterclockwise from
    the incoming under-strand.  Edge labels must be 1..2n along the knot."""
    n = len(tuples)
    if n == 0:
        d = Diagram()
        d.free_loops = 1
        return d
    m = 2 * n
    d = Diagram()
    heads: dict[int, Port] = {}
    tails: dict[int, Port] = {}

    def succ(k: int) -> int:
        return k % m + 1

    for t in tuples:
        a, b, c, cc = t
        cid = d.new_crossing(+1)  # sign fixed below
        if c != succ(a):
            raise GluedKnotError(f"PD tuple {t}: under strand labels must step by one")
        if cc == succ(b):
            sign = -1  # over runs b -> d, enters at port 1
        elif b == succ(cc):
            sign = +1  # over runs d -> b, enters at port 3
        else:
            raise GluedKnotError(f"PD tuple {t}: over strand labels must step by one")
        d.crossings[cid].sign = sign
        heads[a] = (cid, 0)
        tails[c] = (cid, 2)
        if sign > 0:
            heads[cc] = (cid, 3)
            tails[b] = (cid, 1)
        else:
            heads[b] = (cid, 1)
            tails[cc] = (cid, 3)
    if set(heads) != set(range(1, m + 1)) or set(tails) != set(range(1, m + 1)):
        raise GluedKnotError("PD labels do not form a single traversal")
    for lbl in range(1, m + 1):
        d.new_edge(tails[lbl], heads[lbl])
    d.validate()
    return d


def parse_pd_text(text: str) -> list[tuple[int, int, int, int]]:
    out = []
    for chunk in text.replace(" ", "").split("),"):
        chunk = chunk.strip().rstrip(",")
        if not chunk:
            continue
        if not chunk.endswith(")"):
            chunk += ")"
        if not (chunk.startswith("X(") and chunk.endswith(")")):
            raise GluedKnotError(f"bad PD chunk: {chunk!r}")
        nums = tuple(int(x) for x in chunk[2:-1].split(","))
        if len(nums) != 4:
            raise GluedKnotError(f"bad PD chunk: {chunk!r}")
        out.append(nums)
    return out


# ---------------------------------------------------------------------------
# State-sum support
# ---------------------------------------------------------------------------

def state_loops(d: Diagram, choice: dict[int, str]) -> int:
    """Number of loops after replacing each crossing by its A or B smoothing.

    The A smoothing joins ports {0,1} and {2,3}; B joins {1,2} and {3,0}.
    Smoothings ignore orientation, so loops are counted on the undirected
    pairing graph.
    """
    mate: dict[Port, Port] = {}
    for eid, e in d.edges.items():
        mate[e.tail] = e.head
        mate[e.head] = e.tail
    pairing: dict[Port, Port] = {}
    for cid in d.crossings:
        if choice[cid] == "A":
            pairs = ((0, 1), (2, 3))
        else:
            pairs = ((1, 2), (3, 0))
        for a, b in pairs:
            pairing[(cid, a)] = (cid, b)
            pairing[(cid, b)] = (cid, a)
    loops = 0
    seen: set[Port] = set()
    for start in mate:
        if start in seen:
            continue
        loops += 1
        p = start
        while True:
            seen.add(p)
            q = mate[p]
            seen.add(q)
            p = pairing[q]
            if p == start:
                break
    return loops + d.free_loops


# ---------------------------------------------------------------------------
# Greedy simplification
# ---------------------------------------------------------------------------

def _reduce_r1_r2(d: Diagram) -> bool:
    did = False
    while True:
        sites = d.r1_sites()
        if sites:
            d.apply_r1(sites[0])
            did = True
            continue
        sites2 = d.r2_sites()
        if sites2:
            d.apply_r2(sites2[0])
            did = True
            continue
        return did


def simplify(d: Diagram, max_iters: int = 1000, r3_breadth: int = 64) -> Diagram:
    """Monotone simplification: greedy R1/R2 plus bounded R3 exploration.

    The result represents the same link; the crossing count never increases.
    """
    best = d.copy()
    _reduce_r1_r2(best)
    for _ in range(max_iters):
        if not best.crossings:
            return best
        # breadth-limited search through R3 moves for a diagram admitting R1/R2
        seen = {best.canonical_key()}
        frontier = [best]
        found = None
        budget = r3_breadth
        while frontier and budget > 0 and found is None:
            nxt = []
            for cur in frontier:
                for site in cur.r3_sites():
                    if budget <= 0:
                        break
                    variant = cur.copy()
                    try:
                        variant.apply_r3(site)
                    except GluedKnotError:
                        continue
                    budget -= 1
                    key = variant.canonical_key()
                    if key in seen:
                        continue
                    seen.add(key)
                    probe = variant.copy()
                    if _reduce_r1_r2(probe):
                        found = probe
                        break
                    nxt.append(variant)
                if found is not None:
                    break
            frontier = nxt
        if found is None:
            return best
        best = found
    return best
