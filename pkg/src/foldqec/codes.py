"""Surface-code family construction from directed planar graphs.

Qudits live on the edges of a directed graph; every vertex carries an
X-type generator (X for in-edges, X-dagger for out-edges) and every face a
Z-type generator (Z along the counterclockwise traversal, Z-dagger against
it).  The square family uses the diagonal grid with data at even-parity
integer points; the diamond family is the rotated-lattice segment.  Fold
layouts pair each qudit with its mirror image and record the light/dark
bipartition used by the transversal gate constructions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import linalg
from .pauli import PauliWord, commutator_exponent

FAMILIES = ("square", "diamond", "cone-minimal", "cone-compatible", "steane")


@dataclass
class StabSite:
    """One stabilizer generator: kind, planar position, and its terms.

    terms is a list of (qudit, x_exp, z_exp); CSS sites have only one kind
    of exponent but mixed sites near a cone apex may carry both.
    """

    kind: str
    pos: tuple
    terms: list

    def word(self, dims) -> PauliWord:
        x = np.zeros(len(dims), np.int64)
        z = np.zeros(len(dims), np.int64)
        for q, xe, ze in self.terms:
            x[q] += xe
            z[q] += ze
        return PauliWord(dims, 0, x, z)

    def support(self) -> tuple:
        return tuple(q for q, _, _ in self.terms)


class CodeValidationError(AssertionError):
    pass


class StabilizerCode:
    def __init__(self, family, D, d, coords, sites, logical_x, logical_z,
                 variant=None, edge_dirs=None, arcs_x=None, arcs_z=None):
        self.family = family
        self.D = int(D)
        self.d = int(d)
        self.coords = list(coords)
        self.n = len(coords)
        self.dims = (self.d,) * self.n
        self.sites = list(sites)
        self.logical_x = logical_x
        self.logical_z = logical_z
        self.variant = variant
        self.edge_dirs = edge_dirs or {}
        # arc maps: qudit -> boundary arc id (0/1) for string termination,
        # for qudits with fewer than two same-type detectors
        self.arcs_x = arcs_x or {}
        self.arcs_z = arcs_z or {}
        self._generators = None
        self._shifters = None

    # -- derived data --------------------------------------------------------

    @property
    def generators(self) -> list[PauliWord]:
        if self._generators is None:
            self._generators = [s.word(self.dims) for s in self.sites]
        return self._generators

    def x_sites(self):
        return [i for i, s in enumerate(self.sites) if s.kind == "X"]

    def z_sites(self):
        return [i for i, s in enumerate(self.sites) if s.kind == "Z"]

    def symplectic_rows(self) -> np.ndarray:
        """Rows (x | z) of every generator."""
        rows = np.zeros((len(self.sites), 2 * self.n), np.int64)
        for i, g in enumerate(self.generators):
            rows[i, :self.n] = g.xpow
            rows[i, self.n:] = g.zpow
        return rows % self.d

    def commutator_matrix_rows(self) -> np.ndarray:
        """Row per generator G with row @ (e_x|e_z) = commutator_exponent(G, E),
        i.e. [ z_G | -x_G ]."""
        rows = np.zeros((len(self.sites), 2 * self.n), np.int64)
        for i, g in enumerate(self.generators):
            rows[i, :self.n] = g.zpow % self.d
            rows[i, self.n:] = (-g.xpow) % self.d
        return rows % self.d

    def detectors_for_x_errors(self, q: int) -> list[int]:
        """Generators whose outcome shifts under an X error on q."""
        return [i for i, g in enumerate(self.generators) if g.zpow[q] % self.d]

    def detectors_for_z_errors(self, q: int) -> list[int]:
        return [i for i, g in enumerate(self.generators) if g.xpow[q] % self.d]

    # -- validation ----------------------------------------------------------

    def validate(self, check_distance=True) -> None:
        d = self.d
        gens = self.generators
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                c = commutator_exponent(gens[i], gens[j])
                if c:
                    raise CodeValidationError(
                        f"generators {i} and {j} do not commute (w^{c})")
        for name, L in (("X", self.logical_x), ("Z", self.logical_z)):
            for i, g in enumerate(gens):
                c = commutator_exponent(g, L)
                if c:
                    raise CodeValidationError(
                        f"logical {name} fails to commute with generator {i}")
        c = commutator_exponent(self.logical_z, self.logical_x)
        if c != 1:
            raise CodeValidationError(f"commutator(Zbar, Xbar) = {c} != 1")
        basis = linalg.row_basis(self.symplectic_rows(), d)
        if basis.nrows != self.n - 1:
            raise CodeValidationError(
                f"independent generator count {basis.nrows} != {self.n - 1}")
        if not basis.has_unit_pivots():
            raise CodeValidationError("generator span has non-unit pivots")
        # no phased identity inside the group: nullspace combos multiply to
        # exact identity including phase
        rows = self.symplectic_rows()
        for combo in linalg.nullspace(rows.T, d):
            w = PauliWord.identity(self.dims)
            for coeff, g in zip(combo, gens):
                w = w * g.power(int(coeff))
            if not w.is_identity():
                raise CodeValidationError(
                    "generator dependency carries a nontrivial phase")
        if check_distance:
            dist = code_distance(self)
            if dist != self.D:
                raise CodeValidationError(
                    f"distance {dist} != declared D = {self.D}")

    # -- membership / decomposition ------------------------------------------

    def group_basis(self) -> linalg.RowBasis:
        return linalg.row_basis(self.symplectic_rows(), self.d)

    def stabilizer_phase_of(self, word: PauliWord):
        """If word's symplectic part is in the group, return the phase delta
        (word.phase - group element phase); None if not a member."""
        vec = np.concatenate([word.xpow, word.zpow]) % self.d
        residual, coeffs = self.group_basis().reduce(vec)
        if residual.any():
            return None
        elem = PauliWord.identity(self.dims)
        for coeff, g in zip(coeffs, self.generators):
            elem = elem * g.power(int(coeff))
        return (word.phase - elem.phase) % (2 * self.d)

    def syndrome_shifters(self) -> list[PauliWord]:
        """E_i with commutator_exponent(G_j, E_i) = delta_ij and
        commutator(logicals, E_i) = 0 preserved for logical Z."""
        if self._shifters is not None:
            return self._shifters
        d = self.d
        gens = self.generators
        rows = []
        for g in gens:
            rows.append(np.concatenate([g.zpow % d, (-g.xpow) % d]))
        lz = self.logical_z
        rows.append(np.concatenate([lz.zpow % d, (-lz.xpow) % d]))
        A = np.array(rows, dtype=np.int64)
        out = []
        for i in range(len(gens)):
            b = np.zeros(len(gens) + 1, np.int64)
            b[i] = 1
            sol = linalg.solve(A, b, d)
            if sol is None:
                raise CodeValidationError(f"no syndrome shifter for gen {i}")
            out.append(PauliWord(self.dims, 0, sol[:self.n], sol[self.n:]))
        self._shifters = out
        return out

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "D": self.D,
            "d": self.d,
            "variant": self.variant,
            "n": self.n,
            "sites": [list(map(float, p)) for p in self.coords],
            "edges": [{"index": i,
                       "pos": list(map(float, self.coords[i])),
                       "direction": list(self.edge_dirs.get(i, ())) or None}
                      for i in range(self.n)],
            "vertices": [{"pos": list(map(float, s.pos)),
                          "terms": [[q, xe, ze] for q, xe, ze in s.terms]}
                         for s in self.sites if s.kind == "X"],
            "faces": [{"pos": list(map(float, s.pos)),
                       "terms": [[q, xe, ze] for q, xe, ze in s.terms]}
                      for s in self.sites if s.kind == "Z"],
            "generators": [g.text() for g in self.generators],
            "logical_x": self.logical_x.text(),
            "logical_z": self.logical_z.text(),
        }

    def fingerprint(self) -> str:
        import hashlib
        import json
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


# -- logical string solving ----------------------------------------------------


def _solve_string(code_rows_x, code_rows_z, support, n, d, kind: str):
    """Exponents on `support` making an X- or Z-string commute with all
    generators; first exponent normalized to +1."""
    support = list(support)
    if kind == "X":
        A = code_rows_z[:, support]      # commutator = z_G . e
    else:
        A = (-code_rows_x[:, support]) % d   # commutator = -x_G . e
    # solve A e = 0 with e[0] = 1  ->  A[:,1:] e' = -A[:,0]
    b = (-A[:, 0]) % d
    if len(support) == 1:
        if b.any():
            return None
        sol = np.array([1], np.int64)
    else:
        rest = linalg.solve(A[:, 1:], b, d)
        if rest is None:
            return None
        sol = np.concatenate([[1], rest])
    e = np.zeros(n, np.int64)
    for q, v in zip(support, sol):
        e[q] = v % d
    return e


def make_logicals(dims, sites, x_support, z_support, d):
    n = len(dims)
    rows_x = np.zeros((len(sites), n), np.int64)
    rows_z = np.zeros((len(sites), n), np.int64)
    for i, s in enumerate(sites):
        for q, xe, ze in s.terms:
            rows_x[i, q] += xe
            rows_z[i, q] += ze
    rows_x %= d
    rows_z %= d
    ex = _solve_string(rows_x, rows_z, x_support, n, d, "X")
    ez = _solve_string(rows_x, rows_z, z_support, n, d, "Z")
    if ex is None or ez is None:
        raise CodeValidationError("no valid logical string on given support")
    lx = PauliWord(dims, 0, ex, np.zeros(n, np.int64))
    lz = PauliWord(dims, 0, np.zeros(n, np.int64), ez)
    c = commutator_exponent(lz, lx)
    if gcd(c, d) != 1:
        raise CodeValidationError(f"logical commutator {c} not a unit mod {d}")
    if c != 1:
        lx = lx.power(pow(c, -1, d))
    return lx, lz


# -- square family ---------------------------------------------------------------


def _square_geometry(D):
    """Diagonal grid: data at even-parity (x, y), 0 <= x,y <= 2D-2."""
    side = 2 * D - 2
    qudits = {}
    for x in range(side + 1):
        for y in range(side + 1):
            if (x + y) % 2 == 0:
                qudits[(x, y)] = len(qudits)
    vertices = [(x, y) for x in range(side + 1) for y in range(side + 1)
                if x % 2 == 1 and y % 2 == 0]
    faces = [(x, y) for x in range(side + 1) for y in range(side + 1)
             if x % 2 == 0 and y % 2 == 1]
    return side, qudits, vertices, faces


def _edge_direction(x, y):
    # horizontal edges (even row) point right, vertical edges point up
    return (1, 0) if y % 2 == 0 else (0, 1)


def _vertex_site(pos, qudits, side=None):
    vx, vy = pos
    terms = []
    for qx, qy in ((vx - 1, vy), (vx + 1, vy), (vx, vy - 1), (vx, vy + 1)):
        q = qudits.get((qx, qy))
        if q is None:
            continue
        dx, dy = _edge_direction(qx, qy)
        head = (qx + dx, qy + dy)
        exp = 1 if head == (vx, vy) else -1
        terms.append((q, exp, 0))
    return StabSite("X", (vx, vy), terms)


def _face_site(pos, qudits, side=None):
    fx, fy = pos
    terms = []
    for qx, qy in ((fx - 1, fy), (fx + 1, fy), (fx, fy - 1), (fx, fy + 1)):
        q = qudits.get((qx, qy))
        if q is None:
            continue
        dx, dy = _edge_direction(qx, qy)
        # ccw orientation sign from cross((q - f), direction)
        cross = (qx - fx) * dy - (qy - fy) * dx
        terms.append((q, 0, 1 if cross > 0 else -1))
    return StabSite("Z", (fx, fy), terms)


def build_square(D: int, d: int) -> StabilizerCode:
    """Planar square surface code: 2D^2-2D+1 qudits, D^2-D vertices/faces."""
    if D < 2:
        raise ValueError("square code needs D >= 2")
    side, qudits, vertices, faces = _square_geometry(D)
    coords = [None] * len(qudits)
    edge_dirs = {}
    for (x, y), q in qudits.items():
        coords[q] = (x, y)
        edge_dirs[q] = _edge_direction(x, y)
    sites = [_vertex_site(v, qudits) for v in vertices]
    sites += [_face_site(f, qudits) for f in faces]
    dims = (d,) * len(coords)
    x_support = [qudits[(0, y)] for y in range(0, side + 1, 2)]
    z_support = [qudits[(x, 0)] for x in range(0, side + 1, 2)]
    lx, lz = make_logicals(dims, sites, x_support, z_support, d)
    arcs_x = {}
    arcs_z = {}
    for (x, y), q in qudits.items():
        if y == 0:
            arcs_x[q] = 0
        elif y == side:
            arcs_x[q] = 1
        if x == 0:
            arcs_z[q] = 0
        elif x == side:
            arcs_z[q] = 1
    return StabilizerCode("square", D, d, coords, sites, lx, lz,
                          edge_dirs=edge_dirs, arcs_x=arcs_x, arcs_z=arcs_z)


# -- diamond family ---------------------------------------------------------------


def _diamond_plaquettes(D):
    """Kept plaquette positions and kinds for the rotated D x D diamond.

    Plaquette (a, b) touches data (i, j) for i in {a, a+1}, j in {b, b+1}.
    Interior plaquettes are X-type iff a+b is even; top/bottom boundaries
    keep X-type halves, left/right keep Z-type halves.
    """
    plaqs = []
    for a in range(D - 1):
        for b in range(D - 1):
            plaqs.append((a, b, "X" if (a + b) % 2 == 0 else "Z"))
    for a in range(D - 1):
        if (a - 1) % 2 == 0:
            plaqs.append((a, -1, "X"))
        if (a + D - 1) % 2 == 0:
            plaqs.append((a, D - 1, "X"))
    for b in range(D - 1):
        if (b - 1) % 2 == 1:
            plaqs.append((-1, b, "Z"))
        if (b + D - 1) % 2 == 1:
            plaqs.append((D - 1, b, "Z"))
    return plaqs


def _diamond_edge_dir(i, j):
    # rotated convention: SW-NE edges point NE, SE-NW edges point NW
    return (1, 1) if (i + j) % 2 == 0 else (-1, 1)


def _diamond_site(a, b, kind, D, qindex):
    """Stabilizer at plaquette (a, b); geometry in doubled coordinates."""
    cx, cy = 2 * a + 1, 2 * b + 1
    terms = []
    for i in (a, a + 1):
        for j in (b, b + 1):
            if not (0 <= i < D and 0 <= j < D):
                continue
            q = qindex[(i, j)]
            px, py = 2 * i, 2 * j
            dx, dy = _diamond_edge_dir(i, j)
            if kind == "X":
                # X-sites of the rotated graph sit at X-plaquette centers;
                # the edge through (i,j) has its head at the NE / NW site
                head = (px + dx, py + dy)
                exp = 1 if head == (cx, cy) else -1
                terms.append((q, exp, 0))
            else:
                cross = (px - cx) * dy - (py - cy) * dx
                terms.append((q, 0, 1 if cross > 0 else -1))
    return StabSite(kind, (cx, cy), terms)


def build_diamond(D: int, d: int) -> StabilizerCode:
    """Rotated surface code: D^2 qudits on a diamond segment."""
    if D < 2:
        raise ValueError("diamond code needs D >= 2")
    qindex = {}
    coords = []
    for i in range(D):
        for j in range(D):
            qindex[(i, j)] = len(coords)
            coords.append((2 * i, 2 * j))
    edge_dirs = {qindex[(i, j)]: _diamond_edge_dir(i, j)
                 for i in range(D) for j in range(D)}
    sites = [_diamond_site(a, b, kind, D, qindex)
             for a, b, kind in _diamond_plaquettes(D)]
    dims = (d,) * len(coords)
    x_support = [qindex[(0, j)] for j in range(D)]
    z_support = [qindex[(i, 0)] for i in range(D)]
    lx, lz = make_logicals(dims, sites, x_support, z_support, d)
    arcs_x = {}
    arcs_z = {}
    for (i, j), q in qindex.items():
        if j == 0:
            arcs_x[q] = 0
        elif j == D - 1:
            arcs_x[q] = 1
        if i == 0:
            arcs_z[q] = 0
        elif i == D - 1:
            arcs_z[q] = 1
    return StabilizerCode("diamond", D, d, coords, sites, lx, lz,
                          edge_dirs=edge_dirs, arcs_x=arcs_x, arcs_z=arcs_z)


# -- Steane family ----------------------------------------------------------------

STEANE_TILES = ((0, 2, 4, 6), (1, 2, 5, 6), (3, 4, 5, 6))
# star bipartition: +1 on one vertex class of the tile-edge graph, -1 on the other
STEANE_TYPE = (1, 1, -1, 1, -1, -1, 1)
_STEANE_COORDS = ((0.0, 0.0), (4.0, 0.0), (2.0, 1.2), (2.0, 3.5),
                  (1.0, 1.8), (3.0, 1.8), (2.0, 2.3))


def build_steane(d: int) -> StabilizerCode:
    """Distance-3 qudit code generalizing the Steane code."""
    sites = []
    for t, tile in enumerate(STEANE_TILES):
        sites.append(StabSite("X", _STEANE_COORDS[tile[0]],
                              [(q, 1, 0) for q in tile]))
        sites.append(StabSite("Z", _STEANE_COORDS[tile[0]],
                              [(q, 0, STEANE_TYPE[q]) for q in tile]))
    dims = (d,) * 7
    lx = PauliWord(dims, 0, np.ones(7, np.int64), np.zeros(7, np.int64))
    lz = PauliWord(dims, 0, np.zeros(7, np.int64),
                   np.array(STEANE_TYPE, np.int64))
    code = StabilizerCode("steane", 3, d, list(_STEANE_COORDS), sites, lx, lz)
    return code


# -- distance ----------------------------------------------------------------------


def _string_graph_distance(code: StabilizerCode, error_kind: str) -> int:
    """Shortest boundary-to-boundary chain of `error_kind` errors.

    Nodes are the detecting generators plus two boundary arcs; each qudit is
    an edge joining its detectors (or an arc when it has fewer than two).
    """
    import heapq

    if error_kind == "X":
        detectors = [code.detectors_for_x_errors(q) for q in range(code.n)]
        arcs = code.arcs_x
    else:
        detectors = [code.detectors_for_z_errors(q) for q in range(code.n)]
        arcs = code.arcs_z
    A0, A1 = "arc0", "arc1"
    adj = {}

    def link(u, v):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)

    for q in range(code.n):
        dets = detectors[q]
        ends = list(dets)
        while len(ends) < 2:
            if q not in arcs:
                ends.append(None)
                continue
            ends.append(A0 if arcs[q] == 0 else A1)
        if None in ends:
            continue
        if len(ends) > 2:
            raise CodeValidationError(
                f"qudit {q} has {len(ends)} {error_kind}-detectors; "
                "string graph undefined")
        link(ends[0], ends[1])
    if A0 not in adj or A1 not in adj:
        raise CodeValidationError("boundary arcs disconnected")
    dist = {A0: 0}
    heap = [(0, 0, A0)]
    counter = 0
    while heap:
        w, _, u = heapq.heappop(heap)
        if u == A1:
            return w
        if w > dist.get(u, 1 << 30):
            continue
        for v in adj.get(u, []):
            nw = w + 1
            if nw < dist.get(v, 1 << 30):
                dist[v] = nw
                counter += 1
                heapq.heappush(heap, (nw, counter, v))
    raise CodeValidationError("no boundary-to-boundary path")


def _brute_distance(code: StabilizerCode) -> int:
    """Exact distance by centralizer enumeration; small codes only."""
    from itertools import product

    d = code.d
    n = code.n
    rows = code.symplectic_rows()
    # centralizer basis: solutions of the commutator system
    comm = np.zeros((len(code.generators), 2 * n), np.int64)
    for i, g in enumerate(code.generators):
        comm[i, :n] = g.zpow % d
        comm[i, n:] = (-g.xpow) % d
    null = linalg.nullspace(comm, d)
    basis = linalg.row_basis(rows, d)
    best = None
    seen = set()
    coeff_ranges = [range(d)] * len(null)
    for coeffs in product(*coeff_ranges):
        v = np.zeros(2 * n, np.int64)
        for c, b in zip(coeffs, null):
            v = (v + c * b) % d
        key = v.tobytes()
        if key in seen:
            continue
        seen.add(key)
        if not v.any() or basis.contains(v):
            continue
        w = int(np.count_nonzero(v[:n] | v[n:]))
        if best is None or w < best:
            best = w
    if best is None:
        raise CodeValidationError("no logical operator found")
    return best


def code_distance(code: StabilizerCode) -> int:
    """Minimum logical string weight via the two boundary path searches."""
    if code.family == "steane":
        return _brute_distance(code)
    dx = _string_graph_distance(code, "X")
    dz = _string_graph_distance(code, "Z")
    return min(dx, dz)


# -- fold layouts -----------------------------------------------------------------


@dataclass
class FoldLayout:
    code: StabilizerCode
    role: dict                      # qudit -> "fold" | "top" | "bottom"
    partner: dict                   # qudit involution; folds fixed
    cluster_of: dict                # qudit -> cluster id
    cluster_pos: dict               # cluster id -> planar position
    cluster_type: dict = field(default_factory=dict)   # "light" | "dark"
    site_partner: dict = field(default_factory=dict)   # generator pairing

    @property
    def fold_qudits(self) -> list:
        return [q for q, r in self.role.items() if r == "fold"]

    @property
    def pairs(self) -> list:
        return sorted({tuple(sorted((q, p))) for q, p in self.partner.items()
                       if p != q})

    def validate(self) -> None:
        n = self.code.n
        for q in range(n):
            p = self.partner[q]
            if self.partner[p] != q:
                raise CodeValidationError("partner map is not an involution")
            if (p == q) != (self.role[q] == "fold"):
                raise CodeValidationError("fold set != fixed points")
            if p != q and {self.role[q], self.role[p]} != {"top", "bottom"}:
                raise CodeValidationError("pairs must join top and bottom")
        if len(self.fold_qudits) + 2 * len(self.pairs) != n:
            raise CodeValidationError("fold/pair counts do not cover the code")

    def mirror_permutation(self) -> dict:
        return dict(self.partner)


def mirror_dual_group_check(code: StabilizerCode, layout: FoldLayout,
                            dagger_sign: dict | None = None) -> bool:
    """Reflection + X<->Z(dagger) substitution maps the group to itself.

    dagger_sign maps each qudit to +1/-1; the image of X^a at q is
    Z^{sign*a} at partner(q) and vice versa.  Default uses the cluster
    bipartition (dark -> +1, light -> -1) when assigned, else +1.
    """
    d = code.d
    sign = {}
    for q in range(code.n):
        if dagger_sign is not None:
            sign[q] = dagger_sign[q]
        elif layout.cluster_type:
            sign[q] = 1 if layout.cluster_type[layout.cluster_of[q]] == "dark" else -1
        else:
            sign[q] = 1
    basis = code.group_basis()
    for g in code.generators:
        x = np.zeros(code.n, np.int64)
        z = np.zeros(code.n, np.int64)
        for q in range(code.n):
            p = layout.partner[q]
            x[p] = (sign[q] * g.zpow[q]) % d
            z[p] = (sign[q] * g.xpow[q]) % d
        if not basis.contains(np.concatenate([x, z])):
            return False
    return True


def fold_square(code: StabilizerCode) -> FoldLayout:
    """Fold the square code along its main diagonal."""
    if code.family not in ("square", "cone-minimal"):
        raise ValueError("fold_square needs a square-family code")
    pos_of = {tuple(p): q for q, p in enumerate(code.coords)}
    partner = {}
    role = {}
    cluster_of = {}
    cluster_pos = {}
    for q, (x, y) in enumerate(code.coords):
        p = pos_of[(y, x)]
        partner[q] = p
        if x == y:
            role[q] = "fold"
        elif x > y:
            role[q] = "top"
        else:
            role[q] = "bottom"
        cx, cy = max(x, y), min(x, y)
        cid = (cx, cy)
        cluster_of[q] = cid
        cluster_pos[cid] = (cx, cy)
    site_partner = {}
    site_at = {(s.kind, tuple(s.pos)): i for i, s in enumerate(code.sites)}
    for i, s in enumerate(code.sites):
        mk = "Z" if s.kind == "X" else "X"
        mp = (s.pos[1], s.pos[0])
        site_partner[i] = site_at[(mk, mp)]
    layout = FoldLayout(code, role, partner, cluster_of, cluster_pos,
                        site_partner=site_partner)
    assign_bipartition(layout)
    return layout


def assign_bipartition(layout: FoldLayout) -> FoldLayout:
    """Type each cluster by the cross product of its overlapping edges.

    The bottom-layer edge is the reflected top-layer edge; a cross product
    out of the plane (right x up) marks the cluster dark, into the plane
    light.  Fold qudits overlap their own reflection.
    """
    code = layout.code
    if not code.edge_dirs:
        raise CodeValidationError("layout lacks edge direction data")
    for q in range(code.n):
        if layout.role[q] == "bottom":
            continue
        p = layout.partner[q]
        dt = code.edge_dirs[q]
        dp = code.edge_dirs[p]
        # reflection across the fold swaps the two lattice directions
        db = (dp[1], dp[0])
        cross = dt[0] * db[1] - dt[1] * db[0]
        if cross == 0:
            raise CodeValidationError(
                f"degenerate overlap orientation at qudit {q}")
        layout.cluster_type[layout.cluster_of[q]] = (
            "dark" if cross > 0 else "light")
    return layout


# -- cones -------------------------------------------------------------------------


def build_cone(D: int, d: int, variant: str):
    """Mirror-dual extensions of the diamond: minimal or compatible."""
    if variant == "minimal":
        return _build_cone_minimal(D, d)
    if variant == "compatible":
        return _build_cone_compatible(D, d)
    raise ValueError(f"unknown cone variant {variant!r}")


def _build_cone_minimal(D: int, d: int):
    """Minimal cone: stabilizer structure of the folded square presented on
    the diamond-like footprint (the same 2D^2-2D+1 qudit count)."""
    base = build_square(D, d)
    code = StabilizerCode("cone-minimal", D, d, base.coords, base.sites,
                          base.logical_x, base.logical_z, variant="minimal",
                          edge_dirs=base.edge_dirs, arcs_x=base.arcs_x,
                          arcs_z=base.arcs_z)
    layout = fold_square(code)
    # cone footprint: shear the folded triangle so the fold line runs along
    # two sides of a diamond (the distorted-edge presentation)
    new_pos = {}
    for cid, (cx, cy) in layout.cluster_pos.items():
        u, v = cx + cy, cx - cy
        new_pos[cid] = (float(u), float(v))
    layout.cluster_pos = new_pos
    return code, layout


def _build_cone_compatible(D: int, d: int):
    from .cone import build_cone_compatible
    return build_cone_compatible(D, d)
