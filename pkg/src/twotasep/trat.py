"""Toric rhombic alternative tableaux in a strip model.

A tiling is stored combinatorially.  Every tile is named by the two letters
of the word whose edges it joins:

  20-tile (y, x): a 2 at y and a 0 at x
  10-tile (b, x): a 1 at b and a 0 at x
  21-tile (y, b): a 2 at y and a 1 at b

Each 0 at x owns a north-strip (its 20- and 10-tiles, listed bottom to top),
each 2 at y a west-strip (its 20- and 21-tiles, listed right to left) and
each 1 at b a diagonal strip (its 10- and 21-tiles).  Up-arrows point to
later tiles of their north-strip, left-arrows to later tiles of their
west-strip.  A filling stores, for every strip, the index of its arrow.
"""
import itertools
import json
from dataclasses import dataclass
from math import comb
from typing import NamedTuple

from .core import RatePolynomial, as_word, classify, rotate, word_str
from .mlq import drop, mlq_from_weights, omega_mlq


class NotRotated(ValueError):
    pass


class NotFlippable(ValueError):
    pass


class NotCompatible(ValueError):
    pass


class InvalidFilling(ValueError):
    pass


class Tile(NamedTuple):
    kind: str  # "20", "10" or "21"
    a: int     # site of the larger letter
    b: int     # site of the smaller letter


def _need_rotated(x):
    x = as_word(x)
    if x[0] != 1:
        raise NotRotated("word must start with 1; rotate it first")
    return x


# ------------------------------------------------------------ diagram

STEP = {2: ("S", (0, -1)), 1: ("SW", (-1, -1)), 0: ("W", (-1, 0))}


@dataclass(frozen=True)
class ToricDiagram:
    type_word: tuple
    path: tuple       # edge names along the boundary path
    vertices: tuple   # lattice points visited, from the start to the origin
    corners: tuple    # six corners of the hexagonal diagram

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]


def build_diagram(x):
    x = _need_rotated(x)
    s = classify(x)
    k, r, l = s.k, s.r, s.l
    pt = (l + r, k + r)
    verts = [pt]
    edges = []
    for c in x:
        name, (dx, dy) = STEP[c]
        pt = (pt[0] + dx, pt[1] + dy)
        verts.append(pt)
        edges.append(name)
    corners = ((l + r, k + r), (l + r, r), (l, 0), (0, 0), (0, k), (r, k + r))
    return ToricDiagram(x, tuple(edges), tuple(verts), corners)


# ------------------------------------------------------------ tilings

@dataclass(frozen=True)
class Tiling:
    type_word: tuple
    north: tuple  # ((x, (tiles bottom to top)), ...)
    west: tuple   # ((y, (tiles right to left)), ...)
    diag: tuple   # ((b, (tiles)), ...)

    def north_strip(self, x):
        return dict(self.north)[x]

    def west_strip(self, y):
        return dict(self.west)[y]

    def diag_strip(self, b):
        return dict(self.diag)[b]

    def tiles(self):
        out = set()
        for _, strip in self.north + self.west + self.diag:
            out.update(strip)
        return out

    def counts(self):
        out = {"20": 0, "10": 0, "21": 0}
        for t in self.tiles():
            out[t.kind] += 1
        return out


def canonical_tiling(x):
    """The tiling built from top-justified X-strips.

    North-strip of the 0 at x: the letters met going left from x around the
    ring, 0s skipped.  West-strip of the 2 at y: 0s after y, then 1s after
    y, then 1s before y, then 0s before y, each group in increasing site
    order.  Diagonal strip of the 1 at b: 0s after b increasing, 2s before b
    decreasing, 2s after b decreasing, 0s before b increasing.
    """
    x = _need_rotated(x)
    n = len(x)
    north = []
    for z in range(n):
        if x[z] != 0:
            continue
        strip = []
        for d in range(1, n):
            p = (z - d) % n
            if x[p] == 2:
                strip.append(Tile("20", p, z))
            elif x[p] == 1:
                strip.append(Tile("10", p, z))
        north.append((z, tuple(strip)))
    west = []
    for y in range(n):
        if x[y] != 2:
            continue
        after = range(y + 1, n)
        before = range(0, y)
        strip = [Tile("20", y, p) for p in after if x[p] == 0]
        strip += [Tile("21", y, p) for p in after if x[p] == 1]
        strip += [Tile("21", y, p) for p in before if x[p] == 1]
        strip += [Tile("20", y, p) for p in before if x[p] == 0]
        west.append((y, tuple(strip)))
    diag = []
    for b in range(n):
        if x[b] != 1:
            continue
        strip = [Tile("10", b, p) for p in range(b + 1, n) if x[p] == 0]
        strip += [Tile("21", p, b) for p in range(b - 1, -1, -1) if x[p] == 2]
        strip += [Tile("21", p, b) for p in range(n - 1, b, -1) if x[p] == 2]
        strip += [Tile("10", b, p) for p in range(0, b) if x[p] == 0]
        diag.append((b, tuple(strip)))
    return Tiling(x, tuple(north), tuple(west), tuple(diag))


# ------------------------------------------------------------ fillings

@dataclass(frozen=True)
class TratFilling:
    tiling: Tiling
    up: tuple    # ((x, index or None), ...) one per north-strip
    left: tuple  # ((y, index or None), ...) one per west-strip

    @property
    def type_word(self):
        return self.tiling.type_word

    def arrows(self):
        """{tile: 'up' | 'left'}; raises if a tile holds two arrows."""
        out = {}
        for x, i in self.up:
            if i is not None:
                out[self.tiling.north_strip(x)[i]] = "up"
        for y, i in self.left:
            if i is not None:
                t = self.tiling.west_strip(y)[i]
                if t in out:
                    raise InvalidFilling(f"tile {t} holds two arrows")
                out[t] = "left"
        return out

    def left_counts(self):
        """Left-arrow count in each north-strip, by 0-site."""
        arrows = self.arrows()
        return {x: sum(1 for t in strip if arrows.get(t) == "left")
                for x, strip in self.tiling.north}

    def weights(self):
        """Left-arrow counts of the north-strips, 0-sites increasing."""
        lc = self.left_counts()
        return tuple(lc[x] for x in sorted(lc))

    def to_json(self):
        up = dict(self.up)
        lc = self.left_counts()
        return {
            "type": word_str(self.type_word),
            "strips": [{"zero_site": x, "left_arrows": lc[x], "up_arrow_index": up[x]}
                       for x in sorted(up)],
            "west_strips": [{"two_site": y, "left_arrow_index": i} for y, i in self.left],
        }


def pointed_tiles(tiling, up, left):
    """Tiles pointed at by some arrow (strictly later in the arrow's strip)."""
    out = set()
    for x, i in up:
        if i is not None:
            out.update(tiling.north_strip(x)[i + 1:])
    for y, i in left:
        if i is not None:
            out.update(tiling.west_strip(y)[i + 1:])
    return out


def is_valid_filling(f, require_arrows=True):
    """Check the filling rules literally.

    (i) a pointed-at tile is empty; (ii) an empty tile is pointed at.
    With require_arrows every strip must carry its arrow (toric case).
    """
    if require_arrows and any(i is None for _, i in f.up + f.left):
        return False
    try:
        arrows = f.arrows()
    except InvalidFilling:
        return False
    pointed = pointed_tiles(f.tiling, f.up, f.left)
    if any(t in arrows for t in pointed):
        return False
    return all(t in arrows or t in pointed for t in f.tiling.tiles())


def _west_choice(strip, covered, held):
    """Forced left-arrow index in a west-strip given the up-arrows.

    Returns (ok, index).  The arrow sits at the first tile not covered by an
    up-arrow; every later tile must be free of up-arrows.
    """
    for i, t in enumerate(strip):
        if t not in covered:
            if any(u in held for u in strip[i + 1:]):
                return False, None
            return True, i
    return True, None


def _up_options(strip, optional):
    first10 = next((i for i, t in enumerate(strip) if t.kind == "10"), None)
    if first10 is None:
        opts = list(range(len(strip)))
        return opts + [None] if optional or not strip else opts
    return list(range(first10 + 1))


def enumerate_fillings(tiling, toric=True):
    """All valid fillings of a tiling.

    Up-arrows are chosen per north-strip (never above its first 10-tile,
    which could not be covered otherwise); the left-arrow of every west-strip
    is then forced.  In the toric case every strip carries an arrow; in the
    open case a strip may be arrow-free when all its tiles are covered.
    """
    north = tiling.north
    west = tiling.west
    options = [_up_options(strip, not toric) for _, strip in north]
    out = []
    for choice in itertools.product(*options):
        held = set()
        covered = set()
        for (x, strip), i in zip(north, choice):
            if i is None:
                continue
            held.add(strip[i])
            covered.update(strip[i:])
        left = []
        ok = True
        for y, strip in west:
            good, j = _west_choice(strip, covered, held)
            if not good or (toric and j is None):
                ok = False
                break
            left.append((y, j))
        if not ok:
            continue
        f = TratFilling(tiling, tuple((x, i) for (x, _), i in zip(north, choice)),
                        tuple(left))
        assert is_valid_filling(f, require_arrows=toric), f
        out.append(f)
    return out


def trat_count(x):
    """Number of TRAT of a class; C(k+l, k) when there are no 1s."""
    x = as_word(x)
    s = classify(x)
    if s.r == 0:
        return comb(s.k + s.l, s.k)
    return len(enumerate_fillings(canonical_tiling(rotate(x, x.index(1)))))


def _arrow_counts(f):
    arrows = f.arrows()
    left = sum(1 for t, a in arrows.items() if a == "left" and t.kind == "20")
    up = sum(1 for t, a in arrows.items() if a == "up" and t.kind == "20")
    return left, up


def trat_weight(f):
    """d^Left e^Up t^(k+l-Left-Up) with Left, Up counted on 20-tiles."""
    s = classify(f.type_word)
    left, up = _arrow_counts(f)
    return RatePolynomial.monomial(d=left, e=up, t=s.k + s.l - left - up)


def class_trat_weight(x):
    total = RatePolynomial()
    for f in enumerate_fillings(canonical_tiling(x)):
        total = total + trat_weight(f)
    return total


# ------------------------------------------------------------ bijection

def filling_from_weights(tiling, weights, toric=True):
    """Fill north-strips in increasing 0-site order.

    Strip x gets weights[x] left-arrows in its lowest free tiles (a tile is
    free while its west-strip has no left-arrow and it is not pointed at),
    then its up-arrow in the next free tile.  Remaining west-strips get
    their forced left-arrow.
    """
    t = tiling
    left = {}
    up = {}
    covered = set()
    for x, strip in sorted(t.north):
        need = weights[x]
        idx = 0
        placed = 0
        while placed < need:
            if idx >= len(strip):
                raise InvalidFilling(f"strip {x} cannot hold {need} left-arrows")
            tile = strip[idx]
            if tile.kind == "20" and tile.a not in left and tile not in covered:
                wstrip = t.west_strip(tile.a)
                j = wstrip.index(tile)
                left[tile.a] = j
                covered.update(wstrip[j + 1:])
                placed += 1
            elif tile.kind == "10":
                raise InvalidFilling(f"strip {x} cannot hold {need} left-arrows")
            idx += 1
        while idx < len(strip):
            tile = strip[idx]
            if tile.kind == "10" or (tile not in covered and tile.a not in left):
                break
            idx += 1
        if idx < len(strip):
            up[x] = idx
        elif toric:
            raise InvalidFilling(f"no free tile for the up-arrow of strip {x}")
        else:
            up[x] = None
    held = set()
    cov_up = set()
    for x, i in up.items():
        if i is not None:
            strip = t.north_strip(x)
            held.add(strip[i])
            cov_up.update(strip[i:])
    out_left = []
    for y, strip in t.west:
        if y in left:
            out_left.append((y, left[y]))
        else:
            good, j = _west_choice(strip, cov_up, held)
            if not good:
                raise InvalidFilling(f"west-strip {y} cannot be completed")
            out_left.append((y, j))
    f = TratFilling(t, tuple((x, up[x]) for x, _ in t.north), tuple(out_left))
    if not is_valid_filling(f, require_arrows=toric):
        raise InvalidFilling("construction produced an invalid filling")
    return f


def trat_from_mlq(m):
    """TRAT on the canonical tiling of the rotated type of m.

    The left-arrow count of each north-strip is the hitting weight of the
    matching 0-ball.
    """
    res = drop(m)
    if 1 not in res.type_word:
        raise NotRotated("MLQs without 1-balls have no tableau")
    s = res.shift
    n = m.n
    x = rotate(res.type_word, s)
    weights = {(z - s) % n: w for z, w in zip(res.zero_ball_sites, res.weights)}
    return filling_from_weights(canonical_tiling(x), weights)


def mlq_from_trat(f):
    """Ball lifts with the left-arrow counts; the MLQ reads the rotated type."""
    return mlq_from_weights(f.type_word, f.weights())


def omega_trat(f, i):
    """TRAT chain move conjugated through the MLQ bijection."""
    return trat_from_mlq(omega_mlq(mlq_from_trat(f), i))


# ------------------------------------------------------------ flips

def _adjacent(strip, s, t):
    i, j = strip.index(s), strip.index(t)
    return abs(i - j) == 1


def hexagons(tiling):
    """All flippable triples (20-tile, 21-tile, 10-tile).

    The three tiles (y,x), (y,b), (b,x) must be consecutive in pairs along
    the north-strip of x, the west-strip of y and the diagonal strip of b,
    with the orientation of a hexagon of rhombi.
    """
    out = []
    north = dict(tiling.north)
    for (b, dstrip) in tiling.diag:
        for i in range(len(dstrip) - 1):
            p, q = dstrip[i], dstrip[i + 1]
            if {p.kind, q.kind} != {"10", "21"}:
                continue
            ten = p if p.kind == "10" else q
            tw1 = q if p.kind == "10" else p
            y, x = tw1.a, ten.b
            twenty = Tile("20", y, x)
            wstrip = tiling.west_strip(y)
            if not (_adjacent(north[x], twenty, ten) and _adjacent(wstrip, twenty, tw1)):
                continue
            # orientation: the 10-tile sits below the 20-tile in the north-strip,
            # the 20-tile right of the 21-tile in the west-strip and the
            # 10-tile before the 21-tile in the diagonal strip, or all three
            # reversed (the flipped hexagon)
            o = (north[x].index(ten) < north[x].index(twenty),
                 wstrip.index(twenty) < wstrip.index(tw1),
                 dstrip.index(ten) < dstrip.index(tw1))
            if o in ((True, True, True), (False, False, False)):
                out.append((twenty, tw1, ten))
    return out


def _swap_in(strip, s, t):
    v = list(strip)
    i, j = v.index(s), v.index(t)
    if abs(i - j) != 1:
        raise NotFlippable(f"{s} and {t} are not adjacent")
    v[i], v[j] = v[j], v[i]
    return tuple(v)


def flip(tiling, hexagon):
    """The other tiling of a hexagon of three mutually adjacent tiles."""
    twenty, tw1, ten = hexagon
    if (twenty.kind, tw1.kind, ten.kind) != ("20", "21", "10"):
        raise NotFlippable("need one 20-, one 21- and one 10-tile")
    y, x, b = twenty.a, twenty.b, ten.a
    if tw1 != Tile("21", y, b) or ten != Tile("10", b, x):
        raise NotFlippable("tiles do not share strips")
    if hexagon not in hexagons(tiling):
        raise NotFlippable("tiles do not form a hexagon")
    north = tuple((z, _swap_in(s, twenty, ten) if z == x else s) for z, s in tiling.north)
    west = tuple((w, _swap_in(s, twenty, tw1) if w == y else s) for w, s in tiling.west)
    diag = tuple((c, _swap_in(s, ten, tw1) if c == b else s) for c, s in tiling.diag)
    return Tiling(tiling.type_word, north, west, diag)


def transport(f, hexagon):
    """Carry a filling across a flip.

    Only the north-strip and west-strip through the hexagon change order.
    An arrow of theirs outside the hexagon keeps its tile; an arrow inside
    the hexagon may be re-seated on any hexagon tile of its strip.  Exactly
    one choice gives a valid filling (checked).
    """
    new = flip(f.tiling, hexagon)
    twenty = hexagon[0]
    y, x = twenty.a, twenty.b
    hexset = set(hexagon)

    def options(old_strip, new_strip, i):
        if i is not None and old_strip[i] not in hexset:
            return [new_strip.index(old_strip[i])]
        return [j for j, t in enumerate(new_strip) if t in hexset]

    up, left = dict(f.up), dict(f.left)
    found = []
    for u in options(f.tiling.north_strip(x), new.north_strip(x), up[x]):
        for v in options(f.tiling.west_strip(y), new.west_strip(y), left[y]):
            g = TratFilling(new,
                            tuple((z, u if z == x else i) for z, i in f.up),
                            tuple((w, v if w == y else i) for w, i in f.left))
            if is_valid_filling(g):
                found.append(g)
    if len(found) != 1:
        raise InvalidFilling(f"flip transport found {len(found)} images")
    return found[0]


# ------------------------------------------------------------ lattice paths

@dataclass(frozen=True)
class NestedPaths:
    p1: str  # one letter per site: S (south), W (west), D (southwest)
    p2: str

    def __str__(self):
        return f"{self.p1}/{self.p2}"


def _intervals(p):
    """Split a path at its D steps into the runs between them."""
    runs = []
    cur = []
    for i, c in enumerate(p):
        if c == "D":
            runs.append(cur)
            cur = []
        else:
            cur.append(c)
    runs.append(cur)
    return runs


def is_compatible(pp):
    """P2 weakly above P1, same diagonal steps, same number of W per run."""
    p1, p2 = pp.p1, pp.p2
    if len(p1) != len(p2) or set(p1 + p2) - set("SWD"):
        return False
    if [i for i, c in enumerate(p1) if c == "D"] != [i for i, c in enumerate(p2) if c == "D"]:
        return False
    for r1, r2 in zip(_intervals(p1), _intervals(p2)):
        if r1.count("W") != r2.count("W"):
            return False
        s1 = [r1[:i].count("S") for i, c in enumerate(r1) if c == "W"]
        s2 = [r2[:i].count("S") for i, c in enumerate(r2) if c == "W"]
        if any(a > b for a, b in zip(s2, s1)):
            return False
    return True


def paths_from_mlq(m):
    """P1 from the bottom row (S vacancy, W 0-ball, D 1-ball) and P2 from the
    top row (W ball, D vacancy over a 1-ball, S other vacancy), after the
    canonical rotation."""
    res = drop(m)
    if 1 not in res.type_word:
        raise NotRotated("MLQs without 1-balls have no path pair")
    mm = m.rotated(res.shift)
    x = rotate(res.type_word, res.shift)
    p1 = "".join({2: "S", 0: "W", 1: "D"}[c] for c in x)
    p2 = "".join("W" if t else ("D" if c == 1 else "S") for t, c in zip(mm.top, x))
    return NestedPaths(p1, p2)


def paths_from_trat(f):
    """P1 from the type; P2 takes a_i south steps then a west step for the
    i-th north-strip of each run (a_i its left-arrow count), then the rest
    of the run's south steps."""
    x = f.type_word
    lc = f.left_counts()
    p1 = "".join({2: "S", 0: "W", 1: "D"}[c] for c in x)
    p2 = []
    n = len(x)
    i = 0
    while i < n:
        if x[i] == 1:
            p2.append("D")
            i += 1
            continue
        j = i
        while j < n and x[j] != 1:
            j += 1
        run = x[i:j]
        seg = []
        for p in range(i, j):
            if x[p] == 0:
                seg.append("S" * lc[p] + "W")
        body = "".join(seg)
        body += "S" * (run.count(2) - body.count("S"))
        p2.append(body)
        i = j
    return NestedPaths(p1, "".join(p2))


def trat_from_paths(pp):
    """Inverse of paths_from_trat on compatible pairs."""
    if not is_compatible(pp):
        raise NotCompatible(str(pp))
    x = tuple({"S": 2, "W": 0, "D": 1}[c] for c in pp.p1)
    if not x or x[0] != 1:
        raise NotRotated("paths must start with a diagonal step")
    zeros = [i for i, c in enumerate(x) if c == 0]
    counts = []
    for r2 in _intervals(pp.p2):
        s = 0
        for c in r2:
            if c == "S":
                s += 1
            elif c == "W":
                counts.append(s)
                s = 0
    weights = dict(zip(zeros, counts))
    return filling_from_weights(canonical_tiling(x), weights)


# ------------------------------------------------------------ serialization

def filling_from_json(obj):
    x = as_word(obj["type"])
    weights = {s["zero_site"]: s["left_arrows"] for s in obj["strips"]}
    f = filling_from_weights(canonical_tiling(x), weights)
    if dict(f.up) != {s["zero_site"]: s["up_arrow_index"] for s in obj["strips"]}:
        raise InvalidFilling("up-arrow positions do not match the left-arrow counts")
    return f


def dumps(f):
    return json.dumps(f.to_json(), sort_keys=True)


def ascii_dump(f):
    """Debug listing: one line per north-strip, bottom tile first."""
    arrows = f.arrows()
    lines = [f"type {word_str(f.type_word)}"]
    mark = {"up": "^", "left": "<", None: "."}
    for x, strip in f.tiling.north:
        cells = " ".join(f"{t.kind}{mark[arrows.get(t)]}" for t in strip)
        lines.append(f"x={x}: {cells}")
    return "\n".join(lines)
