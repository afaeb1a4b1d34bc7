"""Marked boxes and the i, t, b operations.

A marked box is six homogeneous vertices ``[v1, top, v3, v4, bottom, v6]``:
``v1, top, v3`` lie on the top edge and ``v4, bottom, v6`` on the bottom
edge, with ``v1, v3, v4, v6`` going around the quadrilateral.
"""

import json
from dataclasses import dataclass

from ..algebra.bigfloat import context, to_bigfloat
from ..algebra.rat import Rat, rat, rat_str
from .matrix import Mat3, SingularMatrixError, cross, dot, is_zero_vec, proportional
from .projective import DegenerateError, canonical


class MarkedBox:
    __slots__ = ("vertices",)

    def __init__(self, vertices, check=True):
        vs = tuple(tuple(rat(x) if isinstance(x, int) else x for x in v) for v in vertices)
        if len(vs) != 6 or any(len(v) != 3 for v in vs):
            raise ValueError("a marked box has six homogeneous vertices")
        if any(is_zero_vec(v) for v in vs):
            raise DegenerateError("zero vertex")
        if check:
            if dot(cross(vs[0], vs[2]), vs[1]) or dot(cross(vs[3], vs[5]), vs[4]):
                raise DegenerateError("top or bottom vertices are not collinear")
        object.__setattr__(self, "vertices", vs)

    def __setattr__(self, name, value):
        raise AttributeError("MarkedBox is immutable")

    def __getitem__(self, i):
        return self.vertices[i]

    def __iter__(self):
        return iter(self.vertices)

    def __eq__(self, other):
        """Equality as marked boxes: same top and bottom points, same edge ends.

        The order of the two ends of an edge is not part of the box, so
        ``[v1, top, v3, ...]`` and ``[v3, top, v1, ...]`` are equal.
        """
        if not isinstance(other, MarkedBox):
            return NotImplemented
        a, b = self.vertices, other.vertices
        if not (proportional(a[1], b[1]) and proportional(a[4], b[4])):
            return False

        def same_ends(i, j):
            return ((proportional(a[i], b[i]) and proportional(a[j], b[j]))
                    or (proportional(a[i], b[j]) and proportional(a[j], b[i])))

        return same_ends(0, 2) and same_ends(3, 5)

    def same_labels(self, other):
        """Projective equality vertex by vertex, including edge-end order."""
        return all(proportional(u, v) for u, v in zip(self.vertices, other.vertices))

    def __hash__(self):
        v = [canonical(x) for x in self.vertices]
        return hash((v[1], v[4], frozenset((v[0], v[2])), frozenset((v[3], v[5]))))

    def apply(self, M):
        return MarkedBox([M @ v for v in self.vertices], check=False)

    def canonical(self):
        return MarkedBox([canonical(v) for v in self.vertices], check=False)

    def corners(self):
        v = self.vertices
        return (v[0], v[2], v[3], v[5])

    def __repr__(self):
        return "MarkedBox(" + ", ".join(str(v) for v in self.vertices) + ")"


def Y0(c, d):
    """The starting box of the morphing construction, parameters (c, d)."""
    c, d = _s(c), _s(d)
    return MarkedBox([(-1, 1, 0), (c, 1, 0), (1, 1, 0), (1, 0, 1), (d, 0, 1), (-1, 0, 1)])


def _s(x):
    return rat(x) if isinstance(x, (int, str, float)) else x


def _cr(Y, a, b, c, d):
    """``(Y_a x Y_b) x (Y_c x Y_d)`` with 1-based indices."""
    l1 = cross(Y[a - 1], Y[b - 1])
    l2 = cross(Y[c - 1], Y[d - 1])
    v = cross(l1, l2)
    if is_zero_vec(l1) or is_zero_vec(l2) or is_zero_vec(v):
        raise DegenerateError(f"degenerate cross product CR({a},{b},{c},{d})")
    return v


def box_i(Y):
    v = Y.vertices
    return MarkedBox([v[5], v[4], v[3], v[0], v[1], v[2]], check=False)


def box_t(Y):
    v = Y.vertices
    return MarkedBox([v[0], v[1], v[2],
                      _cr(Y, 2, 4, 3, 5), _cr(Y, 1, 4, 3, 6), _cr(Y, 1, 5, 2, 6)], check=False)


def box_b(Y):
    v = Y.vertices
    return MarkedBox([_cr(Y, 2, 4, 3, 5), _cr(Y, 1, 4, 3, 6), _cr(Y, 1, 5, 2, 6),
                      v[5], v[4], v[3]], check=False)


BOX_OPS = {"i": box_i, "t": box_t, "b": box_b}


def apply_word(Y, word, ops=BOX_OPS):
    """Apply letters right to left, so ``"ti"`` means t(i(Y))."""
    for ch in reversed(word):
        Y = ops[ch](Y)
    return Y


def _det3(c1, c2, c3):
    return Mat3.from_columns(c1, c2, c3).det()


def get_matrix(Y):
    """Matrix with columns s1*v1, s2*v3, s3*v4 sending (1,1,1) to v6."""
    v1, v3, v4, v6 = Y.corners()
    D = _det3(v1, v3, v4)
    if not D:
        raise SingularMatrixError("box corners v1, v3, v4 are collinear")
    s1 = _det3(v6, v3, v4) / D
    s2 = _det3(v1, v6, v4) / D
    s3 = _det3(v1, v3, v6) / D
    if not s1 or not s2 or not s3:
        raise SingularMatrixError("box corners are not in general position")
    return Mat3.from_columns([s1 * x for x in v1], [s2 * x for x in v3], [s3 * x for x in v4])


# -- the box invariant ---------------------------------------------------------

def _square_frame():
    # (0,1), (1,1), (1,0) and (0,0) in homogeneous form, as a fake box
    one, zero = rat(1), rat(0)
    return MarkedBox([(zero, one, one), (zero, one, one), (one, one, one),
                      (one, zero, one), (one, zero, one), (zero, zero, one)], check=False)


def square_chart(Y):
    """Projective map sending corners v1, v3, v4, v6 to (0,1), (1,1), (1,0), (0,0)."""
    return get_matrix(_square_frame()) @ get_matrix(Y).inv()


@dataclass(frozen=True)
class BoxClass:
    c: object
    d: object

    @classmethod
    def of(cls, c, d):
        a, b = (c, d), (1 - c, 1 - d)
        return cls(*min(a, b))

    @property
    def is_axial(self):
        half = rat(1, 2)
        return self.c == half or self.d == half

    def __contains__(self, cd):
        c, d = cd
        return (c, d) == (self.c, self.d) or (1 - c, 1 - d) == (self.c, self.d)


def box_coordinates(Y):
    """(c, d) read in the square chart: top = (c, 1), bottom = (1 - d, 0)."""
    H = square_chart(Y)
    tx, ty, tz = H @ Y[1]
    bx, by, bz = H @ Y[4]
    if not tz or not bz:
        raise DegenerateError("marked point is sent to infinity")
    return tx / tz, 1 - bx / bz


def is_convex(Y):
    """Marked points lie strictly inside their edges (square chart test)."""
    try:
        c, d = box_coordinates(Y)
    except (DegenerateError, SingularMatrixError, ZeroDivisionError):
        return False
    return 0 < c < 1 and 0 < d < 1


def box_class(Y):
    c, d = box_coordinates(Y)
    if not (0 < c < 1 and 0 < d < 1):
        raise ValueError("box is not convex")
    return BoxClass.of(c, d)


# -- affine patch ----------------------------------------------------------------

def affine_points(Y):
    out = []
    for x, y, z in Y.vertices:
        if not z:
            raise DegenerateError("vertex at infinity")
        out.append((x / z, y / z))
    return out


def is_affine_convex(Y):
    """Convex quadrilateral in the affine patch with marked points strictly inside edges."""
    try:
        p = affine_points(Y)
    except DegenerateError:
        return False
    quad = [p[0], p[2], p[3], p[5]]
    signs = set()
    for k in range(4):
        a, b, c = quad[k], quad[(k + 1) % 4], quad[(k + 2) % 4]
        z = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        if not z:
            return False
        signs.add(z > 0)
    if len(signs) != 1:
        return False

    def between(m, a, b):
        t = [(m[i] - a[i]) / (b[i] - a[i]) for i in range(2) if b[i] != a[i]]
        return bool(t) and 0 < t[0] < 1

    return between(p[1], p[0], p[2]) and between(p[4], p[3], p[5])


def affine_diameter(Y, prec=None):
    pts = affine_points(Y)
    best = 0
    for i in range(6):
        for j in range(i + 1, 6):
            dx = pts[i][0] - pts[j][0]
            dy = pts[i][1] - pts[j][1]
            best = max(best, dx * dx + dy * dy)
    ctx = getattr(best, "context", None) or context(prec or 256)
    if isinstance(best, (int, Rat)):
        best = to_bigfloat(rat(best), ctx)
    return ctx.sqrt(best)


def unit_square_box(c=rat(1, 2), d=rat(1, 2)):
    """Box on the unit square: top edge y = 1, bottom edge y = 0."""
    one, zero = rat(1), rat(0)
    return MarkedBox([(zero, one, one), (c, one, one), (one, one, one),
                      (one, zero, one), (1 - d, zero, one), (zero, zero, one)])


# -- serialization ---------------------------------------------------------------

def _ser(x):
    if isinstance(x, (int, Rat)):
        return rat_str(x)
    return str(x)


def box_to_json(Y, word=""):
    vs = [canonical(v) for v in Y.vertices]
    return {"word": word, "vertices": [[_ser(x) for x in v] for v in vs]}


def box_from_json(obj):
    return MarkedBox([[rat(x) for x in v] for v in obj["vertices"]]), obj.get("word", "")


def boxes_to_svg(boxes, size=600, margin=20):
    """SVG drawing of affine-patch quadrilaterals; ``boxes`` is a list of (word, box)."""
    drawn = []
    for word, Y in boxes:
        try:
            pts = [(float(x), float(y)) for x, y in affine_points(Y)]
        except DegenerateError:
            continue
        drawn.append((word, pts))
    if not drawn:
        return f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}"></svg>\n'
    xs = [p[0] for _, pts in drawn for p in pts]
    ys = [p[1] for _, pts in drawn for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    k = (size - 2 * margin) / span

    def tr(p):
        return margin + (p[0] - x0) * k, size - margin - (p[1] - y0) * k

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           '<rect width="100%" height="100%" fill="white"/>']
    for word, pts in drawn:
        quad = [tr(pts[i]) for i in (0, 2, 3, 5)]
        path = " ".join(f"{x:.3f},{y:.3f}" for x, y in quad)
        out.append(f'<polygon points="{path}" fill="none" stroke="black" stroke-width="0.6">'
                   f'<title>{word or "root"}</title></polygon>')
        for idx, color in ((1, "red"), (4, "blue")):
            x, y = tr(pts[idx])
            out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="1.8" fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def dumps_boxes(boxes):
    return json.dumps([box_to_json(Y, w) for w, Y in boxes], indent=1)
