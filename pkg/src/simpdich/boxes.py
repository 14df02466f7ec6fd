"""Maximal boxes inside a finite set of tuples."""

from __future__ import annotations


def maximal_boxes(points) -> list:
    """All inclusion-maximal products X1 x ... x Xm contained in ``points``.

    ``points`` is a collection of equal-length tuples.  Boxes are returned as
    tuples of frozensets.
    """
    points = set(points)
    if not points:
        return []
    m = len(next(iter(points)))
    return _boxes(points, m)


def _keep_maximal(boxes):
    out = []
    for b in sorted(set(boxes), key=lambda b: -_volume(b)):
        if not any(_inside(b, o) for o in out):
            out.append(b)
    return out


def _volume(b):
    v = 1
    for x in b:
        v *= len(x)
    return v


def _inside(a, b):
    return all(x <= y for x, y in zip(a, b))


def _boxes(points, m):
    if m == 0:
        return [()]
    fibers = {}
    for p in points:
        fibers.setdefault(p[0], set()).add(p[1:])
    values = sorted(fibers)
    out = []
    # enumerate value sets X whose common fiber is nonempty, growing X
    # only while the intersection stays nonempty
    def grow(start, chosen, common):
        if chosen:
            for rest in _boxes(common, m - 1):
                out.append((frozenset(chosen),) + rest)
        for i in range(start, len(values)):
            v = values[i]
            nc = fibers[v] if not chosen else common & fibers[v]
            if nc:
                grow(i + 1, chosen + [v], nc)

    grow(0, [], None)
    return _keep_maximal(out)


def box_points(box):
    out = [()]
    for xs in box:
        out = [p + (x,) for p in out for x in sorted(xs)]
    return out

