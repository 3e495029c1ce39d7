"""Exact sparse linear algebra over the coefficient fields of :mod:`.poly`.

Rows are ``{column: value}`` dicts; columns are any sortable keys.
"""

from __future__ import annotations


class Echelon:
    """Incrementally maintained row echelon form (pivot = smallest column)."""

    def __init__(self, fld):
        self.fld = fld
        self.pivots: dict = {}

    def reduce(self, row: dict) -> dict:
        fld = self.fld
        row = {c: v for c, v in row.items() if v}
        done = {}
        while row:
            c = min(row)
            v = row[c]
            piv = self.pivots.get(c)
            if piv is None:
                done[c] = row.pop(c)
                continue
            for cc, pv in piv.items():
                x = fld.sub(row.get(cc, fld.zero), fld.mul(v, pv))
                if x:
                    row[cc] = x
                else:
                    row.pop(cc, None)
        return done

    def add(self, row: dict) -> bool:
        """Insert ``row``; True when it increased the rank."""
        fld = self.fld
        row = {c: v for c, v in row.items() if v}
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                inv = fld.inv(row[c])
                self.pivots[c] = {cc: fld.mul(v, inv) for cc, v in row.items()}
                return True
            v = row[c]
            for cc, pv in piv.items():
                x = fld.sub(row.get(cc, fld.zero), fld.mul(v, pv))
                if x:
                    row[cc] = x
                else:
                    row.pop(cc, None)
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)


def rank(rows, fld) -> int:
    ech = Echelon(fld)
    for r in rows:
        ech.add(r)
    return ech.rank


def nullspace(columns: list[dict], fld) -> list[dict]:
    """Kernel of the linear map sending basis vector ``j`` to ``columns[j]``.

    Returns kernel vectors as ``{j: coefficient}`` dicts.
    """
    # Gauss-Jordan on the augmented system [columns | identity], column by column.
    ech: dict = {}
    kernel = []
    for j, col in enumerate(columns):
        img = {("r", k): v for k, v in col.items() if v}
        img[("s", j)] = fld.one
        # reduce against stored vectors by their pivot (an image coordinate)
        while True:
            piv = None
            for key in sorted(k for k in img if k[0] == "r"):
                if key in ech:
                    piv = key
                    break
            if piv is None:
                break
            v = img[piv]
            for cc, pv in ech[piv].items():
                x = fld.sub(img.get(cc, fld.zero), fld.mul(v, pv))
                if x:
                    img[cc] = x
                else:
                    img.pop(cc, None)
        image_part = sorted(k for k in img if k[0] == "r")
        if not image_part:
            kernel.append({k[1]: v for k, v in img.items()})
            continue
        p = image_part[0]
        inv = fld.inv(img[p])
        ech[p] = {cc: fld.mul(v, inv) for cc, v in img.items()}
    return kernel


def determinant(matrix: list[list], fld):
    a = [list(map(fld, row)) for row in matrix]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant needs a square matrix")
    det = fld.one
    for i in range(n):
        p = next((r for r in range(i, n) if a[r][i]), None)
        if p is None:
            return fld.zero
        if p != i:
            a[i], a[p] = a[p], a[i]
            det = fld.neg(det)
        det = fld.mul(det, a[i][i])
        inv = fld.inv(a[i][i])
        for r in range(i + 1, n):
            if a[r][i]:
                f = fld.mul(a[r][i], inv)
                a[r] = [fld.sub(x, fld.mul(f, y)) for x, y in zip(a[r], a[i])]
    return det
