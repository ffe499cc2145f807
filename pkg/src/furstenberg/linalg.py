"""Exact dense linear algebra over a FieldSpec (vectors are lists of codes)."""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .field import FieldSpec


def axpy(F: FieldSpec, target: List[int], c: int, row: Sequence[int], start: int = 0) -> None:
    """In place: ``target -= c * row`` from column ``start`` on."""
    if F.is_prime_field:
        p = F.p
        for k in range(start, len(row)):
            b = row[k]
            if b:
                target[k] = (target[k] - c * b) % p
        return
    mul, sub = F.mul, F.sub
    for k in range(start, len(row)):
        b = row[k]
        if b:
            target[k] = sub(target[k], mul(c, b))


def scale_row(F: FieldSpec, row: List[int], c: int) -> List[int]:
    mul = F.mul
    return [mul(c, b) if b else 0 for b in row]


def rref(F: FieldSpec, rows: Sequence[Sequence[int]]) -> Tuple[List[List[int]], List[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        if mat[r][col] != 1:
            mat[r] = scale_row(F, mat[r], F.inv(mat[r][col]))
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                axpy(F, mat[i], mat[i][col], mat[r], col)
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(F: FieldSpec, rows: Sequence[Sequence[int]]) -> int:
    mat = [list(r) for r in rows if any(r)]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = F.inv(mat[r][col])
        for i in range(r + 1, len(mat)):
            if mat[i][col]:
                axpy(F, mat[i], F.mul(mat[i][col], inv), mat[r], col)
        r += 1
        if r == len(mat):
            break
    return r


def determinant(F: FieldSpec, rows: Sequence[Sequence[int]]) -> int:
    mat = [list(r) for r in rows]
    n = len(mat)
    det = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if mat[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = F.neg(det)
        det = F.mul(det, mat[col][col])
        inv = F.inv(mat[col][col])
        for i in range(col + 1, n):
            if mat[i][col]:
                axpy(F, mat[i], F.mul(mat[i][col], inv), mat[col], col)
    return det


class IncrementalEchelon:
    """Echelon basis that remembers each row as a combination of inserted vectors.

    ``reduce`` returns the residual of a vector together with coefficients
    ``c_k`` such that ``vector = residual + sum c_k * inserted_k``.
    """

    def __init__(self, F: FieldSpec):
        self.F = F
        self.rows: List[Tuple[int, List[int], Dict[int, int]]] = []
        self.count = 0

    def reduce(self, vec: Sequence[int]) -> Tuple[List[int], Dict[int, int]]:
        F = self.F
        v = list(vec)
        combo: Dict[int, int] = {}
        for piv, row, rc in self.rows:
            c = v[piv]
            if c:
                axpy(F, v, c, row)
                for k, a in rc.items():
                    combo[k] = F.add(combo.get(k, 0), F.mul(c, a))
        return v, combo

    def insert(self, vec: Sequence[int]) -> Optional[Dict[int, int]]:
        """Add ``vec`` as inserted vector number ``self.count``.

        Returns ``None`` when it was independent, otherwise the dependency
        ``vec = sum c_k * inserted_k`` (and the vector is not kept).
        """
        F = self.F
        v, combo = self.reduce(vec)
        piv = next((i for i, a in enumerate(v) if a), None)
        if piv is None:
            return {k: a for k, a in combo.items() if a}
        idx = self.count
        self.count += 1
        # row = vec - sum combo, normalised so the pivot is 1
        rc = {k: F.neg(a) for k, a in combo.items() if a}
        rc[idx] = 1
        inv = F.inv(v[piv])
        if v[piv] != 1:
            v = scale_row(F, v, inv)
            rc = {k: F.mul(inv, a) for k, a in rc.items()}
        self.rows.append((piv, v, rc))
        return None
