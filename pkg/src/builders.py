"""
Concrete algebras: gl_n and sl_n over F_q with the trace form, optionally
Z/m-graded by a weight vector (E_jk sits in degree a_j - a_k mod m), together
with the group acting on them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from . import console
from .errors import UsageError
from .ffield import FiniteField, field, is_prime
from .gact import DEFAULT_GROUP_CAP, FiniteGroupAction
from .glie import GradedLieAlgebra, MatrixRealisation
from .linalg import coordinates


@dataclass(frozen=True)
class BuilderSpec:
    family: str
    n: int
    p: int
    k: int = 1
    m: int = 1
    weights: Tuple[int, ...] = ()
    label: str = ""

    def resolved_weights(self) -> Tuple[int, ...]:
        if not self.weights:
            return (0,) * self.n
        return tuple(int(a) % self.m for a in self.weights)

    @property
    def q(self) -> int:
        return self.p**self.k

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "p": self.p,
            "k": self.k,
            "m": self.m,
            "weights": list(self.resolved_weights()),
        }


BUILTINS: Dict[str, Tuple[str, int, int, Tuple[int, ...]]] = {
    "sl2": ("sl", 2, 1, ()),
    "gl2": ("gl", 2, 1, ()),
    "gl3": ("gl", 3, 1, ()),
    "gl2-z2": ("gl", 2, 2, (0, 1)),
    "gl3-z3": ("gl", 3, 3, (0, 1, 2)),
}


def split_q(q: int) -> Tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                break
            k, rest = 0, q
            while rest % p == 0:
                rest //= p
                k += 1
            if rest == 1:
                return p, k
            break
    raise UsageError(f"q={q} is not a prime power")


def builtin_spec(name: str, q: int) -> BuilderSpec:
    if name not in BUILTINS:
        raise UsageError(f"unknown builtin {name!r}; choose from {', '.join(sorted(BUILTINS))}")
    family, n, m, weights = BUILTINS[name]
    p, k = split_q(q)
    return BuilderSpec(family, n, p, k, m, weights, f"{name}(F_{q})")


def _unit(n: int, j: int, k: int) -> np.ndarray:
    E = np.zeros((n, n), dtype=np.int64)
    E[j, k] = 1
    return E


def _basis(F: FiniteField, spec: BuilderSpec) -> Dict[int, List[np.ndarray]]:
    n, m = spec.n, spec.m
    a = spec.resolved_weights()
    pieces: Dict[int, List[np.ndarray]] = {i: [] for i in range(m)}

    def deg(j: int, k: int) -> int:
        return (a[j] - a[k]) % m

    if spec.family == "gl":
        for j in range(n):
            for k in range(n):
                pieces[deg(j, k)].append(_unit(n, j, k))
        return pieces
    for j in range(n):
        for k in range(j + 1, n):
            pieces[deg(j, k)].append(_unit(n, j, k))
    for j in range(n - 1):
        pieces[0].append(F.sub(_unit(n, j, j), _unit(n, j + 1, j + 1)))
    for j in range(n):
        for k in range(j):
            pieces[deg(j, k)].append(_unit(n, j, k))
    return pieces


def _generators(F: FiniteField, spec: BuilderSpec) -> List[np.ndarray]:
    n = spec.n
    a = spec.resolved_weights()
    omega = F.primitive_element()
    omega_inv = int(F.inv(omega))
    gens: List[np.ndarray] = []
    prime_basis = [int(F.from_coeffs([0] * i + [1])) for i in range(F.k)]
    for j in range(n):
        for k in range(n):
            if j == k or a[j] != a[k]:
                continue
            for t in prime_basis:
                g = np.eye(n, dtype=np.int64)
                g[j, k] = t
                gens.append(g)
    if spec.family == "gl":
        for j in range(n):
            g = np.eye(n, dtype=np.int64)
            g[j, j] = omega
            gens.append(g)
    elif spec.m > 1:
        for j in range(n - 1):
            g = np.eye(n, dtype=np.int64)
            g[j, j] = omega
            g[j + 1, j + 1] = omega_inv
            gens.append(g)
    if not gens:
        gens.append(np.eye(n, dtype=np.int64))
    return gens


def build_algebra(spec: BuilderSpec) -> GradedLieAlgebra:
    if spec.family not in ("gl", "sl"):
        raise UsageError(f"unknown family {spec.family!r}; only gl and sl are built")
    if spec.n < 1 or spec.m < 1:
        raise UsageError("n and m must be positive")
    if spec.weights and len(spec.weights) != spec.n:
        raise UsageError(f"weight vector needs {spec.n} entries, got {len(spec.weights)}")
    if spec.family == "sl" and spec.n % spec.p == 0:
        raise UsageError(f"trace form on sl_{spec.n} is degenerate when p={spec.p} divides n")
    F = field(spec.p, spec.k)
    pieces = _basis(F, spec)
    m = spec.m
    dims = {i: len(pieces[i]) for i in range(m)}
    mats = {
        i: (np.stack(pieces[i]) if pieces[i] else np.zeros((0, spec.n, spec.n), dtype=np.int64))
        for i in range(m)
    }
    flat = {i: mats[i].reshape(dims[i], -1) for i in range(m)}

    bracket: Dict[Tuple[int, int], np.ndarray] = {}
    for i in range(m):
        for j in range(m):
            l = (i + j) % m
            tab = np.zeros((dims[i], dims[j], dims[l]), dtype=np.int64)
            for x, X in enumerate(mats[i]):
                for y, Y in enumerate(mats[j]):
                    comm = F.sub(F.matmul(X, Y), F.matmul(Y, X))
                    c = coordinates(F, flat[l], comm.reshape(-1))
                    if c is None:
                        raise UsageError(f"commutator leaves g_{l}; the weight vector is inconsistent")
                    tab[x, y] = c
            bracket[(i, j)] = tab

    form: Dict[int, np.ndarray] = {}
    for i in range(m):
        o = (-i) % m
        G = np.zeros((dims[i], dims[o]), dtype=np.int64)
        for x, X in enumerate(mats[i]):
            for y, Y in enumerate(mats[o]):
                G[x, y] = int(F.sum(np.diagonal(F.matmul(X, Y))))
        form[i] = G

    label = spec.label or f"{spec.family}{spec.n}(F_{spec.q})" + (f"/Z{m}" if m > 1 else "")
    return GradedLieAlgebra(F, m, dims, bracket, form, MatrixRealisation(spec.n, mats, spec.family), label)


def build(spec: BuilderSpec, cap: int = DEFAULT_GROUP_CAP, validate: bool = True) -> Tuple[GradedLieAlgebra, FiniteGroupAction]:
    algebra = build_algebra(spec)
    if validate:
        algebra.validate()
    group = FiniteGroupAction(algebra, _generators(algebra.field, spec), "matrix", cap, algebra.label)
    console.info("builders", f"built {algebra.label}: dims {list(algebra.dims.values())}, group order {group.order}")
    return algebra, group


def build_builtin(name: str, q: int, cap: int = DEFAULT_GROUP_CAP) -> Tuple[GradedLieAlgebra, FiniteGroupAction]:
    return build(builtin_spec(name, q), cap)
