"""Unlabelled trees up to isomorphism, with canonical labellings.

Trees are grown leaf by leaf and deduplicated by the AHU parenthesis code
rooted at the centre (the smaller code when there are two centres).  The
canonical labelling numbers vertices in preorder of that rooted code.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class Tree:
    size: int
    edges: tuple[tuple[int, int], ...]
    code: str

    def adjacency(self) -> list[list[bool]]:
        adj = [[False] * self.size for _ in range(self.size)]
        for a, b in self.edges:
            adj[a][b] = adj[b][a] = True
        return adj


def _centres(n: int, adj: list[list[int]]) -> list[int]:
    if n <= 2:
        return list(range(n))
    deg = [len(a) for a in adj]
    leaves = [v for v in range(n) if deg[v] <= 1]
    remaining = n
    while remaining > 2:
        remaining -= len(leaves)
        nxt = []
        for v in leaves:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
            deg[v] = 0
        leaves = nxt
    return leaves


def _rooted_code(adj: list[list[int]], root: int) -> str:
    def enc(v: int, parent: int) -> str:
        return "(" + "".join(sorted(enc(w, v) for w in adj[v] if w != parent)) + ")"

    return enc(root, -1)


def canonical_code(n: int, edges) -> str:
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    return min(_rooted_code(adj, c) for c in _centres(n, adj))


def _from_code(code: str) -> Tree:
    edges = []
    stack: list[int] = []
    count = 0
    for ch in code:
        if ch == "(":
            if stack:
                edges.append((stack[-1], count))
            stack.append(count)
            count += 1
        else:
            stack.pop()
    return Tree(count, tuple(edges), code)


@lru_cache(maxsize=None)
def _trees_of_size(n: int) -> tuple[Tree, ...]:
    if n == 1:
        return (_from_code("()"),)
    codes = set()
    for t in _trees_of_size(n - 1):
        for v in range(t.size):
            codes.add(canonical_code(n, t.edges + ((v, n - 1),)))
    return tuple(_from_code(c) for c in sorted(codes))


def enumerate_trees(n: int) -> list[Tree]:
    """All trees with 1..n vertices up to isomorphism, by size then code."""
    if n < 1:
        raise ValueError("n must be positive")
    return [t for m in range(1, n + 1) for t in _trees_of_size(m)]
