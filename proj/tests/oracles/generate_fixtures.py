#!/usr/bin/env python3
"""Brute-force reference values for the regression fixtures.

Every value here comes from a direct, deliberately naive computation
(double loops, exhaustive enumeration) that shares no code with the C++
library. Inputs are drawn from fixed numpy seeds, so the output is stable.

    generate_fixtures.py --out tests/fixtures      # rewrite the fixtures
    generate_fixtures.py --check tests/fixtures    # regenerate and compare
"""

import argparse
import itertools
import json
import math
import os
import sys
import tempfile

import networkx as nx
import numpy as np
from scipy.optimize import minimize_scalar

TOL = 1e-9


def rng(seed):
    return np.random.default_rng(seed)


# ---------------------------------------------------------------- helpers


def pairwise_max(points):
    best = 0.0
    for a in range(len(points)):
        for b in range(a + 1, len(points)):
            best = max(best, float(np.linalg.norm(points[a] - points[b])))
    return best


def random_connected_graph(g, n, extra_p):
    """Random spanning tree plus extra edges with probability extra_p."""
    edges = set()
    for v in range(1, n):
        u = int(g.integers(0, v))
        edges.add((u, v))
    for u in range(n):
        for v in range(u + 1, n):
            if g.random() < extra_p:
                edges.add((u, v))
    return sorted(edges)


def minimax_bruteforce(n, edges, values, dist):
    """Smallest diameter of the node values along any simple path."""
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from(edges)
    out = [[math.inf] * n for _ in range(n)]
    for a in range(n):
        out[a][a] = 0.0
        for b in range(a + 1, n):
            best = math.inf
            for path in nx.all_simple_paths(G, a, b):
                d = 0.0
                for i in range(len(path)):
                    for j in range(i + 1, len(path)):
                        d = max(d, dist(values[path[i]], values[path[j]]))
                best = min(best, d)
            out[a][b] = out[b][a] = best
    return out


def interval_list(lo, hi, r, g):
    stride = r * (1 - g)
    start = lo - 0.5 * r * g
    slack = 1e-12 * max(1.0, abs(lo), abs(hi))
    out = []
    i = 0
    while True:
        a = start + i * stride
        out.append((a, a + r))
        if a + r >= hi - slack:
            return out
        i += 1


def in_interval(iv, x):
    return iv[0] - TOL <= x <= iv[1] + TOL


def hypercube_elements(values, r, g):
    """Boxes of the product grid that contain at least one value, sorted by
    their per-axis interval indices."""
    values = np.asarray(values, dtype=float)
    p = values.shape[1]
    axes = [interval_list(values[:, k].min(), values[:, k].max(), r, g) for k in range(p)]
    cells = set()
    for x in values:
        for cell in itertools.product(*[range(len(a)) for a in axes]):
            if all(in_interval(axes[k][cell[k]], x[k]) for k in range(p)):
                cells.add(cell)
    cells = sorted(cells)
    boxes = [[axes[k][c[k]] for k in range(p)] for c in cells]
    return axes, cells, boxes


def box_contains(box, x):
    return all(in_interval(box[k], x[k]) for k in range(len(box)))


def components_in(n, edges, members):
    G = nx.Graph()
    G.add_nodes_from(members)
    ms = set(members)
    G.add_edges_from((u, v) for u, v in edges if u in ms and v in ms)
    return [sorted(c) for c in nx.connected_components(G)]


# ------------------------------------------------------------- core types


def fx_core_types():
    g = rng(101)
    pts = g.normal(size=(10, 3))
    diam = pairwise_max(pts)

    values = [0.0, 2.0, 1.0, 3.5, -1.0]
    edges = [(i, i + 1) for i in range(4)]
    mat = minimax_bruteforce(5, edges, values, lambda a, b: abs(a - b))
    return {
        "set_diameter": {"points": pts.tolist(), "diameter": diam},
        "path_pseudometric": {"values": values, "edges": edges, "matrix": mat},
    }


# -------------------------------------------------------------- codomains


def ged_bruteforce(n1, e1, lab1, n2, e2, lab2):
    E1 = set(e1)
    E2 = set(e2)
    best = math.inf
    targets = list(range(n2))
    # Every partial injection V1 -> V2; unmapped sources are deleted.
    for k in range(0, min(n1, n2) + 1):
        for src in itertools.combinations(range(n1), k):
            for dst in itertools.permutations(targets, k):
                phi = dict(zip(src, dst))
                cost = (n1 - k) + (n2 - k)
                cost += sum(1 for u in src if lab1[u] != lab2[phi[u]])
                inv = {v: u for u, v in phi.items()}
                for u, w in E1:
                    if u in phi and w in phi and tuple(sorted((phi[u], phi[w]))) in E2:
                        continue
                    cost += 1
                for a, b in E2:
                    if a in inv and b in inv and tuple(sorted((inv[a], inv[b]))) in E1:
                        continue
                    cost += 1
                best = min(best, cost)
    return best


def ged_networkx(n1, e1, lab1, n2, e2, lab2):
    G = nx.Graph()
    H = nx.Graph()
    for u in range(n1):
        G.add_node(u, label=lab1[u])
    for v in range(n2):
        H.add_node(v, label=lab2[v])
    G.add_edges_from(e1)
    H.add_edges_from(e2)
    return nx.graph_edit_distance(
        G, H, node_subst_cost=lambda a, b: 0 if a["label"] == b["label"] else 1
    )


def er_edges(g, n, p):
    return [(u, v) for u in range(n) for v in range(u + 1, n) if g.random() < p]


def fx_codomains():
    g = rng(202)
    pairs = []
    for i in range(30):
        n1 = int(g.integers(1, 7))
        n2 = int(g.integers(1, 7))
        p1, p2 = g.random(), g.random()
        e1 = er_edges(g, n1, p1)
        e2 = er_edges(g, n2, p2)
        labelled = i % 3 == 2
        lab1 = [int(g.integers(0, 2)) if labelled else 0 for _ in range(n1)]
        lab2 = [int(g.integers(0, 2)) if labelled else 0 for _ in range(n2)]
        d = ged_bruteforce(n1, e1, lab1, n2, e2, lab2)
        assert d == ged_networkx(n1, e1, lab1, n2, e2, lab2), "networkx disagrees"
        pairs.append(
            {
                "g": {"n": n1, "edges": e1, "labels": lab1},
                "h": {"n": n2, "edges": e2, "labels": lab2},
                "distance": d,
            }
        )
    return {"ged_pairs": pairs}


# ------------------------------------------------------------------ graph


def fx_graph():
    g = rng(303)
    theta = g.uniform(0, 2 * math.pi, size=100)
    pts = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    edges = []
    for i in range(100):
        for j in range(i + 1, 100):
            if np.linalg.norm(pts[i] - pts[j]) <= 0.2:
                edges.append((i, j))

    a = g.uniform(-1, 1, size=(20, 2))
    b = g.uniform(-1, 1, size=(30, 2))

    def directed(x, y):
        return max(min(float(np.linalg.norm(p - q)) for q in y) for p in x)

    haus = max(directed(a, b), directed(b, a))
    return {
        "neighborhood": {"points": pts.tolist(), "delta": 0.2, "edges": edges},
        "hausdorff": {"a": a.tolist(), "b": b.tolist(), "value": haus},
    }


# ------------------------------------------------------------------ cover


def kmeans_exhaustive(points, k):
    n = len(points)
    best = math.inf
    # Fix the first point's label to cut the symmetric copies.
    for labels in itertools.product(range(k), repeat=n - 1):
        lab = (0,) + labels
        if len(set(lab)) < k:
            continue
        cost = 0.0
        for c in range(k):
            members = points[[i for i in range(n) if lab[i] == c]]
            cost += float(((members - members.mean(axis=0)) ** 2).sum())
        best = min(best, cost)
    return best


def halfspace_members(z, germs, eps):
    out = []
    for j, gj in enumerate(germs):
        ok = True
        for k, gk in enumerate(germs):
            if k == j:
                continue
            gap = float(np.linalg.norm(gk - gj))
            if gap == 0:
                continue
            score = (float(np.dot(z, gk - gj)) - 0.5 * (float(gk @ gk) - float(gj @ gj))) / gap
            if score > eps + TOL:
                ok = False
        if ok:
            out.append(j)
    return out


def germ_distance_members(z, germs, eps):
    d = [float(np.linalg.norm(z - gj)) for gj in germs]
    m = min(d)
    return [j for j in range(len(germs)) if d[j] <= m + 2 * eps + TOL]


def fx_cover():
    out = {}
    axis = interval_list(0.0, 10.0, 2.0, 0.5)
    probes = [i * 0.25 for i in range(41)]
    counts = [sum(1 for iv in axis if in_interval(iv, x)) for x in probes]
    out["axis"] = {
        "lo": 0.0, "hi": 10.0, "r": 2.0, "g": 0.5,
        "intervals": [list(iv) for iv in axis], "probes": probes, "counts": counts,
    }

    grid = [[float(x), float(y)] for x in (0, 1, 2) for y in (0, 1, 2)]
    _, cells, boxes = hypercube_elements(grid, 1.0, 0.3)
    out["grid2d"] = {
        "values": grid, "r": 1.0, "g": 0.3,
        "cells": [list(c) for c in cells],
        "boxes": [[list(iv) for iv in b] for b in boxes],
        "membership": [[e for e, b in enumerate(boxes) if box_contains(b, x)] for x in grid],
    }

    g = rng(404)
    centers = np.array([[0.0, 0.0], [3.0, 0.0], [0.0, 3.0]])
    pts = np.concatenate([c + 0.6 * g.normal(size=(4, 2)) for c in centers])
    out["kmeans12"] = {"points": pts.tolist(), "k": 3, "optimal_cost": kmeans_exhaustive(pts, 3)}

    vals = g.uniform(0, 4, size=(40, 2))
    _, _, boxes = hypercube_elements(vals, 1.5, 0.3)
    diams = []
    for b in boxes:
        members = np.array([v for v in vals if box_contains(b, v)])
        diams.append(pairwise_max(members) if len(members) > 1 else 0.0)
    out["resolution"] = {
        "values": vals.tolist(), "r": 1.5, "g": 0.3, "diameters": diams, "resolution": max(diams),
    }

    germs = g.uniform(-2, 2, size=(5, 2))
    zs = g.uniform(-3, 3, size=(300, 2))
    out["voronoi"] = {
        "germs": germs.tolist(), "epsilon": 0.3, "queries": zs.tolist(),
        "halfspace": [halfspace_members(z, germs, 0.3) for z in zs],
        "germ_distance": [germ_distance_members(z, germs, 0.3) for z in zs],
    }
    return out


# ----------------------------------------------------------------- mapper


def mapper_oracle(n, edges, values, r, g, max_dim=2):
    values = np.asarray(values, dtype=float).reshape(n, -1)
    _, _, boxes = hypercube_elements(values, r, g)
    nodes = []
    for e, b in enumerate(boxes):
        members = [i for i in range(n) if box_contains(b, values[i])]
        for comp in sorted(components_in(n, edges, members)):
            nodes.append((e, comp))
    slots = {}
    for idx, (_, comp) in enumerate(nodes):
        for m in comp:
            slots.setdefault(m, []).append(idx)
    simplices = set()
    for ids in slots.values():
        for size in range(2, max_dim + 2):
            for s in itertools.combinations(sorted(ids), size):
                simplices.add(s)
    mapper_edges = sorted(s for s in simplices if len(s) == 2)
    G = nx.Graph()
    G.add_nodes_from(range(len(nodes)))
    G.add_edges_from(mapper_edges)
    b0 = nx.number_connected_components(G)
    b1 = len(mapper_edges) - len(nodes) + b0
    return nodes, sorted(simplices), b0, b1


def reeb_oracle(n, edges, values):
    """Classes: connected components of the subgraph of equal-value edges."""
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from((u, v) for u, v in edges if values[u] == values[v])
    comps = sorted(sorted(c) for c in nx.connected_components(G))
    proj = [0] * n
    for k, c in enumerate(comps):
        for v in c:
            proj[v] = k
    return proj


def fx_mapper():
    g = rng(505)
    theta = g.uniform(0, 2 * math.pi, size=200)
    pts = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    edges = [(i, j) for i in range(200) for j in range(i + 1, 200)
             if np.linalg.norm(pts[i] - pts[j]) <= 0.2]
    heights = pts[:, 1]
    span = heights.max() - heights.min()
    r = span / (8 * (1 - 0.3))
    nodes, simplices, b0, b1 = mapper_oracle(200, edges, heights, r, 0.3)

    # Six-cycle with two nodes per level: 0-1-2-3-4-5-0.
    cycle = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]
    # Same-level nodes adjacent: levels (0,5), (1,4)... here (1,2) and (4,5).
    adjacent_levels = [0.0, 1.0, 1.0, 2.0, 1.0, 1.0]
    # Same-level nodes opposite: 1 and 4 share a level but are not adjacent.
    opposite_levels = [0.0, 1.0, 2.0, 3.0, 1.0, 0.5]
    return {
        "circle": {
            "points": pts.tolist(), "delta": 0.2, "intervals": 8, "gain": 0.3, "resolution": r,
            "nodes": [{"cover": e, "members": m} for e, m in nodes],
            "simplices": [list(s) for s in simplices], "b0": b0, "b1": b1,
        },
        "reeb_cycle6": [
            {"values": adjacent_levels, "edges": cycle,
             "projection": reeb_oracle(6, cycle, adjacent_levels)},
            {"values": opposite_levels, "edges": cycle,
             "projection": reeb_oracle(6, cycle, opposite_levels)},
        ],
    }


# ----------------------------------------------------------- pseudometric


def gh_bruteforce(da, db):
    """min over correspondences of max distortion, halved."""
    n, m = len(da), len(db)
    cells = [(i, j) for i in range(n) for j in range(m)]
    best = math.inf
    for mask in range(1, 1 << len(cells)):
        rel = [cells[t] for t in range(len(cells)) if mask >> t & 1]
        if {i for i, _ in rel} != set(range(n)) or {j for _, j in rel} != set(range(m)):
            continue
        dist = 0.0
        for (i, j) in rel:
            for (k, l) in rel:
                dist = max(dist, abs(da[i][k] - db[j][l]))
        best = min(best, dist)
    return best / 2


def random_metric(g, n):
    pts = g.uniform(0, 3, size=(n, 2))
    return [[float(np.linalg.norm(pts[i] - pts[j])) for j in range(n)] for i in range(n)]


def fx_pseudometric():
    g = rng(606)
    minimax = []
    for _ in range(20):
        n = int(g.integers(2, 9))
        edges = random_connected_graph(g, n, 0.25)
        values = [float(v) for v in g.integers(0, 6, size=n)]
        minimax.append({
            "n": n, "edges": edges, "values": values,
            "matrix": minimax_bruteforce(n, edges, values, lambda a, b: abs(a - b)),
        })
    vector = []
    for _ in range(10):
        n = int(g.integers(2, 8))
        edges = random_connected_graph(g, n, 0.3)
        values = g.uniform(0, 1, size=(n, 2))
        vector.append({
            "n": n, "edges": edges, "values": values.tolist(),
            "matrix": minimax_bruteforce(n, edges, values,
                                         lambda a, b: float(np.linalg.norm(a - b))),
        })
    gh = []
    for _ in range(15):
        n, m = int(g.integers(1, 4)), int(g.integers(1, 5))
        da, db = random_metric(g, n), random_metric(g, m)
        gh.append({"a": da, "b": db, "gh": gh_bruteforce(da, db)})
    return {"minimax_scalar": minimax, "minimax_vector": vector, "gh_tiny": gh}


# ---------------------------------------------------------------- filters


def fx_filters():
    g = rng(707)
    X = g.uniform(-1, 1, size=(100, 2))
    Y = X[:, 0] + 0.1 * g.normal(size=100)
    Q = g.uniform(-0.8, 0.8, size=(20, 2))
    h = 0.35
    means, hists = [], []
    breaks = list(np.linspace(Y.min(), Y.max(), 5))
    for q in Q:
        inside = [i for i in range(100) if np.linalg.norm(X[i] - q) <= h]
        means.append(sum(Y[i] for i in inside) / len(inside))
        counts = [0] * 4
        for i in inside:
            b = next(j for j in range(4) if Y[i] < breaks[j + 1] or j == 3)
            counts[b] += 1
        hists.append([c / len(inside) for c in counts])

    P = g.normal(size=(30, 3)) @ np.array([[2.0, 0.3, 0.0], [0.0, 1.0, 0.4], [0.0, 0.0, 0.2]])
    Pc = P - P.mean(axis=0)
    cov = Pc.T @ Pc
    w, V = np.linalg.eigh(cov)
    order = np.argsort(w)[::-1]
    scores = Pc @ V[:, order[:2]]
    for j in range(2):
        first = next(i for i in range(30) if abs(scores[i, j]) > 1e-12)
        if scores[first, j] < 0:
            scores[:, j] = -scores[:, j]

    centers = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, 0.866]])
    B = np.array([centers[i % 3] + 0.35 * g.normal(size=2) for i in range(60)])
    labels = [i % 3 for i in range(60)]
    probs = []
    for q in B:
        order_nn = sorted(range(60), key=lambda i: (float(((B[i] - q) ** 2).sum()), i))[:15]
        probs.append([sum(1 for i in order_nn if labels[i] == c) / 15 for c in range(3)])

    modulus = []
    for sigma, u in [(1.0, 0.1), (1.0, 0.5), (0.5, 0.2), (2.0, 1.5), (0.3, 1.0)]:
        c = math.sqrt(2) * u

        def neg(r):
            return -(math.exp(-r * r / (2 * sigma * sigma)) - math.exp(-(r + c) ** 2 / (2 * sigma * sigma)))

        grid = np.linspace(0, 8 * sigma, 20001)
        k = int(np.argmin([neg(r) for r in grid]))
        lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
        res = minimize_scalar(neg, bounds=(lo, hi), method="bounded", options={"xatol": 1e-13})
        modulus.append({"sigma": sigma, "u": u, "omega": max(-res.fun, -neg(0.0))})

    return {
        "nw": {"x": X.tolist(), "y": Y.tolist(), "queries": Q.tolist(), "h": h,
               "means": means, "breaks": breaks, "histograms": hists},
        "pca": {"points": P.tolist(), "p": 2, "scores": scores.tolist()},
        "knn": {"points": B.tolist(), "labels": labels, "k": 15, "probabilities": probs},
        "kernel_modulus": modulus,
    }


FIXTURES = {
    "core_types.json": fx_core_types,
    "codomains.json": fx_codomains,
    "graph.json": fx_graph,
    "cover.json": fx_cover,
    "mapper.json": fx_mapper,
    "pseudometric.json": fx_pseudometric,
    "filters.json": fx_filters,
}


def to_jsonable(x):
    if isinstance(x, dict):
        return {k: to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, float) and math.isinf(x):
        return None
    return x


def write_all(directory):
    os.makedirs(directory, exist_ok=True)
    for name, fn in FIXTURES.items():
        with open(os.path.join(directory, name), "w") as f:
            json.dump(to_jsonable(fn()), f, indent=1)
            f.write("\n")


def close(a, b, path):
    if isinstance(a, dict):
        if not isinstance(b, dict) or a.keys() != b.keys():
            raise AssertionError(f"{path}: keys differ")
        for k in a:
            close(a[k], b[k], f"{path}.{k}")
    elif isinstance(a, list):
        if not isinstance(b, list) or len(a) != len(b):
            raise AssertionError(f"{path}: length differs")
        for i, (x, y) in enumerate(zip(a, b)):
            close(x, y, f"{path}[{i}]")
    elif isinstance(a, float) or isinstance(b, float):
        if not math.isclose(a, b, rel_tol=1e-10, abs_tol=1e-12):
            raise AssertionError(f"{path}: {a} != {b}")
    elif a != b:
        raise AssertionError(f"{path}: {a!r} != {b!r}")


def main():
    ap = argparse.ArgumentParser()
    group = ap.add_mutually_exclusive_group(required=True)
    group.add_argument("--out")
    group.add_argument("--check")
    args = ap.parse_args()
    if args.out:
        write_all(args.out)
        return 0
    with tempfile.TemporaryDirectory() as tmp:
        write_all(tmp)
        for name in FIXTURES:
            with open(os.path.join(tmp, name)) as f:
                fresh = json.load(f)
            with open(os.path.join(args.check, name)) as f:
                frozen = json.load(f)
            try:
                close(fresh, frozen, name)
            except AssertionError as e:
                print(f"stale fixture: {e}", file=sys.stderr)
                return 1
    print(f"{len(FIXTURES)} fixture files match their oracles")
    return 0


if __name__ == "__main__":
    sys.exit(main())
