"""Stabilization trick: a handle per hexagon, then finger moves until nice."""

from __future__ import annotations

from .surface import HalfEdgeSurface, StructuralError


def _cycle(S: HalfEdgeSurface, h) -> list:
    out, g = [h], S.nxt[h]
    while g != h:
        out.append(g)
        g = S.nxt[g]
    return out


def _piece(S, u, v, curve, forward, reg_uv=None, reg_vu=None):
    """Half-edges u -> v and v -> u on `curve`; `forward` is the flag of u -> v."""
    if forward:
        h, t = S.new_edge(u, v, curve)
    else:
        t, h = S.new_edge(v, u, curve)
    return h, t


def _rewrite(S, cycles, rep, extra=()):
    """Apply a replacement map to whole boundary cycles and re-link them.

    `cycles` are (cycle, region) pairs; `extra` holds new cycles with regions.
    """
    out = [([x for h in c for x in rep.get(h, [h])], r) for c, r in cycles]
    out += list(extra)
    for c, r in out:
        for a, b in zip(c, c[1:] + c[:1]):
            S.nxt[a] = b
            S.reg[a] = r
    return out


def _distinct_cycles(S, hs):
    seen, out = set(), []
    for h in hs:
        if h in seen:
            continue
        c = _cycle(S, h)
        seen.update(c)
        out.append((c, S.reg[h]))
    return out


def finger_move(S: HalfEdgeSurface, e, f):
    """Push the beta half-edge `e` across the alpha half-edge `f` of the same face.

    The finger splits the face into two regions, adds the thin part of the
    finger to the region behind `e`, and leaves a bigon beyond `f`.
    Returns the half-edge of the finger tip (beta, seen from the far face).
    """
    F = _cycle(S, e)
    if f not in F or S.is_alpha(e) or not S.is_alpha(f):
        raise StructuralError("finger move needs a beta and an alpha edge of one face")
    region = S.reg[e]
    if sum(1 for c in S.regions()[region]) != 1:
        raise StructuralError("finger move through a non-disk region")
    E, Ft = S.twin[e], S.twin[f]
    s, t, a, b = S.origin[e], S.head(e), S.origin[f], S.head(f)
    p1, p2 = S.new_vertex(), S.new_vertex()
    cb, fb = S.curve[e], S.forward[e]
    ca, fa = S.curve[f], S.forward[f]
    b1, B1 = _piece(S, s, p1, cb, fb)
    b2, B2 = _piece(S, p1, p2, cb, fb)
    b3, B3 = _piece(S, p2, t, cb, fb)
    a1, A1 = _piece(S, a, p2, ca, fa)
    a2, A2 = _piece(S, p2, p1, ca, fa)
    a3, A3 = _piece(S, p1, b, ca, fa)
    k = F.index(e)
    rest = F[k + 1:] + F[:k]
    j = rest.index(f)
    X, Y = rest[:j], rest[j + 1:]
    r1, r2, tip = S.new_region(), S.new_region(), S.new_region()
    cycles = [([b3] + X + [a1], r1), ([b1, a3] + Y, r2)]
    flat = set(F)
    for h in (E, Ft):
        if h not in flat:
            c = _cycle(S, h)
            flat.update(c)
            cycles.append((c, S.reg[h]))
    rep = {E: [B3, a2, B1], Ft: [A3, b2, A1]}
    _rewrite(S, cycles, rep, extra=[([A2, B2], tip)])
    for table in (S.z, S.w):
        for k2, r in table.items():
            if r == region:
                table[k2] = r2
    for h in (e, E, f, Ft):
        S.drop(h)
    return b2


def _walk(S, h0, zs):
    """Follow alpha from h0 on its left side until a z region; None if unusable."""
    hs, gs, h = [h0], [], h0
    while True:
        g = S.nxt[h]
        gs.append(g)
        h = S.straight(h)
        if h == h0 or len(hs) > len(S.origin):
            return None
        if S.reg[h] in zs:
            break
        hs.append(h)
    edges = set()
    for g in gs:
        if g in edges or S.twin[g] in edges:
            return None
        edges.update((g, S.twin[g]))
    return hs, gs, h


def stabilize_region(S: HalfEdgeSurface, region):
    """Attach a handle between `region` and a z region and add the curves alpha-hat, beta-hat."""
    (cyc,) = S.regions()[region]
    zs = S.z_regions()
    options = []
    for pos, h in enumerate(cyc):
        if S.is_alpha(h):
            walk = _walk(S, h, zs)
            if walk is not None:
                options.append((len(walk[1]), S.curve[h][1], pos, walk))
    if not options:
        raise StructuralError(f"no alpha pushoff from region {region} reaches a z region")
    hs, gs, hz = min(options, key=lambda o: o[:3])[3]
    k = len(gs)
    t = len(S.stabilization) + 1
    ahat, bhat = ("a", len(S.alphas) + 1), ("b", len(S.betas) + 1)
    S.alphas.append(ahat)
    S.betas.append(bhat)
    S.stabilization.append((ahat, bhat))
    v0 = S.new_vertex()
    us = [S.new_vertex() for _ in range(k)]
    g1, g2, G1, G2 = [], [], [], []
    for j, g in enumerate(gs):
        x, y = S.origin[g], S.head(g)
        h, th = _piece(S, x, us[j], S.curve[g], S.forward[g])
        h2, th2 = _piece(S, us[j], y, S.curve[g], S.forward[g])
        g1.append(h), G1.append(th), g2.append(h2), G2.append(th2)
    ring = [v0] + us
    c, C = [], []
    for j in range(k + 1):
        h, th = S.new_edge(ring[j], ring[(j + 1) % (k + 1)], ahat)
        c.append(h), C.append(th)
    d, D = S.new_edge(v0, v0, bhat)
    h0 = hs[0]
    rep = {h0: [h0, g1[0], C[0], d, c[0]]}
    for j in range(k):
        rep[gs[j]] = [g2[j]]
    for j in range(1, k):
        rep[S.twin[gs[j - 1]]] = [G2[j - 1]]
        rep[hs[j]] = [c[j]]
    rep[S.twin[gs[k - 1]]] = [G2[k - 1], c[k], D, C[k], G1[k - 1]]
    cycles = _distinct_cycles(S, [h0] + hs + [S.twin[g] for g in gs] + gs)
    strips = [([G1[j - 1], hs[j], g1[j], C[j]], S.new_region()) for j in range(1, k)]
    _rewrite(S, cycles, rep, extra=strips)
    for g in gs:
        tg = S.twin[g]
        S.drop(g)
        S.drop(tg)
    return ahat, bhat


def _finger_target(S, cyc, bhats):
    n = len(cyc)
    start = min(range(n), key=lambda i: cyc[i])
    cyc = cyc[start:] + cyc[:start]
    for i, h in enumerate(cyc):
        if S.curve[h] in bhats:
            return h, cyc[(i + 3) % n]
    return None


def stabilize_hexagons(S: HalfEdgeSurface, max_steps: int | None = None) -> HalfEdgeSurface:
    """Make the diagram nice: a handle for each bad hexagon, then push beta-hat fingers."""
    limit = max_steps or 50 * (len(S.origin) + 10)
    for _ in range(limit):
        bad = S.bad_regions()
        if not bad:
            S.check()
            return S
        regions = S.regions()
        bhats = {b for _, b in S.stabilization}
        for r in bad:
            cycles = regions[r]
            if len(cycles) == 1:
                target = _finger_target(S, cycles[0], bhats)
                if target is not None:
                    finger_move(S, *target)
                    break
        else:
            hexes = [r for r in bad if len(regions[r]) == 1 and len(regions[r][0]) == 6]
            if not hexes:
                raise StructuralError(f"bad regions that are not hexagons: {bad}")
            stabilize_region(S, hexes[0])
    raise StructuralError("finger moves did not terminate")
