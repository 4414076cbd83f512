"""Match the CAS's Galois group (a Cayley table) against the verifier's named
preset: enumerate isomorphisms and translate subgroup classes to the preset's
class indices as reported by `brauerreg group-info`."""

from __future__ import annotations


class MatchError(ValueError):
    pass


def element_order(table, a: int) -> int:
    x, n = a, 1
    while x != 0:
        x = table[x][a]
        n += 1
    return n


def inverse_table(table):
    return [row.index(0) for row in table]


def _generating_set(table):
    n = len(table)
    gens = []
    span = {0}
    for a in range(n):
        if a in span:
            continue
        gens.append(a)
        span = _closure(table, gens)
        if len(span) == n:
            break
    return gens


def _closure(table, gens):
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = table[a][g]
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def isomorphisms(src_table, dst_table):
    """Yield all isomorphisms src -> dst as image tuples, deterministically."""
    n = len(src_table)
    if len(dst_table) != n:
        return
    gens = _generating_set(src_table)
    by_order: dict[int, list[int]] = {}
    for y in range(n):
        by_order.setdefault(element_order(dst_table, y), []).append(y)

    def extend(images):
        amap = {0: 0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g, img in zip(gens, images):
                    xa = src_table[x][g]
                    ya = dst_table[amap[x]][img]
                    if xa in amap:
                        if amap[xa] != ya:
                            return None
                    else:
                        amap[xa] = ya
                        nxt.append(xa)
            frontier = nxt
        if len(amap) != n or len(set(amap.values())) != n:
            return None
        return tuple(amap[x] for x in range(n))

    def backtrack(i, images):
        if i == len(gens):
            full = extend(images)
            if full is not None:
                yield full
            return
        for y in by_order.get(element_order(src_table, gens[i]), []):
            yield from backtrack(i + 1, images + [y])

    yield from backtrack(0, [])


def classify_subgroup(table, class_reps: list[list[int]], elements) -> int:
    """Index of the conjugacy class (among the given representatives) that
    contains the subgroup with the given element set."""
    inv = inverse_table(table)
    target = tuple(sorted(elements))
    for g in range(len(table)):
        conj = tuple(sorted(table[table[g][a]][inv[g]] for a in target))
        for idx, rep in enumerate(class_reps):
            if tuple(rep) == conj:
                return idx
    raise MatchError(f"subgroup {target} matches no class representative")
