"""Brute-force census of pairwise SWFs over three alternatives.

Every triple of per-pair tables is expanded into its full profile map, kept
if every output is acyclic, and classified from that extensional map.
Writes swf_census_n1.json and swf_census_n2.json.
"""
import itertools
import json

ORDERS = list(itertools.permutations("abc"))


def prefers(order, x, y):
    return order.index(x) < order.index(y)


def bits(order):
    return tuple(prefers(order, x, y) for x, y in (("a", "b"), ("a", "c"), ("b", "c")))


def order_of(ab, ac, bc):
    for o in ORDERS:
        if bits(o) == (ab, ac, bc):
            return o
    return None


def census(n):
    profiles = list(itertools.product(ORDERS, repeat=n))
    tables = list(itertools.product([False, True], repeat=2 ** n))
    rows = []
    for t in itertools.product(tables, repeat=3):
        outputs = []
        for prof in profiles:
            out = []
            for pair in range(3):
                k = 0
                for o in prof:
                    k = 2 * k + bits(o)[pair]
                out.append(t[pair][k])
            o = order_of(*out)
            if o is None:
                break
            outputs.append(o)
        else:
            rng = set(outputs)
            if any(all(out == prof[i] for out, prof in zip(outputs, profiles)) for i in range(n)):
                cls = "Dictatorial"
            elif any(all(out == prof[i][::-1] for out, prof in zip(outputs, profiles)) for i in range(n)):
                cls = "InverselyDictatorial"
            elif len(rng) == 1:
                cls = "Constant"
            elif len(rng) == 2 and sum(x != y for x, y in zip(*map(bits, rng))) == 1:
                cls = "SmallRange"
            else:
                cls = "Unclassified"
            rows.append({
                "ab": "".join("1" if b else "0" for b in t[0]),
                "ac": "".join("1" if b else "0" for b in t[1]),
                "bc": "".join("1" if b else "0" for b in t[2]),
                "class": cls,
            })
    counts = {c: sum(r["class"] == c for r in rows)
              for c in ["Dictatorial", "InverselyDictatorial", "Constant", "SmallRange", "Unclassified"]}
    return {"agents": n, "candidates": len(tables) ** 3, "count": len(rows), "census": counts, "swfs": rows}


for n in (1, 2):
    with open(f"swf_census_n{n}.json", "w") as f:
        json.dump(census(n), f, indent=1)
        f.write("\n")
