import random

from zxcalc import diagram as dg
from zxcalc.semantics import Comp, Gen, Tens, expr_arity


def random_expr(rng: random.Random, depth: int = 3):
    """A random well-typed generator-expression tree."""
    if depth == 0 or rng.random() < 0.3:
        kind = rng.choice(["z", "x", "h", "star", "wire", "swap", "cup", "cap", "empty"])
        if kind in ("z", "x"):
            return Gen(kind, rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 3))
        return Gen(kind)
    if rng.random() < 0.5:
        return Tens(random_expr(rng, depth - 1), random_expr(rng, depth - 1))
    before = random_expr(rng, depth - 1)
    _, b = expr_arity(before)
    after = Gen(rng.choice(["z", "x"]), b, rng.randint(0, 2), rng.randint(0, 3))
    return Comp(after, before)


def random_diagram(rng: random.Random, max_nodes: int = 8):
    """A random well-formed diagram built from generators."""
    d = dg.empty()
    ops = 0
    while ops < max_nodes:
        if rng.random() < 0.45 or not d.outputs:
            kind = rng.choice(["z", "x", "h", "star", "wire", "cap", "cup", "swap"])
            if kind in ("z", "x"):
                g = (dg.z_spider if kind == "z" else dg.x_spider)(
                    rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 3)
                )
            else:
                g = {
                    "h": dg.hadamard,
                    "star": dg.star,
                    "wire": dg.wire,
                    "cap": dg.cap,
                    "cup": dg.cup,
                    "swap": dg.swap,
                }[kind]()
            d = dg.tensor(d, g)
            ops += len(g.nodes) or 1
        else:
            g = (dg.z_spider if rng.random() < 0.5 else dg.x_spider)(
                len(d.outputs), rng.randint(0, 2), rng.randint(0, 3)
            )
            d = dg.compose(g, d)
            ops += 1
    return d


def random_starfree_diagram(rng: random.Random, max_nodes: int = 6):
    while True:
        d = random_diagram(rng, max_nodes)
        from zxcalc.diagram import Star

        if not any(isinstance(k, Star) for k in d.nodes.values()):
            return d
