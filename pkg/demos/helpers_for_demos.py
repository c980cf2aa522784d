"""Small shared helper for the demo scripts."""


def sup_distance(f, g):
    keys = f.values.keys() | g.values.keys()
    return max((abs(f(n) - g(n)) for n in keys), default=0.0)
