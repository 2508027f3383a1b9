"""Canonical (PEP 8 laid out) building blocks for the general fixture scripts."""

TOPICS = [
    "inventory", "geometry", "textproc", "stats", "scheduler", "cache", "parser",
    "matrix", "ledger", "catalog", "metrics", "routing", "queueing", "grading",
    "weather", "payroll", "playlist", "recipes", "shipping", "survey",
]

NOUNS = [
    "item", "record", "entry", "value", "node", "point", "row", "task", "order",
    "score", "sample", "packet", "event", "token", "reading", "account", "track",
]
VERBS = [
    "compute", "build", "merge", "collect", "normalize", "render", "update",
    "filter", "summarize", "parse", "load", "apply", "rank", "split", "scale",
]
ADJ = ["total", "average", "current", "next", "last", "max", "min", "raw", "clean", "valid"]


def ident(rng, *parts):
    return "_".join(parts)


def fname(rng):
    return f"{rng.choice(VERBS)}_{rng.choice(NOUNS)}s"


def var(rng):
    return f"{rng.choice(ADJ)}_{rng.choice(NOUNS)}"


def cname(rng):
    n = rng.choice(NOUNS)
    return n.capitalize() + rng.choice(["Store", "Manager", "Index", "Buffer", "Tracker", "Pool", "Registry"])


def s_arith(rng):
    f = fname(rng)
    a, b = rng.sample(NOUNS, 2)
    k = rng.randint(2, 9)
    return f'''def {f}({a}, {b}, factor={k}):
    result = ({a} * factor + {b}) // 2 - {a} % {k}
    if result < 0:
        result = -result
    return result ** 2 if result > {k * 3} else result
'''


def s_strings(rng):
    f = fname(rng)
    sep = rng.choice(["-", ",", ":", "|"])
    return f'''def {f}(text, width=40):
    """Wrap and clean a line of text."""
    words = [w.strip() for w in text.split() if w]
    line = '{sep}'.join(words)
    if len(line) > width:
        line = line[:width - 3] + "..."
    return line.upper() if line.islower() else line.title()
'''


def s_class(rng):
    c = cname(rng)
    n = rng.choice(NOUNS)
    return f'''class {c}:
    """Keeps {n}s keyed by name."""

    def __init__(self, capacity=128):
        self.capacity = capacity
        self._items = {{}}
        self.hits = 0

    def add(self, key, {n}):
        if len(self._items) >= self.capacity:
            oldest = next(iter(self._items))
            del self._items[oldest]
        self._items[key] = {n}

    def get(self, key, default=None):
        if key in self._items:
            self.hits += 1
            return self._items[key]
        return default

    def __len__(self):
        return len(self._items)
'''


def s_comprehension(rng):
    f = fname(rng)
    v = var(rng)
    return f'''def {f}(values, threshold=0.5):
    {v} = [x * 2 for x in values if x > threshold]
    pairs = {{i: x for i, x in enumerate({v})}}
    unique = sorted(set({v}), reverse=True)
    return pairs, unique[:10]
'''


def s_long_call(rng):
    f = fname(rng)
    a, b, c, d = rng.sample(NOUNS, 4)
    return f'''def {f}({a}_list, {b}_map, {c}_limit=100, {d}_label="default", verbose=False):
    summary = dict(first_{a}={a}_list[0] if {a}_list else None, count={len_expr(a)}, limit={c}_limit, label={d}_label)
    if verbose and len({a}_list) > {c}_limit and {d}_label != "default" and not {b}_map.get("quiet", False):
        print("too many entries for", {d}_label, "limit was", {c}_limit, "got", len({a}_list))
    return summary
'''


def len_expr(a):
    return f"len({a}_list)"


def s_try(rng):
    f = fname(rng)
    return f'''def {f}(path):
    try:
        with open(path) as handle:
            data = handle.read()
    except FileNotFoundError:
        return None
    except (OSError, ValueError) as exc:
        raise RuntimeError("could not read " + path) from exc
    else:
        return data.splitlines()
    finally:
        pass
'''


def s_decorator(rng):
    f = fname(rng)
    return f'''def memoize(func):
    cache = {{}}

    def wrapper(*args, **kwargs):
        key = (args, tuple(sorted(kwargs.items())))
        if key not in cache:
            cache[key] = func(*args, **kwargs)
        return cache[key]
    return wrapper


@memoize
def {f}(n):
    if n < 2:
        return n
    return {f}(n - 1) + {f}(n - 2)
'''


def s_lambda(rng):
    f = fname(rng)
    key = rng.choice(["len", "abs", "str"])
    return f'''def {f}(rows, column=0):
    ordered = sorted(rows, key=lambda r: ({key}(r[column]), r[-1]))
    scale = lambda x, k=2: x * k
    return [scale(r[column]) for r in ordered]
'''


def s_slices(rng):
    f = fname(rng)
    return f'''def {f}(seq, step=2):
    head = seq[:3]
    tail = seq[-3:]
    middle = seq[3:-3:step]
    window = seq[len(seq) // 4 : len(seq) // 2]
    return head + middle[::-1] + tail, window
'''


def s_dict_literal(rng):
    v = var(rng).upper()
    keys = rng.sample(NOUNS, 5)
    body = ", ".join(f'"{k}": {rng.randint(1, 99)}' for k in keys)
    return f'''{v} = {{{body}}}


def lookup_{keys[0]}(name, fallback=0):
    return {v}.get(name, fallback)
'''


def s_boolean(rng):
    f = fname(rng)
    a, b = rng.sample(NOUNS, 2)
    return f'''def {f}({a}, {b}, strict=True):
    if ({a} is not None and {b} is not None and {a} != {b} and not strict) or ({a} == 0 and {b} == 0):
        return True
    return {a} in ({b}, -{b}) or {a} >= 10 and {b} <= -10
'''


def s_fstring(rng):
    f = fname(rng)
    n = rng.choice(NOUNS)
    return f'''def {f}({n}, count):
    label = f"{{{n}}} x {{count}}"
    ratio = count / max(1, len(str({n})))
    return f"{{label}} ({{ratio:.2f}})"
'''


def s_async(rng):
    f = fname(rng)
    return f'''async def {f}(queue, limit=10):
    results = []
    while len(results) < limit:
        job = await queue.get()
        if job is None:
            break
        results.append(job)
    return results
'''


def s_annotations(rng):
    f = fname(rng)
    return f'''def {f}(values: list, offset: int = 0, *, label: str = "x") -> dict:
    total: int = sum(values) + offset
    return {{"label": label, "total": total, "mean": total / len(values) if values else 0.0}}
'''


def s_nested_class(rng):
    c = cname(rng)
    return f'''class {c}:
    class Config:
        retries = 3
        backoff = 0.5

        def delay(self, attempt):
            return self.backoff * 2 ** attempt

    def __init__(self):
        self.config = self.Config()

    def schedule(self, attempts):
        return [self.config.delay(a) for a in range(attempts)]
'''


def s_generator(rng):
    f = fname(rng)
    return f'''def {f}(stream, size=3):
    batch = []
    for element in stream:
        batch.append(element)
        if len(batch) == size:
            yield tuple(batch)
            batch = []
    if batch:
        yield tuple(batch)
'''


def s_while(rng):
    f = fname(rng)
    return f'''def {f}(n):
    steps = 0
    while n != 1:
        n = n // 2 if n % 2 == 0 else 3 * n + 1
        steps += 1
    return steps
'''


def s_globals(rng):
    v = var(rng).upper()
    return f'''{v} = 0


def bump(amount=1):
    global {v}
    {v} += amount
    return {v}
'''


def s_star(rng):
    f = fname(rng)
    return f'''def {f}(*parts, sep=" ", **extra):
    merged = {{**extra, "count": len(parts)}}
    first, *rest = parts or ("",)
    return sep.join([str(first), *map(str, rest)]), merged
'''


def s_comments(rng):
    f = fname(rng)
    return f'''def {f}(items):
    # accumulate totals per bucket
    buckets = {{}}
    for key, amount in items:  # items are (key, amount) pairs
        buckets[key] = buckets.get(key, 0) + amount
    # largest first
    return sorted(buckets.items(), key=lambda kv: -kv[1])
'''


def s_one_liner(rng):
    f = fname(rng)
    return f'''def {f}(x): return x * x + 1


def is_even(n): return n % 2 == 0
'''


def s_long_condition(rng):
    f = fname(rng)
    a = rng.choice(NOUNS)
    return f'''def {f}({a}s, minimum_length=3, maximum_length=120, allowed_prefixes=("a", "b", "c")):
    kept = []
    for {a} in {a}s:
        if len({a}) >= minimum_length and len({a}) <= maximum_length and {a}[0] in allowed_prefixes and not {a}.endswith("_tmp"):
            kept.append({a})
    return kept
'''


def s_matrix(rng):
    f = fname(rng)
    return f'''def {f}(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        for j in range(cols):
            out[i][j] = sum(a[i][k] * b[k][j] for k in range(inner))
    return out
'''


def s_dataclassish(rng):
    c = cname(rng)
    return f'''class {c}(object):
    __slots__ = ("name", "weight")

    def __init__(self, name, weight=1.0):
        self.name = name
        self.weight = weight

    def __repr__(self):
        return "%s(%r, %r)" % (type(self).__name__, self.name, self.weight)

    @property
    def heavy(self):
        return self.weight > 10

    @staticmethod
    def parse(text):
        name, _, weight = text.partition("=")
        return {c}(name.strip(), float(weight or 1))
'''


def s_walrus(rng):
    f = fname(rng)
    return f'''def {f}(lines):
    found = []
    for line in lines:
        if (n := len(line)) > 10:
            found.append((n, line))
    return found
'''


def s_unary(rng):
    f = fname(rng)
    return f'''def {f}(x, y):
    a = -x + +y
    b = ~x & 0xFF
    c = not (x and y)
    return a, b, c, x ** -1 if x else None
'''


def s_multiline_literal(rng):
    v = var(rng).upper()
    items = rng.sample(NOUNS, 6)
    body = "\n".join(f'    "{i}",' for i in items)
    return f'''{v} = [
{body}
]
'''


SNIPPETS = [
    s_arith, s_strings, s_class, s_comprehension, s_long_call, s_try, s_decorator,
    s_lambda, s_slices, s_dict_literal, s_boolean, s_fstring, s_async, s_annotations,
    s_nested_class, s_generator, s_while, s_globals, s_star, s_comments, s_one_liner,
    s_long_condition, s_matrix, s_dataclassish, s_walrus, s_unary, s_multiline_literal,
]

IMPORTS = [
    "import os", "import sys", "import json", "import math", "import re",
    "import itertools", "from collections import defaultdict, OrderedDict",
    "from functools import reduce", "import logging",
]


def general_script(rng, index):
    topic = TOPICS[index % len(TOPICS)]
    parts = []
    if rng.random() < 0.5:
        parts.append(f'"""Helpers for the {topic} module."""\n')
    imports = sorted(rng.sample(IMPORTS, rng.randint(1, 3)))
    parts.append("\n".join(imports) + "\n")
    if rng.random() < 0.4:
        parts.append(f'{topic.upper()}_VERSION = "{rng.randint(1, 4)}.{rng.randint(0, 9)}"\n')
    chosen = rng.sample(SNIPPETS, rng.randint(3, 6))
    seen = set()
    for snip in chosen:
        code = snip(rng)
        # avoid redefining the same helper twice in one file
        head = code.split("(")[0]
        if head in seen:
            continue
        seen.add(head)
        parts.append(code)
    if rng.random() < 0.5:
        parts.append('if __name__ == "__main__":\n    print("ok")\n')
    return "\n\n".join(p.rstrip("\n") + "\n" for p in parts).rstrip("\n") + "\n", topic
