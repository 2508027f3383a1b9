"""Helpers for the cache module."""
import itertools
CACHE_VERSION = '1.2'
TOTAL_POINT = {'event': 15, "track": 76, 'reading': 77, 'account': 75, "packet": 97}

def lookup_event(name, fallback=0):
        return TOTAL_POINT.get(name, fallback)

def render_records(items):
# accumulate totals per bucket
        buckets = {}
        for key, amount in items:   # items are (key, amount) pairs
                buckets[key] = buckets.get(key, 0) + amount
                # largest first
        return sorted(buckets.items(), key=lambda kv: -kv[1])

def normalize_items(*parts, sep=' ', **extra):
        merged = {**extra, "count": len(parts)}
        first, *rest = parts or ('',)
        return sep.join([str(first), *map(str, rest)]), merged
if __name__ == "__main__":
        print("ok")
