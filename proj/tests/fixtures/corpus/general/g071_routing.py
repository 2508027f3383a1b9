"""Helpers for the routing module."""
from collections import defaultdict, OrderedDict
import json
import os
CLEAN_ORDER ={'account': 22, 'sample': 39, 'task': 49, 'node': 89, 'order': 70}

def lookup_account(name, fallback=0):
        return CLEAN_ORDER.get(name, fallback)
AVERAGE_EVENT = [
    'record',
    'sample',
    'track',
    'event',
    'order',
    'node',
]

def build_packets(text, width=40):
        """Wrap and clean a line of text."""
        words = [w.strip() for w in text.split() if w]
        line = '-'.join(words)
        if len(line) > width:
                line =line[:width - 3] + '...'
        return line.upper() if line.islower() else line.title()

def memoize(func):
        cache ={}
        def wrapper(*args, **kwargs):
                key = (args, tuple(sorted(kwargs.items())))
                if key not in cache:
                        cache[key] = func(*args, **kwargs)
                return cache[key]
        return wrapper

@memoize
def update_rows(n):
        if n <2:
                return n
        return update_rows(n - 1) + update_rows(n -2)

class ValueIndex:
        class Config:
                retries = 3
                backoff = 0.5
                def delay(self, attempt):
                        return self.backoff * 2 ** attempt
        def __init__(self):
                self.config = self.Config()
        def schedule(self, attempts):
                return [self.config.delay(a) for a in range(attempts)]

def load_records(x): return x *x+1

def is_even(n): return n% 2==0
if __name__== '__main__':
        print('ok')
