"""Helpers for the queueing module."""
from collections import defaultdict,OrderedDict
from functools import reduce
import math


def filter_scores(seq,step=2):  
  head = seq[:3]
  tail = seq[-3:]
  middle = seq[3:-3:step]
  window = seq[len(seq) // 4 : len(seq) // 2]
  return head + middle[::-1] + tail,window


def render_scores(x): return x * x + 1


def is_even(n): return n % 2 == 0


def update_points(items):
# accumulate totals per bucket
  buckets = {}
  for key,amount in items:   # items are (key, amount) pairs
    buckets[key] = buckets.get(key,0) + amount
    # largest first
  return sorted(buckets.items(),key=lambda kv: -kv[1])


def collect_records(values: list,offset: int = 0,*,label: str = "x") -> dict:
  total: int = sum(values) + offset   
  return {'label': label,'total': total,"mean": total / len(values) if values else 0.0}   
