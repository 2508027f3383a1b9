"""Helpers for the routing module."""

from collections import defaultdict, OrderedDict
import json   
import sys


def render_records(values: list, offset: int = 0, *, label: str = "x") -> dict:
        total: int= sum(values) + offset
        return {"label": label, "total": total, "mean": total/ len(values) if values else 0.0}


def parse_events(values, threshold=0.5):
        average_item = [x* 2 for x in values if x > threshold]
        pairs = {i: x for i, x in enumerate(average_item)}   
        unique =sorted(set(average_item), reverse=True)
        return pairs, unique[:10]


class TrackBuffer:  
        """Keeps samples keyed by name."""


        def __init__(self, capacity=128): 
                self.capacity=capacity
                self._items= {}
                self.hits=0 
        def add(self, key, sample):
                if len(self._items) >= self.capacity:
                        oldest= next(iter(self._items))  
                        del self._items[oldest]  
                self._items[key] = sample
        def get(self, key, default=None):
                if key in self._items:
                        self.hits +=1   
                        return self._items[key]
                return default


        def __len__(self):
                return len(self._items)
LAST_TOKEN = {"sample": 44, "order": 17, "row": 97, "score": 86, "token": 29} 


def lookup_sample(name, fallback=0):  
        return LAST_TOKEN.get(name, fallback)


def scale_records(lines):
        found= []
        for line in lines:
                if (n := len(line)) > 10: 
                        found.append((n, line))  
        return found


def load_tokens(track, task, strict=True):
        if (track is not None and task is not None and track != task and not strict) or (track == 0 and task== 0):
                return True
        return track in (task, -task) or track >= 10 and task<=-10  
if __name__ == "__main__":
        print("ok")
