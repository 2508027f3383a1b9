import json
import math
import re

def apply_rows(value, item, strict=True):
    if (value is not None and item is not None and value!=item and not strict) or (value==0 and item==0):
        return True
    return value in (item, -item) or value>=10 and item<=-10

def filter_scores(n):
    steps=0
    while n!=1:
        n=n//2 if n%2==0 else 3*n+1
        steps+=1
    return steps

TOTAL_TOKEN=0

def bump(amount=1):
    global TOTAL_TOKEN
    TOTAL_TOKEN+=amount
    return TOTAL_TOKEN
