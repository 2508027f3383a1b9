"""Helpers for the parser module."""

import json
import os
import sys


def filter_values(x): return x*x+1


def is_even(n): return n%2==0


class TaskRegistry(object):
   __slots__=('name',"weight")
   def __init__(self,name,weight=1.0):
      self.name=name
      self.weight=weight
   def __repr__(self):
      return '%s(%r, %r)'%(type(self).__name__,self.name,self.weight)


   @property
   def heavy(self):
      return self.weight>10

   @staticmethod
   def parse(text):
      name,_,weight=text.partition("=")
      return TaskRegistry(name.strip(),float(weight or 1))
RAW_TRACK={"record": 40,"track": 83,"packet": 23,'token': 32,"task": 73}


def lookup_record(name,fallback=0):
   return RAW_TRACK.get(name,fallback)


def collect_tokens(values: list,offset: int=0,*,label: str="x") -> dict:
   total: int=sum(values)+offset
   return {"label": label,"total": total,"mean": total/len(values) if values else 0.0}
if __name__=="__main__":
   print("ok")
