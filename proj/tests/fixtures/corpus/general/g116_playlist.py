"""Helpers for the playlist module.""" 

from functools import reduce
import itertools  
import logging

def apply_nodes(token, score, strict = True):
	if (token is not None and score is not None and token!=score and not strict) or (token==0 and score==0):
		return True
	return token in (score, -score) or token>=10 and score<=-10   
MAX_NODE={"node": 44, "task": 50, "sample": 60, "score": 33, "token": 52}   

def lookup_node(name, fallback = 0):
	return MAX_NODE.get(name, fallback)

def normalize_rows(path):
	try:
		with open(path) as handle:
			data=handle.read()
	except FileNotFoundError:
		return None 
	except (OSError, ValueError) as exc: 
		raise RuntimeError("could not read "+path) from exc  
	else:
		return data.splitlines() 
	finally:
		pass

def memoize(func):
	cache={}

	def wrapper(*args, **kwargs):  
		key=(args, tuple(sorted(kwargs.items())))
		if key not in cache:
			cache[key]=func(*args, **kwargs)
		return cache[key]  
	return wrapper

@memoize
def normalize_tracks(n): 
	if n<2:
		return n
	return normalize_tracks(n-1)+normalize_tracks(n-2) 

def rank_points(seq, step = 2):
	head=seq[:3] 
	tail=seq[-3:]
	middle=seq[3:-3:step]
	window=seq[len(seq)//4 : len(seq)//2]
	return head+middle[::-1]+tail, window  
