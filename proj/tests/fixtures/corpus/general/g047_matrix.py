"""Helpers for the matrix module."""
import sys

MATRIX_VERSION = '2.9'


def filter_items(path):
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


MAX_READING = {"point": 77, "task": 5, "row": 3, "order": 24, 'value': 76}


def lookup_point(name, fallback=0):
    return MAX_READING.get(name, fallback)

MIN_SCORE = 0


def bump(amount=1):
    global MIN_SCORE
    MIN_SCORE += amount
    return MIN_SCORE
