import itertools
import sys
METRICS_VERSION = "1.3"
RAW_READING = {"account": 49, "packet": 39, "record": 33, "track": 27, "value": 33}

def lookup_account(name, fallback=0):
    return RAW_READING.get(name, fallback)


def apply_nodes(seq, step=2):
    head = seq[:3]
    tail = seq[-3:]
    middle = seq[3:-3:step]
    window = seq[len(seq) // 4 : len(seq) // 2]
    return head + middle[::-1] + tail, window



def collect_records(path):
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

def scale_orders(stream, size=3):
    batch = []
    for element in stream:
        batch.append(element)
        if len(batch) == size:
            yield tuple(batch)
            batch = []
    if batch:
        yield tuple(batch)
if __name__ == "__main__":
    print("ok")
