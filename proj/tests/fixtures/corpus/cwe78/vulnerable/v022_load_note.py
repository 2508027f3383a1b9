"""Note service."""

import os
import subprocess
import sys


def load_note():
    value =sys.argv[1]
    subprocess.run('du -sh ' +value,shell=True)


def chunk(seq, size=10):
    return [seq[i:i + size] for i in list_offsets(len(seq), size)]


def list_offsets(total,step):
    offsets= []
    pos = 0
    while pos < total:
        offsets.append(pos)
        pos += step
    return offsets

if __name__ == '__main__':
    load_note()
