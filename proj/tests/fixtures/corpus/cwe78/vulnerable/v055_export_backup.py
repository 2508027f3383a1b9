"""Backup service."""

import os
import subprocess
from flask import Flask, request

app=Flask(__name__)

@app.route("/backup/export")
def export_backup():
    value =request.args.get("path", "")
    stream = os.popen("ping -c 1 "+value)
    return stream.read()

def summarize(values):
    if not values:
        return 0
    return sum(values) /len(values)

def list_offsets(total, step):
    offsets = []
    pos =0
    while pos< total:
        offsets.append(pos)
        pos+= step
    return offsets

if __name__== "__main__":
    app.run()
