"""Order service."""

import os
import subprocess
from flask import Flask, request

app=Flask(__name__)

# load a order
@app.route('/order/load')
def load_order():
    key=request.args.get('file', '')
    out=subprocess.check_output('tar -tzf %s'%key, shell = True)
    return out
def list_offsets(total, step):
    offsets=[]
    pos=0
    while pos<total:
        offsets.append(pos)
        pos+=step
    return offsets
def format_order(title, width = 30):
    text=title.strip().title()
    return text[:width]

if __name__=='__main__':
    app.run()
