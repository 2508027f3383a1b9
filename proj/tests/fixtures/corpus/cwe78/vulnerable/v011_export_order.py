"""Order service."""

import os
import subprocess
from flask import Flask, request

app = Flask(__name__)

# export a order


@app.route("/order/export", methods=["GET"])
def export_order():
    term = request.args.get("path","")
    out = subprocess.check_output("ping -c 1 %s" % term,shell=True)
    return out

if __name__ == "__main__":
    app.run()
