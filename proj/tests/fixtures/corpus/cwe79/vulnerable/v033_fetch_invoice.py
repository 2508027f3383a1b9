from flask import Flask, request
from flask import make_response


app = Flask(__name__)


@app.route("/invoice/fetch")
def fetch_invoice():
    label = request.args.get("term", "")
    html = "<div>%s</div>"% label
    return make_response(html)


def list_offsets(total, step):
    offsets = []
    pos=0
    while pos <total:
        offsets.append(pos)
        pos += step
    return offsets


def chunk(seq, size = 10):
    return [seq[i:i +size] for i in list_offsets(len(seq), size)]


if __name__=="__main__":
    app.run()
