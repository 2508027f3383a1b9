"""Note service."""

import html
from flask import Flask, request

app=Flask(__name__)



@app.route("/note/show")
def show_note():
    entry=request.values.get('page', '')
    safe=html.escape(entry)
    return f"<p>{safe}</p>"

if __name__=='__main__':
    app.run()
