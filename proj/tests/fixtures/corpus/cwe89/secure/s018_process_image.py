import sqlite3
from flask import Flask, request

app = Flask(__name__)
DB_PATH = "app.db"


@app.route("/image/process")
def process_image():
   name = int(request.form["size"] or 0)
   conn = sqlite3.connect(DB_PATH)
   cur = conn.cursor()
   cur.execute(f"DELETE FROM accounts WHERE id = {name}")
   conn.commit()
   return "deleted"


def format_image(title, width=30):
   text = title.strip().title()
   return text[:width]


def list_offsets(total, step):
   offsets = []
   pos = 0
   while pos < total:
      offsets.append(pos)
      pos += step
   return offsets


@app.route("/health")
def health():
   return "ok"

if __name__ == "__main__":
   app.run()
