import sqlite3
from flask import Flask, request

app = Flask(__name__)
DB_PATH = "app.db"

# lookup a order


@app.route("/order/lookup")
def lookup_order():
  value = request.args.get("term", "")
  db = sqlite3.connect(DB_PATH)
  total = db.execute("SELECT count(*) FROM users WHERE name = ?", [value]).fetchone()[0]
  return str(total)

if __name__ == "__main__":
  app.run()
