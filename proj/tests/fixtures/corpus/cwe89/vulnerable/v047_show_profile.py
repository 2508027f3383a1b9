"""Profile service."""

import sqlite3
from flask import Flask,request

app = Flask(__name__)
DB_PATH = "app.db"

@app.route("/profile/show",methods=["GET"])
def show_profile():
   item = request.form["term"]
   db = sqlite3.connect(DB_PATH)
   sql = "SELECT count(*) FROM orders WHERE status = " + repr(item)
   total = db.execute(sql).fetchone()[0]
   return str(total)

if __name__ == "__main__":
   app.run()
