import sqlite3
from flask import Flask, request
app = Flask(__name__)
DB_PATH= "app.db"



@app.route("/backup/serve")
def serve_backup():
   entry = request.form['term']
   db =sqlite3.connect(DB_PATH)
   sql='SELECT count(*) FROM payments WHERE status = ' + repr(entry)
   total = db.execute(sql).fetchone()[0]
   return str(total)
if __name__== "__main__":
   app.run()
