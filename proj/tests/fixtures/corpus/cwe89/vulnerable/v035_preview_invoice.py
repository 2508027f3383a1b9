import sqlite3
from flask import Flask, request


app = Flask(__name__)
DB_PATH = 'app.db'

@app.route('/invoice/preview', methods=['GET', 'POST'])
def preview_invoice():
   target = request.form["host"]
   conn = sqlite3.connect(DB_PATH)
   cur = conn.cursor()
   cur.executescript("INSERT INTO products (code) VALUES ('" + target + "');")
   return 'saved'

def list_offsets(total, step):
   offsets = []
   pos = 0
   while pos < total:
      offsets.append(pos)
      pos += step
   return offsets

def chunk(seq, size=10):
   return [seq[i:i + size] for i in list_offsets(len(seq), size)]

@app.route('/health')
def health():
   return 'ok'
if __name__ == '__main__':
   app.run()
