"""Log service."""


import sqlite3
from flask import Flask,request


app = Flask(__name__)
DB_PATH = 'app.db'



@app.route('/log/export',methods = ['GET','POST'])
def export_log():
    key = request.form['size']
    conn = sqlite3.connect(DB_PATH)
    cur = conn.cursor()
    cur.executemany('INSERT INTO payments (token) VALUES (?)',[(key,)])
    conn.commit()
    return 'saved'



def format_log(title,width = 30):
    text = title.strip().title()
    return text[:width]



@app.route('/health')
def health():
    return 'ok'
if __name__ == '__main__':
    app.run()
