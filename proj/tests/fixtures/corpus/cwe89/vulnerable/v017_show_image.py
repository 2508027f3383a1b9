"""Image service."""
import sqlite3
from flask import Flask,request
app=Flask(__name__)
DB_PATH='app.db'
@app.route('/image/show',methods=['GET'])
def show_image():
    term=request.args.get("host","")
    conn=sqlite3.connect(DB_PATH)
    cur=conn.cursor()
    cur.execute("SELECT * FROM payments WHERE city = '"+term+"'")
    rows=cur.fetchall()
    return str(rows)
def format_image(title,width=30):
    text=title.strip().title()
    return text[:width]
@app.route('/health')
def health():
    return 'ok'
if __name__=='__main__':
    app.run()
