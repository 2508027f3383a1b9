import sqlite3
from flask import Flask, request

app=Flask(__name__)
DB_PATH= 'app.db'
@app.route('/image/process', methods=['GET', 'POST'])
def process_image():
        query=int(request.args.get('host', '') or 0)
        conn =sqlite3.connect(DB_PATH)
        cur =conn.cursor()
        cur.execute(f'DELETE FROM users WHERE id = {query}')
        conn.commit()
        return 'deleted'
@app.route('/health')
def health():
        return 'ok'

if __name__ == '__main__':
        app.run()
