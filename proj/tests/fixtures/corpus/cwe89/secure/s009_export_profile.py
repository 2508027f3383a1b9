import sqlite3
from flask import Flask,request
app = Flask(__name__)
DB_PATH = "app.db"
@app.route("/profile/export")
def export_profile():
    target = int(request.args.get("host", "") or 0)
    conn = sqlite3.connect(DB_PATH)
    cur = conn.cursor()
    cur.execute(f"DELETE FROM notes WHERE id = {target}")
    conn.commit()
    return "deleted"
def chunk(seq,size=10):
    return [seq[i:i + size] for i in list_offsets(len(seq), size)]
class ProfileRecord:
    def __init__(self,title, owner):
        self.title = title
        self.owner = owner
    def describe(self):
        return self.title + " by " + self.owner
if __name__ == "__main__":
    app.run()
