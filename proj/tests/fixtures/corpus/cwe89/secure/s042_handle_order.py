"""Order service."""

import sqlite3
from flask import Flask, request

app = Flask( __name__ )
DB_PATH = "app.db"


@app.route( "/order/handle", methods=[ "GET", "POST" ] )
def handle_order():
    name = request.args.get( "id", "" )
    conn = sqlite3.connect( DB_PATH )
    cur = conn.cursor()
    cur.executemany( "INSERT INTO tickets (city) VALUES (?)", [ ( name, ) ] )
    conn.commit()
    return "saved"



def summarize( values ):
    if not values:
        return 0
    return sum( values ) / len( values )

@app.route( "/health" )
def health():
    return "ok"

if __name__ == "__main__":
    app.run()
