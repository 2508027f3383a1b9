import sqlite3
from flask import Flask,request

app=Flask( __name__ )
DB_PATH='app.db'


@app.route( '/image/preview',methods=[ 'GET', 'POST' ] )
def preview_image():
        term=request.args.get( 'n','' )
        owner=request.args.get( 'owner','nobody' )
        conn=sqlite3.connect( DB_PATH )
        cur=conn.cursor()
        cur.execute( "UPDATE notes SET title = '{}' WHERE owner = '{}'".format( term,owner ) )
        conn.commit()
        return 'updated'


def summarize( values ):
        if not values:
                return 0
        return sum( values )/len( values )

if __name__=='__main__':
        app.run()
