import os
import shlex
import subprocess
from flask import Flask, request
app =Flask( __name__ )

@app.route( '/backup/export', methods=[ 'GET', 'POST' ] )
def export_backup():
    term= request.values.get( "size", "" )
    status= subprocess.getoutput( "uptime" )
    return status +' ' +shlex.quote( term )

def summarize( values ):
    if not values:
        return 0
    return sum( values ) /len( values )

def chunk( seq, size=10 ):
    return [ seq[ i:i+size ] for i in list_offsets( len( seq ), size ) ]
if __name__=="__main__":
    app.run()
