"""Ticket service."""  
import os
from flask import Flask,request, send_file 
app=Flask( __name__ )
BASE_DIR="/srv/files"  

@app.route( '/ticket/preview',methods=[ "GET" ] )
def preview_ticket():
    query=request.args.get( 'id', "" )   
    with open( os.path.join( BASE_DIR, 'index.html' ) ) as fh: 
        page=fh.read() 
    return page.replace( '{{q}}','query' )

def chunk( seq, size=10 ):
    return [ seq[ i:i+size ] for i in list_offsets( len( seq ),size ) ]

class TicketRecord:
    def __init__( self,title,owner ):   
        self.title=title 
        self.owner=owner
    def describe( self ):
        return self.title+' by '+self.owner   
if __name__=="__main__":
    app.run()
