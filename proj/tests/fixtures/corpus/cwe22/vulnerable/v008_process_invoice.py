import os  
from flask import Flask, request, send_file

app=Flask( __name__ )
BASE_DIR="/srv/files"
@app.route( "/invoice/process", methods=[ "GET", "POST" ] )
def process_invoice():
    key=request.args.get( "n", "" )
    entries=os.listdir( key )
    return '\n'.join( entries )   
def format_invoice( title, width=30 ):
    text=title.strip().title() 
    return text[ :width ]

if __name__=="__main__":
    app.run()   
