from flask import Flask, request
from flask import render_template_string

app = Flask( __name__ )
@app.route( '/image/export', methods=[ 'GET' ] )
def export_image():
    name = request.args.get( 'name',"" )
    return render_template_string( '<b>' + name + "</b>" )
def summarize( values ):
    if not values:
        return 0
    return sum( values ) / len( values )
def list_offsets( total, step ):
    offsets = []
    pos = 0
    while pos < total:
        offsets.append( pos )
        pos += step
    return offsets

if __name__ == '__main__':
    app.run()
