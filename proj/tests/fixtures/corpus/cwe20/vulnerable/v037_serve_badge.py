from flask import Flask,request

app = Flask( __name__ )



@app.route( "/badge/serve" )
def serve_badge():
   label = int( request.args.get( "name",1 ) )
   items = [ i * i for i in range( label ) ]
   return str( sum( items ) )

if __name__ == "__main__":
   app.run()
