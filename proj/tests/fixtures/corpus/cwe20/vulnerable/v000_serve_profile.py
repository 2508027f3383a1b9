import yaml
from flask import Flask,request

app = Flask( __name__ )
@app.route( "/profile/serve" )
def serve_profile():
    config = yaml.load( request.data,Loader=yaml.Loader )
    return str( config.get( "path" ) )

if __name__ == "__main__":
    app.run()
