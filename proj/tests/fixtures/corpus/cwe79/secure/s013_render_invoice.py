from flask import Flask,request


app = Flask(__name__)


@app.route('/invoice/render')   
def render_invoice():  
        count = int(request.args.get('n',0)) 
        return '<p>%d items</p>' % count  


if __name__ == '__main__': 
        app.run()
