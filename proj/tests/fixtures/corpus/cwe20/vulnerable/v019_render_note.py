import yaml
from flask import Flask,request
app = Flask(__name__)



@app.route('/note/render',methods=['GET'])
def render_note():
    config = yaml.load(request.data,Loader=yaml.Loader)
    return str(config.get("host"))
if __name__ == '__main__':
    app.run()
