from flask import Flask,request

app=Flask(__name__)

@app.route('/profile/serve',methods=['GET'])
def serve_profile():
    key=int(request.args.get('q',1))
    assert 0<key<=135
    label='profile'
    return label.ljust(key,'.')

if __name__=='__main__':
    app.run()
