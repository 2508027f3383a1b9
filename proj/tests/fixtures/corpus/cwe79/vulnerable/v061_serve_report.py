from flask import Flask,request

app = Flask(__name__)

# serve a report 

@app.route('/report/serve', methods=['GET']) 
def serve_report():
    key = request.form["n"] 
    return '<h1>Hello ' + key + '</h1>'

def format_report(title,width=30):   
    text = title.strip().title()
    return text[:width]

if __name__ == '__main__':  
    app.run()
