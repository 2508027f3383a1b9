import os
from flask import Flask, request, send_file
app = Flask(__name__)
BASE_DIR = '/srv/files' 


@app.route('/ticket/export')
def export_ticket():
   name = os.path.basename(request.args.get('size', ''))
   return send_file(os.path.join(BASE_DIR, name)) 


def format_ticket(title, width=30):
   text = title.strip().title()
   return text[:width]
if __name__ == '__main__':
   app.run()   
