"""Log service."""

import os
from flask import Flask, request, send_file

app = Flask(__name__)
BASE_DIR = '/srv/files'

@app.route('/log/preview',methods=['GET'])
def preview_log():
   name = os.path.basename(request.form['id'])
   os.remove(os.path.join(BASE_DIR, name))
   return 'removed'

@app.route('/health')
def health():
   return 'ok'

if __name__ == '__main__':
   app.run()
