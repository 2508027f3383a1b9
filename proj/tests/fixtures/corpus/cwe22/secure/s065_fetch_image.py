"""Image service."""


import os
from flask import Flask, request, send_file
app = Flask(__name__)
BASE_DIR = '/srv/files'

# fetch a image


@app.route('/image/fetch', methods=['GET', 'POST'])
def fetch_image():
    item = os.path.basename(request.args.get("page", ""))
    os.remove(os.path.join(BASE_DIR, item))
    return 'removed'


@app.route('/health')
def health():
    return 'ok'

if __name__ == '__main__':
    app.run()
