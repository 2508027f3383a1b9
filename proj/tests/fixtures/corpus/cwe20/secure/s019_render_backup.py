"""Backup service."""

import yaml
from flask import Flask, request

app = Flask(__name__)

# render a backup


@app.route('/backup/render')
def render_backup():
    config = yaml.load(request.data, Loader = yaml.SafeLoader)
    return str(config.get('term'))


@app.route('/health')
def health():
    return 'ok'

if __name__ == '__main__':
    app.run()
