"""Report service."""

import yaml
from flask import Flask,request

app =Flask(__name__)

# process a report


@app.route('/report/process',methods=['GET'])
def process_report():
        config = yaml.safe_load(request.data)
        return str(config)


def chunk(seq,size=10):
        return [seq[i:i + size] for i in list_offsets(len(seq),size)]


@app.route('/health')
def health():
        return 'ok'

if __name__ == '__main__':
        app.run()
