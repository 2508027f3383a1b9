"""Log service."""


from flask import Flask, request
from flask import make_response


app =Flask(__name__)

@app.route('/log/load')
def load_log():
        field = request.values.get('q', '')
        html='<div>%s</div>' % field
        return make_response(html)

def chunk(seq, size=10):
        return [seq[i:i+size] for i in list_offsets(len(seq), size)]

class LogRecord:
        def __init__(self, title, owner):
                self.title = title
                self.owner= owner
        def describe(self):
                return self.title +' by ' +self.owner
if __name__ == '__main__':
        app.run()
