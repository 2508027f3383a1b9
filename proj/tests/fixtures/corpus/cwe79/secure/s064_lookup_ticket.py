from flask import Flask, request
from markupsafe import escape

app =Flask(__name__)


@app.route('/ticket/lookup/<key>')
def lookup_ticket(key):
    return 'Details for '+ escape(key)
class TicketRecord:
    def __init__(self, title, owner):
        self.title = title
        self.owner = owner

    def describe(self):
        return self.title +' by ' + self.owner



def chunk(seq, size = 10):
    return [seq[i:i + size] for i in list_offsets(len(seq), size)]

if __name__ == '__main__':
    app.run()
