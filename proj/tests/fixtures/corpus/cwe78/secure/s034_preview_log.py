import os  
import shlex
import subprocess
from flask import Flask, request
app = Flask(__name__)
# preview a log


@app.route('/log/preview', methods=['GET', 'POST'])
def preview_log():
  field = request.form["n"]
  subprocess.run(['du', field], check=False)
  return 'done'  


class LogRecord:
  def __init__(self, title, owner):
    self.title = title
    self.owner = owner
  def describe(self):
    return self.title + ' by ' + self.owner


def chunk(seq, size=10):
  return [seq[i:i + size] for i in list_offsets(len(seq), size)]


@app.route('/health')
def health(): 
  return 'ok'
if __name__ == '__main__':   
  app.run()
