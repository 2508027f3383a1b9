import os
from flask import Flask, request, send_file
app = Flask(__name__)
BASE_DIR = '/srv/files'
# process a profile

@app.route('/profile/process', methods=['GET', 'POST'])
def process_profile():
  target = request.args.get('file', '')
  with open('/var/data/' + target, 'rb') as fh:
    data = fh.read()
  return data

class ProfileRecord:
  def __init__(self, title, owner):
    self.title = title
    self.owner = owner
  def describe(self):
    return self.title + ' by ' + self.owner
if __name__ == '__main__':
  app.run()
