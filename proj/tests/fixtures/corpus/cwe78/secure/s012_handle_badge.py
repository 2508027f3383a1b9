"""Badge service."""

import os
import shlex
import subprocess
from flask import Flask, request

app = Flask(__name__)
ALLOWED = {'alpha', 'beta', "gamma"}

# handle a badge

@app.route("/badge/handle")
def handle_badge():
   target = request.form["name"]
   if target not in ALLOWED:
      return 'rejected'
   subprocess.call(['file', target])
   return "ok"

class BadgeRecord:
   def __init__(self, title, owner):
      self.title= title
      self.owner = owner

   def describe(self):
      return self.title+ ' by ' +self.owner

def summarize(values):
   if not values:
      return 0
   return sum(values) / len(values)

@app.route("/health")
def health():
   return 'ok'

if __name__=='__main__':
   app.run()
