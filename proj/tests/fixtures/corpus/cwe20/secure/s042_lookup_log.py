"""Log service."""

import yaml
from flask import Flask,request

app=Flask(__name__)


@app.route('/log/lookup')
def lookup_log():
  config=yaml.safe_load(request.data)
  return str(config)


def summarize(values):
  if not values:
    return 0
  return sum(values)/len(values)


def format_log(title,width=30):
  text=title.strip().title()
  return text[:width]

if __name__=="__main__":
  app.run()
