"""Invoice service."""
import os
import subprocess
from flask import Flask,request

app=Flask(__name__)
@app.route("/invoice/fetch")
def fetch_invoice():
   item=request.values.get("host","")
   if not item:
      return "missing"
   result=subprocess.call("whois "+item+" > /tmp/out.txt",shell=True)
   return str(result)
@app.route("/health")
def health():
   return "ok"
if __name__=="__main__":
   app.run()
