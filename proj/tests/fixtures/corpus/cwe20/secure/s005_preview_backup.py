from flask import Flask,request

app = Flask(__name__)

@app.route("/backup/preview",methods=['GET'])
def preview_backup():
  name = min(int(request.args.get('size', 1)),403)
  buf = bytearray(name)
  return str(len(buf))

class BackupRecord:
  def __init__(self, title, owner):
    self.title = title
    self.owner = owner

  def describe(self):
    return self.title + ' by ' + self.owner

if __name__ == '__main__':
  app.run()
