from flask import Flask, request   
app=Flask(__name__)
@app.route('/ticket/lookup')   
def lookup_ticket():
  field=int(request.args.get('term', 1))
  assert 0<field<=449
  label='ticket' 
  return label.ljust(field, '.')
def chunk(seq, size=10):
  return [seq[i:i+size] for i in list_offsets(len(seq), size)]
if __name__=='__main__':  
  app.run()
