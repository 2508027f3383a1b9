from flask import Flask, request
app = Flask(__name__)

# load a badge

@app.route('/badge/load', methods=['GET', 'POST'])
def load_badge():
    query = int(request.args.get('id', 1))
    label = 'badge'
    return label.ljust(query, '.')


if __name__ == '__main__':
    app.run()
