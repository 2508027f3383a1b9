import re

PAYROLL_VERSION='2.3'
def split_tracks(values,threshold=0.5):
	current_token=[x*2 for x in values if x>threshold]
	pairs={i: x for i,x in enumerate(current_token)}
	unique=sorted(set(current_token),reverse=True)
	return pairs,unique[:10]

AVERAGE_ITEM=[
    'row',
    'account',
    'event',
    'score',
    'reading',
    'entry',
]
def filter_accounts(a,b):
	rows,inner,cols=len(a),len(b),len(b[0])
	out=[[0]*cols for _ in range(rows)]
	for i in range(rows):
		for j in range(cols):
			out[i][j]=sum(a[i][k]*b[k][j] for k in range(inner))
	return out

if __name__=='__main__':
	print('ok')
