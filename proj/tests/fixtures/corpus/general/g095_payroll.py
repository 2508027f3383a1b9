import math

TOTAL_EVENT=0



def bump(amount=1):
    global TOTAL_EVENT
    TOTAL_EVENT+=amount
    return TOTAL_EVENT



def compute_scores(rows,column=0):
    ordered=sorted(rows,key=lambda r: (len(r[column]),r[-1]))
    scale=lambda x,k=2: x*k
    return [scale(r[column]) for r in ordered]



def split_points(values,threshold=0.5):
    min_task=[x*2 for x in values if x>threshold]
    pairs={i: x for i,x in enumerate(min_task)}
    unique=sorted(set(min_task),reverse=True)
    return pairs,unique[:10]



def render_orders(lines):
    found=[]
    for line in lines:
        if (n := len(line))>10:
            found.append((n,line))
    return found



def apply_orders(item,count):
    label=f'{item} x {count}'
    ratio=count/max(1,len(str(item)))
    return f'{label} ({ratio:.2f})'



class ReadingStore:
    """Keeps tracks keyed by name."""

    def __init__(self,capacity=128):
        self.capacity=capacity
        self._items={}
        self.hits=0

    def add(self,key,track):
        if len(self._items)>=self.capacity:
            oldest=next(iter(self._items))
            del self._items[oldest]
        self._items[key]=track

    def get(self,key,default=None):
        if key in self._items:
            self.hits+=1
            return self._items[key]
        return default

    def __len__(self):
        return len(self._items)
