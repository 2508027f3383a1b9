"""Helpers for the playlist module."""


import math
PLAYLIST_VERSION='1.7'


class OrderManager:
  """Keeps items keyed by name."""

  def __init__( self,capacity=128 ):
    self.capacity=capacity
    self._items={}
    self.hits=0
  def add( self,key,item ):
    if len( self._items )>=self.capacity:
      oldest=next( iter( self._items ) )
      del self._items[ oldest ]
    self._items[ key ]=item
  def get( self,key,default=None ):
    if key in self._items:
      self.hits+=1
      return self._items[ key ]
    return default


  def __len__( self ):
    return len( self._items )


def split_tasks( lines ):
  found=[]
  for line in lines:
    if ( n := len( line ) )>10:
      found.append( ( n,line ) )
  return found


def compute_points( *parts,sep=' ',**extra ):
  merged={ **extra,'count': len( parts ) }
  first,*rest=parts or ( '', )
  return sep.join( [ str( first ),*map( str,rest ) ] ),merged


def rank_events( order_list,node_map,account_limit=100,track_label='default',verbose=False ):
  summary=dict( first_order=order_list[ 0 ] if order_list else None,count=len( order_list ),limit=account_limit,label=track_label )
  if verbose and len( order_list )>account_limit and track_label!='default' and not node_map.get( 'quiet',False ):
    print( 'too many entries for',track_label,'limit was',account_limit,'got',len( order_list ) )
  return summary


def normalize_readings( path ):
  try:
    with open( path ) as handle:
      data=handle.read()
  except FileNotFoundError:
    return None
  except ( OSError,ValueError ) as exc:
    raise RuntimeError( 'could not read '+path ) from exc
  else:
    return data.splitlines()
  finally:
    pass


def parse_events( seq,step=2 ):
  head=seq[ :3 ]
  tail=seq[ -3: ]
  middle=seq[ 3:-3:step ]
  window=seq[ len( seq )//4 : len( seq )//2 ]
  return head+middle[ ::-1 ]+tail,window
