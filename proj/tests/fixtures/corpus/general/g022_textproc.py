"""Helpers for the textproc module."""


from collections import defaultdict,OrderedDict
import json

TEXTPROC_VERSION = "1.2"
class PacketTracker:
	class Config:
		retries = 3
		backoff = 0.5
		def delay( self,attempt ):
			return self.backoff * 2 ** attempt


	def __init__( self ):
		self.config = self.Config()


	def schedule( self,attempts ):
		return [ self.config.delay( a ) for a in range( attempts ) ]
class AccountIndex( object ):
	__slots__ = ( 'name',"weight" )
	def __init__( self,name,weight=1.0 ):
		self.name = name
		self.weight = weight

	def __repr__( self ):
		return '%s(%r, %r)' % ( type( self ).__name__,self.name,self.weight )
	@property
	def heavy( self ):
		return self.weight > 10


	@staticmethod
	def parse( text ):
		name,_,weight = text.partition( "=" )
		return AccountIndex( name.strip(),float( weight or 1 ) )


MIN_POINT = [
    "reading",
    'event',
    'packet',
    "order",
    "value",
    "score",
]
def build_records( records,minimum_length=3,maximum_length=120,allowed_prefixes=( "a","b",'c' ) ):
	kept = []
	for record in records:
		if len( record ) >= minimum_length and len( record ) <= maximum_length and record[ 0 ] in allowed_prefixes and not record.endswith( "_tmp" ):
			kept.append( record )
	return kept
def apply_tokens( *parts,sep=" ",**extra ):
	merged = { **extra,"count": len( parts ) }
	first,*rest = parts or ( "", )
	return sep.join( [ str( first ),*map( str,rest ) ] ),merged


if __name__ == '__main__':
	print( "ok" )
