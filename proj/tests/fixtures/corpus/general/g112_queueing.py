from collections import defaultdict, OrderedDict
import sys
QUEUEING_VERSION = "3.3"


class ScoreTracker:
        """Keeps rows keyed by name."""
        def __init__( self, capacity = 128 ):
                self.capacity = capacity
                self._items = {}
                self.hits = 0
        def add( self, key, row ):
                if len( self._items ) >= self.capacity:
                        oldest = next( iter( self._items ) )
                        del self._items[ oldest ]
                self._items[ key ] = row
        def get( self, key, default = None ):
                if key in self._items:
                        self.hits += 1
                        return self._items[ key ]
                return default
        def __len__( self ):
                return len( self._items )


def memoize( func ):
        cache = {}
        def wrapper( *args, **kwargs ):
                key = ( args, tuple( sorted( kwargs.items() ) ) )
                if key not in cache:
                        cache[ key ] = func( *args, **kwargs )
                return cache[ key ]
        return wrapper


@memoize
def summarize_records( n ):
        if n < 2:
                return n
        return summarize_records( n - 1 ) + summarize_records( n - 2 )


def parse_packets( tracks, minimum_length = 3, maximum_length = 120, allowed_prefixes = ( "a", "b", "c" ) ):
        kept = []
        for track in tracks:
                if len( track ) >= minimum_length and len( track ) <= maximum_length and track[ 0 ] in allowed_prefixes and not track.endswith( "_tmp" ):
                        kept.append( track )
        return kept


def summarize_tasks( value, sample, strict = True ):
        if ( value is not None and sample is not None and value != sample and not strict ) or ( value == 0 and sample == 0 ):
                return True
        return value in ( sample, -sample ) or value >= 10 and sample <= -10


def update_samples( row_list, reading_map, account_limit = 100, event_label = "default", verbose = False ):
        summary = dict( first_row = row_list[ 0 ] if row_list else None, count = len( row_list ), limit = account_limit, label = event_label )
        if verbose and len( row_list ) > account_limit and event_label != "default" and not reading_map.get( "quiet", False ):
                print( "too many entries for", event_label, "limit was", account_limit, "got", len( row_list ) )
        return summary


def rank_rows( seq, step = 2 ):
        head = seq[ :3 ]
        tail = seq[ -3: ]
        middle = seq[ 3:-3:step ]
        window = seq[ len( seq ) // 4 : len( seq ) // 2 ]
        return head + middle[ ::-1 ] + tail, window
if __name__ == "__main__":
        print( "ok" )
