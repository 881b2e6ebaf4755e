from ._replan import *
