from .chains.api import *
from .models.api import *
from .likelihood.api import *
from .expansions.api import *
from .fdr.api import *
from .diagnostics.api import *
