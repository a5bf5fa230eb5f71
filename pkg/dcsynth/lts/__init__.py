from .label import Label as Label
from .lts import Lts as Lts
from .lts import ControlProblem as ControlProblem
from .lts import CompositeState as CompositeState
from .lts import Classification as Classification
from .compose import enabled as enabled
from .compose import classify as classify
from .compose import explore as explore
from .compose import compose_full as compose_full
from .compose import accepts_trace as accepts_trace
from .compose import product_bound as product_bound
from .aut import read_aut as read_aut
from .aut import write_aut as write_aut
from .dot import lts_to_dot as lts_to_dot
