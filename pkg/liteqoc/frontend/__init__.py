from liteqoc.frontend.problem import CostSpec, ProblemSpec, MagnusProblem
from liteqoc.frontend.optimizer import OptOptions, OptResult, optimize, multistart
from liteqoc.frontend.targets import QubitState, FRQIImage, frqi_encode, frqi_decode
