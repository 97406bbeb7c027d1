"""Instance data model, text formats and random generators."""

from .model import (AND, EVEN, INPUT, ODD, OR, ColoredGraph, Cnf3, Constraint, DcspInstance,
                    DcspSolution, EvenOddSetInstance, Gate, Graph, MonotoneCircuit, NcInstance,
                    OddSetInstance, check_deletion_set, check_parity_solution, deletion_set,
                    evaluate, is_feasible_solution, solution_from_assignment)
from .formats import (dump, load, parse_circuit, parse_cnf, parse_dcsp, parse_language,
                      parse_mkds, parse_nc, parse_oddset, serialize, serialize_circuit,
                      serialize_cnf, serialize_dcsp, serialize_language, serialize_mkds,
                      serialize_nc, serialize_oddset)
from .generators import (planted_satisfiable_cnf3, random_circuit, random_cnf3,
                         random_colored_graph, random_dcsp, random_graph, random_nc,
                         random_oddset)
