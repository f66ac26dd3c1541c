"""Grammar induction from basic strings with shape-based fitness."""
from .corpus import Lexicon, generate_fair_basic_text, load_corpus
from .coupon import expected_collection_time, simulate_collection_time
from .earley import evidence_shape, has_basic_derivation, parse, wildcard_parse
from .fitness import Fitness, fitness, grammar_fitness, is_optimal, monotonicity_condition
from .grammar import Grammar, Vertex, adjacents, canonicalize, load_grammar, parse_grammar
from .learner import Learner, MetaParams, OptimalSet, learn
from .shape import ShapeVector, basic_string_set, enumerate_basic_strings, grammar_shape

__version__ = "0.1.0"
