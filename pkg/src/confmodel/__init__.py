"""Parse network device configurations, extract configuration models, generate commands back."""
from .compare import canonicalize, diff_models, models_equal
from .extractor import (ExtractionError, NoOpenGroup, SlotConflict, aggregate_stats, extract,
                        extract_multi, extract_text, model_stats)
from .generator import (CommandScript, GenerationError, MissingRequiredSlot, UnknownGroup,
                        generate, mode_balanced, roundtrip_check)
from .lexer import LexError, Token, tokenize
from .mapping import (MappingError, MappingRule, MappingTable, builtin_cisco_table,
                      builtin_table, builtin_yamaha_table, load_mapping)
from .metamodel import (DeviceModel, GroupValue, Metamodel, ModelFormatError, Violation,
                        builtin_metamodel, deserialize_model, serialize_model, validate_model)
from .parser import ParseError, ParseTree, dump_tree, parse, parse_file, parse_text, print_tree

__version__ = "0.1.0"
