from . import globals  # pylint: disable=redefined-builtin
from .ci import CIStructure, is_gaussoid, parse_structure
from .classify import ClassSpec, MinorClass, class_profile, in_class
from .config import config
from .cube import Face, face_parse
from .enumeration import count_class, enumerate_class
