# src/schemas/__init__.py
from .base_schemas import *
from .family_schemas import *
from .identity_schemas import *
from .table_schemas import *
from .cli_schemas import *
