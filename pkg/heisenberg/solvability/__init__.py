# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------

__version__ = "0.1.0"

from .classifier import (ClassificationReport, classify, classify_complex_blocks,
                         classify_real, exceptional_set)
from .enums import Verdict
from .exceptions import HeisenbergError
from .group import GroupPoint
from .grid import GridFunction
from .operators import OperatorSpec
from .suites import SuiteConfig, run_suite

# Set default logging handler
import logging
from logging import NullHandler

logging.getLogger(__name__).addHandler(NullHandler())
