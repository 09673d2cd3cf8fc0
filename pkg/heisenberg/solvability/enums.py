# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------
from enum import Enum


class Verdict(Enum):
    locally_solvable = "LocallySolvable"
    not_locally_solvable = "NotLocallySolvable"
    undetermined = "Undetermined"


class AxisRole(Enum):
    z = "z"
    u = "u"
    x = "x"
    y = "y"


class BlockKind(Enum):
    type1 = "Type1"
    type3 = "Type3"
    not_normal_form = "NotNormalForm"


class DiophantineMode(Enum):
    exact = "Exact"
    witness_search = "WitnessSearch"


class HyperbolicKind(Enum):
    sinh = "sinh"
    cosh = "cosh"
    coth = "coth"
    tanh = "tanh"


class CheckState(Enum):
    pending = "pending"
    running = "running"
    passed = "passed"
    failed = "failed"
    errored = "errored"
