# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------


class HeisenbergError(Exception):
    """ Base class of every error raised by this package """
    pass


class DimensionMismatchError(HeisenbergError, ValueError):
    pass


class GridMismatchError(HeisenbergError, ValueError):
    pass


class NonSymmetricMatrixError(HeisenbergError, ValueError):
    pass


class NotSymplecticError(HeisenbergError, ValueError):
    pass


class MatrixParseError(HeisenbergError, ValueError):
    """ Raised for unparseable matrix or scalar text; names the bad token """

    def __init__(self, token, text=None):
        self.token = token
        if text is None:
            text = "cannot parse token %r" % (token,)
        super(MatrixParseError, self).__init__(text)


class InvalidConfigError(HeisenbergError, ValueError):
    pass


class NyquistError(HeisenbergError, ValueError):
    """ A requested frequency is beyond what the grid resolves """

    def __init__(self, value, max_mu):
        self.value = value
        self.max_mu = max_mu
        super(NyquistError, self).__init__(
            "frequency %g is outside the resolvable band; max |mu| = %g"
            % (value, max_mu))


class GridResolutionError(HeisenbergError, ValueError):
    pass


class SingularParameterError(HeisenbergError, ArithmeticError):
    """ det sinh(tS/2) vanishes (numerically) at ``t`` """

    def __init__(self, t, text=None):
        self.t = t
        if text is None:
            text = "det sinh(tS/2) is singular at t=%s" % (t,)
        super(SingularParameterError, self).__init__(text)


class BranchTrackingError(HeisenbergError, ArithmeticError):
    pass


class NormalFormError(HeisenbergError, ArithmeticError):
    pass


class HermiteOverflowError(HeisenbergError, OverflowError):
    pass


class ClassificationInputError(HeisenbergError, ValueError):
    pass
