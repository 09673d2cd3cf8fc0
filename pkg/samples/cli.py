#!/usr/bin/env python

# -*- coding: utf-8 -*-
# coding=utf-8
# --------------------------------------------------------------------------
# Copyright (c) heisenberg-solvability contributors. All rights reserved.
# Licensed under the MIT License. See License.txt in the project root for
# license information.
# --------------------------------------------------------------------------

"""
Command-line front end.

Every subcommand prints JSON (or CSV, or a fixed-width table) on stdout and
records an exit code: 0 for a decided verdict or a completed run, 2 for an
undetermined verdict and 1 for input errors and failed checks.

This file is the only executable in the project.
"""

import argparse
import cmd
import os
import shlex
import sys

from heisenberg.solvability import __version__
from heisenberg.solvability.classifier import classify, cr_witness
from heisenberg.solvability.differential import operator_symbol
from heisenberg.solvability.enums import CheckState, Verdict
from heisenberg.solvability.exceptions import HeisenbergError, InvalidConfigError
from heisenberg.solvability.grid import GridFunction
from heisenberg.solvability.lewy import lewy_witness_experiment
from heisenberg.solvability.metaplectic import gamma, ktilde_weak_identity
from heisenberg.solvability.operators import OperatorSpec, lewy
from heisenberg.solvability.schrodinger import (WitnessFound, cr_nonsolvability_test,
                                                fourier_kernel, plancherel_check)
from heisenberg.solvability.suites import SUITES, SuiteConfig, format_table, run_suite
from heisenberg.solvability.symbolic import TestFunction
from heisenberg.solvability.utils import dumps, parse_matrix

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNDETERMINED = 2


class _ArgumentParser(argparse.ArgumentParser):
    """ argparse that raises instead of exiting the process """

    def error(self, message):
        raise InvalidConfigError("%s: %s" % (self.prog, message))

    def parse_line(self, line):
        return self.parse_args(_attach_values(shlex.split(line)))


def _attach_values(tokens):
    """ Join ``--flag -1,0;0,-1`` into ``--flag=-1,0;0,-1``

    argparse takes a value with a leading minus sign for an option unless it
    is a plain number; the CLI has no single-dash options.
    """
    out = []
    i = 0
    while i < len(tokens):
        token = tokens[i]
        if (token.startswith('--') and '=' not in token and i + 1 < len(tokens)
                and tokens[i + 1].startswith('-') and not tokens[i + 1].startswith('--')):
            out.append('%s=%s' % (token, tokens[i + 1]))
            i += 2
        else:
            out.append(token)
            i += 1
    return out


def _floats(text):
    return tuple(float(v) for v in text.split(',') if v.strip())


def _handles_errors(method):
    def run(self, line):
        self.exit_code = EXIT_OK
        try:
            return method(self, line)
        except HeisenbergError as e:
            print("error: %s" % e)
            self.exit_code = EXIT_ERROR
    run.__name__ = method.__name__
    run.__doc__ = method.__doc__
    return run


class HeisenbergCommand(cmd.Cmd, object):
    """Accept subcommands from the command line."""

    prompt = 'heisenberg> '
    undoc_header = None
    _hidden_methods = ('do_EOF',)

    def __init__(self):
        super(HeisenbergCommand, self).__init__()
        self.exit_code = EXIT_OK

    def get_names(self):
        return [n for n in dir(self.__class__) if n not in self._hidden_methods]

    def emptyline(self):
        pass

    def default(self, line):
        print("error: unknown command %r" % line.split()[0])
        self.exit_code = EXIT_ERROR

    def _report(self, config, report):
        print(dumps({'version': __version__, 'config': config.to_dict(), 'report': report}))

    def do_close(self, line):
        return True

    def help_close(self):
        print("close\n")
        print("Exit the application")

    @_handles_errors
    def do_classify(self, line):
        parser = _ArgumentParser(prog="classify", add_help=False)
        parser.add_argument('--n', type=int, default=1)
        parser.add_argument('--A', type=str, required=True)
        parser.add_argument('--alpha', type=str, default='0')
        parser.add_argument('--format', type=str, default='json', choices=['json'])
        parser.add_argument('--crosscheck', action='store_true')
        args = parser.parse_line(line)

        config = SuiteConfig(n=args.n, A=args.A, alpha=args.alpha, format=args.format).validate()
        spec = OperatorSpec.from_text(config.n, config.A, config.alpha)
        report = classify(spec)
        if args.crosscheck:
            cr_witness(spec, report)
        self._report(config, report)
        if report.verdict is Verdict.undetermined:
            self.exit_code = EXIT_UNDETERMINED

    def help_classify(self):
        print("classify --n N --A MATRIX [--alpha SCALAR] [--crosscheck]\n")
        print("Decide local solvability of the operator with coefficient matrix A")
        print("and central term i alpha U. Matrix rows are separated by ';' and")
        print("entries by ','. Exit code 0 for a decided verdict, 2 when the")
        print("verdict is undetermined and 1 on input errors.\n")
        print("Options:")
        print("  --crosscheck  also run the Hermite CR test on the normal form")

    @_handles_errors
    def do_verify(self, line):
        parser = _ArgumentParser(prog="verify", add_help=False)
        parser.add_argument('--suite', type=str, required=True)
        parser.add_argument('--kmax', type=int, default=10)
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--grid', type=int, default=65)
        parser.add_argument('--extent', type=float, default=3.0)
        parser.add_argument('--tol', type=float, default=None)
        parser.add_argument('--lambdas', type=_floats, default=(4, 8, 16, 32, 64))
        parser.add_argument('--mu', type=float, default=1.0)
        parser.add_argument('--n', type=int, default=1)
        parser.add_argument('--nthreads', type=int, default=None)
        parser.add_argument('--format', type=str, default=None, choices=['json', 'csv'])
        args = parser.parse_line(line)

        config = SuiteConfig(n=args.n, mu=args.mu, dims=args.grid, extent=args.extent,
                             kmax=args.kmax, tol=args.tol, seed=args.seed,
                             format=args.format or 'json', suite=args.suite,
                             lambdas=args.lambdas, nthreads=args.nthreads)
        result = run_suite(args.suite, config, nthreads=args.nthreads)
        rows = [{'name': c.name, 'measured': c.measured, 'bound': c.bound,
                 'relation': c.relation, 'passed': c.state is CheckState.passed,
                 'error': str(c.exception) if c.exception else None}
                for c in result.checks]
        if args.format == 'json':
            self._report(config, {'suite': result.name, 'passed': result.passed,
                                  'checks': rows})
        elif args.format == 'csv':
            print('name,measured,relation,bound,passed')
            for r in rows:
                print('%s,%r,%s,%r,%s' % (r['name'], r['measured'], r['relation'],
                                          r['bound'], r['passed']))
        else:
            print(format_table(result.checks))
        if not result.passed:
            self.exit_code = EXIT_ERROR

    def help_verify(self):
        print("verify --suite NAME [--kmax K] [--seed S] [--grid D] [--extent E]")
        print("       [--tol T] [--lambdas L1,L2,...] [--mu MU] [--n N]")
        print("       [--nthreads N] [--format json|csv]\n")
        print("Run a verification suite and print one row per check")
        print("(name, measured, bound, pass). Exit code 0 iff every check passes.\n")
        print("Suites: %s" % ', '.join(SUITES))

    @_handles_errors
    def do_transform(self, line):
        parser = _ArgumentParser(prog="transform", add_help=False)
        parser.add_argument('--in', dest='inp', type=str, required=True)
        parser.add_argument('--mu', type=float, required=True)
        parser.add_argument('--out', type=str, default=None)
        parser.add_argument('--format', type=str, default='grid', choices=['grid', 'csv'])
        args = parser.parse_line(line)

        config = SuiteConfig(mu=args.mu, inp=args.inp, out=args.out,
                             format=args.format).validate()
        try:
            f = GridFunction.load(config.inp)
        except (IOError, OSError) as e:
            raise InvalidConfigError("cannot read %s: %s" % (config.inp, e))
        config.n = f.n
        config.dims = f.dims[0]
        config.extent = f.extents[0]
        K = fourier_kernel(f, config.mu)
        if config.out:
            K.save(config.out, format=config.format)
        self._report(config, {'mu': config.mu, 'dims': list(K.dims),
                              'hs_norm': K.hs_norm(), 'out': config.out})

    def help_transform(self):
        print("transform --in FILE --mu MU [--out FILE] [--format grid|csv]\n")
        print("Group Fourier transform of a sampled function on H_n at parameter")
        print("mu; the kernel K(x, y) is written to --out.")

    @_handles_errors
    def do_gamma(self, line):
        parser = _ArgumentParser(prog="gamma", add_help=False)
        parser.add_argument('--S', type=str, required=True)
        parser.add_argument('--t', type=float, default=0.2)
        parser.add_argument('--mu', type=float, default=1.0)
        parser.add_argument('--grid', type=int, default=65)
        parser.add_argument('--extent', type=float, default=3.0)
        parser.add_argument('--out', type=str, default=None)
        parser.add_argument('--format', type=str, default='grid', choices=['grid', 'csv'])
        args = parser.parse_line(line)

        config = SuiteConfig(S=args.S, t=args.t, mu=args.mu, dims=args.grid,
                             extent=args.extent, out=args.out, format=args.format).validate()
        S = parse_matrix(config.S)
        config.n = S.shape[0] // 2
        kernel = gamma(S, config.t, config.mu)
        if config.out:
            kernel.sample(config.dims, config.extent).save(config.out, format=config.format)
        self._report(config, {'prefactor': complex(kernel.prefactor),
                              'matrix': kernel.matrix, 'out': config.out})

    def help_gamma(self):
        print("gamma --S MATRIX [--t T] [--mu MU] [--grid D] [--extent E]")
        print("      [--out FILE] [--format grid|csv]\n")
        print("Metaplectic Gaussian of a real S at time t: the prefactor and")
        print("matrix are printed, the samples are written to --out.")

    @_handles_errors
    def do_ktilde(self, line):
        parser = _ArgumentParser(prog="ktilde", add_help=False)
        parser.add_argument('--S', type=str, required=True)
        parser.add_argument('--alpha', type=float, default=0.0)
        parser.add_argument('--nthreads', type=int, default=None)
        args = parser.parse_line(line)

        config = SuiteConfig(S=args.S, alpha=str(args.alpha), nthreads=args.nthreads).validate()
        S = parse_matrix(config.S)
        config.n = S.shape[0] // 2
        result = ktilde_weak_identity(S, args.alpha, nthreads=config.nthreads)
        self._report(config, result._asdict())

    def help_ktilde(self):
        print("ktilde --S MATRIX [--alpha A] [--nthreads N]\n")
        print("Pair the regularised fundamental solution of Delta_S + i alpha U")
        print("(S real, hyperbolic) with tL psi for the default probe psi and")
        print("compare with the expected point evaluation.")

    @_handles_errors
    def do_symbol(self, line):
        parser = _ArgumentParser(prog="symbol", add_help=False)
        parser.add_argument('--n', type=int, default=1)
        parser.add_argument('--A', type=str, required=True)
        parser.add_argument('--alpha', type=str, default='0')
        parser.add_argument('--mu', type=float, default=1.0)
        args = parser.parse_line(line)

        config = SuiteConfig(n=args.n, A=args.A, alpha=args.alpha, mu=args.mu).validate()
        spec = OperatorSpec.from_text(config.n, config.A, config.alpha)
        symbol = operator_symbol(spec)
        terms = [{'x_power': list(beta), 'derivative': list(order), 'coefficient': c}
                 for beta, order, c in symbol.coefficients(config.mu)]
        self._report(config, {'symbol': str(symbol.subs_mu(config.mu)), 'terms': terms})

    def help_symbol(self):
        print("symbol --n N --A MATRIX [--alpha SCALAR] [--mu MU]\n")
        print("The ordinary differential operator P-hat(pi_mu) on R^n as a")
        print("list of terms c x^beta d^gamma.")

    @_handles_errors
    def do_crtest(self, line):
        parser = _ArgumentParser(prog="crtest", add_help=False)
        parser.add_argument('--n', type=int, default=1)
        parser.add_argument('--A', type=str, default=None)
        parser.add_argument('--alpha', type=str, default='0')
        parser.add_argument('--mu', type=float, default=1.0)
        parser.add_argument('--kmax', type=int, default=64)
        parser.add_argument('--lewy', action='store_true')
        parser.add_argument('--no-transpose', dest='transpose', action='store_false')
        args = parser.parse_line(line)

        config = SuiteConfig(n=args.n, A=args.A, alpha=args.alpha, mu=args.mu,
                             kmax=args.kmax).validate()
        if args.lewy:
            P = lewy()
        elif config.A is None:
            raise InvalidConfigError("crtest: pass --A or --lewy")
        else:
            P = OperatorSpec.from_text(config.n, config.A, config.alpha)
        result = cr_nonsolvability_test(P, config.mu, K=config.kmax, transpose=args.transpose)
        found = isinstance(result, WitnessFound)
        self._report(config, {'found': found, 'sigmas': list(result.sigmas),
                              'residual': result.residual if found else None,
                              'transpose': args.transpose})

    def help_crtest(self):
        print("crtest (--A MATRIX [--n N] [--alpha SCALAR] | --lewy) [--mu MU]")
        print("       [--kmax K] [--no-transpose]\n")
        print("Look for a Schwartz null vector of the transposed symbol at mu in")
        print("the Hermite basis of size K.")

    @_handles_errors
    def do_lewy(self, line):
        parser = _ArgumentParser(prog="lewy", add_help=False)
        parser.add_argument('--lambdas', type=_floats, default=(4, 8, 16, 32, 64))
        parser.add_argument('--eps', type=float, default=0.1)
        parser.add_argument('--k', type=int, default=1)
        parser.add_argument('--nthreads', type=int, default=None)
        parser.add_argument('--format', type=str, default='csv', choices=['csv', 'json'])
        args = parser.parse_line(line)

        config = SuiteConfig(lambdas=args.lambdas, format=args.format,
                             nthreads=args.nthreads).validate()
        rows = lewy_witness_experiment(config.lambdas, eps=args.eps, k=args.k,
                                       nthreads=config.nthreads)
        if config.format == 'json':
            self._report(config, [r._asdict() for r in rows])
        else:
            print('lambda,integral_re,integral_im,bound,ratio,target_re,target_im')
            for r in rows:
                print('%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g' % (
                    r.lam, r.integral.real, r.integral.imag, r.bound, r.ratio,
                    r.target.real, r.target.imag))

    def help_lewy(self):
        print("lewy [--lambdas L1,L2,...] [--eps E] [--k 0|1] [--format csv|json]\n")
        print("The witness experiment for the Lewy operator: one row")
        print("(lambda, I, R, |I|/R, target) per lambda.")

    @_handles_errors
    def do_plancherel(self, line):
        parser = _ArgumentParser(prog="plancherel", add_help=False)
        parser.add_argument('--grid', type=int, default=65)
        parser.add_argument('--extent', type=float, default=3.0)
        parser.add_argument('--nthreads', type=int, default=None)
        args = parser.parse_line(line)

        config = SuiteConfig(dims=args.grid, extent=args.extent,
                             nthreads=args.nthreads).validate()
        f = TestFunction.gaussian(1).sample(config.dims, config.extent)
        self._report(config, plancherel_check(f, nthreads=config.nthreads)._asdict())

    def help_plancherel(self):
        print("plancherel [--grid D] [--extent E]\n")
        print("Both sides of the Plancherel identity for a Gaussian on H_1.")

    def do_quit(self, line):
        return True

    def help_quit(self):
        print("quit\n")
        print("Exit the application")

    def do_EOF(self, line):
        return True


def setup_logging(default_level='WARNING'):
    """ Setup logging configuration

    The logging configuration can be overridden with one environment variable:

    HEISENBERG_LOG_LEVEL (defines logging level)
    """
    import logging
    log_level = os.environ.get('HEISENBERG_LOG_LEVEL', default_level)

    levels = dict(
        CRITICAL=logging.CRITICAL,
        ERROR=logging.ERROR,
        WARNING=logging.WARNING,
        INFO=logging.INFO,
        DEBUG=logging.DEBUG)

    if log_level in levels:
        log_level = levels[log_level]
    else:
        sys.exit("invalid HEISENBERG_LOG_LEVEL '{0}'".format(log_level))

    logging.basicConfig(level=log_level, stream=sys.stderr)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    setup_logging()
    command = HeisenbergCommand()
    if argv:
        command.onecmd(' '.join(shlex.quote(a) for a in argv))
    else:
        command.onecmd('help')
    return command.exit_code


if __name__ == '__main__':
    sys.exit(main())
