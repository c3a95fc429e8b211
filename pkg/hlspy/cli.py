#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Command-line front end.

Exit codes: 0 success (accepted), 3 harmonic condition rejected (check only),
2 configuration or usage error, 4 numerical failure.
"""
import argparse
import json
import logging
import os
import sys

import numpy
import pandas

from hlspy.checker import check_family, default_grid
from hlspy.family import load_family
from hlspy.flow import integrate_normal_flow
from hlspy.reconstruct import (Gauge, reconstruct_u, evaluate_harmonic,
    verify_gradient_law)
from hlspy.utils.examples import CATALOG, catalog_names, catalog_document
from hlspy.utils.exception import ConfigError, NumericalError, SchemaError
from hlspy.utils.statistics import check_grid_counts

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REJECTED = 3
EXIT_NUMERICAL = 4

DEFAULTS = {
    'check_tol': {'symbolic': 1e-6, 'finite-difference': 1e-4},
    'newton_tol': 1e-12,
    'max_newton_iters': 50,
    'fd_step': 1e-5,
    'fd_step_second': 1e-4,
    'dphi_step': 1e-4,
    'flow_step': None,
    'quad_points': 201,
    'gauge': {'u0': 0.0, 'du0': 1.0},
}


class _UsageError(Exception):
    def __init__(self, status):
        Exception.__init__(self, status)
        self.status = status


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports failures by status instead of exiting."""

    def exit(self, status=0, message=None):
        if message:
            self._print_message(message, sys.stderr)
        raise _UsageError(status)


def _floats(text, field):
    try:
        return [float(x) for x in text.split(',')]
    except ValueError:
        raise SchemaError(field, "expected comma separated numbers, got {!r}"
            .format(text))


def _ints(text, field):
    try:
        return [int(x) for x in text.split(',')]
    except ValueError:
        raise SchemaError(field, "expected comma separated integers, got {!r}"
            .format(text))


def _load_document(source):
    if os.path.isfile(source):
        try:
            with open(source) as f:
                return json.load(f)
        except json.JSONDecodeError as error:
            raise SchemaError('<document>', "invalid JSON: {}".format(error))
    if source in CATALOG:
        return catalog_document(source)
    raise SchemaError('<config>',
        "{} is neither a file nor a catalog family".format(source))


def _section(document, key):
    section = document.get(key, {}) or {}
    if not isinstance(section, dict):
        raise SchemaError(key, "expected an object")
    return section


class RunConfig(object):
    """The resolved settings of one run: flag > config document > DEFAULTS.
    """
    def __init__(self, args):
        document = _load_document(args.config)
        if not isinstance(document, dict):
            raise SchemaError('<document>', "expected a JSON object")
        tolerances = _section(document, 'tolerances')
        overrides = {}
        if getattr(args, 'derivative_mode', None):
            overrides['derivative_mode'] = args.derivative_mode
        if getattr(args, 'newton_tol', None) is not None:
            overrides['newton_tol'] = args.newton_tol
        if getattr(args, 'fd_step', None) is not None:
            overrides['fd_step'] = args.fd_step
        self.spec = load_family(document, **overrides)
        self.document = document

        grid = getattr(args, 'grid', None)
        grid = (_ints(grid, 'grid') if grid
            else document.get('grid') or default_grid(self.spec.n))
        try:
            self.grid = check_grid_counts(grid, self.spec.n)
        except (ValueError, TypeError) as error:
            raise SchemaError('grid', str(error))

        self.tol = self._positive(args, 'tol', tolerances, 'check_tol',
            DEFAULTS['check_tol'][self.spec.derivative_mode])
        self.flow_step = self._positive(args, 'step', tolerances,
            'flow_step', DEFAULTS['flow_step'])
        self.dphi_step = DEFAULTS['dphi_step']
        quad_points = getattr(args, 't_samples', None)
        if quad_points is None:
            quad_points = tolerances.get('quad_points',
                DEFAULTS['quad_points'])
        if (not isinstance(quad_points, int) or quad_points < 5
                or quad_points % 2 == 0):
            raise SchemaError('quad_points', "expected an odd integer >= 5")
        self.quad_points = quad_points

        gauge = dict(DEFAULTS['gauge'])
        gauge.update(_section(document, 'gauge'))
        if getattr(args, 'gauge', None):
            values = _floats(args.gauge, 'gauge')
            if len(values) != 2:
                raise SchemaError('gauge', "expected u0,du0")
            gauge['u0'], gauge['du0'] = values
        try:
            self.gauge = Gauge(float(gauge['u0']), float(gauge['du0']))
        except (ValueError, TypeError, KeyError) as error:
            raise SchemaError('gauge', str(error))

        self.start = None
        if getattr(args, 'start', None):
            self.start = numpy.array(_floats(args.start, 'start'))
            if len(self.start) != self.spec.n:
                raise SchemaError('start', "expected {} coordinates"
                    .format(self.spec.n))
        self.log = {'logToConsole': 0 if args.quiet else 1}

    @staticmethod
    def _positive(args, flag, tolerances, key, default):
        value = getattr(args, flag, None)
        if value is None:
            value = tolerances.get(key, default)
        if value is not None and (not isinstance(value, (int, float))
                or isinstance(value, bool) or not value > 0):
            raise SchemaError(key, "expected a positive number")
        return value


def _write_frame(frame, path):
    if path is None:
        sys.stdout.write(frame.to_csv(index=False))
    else:
        frame.to_csv(path, index=False)


def _write_json(document, path):
    text = json.dumps(document, sort_keys=True, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, 'w') as f:
            f.write(text)


def _check(config):
    return check_family(config.spec, config.grid, config.tol,
        h=config.dphi_step, n_processes=config.n_processes, **config.log)


def _run_check(config, args):
    report = _check(config)
    if args.out:
        _write_json(report.to_dict(), args.out)
    if args.samples:
        _write_frame(report.to_frame(), args.samples)
    print("{}: {} (residual {!r}, tolerance {!r})".format(
        report.name, report.verdict, report.residual, report.tol))
    if not report.accepted:
        print("witness: {}".format(json.dumps(report.witness,
            sort_keys=True)))
        return EXIT_REJECTED
    return EXIT_OK


def _reconstruction(config):
    report = _check(config)
    return reconstruct_u(config.spec, report, config.quad_points,
        config.gauge, **config.log)


def _run_reconstruct(config, args):
    recon = _reconstruction(config)
    if args.points is None:
        _write_frame(recon.to_frame(), args.out)
        return EXIT_OK
    if args.out:
        _write_frame(recon.to_frame(), args.out)
    points = pandas.read_csv(args.points)
    columns = ["y{}".format(i + 1) for i in range(config.spec.n)]
    missing = [c for c in columns if c not in points.columns]
    if missing:
        raise SchemaError('points', "missing columns {}".format(missing))
    values = points[columns].copy()
    values['U'] = [evaluate_harmonic(config.spec, recon, y)
        for y in values[columns].to_numpy(dtype=float)]
    _write_frame(values, args.values)
    return EXIT_OK


def _run_flow(config, args):
    trace = integrate_normal_flow(config.spec, config.start, args.length,
        config.flow_step, **config.log)
    _write_frame(trace.to_frame(), args.out)
    return EXIT_OK


def _run_verify_gradient(config, args):
    recon = _reconstruction(config)
    report = verify_gradient_law(config.spec, recon, config.start,
        args.length, config.flow_step, **config.log)
    if args.trace:
        _write_frame(report.to_frame(), args.trace)
    _write_json(report.to_dict(), args.out)
    return EXIT_OK


def _run_sample(config, args):
    _write_frame(_check(config).to_frame(), args.out)
    return EXIT_OK


def _run_catalog(args):
    if args.name is None:
        for name in catalog_names():
            print(name)
        return EXIT_OK
    if args.name not in CATALOG:
        raise SchemaError('name', "unknown catalog family {}".format(
            args.name))
    _write_json(catalog_document(args.name), args.out)
    return EXIT_OK


COMMANDS = {
    'check': _run_check,
    'reconstruct': _run_reconstruct,
    'flow': _run_flow,
    'verify-gradient': _run_verify_gradient,
    'sample': _run_sample,
}


def build_parser():
    parser = _Parser(prog='hlspy',
        description="Harmonic level-set families: check, reconstruct, "
        "verify.")
    commands = parser.add_subparsers(dest='command', required=True,
        parser_class=_Parser)

    def family_command(name, help):
        sub = commands.add_parser(name, help=help)
        sub.add_argument('config',
            help="family JSON document or bundled family name")
        sub.add_argument('--derivative-mode',
            choices=['symbolic', 'finite-difference'])
        sub.add_argument('--newton-tol', type=float)
        sub.add_argument('--fd-step', type=float)
        sub.add_argument('--quiet', action='store_true',
            help="no progress tables on stderr")
        return sub

    def grid_options(sub):
        sub.add_argument('--grid', help="per-axis counts, e.g. 41,21")
        sub.add_argument('--tol', type=float)
        sub.add_argument('--processes', type=int, default=1)

    sub = family_command('check', "decide the harmonic condition")
    grid_options(sub)
    sub.add_argument('--out', help="JSON report path")
    sub.add_argument('--samples', help="CSV path of the Lambda grid")

    sub = family_command('reconstruct', "tabulate u and evaluate U")
    grid_options(sub)
    sub.add_argument('--gauge', help="u0,du0")
    sub.add_argument('--t-samples', type=int)
    sub.add_argument('--points', help="CSV of ambient points y1..yn")
    sub.add_argument('--values', help="CSV path of U at the points")
    sub.add_argument('--out', help="CSV path of the t, u, du table")

    sub = family_command('flow', "trace a normal flow")
    sub.add_argument('--start', required=True, help="sigma...,t")
    sub.add_argument('--length', type=float, required=True)
    sub.add_argument('--step', type=float)
    sub.add_argument('--out')

    sub = family_command('verify-gradient', "check the gradient law")
    grid_options(sub)
    sub.add_argument('--start', help="sigma...,t")
    sub.add_argument('--length', type=float, required=True)
    sub.add_argument('--step', type=float)
    sub.add_argument('--gauge', help="u0,du0")
    sub.add_argument('--t-samples', type=int)
    sub.add_argument('--trace', help="CSV path of the per-point table")
    sub.add_argument('--out', help="JSON report path")

    sub = family_command('sample', "export the Lambda grid")
    grid_options(sub)
    sub.add_argument('--out')

    sub = commands.add_parser('catalog', help="list or print bundled families")
    sub.add_argument('name', nargs='?')
    sub.add_argument('--out')
    return parser


def _report(error):
    sys.stderr.write("hlspy: error: {}\n".format(error))


def run_cli(argv=None):
    """Run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as error:
        return error.status
    if args.command == 'catalog':
        try:
            return _run_catalog(args)
        except ConfigError as error:
            _report(error)
            return EXIT_USAGE
    try:
        config = RunConfig(args)
        config.n_processes = getattr(args, 'processes', 1)
        if config.n_processes < 1:
            raise SchemaError('processes', "expected a positive integer")
    except (ConfigError, NumericalError) as error:
        _report(error)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](config, args)
    except NumericalError as error:
        _report(error)
        return EXIT_NUMERICAL
    except ConfigError as error:
        _report(error)
        return EXIT_USAGE
    except ValueError as error:
        _report(error)
        return EXIT_NUMERICAL
    except (OSError, pandas.errors.ParserError) as error:
        _report(error)
        return EXIT_USAGE


def main():
    sys.exit(run_cli())


if __name__ == '__main__':
    main()
