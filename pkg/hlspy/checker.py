#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
The harmonic-compatibility test: a family is the level-set family of a
critical-point-free harmonic function iff

    Lambda = dphi/ds + (n-1) H phi

is constant on every leaf. Lambda is sampled on a tensor grid of the
parameter box and its spread is measured slice by slice in t.
"""
import logging
import multiprocessing
import time
from dataclasses import dataclass

import numpy
import pandas

from hlspy.flow import dphi_ds, DPHI_STEP
from hlspy.geometry import frame_at, leaf_curvature
from hlspy.utils.exception import NumericalError, SampleError
from hlspy.utils.logger import LoggerCheck
from hlspy.utils.statistics import (allocate_jobs, check_grid_counts,
    slice_statistics)

logger = logging.getLogger(__name__)

ACCEPTED = 'accepted'
REJECTED = 'rejected'
# phi, curvature, dphi_ds, curvature term, lambda
_N_FIELDS = 5


def default_grid(n):
    """41 x 21 in the plane, 21 x 21 x 11 in space, 11 per axis beyond."""
    if n == 2:
        return [41, 21]
    if n == 3:
        return [21, 21, 11]
    return [11] * n


def default_tolerance(spec):
    return 1e-6 if spec.derivative_mode == 'symbolic' else 1e-4


@dataclass(frozen=True, eq=False)
class ConditionSample:
    """Lambda and its two parts at one parameter point.

    Attributes
    ----------
    q: numpy.ndarray
        The parameter point.

    phi: float
        The density at q.

    curvature: float
        kappa (n = 2) or H (n > 2) at q.

    dphi_ds: float

    curvature_term: float
        (n-1) * curvature * phi.

    lam: float
        dphi_ds + curvature_term.
    """
    q: numpy.ndarray
    phi: float
    curvature: float
    dphi_ds: float
    curvature_term: float
    lam: float

    def as_row(self):
        return [self.phi, self.curvature, self.dphi_ds, self.curvature_term,
            self.lam]


def lambda_at(spec, q, h=DPHI_STEP):
    """Evaluate Lambda = dphi/ds + (n-1) H phi at the parameter point q."""
    q = numpy.asarray(q, dtype=float)
    frame = frame_at(spec, q)
    curvature = leaf_curvature(spec, q, frame)
    curvature_term = (spec.n - 1) * curvature * frame.density
    derivative = dphi_ds(spec, q, h)
    return ConditionSample(
        q=q,
        phi=frame.density,
        curvature=curvature,
        dphi_ds=derivative,
        curvature_term=curvature_term,
        lam=derivative + curvature_term,
    )


def _sample(spec, q, h):
    try:
        return lambda_at(spec, q, h)
    except NumericalError as error:
        raise SampleError(q, error)


def _sample_range(spec, h, points, jobs, values, failed):
    # failed[j] starts at 1 and is cleared once row j is written
    for j in jobs:
        try:
            row = lambda_at(spec, points[j], h).as_row()
        except NumericalError:
            continue
        for k, value in enumerate(row):
            values[j * _N_FIELDS + k] = value
        failed[j] = 0


class CheckReport(object):
    """
    Outcome of check_family.

    Attributes
    ----------
    name: str
        The family name.

    grid: list of int
        The per-axis sample counts.

    samples: list of ConditionSample
        In grid order: t-major, then sigma lexicographically.

    slice_t, slice_mean, slice_spread: numpy.ndarray
        Per t-slice label, mean and max - min of Lambda.

    residual: float
        max slice spread / max(1, median |Lambda|).

    tol: float

    verdict: 'accepted' or 'rejected'

    witness: dict or None
        The worst slice (t, sigma at max Lambda, sigma at min Lambda, spread)
        when rejected.
    """
    def __init__(self, name, n, grid, samples, tol):
        self.name = name
        self.n = n
        self.grid = list(grid)
        self.samples = samples
        self.tol = tol
        n_sigma = int(numpy.prod(self.grid[:-1]))
        lam = numpy.array([sample.lam for sample in samples])
        slice_t, slice_mean, slice_spread, extremes = [], [], [], []
        for k in range(self.grid[-1]):
            chunk = samples[k * n_sigma:(k + 1) * n_sigma]
            stats = slice_statistics(lam[k * n_sigma:(k + 1) * n_sigma])
            slice_t.append(chunk[0].q[-1])
            slice_mean.append(stats['mean'])
            slice_spread.append(stats['spread'])
            extremes.append((chunk[stats['argmax']], chunk[stats['argmin']]))
        self.slice_t = numpy.array(slice_t)
        self.slice_mean = numpy.array(slice_mean)
        self.slice_spread = numpy.array(slice_spread)
        self.residual = float(numpy.max(self.slice_spread)
            / max(1.0, numpy.median(numpy.abs(lam))))
        self.verdict = ACCEPTED if self.residual < tol else REJECTED
        self.witness = None
        if self.verdict == REJECTED:
            worst = int(numpy.argmax(self.slice_spread))
            high, low = extremes[worst]
            self.witness = {
                't': float(self.slice_t[worst]),
                'sigma_max': high.q[:-1].tolist(),
                'sigma_min': low.q[:-1].tolist(),
                'lambda_max': high.lam,
                'lambda_min': low.lam,
                'spread': float(self.slice_spread[worst]),
            }

    def __repr__(self):
        return "<CheckReport {} {} residual={:.3e}>".format(
            self.name, self.verdict, self.residual)

    @property
    def accepted(self):
        return self.verdict == ACCEPTED

    def to_dict(self):
        """Return the report as a JSON-compatible document."""
        return {
            'name': self.name,
            'grid': self.grid,
            'tolerance': self.tol,
            'residual': self.residual,
            'verdict': self.verdict,
            'slices': [
                {'t': float(t), 'mean': float(m), 'spread': float(s)}
                for t, m, s in zip(
                    self.slice_t, self.slice_mean, self.slice_spread)
            ],
            'witness': self.witness,
        }

    def to_frame(self):
        """Return the samples as a DataFrame with columns sigma1..,
        t, phi, curvature, dphi_ds, lambda."""
        points = numpy.array([sample.q for sample in self.samples])
        data = {}
        for i in range(self.n - 1):
            data['sigma{}'.format(i + 1)] = points[:, i]
        data['t'] = points[:, -1]
        data['phi'] = [sample.phi for sample in self.samples]
        data['curvature'] = [sample.curvature for sample in self.samples]
        data['dphi_ds'] = [sample.dphi_ds for sample in self.samples]
        data['lambda'] = [sample.lam for sample in self.samples]
        return pandas.DataFrame(data)


def check_family(
        spec,
        grid=None,
        tol=None,
        h=DPHI_STEP,
        n_processes=1,
        logFile=0,
        logToConsole=0,
        directory=''):
    """Sample Lambda on a parameter grid and decide the harmonic condition.

    Parameters
    ----------
    spec: FamilySpec

    grid: list of int, optional
        Per-axis sample counts (>= 3 each), sigma axes first, t last.
        Defaults to default_grid(n).

    tol: float, optional
        Acceptance threshold of the residual. Defaults to 1e-6 with symbolic
        and 1e-4 with finite-difference derivatives.

    h: float, optional
        The dphi_ds step; the t axis keeps this distance from both ends of
        t_interval.

    n_processes: int, optional (default=1)
        The number of worker processes sampling the grid.

    logFile, logToConsole, directory:
        Logging switches, see hlspy.utils.logger.Logger.

    Returns
    -------
    CheckReport
    """
    grid = check_grid_counts(grid or default_grid(spec.n), spec.n)
    tol = default_tolerance(spec) if tol is None else tol
    if tol <= 0:
        raise ValueError("Tolerance must be positive!")
    points = spec.grid(grid, t_margin=h)
    log = LoggerCheck(spec.name, len(points), logFile=logFile,
        logToConsole=logToConsole, directory=directory)
    log.header()
    begin = time.time()
    if n_processes == 1:
        samples = [_sample(spec, q, h) for q in points]
    else:
        samples = _sample_parallel(spec, points, h, n_processes)
    report = CheckReport(spec.name, spec.n, grid, samples, tol)
    n_sigma = len(points) // grid[-1]
    for t, mean, spread in zip(
            report.slice_t, report.slice_mean, report.slice_spread):
        log.text(t, mean, spread, n_sigma)
    log.footer(report.verdict, report.residual, tol, time.time() - begin)
    return report


def _sample_parallel(spec, points, h, n_processes):
    n_points = len(points)
    jobs = allocate_jobs(n_points, n_processes)
    values = multiprocessing.RawArray("d", [0] * (n_points * _N_FIELDS))
    failed = multiprocessing.RawArray("b", [1] * n_points)
    procs = [None] * len(jobs)
    for p in range(len(jobs)):
        procs[p] = multiprocessing.Process(
            target=_sample_range,
            args=(spec, h, points, jobs[p], values, failed)
        )
        procs[p].start()
    for p, proc in enumerate(procs):
        proc.join()
        if proc.exitcode != 0:
            logger.warning("sampling worker %d exited with code %s",
                p, proc.exitcode)
    values = numpy.frombuffer(values).reshape(n_points, _N_FIELDS)
    samples = []
    for j, (q, row) in enumerate(zip(points, values)):
        if failed[j]:
            # re-run serially: raises the located error or fills a row a
            # dead worker never wrote
            logger.debug("sample %d missing from the workers", j)
            samples.append(_sample(spec, q, h))
        else:
            samples.append(ConditionSample(q, *(float(x) for x in row)))
    return samples


class AtlasReport(object):
    """Outcome of check_atlas: one CheckReport per chart."""

    def __init__(self, reports):
        self.reports = list(reports)
        self.residual = max(report.residual for report in self.reports)
        self.verdict = (ACCEPTED if all(r.accepted for r in self.reports)
            else REJECTED)

    def __repr__(self):
        return "<AtlasReport {} charts {}>".format(
            len(self.reports), self.verdict)

    @property
    def accepted(self):
        return self.verdict == ACCEPTED

    def to_dict(self):
        return {
            'verdict': self.verdict,
            'residual': self.residual,
            'charts': [report.to_dict() for report in self.reports],
        }


def check_atlas(specs, grid=None, tol=None, **kwargs):
    """Run check_family on every chart of a family whose leaves need several
    charts (closed curves, spheres). Accepted iff every chart is accepted.
    """
    specs = list(specs)
    if not specs:
        raise ValueError("An atlas needs at least one chart!")
    return AtlasReport(
        check_family(spec, grid, tol, **kwargs) for spec in specs)
