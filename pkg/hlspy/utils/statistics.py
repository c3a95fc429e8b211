#!/usr/bin/env python3
# -*- coding: utf-8 -*-
import numbers

import numpy


def check_random_state(seed):
    """Turn the seed into a RandomState instance.

    Parameters & Returns
    --------------------
    seed : None, numpy.random, int, instance of RandomState
        If None, return numpy.random.
        If int, return a new RandomState instance with seed.
        Otherwise raise ValueError.
    """
    if seed is None or seed is numpy.random:
        return numpy.random.mtrand._rand
    if isinstance(seed, (numbers.Integral, numpy.integer)):
        return numpy.random.RandomState(seed)
    if isinstance(seed, numpy.random.RandomState):
        return seed
    raise ValueError(
        "{!r} cannot be used to seed a numpy.random.RandomState instance"
            .format(seed)
    )


def allocate_jobs(n_samples, n_processes):
    """Split range(n_samples) into n_processes contiguous ranges."""
    if n_processes < 1:
        raise ValueError("Number of processes must be positive!")
    n_processes = min(n_samples, n_processes)
    chunk = int(n_samples / n_processes)
    division = list(range(0, n_samples, chunk))[:n_processes]
    division.append(n_samples)
    return [range(division[p], division[p + 1]) for p in range(n_processes)]


def check_grid_counts(counts, n):
    """Check the per-axis sample counts of an n-dim parameter grid."""
    counts = list(counts)
    if len(counts) != n:
        raise ValueError("Grid must have {} counts, got {}!".format(
            n, len(counts)))
    for c in counts:
        if not isinstance(c, (numbers.Integral, numpy.integer)) or c < 3:
            raise ValueError("Grid counts must be integers >= 3, got {}!"
                .format(counts))
    return [int(c) for c in counts]


def slice_statistics(values):
    """Spread (max - min), mean and argmin/argmax of one t-slice."""
    values = numpy.asarray(values, dtype=float)
    i_min, i_max = int(numpy.argmin(values)), int(numpy.argmax(values))
    return {
        'spread': values[i_max] - values[i_min],
        'mean': float(numpy.mean(values)),
        'argmin': i_min,
        'argmax': i_max,
    }
